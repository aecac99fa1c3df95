//! Partition combinatorics and oscillator characters.
//!
//! Characters are polynomials in `t`, `x_1..x_{n-r}` and `y_1..y_r`,
//! truncated at a fixed total `x, y` degree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::engine::State;
use crate::lattice::{Eps, Weight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharsError {
    #[error("not a generalized partition: {0:?}")]
    NotPartition(Vec<i64>),
    #[error("partition {0:?} is outside the admissible range")]
    OutOfRange(Vec<i64>),
    #[error("the two character formulas disagree for {0:?}")]
    Disagree(Vec<i64>),
}

// ---------------------------------------------------------------------------
// partitions

/// Splits a generalized partition into its positive part and the
/// partition formed by the negated negative entries, read from the end.
pub fn split_parts(lambda: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let plus: Vec<i64> = lambda.iter().copied().filter(|&x| x > 0).collect();
    let minus: Vec<i64> = lambda.iter().rev().copied().filter(|&x| x < 0).map(|x| -x).collect();
    (plus, minus)
}

pub fn is_generalized_partition(lambda: &[i64]) -> bool {
    lambda.windows(2).all(|w| w[0] >= w[1])
}

/// All partitions of `k` with at most `max_len` parts, in reverse
/// lexicographic order.
pub fn partitions(k: i64, max_len: usize) -> Vec<Vec<i64>> {
    fn rec(left: i64, cap: i64, max_len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, max_len, &mut Vec::new(), &mut out);
    out
}

/// Partitions of size at most `k` with at most `max_len` parts.
pub fn partitions_up_to(k: i64, max_len: usize) -> Vec<Vec<i64>> {
    (0..=k).flat_map(|j| partitions(j, max_len)).collect()
}

/// Pads or trims trailing zeros to length `len`.
pub fn pad(mu: &[i64], len: usize) -> Vec<i64> {
    let mut v: Vec<i64> = mu.iter().copied().filter(|&x| x != 0).collect();
    v.resize(len, 0);
    v
}

/// Hook condition `lambda_{m+1} <= n_cols` for an ordinary partition.
pub fn hook_check(lambda: &[i64], m: usize, n_cols: i64) -> bool {
    lambda.get(m).is_none_or(|&x| x <= n_cols)
}

/// Membership in the range `l(lambda^-) <= r`, `l(lambda^+) <= n - r`.
pub fn in_osc_range(lambda: &[i64], r: usize, n: usize) -> bool {
    let (p, m) = split_parts(lambda);
    is_generalized_partition(lambda) && m.len() <= r && p.len() <= n - r
}

/// Fills the Young diagram `shape` with successive labels taken from
/// `labels`: a label whose parity bit is 0 fills the first remaining row,
/// a label with bit 1 fills the first remaining column. Returns the box
/// count for each label used, or `None` when the labels run out.
fn fill_counts(shape: &[i64], labels: &[(usize, u8)]) -> Option<Vec<(usize, i64)>> {
    let mut filled = vec![0i64; shape.len()];
    let mut out = Vec::new();
    let remaining = |filled: &[i64]| shape.iter().zip(filled).any(|(s, f)| f < s);
    let mut it = labels.iter();
    while remaining(&filled) {
        let &(label, bit) = it.next()?;
        let count = if bit == 0 {
            let k = (0..shape.len()).find(|&k| filled[k] < shape[k]).unwrap();
            let c = shape[k] - filled[k];
            filled[k] = shape[k];
            c
        } else {
            let col = (0..shape.len()).filter(|&k| filled[k] < shape[k]).map(|k| filled[k]).min().unwrap();
            let mut c = 0;
            for k in 0..shape.len() {
                if filled[k] == col && shape[k] > col {
                    filled[k] += 1;
                    c += 1;
                }
            }
            c
        };
        out.push((label, count));
    }
    Some(out)
}

/// The highest weight attached to a generalized partition of length `ell`
/// under the parity sequence, or `None` when the filling overflows.
pub fn eps_highest_weight(lambda: &[i64], eps: &Eps) -> Option<Weight> {
    assert!(is_generalized_partition(lambda), "not a generalized partition: {lambda:?}");
    let n = eps.n();
    let r = eps.r();
    let (plus, minus) = split_parts(lambda);
    let up: Vec<(usize, u8)> = (r + 1..=n).map(|i| (i, eps.bit(i))).collect();
    let down: Vec<(usize, u8)> = (1..=r).rev().map(|i| (i, eps.bit(i))).collect();
    let mut w = Weight { level: lambda.len() as i64, d: vec![0; n], k: 0 };
    for (i, c) in fill_counts(&plus, &up)? {
        w.d[i - 1] += c;
    }
    for (i, c) in fill_counts(&minus, &down)? {
        w.d[i - 1] -= c;
    }
    Some(w)
}

// ---------------------------------------------------------------------------
// polynomials

/// A polynomial with integer coefficients in `nvars` variables; exponents
/// may be negative (Laurent polynomials for `GL` characters).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i64>, i64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        p.terms.insert(vec![0; nvars], 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), *c);
        }
        p
    }

    pub fn scale(&self, k: i64) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * k);
        }
        p
    }

    /// Product keeping only monomials of total degree at most `max_deg`.
    pub fn mul_trunc(&self, o: &Poly, max_deg: Option<i64>) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if max_deg.is_some_and(|d| e.iter().sum::<i64>() > d) {
                    continue;
                }
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.mul_trunc(o, None)
    }

    /// `x_i -> x_i^-1`.
    pub fn invert_vars(&self) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.iter().map(|x| -x).collect(), *c);
        }
        p
    }

    pub fn coeff(&self, e: &[i64]) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }
}

/// Schur polynomial of the skew shape `outer/inner` in `nvars` variables by
/// semistandard tableaux (rows weakly increase, columns strictly).
pub fn skew_schur_tableaux(outer: &[i64], inner: &[i64], nvars: usize) -> Poly {
    let rows = outer.len();
    let inner = pad(inner, rows);
    let mut p = Poly::zero(nvars);
    if inner.iter().zip(outer).any(|(a, b)| a > b) {
        return p;
    }
    // fill row by row, cell by cell, left to right
    let cells: Vec<(usize, i64)> = (0..rows).flat_map(|i| (inner[i]..outer[i]).map(move |j| (i, j))).collect();
    let mut grid: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    fn rec(
        k: usize,
        cells: &[(usize, i64)],
        inner: &[i64],
        nvars: usize,
        grid: &mut BTreeMap<(usize, i64), usize>,
        exps: &mut Vec<i64>,
        p: &mut Poly,
    ) {
        if k == cells.len() {
            p.add_term(exps.clone(), 1);
            return;
        }
        let (i, j) = cells[k];
        let mut lo = 0;
        if j > inner[i] {
            lo = lo.max(grid[&(i, j - 1)]);
        }
        if i > 0 && j >= inner[i - 1] {
            // cell above exists in the skew shape
            lo = lo.max(grid[&(i - 1, j)] + 1);
        }
        for v in lo..nvars {
            grid.insert((i, j), v);
            exps[v] += 1;
            rec(k + 1, cells, inner, nvars, grid, exps, p);
            exps[v] -= 1;
        }
        grid.remove(&(i, j));
    }
    let mut exps = vec![0; nvars];
    rec(0, &cells, &inner, nvars, &mut grid, &mut exps, &mut p);
    p
}

pub fn schur_tableaux(mu: &[i64], nvars: usize) -> Poly {
    skew_schur_tableaux(mu, &[], nvars)
}

/// Complete homogeneous symmetric polynomial `h_k`.
pub fn complete_h(k: i64, nvars: usize) -> Poly {
    if k < 0 {
        return Poly::zero(nvars);
    }
    schur_tableaux(&[k], nvars)
}

/// Skew Schur polynomial by the Jacobi-Trudi determinant `det h_{outer_i - inner_j - i + j}`.
pub fn skew_schur_jt(outer: &[i64], inner: &[i64], nvars: usize) -> Poly {
    let k = outer.len();
    if k == 0 {
        return Poly::one(nvars);
    }
    let inner = pad(inner, k);
    let mut h: BTreeMap<i64, Poly> = BTreeMap::new();
    let mut entry = |i: usize, j: usize| -> Poly {
        let idx = outer[i] - inner[j] - i as i64 + j as i64;
        h.entry(idx).or_insert_with(|| if idx == 0 { Poly::one(nvars) } else { complete_h(idx, nvars) }).clone()
    };
    let m: Vec<Vec<Poly>> = (0..k).map(|i| (0..k).map(|j| entry(i, j)).collect()).collect();
    det(&m, nvars)
}

pub fn schur_jt(mu: &[i64], nvars: usize) -> Poly {
    skew_schur_jt(mu, &[], nvars)
}

/// Determinant by Laplace expansion along the first row.
fn det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor, nvars));
        acc = acc.add(&if j % 2 == 0 { term } else { term.scale(-1) });
    }
    acc
}

/// Laurent-Schur character of `GL_ell` for a generalized partition.
pub fn gl_character(lambda: &[i64]) -> Poly {
    let ell = lambda.len();
    let shift = *lambda.last().unwrap_or(&0);
    let mu: Vec<i64> = lambda.iter().map(|x| x - shift).collect();
    let s = schur_tableaux(&mu, ell);
    let mut out = Poly::zero(ell);
    for (e, c) in &s.terms {
        out.add_term(e.iter().map(|x| x + shift).collect(), *c);
    }
    out
}

/// All signed permutations of `0..k` as `(sign, perm)`.
fn permutations(k: usize) -> Vec<(i64, Vec<usize>)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn rec(i: usize, sign: i64, cur: &mut Vec<usize>, out: &mut Vec<(i64, Vec<usize>)>) {
        if i == cur.len() {
            out.push((sign, cur.clone()));
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(i + 1, if i == j { sign } else { -sign }, cur, out);
            cur.swap(i, j);
        }
    }
    rec(0, 1, &mut cur, &mut out);
    out
}

/// Multiplicity of `lambda` in `V(eta) (x) V(xi)^*` for `GL_ell`, with
/// all three given as generalized partitions of length `ell`. Computed as
/// the coefficient of `x^{lambda + rho}` in the product times the
/// Vandermonde alternant.
pub fn lr_star(lambda: &[i64], eta: &[i64], xi: &[i64]) -> i64 {
    let ell = lambda.len();
    let xi_dual: Vec<i64> = xi.iter().rev().map(|x| -x).collect();
    let a = gl_character(eta);
    let b = gl_character(&xi_dual);
    let target: Vec<i64> = lambda.iter().enumerate().map(|(i, x)| x + (ell - 1 - i) as i64).collect();
    let mut total = 0;
    for (sign, w) in permutations(ell) {
        // monomial x^{w(rho)}: exponent of x_{w(i)} is ell-1-i
        let mut wr = vec![0i64; ell];
        for (i, &wi) in w.iter().enumerate() {
            wr[wi] = (ell - 1 - i) as i64;
        }
        for (ea, ca) in &a.terms {
            let need: Vec<i64> = (0..ell).map(|k| target[k] - wr[k] - ea[k]).collect();
            let cb = b.coeff(&need);
            if cb != 0 {
                total += sign * ca * cb;
            }
        }
    }
    total
}

/// Ordinary Littlewood-Richardson coefficient `c^lambda_{mu nu}` from the
/// `GL_ell` product with `ell = len(lambda)`.
pub fn lr_coefficient(lambda: &[i64], mu: &[i64], nu: &[i64]) -> i64 {
    let ell = lambda.len().max(mu.len()).max(nu.len());
    let a = gl_character(&pad(mu, ell));
    let b = gl_character(&pad(nu, ell));
    let prod = a.mul(&b);
    let lam = pad(lambda, ell);
    let target: Vec<i64> = lam.iter().enumerate().map(|(i, x)| x + (ell - 1 - i) as i64).collect();
    let mut total = 0;
    for (sign, w) in permutations(ell) {
        let mut e = vec![0i64; ell];
        for (i, &wi) in w.iter().enumerate() {
            e[wi] = (ell - 1 - i) as i64;
        }
        let need: Vec<i64> = (0..ell).map(|k| target[k] - e[k]).collect();
        total += sign * prod.coeff(&need);
    }
    total
}

// ---------------------------------------------------------------------------
// characters

/// A truncated character: integer combination of monomials
/// `t^a x^alpha y^beta` with `|alpha| + |beta| <= degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    pub nx: usize,
    pub ny: usize,
    pub degree: i64,
    /// `(t exponent, x exponents ++ y exponents) -> coefficient`
    pub terms: BTreeMap<(i64, Vec<i64>), i64>,
}

impl CharPoly {
    pub fn zero(nx: usize, ny: usize, degree: i64) -> CharPoly {
        CharPoly { nx, ny, degree, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, t: i64, exps: Vec<i64>, c: i64) {
        if c == 0 || exps.iter().sum::<i64>() > self.degree {
            return;
        }
        let key = (t, exps);
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    /// Adds `mult` copies of the monomial of a weight: `t^level`, `x_j^{d_{r+j}}`, `y_i^{-d_i}`.
    pub fn add_weight(&mut self, eps: &Eps, w: &Weight, mult: i64) {
        let r = eps.r();
        let mut exps: Vec<i64> = w.d[r..].to_vec();
        exps.extend(w.d[..r].iter().map(|x| -x));
        debug_assert!(exps.iter().all(|&x| x >= 0));
        self.add_term(w.level, exps, mult);
    }

    /// `t^a * px(x) * py(y)`, truncated.
    pub fn from_product(nx: usize, ny: usize, degree: i64, t: i64, px: &Poly, py: &Poly) -> CharPoly {
        let mut c = CharPoly::zero(nx, ny, degree);
        for (ex, cx) in &px.terms {
            let dx: i64 = ex.iter().sum();
            if dx > degree {
                continue;
            }
            for (ey, cy) in &py.terms {
                let mut e = ex.clone();
                e.extend(ey.iter().copied());
                c.add_term(t, e, cx * cy);
            }
        }
        c
    }

    pub fn add(&self, o: &CharPoly) -> CharPoly {
        let mut c = self.clone();
        for ((t, e), v) in &o.terms {
            c.add_term(*t, e.clone(), *v);
        }
        c
    }

    pub fn sub(&self, o: &CharPoly) -> CharPoly {
        let mut c = self.clone();
        for ((t, e), v) in &o.terms {
            c.add_term(*t, e.clone(), -v);
        }
        c
    }

    pub fn mul(&self, o: &CharPoly) -> CharPoly {
        let mut c = CharPoly::zero(self.nx, self.ny, self.degree.min(o.degree));
        for ((ta, ea), va) in &self.terms {
            for ((tb, eb), vb) in &o.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                c.add_term(ta + tb, e, va * vb);
            }
        }
        c
    }

    /// Drops monomials above a lower degree.
    pub fn truncate(&self, degree: i64) -> CharPoly {
        let mut c = CharPoly::zero(self.nx, self.ny, degree.min(self.degree));
        for ((t, e), v) in &self.terms {
            c.add_term(*t, e.clone(), *v);
        }
        c
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: i64) -> CharPoly {
        let mut c = CharPoly::zero(self.nx, self.ny, self.degree);
        for ((t, e), v) in &self.terms {
            c.add_term(t + k, e.clone(), *v);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients (dimension of the truncation).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    fn monomial_string(&self, t: i64, e: &[i64]) -> String {
        let mut parts = Vec::new();
        if t != 0 {
            parts.push(if t == 1 { "t".to_string() } else { format!("t^{t}") });
        }
        for (k, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let var = if k < self.nx { format!("x{}", k + 1) } else { format!("y{}", k - self.nx + 1) };
            parts.push(if x == 1 { var } else { format!("{var}^{x}") });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Monomials sorted by degree then exponents, as `(coefficient, monomial)`.
    pub fn sorted_terms(&self) -> Vec<(i64, String)> {
        let mut v: Vec<(i64, i64, &Vec<i64>, i64)> =
            self.terms.iter().map(|((t, e), c)| (e.iter().sum::<i64>(), *t, e, *c)).collect();
        v.sort();
        v.into_iter().map(|(_, t, e, c)| (c, self.monomial_string(t, e))).collect()
    }

    /// CSV rows `coefficient,monomial`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("coefficient,monomial\n");
        for (c, m) in self.sorted_terms() {
            s.push_str(&format!("{c},{m}\n"));
        }
        s
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, m)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.sorted_terms().serialize(s)
    }
}

/// `t^ell sum_{mu,nu} c^lambda_{mu nu*} s_mu(x) s_nu(y)`.
pub fn osc_character_lr(lambda: &[i64], r: usize, n: usize, degree: i64) -> CharPoly {
    let ell = lambda.len();
    let (nx, ny) = (n - r, r);
    let size: i64 = lambda.iter().sum();
    let mut out = CharPoly::zero(nx, ny, degree);
    for nu in partitions_up_to(degree, ell.min(ny)) {
        let nsz: i64 = nu.iter().sum();
        let msz = size + nsz;
        if msz < 0 || msz + nsz > degree {
            continue;
        }
        let sy = schur_tableaux(&nu, ny);
        for mu in partitions(msz, ell.min(nx)) {
            let c = lr_star(lambda, &pad(&mu, ell), &pad(&nu, ell));
            if c == 0 {
                continue;
            }
            let sx = schur_tableaux(&mu, nx);
            out = out.add(&CharPoly::from_product(nx, ny, degree, ell as i64, &sx.scale(c), &sy));
        }
    }
    out
}

/// `t^ell sum_eta s_{(lambda + d^ell)/eta}(x) s_{(d^ell)/eta}(y)` for a fixed
/// `d >= max(degree, -lambda_ell)`; the truncation does not depend on `d`.
pub fn osc_character_skew(lambda: &[i64], r: usize, n: usize, degree: i64, d: Option<i64>) -> CharPoly {
    let ell = lambda.len();
    let (nx, ny) = (n - r, r);
    let d = d.unwrap_or_else(|| degree.max(-lambda.last().copied().unwrap_or(0)));
    let outer: Vec<i64> = lambda.iter().map(|x| x + d).collect();
    let box_d = vec![d; ell];
    let mut out = CharPoly::zero(nx, ny, degree);
    // eta inside d^ell with |d^ell / eta| <= degree
    let total = d * ell as i64;
    for eta in partitions_up_to(total, ell) {
        let esz: i64 = eta.iter().sum();
        if total - esz > degree || eta.first().is_some_and(|&x| x > d) {
            continue;
        }
        let eta_p = pad(&eta, ell);
        if eta_p.iter().zip(&outer).any(|(a, b)| a > b) {
            continue;
        }
        let sy = skew_schur_tableaux(&box_d, &eta_p, ny);
        if sy.is_zero() {
            continue;
        }
        let osz: i64 = outer.iter().sum::<i64>() - esz;
        if osz > degree {
            continue;
        }
        let sx = skew_schur_tableaux(&outer, &eta_p, nx);
        out = out.add(&CharPoly::from_product(nx, ny, degree, ell as i64, &sx, &sy));
    }
    out
}

/// Both formulas, compared.
pub fn osc_character(lambda: &[i64], r: usize, n: usize, degree: i64) -> Result<CharPoly, CharsError> {
    if !is_generalized_partition(lambda) {
        return Err(CharsError::NotPartition(lambda.to_vec()));
    }
    if !in_osc_range(lambda, r, n) {
        return Err(CharsError::OutOfRange(lambda.to_vec()));
    }
    let a = osc_character_lr(lambda, r, n, degree);
    let b = osc_character_skew(lambda, r, n, degree, None);
    if a != b {
        return Err(CharsError::Disagree(lambda.to_vec()));
    }
    Ok(a)
}

/// The generalized partition `(mu, 0, ..., 0, -nu_rev)` of length `ell`,
/// or `None` if `mu` and `nu` do not fit.
pub fn join_parts(mu: &[i64], nu: &[i64], ell: usize) -> Option<Vec<i64>> {
    let (mu, nu): (Vec<i64>, Vec<i64>) = (mu.iter().copied().filter(|&x| x > 0).collect(), nu.iter().copied().filter(|&x| x > 0).collect());
    if mu.len() + nu.len() > ell {
        return None;
    }
    let mut out = mu.clone();
    out.resize(ell - nu.len(), 0);
    out.extend(nu.iter().rev().map(|x| -x));
    Some(out)
}

/// `t^-ell ch` of `(mu, 0, ..., 0, -nu_rev)` for each `ell`; all entries
/// agree once `ell` is large enough.
pub fn normalized_characters(mu: &[i64], nu: &[i64], ells: &[usize], r: usize, n: usize, degree: i64) -> Result<Vec<CharPoly>, CharsError> {
    ells.iter()
        .map(|&ell| {
            let lam = join_parts(mu, nu, ell).ok_or_else(|| CharsError::NotPartition(mu.to_vec()))?;
            Ok(osc_character(&lam, r, n, degree)?.shift_t(-(ell as i64)))
        })
        .collect()
}

/// Character of the charge-`l` sector counted from its basis states.
pub fn census_character(eps: &Eps, l: i64, degree: i64) -> CharPoly {
    let n = eps.n();
    let r = eps.r();
    let mut out = CharPoly::zero(n - r, r, degree);
    for total in 0..=degree {
        for s in crate::engine::states_of_total(eps, total as i32) {
            if s.charge(eps) as i64 == l {
                out.add_weight(eps, &crate::engine::weight_of(eps, &s), 1);
            }
        }
    }
    out
}

/// Character monomial of a single state.
pub fn state_monomial(eps: &Eps, s: &State) -> (i64, Vec<i64>) {
    let r = eps.r();
    let mut e: Vec<i64> = s.0[r..].iter().map(|&x| x as i64).collect();
    e.extend(s.0[..r].iter().map(|&x| x as i64));
    (1, e)
}

/// `t^ell s_mu(x) s_nu(y) / prod (1 - x_i y_j)` truncated.
pub fn cauchy_twisted(mu: &[i64], nu: &[i64], ell: usize, r: usize, n: usize, degree: i64) -> CharPoly {
    let (nx, ny) = (n - r, r);
    let base = CharPoly::from_product(nx, ny, degree, ell as i64, &schur_tableaux(mu, nx), &schur_tableaux(nu, ny));
    let mut out = base;
    for i in 0..nx {
        for j in 0..ny {
            // multiply by sum_k (x_i y_j)^k
            let mut geo = CharPoly::zero(nx, ny, degree);
            for k in 0..=degree / 2 {
                let mut e = vec![0; nx + ny];
                e[i] = k;
                e[nx + j] = k;
                geo.add_term(0, e, 1);
            }
            out = out.mul(&geo);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let e = Eps::zeros(8, 3);
        let w = eps_highest_weight(&[4, 2, 2, 0, 0, -1, -3], &e).unwrap();
        assert_eq!(w.level, 7);
        assert_eq!(w.d, vec![0, -1, -3, 4, 2, 2, 0, 0]);
    }

    #[test]
    fn overflow_and_columns() {
        let ones = Eps::parse("1111", 2).unwrap();
        assert!(eps_highest_weight(&[3], &ones).is_none());
        let w = eps_highest_weight(&[2], &ones).unwrap();
        assert_eq!(w.d, vec![0, 0, 1, 1]);
        let zeros = Eps::zeros(4, 2);
        assert_eq!(eps_highest_weight(&[0, 0], &zeros).unwrap(), Weight::lambda(4).scale(2));
        assert!(eps_highest_weight(&[1, 1, 1], &zeros).is_none());
    }

    #[test]
    fn small_schur() {
        let s1 = schur_tableaux(&[1], 2);
        assert_eq!(s1.terms.len(), 2);
        let s21 = schur_tableaux(&[2, 1], 2);
        assert_eq!(s21.coeff(&[2, 1]), 1);
        assert_eq!(s21.coeff(&[1, 2]), 1);
        assert_eq!(s21.terms.len(), 2);
        assert!(schur_tableaux(&[1, 1, 1], 2).is_zero());
    }

    #[test]
    fn gl1_star() {
        for p in 0..5 {
            assert_eq!(lr_star(&[0], &[p], &[p]), 1);
        }
        assert_eq!(lr_star(&[1, 0], &[1, 0], &[0, 0]), 1);
        assert_eq!(lr_star(&[1, 0], &[2, 0], &[0, 0]), 0);
    }

    #[test]
    fn lr_small() {
        assert_eq!(lr_coefficient(&[2, 1], &[1], &[1, 1]), 1);
        assert_eq!(lr_coefficient(&[3, 2, 1], &[2, 1], &[2, 1]), 2);
    }
}
