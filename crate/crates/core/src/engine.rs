//! Generator actions on the oscillator module, tensor products through the
//! coproduct, and a checker for the defining relations.
//!
//! Every generator maps a basis state to a multiple of a single basis state
//! (or to zero); [`act_mono`] exposes that monomial form directly.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{qhat_parts, Eps, Weight};
use crate::scalars::{qfact, qint, Coeff, Scalar};

/// An occupation vector `m` (0-based storage, slot `i` is `m[i-1]`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct State(pub Vec<i32>);

impl State {
    pub fn zero(n: usize) -> State {
        State(vec![0; n])
    }

    /// `c * e_i` with `i` 1-based.
    pub fn unit(n: usize, i: usize, c: i32) -> State {
        let mut s = State::zero(n);
        s.0[i - 1] = c;
        s
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Occupation of slot `i` (1-based).
    pub fn get(&self, i: usize) -> i32 {
        self.0[i - 1]
    }

    /// Total occupation `|m|`.
    pub fn total(&self) -> i32 {
        self.0.iter().sum()
    }

    /// `(|m|_-, |m|_+)`.
    pub fn side_totals(&self, eps: &Eps) -> (i32, i32) {
        let r = eps.r();
        (self.0[..r].iter().sum(), self.0[r..].iter().sum())
    }

    /// The charge `l(m) = |m|_+ - |m|_-`.
    pub fn charge(&self, eps: &Eps) -> i32 {
        let (a, b) = self.side_totals(eps);
        b - a
    }

    pub fn is_valid(&self, eps: &Eps) -> bool {
        self.0.iter().enumerate().all(|(k, &m)| m >= 0 && (eps.bits()[k] == 0 || m <= 1))
    }

    /// Adds `delta` to slot `i` (1-based).
    pub fn bumped(&self, i: usize, delta: i32) -> State {
        let mut s = self.clone();
        s.0[i - 1] += delta;
        s
    }

    pub fn add(&self, o: &State) -> State {
        State(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ">")
    }
}

/// `wt|m> = Lambda - sum_{i<=r} m_i delta_i + sum_{j>r} m_j delta_j`.
pub fn weight_of(eps: &Eps, s: &State) -> Weight {
    let r = eps.r();
    Weight {
        level: 1,
        d: s.0.iter().enumerate().map(|(k, &m)| if k < r { -(m as i64) } else { m as i64 }).collect(),
        k: 0,
    }
}

/// A generator of the algebra. Node indices live in `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    E(usize),
    F(usize),
    K(Weight),
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "e{i}"),
            Gen::F(i) => write!(f, "f{i}"),
            Gen::K(w) => write!(f, "k[{};{:?}]", w.level, w.d),
        }
    }
}

impl Gen {
    /// `k_{alpha_i}^{sign}`.
    pub fn k_alpha(n: usize, i: usize, sign: i64) -> Gen {
        Gen::K(Weight::alpha(n, i).scale(sign))
    }
}

fn signed_q(neg: bool, e: i64) -> Scalar {
    let s = Scalar::q_pow(e);
    if neg {
        -s
    } else {
        s
    }
}

/// Eigenvalue of `k_mu` on `|m>`.
pub fn k_eigen(eps: &Eps, s: &State, mu: &Weight) -> Scalar {
    let (neg, e) = qhat_parts(eps, &weight_of(eps, s), mu);
    signed_q(neg, e)
}

/// `(negative?, exponent)` of the eigenvalue of `k_{alpha_i}^{sign}` on `|m>`.
fn k_alpha_parts(eps: &Eps, s: &State, i: usize, sign: i64) -> (bool, i64) {
    let (a, b) = eps.node_slots(i);
    let r = eps.r();
    let wt = |k: usize| -> i64 {
        let m = s.get(k) as i64;
        if k <= r {
            -m
        } else {
            m
        }
    };
    let mut neg = false;
    let mut e = 0i64;
    for (slot, c) in [(a, 1i64), (b, -1i64)] {
        let p = wt(slot) * c * sign;
        if eps.bit(slot) == 0 {
            e += p;
        } else {
            e -= p;
            if p.rem_euclid(2) == 1 {
                neg = !neg;
            }
        }
    }
    // level term: wt has level 1, alpha has level 0
    let plus = |k: usize| if k > r { 1 } else { 0 };
    e += sign * (plus(a) - plus(b));
    (neg, e)
}

/// Eigenvalue of `k_{alpha_i}^{sign}` on `|m>`.
pub fn k_alpha_eigen(eps: &Eps, s: &State, i: usize, sign: i64) -> Scalar {
    let (neg, e) = k_alpha_parts(eps, s, i, sign);
    signed_q(neg, e)
}

/// Target state for an occupation change, or `None` when it leaves the
/// allowed set.
fn shifted(eps: &Eps, s: &State, changes: &[(usize, i32)]) -> Option<State> {
    let mut t = s.clone();
    for &(i, d) in changes {
        t.0[i - 1] += d;
        let m = t.0[i - 1];
        if m < 0 || (eps.bit(i) == 1 && m > 1) {
            return None;
        }
    }
    Some(t)
}

/// Action of one generator on one basis state.
///
/// Returns the target state, its coefficient, and the power of the spectral
/// parameter carried by the result (`+1` for `e_0`, `-1` for `f_0`).
pub fn act_mono(eps: &Eps, gen: &Gen, s: &State) -> Option<(State, Scalar, i32)> {
    let n = eps.n();
    let r = eps.r();
    let m = |i: usize| s.get(i) as i64;
    match gen {
        Gen::K(mu) => Some((s.clone(), k_eigen(eps, s, mu), 0)),
        Gen::E(i) => {
            let i = i % n;
            if i == 0 {
                shifted(eps, s, &[(1, 1), (n, 1)]).map(|t| (t, Scalar::one(), 1))
            } else if i < r {
                let c = qint(m(i));
                if c.is_zero() {
                    return None;
                }
                shifted(eps, s, &[(i, -1), (i + 1, 1)]).map(|t| (t, c, 0))
            } else if i == r {
                let c = -(&qint(m(r)) * &qint(m(r + 1)));
                if c.is_zero() {
                    return None;
                }
                shifted(eps, s, &[(r, -1), (r + 1, -1)]).map(|t| (t, c, 0))
            } else {
                let c = qint(m(i + 1));
                if c.is_zero() {
                    return None;
                }
                shifted(eps, s, &[(i, 1), (i + 1, -1)]).map(|t| (t, c, 0))
            }
        }
        Gen::F(i) => {
            let i = i % n;
            if i == 0 {
                let c = -(&qint(m(1)) * &qint(m(n)));
                if c.is_zero() {
                    return None;
                }
                shifted(eps, s, &[(1, -1), (n, -1)]).map(|t| (t, c, -1))
            } else if i < r {
                let c = qint(m(i + 1));
                if c.is_zero() {
                    return None;
                }
                shifted(eps, s, &[(i, 1), (i + 1, -1)]).map(|t| (t, c, 0))
            } else if i == r {
                shifted(eps, s, &[(r, 1), (r + 1, 1)]).map(|t| (t, Scalar::one(), 0))
            } else {
                let c = qint(m(i));
                if c.is_zero() {
                    return None;
                }
                shifted(eps, s, &[(i, -1), (i + 1, 1)]).map(|t| (t, c, 0))
            }
        }
    }
}

/// Action on `W(x)`: the spectral parameter `x` multiplies `e_0`, `x^-1` multiplies `f_0`.
pub fn act(eps: &Eps, gen: &Gen, s: &State, x: &Scalar) -> SparseVec<State> {
    let mut v = SparseVec::new();
    if let Some((t, c, zs)) = act_mono(eps, gen, s) {
        let c = match zs {
            0 => c,
            1 => &c * x,
            _ => &c / x,
        };
        v.add_term(t, c);
    }
    v
}

/// A finitely supported linear combination of basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseVec<K: Ord, C = Scalar> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for SparseVec<K, C> {
    fn default() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone + fmt::Debug, C: Coeff> SparseVec<K, C> {
    pub fn new() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }

    pub fn basis(k: K) -> Self {
        let mut v = Self::new();
        v.terms.insert(k, C::one());
        v
    }

    pub fn from_terms(it: impl IntoIterator<Item = (K, C)>) -> Self {
        let mut v = Self::new();
        for (k, c) in it {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &C) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v.times(c));
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.times(c))).collect() }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut v = self.clone();
        v.add_scaled(o, &C::one());
        v
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut v = self.clone();
        v.add_scaled(o, &C::one().negate());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<K, C> {
        self.terms
    }

    /// First term in basis order.
    pub fn leading(&self) -> Option<(&K, &C)> {
        self.terms.iter().next()
    }

    pub fn map_keys<K2: Ord + Clone + fmt::Debug>(&self, f: impl Fn(&K) -> K2) -> SparseVec<K2, C> {
        let mut v = SparseVec::new();
        for (k, c) in &self.terms {
            v.add_term(f(k), c.clone());
        }
        v
    }

    /// Returns `Some(c)` with `self = c * o` when the two are proportional.
    pub fn ratio_to(&self, o: &Self) -> Option<C> {
        let (k, c0) = o.leading()?;
        let c = self.get(k).times(&c0.recip());
        if self.minus(&o.scaled(&c)).is_zero() {
            Some(c)
        } else {
            None
        }
    }
}

impl<K: Ord + fmt::Debug, C: fmt::Display> fmt::Debug for SparseVec<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){k:?}")?;
        }
        Ok(())
    }
}

/// A basis element of an affinized tensor product: `z_1^{a_1}...z_k^{a_k}`
/// times `|m_1> (x) ... (x) |m_k>`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorState {
    pub factors: Vec<State>,
    pub zexps: Vec<i32>,
}

impl TensorState {
    pub fn new(factors: Vec<State>) -> TensorState {
        let k = factors.len();
        TensorState { factors, zexps: vec![0; k] }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of total occupations over all factors.
    pub fn total(&self) -> i32 {
        self.factors.iter().map(State::total).sum()
    }

    /// Drops the spectral bookkeeping.
    pub fn plain(&self) -> TensorState {
        TensorState::new(self.factors.clone())
    }
}

impl fmt::Debug for TensorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "(x)")?;
            }
            if self.zexps[k] != 0 {
                write!(f, "z{}^{}", k + 1, self.zexps[k])?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

/// Weight of a tensor state, including `sum zexps * delta`.
pub fn tensor_weight(eps: &Eps, t: &TensorState) -> Weight {
    let mut w = Weight::zero(eps.n());
    for s in &t.factors {
        w = &w + &weight_of(eps, s);
    }
    w.k = t.zexps.iter().map(|z| *z as i64).sum();
    w
}

/// Iterated coproduct action (associated to the left):
/// `e_i` acts on factor `j` with `k_i^-1` on later factors, `f_i` with
/// `k_i` on earlier factors.
pub fn coproduct_act_terms(eps: &Eps, gen: &Gen, t: &TensorState, out: &mut Vec<(TensorState, Scalar)>) {
    match gen {
        Gen::K(mu) => {
            let mut c = Scalar::one();
            for s in &t.factors {
                c = &c * &k_eigen(eps, s, mu);
            }
            out.push((t.clone(), c));
        }
        Gen::E(i) => {
            let k = t.len();
            // suffix products of k_i^{-1}
            let mut neg = false;
            let mut e = 0i64;
            let mut suffix = vec![(false, 0i64); k];
            for j in (0..k).rev() {
                suffix[j] = (neg, e);
                let (nj, ej) = k_alpha_parts(eps, &t.factors[j], *i, -1);
                neg ^= nj;
                e += ej;
            }
            for j in 0..k {
                if let Some((s2, c, zs)) = act_mono(eps, gen, &t.factors[j]) {
                    let mut nt = t.clone();
                    nt.factors[j] = s2;
                    nt.zexps[j] += zs;
                    let (nn, ee) = suffix[j];
                    let c = &c * &signed_q(nn, ee);
                    out.push((nt, c));
                }
            }
        }
        Gen::F(i) => {
            let mut neg = false;
            let mut e = 0i64;
            for j in 0..t.len() {
                if let Some((s2, c, zs)) = act_mono(eps, gen, &t.factors[j]) {
                    let mut nt = t.clone();
                    nt.factors[j] = s2;
                    nt.zexps[j] += zs;
                    out.push((nt, &c * &signed_q(neg, e)));
                }
                let (nj, ej) = k_alpha_parts(eps, &t.factors[j], *i, 1);
                neg ^= nj;
                e += ej;
            }
        }
    }
}

pub fn coproduct_act(eps: &Eps, gen: &Gen, t: &TensorState) -> SparseVec<TensorState> {
    let mut buf = Vec::new();
    coproduct_act_terms(eps, gen, t, &mut buf);
    SparseVec::from_terms(buf)
}

/// Applies one generator to a vector of tensor states.
pub fn apply_gen(eps: &Eps, gen: &Gen, v: &SparseVec<TensorState>) -> SparseVec<TensorState> {
    let mut out = SparseVec::new();
    let mut buf = Vec::new();
    for (t, c) in v.iter() {
        buf.clear();
        coproduct_act_terms(eps, gen, t, &mut buf);
        for (t2, c2) in buf.drain(..) {
            out.add_term(t2, &c2 * c);
        }
    }
    out
}

/// Applies a word of generators, rightmost letter first.
pub fn apply_word(eps: &Eps, word: &[Gen], v: &SparseVec<TensorState>) -> SparseVec<TensorState> {
    let mut cur = v.clone();
    for g in word.iter().rev() {
        if cur.is_zero() {
            break;
        }
        cur = apply_gen(eps, g, &cur);
    }
    cur
}

/// Applies a linear combination of words.
pub fn apply_combination(eps: &Eps, comb: &[(Scalar, Vec<Gen>)], v: &SparseVec<TensorState>) -> SparseVec<TensorState> {
    let mut out = SparseVec::new();
    for (c, w) in comb {
        out.add_scaled(&apply_word(eps, w, v), c);
    }
    out
}

/// Replaces the symbolic spectral parameters by values: `z_j -> xs[j]`.
pub fn specialize(v: &SparseVec<TensorState>, xs: &[Scalar]) -> SparseVec<TensorState> {
    let mut out = SparseVec::new();
    for (t, c) in v.iter() {
        let mut c = c.clone();
        for (j, &a) in t.zexps.iter().enumerate() {
            if a != 0 {
                c = &c * &xs[j].pow(a as i64);
            }
        }
        out.add_term(t.plain(), c);
    }
    out
}

/// The antipode on generators, as combinations of words. It is the unique
/// antipode for the coproduct used by [`coproduct_act`]:
/// `S(k_mu) = k_{-mu}`, `S(e_i) = -e_i k_i`, `S(f_i) = -k_i^{-1} f_i`.
pub fn antipode(n: usize, gen: &Gen) -> Vec<(Scalar, Vec<Gen>)> {
    match gen {
        Gen::K(mu) => vec![(Scalar::one(), vec![Gen::K(mu.scale(-1))])],
        Gen::E(i) => vec![(-Scalar::one(), vec![Gen::E(*i), Gen::k_alpha(n, *i, 1)])],
        Gen::F(i) => vec![(-Scalar::one(), vec![Gen::k_alpha(n, *i, -1), Gen::F(*i)])],
    }
}

// ---------------------------------------------------------------------------
// defining relations

/// Identifies one defining relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelId {
    KUnit,
    KAdd(usize, usize),
    KE(usize, usize),
    KF(usize, usize),
    EF(usize, usize),
    OddSquareE(usize),
    OddSquareF(usize),
    DistantE(usize, usize),
    DistantF(usize, usize),
    SerreE(usize, usize),
    SerreF(usize, usize),
    OddSerreE(usize),
    OddSerreF(usize),
}

impl fmt::Debug for RelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelId::KUnit => write!(f, "k0=1"),
            RelId::KAdd(a, b) => write!(f, "k-add[{a},{b}]"),
            RelId::KE(m, i) => write!(f, "k-e[{m},{i}]"),
            RelId::KF(m, i) => write!(f, "k-f[{m},{i}]"),
            RelId::EF(i, j) => write!(f, "e-f[{i},{j}]"),
            RelId::OddSquareE(i) => write!(f, "e^2[{i}]"),
            RelId::OddSquareF(i) => write!(f, "f^2[{i}]"),
            RelId::DistantE(i, j) => write!(f, "e-distant[{i},{j}]"),
            RelId::DistantF(i, j) => write!(f, "f-distant[{i},{j}]"),
            RelId::SerreE(i, j) => write!(f, "e-serre[{i},{j}]"),
            RelId::SerreF(i, j) => write!(f, "f-serre[{i},{j}]"),
            RelId::OddSerreE(i) => write!(f, "e-odd-serre[{i}]"),
            RelId::OddSerreF(i) => write!(f, "f-odd-serre[{i}]"),
        }
    }
}

impl fmt::Display for RelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A relation `sum c_w w = 0`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: RelId,
    pub terms: Vec<(Scalar, Vec<Gen>)>,
}

/// Basis `Lambda, delta_1, ..., delta_n` of the weight lattice.
pub fn lattice_basis(n: usize) -> Vec<Weight> {
    let mut b = vec![Weight::lambda(n)];
    b.extend((1..=n).map(|i| Weight::delta(n, i)));
    b
}

fn adjacent(n: usize, i: usize, j: usize) -> bool {
    (i + 1) % n == j || (j + 1) % n == i
}

/// `(-1)^{eps_i}` for node `i` (slot `i`, with slot 0 read as slot n).
fn node_sign(eps: &Eps, i: usize) -> i64 {
    let (a, _) = eps.node_slots(i);
    if eps.bit(a) == 0 {
        1
    } else {
        -1
    }
}

/// All defining relations for the given parity sequence. With
/// `include_affine = false`, relations involving node 0 are skipped.
pub fn relations(eps: &Eps, include_affine: bool) -> Vec<Relation> {
    let n = eps.n();
    let nodes: Vec<usize> = if include_affine { (0..n).collect() } else { (1..n).collect() };
    let basis = lattice_basis(n);
    let one = Scalar::one();
    let mone = -Scalar::one();
    let mut out = Vec::new();

    out.push(Relation {
        id: RelId::KUnit,
        terms: vec![(one.clone(), vec![Gen::K(Weight::zero(n))]), (mone.clone(), vec![])],
    });
    for a in 0..basis.len() {
        for b in a..basis.len() {
            out.push(Relation {
                id: RelId::KAdd(a, b),
                terms: vec![
                    (one.clone(), vec![Gen::K(&basis[a] + &basis[b])]),
                    (mone.clone(), vec![Gen::K(basis[a].clone()), Gen::K(basis[b].clone())]),
                ],
            });
        }
    }
    for (mi, mu) in basis.iter().enumerate() {
        for &i in &nodes {
            let c = crate::lattice::qhat(eps, mu, &Weight::alpha(n, i));
            let neg_mu = Gen::K(mu.scale(-1));
            out.push(Relation {
                id: RelId::KE(mi, i),
                terms: vec![
                    (one.clone(), vec![Gen::K(mu.clone()), Gen::E(i), neg_mu.clone()]),
                    (-c.clone(), vec![Gen::E(i)]),
                ],
            });
            out.push(Relation {
                id: RelId::KF(mi, i),
                terms: vec![
                    (one.clone(), vec![Gen::K(mu.clone()), Gen::F(i), neg_mu]),
                    (-c.inv().unwrap(), vec![Gen::F(i)]),
                ],
            });
        }
    }
    let qdiff_inv = (&Scalar::q_pow(1) - &Scalar::q_pow(-1)).inv().unwrap();
    for &i in &nodes {
        for &j in &nodes {
            let mut terms = vec![
                (one.clone(), vec![Gen::E(i), Gen::F(j)]),
                (mone.clone(), vec![Gen::F(j), Gen::E(i)]),
            ];
            if i == j {
                terms.push((-qdiff_inv.clone(), vec![Gen::k_alpha(n, i, 1)]));
                terms.push((qdiff_inv.clone(), vec![Gen::k_alpha(n, i, -1)]));
            }
            out.push(Relation { id: RelId::EF(i, j), terms });
        }
    }
    for &i in &nodes {
        if eps.is_odd_node(i) {
            out.push(Relation { id: RelId::OddSquareE(i), terms: vec![(one.clone(), vec![Gen::E(i), Gen::E(i)])] });
            out.push(Relation { id: RelId::OddSquareF(i), terms: vec![(one.clone(), vec![Gen::F(i), Gen::F(i)])] });
        }
    }
    for &i in &nodes {
        for &j in &nodes {
            if i < j && !adjacent(n, i, j) {
                for (ctor, id) in [
                    (Gen::E as fn(usize) -> Gen, RelId::DistantE(i, j)),
                    (Gen::F as fn(usize) -> Gen, RelId::DistantF(i, j)),
                ] {
                    out.push(Relation {
                        id,
                        terms: vec![
                            (one.clone(), vec![ctor(i), ctor(j)]),
                            (mone.clone(), vec![ctor(j), ctor(i)]),
                        ],
                    });
                }
            }
        }
    }
    let q2 = qint(2);
    for &i in &nodes {
        if eps.is_odd_node(i) {
            continue;
        }
        let mid = -(q2.scale_int(node_sign(eps, i)));
        for &j in &nodes {
            if !adjacent(n, i, j) {
                continue;
            }
            for (ctor, id) in [
                (Gen::E as fn(usize) -> Gen, RelId::SerreE(i, j)),
                (Gen::F as fn(usize) -> Gen, RelId::SerreF(i, j)),
            ] {
                out.push(Relation {
                    id,
                    terms: vec![
                        (one.clone(), vec![ctor(i), ctor(i), ctor(j)]),
                        (mid.clone(), vec![ctor(i), ctor(j), ctor(i)]),
                        (one.clone(), vec![ctor(j), ctor(i), ctor(i)]),
                    ],
                });
            }
        }
    }
    for &i in &nodes {
        if !eps.is_odd_node(i) {
            continue;
        }
        let (im, ip) = ((i + n - 1) % n, (i + 1) % n);
        if !include_affine && (im == 0 || ip == 0) {
            continue;
        }
        let last = q2.scale_int(node_sign(eps, i));
        for (ctor, id) in [
            (Gen::E as fn(usize) -> Gen, RelId::OddSerreE(i)),
            (Gen::F as fn(usize) -> Gen, RelId::OddSerreF(i)),
        ] {
            let w = |a: usize, b: usize, c: usize, d: usize| vec![ctor(a), ctor(b), ctor(c), ctor(d)];
            out.push(Relation {
                id,
                terms: vec![
                    (one.clone(), w(i, im, i, ip)),
                    (mone.clone(), w(i, ip, i, im)),
                    (one.clone(), w(ip, i, im, i)),
                    (mone.clone(), w(im, i, ip, i)),
                    (last.clone(), w(i, im, ip, i)),
                ],
            });
        }
    }
    out
}

/// Evaluates a relation on a basis element; returns the residual (zero iff it holds).
pub fn relation_residual(eps: &Eps, rel: &Relation, t: &TensorState) -> SparseVec<TensorState> {
    apply_combination(eps, &rel.terms, &SparseVec::basis(t.clone()))
}

pub fn check_relation(eps: &Eps, rel: &Relation, t: &TensorState) -> bool {
    relation_residual(eps, rel, t).is_zero()
}

/// Outcome of a relation sweep.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<(RelId, TensorState, String)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every relation on every given basis element.
pub fn relation_suite(eps: &Eps, states: &[TensorState], include_affine: bool) -> RelationReport {
    use rayon::prelude::*;
    let rels = relations(eps, include_affine);
    let failures: Vec<(RelId, TensorState, String)> = states
        .par_iter()
        .flat_map_iter(|t| {
            rels.iter().filter_map(move |rel| {
                let res = relation_residual(eps, rel, t);
                if res.is_zero() {
                    None
                } else {
                    Some((rel.id.clone(), t.clone(), format!("{res:?}")))
                }
            })
        })
        .collect();
    RelationReport { checked: states.len() * rels.len(), failures }
}

// ---------------------------------------------------------------------------
// enumeration

/// All valid states with `|m| = total`, in lexicographic order.
pub fn states_of_total(eps: &Eps, total: i32) -> Vec<State> {
    let n = eps.n();
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(eps: &Eps, k: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<State>) {
        let n = cur.len();
        if k == n - 1 {
            if eps.bits()[k] == 1 && left > 1 {
                return;
            }
            cur[k] = left;
            out.push(State(cur.clone()));
            return;
        }
        let cap = if eps.bits()[k] == 1 { left.min(1) } else { left };
        for v in (0..=cap).rev() {
            cur[k] = v;
            rec(eps, k + 1, left - v, cur, out);
        }
        cur[k] = 0;
    }
    rec(eps, 0, total, &mut cur, &mut out);
    out.sort();
    out
}

/// All valid states with `|m| <= max_total`.
pub fn states_up_to(eps: &Eps, max_total: i32) -> Vec<State> {
    (0..=max_total).flat_map(|t| states_of_total(eps, t)).collect()
}

/// All `k`-fold tensor states with total occupation at most `max_total`.
pub fn tensor_states_up_to(eps: &Eps, k: usize, max_total: i32) -> Vec<TensorState> {
    let per: Vec<Vec<State>> = (0..=max_total).map(|t| states_of_total(eps, t)).collect();
    let mut out = Vec::new();
    fn rec(per: &[Vec<State>], k: usize, left: i32, cur: &mut Vec<State>, out: &mut Vec<TensorState>) {
        if cur.len() == k {
            out.push(TensorState::new(cur.clone()));
            return;
        }
        for t in 0..=left {
            for s in &per[t as usize] {
                cur.push(s.clone());
                rec(per, k, left - t, cur, out);
                cur.pop();
            }
        }
    }
    rec(&per, k, max_total, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// polarization

/// The symmetric form `(|m>, |m>) = q^{-sum m_i(m_i-1)/2} prod [m_i]!`.
pub fn form_diag(s: &State) -> Scalar {
    let mut e = 0i64;
    let mut c = Scalar::one();
    for &m in &s.0 {
        let m = m as i64;
        e -= m * (m - 1) / 2;
        c = &c * &qfact(m).expect("non-negative occupation");
    }
    c.shift(e)
}

/// Pairing of two vectors under the diagonal form.
pub fn form(v: &SparseVec<State>, w: &SparseVec<State>) -> Scalar {
    let mut acc = Scalar::zero();
    for (s, c) in v.iter() {
        let d = w.get(s);
        if !d.is_zero() {
            acc = &acc + &(&(c * &d) * &form_diag(s));
        }
    }
    acc
}

/// The anti-involution `eta` on generators of the finite part.
pub fn eta(eps: &Eps, gen: &Gen) -> Vec<(Scalar, Vec<Gen>)> {
    let n = eps.n();
    let r = eps.r();
    let mq2 = -Scalar::q_pow(2);
    match gen {
        Gen::K(mu) => vec![(Scalar::one(), vec![Gen::K(mu.clone())])],
        Gen::E(i) => {
            let i = *i;
            assert!(i != 0 && i < n, "eta is defined on the finite part");
            let qi = eps.q_i(i);
            let pre = if i < r {
                mq2.pow(eps.bit(i) as i64 - eps.bit(i + 1) as i64)
            } else if i == r {
                mq2.pow(eps.bit(r) as i64 - 1)
            } else {
                Scalar::one()
            };
            vec![(&pre * &qi, vec![Gen::F(i), Gen::k_alpha(n, i, -1)])]
        }
        Gen::F(i) => {
            let i = *i;
            assert!(i != 0 && i < n, "eta is defined on the finite part");
            let qi_inv = eps.q_i(i).inv().unwrap();
            let pre = if i < r {
                mq2.pow(eps.bit(i + 1) as i64 - eps.bit(i) as i64)
            } else if i == r {
                mq2.pow(1 - eps.bit(r) as i64)
            } else {
                Scalar::one()
            };
            vec![(&pre * &qi_inv, vec![Gen::k_alpha(n, i, 1), Gen::E(i)])]
        }
    }
}

fn single(v: &SparseVec<TensorState>) -> SparseVec<State> {
    v.map_keys(|t| t.factors[0].clone())
}

/// Checks `(x v, w) = (v, eta(x) w)` on two basis states.
pub fn polarization_check(eps: &Eps, gen: &Gen, v: &State, w: &State) -> bool {
    let tv = SparseVec::basis(TensorState::new(vec![v.clone()]));
    let tw = SparseVec::basis(TensorState::new(vec![w.clone()]));
    let xv = single(&apply_word(eps, std::slice::from_ref(gen), &tv));
    let ew = single(&apply_combination(eps, &eta(eps, gen), &tw));
    let lhs = form(&xv, &single(&tw));
    let rhs = form(&single(&tv), &ew);
    lhs == rhs
}

// ---------------------------------------------------------------------------
// classical limit

/// Operators of the `q = 1` specialization: `e_i`, `f_i` for finite nodes
/// and the divided Cartan operators `(k_{delta_a} - k_{delta_a}^-1)/(q - q^-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalOp {
    E(usize),
    F(usize),
    D(usize),
}

type RatVec = BTreeMap<State, BigRational>;

fn at_one(c: &Scalar) -> BigRational {
    c.substitute_q(&BigRational::one()).expect("generator coefficients are Laurent")
}

fn classical_apply(eps: &Eps, op: ClassicalOp, v: &RatVec) -> RatVec {
    let n = eps.n();
    let mut out = RatVec::new();
    for (s, c) in v {
        let (t, k) = match op {
            ClassicalOp::E(i) | ClassicalOp::F(i) => {
                let g = if matches!(op, ClassicalOp::E(_)) { Gen::E(i) } else { Gen::F(i) };
                match act_mono(eps, &g, s) {
                    Some((t, k, _)) => (t, at_one(&k)),
                    None => continue,
                }
            }
            ClassicalOp::D(a) => {
                let k = k_eigen(eps, s, &Weight::delta(n, a));
                let divided = &(&k - &k.inv().expect("unit")) / &(&Scalar::q_pow(1) - &Scalar::q_pow(-1));
                (s.clone(), at_one(&divided))
            }
        };
        let e = out.entry(t).or_insert_with(BigRational::zero);
        *e += c * k;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A gl_n relation at `q = 1`, as a signed sum of words (rightmost acts first).
#[derive(Clone, Debug)]
pub struct ClassicalRelation {
    pub name: String,
    pub terms: Vec<(i64, Vec<ClassicalOp>)>,
}

/// Commutators among `E_i, F_i` (`1 <= i < n`) and `D_a` (`1 <= a <= n`),
/// plus the Serre relations.
pub fn gl_relations(n: usize) -> Vec<ClassicalRelation> {
    use ClassicalOp::*;
    let comm = |x: ClassicalOp, y: ClassicalOp| vec![(1, vec![x, y]), (-1, vec![y, x])];
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            out.push(ClassicalRelation { name: format!("[D{a},D{b}]"), terms: comm(D(a), D(b)) });
        }
        for i in 1..n {
            let c = (a == i) as i64 - (a == i + 1) as i64;
            let mut t = comm(D(a), E(i));
            t.push((-c, vec![E(i)]));
            out.push(ClassicalRelation { name: format!("[D{a},E{i}]"), terms: t });
            let mut t = comm(D(a), F(i));
            t.push((c, vec![F(i)]));
            out.push(ClassicalRelation { name: format!("[D{a},F{i}]"), terms: t });
        }
    }
    for i in 1..n {
        for j in 1..n {
            let mut t = comm(E(i), F(j));
            if i == j {
                t.push((-1, vec![D(i)]));
                t.push((1, vec![D(i + 1)]));
            }
            out.push(ClassicalRelation { name: format!("[E{i},F{j}]"), terms: t });
            if i.abs_diff(j) > 1 {
                out.push(ClassicalRelation { name: format!("[E{i},E{j}]"), terms: comm(E(i), E(j)) });
                out.push(ClassicalRelation { name: format!("[F{i},F{j}]"), terms: comm(F(i), F(j)) });
            } else if i.abs_diff(j) == 1 {
                for (x, y, tag) in [(E(i), E(j), "E"), (F(i), F(j), "F")] {
                    let terms = vec![(1, vec![x, x, y]), (-2, vec![x, y, x]), (1, vec![y, x, x])];
                    out.push(ClassicalRelation { name: format!("serre {tag}{i},{tag}{j}"), terms });
                }
            }
        }
    }
    out
}

/// Outcome of the `q = 1` check.
#[derive(Clone, Debug, Default)]
pub struct ClassicalReport {
    pub checked: usize,
    pub failures: Vec<(String, State)>,
}

/// Evaluates every gl_n relation at `q = 1` on each basis state with
/// `|m| <= max_total`. Intermediate vectors are not truncated.
pub fn classical_limit_check(eps: &Eps, max_total: i32) -> ClassicalReport {
    use rayon::prelude::*;
    let rels = gl_relations(eps.n());
    let states = states_up_to(eps, max_total);
    let failures: Vec<(String, State)> = states
        .par_iter()
        .flat_map_iter(|s| {
            let base: RatVec = [(s.clone(), BigRational::one())].into_iter().collect();
            rels.iter()
                .filter(move |rel| {
                    let mut acc = RatVec::new();
                    for (c, word) in &rel.terms {
                        let mut v = base.clone();
                        for op in word.iter().rev() {
                            v = classical_apply(eps, *op, &v);
                        }
                        for (t, x) in v {
                            *acc.entry(t).or_insert_with(BigRational::zero) += x * BigRational::from_integer((*c).into());
                        }
                    }
                    acc.values().any(|x| !x.is_zero())
                })
                .map(move |rel| (rel.name.clone(), s.clone()))
        })
        .collect();
    ClassicalReport { checked: states.len() * rels.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e4() -> Eps {
        Eps::zeros(4, 2)
    }

    #[test]
    fn table_examples() {
        let e = e4();
        let one = Scalar::one();
        let v = act(&e, &Gen::F(2), &State::zero(4), &one);
        assert_eq!(v.get(&State(vec![0, 1, 1, 0])), one);
        let w = act(&e, &Gen::E(2), &State(vec![0, 1, 1, 0]), &one);
        assert_eq!(w.get(&State::zero(4)), -one.clone());
        let mixed = Eps::parse("0100", 2).unwrap();
        assert!(act(&mixed, &Gen::F(2), &State(vec![0, 1, 0, 0]), &one).is_zero());
    }

    #[test]
    fn weights() {
        let e = e4();
        assert_eq!(weight_of(&e, &State::zero(4)), Weight::lambda(4));
        let v = State::unit(4, 3, 2);
        assert_eq!(weight_of(&e, &v), &Weight::lambda(4) + &Weight::delta(4, 3).scale(2));
        let t = TensorState::new(vec![State::zero(4), State::zero(4)]);
        assert_eq!(tensor_weight(&e, &t), Weight::lambda(4).scale(2));
    }

    #[test]
    fn cartan_table_matches_qhat() {
        for bits in ["0000", "0100", "1111", "0110"] {
            let e = Eps::parse(bits, 2).unwrap();
            for s in states_up_to(&e, 3) {
                let plus: i64 = s.0[2..].iter().map(|m| *m as i64).sum();
                assert_eq!(k_eigen(&e, &s, &Weight::lambda(4)), Scalar::q_pow(plus));
                for i in 1..=4 {
                    let qi = e.q_i(i);
                    let m = s.get(i) as i64;
                    let expect = if i <= 2 { qi.pow(-m) } else { &qi.pow(m) * &Scalar::q_pow(1) };
                    assert_eq!(k_eigen(&e, &s, &Weight::delta(4, i)), expect);
                }
                for i in 0..4 {
                    for sign in [-1, 1] {
                        let expect = k_eigen(&e, &s, &Weight::alpha(4, i).scale(sign));
                        assert_eq!(k_alpha_eigen(&e, &s, i, sign), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn ef_commutator_on_first_state() {
        let e = e4();
        let t = TensorState::new(vec![State(vec![1, 0, 0, 0])]);
        let rels = relations(&e, true);
        let ef = rels.iter().find(|r| r.id == RelId::EF(1, 1)).unwrap();
        assert!(check_relation(&e, ef, &t));
    }

    #[test]
    fn enumeration_counts() {
        let e = Eps::zeros(5, 2);
        assert_eq!(states_of_total(&e, 3).len(), 35);
        let o = Eps::parse("0101", 2).unwrap();
        // slots 2 and 4 hold at most one quantum
        assert!(states_up_to(&o, 4).iter().all(|s| s.is_valid(&o)));
        assert_eq!(tensor_states_up_to(&e, 2, 1).len(), 11);
    }

    #[test]
    fn antipode_axiom_on_module() {
        // m (S (x) id) Delta(x) = counit(x) as operators on single states
        for bits in ["0000", "0100"] {
            let e = Eps::parse(bits, 2).unwrap();
            let n = 4;
            for s in states_up_to(&e, 3) {
                let v = SparseVec::basis(TensorState::new(vec![s.clone()]));
                for i in 0..n {
                    // Delta(e) = 1 (x) e + e (x) k^-1  ->  S(1) e + S(e) k^-1
                    let mut comb = vec![(Scalar::one(), vec![Gen::E(i)])];
                    for (c, w) in antipode(n, &Gen::E(i)) {
                        let mut w = w.clone();
                        w.push(Gen::k_alpha(n, i, -1));
                        comb.push((c, w));
                    }
                    assert!(apply_combination(&e, &comb, &v).is_zero());
                    // Delta(f) = f (x) 1 + k (x) f  ->  S(f) + S(k) f
                    let mut comb = antipode(n, &Gen::F(i));
                    comb.push((Scalar::one(), vec![Gen::k_alpha(n, i, -1), Gen::F(i)]));
                    assert!(apply_combination(&e, &comb, &v).is_zero());
                }
                let mu = Weight::delta(n, 3);
                let comb = vec![(Scalar::one(), vec![Gen::K(mu.scale(-1)), Gen::K(mu.clone())]), (-Scalar::one(), vec![])];
                let s_k = antipode(n, &Gen::K(mu.clone()));
                assert_eq!(s_k[0].1, vec![Gen::K(mu.scale(-1))]);
                assert!(apply_combination(&e, &comb, &v).is_zero());
            }
        }
    }

    #[test]
    fn classical_limit_small() {
        let e = Eps::zeros(4, 2);
        let rep = classical_limit_check(&e, 2);
        assert!(rep.failures.is_empty(), "{:?}", &rep.failures[..rep.failures.len().min(3)]);
        // one wrong sign would show up immediately
        let v: RatVec = [(State(vec![1, 0, 0, 0]), BigRational::one())].into_iter().collect();
        let d = classical_apply(&e, ClassicalOp::D(1), &v);
        assert_eq!(d[&State(vec![1, 0, 0, 0])], BigRational::from_integer((-1).into()));
    }

    #[test]
    fn form_example() {
        let s = State(vec![2, 0, 0, 0]);
        assert_eq!(form_diag(&s), &Scalar::q_pow(-1) * &qfact(2).unwrap());
    }
}
