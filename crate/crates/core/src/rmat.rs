//! Normalized R matrices on two-fold products, solved as combinations of
//! the component projectors, and what is built from them: Yang-Baxter
//! checks, fusion images and Kirillov-Reshetikhin modules.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_rational::BigRational;

use serde::Serialize;
use thiserror::Error;

use crate::chars::CharPoly;
use crate::engine::{coproduct_act_terms, tensor_weight, Gen, SparseVec, TensorState};
use crate::lattice::{Eps, Weight};
use crate::linalg::{independent_rows, kernel, solve, Echelon};
use crate::scalars::{Coeff, Scalar, ScalarError, ZScalar};
use crate::structure::{n_of, sector_depth_for_degree, Decomposition, StructureError, TensorModule};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RmatError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("intertwiner obstruction: the affine equations are inconsistent")]
    Obstruction,
    #[error("depth too small to determine rho_{0}")]
    DepthTooSmall(i64),
    #[error("spectral-parameter collision: rho_{t} has a pole at {value}")]
    Collision { t: i64, value: String },
    #[error("component {0} is needed but its coefficient was not solved")]
    Unsolved(i64),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

type ZVec = SparseVec<TensorState, ZScalar>;

fn to_z(v: &SparseVec<TensorState>) -> ZVec {
    SparseVec::from_terms(v.iter().map(|(k, c)| (k.clone(), ZScalar::constant(c.clone()))))
}

/// `(1 - q^a z)/(z - q^a)`.
pub fn spectral_factor(a: i64) -> ZScalar {
    let qa = Scalar::q_pow(a);
    ZScalar::from_polys(vec![Scalar::one(), -qa.clone()], vec![-qa, Scalar::one()])
}

/// `prod_{i=1}^{t} (1 - q^{|l-m|+2i} z)/(z - q^{|l-m|+2i})`.
pub fn spectral_closed_form(l: i64, m: i64, t: i64) -> ZScalar {
    let d = (l - m).abs();
    (1..=t).fold(ZScalar::one(), |acc, i| &acc * &spectral_factor(d + 2 * i))
}

/// The normalizing function: the closed-form product up to `min(|l|,|m|)`
/// when `lm > 0`, and 1 otherwise.
pub fn c_norm(l: i64, m: i64) -> ZScalar {
    if l * m > 0 {
        spectral_closed_form(l, m, l.abs().min(m.abs()))
    } else {
        ZScalar::one()
    }
}

/// Applies one generator to a vector of tensor states whose factors carry
/// spectral parameters `xs` (a factor contributes `xs[j]^{±1}` for `e_0`/`f_0`).
pub fn apply_gen_spectral(eps: &Eps, gen: &Gen, v: &ZVec, xs: &[ZScalar]) -> Result<ZVec, RmatError> {
    let mut out = SparseVec::new();
    let mut buf = Vec::new();
    for (t, c) in v.iter() {
        buf.clear();
        coproduct_act_terms(eps, gen, t, &mut buf);
        for (t2, c2) in buf.drain(..) {
            let mut coef = c.scale(&c2);
            for (j, &a) in t2.zexps.iter().enumerate() {
                if a != 0 {
                    coef = coef.times(&xs[j].pow(a as i64));
                }
            }
            out.add_term(t2.plain(), coef);
        }
    }
    Ok(out)
}

/// Value of a coefficient at `q = 5/3`, `z = 7/2`, or `None` at a pole.
fn sample(c: &ZScalar) -> Option<BigRational> {
    let q0 = BigRational::new(5.into(), 3.into());
    let z0 = Scalar::rational(7, 2);
    c.eval(&z0).ok()?.substitute_q(&q0).ok()
}

/// Solves a tall system over `Q(q)(z)`: rows independent at a sample point
/// form a square-ish subsystem that is solved exactly, and the solution is
/// then checked against every row. Falls back to full elimination if that check fails.
fn solve_tall(rows: &[Vec<ZScalar>], rhs: &[ZScalar], ncols: usize) -> Result<(Vec<ZScalar>, Vec<Vec<ZScalar>>), RmatError> {
    let sampled: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            r.iter().chain(std::iter::once(b)).map(sample).collect::<Option<Vec<_>>>()
        })
        .map(|v| v.unwrap_or_default())
        .collect();
    let usable: Vec<usize> = (0..rows.len()).filter(|&k| !sampled[k].is_empty()).collect();
    let picked: Vec<usize> =
        independent_rows(&usable.iter().map(|&k| sampled[k].clone()).collect::<Vec<_>>()).into_iter().map(|j| usable[j]).collect();
    let sub_rows: Vec<Vec<ZScalar>> = picked.iter().map(|&k| rows[k].clone()).collect();
    let sub_rhs: Vec<ZScalar> = picked.iter().map(|&k| rhs[k].clone()).collect();
    let x = solve(&sub_rows, &sub_rhs, ncols).ok_or(RmatError::Obstruction)?;
    let holds = rows.iter().zip(rhs).all(|(r, b)| {
        let mut acc = ZScalar::zero();
        for (c, xi) in r.iter().zip(&x) {
            if !c.is_zero() && !xi.is_zero() {
                acc = &acc + &c.times(xi);
            }
        }
        &acc == b
    });
    if holds {
        let ker = kernel(&sub_rows, ncols);
        // the subsystem's kernel contains the full kernel; a column fixed by
        // the subsystem is fixed by the full system
        return Ok((x, ker));
    }
    let x = solve(rows, rhs, ncols).ok_or(RmatError::Obstruction)?;
    Ok((x, kernel(rows, ncols)))
}

/// How the spectral argument of `rho_t` is specialized.
#[derive(Clone, Debug)]
pub enum Arg {
    /// `rho_t(c z)`, kept symbolic in `z`.
    Scaled(Scalar),
    /// `rho_t(c)`.
    Value(Scalar),
}

/// Solved spectral coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralCoeffs {
    pub l: i64,
    pub m: i64,
    /// `rho[t]`, `None` when component `t` is absent or undetermined.
    pub rho: Vec<Option<String>>,
    /// `kappa[t]` relates `rho_t/rho_{t-1}` to the closed-form factor.
    pub kappa: Vec<Option<String>>,
}

/// The normalized R matrix `W_l(z) (x) W_m(1) -> W_m(1) (x) W_l(z)` as
/// `sum_t rho_t(z) P_t` with `rho_0 = 1`.
pub struct RMatrix {
    pub l: i64,
    pub m: i64,
    pub dec: Decomposition,
    pub rho: Vec<Option<ZScalar>>,
    proj_cache: Mutex<BTreeMap<TensorState, Vec<SparseVec<TensorState>>>>,
}

impl RMatrix {
    /// Solves `rho_1..rho_T` from `R Delta(e_0) = Delta(e_0) R` applied to the
    /// component highest vectors, using weight spaces within `depth`.
    pub fn solve(eps: &Eps, l: i64, m: i64, max_t: i64, depth: i64) -> Result<RMatrix, RmatError> {
        Self::solve_with_room(eps, l, m, max_t, depth, depth)
    }

    /// As [`RMatrix::solve`], keeping the projectors usable on weight spaces
    /// down to `module_depth`.
    pub fn solve_with_room(eps: &Eps, l: i64, m: i64, max_t: i64, depth: i64, module_depth: i64) -> Result<RMatrix, RmatError> {
        let module_depth = module_depth.max(depth);
        // component t has its highest vector within |t - N| of the top
        let dec = Decomposition::new(eps, l, m, module_depth + n_of(l, m), module_depth)?;
        let n = eps.n();
        let z = ZScalar::z();
        let one = ZScalar::one();
        // unknown columns: t >= 1 with a component
        let ts: Vec<i64> = (1..=dec.max_t()).filter(|&t| dec.has_component(t)).collect();
        let col_of = |t: i64| ts.iter().position(|&x| x == t);
        let mut rows: Vec<Vec<ZScalar>> = Vec::new();
        let mut rhs: Vec<ZScalar> = Vec::new();
        for s in 0..=dec.max_t().min(max_t) {
            let (Some(u), Some(u2)) = (dec.highest(s), dec.mirror_highest(s)) else { continue };
            let w = dec.highest_weight(s).unwrap();
            let target = &w + &Weight::alpha(n, 0);
            match dec.module.depth_of(&target) {
                Some(d) if d <= depth => {}
                _ => continue,
            }
            // source side: first factor carries z
            let src = apply_gen_spectral(eps, &Gen::E(0), &to_z(&u), &[z.clone(), one.clone()])?;
            let (mut a_part, mut b_part) = (SparseVec::new(), SparseVec::new());
            for (k, c) in src.iter() {
                // split c = a + b z (c is a polynomial of degree <= 1)
                let num = c.num();
                if let Some(c0) = num.first() {
                    a_part.add_term(k.clone(), c0.clone());
                }
                if let Some(c1) = num.get(1) {
                    b_part.add_term(k.clone(), c1.clone());
                }
            }
            let pa = dec.project_all(&target, &a_part)?;
            let pb = dec.project_all(&target, &b_part)?;
            // target side: second factor carries z
            let tgt = apply_gen_spectral(eps, &Gen::E(0), &to_z(&u2), &[one.clone(), z.clone()])?;
            let mut keys: Vec<TensorState> = tgt.keys().cloned().collect();
            for t in 0..pa.len() {
                keys.extend(pa[t].keys().cloned());
                keys.extend(pb[t].keys().cloned());
            }
            keys.sort();
            keys.dedup();
            for k in &keys {
                let mut row = vec![ZScalar::zero(); ts.len()];
                let mut b = ZScalar::zero();
                for t in 0..pa.len() as i64 {
                    let coef = &ZScalar::constant(pa[t as usize].get(k)) + &ZScalar::z_pow(pb[t as usize].get(k), 1);
                    if coef.is_zero() {
                        continue;
                    }
                    if t == 0 {
                        b = &b - &coef;
                    } else {
                        let c = col_of(t).ok_or(RmatError::Unsolved(t))?;
                        row[c] = &row[c] + &coef;
                    }
                }
                let tc = tgt.get(k);
                if !tc.is_zero() {
                    if s == 0 {
                        b = &b + &tc;
                    } else {
                        let c = col_of(s).ok_or(RmatError::Unsolved(s))?;
                        row[c] = &row[c] - &tc;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) || !b.is_zero() {
                    rows.push(row);
                    rhs.push(b);
                }
            }
        }
        let (x, ker) = if ts.is_empty() {
            if rhs.iter().any(|b| !b.is_zero()) {
                return Err(RmatError::Obstruction);
            }
            (Vec::new(), Vec::new())
        } else {
            solve_tall(&rows, &rhs, ts.len())?
        };
        let mut rho: Vec<Option<ZScalar>> = vec![None; (dec.max_t() + 1) as usize];
        rho[0] = Some(ZScalar::one());
        for (j, &t) in ts.iter().enumerate() {
            let determined = ker.iter().all(|kv| kv[j].is_zero());
            if determined {
                rho[t as usize] = Some(x[j].clone());
            } else if t <= max_t {
                return Err(RmatError::DepthTooSmall(t));
            }
        }
        Ok(RMatrix { l, m, dec, rho, proj_cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn eps(&self) -> &Eps {
        self.dec.eps()
    }

    pub fn rho(&self, t: i64) -> Option<&ZScalar> {
        self.rho.get(t as usize)?.as_ref()
    }

    /// `rho_t / rho_{t-1}`.
    pub fn ratio(&self, t: i64) -> Option<ZScalar> {
        let a = self.rho(t)?;
        let b = self.rho(t - 1)?;
        Some(a * &b.inv().ok()?)
    }

    /// `kappa_t = (rho_t/rho_{t-1}) / closed-form factor`, when that is free of `z`.
    pub fn kappa(&self, t: i64) -> Option<Scalar> {
        let r = self.ratio(t)?;
        let f = spectral_factor((self.l - self.m).abs() + 2 * t);
        (&r * &f.inv().ok()?).to_scalar()
    }

    pub fn coeffs(&self) -> SpectralCoeffs {
        let rho = self.rho.iter().map(|r| r.as_ref().map(|x| x.to_string())).collect();
        let kappa = (0..self.rho.len() as i64)
            .map(|t| if t == 0 { Some("1".to_string()) } else { self.kappa(t).map(|k| k.to_string()) })
            .collect();
        SpectralCoeffs { l: self.l, m: self.m, rho, kappa }
    }

    /// `P_t s` for every `t`, cached per state.
    pub fn projections(&self, s: &TensorState) -> Result<Vec<SparseVec<TensorState>>, RmatError> {
        if let Some(p) = self.proj_cache.lock().unwrap().get(s) {
            return Ok(p.clone());
        }
        let w = tensor_weight(self.eps(), s);
        let p = self.dec.project_all(&w, &SparseVec::basis(s.plain()))?;
        self.proj_cache.lock().unwrap().insert(s.clone(), p.clone());
        Ok(p)
    }

    /// `rho_t` at the given argument, for every `t`.
    pub fn rho_at(&self, arg: &Arg) -> Result<Vec<Option<ZScalar>>, RmatError> {
        self.rho
            .iter()
            .enumerate()
            .map(|(t, r)| {
                let Some(r) = r else { return Ok(None) };
                Ok(Some(match arg {
                    Arg::Scaled(c) => r.rescale_z(c),
                    Arg::Value(c) => ZScalar::constant(r.eval(c).map_err(|_| RmatError::Collision {
                        t: t as i64,
                        value: c.to_string(),
                    })?),
                }))
            })
            .collect()
    }

    /// Applies `sum_t rho_t P_t` to a two-fold vector.
    pub fn apply(&self, v: &ZVec, rhos: &[Option<ZScalar>]) -> Result<ZVec, RmatError> {
        let mut out = SparseVec::new();
        for (s, c) in v.iter() {
            for (t, p) in self.projections(s)?.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let r = rhos.get(t).and_then(|x| x.as_ref()).ok_or(RmatError::Unsolved(t as i64))?;
                let f = c.times(r);
                if f.is_zero() {
                    continue;
                }
                for (k, x) in p.iter() {
                    out.add_term(k.clone(), f.scale(x));
                }
            }
        }
        Ok(out)
    }

    /// Applies the R matrix to factors `pos, pos+1` of a multi-fold vector.
    pub fn apply_at(&self, pos: usize, v: &ZVec, rhos: &[Option<ZScalar>]) -> Result<ZVec, RmatError> {
        let mut out = SparseVec::new();
        for (t, c) in v.iter() {
            let pair = TensorState::new(vec![t.factors[pos].clone(), t.factors[pos + 1].clone()]);
            let img = self.apply(&SparseVec::basis(pair), rhos)?;
            for (p, x) in img.iter() {
                let mut f = t.factors.clone();
                f[pos] = p.factors[0].clone();
                f[pos + 1] = p.factors[1].clone();
                out.add_term(TensorState::new(f), c.times(x));
            }
        }
        Ok(out)
    }

    /// Checks `R Delta(x) = Delta(x) R` for `x` in `gens` on every weight
    /// space within `depth` (source factor 1 carries `z`, target factor 2).
    pub fn verify_intertwiner(&self, gens: &[Gen], depth: i64) -> Result<Vec<(Gen, Weight)>, RmatError> {
        let eps = self.eps().clone();
        let rhos = self.rho_at(&Arg::Scaled(Scalar::one()))?;
        let z = ZScalar::z();
        let one = ZScalar::one();
        let mut failures = Vec::new();
        for w in self.dec.module.weights_up_to(depth) {
            for g in gens {
                let shift = match g {
                    Gen::E(i) => Weight::alpha(eps.n(), *i),
                    Gen::F(i) => Weight::alpha(eps.n(), *i).scale(-1),
                    Gen::K(_) => Weight::zero(eps.n()),
                };
                let w2 = &w + &shift;
                match self.dec.module.depth_of(&w2) {
                    Some(d) if d <= depth => {}
                    _ => continue,
                }
                for s in self.dec.module.states_at(&w)? {
                    let v = SparseVec::basis(s);
                    let lhs = self.apply(&apply_gen_spectral(&eps, g, &v, &[z.clone(), one.clone()])?, &rhos)?;
                    let rhs = apply_gen_spectral(&eps, g, &self.apply(&v, &rhos)?, &[one.clone(), z.clone()])?;
                    if lhs != rhs {
                        failures.push((g.clone(), w.clone()));
                        break;
                    }
                }
            }
        }
        Ok(failures)
    }
}

/// Which pair of factors an R matrix acts on, and with which argument.
pub struct Step<'a> {
    pub pos: usize,
    pub r: &'a RMatrix,
    pub arg: Arg,
}

/// Specialized coefficients for each step.
pub fn step_rhos(steps: &[Step<'_>]) -> Result<Vec<Vec<Option<ZScalar>>>, RmatError> {
    steps.iter().map(|st| st.r.rho_at(&st.arg)).collect()
}

/// Multiplies the coefficients by a common multiple of their denominators
/// in `z`, so they become polynomials in `z`.
fn clear_z_denominators(rhos: &mut [Option<ZScalar>]) {
    let mut lcm = ZScalar::one();
    for r in rhos.iter().flatten() {
        let den = ZScalar::poly(r.den().to_vec());
        // den / gcd(den, lcm)
        let extra = &den / &lcm;
        lcm = &lcm * &ZScalar::poly(extra.num().to_vec());
    }
    for r in rhos.iter_mut().flatten() {
        *r = &*r * &lcm;
    }
}

/// Applies a sequence of R-matrix steps (first step applied first).
pub fn apply_steps(steps: &[Step<'_>], rhos: &[Vec<Option<ZScalar>>], v: &ZVec) -> Result<ZVec, RmatError> {
    let mut cur = v.clone();
    for (st, rhos) in steps.iter().zip(rhos) {
        cur = st.r.apply_at(st.pos, &cur, rhos)?;
        if cur.is_zero() {
            break;
        }
    }
    Ok(cur)
}

/// Result of a Yang-Baxter sweep.
#[derive(Clone, Debug, Serialize)]
pub struct YbReport {
    pub charges: [i64; 3],
    pub second_parameter: String,
    pub states_checked: usize,
    pub failures: Vec<String>,
}

/// Cache of solved R matrices keyed by `(l, m)`.
pub struct RCache {
    eps: Eps,
    max_t: i64,
    depth: i64,
    module_depth: i64,
    map: BTreeMap<(i64, i64), RMatrix>,
}

impl RCache {
    pub fn new(eps: &Eps, max_t: i64, depth: i64) -> RCache {
        RCache { eps: eps.clone(), max_t, depth, module_depth: depth, map: BTreeMap::new() }
    }

    /// Projectors of every solved matrix reach `module_depth` below the top.
    pub fn with_room(eps: &Eps, max_t: i64, depth: i64, module_depth: i64) -> RCache {
        RCache { eps: eps.clone(), max_t, depth, module_depth: module_depth.max(depth), map: BTreeMap::new() }
    }

    pub fn eps(&self) -> &Eps {
        &self.eps
    }

    pub fn ensure(&mut self, l: i64, m: i64) -> Result<(), RmatError> {
        if !self.map.contains_key(&(l, m)) {
            let r = RMatrix::solve_with_room(&self.eps, l, m, self.max_t, self.depth, self.module_depth)?;
            self.map.insert((l, m), r);
        }
        Ok(())
    }

    pub fn get(&self, l: i64, m: i64) -> &RMatrix {
        &self.map[&(l, m)]
    }
}

/// Braid form of the Yang-Baxter equation on `W_a(z) (x) W_b(c) (x) W_k(1)`:
/// `R12(c) R23(z) R12(z/c) = R23(z/c) R12(z) R23(c)`, checked on every
/// basis state within `depth`. `R12` on the left acts on whatever
/// charges currently sit in positions 1 and 2.
pub fn yang_baxter_check(cache: &mut RCache, charges: [i64; 3], c: &Scalar, depth: i64) -> Result<YbReport, RmatError> {
    let [a, b, k] = charges;
    for (x, y) in [(a, b), (a, k), (b, k)] {
        cache.ensure(x, y)?;
    }
    let inv_c = c.inv()?;
    let module = TensorModule::new(&cache.eps, &charges, depth);
    let lhs_steps = [
        Step { pos: 0, r: cache.get(a, b), arg: Arg::Scaled(inv_c.clone()) },
        Step { pos: 1, r: cache.get(a, k), arg: Arg::Scaled(Scalar::one()) },
        Step { pos: 0, r: cache.get(b, k), arg: Arg::Value(c.clone()) },
    ];
    let rhs_steps = [
        Step { pos: 1, r: cache.get(b, k), arg: Arg::Value(c.clone()) },
        Step { pos: 0, r: cache.get(a, k), arg: Arg::Scaled(Scalar::one()) },
        Step { pos: 1, r: cache.get(a, b), arg: Arg::Scaled(inv_c) },
    ];
    // both sides use the same three specialized matrices, so clearing their
    // denominators scales both sides by the same polynomial
    let mut lhs_rhos = step_rhos(&lhs_steps)?;
    let mut rhs_rhos = step_rhos(&rhs_steps)?;
    for r in lhs_rhos.iter_mut().chain(rhs_rhos.iter_mut()) {
        clear_z_denominators(r);
    }
    let mut checked = 0;
    let mut failures = Vec::new();
    for w in module.weights_up_to(depth) {
        for s in module.states_at(&w)? {
            let v = SparseVec::basis(s.clone());
            let l = apply_steps(&lhs_steps, &lhs_rhos, &v)?;
            let r = apply_steps(&rhs_steps, &rhs_rhos, &v)?;
            checked += 1;
            if l != r {
                failures.push(format!("{s:?}"));
            }
        }
    }
    Ok(YbReport { charges, second_parameter: c.to_string(), states_checked: checked, failures })
}

/// Rank of the fused map per weight space, with the induced character.
#[derive(Clone, Debug, Serialize)]
pub struct FusionImage {
    pub charges: Vec<i64>,
    pub params: Vec<String>,
    /// `(weight d-coordinates, weight-space dimension, image rank)`
    pub ranks: Vec<(Vec<i64>, usize, usize)>,
    pub character: CharPoly,
    pub degree: i64,
}

impl FusionImage {
    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|(_, _, r)| *r == 0)
    }
}

/// Reduced word of the longest permutation as adjacent transpositions
/// `(s_1)(s_2 s_1)...`, listed in the order they are applied.
pub fn longest_word(k: usize) -> Vec<usize> {
    let mut w = Vec::new();
    for j in 1..k {
        for i in (1..=j).rev() {
            w.push(i);
        }
    }
    w
}

/// The map `W_{l_1}(c_1) (x) ... (x) W_{l_k}(c_k) -> reversed order` built
/// from specialized R matrices along the longest word; its image ranks on
/// every weight space of `x, y` degree at most `degree`.
pub fn fusion_image(eps: &Eps, charges: &[i64], params: &[Scalar], degree: i64, cache: &mut RCache) -> Result<FusionImage, RmatError> {
    let k = charges.len();
    let n = eps.n();
    // positions currently holding original factor indices
    let mut order: Vec<usize> = (0..k).collect();
    let mut plan = Vec::new();
    for i in longest_word(k) {
        let pos = i - 1;
        let (a, b) = (order[pos], order[pos + 1]);
        cache.ensure(charges[a], charges[b])?;
        let ratio = &params[a] / &params[b];
        plan.push((pos, (charges[a], charges[b]), ratio));
        order.swap(pos, pos + 1);
    }
    let module = TensorModule::by_degree(eps, charges, degree);
    let mut ranks = Vec::new();
    let mut character = CharPoly::zero(n - eps.r(), eps.r(), degree);
    let steps: Vec<Step<'_>> = plan
        .iter()
        .map(|(pos, (a, b), ratio)| Step { pos: *pos, r: cache.get(*a, *b), arg: Arg::Value(ratio.clone()) })
        .collect();
    let rhos = step_rhos(&steps)?;
    for w in module.weights_by_degree(degree) {
        let states = module.states_at(&w)?;
        if states.is_empty() {
            continue;
        }
        let mut images: Vec<ZVec> = Vec::new();
        for s in &states {
            images.push(apply_steps(&steps, &rhos, &SparseVec::basis(s.clone()))?);
        }
        // image lives in the reversed product at the same weight
        let mut keys: Vec<TensorState> = images.iter().flat_map(|v| v.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut ech: Echelon<Scalar> = Echelon::new(keys.len());
        let mut rank = 0;
        for v in &images {
            let dense: Vec<Scalar> = keys.iter().map(|key| v.get(key).to_scalar().expect("specialized")).collect();
            if ech.insert(&dense) {
                rank += 1;
            }
        }
        if rank > 0 {
            character.add_weight(eps, &w, rank as i64);
        }
        ranks.push((w.d.clone(), states.len(), rank));
    }
    Ok(FusionImage {
        charges: charges.to_vec(),
        params: params.iter().map(|p| p.to_string()).collect(),
        ranks,
        character,
        degree,
    })
}

/// Module depth the pair projectors need for a fusion of these charges at `degree`.
pub fn fusion_room(eps: &Eps, charges: &[i64], degree: i64) -> i64 {
    let mut best = 0;
    for &a in charges {
        for &b in charges {
            best = best.max(sector_depth_for_degree(eps, a, degree) + sector_depth_for_degree(eps, b, degree));
        }
    }
    best
}

/// `W^{l,s}(c)`: fusion of `s` copies of `W_l` at `c q^{2-2s}, ..., c q^{-2}, c`.
pub fn kr_module(eps: &Eps, l: i64, s: usize, c: &Scalar, degree: i64, cache: &mut RCache) -> Result<FusionImage, RmatError> {
    let params: Vec<Scalar> = (0..s).map(|j| c * &Scalar::q_pow(2 - 2 * (s as i64) + 2 * j as i64)).collect();
    fusion_image(eps, &vec![l; s], &params, degree, cache)
}

/// Evaluates every solved `rho_t` at `c`, reporting the first pole.
pub fn specialize_rho(r: &RMatrix, c: &Scalar) -> Result<Vec<Option<Scalar>>, RmatError> {
    r.rho_at(&Arg::Value(c.clone()))
        .map(|v| v.into_iter().map(|x| x.map(|z| z.to_scalar().unwrap())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_norm_examples() {
        assert!(c_norm(1, 0).is_one());
        assert_eq!(c_norm(2, 1), spectral_factor(3));
        assert_eq!(c_norm(1, 1), spectral_factor(2));
    }

    #[test]
    fn longest_words() {
        assert_eq!(longest_word(2), vec![1]);
        assert_eq!(longest_word(3), vec![1, 2, 1]);
    }
}
