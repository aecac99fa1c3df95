//! Removing slots from a parity sequence: the hatted generators that realize
//! the smaller algebra inside the larger one, the truncation of modules to
//! states with empty removed slots, and compatibility checks for actions,
//! relations and R matrices.

use serde::Serialize;
use thiserror::Error;

use crate::chars::eps_highest_weight;
use crate::engine::{apply_combination, apply_gen, relations, Gen, SparseVec, State, TensorState};
use crate::lattice::{qform, Eps, LatticeError, Weight};
use crate::rmat::{Arg, RMatrix, RmatError};
use crate::scalars::{Scalar, ZScalar};
use crate::structure::{component_highest, component_partition, n_of, Decomposition, StructureError, TensorModule};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TruncError {
    #[error("removed slot {0} is out of range")]
    BadSlot(usize),
    #[error("removal leaves an invalid parity sequence: {0}")]
    InvalidChild(#[from] LatticeError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Rmat(#[from] RmatError),
}

/// A linear combination of generator words (rightmost letter acts first).
pub type Comb = Vec<(Scalar, Vec<Gen>)>;

/// `parent` with the slots in `removed` (1-based, increasing) deleted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsEmbedding {
    pub parent: Eps,
    pub child: Eps,
    pub removed: Vec<usize>,
    /// one parity sequence per removal step, starting with `parent`
    #[serde(skip)]
    stages: Vec<Eps>,
}

fn remove_slot(eps: &Eps, i: usize) -> Result<Eps, TruncError> {
    if i == 0 || i > eps.n() {
        return Err(TruncError::BadSlot(i));
    }
    let mut bits = eps.bits().to_vec();
    bits.remove(i - 1);
    let r = if i <= eps.r() { eps.r() - 1 } else { eps.r() };
    Ok(Eps::new(bits, r)?)
}

impl EpsEmbedding {
    pub fn new(parent: &Eps, removed: &[usize]) -> Result<EpsEmbedding, TruncError> {
        let mut removed = removed.to_vec();
        removed.sort_unstable();
        removed.dedup();
        let mut stages = vec![parent.clone()];
        for (k, &i) in removed.iter().enumerate() {
            if i == 0 || i > parent.n() {
                return Err(TruncError::BadSlot(i));
            }
            let next = remove_slot(stages.last().unwrap(), i - k)?;
            stages.push(next);
        }
        let child = stages.last().unwrap().clone();
        Ok(EpsEmbedding { parent: parent.clone(), child, removed, stages })
    }

    /// Removes every slot whose bit differs from `keep`.
    pub fn keeping_bit(parent: &Eps, keep: u8) -> Result<EpsEmbedding, TruncError> {
        let removed: Vec<usize> = (1..=parent.n()).filter(|&i| parent.bit(i) != keep).collect();
        EpsEmbedding::new(parent, &removed)
    }

    /// Parent slots that survive, in order (child slot `l` is entry `l-1`).
    pub fn kept(&self) -> Vec<usize> {
        (1..=self.parent.n()).filter(|i| !self.removed.contains(i)).collect()
    }

    /// Child weight as a parent weight.
    pub fn lift_weight(&self, w: &Weight) -> Weight {
        let mut d = vec![0; self.parent.n()];
        for (l, p) in self.kept().into_iter().enumerate() {
            d[p - 1] = w.d[l];
        }
        Weight { level: w.level, d, k: w.k }
    }

    /// Parent weight restricted to the kept slots, `None` when it pairs
    /// non-trivially with a removed slot.
    pub fn truncate_weight(&self, w: &Weight) -> Option<Weight> {
        if self.removed.iter().any(|&i| w.d[i - 1] != 0) {
            return None;
        }
        Some(Weight { level: w.level, d: self.kept().iter().map(|&p| w.d[p - 1]).collect(), k: w.k })
    }

    pub fn truncate_state(&self, s: &State) -> Option<State> {
        if self.removed.iter().any(|&i| s.get(i) != 0) {
            return None;
        }
        Some(State(self.kept().iter().map(|&p| s.get(p)).collect()))
    }

    pub fn lift_state(&self, s: &State) -> State {
        let mut m = vec![0; self.parent.n()];
        for (l, p) in self.kept().into_iter().enumerate() {
            m[p - 1] = s.0[l];
        }
        State(m)
    }

    pub fn truncate_tensor(&self, t: &TensorState) -> Option<TensorState> {
        let factors = t.factors.iter().map(|s| self.truncate_state(s)).collect::<Option<Vec<_>>>()?;
        Some(TensorState { factors, zexps: t.zexps.clone() })
    }

    pub fn lift_tensor(&self, t: &TensorState) -> TensorState {
        TensorState { factors: t.factors.iter().map(|s| self.lift_state(s)).collect(), zexps: t.zexps.clone() }
    }

    /// Child generator as a combination of parent words, composing the
    /// single-slot steps (the first removed slot is handled first).
    pub fn reduced_generator(&self, gen: &Gen) -> Comb {
        let mut comb: Comb = vec![(Scalar::one(), vec![gen.clone()])];
        for k in (0..self.removed.len()).rev() {
            let eps = &self.stages[k];
            let slot = self.removed[k] - k;
            comb = substitute(&comb, |g| single_step(eps, slot, g));
        }
        comb
    }

    /// Restricts a vector of parent tensor states; `Err` carries a term
    /// that leaves the truncation.
    pub fn truncate_vec<C: crate::scalars::Coeff>(
        &self,
        v: &SparseVec<TensorState, C>,
    ) -> Result<SparseVec<TensorState, C>, TensorState> {
        let mut out = SparseVec::new();
        for (t, c) in v.iter() {
            match self.truncate_tensor(t) {
                Some(t2) => out.add_term(t2, c.clone()),
                None => return Err(t.clone()),
            }
        }
        Ok(out)
    }

    /// Keeps the states of a slice that lie in the truncation, as child states.
    pub fn truncate_slice(&self, states: &[TensorState]) -> Vec<TensorState> {
        states.iter().filter_map(|t| self.truncate_tensor(t)).collect()
    }
}

/// Expands every letter of every word by `f`.
fn substitute(comb: &Comb, f: impl Fn(&Gen) -> Comb) -> Comb {
    let mut out = Vec::new();
    for (c, word) in comb {
        let mut acc: Comb = vec![(c.clone(), Vec::new())];
        for g in word {
            let sub = f(g);
            let mut next = Vec::with_capacity(acc.len() * sub.len());
            for (a, wa) in &acc {
                for (b, wb) in &sub {
                    let mut w = wa.clone();
                    w.extend(wb.iter().cloned());
                    next.push((a * b, w));
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    out
}

/// `[x, y]_c = x y - c y x`.
fn bracket(x: Gen, y: Gen, c: Scalar) -> Comb {
    vec![(Scalar::one(), vec![x.clone(), y.clone()]), (-c, vec![y, x])]
}

fn qab(eps: &Eps, a: usize, b: usize) -> Scalar {
    let n = eps.n();
    qform(eps, &Weight::alpha(n, a), &Weight::alpha(n, b))
}

/// Child generator of `eps` minus slot `i`, in terms of `eps`.
fn single_step(eps: &Eps, i: usize, gen: &Gen) -> Comb {
    let n = eps.n();
    let r = eps.r();
    let one = |g: Gen| vec![(Scalar::one(), vec![g])];
    let (j, raising) = match gen {
        Gen::K(mu) => {
            let mut d = vec![0; n];
            for (l, &x) in mu.d.iter().enumerate() {
                let slot = l + 1;
                let p = if slot < i { slot } else { slot + 1 };
                d[p - 1] = x;
            }
            return one(Gen::K(Weight { level: mu.level, d, k: mu.k }));
        }
        Gen::E(j) => (*j, true),
        Gen::F(j) => (*j, false),
    };
    let mk = |k: usize| if raising { Gen::E(k) } else { Gen::F(k) };
    if i == 1 {
        if j == 0 {
            let c = qab(eps, 0, 1);
            return if raising {
                bracket(Gen::E(1), Gen::E(0), c.inv().unwrap())
            } else {
                bracket(Gen::F(0), Gen::F(1), c)
            };
        }
        return one(mk(j + 1));
    }
    if i == n {
        if j == 0 {
            let c = qab(eps, n - 1, 0);
            return if raising {
                bracket(Gen::E(n - 1), Gen::E(0), c)
            } else {
                bracket(Gen::F(0), Gen::F(n - 1), c.inv().unwrap())
            };
        }
        return one(mk(j));
    }
    if j == 0 || j + 2 <= i {
        return one(mk(j));
    }
    if j >= i {
        return one(mk(j + 1));
    }
    // j = i - 1
    let c = qab(eps, i - 1, i);
    if i <= r {
        if raising {
            bracket(Gen::E(i), Gen::E(i - 1), c.inv().unwrap())
        } else {
            bracket(Gen::F(i - 1), Gen::F(i), c)
        }
    } else if raising {
        bracket(Gen::E(i - 1), Gen::E(i), c)
    } else {
        bracket(Gen::F(i), Gen::F(i - 1), c.inv().unwrap())
    }
}

/// Applies a child generator through the parent.
pub fn apply_hatted(emb: &EpsEmbedding, gen: &Gen, v: &SparseVec<TensorState>) -> SparseVec<TensorState> {
    apply_combination(&emb.parent, &emb.reduced_generator(gen), v)
}

/// Generators of the child used in the comparisons: all `e_j, f_j` and
/// `k` of the lattice basis.
fn child_generators(child: &Eps) -> Vec<Gen> {
    let n = child.n();
    let mut gens: Vec<Gen> = (0..n).flat_map(|j| [Gen::E(j), Gen::F(j)]).collect();
    gens.extend(crate::engine::lattice_basis(n).into_iter().map(Gen::K));
    gens
}

/// Outcome of [`verify_hom`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct HomReport {
    pub relations_checked: usize,
    pub relation_failures: Vec<String>,
    pub actions_checked: usize,
    pub action_mismatches: Vec<String>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.relation_failures.is_empty() && self.action_mismatches.is_empty()
    }
}

/// On the lifts of the given child states: every child relation holds for
/// the hatted operators, and each hatted generator matches the child's
/// own action.
pub fn verify_hom(emb: &EpsEmbedding, states: &[TensorState], include_affine: bool) -> HomReport {
    use rayon::prelude::*;
    let gens = child_generators(&emb.child);
    let hats: Vec<(Gen, Comb)> = gens.iter().map(|g| (g.clone(), emb.reduced_generator(g))).collect();
    let hat_of = |g: &Gen| -> &Comb { &hats.iter().find(|(h, _)| h == g).unwrap().1 };
    let rels = relations(&emb.child, include_affine);
    let parent = &emb.parent;

    let per_state: Vec<(Vec<String>, Vec<String>)> = states
        .par_iter()
        .map(|t| {
            let lifted = SparseVec::basis(emb.lift_tensor(t));
            let mut rel_fail = Vec::new();
            let mut act_fail = Vec::new();
            for (g, comb) in &hats {
                let via_parent = apply_combination(parent, comb, &lifted);
                let native = apply_gen(&emb.child, g, &SparseVec::basis(t.clone()));
                match emb.truncate_vec(&via_parent) {
                    Ok(v) if v == native => {}
                    Ok(_) => act_fail.push(format!("{g:?} on {t:?}")),
                    Err(out) => act_fail.push(format!("{g:?} on {t:?} leaves the truncation at {out:?}")),
                }
            }
            for rel in &rels {
                let mut total = SparseVec::new();
                for (c, word) in &rel.terms {
                    let mut cur = lifted.clone();
                    for g in word.iter().rev() {
                        if cur.is_zero() {
                            break;
                        }
                        let comb = match g {
                            Gen::K(_) => emb.reduced_generator(g),
                            _ => hat_of(g).clone(),
                        };
                        cur = apply_combination(parent, &comb, &cur);
                    }
                    total.add_scaled(&cur, c);
                }
                if !total.is_zero() {
                    rel_fail.push(format!("{} on {t:?}", rel.id));
                }
            }
            (rel_fail, act_fail)
        })
        .collect();
    let mut report =
        HomReport { relations_checked: states.len() * rels.len(), actions_checked: states.len() * hats.len(), ..Default::default() };
    for (r, a) in per_state {
        report.relation_failures.extend(r);
        report.action_mismatches.extend(a);
    }
    report
}

/// Result of comparing the restricted parent R matrix with the child's.
#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub l: i64,
    pub m: i64,
    pub states_checked: usize,
    /// `pi R_parent = c R_child` on the checked states
    pub scale: Option<String>,
    pub failures: Vec<String>,
}

/// Checks `pi R_parent = c(z) R_child` on child states of `W_l (x) W_m`
/// within `depth` of the child top, for a single function `c(z)`.
pub fn commuting_square(emb: &EpsEmbedding, l: i64, m: i64, depth: i64, max_t: i64) -> Result<SquareReport, TruncError> {
    let child_module = TensorModule::new(&emb.child, &[l, m], depth);
    let mut states = Vec::new();
    for w in child_module.weights_up_to(depth) {
        states.extend(child_module.states_at(&w)?);
    }
    let parent_probe = TensorModule::new(&emb.parent, &[l, m], 0);
    let room = states
        .iter()
        .filter_map(|t| parent_probe.depth_of(&crate::engine::tensor_weight(&emb.parent, &emb.lift_tensor(t))))
        .max()
        .unwrap_or(0);
    let n = emb.parent.n() as i64;
    let solve_depth = (n - 1 + 2 * max_t).max(room);
    let rp = RMatrix::solve_with_room(&emb.parent, l, m, max_t, solve_depth, room)?;
    let cn = emb.child.n() as i64;
    let rc = RMatrix::solve_with_room(&emb.child, l, m, max_t, (cn - 1 + 2 * max_t).max(depth), depth)?;
    let rho_p = rp.rho_at(&Arg::Scaled(Scalar::one()))?;
    let rho_c = rc.rho_at(&Arg::Scaled(Scalar::one()))?;
    let mut scale: Option<ZScalar> = None;
    let mut failures = Vec::new();
    for t in &states {
        let to_z = |t: TensorState| SparseVec::<TensorState, ZScalar>::basis(t);
        let via_parent = rp.apply(&to_z(emb.lift_tensor(t)), &rho_p)?;
        let native = rc.apply(&to_z(t.clone()), &rho_c)?;
        let restricted = match emb.truncate_vec(&via_parent) {
            Ok(v) => v,
            Err(out) => {
                failures.push(format!("{t:?} leaves the truncation at {out:?}"));
                continue;
            }
        };
        if scale.is_none() {
            scale = restricted.ratio_to(&native);
        }
        let ok = match &scale {
            Some(c) => restricted == native.scaled(c),
            None => restricted.is_zero() && native.is_zero(),
        };
        if !ok {
            failures.push(format!("{t:?}"));
        }
    }
    Ok(SquareReport { l, m, states_checked: states.len(), scale: scale.map(|c| c.to_string()), failures })
}

/// One row of a cross-sequence comparison of spectral ratios.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub eps: String,
    pub t: i64,
    pub ratio: Option<String>,
    /// `ratio / parent ratio` when both exist
    pub relative: Option<String>,
    pub status: RatioStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioStatus {
    /// equal to the parent's ratio
    Equal,
    /// a constant multiple of the parent's ratio
    Proportional,
    /// the ratios differ by a non-constant factor
    Disagree,
    /// the component does not survive in one of the two sequences
    BelowStabilizationRank,
}

/// Solves `W_l (x) W_m` for `eps` deep enough to fix `rho_1..rho_max_t`.
pub fn solve_for_ratios(eps: &Eps, l: i64, m: i64, max_t: i64) -> Result<RMatrix, TruncError> {
    let probe = TensorModule::new(eps, &[l, m], 0);
    let mut deepest = 0;
    for t in 0..max_t {
        if let Some(w) = eps_highest_weight(&component_partition(l, m, t), eps) {
            deepest = deepest.max(probe.depth_of(&w).unwrap_or(0));
        }
    }
    let depth = deepest + eps.n() as i64 - 1;
    let r = match RMatrix::solve(eps, l, m, max_t, depth) {
        Err(RmatError::DepthTooSmall(_)) => RMatrix::solve(eps, l, m, 0, depth)?,
        other => other?,
    };
    Ok(r)
}

/// Compares `rho_t / rho_{t-1}` of every child with the parent's.
pub fn compare_ratios(parent: &Eps, children: &[Eps], l: i64, m: i64, max_t: i64) -> Result<Vec<RatioRow>, TruncError> {
    let rp = solve_for_ratios(parent, l, m, max_t)?;
    let mut rows = Vec::new();
    for t in 1..=max_t {
        rows.push(RatioRow {
            eps: parent.to_string(),
            t,
            ratio: rp.ratio(t).map(|x| x.to_string()),
            relative: None,
            status: if rp.ratio(t).is_some() { RatioStatus::Equal } else { RatioStatus::BelowStabilizationRank },
        });
    }
    for child in children {
        let rc = solve_for_ratios(child, l, m, max_t)?;
        for t in 1..=max_t {
            let (a, b) = (rp.ratio(t), rc.ratio(t));
            let (relative, status) = match (&a, &b) {
                (Some(a), Some(b)) => {
                    let rel = b / a;
                    let status = if rel.is_one() {
                        RatioStatus::Equal
                    } else if rel.to_scalar().is_some() {
                        RatioStatus::Proportional
                    } else {
                        RatioStatus::Disagree
                    };
                    (Some(rel.to_string()), status)
                }
                _ => (None, RatioStatus::BelowStabilizationRank),
            };
            rows.push(RatioRow { eps: child.to_string(), t, ratio: b.map(|x| x.to_string()), relative, status });
        }
    }
    Ok(rows)
}

/// One component of `W_l (x) W_m` under truncation.
#[derive(Clone, Debug, Serialize)]
pub struct HighestCheck {
    pub l: i64,
    pub m: i64,
    pub t: i64,
    pub depth: i64,
    pub child_weight_exists: bool,
    /// the parent component has a non-zero weight space inside the truncation
    pub component_survives: bool,
    /// the child's highest vector, lifted, lies in the parent component
    pub contains_child_highest: bool,
}

impl HighestCheck {
    pub fn consistent(&self) -> bool {
        self.child_weight_exists == self.component_survives && (!self.child_weight_exists || self.contains_child_highest)
    }
}

/// Compares component `t` of the parent product, restricted to the
/// truncation within `depth` of the top (extended down to the lifted child
/// highest weight), with the child's component `t`.
pub fn highest_under_truncation(emb: &EpsEmbedding, l: i64, m: i64, t: i64, depth: i64) -> Result<HighestCheck, TruncError> {
    let lambda = component_partition(l, m, t);
    let child_w = eps_highest_weight(&lambda, &emb.child);
    // reach at least the lifted child highest weight
    let parent_probe = TensorModule::new(&emb.parent, &[l, m], 0);
    let depth = child_w
        .as_ref()
        .and_then(|w| parent_probe.depth_of(&emb.lift_weight(w)))
        .map_or(depth, |d| d.max(depth));
    let dec = Decomposition::new(&emb.parent, l, m, depth + n_of(l, m), depth)?;
    let mut survives = false;
    if dec.has_component(t) {
        for w in dec.module.weights_up_to(depth) {
            if emb.truncate_weight(&w).is_some() && dec.component_dim(t, &w)? > 0 {
                survives = true;
                break;
            }
        }
    }
    let mut contains = false;
    if let Some(cw) = &child_w {
        let probe = TensorModule::new(&emb.child, &[l, m], 0);
        let cdepth = probe.depth_of(cw).unwrap_or(0);
        let child_vec = component_highest(&TensorModule::new(&emb.child, &[l, m], cdepth), l, m, t)?;
        let w = emb.lift_weight(cw);
        if let (Some(cv), Some(d)) = (child_vec, dec.module.depth_of(&w)) {
            if d <= depth && dec.has_component(t) {
                let lifted: SparseVec<TensorState> = cv.map_keys(|k| emb.lift_tensor(k));
                contains = dec.component_part(t, &w, &lifted)? == lifted;
            }
        }
    }
    Ok(HighestCheck {
        l,
        m,
        t,
        depth,
        child_weight_exists: child_w.is_some(),
        component_survives: survives,
        contains_child_highest: contains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distant_generators_are_relabelled() {
        let eps = Eps::parse("00000", 2).unwrap();
        let emb = EpsEmbedding::new(&eps, &[4]).unwrap();
        assert_eq!(emb.child, Eps::zeros(4, 2));
        assert_eq!(emb.reduced_generator(&Gen::E(1)), vec![(Scalar::one(), vec![Gen::E(1)])]);
        assert_eq!(emb.reduced_generator(&Gen::E(0)), vec![(Scalar::one(), vec![Gen::E(0)])]);
        let mu = Weight::delta(4, 4);
        assert_eq!(emb.reduced_generator(&Gen::K(mu)), vec![(Scalar::one(), vec![Gen::K(Weight::delta(5, 5))])]);
    }

    #[test]
    fn last_slot_brackets_e0() {
        let eps = Eps::parse("00000", 2).unwrap();
        let emb = EpsEmbedding::new(&eps, &[5]).unwrap();
        let c = emb.reduced_generator(&Gen::E(0));
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1, vec![Gen::E(4), Gen::E(0)]);
        assert_eq!(c[1].0, -Scalar::q_pow(-1));
    }

    #[test]
    fn split_must_survive() {
        assert!(EpsEmbedding::new(&Eps::zeros(4, 2), &[1]).is_err());
        assert!(EpsEmbedding::new(&Eps::zeros(4, 2), &[7]).is_err());
    }

    #[test]
    fn stages_compose() {
        let eps = Eps::parse("010101010", 4).unwrap();
        let low = EpsEmbedding::keeping_bit(&eps, 0).unwrap();
        assert_eq!(low.child, Eps::zeros(5, 2));
        let high = EpsEmbedding::keeping_bit(&eps, 1).unwrap();
        assert_eq!(high.child, Eps::parse("1111", 2).unwrap());
        assert_eq!(high.kept(), vec![2, 4, 6, 8]);
    }
}
