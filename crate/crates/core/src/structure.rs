//! Weight spaces of tensor products of the charge sectors, singular
//! vectors (closed form and kernel), component bases and projectors.

use std::collections::BTreeMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::chars::eps_highest_weight;
use crate::engine::{
    apply_word, coproduct_act_terms, specialize, states_of_total, weight_of, Gen, SparseVec, State, TensorState,
};
use crate::lattice::{Eps, Weight};
use crate::linalg::{kernel, Echelon};
use crate::scalars::{qint, Scalar};

pub use crate::engine::polarization_check;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("not representable under the parity sequence: {0}")]
    NotRepresentable(String),
    #[error("index below -N: i = {i}, N = {n}")]
    IndexOutOfRange { i: i64, n: i64 },
    #[error("weight outside the computed depth")]
    DepthExceeded,
    #[error("component bases do not span the weight space at {0:?}")]
    Incomplete(Weight),
    #[error("expected a one-dimensional singular space, found {0}")]
    SingularDimension(usize),
}

/// `N = max(-l1, l2, 0)` with `l1 = max(l, m)`, `l2 = min(l, m)`.
pub fn n_of(l: i64, m: i64) -> i64 {
    let (l1, l2) = (l.max(m), l.min(m));
    (-l1).max(l2).max(0)
}

/// The extremal state of the charge-`l` sector.
pub fn v_l(n: usize, r: usize, l: i64) -> State {
    if l >= 0 {
        State::unit(n, r + 1, l as i32)
    } else {
        State::unit(n, r, (-l) as i32)
    }
}

/// Root coordinates `c_1..c_{n-1}` of a level-zero classical weight
/// `sum c_i alpha_i`, or `None` if it is not in the root lattice.
pub fn root_coords(beta: &Weight) -> Option<Vec<i64>> {
    if beta.level != 0 || beta.d.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut acc = 0;
    let mut out = Vec::with_capacity(beta.n() - 1);
    for x in &beta.d[..beta.n() - 1] {
        acc += x;
        out.push(acc);
    }
    Some(out)
}

/// Height of `hi - lo` when it is a non-negative combination of simple roots.
pub fn height_between(hi: &Weight, lo: &Weight) -> Option<i64> {
    let c = root_coords(&(hi - lo))?;
    if c.iter().all(|&x| x >= 0) {
        Some(c.iter().sum())
    } else {
        None
    }
}

/// Total number of quanta of a weight (the `x, y` degree of its character monomial).
pub fn weight_degree(w: &Weight) -> i64 {
    w.d.iter().map(|x| x.abs()).sum()
}

/// Largest depth below the sector top reached by states with at most `degree` quanta.
pub fn sector_depth_for_degree(eps: &Eps, l: i64, degree: i64) -> i64 {
    let top = weight_of(eps, &v_l(eps.n(), eps.r(), l));
    (0..=degree)
        .flat_map(|t| states_of_total(eps, t as i32))
        .filter(|s| s.charge(eps) as i64 == l)
        .filter_map(|s| height_between(&top, &weight_of(eps, &s)))
        .max()
        .unwrap_or(0)
}

/// States of the charge-`l` sector within `depth` of its top, sorted.
pub fn sector_states(eps: &Eps, l: i64, depth: i64) -> Vec<State> {
    let n = eps.n();
    let r = eps.r();
    let top = weight_of(eps, &v_l(n, r, l));
    let mut out = Vec::new();
    let max_total = 2 * depth + l.abs();
    for total in 0..=max_total {
        for s in states_of_total(eps, total as i32) {
            if s.charge(eps) as i64 != l {
                continue;
            }
            if let Some(h) = height_between(&top, &weight_of(eps, &s)) {
                if h <= depth {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

/// A tensor product of charge sectors, with per-weight state lists.
pub struct TensorModule {
    pub eps: Eps,
    pub charges: Vec<i64>,
    pub max_depth: i64,
    /// bound on the total number of quanta, when built by degree
    pub max_degree: Option<i64>,
    top: Weight,
    /// per factor: weight -> states (sorted)
    factor_index: Vec<BTreeMap<Weight, Vec<State>>>,
    cache: Mutex<BTreeMap<Weight, Vec<TensorState>>>,
}

impl TensorModule {
    pub fn new(eps: &Eps, charges: &[i64], max_depth: i64) -> TensorModule {
        let n = eps.n();
        let r = eps.r();
        let mut top = Weight::zero(n);
        let mut factor_index = Vec::new();
        for &l in charges {
            top = &top + &weight_of(eps, &v_l(n, r, l));
            let mut idx: BTreeMap<Weight, Vec<State>> = BTreeMap::new();
            for s in sector_states(eps, l, max_depth) {
                idx.entry(weight_of(eps, &s)).or_default().push(s);
            }
            factor_index.push(idx);
        }
        TensorModule {
            eps: eps.clone(),
            charges: charges.to_vec(),
            max_depth,
            max_degree: None,
            top,
            factor_index,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// The part of the product spanned by states with at most `degree`
    /// quanta in total, with no depth bound.
    pub fn by_degree(eps: &Eps, charges: &[i64], degree: i64) -> TensorModule {
        let n = eps.n();
        let r = eps.r();
        let mut top = Weight::zero(n);
        let mut factor_index = Vec::new();
        for &l in charges {
            top = &top + &weight_of(eps, &v_l(n, r, l));
            let mut idx: BTreeMap<Weight, Vec<State>> = BTreeMap::new();
            for total in 0..=degree {
                for s in states_of_total(eps, total as i32) {
                    if s.charge(eps) as i64 == l {
                        idx.entry(weight_of(eps, &s)).or_default().push(s);
                    }
                }
            }
            factor_index.push(idx);
        }
        TensorModule {
            eps: eps.clone(),
            charges: charges.to_vec(),
            max_depth: i64::MAX,
            max_degree: Some(degree),
            top,
            factor_index,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// Weights whose states have at most `degree` quanta (only for modules
    /// built by degree), sorted by degree then weight.
    pub fn weights_by_degree(&self, degree: i64) -> Vec<Weight> {
        fn rec(m: &TensorModule, k: usize, acc: &Weight, left: i64, out: &mut std::collections::BTreeSet<Weight>) {
            if k == m.charges.len() {
                out.insert(acc.clone());
                return;
            }
            for w in m.factor_index[k].keys() {
                let d = weight_degree(w);
                if d <= left {
                    rec(m, k + 1, &(acc + w), left - d, out);
                }
            }
        }
        let mut set = std::collections::BTreeSet::new();
        rec(self, 0, &Weight::zero(self.eps.n()), degree, &mut set);
        let mut out: Vec<Weight> = set.into_iter().collect();
        out.sort_by_key(|w| (weight_degree(w), w.clone()));
        out
    }

    pub fn top(&self) -> &Weight {
        &self.top
    }

    /// Height of `top - weight`, if `weight` lies below the top.
    pub fn depth_of(&self, weight: &Weight) -> Option<i64> {
        height_between(&self.top, &weight.cl())
    }

    /// The tensor basis of a (classical) weight space, sorted.
    pub fn states_at(&self, weight: &Weight) -> Result<Vec<TensorState>, StructureError> {
        let weight = weight.cl();
        match self.depth_of(&weight) {
            None => return Ok(Vec::new()),
            Some(d) if d > self.max_depth => return Err(StructureError::DepthExceeded),
            _ => {}
        }
        if let Some(v) = self.cache.lock().unwrap().get(&weight) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        self.collect(0, &weight, &mut Vec::new(), &mut out);
        out.sort();
        self.cache.lock().unwrap().insert(weight, out.clone());
        Ok(out)
    }

    fn collect(&self, k: usize, rest: &Weight, cur: &mut Vec<State>, out: &mut Vec<TensorState>) {
        let last = k + 1 == self.charges.len();
        if last {
            if let Some(list) = self.factor_index[k].get(rest) {
                for s in list {
                    cur.push(s.clone());
                    out.push(TensorState::new(cur.clone()));
                    cur.pop();
                }
            }
            return;
        }
        let left = self.max_degree.map(|_| weight_degree(rest));
        for (w, list) in &self.factor_index[k] {
            if left.is_some_and(|d| weight_degree(w) > d) {
                continue;
            }
            let rem = rest - w;
            for s in list {
                cur.push(s.clone());
                self.collect(k + 1, &rem, cur, out);
                cur.pop();
            }
        }
    }

    /// All weights within `depth` of the top, ordered by depth then weight.
    pub fn weights_up_to(&self, depth: i64) -> Vec<Weight> {
        let mut acc: BTreeMap<Weight, ()> = BTreeMap::new();
        acc.insert(self.top.clone(), ());
        let mut frontier = vec![self.top.clone()];
        let n = self.eps.n();
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 1..n {
                    let w2 = w - &Weight::alpha(n, i);
                    if acc.contains_key(&w2) {
                        continue;
                    }
                    if !self.states_at(&w2).map(|v| v.is_empty()).unwrap_or(true) {
                        acc.insert(w2.clone(), ());
                        next.push(w2);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Weight> = acc.into_keys().collect();
        out.sort_by_key(|w| (self.depth_of(w).unwrap(), w.clone()));
        out
    }

    /// Dense coordinates of `v` in the basis of `weight`.
    pub fn to_dense(&self, weight: &Weight, v: &SparseVec<TensorState>) -> Result<Vec<Scalar>, StructureError> {
        let basis = self.states_at(weight)?;
        let mut out = vec![Scalar::zero(); basis.len()];
        for (t, c) in v.iter() {
            let pos = basis.binary_search(&t.plain()).map_err(|_| StructureError::DepthExceeded)?;
            out[pos] = &out[pos] + c;
        }
        Ok(out)
    }

    pub fn from_dense(&self, weight: &Weight, v: &[Scalar]) -> Result<SparseVec<TensorState>, StructureError> {
        let basis = self.states_at(weight)?;
        Ok(SparseVec::from_terms(basis.into_iter().zip(v.iter().cloned())))
    }
}

fn tensor(a: State, b: State) -> TensorState {
    TensorState::new(vec![a, b])
}

/// `v^+_{a,b}`: both factors gain `a` resp. `b` quanta on slots `r, r+1`.
pub fn v_plus(eps: &Eps, l: i64, m: i64, a: i64, b: i64) -> Option<TensorState> {
    let (n, r) = (eps.n(), eps.r());
    let bump = |s: State, c: i64| s.bumped(r, c as i32).bumped(r + 1, c as i32);
    let t = tensor(bump(v_l(n, r, l), a), bump(v_l(n, r, m), b));
    t.factors.iter().all(|s| s.is_valid(eps)).then_some(t)
}

/// `v^-_{a,b}`: quanta move from slot `r+1` to `r+2` (both charges
/// non-negative) or from `r` to `r-1` (both non-positive).
pub fn v_minus(eps: &Eps, l: i64, m: i64, a: i64, b: i64) -> Option<TensorState> {
    let (n, r) = (eps.n(), eps.r());
    let nonneg = l.min(m) >= 0;
    let mv = |s: State, c: i64| {
        let c = c as i32;
        if nonneg {
            s.bumped(r + 1, -c).bumped(r + 2, c)
        } else {
            s.bumped(r, -c).bumped(r - 1, c)
        }
    };
    let t = tensor(mv(v_l(n, r, l), a), mv(v_l(n, r, m), b));
    t.factors.iter().all(|s| s.is_valid(eps)).then_some(t)
}

/// The closed-form singular vector `u_i` for `i >= -N`.
pub fn singular_formula(eps: &Eps, l: i64, m: i64, i: i64) -> Result<SparseVec<TensorState>, StructureError> {
    let nn = n_of(l, m);
    if i < -nn {
        return Err(StructureError::IndexOutOfRange { i, n: nn });
    }
    let (al, am) = (l.abs(), m.abs());
    let mut out = SparseVec::new();
    let missing = |a: i64, b: i64| StructureError::NotRepresentable(format!("v({a},{b}) for (l,m)=({l},{m})"));
    if i >= 0 {
        let mut coeff = Scalar::one();
        for j in 0..=i {
            if j > 0 {
                let k = j;
                let num = &qint(am + i + 1 - k) * &qint(i + 1 - k);
                let den = &qint(al + k) * &qint(k);
                coeff = -&(&coeff * &(&num / &den)).shift(-(am + 2 * i - 2 * k + 1));
            }
            let t = v_plus(eps, l, m, j, i - j).ok_or_else(|| missing(j, i - j))?;
            out.add_term(t, coeff.clone());
        }
    } else {
        let mut coeff = Scalar::one();
        for j in 0..=-i {
            if j > 0 {
                let k = j;
                coeff = -&(&coeff * &(&qint(-i + 1 - k) / &qint(k))).shift(am + 2 * i + 2 * k);
            }
            let t = v_minus(eps, l, m, j, -i - j).ok_or_else(|| missing(j, -i - j))?;
            out.add_term(t, coeff.clone());
        }
    }
    Ok(out)
}

/// Basis of the common kernel of `e_1..e_{n-1}` on a weight space.
pub fn singular_kernel(module: &TensorModule, weight: &Weight) -> Result<Vec<SparseVec<TensorState>>, StructureError> {
    let eps = &module.eps;
    let basis = module.states_at(weight)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut row_index: BTreeMap<(usize, TensorState), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut buf = Vec::new();
    for (col, t) in basis.iter().enumerate() {
        for k in 1..eps.n() {
            buf.clear();
            coproduct_act_terms(eps, &Gen::E(k), t, &mut buf);
            for (t2, c) in buf.drain(..) {
                let next = row_index.len();
                let row = *row_index.entry((k, t2)).or_insert(next);
                entries.push((row, col, c));
            }
        }
    }
    let mut rows = vec![vec![Scalar::zero(); basis.len()]; row_index.len()];
    for (r, c, x) in entries {
        rows[r][c] = &rows[r][c] + &x;
    }
    let ker = kernel(&rows, basis.len());
    Ok(ker.into_iter().map(|v| SparseVec::from_terms(basis.iter().cloned().zip(v))).collect())
}

/// Scales `v` so that its first coefficient in basis order is 1.
pub fn normalize_leading(v: &SparseVec<TensorState>) -> SparseVec<TensorState> {
    match v.leading() {
        Some((_, c)) => v.scaled(&c.inv().unwrap()),
        None => v.clone(),
    }
}

/// Whether `e_k v = 0` for every `k` in `1..n`.
pub fn is_singular(eps: &Eps, v: &SparseVec<TensorState>) -> bool {
    (1..eps.n()).all(|k| apply_word(eps, &[Gen::E(k)], v).is_zero())
}

/// The generalized partition of component `t` in the two-fold product.
pub fn component_partition(l: i64, m: i64, t: i64) -> [i64; 2] {
    [l.max(m) + t, l.min(m) - t]
}

/// The ladder operators `E^+, E^-, F^+, F^-` as generator words.
pub fn ladder_words(n: usize, r: usize, nonneg: bool) -> [Vec<Gen>; 4] {
    let e = |v: Vec<usize>| v.into_iter().map(Gen::E).collect::<Vec<_>>();
    let f = |v: Vec<usize>| v.into_iter().map(Gen::F).collect::<Vec<_>>();
    let up = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
    let down = |a: usize, b: usize| (b..=a).rev().collect::<Vec<_>>();
    let mut ep = up(r + 1, n - 1);
    ep.extend(down(r - 1, 1));
    ep.push(0);
    let mut em = vec![r];
    if nonneg {
        em.extend(up(r + 2, n - 1));
        em.extend(down(r - 1, 1));
    } else {
        em.extend(up(r + 1, n - 1));
        em.extend(down(r - 2, 1));
    }
    em.push(0);
    let mut fp = vec![0];
    fp.extend(up(1, r - 1));
    fp.extend(down(n - 1, r + 1));
    let mut fm = vec![0];
    if nonneg {
        fm.extend(down(n - 1, r + 2));
        fm.extend(up(1, r - 1));
    } else {
        fm.extend(up(1, r - 2));
        fm.extend(down(n - 1, r + 1));
    }
    fm.push(r);
    [e(ep), e(em), f(fp), f(fm)]
}

/// Component `t` of `W_l (x) W_m`: its highest vector and, per weight, a
/// basis made of `f`-words applied to it.
struct ComponentCache {
    highest: SparseVec<TensorState>,
    weight: Weight,
    /// weight -> [(word of f-indices, leftmost applied last; vector)]
    bases: BTreeMap<Weight, Vec<(Vec<usize>, SparseVec<TensorState>)>>,
}

/// The two-fold product `W_l (x) W_m` split into its components, with
/// enough data to apply the projectors onto `W_m (x) W_l`.
pub struct Decomposition {
    pub l: i64,
    pub m: i64,
    pub module: TensorModule,
    pub mirror: TensorModule,
    components: Vec<Option<Mutex<ComponentCache>>>,
    mirror_highest: Vec<Option<SparseVec<TensorState>>>,
    echelons: Mutex<BTreeMap<Weight, (Echelon<Scalar>, Vec<(usize, usize)>)>>,
}

/// Depth of component `t`'s highest weight below the tensor top.
pub fn component_depth(module: &TensorModule, weight: &Weight) -> Option<i64> {
    module.depth_of(weight)
}

/// Highest vector of component `t` of `W_l (x) W_m`: the closed form when
/// all parities vanish, otherwise the normalized kernel vector at the
/// parity-adapted highest weight. `None` when the component is absent.
pub fn component_highest(
    module: &TensorModule,
    l: i64,
    m: i64,
    t: i64,
) -> Result<Option<SparseVec<TensorState>>, StructureError> {
    let eps = &module.eps;
    if eps.bits().iter().all(|&b| b == 0) {
        return singular_formula(eps, l, m, t - n_of(l, m)).map(Some);
    }
    let Some(w) = eps_highest_weight(&component_partition(l, m, t), eps) else { return Ok(None) };
    if module.depth_of(&w).is_none_or(|d| d > module.max_depth) {
        return Ok(None);
    }
    let ker = singular_kernel(module, &w)?;
    match ker.len() {
        0 => Ok(None),
        1 => Ok(Some(normalize_leading(&ker[0]))),
        k => Err(StructureError::SingularDimension(k)),
    }
}

impl Decomposition {
    /// Components `0..=max_t` within `depth` of the top.
    pub fn new(eps: &Eps, l: i64, m: i64, max_t: i64, depth: i64) -> Result<Decomposition, StructureError> {
        let module = TensorModule::new(eps, &[l, m], depth);
        let mirror = TensorModule::new(eps, &[m, l], depth);

        let mut components = Vec::new();
        let mut mirror_highest = Vec::new();
        for t in 0..=max_t {
            let h = component_highest(&module, l, m, t)?;
            let h2 = component_highest(&mirror, m, l, t)?;
            match (h, h2) {
                (Some(h), Some(h2)) => {
                    let weight = crate::engine::tensor_weight(eps, h.leading().unwrap().0);
                    if module.depth_of(&weight).is_none_or(|d| d > depth) {
                        components.push(None);
                        mirror_highest.push(None);
                        continue;
                    }
                    let mut bases = BTreeMap::new();
                    bases.insert(weight.clone(), vec![(Vec::new(), h.clone())]);
                    components.push(Some(Mutex::new(ComponentCache { highest: h, weight, bases })));
                    mirror_highest.push(Some(h2));
                }
                _ => {
                    components.push(None);
                    mirror_highest.push(None);
                }
            }
        }
        Ok(Decomposition { l, m, module, mirror, components, mirror_highest, echelons: Mutex::new(BTreeMap::new()) })
    }

    pub fn eps(&self) -> &Eps {
        &self.module.eps
    }

    pub fn max_t(&self) -> i64 {
        self.components.len() as i64 - 1
    }

    pub fn has_component(&self, t: i64) -> bool {
        self.components.get(t as usize).is_some_and(Option::is_some)
    }

    pub fn highest(&self, t: i64) -> Option<SparseVec<TensorState>> {
        self.components.get(t as usize)?.as_ref().map(|c| c.lock().unwrap().highest.clone())
    }

    pub fn mirror_highest(&self, t: i64) -> Option<SparseVec<TensorState>> {
        self.mirror_highest.get(t as usize)?.clone()
    }

    pub fn highest_weight(&self, t: i64) -> Option<Weight> {
        self.components.get(t as usize)?.as_ref().map(|c| c.lock().unwrap().weight.clone())
    }

    /// Basis of component `t` at `weight`, as `(word, vector)` pairs.
    pub fn component_basis(&self, t: i64, weight: &Weight) -> Result<Vec<(Vec<usize>, SparseVec<TensorState>)>, StructureError> {
        let Some(Some(cell)) = self.components.get(t as usize) else { return Ok(Vec::new()) };
        let mut cache = cell.lock().unwrap();
        self.basis_rec(&mut cache, weight)
    }

    fn basis_rec(
        &self,
        cache: &mut ComponentCache,
        weight: &Weight,
    ) -> Result<Vec<(Vec<usize>, SparseVec<TensorState>)>, StructureError> {
        if let Some(b) = cache.bases.get(weight) {
            return Ok(b.clone());
        }
        if height_between(&cache.weight, weight).is_none() {
            return Ok(Vec::new());
        }
        let eps = self.eps();
        let n = eps.n();
        let dim = self.module.states_at(weight)?.len();
        let mut ech: Echelon<Scalar> = Echelon::new(dim);
        let mut out = Vec::new();
        for i in 1..n {
            let above = weight + &Weight::alpha(n, i);
            if height_between(&cache.weight, &above).is_none() {
                continue;
            }
            for (word, v) in self.basis_rec(cache, &above)? {
                let fv = apply_word(eps, &[Gen::F(i)], &v);
                if fv.is_zero() {
                    continue;
                }
                let dense = self.module.to_dense(weight, &fv)?;
                if ech.insert(&dense) {
                    let mut w = vec![i];
                    w.extend(word);
                    out.push((w, fv));
                }
            }
        }
        cache.bases.insert(weight.clone(), out.clone());
        Ok(out)
    }

    /// The words of component `t` at `weight` applied to the mirror highest vector.
    pub fn mirror_basis(&self, t: i64, weight: &Weight) -> Result<Vec<SparseVec<TensorState>>, StructureError> {
        let Some(h) = self.mirror_highest(t) else { return Ok(Vec::new()) };
        let eps = self.eps();
        Ok(self
            .component_basis(t, weight)?
            .into_iter()
            .map(|(word, _)| {
                let gens: Vec<Gen> = word.into_iter().map(Gen::F).collect();
                apply_word(eps, &gens, &h)
            })
            .collect())
    }

    /// Dimension of component `t` at `weight`.
    pub fn component_dim(&self, t: i64, weight: &Weight) -> Result<usize, StructureError> {
        Ok(self.component_basis(t, weight)?.len())
    }

    fn with_echelon<R>(
        &self,
        weight: &Weight,
        f: impl FnOnce(&Echelon<Scalar>, &[(usize, usize)]) -> R,
    ) -> Result<R, StructureError> {
        let weight = weight.cl();
        {
            let cache = self.echelons.lock().unwrap();
            if let Some((e, labels)) = cache.get(&weight) {
                return Ok(f(e, labels));
            }
        }
        let dim = self.module.states_at(&weight)?.len();
        let mut ech = Echelon::new(dim);
        let mut labels = Vec::new();
        for t in 0..=self.max_t() {
            for (k, (_, v)) in self.component_basis(t, &weight)?.into_iter().enumerate() {
                let dense = self.module.to_dense(&weight, &v)?;
                if !ech.insert(&dense) {
                    return Err(StructureError::Incomplete(weight.clone()));
                }
                labels.push((t as usize, k));
            }
        }
        if ech.rank() != dim {
            return Err(StructureError::Incomplete(weight.clone()));
        }
        let r = f(&ech, &labels);
        self.echelons.lock().unwrap().insert(weight, (ech, labels));
        Ok(r)
    }

    /// Splits a weight vector of `W_l (x) W_m` into its components and maps
    /// each through the corresponding projector. Entry `t` is `P_t v`.
    pub fn project_all(&self, weight: &Weight, v: &SparseVec<TensorState>) -> Result<Vec<SparseVec<TensorState>>, StructureError> {
        let weight = weight.cl();
        let mut out = vec![SparseVec::new(); self.components.len()];
        if v.is_zero() {
            return Ok(out);
        }
        let dense = self.module.to_dense(&weight, v)?;
        let (coords, labels) = self.with_echelon(&weight, |e, labels| (e.coords(&dense), labels.to_vec()))?;
        let coords = coords.ok_or_else(|| StructureError::Incomplete(weight.clone()))?;
        let mut mirrors: BTreeMap<usize, Vec<SparseVec<TensorState>>> = BTreeMap::new();
        for ((t, k), c) in labels.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            let mb = match mirrors.get(t) {
                Some(mb) => mb,
                None => {
                    let mb = self.mirror_basis(*t as i64, &weight)?;
                    mirrors.entry(*t).or_insert(mb)
                }
            };
            out[*t].add_scaled(&mb[*k], &c);
        }
        Ok(out)
    }

    /// `P_t v`.
    pub fn projector_apply(&self, t: i64, v: &SparseVec<TensorState>) -> Result<SparseVec<TensorState>, StructureError> {
        let Some((first, _)) = v.leading() else { return Ok(SparseVec::new()) };
        let weight = crate::engine::tensor_weight(self.eps(), first);
        let mut all = self.project_all(&weight, v)?;
        Ok(std::mem::take(&mut all[t as usize]))
    }

    /// Component part of `v` in component `t` (inside `W_l (x) W_m`).
    pub fn component_part(&self, t: i64, weight: &Weight, v: &SparseVec<TensorState>) -> Result<SparseVec<TensorState>, StructureError> {
        let dense = self.module.to_dense(weight, v)?;
        let (coords, labels) = self.with_echelon(weight, |e, labels| (e.coords(&dense), labels.to_vec()))?;
        let coords = coords.ok_or_else(|| StructureError::Incomplete(weight.clone()))?;
        let basis = self.component_basis(t, weight)?;
        let mut out = SparseVec::new();
        for ((tt, k), c) in labels.iter().zip(coords) {
            if *tt as i64 == t {
                out.add_scaled(&basis[*k].1, &c);
            }
        }
        Ok(out)
    }
}

/// Outcome of [`ladder_check`].
#[derive(Clone, Debug, Default)]
pub struct LadderReport {
    pub checked: usize,
    /// `(formula, a, b)` for every identity that failed.
    pub failures: Vec<(String, i64, i64)>,
}

/// Evaluates the ladder identities for `E^+, f_r, F^+` on `v^+_{a,b}` and,
/// when both charges share a sign, for `E^-, f_{r+-1}, F^-` on `v^-_{a,b}`,
/// for `0 <= a, b <= max_ab`. Spectral parameters are set to 1.
pub fn ladder_check(eps: &Eps, l: i64, m: i64, max_ab: i64) -> LadderReport {
    let (n, r) = (eps.n(), eps.r());
    let (al, am) = (l.abs(), m.abs());
    let q = Scalar::q_pow;
    let neg = |x: Scalar| -x;
    let ones = [Scalar::one(), Scalar::one()];
    let nonneg = l.min(m) >= 0;
    let nonpos = l.max(m) <= 0;
    let [ep, em, fp, fm] = ladder_words(n, r, nonneg);
    let mut rep = LadderReport::default();

    type Pick = fn(&Eps, i64, i64, i64, i64) -> Option<TensorState>;
    let mut run = |name: &str, pick: Pick, word: &[Gen], a: i64, b: i64, rhs: Vec<(Scalar, i64, i64)>| {
        let Some(src) = pick(eps, l, m, a, b) else { return };
        let lhs = specialize(&apply_word(eps, word, &SparseVec::basis(src)), &ones);
        let mut want = SparseVec::new();
        for (c, x, y) in rhs {
            if c.is_zero() || x < 0 || y < 0 {
                continue;
            }
            match pick(eps, l, m, x, y) {
                Some(t) => want.add_term(t, c),
                // a nonzero coefficient on a state outside the module
                None => {
                    rep.failures.push((format!("{name} target"), a, b));
                    return;
                }
            }
        }
        rep.checked += 1;
        if lhs != want {
            rep.failures.push((name.to_string(), a, b));
        }
    };

    for a in 0..=max_ab {
        for b in 0..=max_ab {
            run("E+", v_plus, &ep, a, b, vec![(Scalar::one(), a, b + 1), (q(-am - 2 * b - 1), a + 1, b)]);
            run("f_r", v_plus, &[Gen::F(r)], a, b, vec![(q(-al - 2 * a - 1), a, b + 1), (Scalar::one(), a + 1, b)]);
            run(
                "F+",
                v_plus,
                &fp,
                a,
                b,
                vec![
                    (neg(&qint(a + al) * &qint(a)), a - 1, b),
                    (neg(&(&q(2 * a + al + 1) * &qint(b + am)) * &qint(b)), a, b - 1),
                ],
            );
            if a + b > n_of(l, m) {
                continue;
            }
            if nonneg {
                run("E-", v_minus, &em, a, b, vec![(neg(qint(m - b)), a, b + 1), (neg(&q(m - 2 * b) * &qint(l - a)), a + 1, b)]);
                run(
                    "f_{r+1}",
                    v_minus,
                    &[Gen::F(r + 1)],
                    a,
                    b,
                    vec![(&q(l - 2 * a) * &qint(m - b), a, b + 1), (qint(l - a), a + 1, b)],
                );
                run("F-", v_minus, &fm, a, b, vec![(neg(qint(a)), a - 1, b), (neg(&q(-l + 2 * a) * &qint(b)), a, b - 1)]);
            } else if nonpos {
                run(
                    "E-",
                    v_minus,
                    &em,
                    a,
                    b,
                    vec![(neg(qint(-m - b)), a, b + 1), (neg(&q(-m - 2 * b) * &qint(-l - a)), a + 1, b)],
                );
                run(
                    "f_{r-1}",
                    v_minus,
                    &[Gen::F(r - 1)],
                    a,
                    b,
                    vec![(&q(-l - 2 * a) * &qint(-m - b), a, b + 1), (qint(-l - a), a + 1, b)],
                );
                run("F-", v_minus, &fm, a, b, vec![(neg(qint(a)), a - 1, b), (neg(&q(l + 2 * a) * &qint(b)), a, b - 1)]);
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_identities() {
        let e = Eps::zeros(4, 2);
        for (l, m) in [(0, 0), (1, 0), (1, 1), (2, 1), (2, -1), (-1, -2)] {
            let rep = ladder_check(&e, l, m, 3);
            assert!(rep.checked > 0);
            assert!(rep.failures.is_empty(), "({l},{m}) {:?}", rep.failures);
        }
    }

    #[test]
    fn n_examples() {
        assert_eq!(n_of(1, 0), 0);
        assert_eq!(n_of(2, 1), 1);
        assert_eq!(n_of(-1, -2), 1);
    }

    #[test]
    fn u1_for_one_zero() {
        let e = Eps::zeros(4, 2);
        let u = singular_formula(&e, 1, 0, 1).unwrap();
        let a = v_plus(&e, 1, 0, 0, 1).unwrap();
        let b = v_plus(&e, 1, 0, 1, 0).unwrap();
        assert_eq!(u.get(&a), Scalar::one());
        assert_eq!(u.get(&b), -&(&qint(1) / &qint(2)).shift(-1));
        let u0 = singular_formula(&e, 1, 0, 0).unwrap();
        assert_eq!(u0.len(), 1);
    }

    #[test]
    fn kernel_at_top_is_one_dimensional() {
        let e = Eps::zeros(4, 2);
        let module = TensorModule::new(&e, &[1, 0], 4);
        let ker = singular_kernel(&module, module.top()).unwrap();
        assert_eq!(ker.len(), 1);
        let u1 = singular_formula(&e, 1, 0, 1).unwrap();
        let w1 = crate::engine::tensor_weight(&e, u1.leading().unwrap().0);
        let ker1 = singular_kernel(&module, &w1).unwrap();
        assert_eq!(ker1.len(), 1);
        assert!(ker1[0].ratio_to(&u1).is_some());
    }

    #[test]
    fn zero_zero_dims() {
        let e = Eps::zeros(4, 2);
        let d = Decomposition::new(&e, 0, 0, 2, 3).unwrap();
        let w = d.module.top() - &Weight::alpha(4, 2);
        assert_eq!(d.component_dim(0, &w).unwrap(), 1);
        assert_eq!(d.module.states_at(&w).unwrap().len(), 2);
        assert_eq!(d.component_dim(1, &w).unwrap(), 1);
    }
}
