//! Dense exact linear algebra over a [`Coeff`] field: echelon forms,
//! kernels, and coordinates with respect to a spanning set.

use num_rational::BigRational;
use num_traits::Zero;

use crate::scalars::Coeff;

/// Index of the pivot chosen in a column: the entry with the smallest
/// coefficient size keeps intermediate expressions small.
fn pick_pivot<C: Coeff>(rows: &[Vec<C>], from: usize, col: usize, size: &impl Fn(&C) -> usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (k, row) in rows.iter().enumerate().skip(from) {
        if !row[col].is_zero() {
            let s = size(&row[col]);
            if best.is_none_or(|(_, bs)| s < bs) {
                best = Some((k, s));
            }
        }
    }
    best.map(|(k, _)| k)
}

fn default_size<C: Coeff>(c: &C) -> usize {
    c.to_string().len()
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<C: Coeff>(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..ncols {
        if pr == rows.len() {
            break;
        }
        let Some(k) = pick_pivot(rows, pr, col, &default_size) else { continue };
        rows.swap(pr, k);
        let inv = rows[pr][col].recip();
        let prow: Vec<C> = rows[pr].iter().map(|x| x.times(&inv)).collect();
        rows[pr] = prow;
        for k in 0..rows.len() {
            if k == pr || rows[k][col].is_zero() {
                continue;
            }
            let f = rows[k][col].clone();
            for c in col..ncols {
                if !rows[pr][c].is_zero() {
                    let d = rows[pr][c].times(&f);
                    rows[k][c] = rows[k][c].minus(&d);
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    rows.truncate(pr);
    pivots
}

pub fn rank<C: Coeff>(rows: &[Vec<C>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
/// Each kernel vector has a 1 in one free column and 0 in the others.
pub fn kernel<C: Coeff>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut m: Vec<Vec<C>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = if m.is_empty() { Vec::new() } else { rref(&mut m) };
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![C::zero(); ncols];
        v[free] = C::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = row[free].negate();
        }
        out.push(v);
    }
    out
}

/// Solves `A x = b` (A as rows). Returns `None` when inconsistent; free
/// variables are set to zero.
pub fn solve<C: Coeff>(rows: &[Vec<C>], b: &[C], ncols: usize) -> Option<Vec<C>> {
    let mut m: Vec<Vec<C>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![C::zero(); ncols];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Greedy choice of linearly independent rows of a rational matrix, in order.
pub fn independent_rows(rows: &[Vec<BigRational>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut picked = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= y * &f;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            basis.push((pc, v));
            picked.push(k);
        }
    }
    picked
}

/// An echelonized spanning set that remembers how each echelon row was
/// built from the inserted vectors, so that coordinates can be recovered.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    dim: usize,
    rows: Vec<(usize, Vec<C>)>,
    /// `transforms[k]` expresses echelon row `k` in the inserted vectors.
    transforms: Vec<Vec<(usize, C)>>,
    inserted: usize,
}

impl<C: Coeff> Echelon<C> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), transforms: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors accepted so far.
    pub fn len(&self) -> usize {
        self.inserted
    }

    pub fn is_empty(&self) -> bool {
        self.inserted == 0
    }

    /// Reduces `v` against the echelon rows; returns the remainder and the
    /// combination (over inserted vectors) that was subtracted.
    fn reduce(&self, v: &[C]) -> (Vec<C>, Vec<(usize, C)>) {
        let mut v = v.to_vec();
        let mut used: Vec<(usize, C)> = Vec::new();
        for (k, (pc, row)) in self.rows.iter().enumerate() {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for c in *pc..self.dim {
                if !row[c].is_zero() {
                    v[c] = v[c].minus(&row[c].times(&f));
                }
            }
            for (idx, t) in &self.transforms[k] {
                add_sparse(&mut used, *idx, t.times(&f));
            }
        }
        (v, used)
    }

    /// Inserts `v` if it is independent of the vectors so far. The inserted
    /// vector gets the next index.
    pub fn insert(&mut self, v: &[C]) -> bool {
        let (rem, used) = self.reduce(v);
        let Some(pc) = rem.iter().position(|x| !x.is_zero()) else { return false };
        let inv = rem[pc].recip();
        let row: Vec<C> = rem.iter().map(|x| x.times(&inv)).collect();
        let idx = self.inserted;
        let mut tr: Vec<(usize, C)> = used.into_iter().map(|(i, c)| (i, c.negate().times(&inv))).collect();
        tr.push((idx, inv));
        // keep rows sorted by pivot column so that reduction is a single pass
        let pos = self.rows.iter().position(|(p, _)| *p > pc).unwrap_or(self.rows.len());
        // rows after `pos` have larger pivots; earlier rows may have a nonzero
        // entry at `pc`, which is fine for a forward pass only if we clear it
        self.rows.insert(pos, (pc, row));
        self.transforms.insert(pos, tr);
        for k in 0..pos {
            let f = self.rows[k].1[pc].clone();
            if f.is_zero() {
                continue;
            }
            let (prow, ptr) = (self.rows[pos].1.clone(), self.transforms[pos].clone());
            for c in pc..self.dim {
                if !prow[c].is_zero() {
                    self.rows[k].1[c] = self.rows[k].1[c].minus(&prow[c].times(&f));
                }
            }
            for (i, t) in ptr {
                add_sparse(&mut self.transforms[k], i, t.times(&f).negate());
            }
        }
        self.inserted += 1;
        true
    }

    /// Coordinates of `v` in the inserted vectors, or `None` if `v` is not
    /// in their span.
    pub fn coords(&self, v: &[C]) -> Option<Vec<C>> {
        let (rem, used) = self.reduce(v);
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut out = vec![C::zero(); self.inserted];
        for (i, c) in used {
            out[i] = c;
        }
        Some(out)
    }
}

fn add_sparse<C: Coeff>(v: &mut Vec<(usize, C)>, idx: usize, c: C) {
    if c.is_zero() {
        return;
    }
    if let Some(pos) = v.iter().position(|(i, _)| *i == idx) {
        let s = v[pos].1.plus(&c);
        if s.is_zero() {
            v.remove(pos);
        } else {
            v[pos].1 = s;
        }
    } else {
        v.push((idx, c));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn s(x: &str) -> Scalar {
        Scalar::parse(x).unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![s("1"), s("q")], vec![s("q^-1"), s("1")]];
        let k = kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![-s("q"), s("1")]);
        assert_eq!(rank(&rows), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let rows = vec![vec![s("1"), s("1")], vec![s("1"), s("-1")]];
        let x = solve(&rows, &[s("q"), s("q^-1")], 2).unwrap();
        assert_eq!(&x[0] + &x[1], s("q"));
        let sing = vec![vec![s("1"), s("1")], vec![s("2"), s("2")]];
        assert!(solve(&sing, &[s("1"), s("3")], 2).is_none());
    }

    #[test]
    fn independent_rows_greedy() {
        let r = |a: i64, b: i64| vec![BigRational::from_integer(a.into()), BigRational::from_integer(b.into())];
        assert_eq!(independent_rows(&[r(1, 2), r(2, 4), r(0, 0), r(1, 3), r(5, 5)]), vec![0, 3]);
    }

    #[test]
    fn echelon_coordinates() {
        let vs = [
            vec![s("0"), s("1"), s("q")],
            vec![s("1"), s("0"), s("1")],
            vec![s("1"), s("1"), s("1 + q")],
            vec![s("q"), s("0"), s("1")],
        ];
        let mut e = Echelon::new(3);
        assert!(e.insert(&vs[0]));
        assert!(e.insert(&vs[1]));
        assert!(!e.insert(&vs[2]));
        assert!(e.insert(&vs[3]));
        let target = vec![s("2"), s("q"), s("q^3")];
        let c = e.coords(&target).unwrap();
        let picks = [&vs[0], &vs[1], &vs[3]];
        for col in 0..3 {
            let mut acc = Scalar::zero();
            for (k, v) in picks.iter().enumerate() {
                acc = &acc + &(&c[k] * &v[col]);
            }
            assert_eq!(acc, target[col]);
        }
    }
}
