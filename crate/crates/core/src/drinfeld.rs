//! Eigenvalues of the Drinfeld generators `psi_{i,k}` on the extremal
//! vector `v_l` of `W_l` (all parities zero): the closed-form series, and
//! the first-order coefficient computed from the algebra.
//!
//! The sign map on nodes is `o(i) = (-1)^i`. The series variable at node
//! `i` is `u = o(i) (-q^-1)^n z`; at `i = r` this is the usual `o(r)` form,
//! and at `i = r +- 1` it carries the sign of `psi_{i,1}` itself.

use serde::Serialize;
use thiserror::Error;

use crate::engine::{apply_word, Gen, SparseVec, TensorState};
use crate::lattice::Eps;
use crate::scalars::Scalar;
use crate::structure::v_l;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DrinfeldError {
    #[error("node {0} is not in 1..n")]
    BadNode(usize),
    #[error("psi_{{i,1}} v_l is not a multiple of v_l for i = {0}")]
    NotEigen(usize),
}

/// `o(i) = (-1)^i`.
pub fn o(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coefficient of `z` in `u = o(node) (-q^-1)^n z`.
pub fn u_coefficient(n: usize, node: usize) -> Scalar {
    let base = Scalar::q_pow(-(n as i64)).scale_int(if n % 2 == 0 { 1 } else { -1 });
    base.scale_int(o(node))
}

/// `psi_{i,0}, ..., psi_{i,K}` on `v_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct LSeries {
    pub i: usize,
    pub coeffs: Vec<Scalar>,
    pub sign: i64,
}

impl Serialize for LSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

/// Power series of `num(z) / den(z)` to order `k` (`den(0)` invertible).
fn series_quotient(num: &[Scalar], den: &[Scalar], k: usize) -> Vec<Scalar> {
    let d0 = den[0].inv().expect("invertible constant term");
    let mut out: Vec<Scalar> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut acc = num.get(j).cloned().unwrap_or_default();
        for (m, dm) in den.iter().enumerate().skip(1) {
            if m <= j {
                acc = &acc - &(dm * &out[j - m]);
            }
        }
        out.push(&acc * &d0);
    }
    out
}

/// The closed form of `Psi_i(z)` on `W_l` for parities zero, split `r`,
/// expanded to order `k`.
pub fn psi_closed_form(n: usize, r: usize, l: i64, i: usize, k: usize) -> Result<LSeries, DrinfeldError> {
    if i == 0 || i >= n {
        return Err(DrinfeldError::BadNode(i));
    }
    let c = u_coefficient(n, i);
    let one = Scalar::one();
    // num / den as polynomials in z
    let (num, den) = if i + 1 == r && l < 0 {
        let a = Scalar::q_pow(-l);
        (vec![a.clone(), -c.clone()], vec![one, -(&a * &c)])
    } else if i == r {
        let b = Scalar::q_pow(-l.abs() - 1);
        (vec![b.clone(), c.clone()], vec![one, &b * &c])
    } else if i == r + 1 && l >= 0 {
        let a = Scalar::q_pow(l);
        (vec![a.clone(), -c.clone()], vec![one, -(&a * &c)])
    } else {
        (vec![one.clone()], vec![one])
    };
    Ok(LSeries { i, coeffs: series_quotient(&num, &den, k), sign: o(i) })
}

/// `E = (-q^-1)^{n-2} (e_{i+1} ... e_{n-1})(e_{i-1} ... e_1) e_0` as a word
/// (rightmost letter acts first).
pub fn leading_word(n: usize, i: usize) -> Vec<Gen> {
    let mut w: Vec<Gen> = ((i + 1)..n).map(Gen::E).collect();
    w.extend((1..i).rev().map(Gen::E));
    w.push(Gen::E(0));
    w
}

/// `psi_{i,1}` on `v_l` from `o(i)(q - q^-1) k_i (E e_i - q^-2 e_i E) v_l`,
/// keeping only the leading monomial of `E`.
pub fn psi1_from_algebra(l: i64, i: usize, n: usize, r: usize) -> Result<Scalar, DrinfeldError> {
    if i == 0 || i >= n {
        return Err(DrinfeldError::BadNode(i));
    }
    let eps = Eps::zeros(n, r);
    let top = TensorState::new(vec![v_l(n, r, l)]);
    let v: SparseVec<TensorState> = SparseVec::basis(top.clone());
    let sign = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    let pref = &sign * &Scalar::q_pow(-(n as i64 - 2));
    let word = leading_word(n, i);
    // E e_i v
    let mut first_word = word.clone();
    first_word.push(Gen::E(i));
    let a = apply_word(&eps, &first_word, &v);
    // e_i E v
    let mut second_word = vec![Gen::E(i)];
    second_word.extend(word);
    let b = apply_word(&eps, &second_word, &v);
    let mut inner = a;
    inner.add_scaled(&b, &-Scalar::q_pow(-2));
    let inner = inner.scaled(&pref);
    let out = apply_word(&eps, &[Gen::k_alpha(n, i, 1)], &inner);
    let qdiff = &Scalar::q_pow(1) - &Scalar::q_pow(-1);
    let out = out.scaled(&qdiff.scale_int(o(i)));
    if out.is_zero() {
        return Ok(Scalar::zero());
    }
    // a single z from e_0 lands on the same state
    let mut shifted = top;
    shifted.zexps[0] = 1;
    out.ratio_to(&SparseVec::basis(shifted)).ok_or(DrinfeldError::NotEigen(i))
}

/// `e_i v_l = 0` for every `i != 0`.
pub fn highest_annihilated(l: i64, n: usize, r: usize) -> bool {
    let eps = Eps::zeros(n, r);
    let v: SparseVec<TensorState> = SparseVec::basis(TensorState::new(vec![v_l(n, r, l)]));
    (1..n).all(|i| apply_word(&eps, &[Gen::E(i)], &v).is_zero())
}

/// Every ordering of the nodes other than `i` whose first-acting letter is
/// not `e_0` kills `v_l`; returns the number of words checked, or the
/// first word that does not.
pub fn lower_terms_vanish(l: i64, i: usize, n: usize, r: usize) -> Result<usize, Vec<usize>> {
    let eps = Eps::zeros(n, r);
    let v: SparseVec<TensorState> = SparseVec::basis(TensorState::new(vec![v_l(n, r, l)]));
    let nodes: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let mut count = 0;
    let mut perm = nodes.clone();
    let mut bad = None;
    permute(&mut perm, 0, &mut |w| {
        if bad.is_some() || *w.last().unwrap() == 0 {
            return;
        }
        count += 1;
        let gens: Vec<Gen> = w.iter().map(|&j| Gen::E(j)).collect();
        if !apply_word(&eps, &gens, &v).is_zero() {
            bad = Some(w.to_vec());
        }
    });
    match bad {
        Some(w) => Err(w),
        None => Ok(count),
    }
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for j in k..v.len() {
        v.swap(k, j);
        permute(v, k + 1, f);
        v.swap(k, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_at_split_node() {
        let s = psi_closed_form(4, 2, 0, 2, 3).unwrap();
        assert_eq!(s.coeffs[0], Scalar::q_pow(-1));
        let expect = &(&Scalar::one() - &Scalar::q_pow(-2)) * &u_coefficient(4, 2);
        assert_eq!(s.coeffs[1], expect);
    }

    #[test]
    fn trivial_nodes() {
        let s = psi_closed_form(5, 2, 1, 1, 4).unwrap();
        assert!(s.coeffs[0].is_one());
        assert!(s.coeffs[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn word_shape() {
        assert_eq!(leading_word(4, 2), vec![Gen::E(3), Gen::E(1), Gen::E(0)]);
        assert_eq!(leading_word(5, 1), vec![Gen::E(2), Gen::E(3), Gen::E(4), Gen::E(0)]);
    }
}
