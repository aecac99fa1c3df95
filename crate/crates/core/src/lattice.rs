//! Parity sequences, the weight lattice with its bilinear form, and the
//! biadditive functions `qform` / `qhat`.
//!
//! Indices of `delta` coordinates are 1-based in the public API (`1..=n`);
//! node indices `i` of simple roots live in `0..n` and are read modulo `n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("parity sequence needs n >= 4, got {0}")]
    TooShort(usize),
    #[error("split r={r} must satisfy 2 <= r <= n-2 (n={n})")]
    BadSplit { n: usize, r: usize },
    #[error("invalid bit {0:?} in parity string")]
    BadBit(char),
}

/// A 0/1 parity sequence with its split point `r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Eps {
    bits: Vec<u8>,
    r: usize,
}

impl Eps {
    pub fn new(bits: Vec<u8>, r: usize) -> Result<Eps, LatticeError> {
        let n = bits.len();
        if n < 4 {
            return Err(LatticeError::TooShort(n));
        }
        if r < 2 || r + 2 > n {
            return Err(LatticeError::BadSplit { n, r });
        }
        Ok(Eps { bits: bits.into_iter().map(|b| b & 1).collect(), r })
    }

    /// Parses a bitstring such as `"0100"`.
    pub fn parse(s: &str, r: usize) -> Result<Eps, LatticeError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(LatticeError::BadBit(other)),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Eps::new(bits, r)
    }

    pub fn zeros(n: usize, r: usize) -> Eps {
        Eps::new(vec![0; n], r).expect("valid parity sequence")
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `eps_i` for `1 <= i <= n`.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// Whether slot `i` (1-based) lies on the left side `{1..r}`.
    pub fn in_minus(&self, i: usize) -> bool {
        i <= self.r
    }

    /// `q_i`: `q` on even slots, `-q^-1` on odd ones.
    pub fn q_i(&self, i: usize) -> Scalar {
        if self.bit(i) == 0 {
            Scalar::q_pow(1)
        } else {
            -Scalar::q_pow(-1)
        }
    }

    /// Slots touched by node `i` as 1-based `(a, b)` with `alpha_i = delta_a - delta_b`.
    pub fn node_slots(&self, i: usize) -> (usize, usize) {
        let n = self.n();
        let i = i % n;
        if i == 0 {
            (n, 1)
        } else {
            (i, i + 1)
        }
    }

    /// Node `i` is odd when `(alpha_i|alpha_i) = 0`.
    pub fn is_odd_node(&self, i: usize) -> bool {
        let (a, b) = self.node_slots(i);
        self.bit(a) != self.bit(b)
    }

    /// Numbers of zeros and ones.
    pub fn counts(&self) -> (usize, usize) {
        let ones = self.bits.iter().filter(|b| **b == 1).count();
        (self.n() - ones, ones)
    }

    /// True when the counts of 0s and 1s differ (needed for a normalized R matrix).
    pub fn unbalanced(&self) -> bool {
        let (m, n) = self.counts();
        m != n
    }

    pub fn bitstring(&self) -> String {
        self.bits.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
    }
}

impl fmt::Debug for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|r={}", self.bitstring(), self.r)
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `level * Lambda + sum d_i delta_i + k * delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub level: i64,
    pub d: Vec<i64>,
    pub k: i64,
}

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight { level: 0, d: vec![0; n], k: 0 }
    }

    /// The level-one generator `Lambda`.
    pub fn lambda(n: usize) -> Weight {
        Weight { level: 1, ..Weight::zero(n) }
    }

    /// `delta_i`, 1-based.
    pub fn delta(n: usize, i: usize) -> Weight {
        let mut w = Weight::zero(n);
        w.d[i - 1] = 1;
        w
    }

    /// The null root `delta` of the affinization.
    pub fn null_root(n: usize) -> Weight {
        Weight { k: 1, ..Weight::zero(n) }
    }

    /// Classical simple root `alpha_i = delta_i - delta_{i+1}` (indices mod n).
    pub fn alpha(n: usize, i: usize) -> Weight {
        let i = i % n;
        let (a, b) = if i == 0 { (n, 1) } else { (i, i + 1) };
        let mut w = Weight::zero(n);
        w.d[a - 1] += 1;
        w.d[b - 1] -= 1;
        w
    }

    /// Affine simple root: `alpha_0` additionally carries `delta`.
    pub fn alpha_af(n: usize, i: usize) -> Weight {
        let mut w = Weight::alpha(n, i);
        if i % n == 0 {
            w.k = 1;
        }
        w
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn is_classical(&self) -> bool {
        self.k == 0
    }

    /// Classical projection: forgets `delta`.
    pub fn cl(&self) -> Weight {
        Weight { k: 0, ..self.clone() }
    }

    /// Section of `cl`.
    pub fn iota(&self) -> Weight {
        self.cl()
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight { level: self.level * c, d: self.d.iter().map(|x| x * c).collect(), k: self.k * c }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight {
            level: self.level + o.level,
            d: self.d.iter().zip(&o.d).map(|(a, b)| a + b).collect(),
            k: self.k + o.k,
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        self + &(-o)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: &Weight) -> Weight {
        w.scale(self)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

fn plus_sum(eps: &Eps, w: &Weight) -> i64 {
    w.d[eps.r()..].iter().sum()
}

/// The symmetric bilinear form on classical weights.
pub fn bilinear(eps: &Eps, mu: &Weight, nu: &Weight) -> i64 {
    let diag: i64 = (0..eps.n())
        .map(|i| {
            let s = if eps.bits()[i] == 0 { 1 } else { -1 };
            s * mu.d[i] * nu.d[i]
        })
        .sum();
    diag + mu.level * plus_sum(eps, nu) + nu.level * plus_sum(eps, mu)
}

/// Sign and exponent of `qform`: `prod q_i^{mu_i nu_i} = sign * q^exp`.
fn qform_parts(eps: &Eps, mu: &Weight, nu: &Weight) -> (bool, i64) {
    let mut neg = false;
    let mut exp = 0;
    for i in 0..eps.n() {
        let p = mu.d[i] * nu.d[i];
        if eps.bits()[i] == 0 {
            exp += p;
        } else {
            exp -= p;
            if p.rem_euclid(2) == 1 {
                neg = !neg;
            }
        }
    }
    (neg, exp)
}

fn signed_q(neg: bool, exp: i64) -> Scalar {
    let s = Scalar::q_pow(exp);
    if neg {
        -s
    } else {
        s
    }
}

/// `qform(mu, nu) = prod_i q_i^{mu_i nu_i}`.
pub fn qform(eps: &Eps, mu: &Weight, nu: &Weight) -> Scalar {
    let (neg, exp) = qform_parts(eps, mu, nu);
    signed_q(neg, exp)
}

/// `qhat(mu, nu) = q^{sum_{j>r} (l' mu_j + l nu_j)} qform(mu, nu)`.
pub fn qhat(eps: &Eps, mu: &Weight, nu: &Weight) -> Scalar {
    let (neg, exp) = qhat_parts(eps, mu, nu);
    signed_q(neg, exp)
}

/// `qhat` as `(negative?, exponent of q)`.
pub fn qhat_parts(eps: &Eps, mu: &Weight, nu: &Weight) -> (bool, i64) {
    let (neg, exp) = qform_parts(eps, mu, nu);
    (neg, exp + nu.level * plus_sum(eps, mu) + mu.level * plus_sum(eps, nu))
}

/// A coweight `c_coef * c + sum dv_i delta_i^vee + d_coef * d` for the
/// `(0^n)` conventions in which `Lambda_r` pairs with the central element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coweight {
    pub c: i64,
    pub dv: Vec<i64>,
    pub d: i64,
}

impl Coweight {
    pub fn zero(n: usize) -> Coweight {
        Coweight { c: 0, dv: vec![0; n], d: 0 }
    }

    pub fn central(n: usize) -> Coweight {
        Coweight { c: 1, ..Coweight::zero(n) }
    }

    pub fn delta_vee(n: usize, i: usize) -> Coweight {
        let mut h = Coweight::zero(n);
        h.dv[i - 1] = 1;
        h
    }

    pub fn degree(n: usize) -> Coweight {
        Coweight { d: 1, ..Coweight::zero(n) }
    }

    /// Simple coroot `alpha_i^vee = delta_i^vee - delta_{i+1}^vee + (d_{ir} - d_{i0}) c`.
    pub fn alpha_vee(n: usize, r: usize, i: usize) -> Coweight {
        let i = i % n;
        let (a, b) = if i == 0 { (n, 1) } else { (i, i + 1) };
        let mut h = Coweight::zero(n);
        h.dv[a - 1] += 1;
        h.dv[b - 1] -= 1;
        if i == r {
            h.c += 1;
        }
        if i == 0 {
            h.c -= 1;
        }
        h
    }
}

/// Canonical pairing of a weight written in the `Lambda_r, delta_i, delta`
/// basis against a coweight.
pub fn pairing(mu: &Weight, h: &Coweight) -> i64 {
    mu.level * h.c + mu.d.iter().zip(&h.dv).map(|(a, b)| a * b).sum::<i64>() + mu.k * h.d
}

/// Identification of a weight with a coweight (all-zero parity only).
pub fn to_coweight(r: usize, mu: &Weight) -> Coweight {
    let n = mu.n();
    let mut h = Coweight::zero(n);
    for j in r..n {
        h.dv[j] += mu.level;
    }
    for i in 0..n {
        h.dv[i] += mu.d[i];
        if i >= r {
            h.c -= mu.d[i];
        }
    }
    h
}

/// Identification with the `Lambda_r` basis: `Lambda -> -Lambda_r`.
pub fn to_standard_weight(mu: &Weight) -> Weight {
    Weight { level: -mu.level, ..mu.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn form_values() {
        let e = Eps::zeros(4, 2);
        assert_eq!(bilinear(&e, &Weight::delta(4, 1), &Weight::delta(4, 1)), 1);
        let e2 = Eps::parse("0100", 2).unwrap();
        assert_eq!(bilinear(&e2, &Weight::delta(4, 2), &Weight::delta(4, 2)), -1);
        assert_eq!(bilinear(&e, &Weight::lambda(4), &Weight::lambda(4)), 0);
        assert_eq!(bilinear(&e, &Weight::lambda(4), &Weight::delta(4, 3)), 1);
        assert_eq!(bilinear(&e, &Weight::lambda(4), &Weight::delta(4, 2)), 0);
    }

    #[test]
    fn qform_values() {
        let e = Eps::zeros(4, 2);
        let d1 = Weight::delta(4, 1);
        assert_eq!(qform(&e, &d1, &d1), Scalar::q_pow(1));
        let o = Eps::parse("1111", 2).unwrap();
        assert_eq!(qform(&o, &d1, &d1), -Scalar::q_pow(-1));
        assert_eq!(qhat(&e, &Weight::lambda(4), &Weight::delta(4, 3)), Scalar::q_pow(1));
    }

    #[test]
    fn pairing_values() {
        let n = 4;
        let r = 2;
        assert_eq!(pairing(&Weight::alpha(n, r), &Coweight::alpha_vee(n, r, r)), 2);
        assert_eq!(pairing(&Weight::lambda(n), &Coweight::central(n)), 1);
        assert_eq!(pairing(&Weight::null_root(n), &Coweight::degree(n)), 1);
    }

    #[test]
    fn projections() {
        let n = 5;
        assert_eq!(Weight::null_root(n).cl(), Weight::zero(n));
        assert_eq!(Weight::delta(n, 2).iota(), Weight::delta(n, 2));
        assert_eq!(Weight::alpha_af(n, 0).cl(), Weight::alpha(n, 0));
        assert_eq!(Weight::alpha(n, 0), &Weight::delta(n, 5) - &Weight::delta(n, 1));
    }

    #[test]
    fn identification_with_standard_pairing() {
        // (lambda|mu) = <psi(lambda), phi(mu)> on basis elements
        for n in 4..=6 {
            for r in 2..=n - 2 {
                let e = Eps::zeros(n, r);
                let mut basis = vec![Weight::lambda(n)];
                basis.extend((1..=n).map(|i| Weight::delta(n, i)));
                for a in &basis {
                    for b in &basis {
                        let lhs = bilinear(&e, a, b);
                        let rhs = pairing(&to_standard_weight(a), &to_coweight(r, b));
                        assert_eq!(lhs, rhs, "n={n} r={r} {a:?} {b:?}");
                    }
                }
                // simple roots map to simple coroots
                for i in 0..n {
                    let h = to_coweight(r, &Weight::alpha(n, i));
                    let mut expect = Coweight::alpha_vee(n, r, i);
                    if i == 0 {
                        // alpha_0 = delta_n - delta_1 + delta; the delta term pairs trivially
                        expect.d = 0;
                    }
                    assert_eq!(h, expect, "n={n} r={r} i={i}");
                }
            }
        }
    }

    fn weight_strategy(n: usize) -> impl Strategy<Value = Weight> {
        (-3i64..=3, proptest::collection::vec(-3i64..=3, n))
            .prop_map(|(level, d)| Weight { level, d, k: 0 })
    }

    fn eps_strategy() -> impl Strategy<Value = Eps> {
        proptest::collection::vec(0u8..=1, 5).prop_map(|b| Eps::new(b, 2).unwrap())
    }

    proptest! {
        #[test]
        fn forms_are_symmetric(e in eps_strategy(), a in weight_strategy(5), b in weight_strategy(5)) {
            prop_assert_eq!(bilinear(&e, &a, &b), bilinear(&e, &b, &a));
            prop_assert_eq!(qform(&e, &a, &b), qform(&e, &b, &a));
            prop_assert_eq!(qhat(&e, &a, &b), qhat(&e, &b, &a));
        }

        #[test]
        fn qhat_is_biadditive(e in eps_strategy(), a in weight_strategy(5), b in weight_strategy(5), c in weight_strategy(5)) {
            let lhs = qhat(&e, &(&a + &b), &c);
            let rhs = &qhat(&e, &a, &c) * &qhat(&e, &b, &c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn qhat_is_signed_power_of_form(e in eps_strategy(), a in weight_strategy(5), b in weight_strategy(5)) {
            let (_, exp) = qhat_parts(&e, &a, &b);
            prop_assert_eq!(exp, bilinear(&e, &a, &b));
        }
    }
}
