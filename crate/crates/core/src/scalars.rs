//! Exact scalars: Laurent polynomials over the integers, the field Q(q) of
//! rational functions in `q`, and Q(q)(z).
//!
//! Every value is kept in a canonical form, so equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("evaluation at pole")]
    Pole,
    #[error("negative factorial argument {0}")]
    NegativeFactorial(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expression depends on z")]
    DependsOnZ,
}

// ---------------------------------------------------------------------------
// dense integer polynomials (ascending, no trailing zeros)

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_scale_div(a: &[BigInt], d: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c / d).collect()
}

/// Pseudo-remainder of `a` by `b` (b non-zero).
fn poly_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor in Z[q], normalized to a positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return normalize_sign(b.to_vec());
    }
    if b.is_empty() {
        return normalize_sign(a.to_vec());
    }
    let ca = content(a);
    let cb = content(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 || zq_coprime_mod(a, b) {
        return vec![c];
    }
    let mut x = poly_scale_div(a, &ca);
    let mut y = poly_scale_div(b, &cb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = poly_prem(&x, &y);
        x = y;
        y = if r.is_empty() {
            r
        } else {
            let cr = content(&r);
            poly_scale_div(&r, &cr)
        };
    }
    let mut g: Vec<BigInt> = x.iter().map(|v| v * &c).collect();
    g = normalize_sign(g);
    g
}

/// True when `a` and `b` stay coprime modulo a prime with unchanged
/// degrees; then their primitive parts are coprime over Z.
fn zq_coprime_mod(a: &[BigInt], b: &[BigInt]) -> bool {
    let modulus = BigInt::from(MOD_P);
    let reduce = |p: &[BigInt]| -> Option<Vec<u64>> {
        let v: Vec<u64> =
            p.iter().map(|c| c.mod_floor(&modulus).to_u64_digits().1.first().copied().unwrap_or(0)).collect();
        (*v.last()? != 0).then_some(v)
    };
    let (Some(x), Some(y)) = (reduce(a), reduce(b)) else { return false };
    mod_gcd_len(x, y) == 1
}

fn mod_gcd_len(mut x: Vec<u64>, mut y: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let inv = invmod(*y.last().unwrap());
        while x.len() >= y.len() {
            let c = mulmod(*x.last().unwrap(), inv);
            let shift = x.len() - y.len();
            for (j, &yc) in y.iter().enumerate() {
                x[shift + j] = (x[shift + j] + MOD_P - mulmod(c, yc)) % MOD_P;
            }
            trim(&mut x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len()
}

fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Exact quotient `a / b` in Z[q]; `b` must divide `a`.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if b.len() == 1 {
        return poly_scale_div(a, &b[0]);
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        debug_assert!(r.is_empty());
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); r.len() - db];
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let qc = &r[dr] / lb;
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &qc * bc;
        }
        quot[shift] = qc;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut quot);
    quot
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// An element of Z[q, q^-1], stored densely from its lowest exponent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentInt {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        LaurentInt { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentInt { lo: e, coeffs: vec![c] }
    }

    /// `q^e`
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    /// Builds `sum coeffs[k] q^(lo+k)`.
    pub fn from_coeffs(lo: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentInt { lo, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        trim(&mut self.coeffs);
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn high_exp(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.lo + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let k = e - self.lo;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Non-zero terms `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lo + k as i64, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentInt { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentInt { lo: self.lo, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        let lo = self.lo.min(other.lo);
        let hi = self.high_exp().max(other.high_exp());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.lo - lo) as usize + k];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation at a rational value of `q`.
    pub fn eval(&self, v: &BigRational) -> Result<BigRational, ScalarError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if v.is_zero() && self.lo < 0 {
            return Err(ScalarError::Pole);
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + BigRational::from_integer(c.clone());
        }
        Ok(acc * rational_pow(v, self.lo))
    }

    fn poly_part(&self) -> &[BigInt] {
        &self.coeffs
    }
}

fn rational_pow(v: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(v.clone(), e as usize)
    } else {
        num_traits::pow(v.recip(), (-e) as usize)
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(mut self) -> LaurentInt {
        for c in self.coeffs.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl<'a> Add<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn add(self, o: &LaurentInt) -> LaurentInt {
        self.add_signed(o, false)
    }
}

impl<'a> Sub<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn sub(self, o: &LaurentInt) -> LaurentInt {
        self.add_signed(o, true)
    }
}

impl<'a> Mul<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn mul(self, o: &LaurentInt) -> LaurentInt {
        if self.is_zero() || o.is_zero() {
            return LaurentInt::zero();
        }
        LaurentInt { lo: self.lo + o.lo, coeffs: poly_mul(&self.coeffs, &o.coeffs) }
    }
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i64, &BigInt)> = self.terms().collect();
        for (idx, (e, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            write_term(f, &mag, *e, "q")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, mag: &BigInt, e: i64, var: &str) -> fmt::Result {
    if e == 0 {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

// ---------------------------------------------------------------------------
// Q(q)

/// An element of Q(q) in canonical form.
///
/// The denominator is a polynomial in `q` with non-zero constant term and
/// positive leading coefficient, and numerator and denominator share no
/// common factor in Z[q] (integer content included).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentInt,
    den: LaurentInt,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: LaurentInt::zero(), den: LaurentInt::one() }
    }

    pub fn one() -> Self {
        Scalar { num: LaurentInt::one(), den: LaurentInt::one() }
    }

    pub fn int(c: i64) -> Self {
        Scalar::from_laurent(LaurentInt::constant(BigInt::from(c)))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::from_parts(LaurentInt::constant(n.into()), LaurentInt::constant(d.into()))
    }

    /// `q^e`
    pub fn q_pow(e: i64) -> Self {
        Scalar::from_laurent(LaurentInt::q_pow(e))
    }

    /// `c * q^e`
    pub fn monomial(c: i64, e: i64) -> Self {
        Scalar::from_laurent(LaurentInt::monomial(c.into(), e))
    }

    pub fn from_laurent(p: LaurentInt) -> Self {
        Scalar { num: p, den: LaurentInt::one() }
    }

    /// Canonicalizes `num / den`. Panics when `den` is zero.
    pub fn from_parts(num: LaurentInt, den: LaurentInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        let shift = num.lo - den.lo;
        let n = num.poly_part();
        let d = den.poly_part();
        let (mut n, mut d) = if d.len() == 1 && n.len() == 1 {
            let g = n[0].gcd(&d[0]);
            (vec![&n[0] / &g], vec![&d[0] / &g])
        } else if d.len() == 1 {
            let g = content(n).gcd(&d[0]);
            if g.is_one() {
                (n.to_vec(), d.to_vec())
            } else {
                (poly_scale_div(n, &g), vec![&d[0] / &g])
            }
        } else {
            let g = poly_gcd(n, d);
            if g.len() == 1 && g[0].is_one() {
                (n.to_vec(), d.to_vec())
            } else {
                (poly_div_exact(n, &g), poly_div_exact(d, &g))
            }
        };
        if d.last().is_some_and(|c| c.is_negative()) {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c = -&*c;
            }
        }
        Scalar {
            num: LaurentInt::from_coeffs(shift, n),
            den: LaurentInt::from_coeffs(0, d),
        }
    }

    pub fn num(&self) -> &LaurentInt {
        &self.num
    }

    pub fn den(&self) -> &LaurentInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in Z[q, q^-1].
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentInt> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::from_parts(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        if self.den.is_one() {
            return Scalar::from_laurent(self.num.pow(e as u32));
        }
        Scalar { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
    }

    /// Multiplies by `q^k` (cheap, keeps canonical form).
    pub fn shift(&self, k: i64) -> Scalar {
        Scalar { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        if c == 0 {
            return Scalar::zero();
        }
        if self.den.is_one() {
            return Scalar::from_laurent(self.num.scale(&BigInt::from(c)));
        }
        Scalar::from_parts(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// Exact evaluation of `q -> value`.
    pub fn substitute_q(&self, value: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(value)?;
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(self.num.eval(value)? / d)
    }

    /// Degree span used to keep reports readable.
    pub fn size_hint(&self) -> usize {
        self.num.coeffs.len() + self.den.coeffs.len()
    }

    /// Parses the textual grammar used in reports (no `z` allowed).
    pub fn parse(s: &str) -> Result<Scalar, ScalarError> {
        ZScalar::parse(s)?.to_scalar().ok_or(ScalarError::DependsOnZ)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -self.num, den: self.den }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar::from_laurent(&self.num + &o.num);
        }
        if self.den == o.den {
            return Scalar::from_parts(&self.num + &o.num, self.den.clone());
        }
        if o.den.is_one() {
            return Scalar::from_parts(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar::from_parts(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        let g = LaurentInt::from_coeffs(0, poly_gcd(self.den.poly_part(), o.den.poly_part()));
        let a = LaurentInt::from_coeffs(0, poly_div_exact(self.den.poly_part(), g.poly_part()));
        let b = LaurentInt::from_coeffs(0, poly_div_exact(o.den.poly_part(), g.poly_part()));
        let num = &(&self.num * &b) + &(&o.num * &a);
        let den = &(&a * &b) * &g;
        Scalar::from_parts(num, den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar::from_laurent(&self.num * &o.num);
        }
        if self.num.is_monomial() && self.den.is_one() && self.num.coeffs[0].abs().is_one() {
            let s = o.shift(self.num.lo);
            return if self.num.coeffs[0].is_negative() { -s } else { s };
        }
        if o.num.is_monomial() && o.den.is_one() && o.num.coeffs[0].abs().is_one() {
            let s = self.shift(o.num.lo);
            return if o.num.coeffs[0].is_negative() { -s } else { s };
        }
        // cross-cancel before multiplying
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        let num = &n1 * &n2;
        let mut den = &d1 * &d2;
        let mut num = num;
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        Scalar { num, den }
    }
}

/// Removes the common factor of a numerator and a denominator (den has lo = 0).
fn cancel(n: &LaurentInt, d: &LaurentInt) -> (LaurentInt, LaurentInt) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = poly_gcd(n.poly_part(), d.poly_part());
    if g.len() == 1 && g[0].is_one() {
        return (n.clone(), d.clone());
    }
    (
        LaurentInt::from_coeffs(n.lo, poly_div_exact(n.poly_part(), &g)),
        LaurentInt::from_coeffs(0, poly_div_exact(d.poly_part(), &g)),
    )
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &'a $t) -> $t { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Scalar, Add add, Sub sub, Mul mul, Div div);
forward_owned!(LaurentInt, Add add, Sub sub, Mul mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        if self.num.coeffs.len() > 1 {
            write!(f, "({n})")?;
        } else {
            write!(f, "{n}")?;
        }
        if self.den.coeffs.len() > 1 {
            write!(f, "/({d})")
        } else {
            write!(f, "/{d}")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Ord for Scalar {
    /// An arbitrary but deterministic total order (used for sorting reports).
    fn cmp(&self, o: &Self) -> Ordering {
        self.to_string().cmp(&o.to_string())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

// ---------------------------------------------------------------------------
// quantum integers

const QINT_CACHE: usize = 64;

fn qint_table() -> &'static Vec<Scalar> {
    static TABLE: OnceLock<Vec<Scalar>> = OnceLock::new();
    TABLE.get_or_init(|| (0..QINT_CACHE as i64).map(qint_uncached).collect())
}

fn qint_uncached(m: i64) -> Scalar {
    let a = m.unsigned_abs() as i64;
    if a == 0 {
        return Scalar::zero();
    }
    // q^{a-1} + q^{a-3} + ... + q^{-(a-1)}
    let mut coeffs = vec![BigInt::zero(); (2 * a - 1) as usize];
    for k in 0..a {
        coeffs[(2 * k) as usize] = BigInt::one();
    }
    let p = LaurentInt::from_coeffs(-(a - 1), coeffs);
    let s = Scalar::from_laurent(p);
    if m < 0 {
        -s
    } else {
        s
    }
}

/// The quantum integer `[m] = (q^m - q^-m)/(q - q^-1)`.
pub fn qint(m: i64) -> Scalar {
    let a = m.unsigned_abs() as usize;
    if a < QINT_CACHE {
        let s = qint_table()[a].clone();
        if m < 0 {
            -s
        } else {
            s
        }
    } else {
        qint_uncached(m)
    }
}

/// The quantum factorial `[m]! = [1][2]...[m]`.
pub fn qfact(m: i64) -> Result<Scalar, ScalarError> {
    if m < 0 {
        return Err(ScalarError::NegativeFactorial(m));
    }
    let mut acc = Scalar::one();
    for k in 1..=m {
        acc = &acc * &qint(k);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Q(q)[z] helpers (dense, ascending in z)

fn ztrim(v: &mut Vec<Scalar>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zpoly_add(a: &[Scalar], b: &[Scalar], negate_b: bool) -> Vec<Scalar> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let x = a.get(k).cloned().unwrap_or_default();
        let y = b.get(k).cloned().unwrap_or_default();
        out.push(if negate_b { &x - &y } else { &x + &y });
    }
    ztrim(&mut out);
    out
}

fn zpoly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    ztrim(&mut out);
    out
}

fn zpoly_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = a.iter().map(|x| x * c).collect();
    ztrim(&mut out);
    out
}

/// Division with remainder over the field Q(q).
fn zpoly_divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let db = b.len() - 1;
    let inv_lead = b[db].inv().expect("zero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![Scalar::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] * &inv_lead;
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&c * bc);
        }
        // guard against rounding-free but structurally non-zero leftovers
        r[dr] = Scalar::zero();
        quot[shift] = c;
        ztrim(&mut r);
    }
    ztrim(&mut quot);
    (quot, r)
}

fn zpoly_monic(a: &[Scalar]) -> Vec<Scalar> {
    let inv = a.last().expect("zero polynomial").inv().expect("zero lead");
    zpoly_scale(a, &inv)
}

/// Clears denominators: `a` as a polynomial in `z` over Z[q], up to a unit
/// and a factor from Q(q).
fn zpoly_to_zq(a: &[Scalar]) -> Vec<Vec<BigInt>> {
    let mut lcm: Vec<BigInt> = vec![BigInt::one()];
    for c in a {
        let d = &c.den.coeffs;
        let g = poly_gcd(&lcm, d);
        lcm = poly_div_exact(&poly_mul(&lcm, d), &g);
    }
    let scaled: Vec<LaurentInt> = a
        .iter()
        .map(|c| {
            if c.is_zero() {
                return LaurentInt::zero();
            }
            let f = poly_div_exact(&lcm, &c.den.coeffs);
            LaurentInt::from_coeffs(c.num.lo - c.den.lo, poly_mul(&c.num.coeffs, &f))
        })
        .collect();
    let lo = scaled.iter().filter(|c| !c.is_zero()).map(|c| c.lo).min().unwrap_or(0);
    scaled
        .into_iter()
        .map(|c| {
            if c.is_zero() {
                return Vec::new();
            }
            let mut v = vec![BigInt::zero(); (c.lo - lo) as usize];
            v.extend(c.coeffs);
            v
        })
        .collect()
}

fn zq_trim(v: &mut Vec<Vec<BigInt>>) {
    while v.last().is_some_and(|c| c.is_empty()) {
        v.pop();
    }
}

fn zq_primitive(v: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut g: Vec<BigInt> = Vec::new();
    for c in &v {
        g = poly_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            return v;
        }
    }
    if g.is_empty() {
        return v;
    }
    v.iter().map(|c| if c.is_empty() { Vec::new() } else { poly_div_exact(c, &g) }).collect()
}

fn zq_prem(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = poly_mul(c, lb);
        }
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            let t = poly_mul(&lr, bc);
            let cur = std::mem::take(&mut r[shift + j]);
            let len = cur.len().max(t.len());
            let mut out: Vec<BigInt> = (0..len)
                .map(|k| cur.get(k).cloned().unwrap_or_default() - t.get(k).cloned().unwrap_or_default())
                .collect();
            trim(&mut out);
            r[shift + j] = out;
        }
        zq_trim(&mut r);
    }
    r
}

fn zq_div_exact(v: Vec<Vec<BigInt>>, d: &[BigInt]) -> Vec<Vec<BigInt>> {
    if d.len() == 1 && d[0].is_one() {
        return v;
    }
    v.iter().map(|c| if c.is_empty() { Vec::new() } else { poly_div_exact(c, d) }).collect()
}

fn zq_pow(a: &[BigInt], e: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for _ in 0..e {
        out = poly_mul(&out, a);
    }
    out
}

/// Monic gcd over Q(q), computed by a subresultant remainder sequence in Z[q][z].
fn zpoly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x = zq_primitive(zpoly_to_zq(a));
    let mut y = zq_primitive(zpoly_to_zq(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let mut g: Vec<BigInt> = vec![BigInt::one()];
    let mut h: Vec<BigInt> = vec![BigInt::one()];
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![Scalar::one()];
        }
        let delta = x.len() - y.len();
        let r = zq_prem(&x, &y);
        let div = poly_mul(&g, &zq_pow(&h, delta));
        x = y;
        y = zq_div_exact(r, &div);
        g = x.last().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            poly_div_exact(&zq_pow(&g, delta), &zq_pow(&h, delta - 1))
        };
    }
    let x = zq_primitive(x);
    let g: Vec<Scalar> = x.into_iter().map(|c| Scalar::from_laurent(LaurentInt::from_coeffs(0, c))).collect();
    zpoly_monic(&g)
}

// A prime and an evaluation point for the modular coprimality test.
const MOD_P: u64 = (1 << 61) - 1;
const MOD_Q: u64 = 1_234_577;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, MOD_P - 2)
}

fn laurent_mod(p: &LaurentInt) -> u64 {
    let modulus = BigInt::from(MOD_P);
    let q = if p.lo >= 0 { powmod(MOD_Q, p.lo as u64) } else { invmod(powmod(MOD_Q, (-p.lo) as u64)) };
    let mut acc = 0u64;
    for c in p.coeffs.iter().rev() {
        let c = c.mod_floor(&modulus).to_u64_digits().1.first().copied().unwrap_or(0);
        acc = (mulmod(acc, MOD_Q) + c) % MOD_P;
    }
    mulmod(acc, q)
}

fn scalar_mod(s: &Scalar) -> Option<u64> {
    let d = laurent_mod(&s.den);
    if d == 0 {
        return None;
    }
    Some(mulmod(laurent_mod(&s.num), invmod(d)))
}

/// True when the images of `a` and `b` modulo a prime (at a fixed `q`) are
/// coprime with unchanged degrees, which implies `a` and `b` are coprime.
fn zpoly_coprime_mod(a: &[Scalar], b: &[Scalar]) -> bool {
    let reduce = |p: &[Scalar]| -> Option<Vec<u64>> {
        let v: Vec<u64> = p.iter().map(scalar_mod).collect::<Option<_>>()?;
        (*v.last()? != 0).then_some(v)
    };
    let (Some(x), Some(y)) = (reduce(a), reduce(b)) else { return false };
    mod_gcd_len(x, y) == 1
}

fn zpoly_eval(a: &[Scalar], c: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for k in a.iter().rev() {
        acc = &(&acc * c) + k;
    }
    acc
}

// ---------------------------------------------------------------------------
// Q(q)(z)

/// An element of Q(q)(z): a ratio of polynomials in `z` with coefficients in
/// Q(q). The denominator is monic in `z` and coprime to the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZScalar {
    num: Vec<Scalar>,
    den: Vec<Scalar>,
}

impl Default for ZScalar {
    fn default() -> Self {
        ZScalar::zero()
    }
}

impl From<Scalar> for ZScalar {
    fn from(s: Scalar) -> Self {
        ZScalar::constant(s)
    }
}

impl ZScalar {
    pub fn zero() -> Self {
        ZScalar { num: Vec::new(), den: vec![Scalar::one()] }
    }

    pub fn one() -> Self {
        ZScalar::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        if s.is_zero() {
            return ZScalar::zero();
        }
        ZScalar { num: vec![s], den: vec![Scalar::one()] }
    }

    /// The variable `z`.
    pub fn z() -> Self {
        ZScalar { num: vec![Scalar::zero(), Scalar::one()], den: vec![Scalar::one()] }
    }

    /// `c * z^k` for any integer `k`.
    pub fn z_pow(c: Scalar, k: i64) -> Self {
        if c.is_zero() {
            return ZScalar::zero();
        }
        let mut v = vec![Scalar::zero(); k.unsigned_abs() as usize + 1];
        if k >= 0 {
            v[k as usize] = c;
            ZScalar { num: v, den: vec![Scalar::one()] }
        } else {
            v[(-k) as usize] = Scalar::one();
            ZScalar { num: vec![c], den: v }
        }
    }

    /// A polynomial in `z` given by ascending coefficients.
    pub fn poly(coeffs: Vec<Scalar>) -> Self {
        let mut num = coeffs;
        ztrim(&mut num);
        ZScalar { num, den: vec![Scalar::one()] }
    }

    /// Canonicalizes `num / den`.
    pub fn from_polys(num: Vec<Scalar>, den: Vec<Scalar>) -> Self {
        let mut num = num;
        let mut den = den;
        ztrim(&mut num);
        ztrim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return ZScalar::zero();
        }
        if den.len() > 1 && num.len() > 1 && !zpoly_coprime_mod(&num, &den) {
            let g = zpoly_gcd(&num, &den);
            if g.len() > 1 {
                num = zpoly_divrem(&num, &g).0;
                den = zpoly_divrem(&den, &g).0;
            }
        }
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            num = zpoly_scale(&num, &inv);
            den = zpoly_scale(&den, &inv);
        }
        ZScalar { num, den }
    }

    pub fn num(&self) -> &[Scalar] {
        &self.num
    }

    pub fn den(&self) -> &[Scalar] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.len() == 1 && self.num.len() == 1 && self.num[0].is_one()
    }

    /// Returns the value when it does not depend on `z`.
    pub fn to_scalar(&self) -> Option<Scalar> {
        if self.den.len() != 1 {
            return None;
        }
        match self.num.len() {
            0 => Some(Scalar::zero()),
            1 => Some(self.num[0].clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.to_scalar().is_some()
    }

    pub fn inv(&self) -> Result<ZScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(ZScalar::from_polys(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Scalar) -> ZScalar {
        if c.is_zero() {
            return ZScalar::zero();
        }
        ZScalar { num: zpoly_scale(&self.num, c), den: self.den.clone() }
    }

    /// Evaluates at `z = c`.
    pub fn eval(&self, c: &Scalar) -> Result<Scalar, ScalarError> {
        let d = zpoly_eval(&self.den, c);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(&zpoly_eval(&self.num, c) / &d)
    }

    /// Substitutes `z -> c z`.
    pub fn rescale_z(&self, c: &Scalar) -> ZScalar {
        let pw = |v: &[Scalar]| -> Vec<Scalar> {
            let mut acc = Scalar::one();
            v.iter()
                .map(|x| {
                    let y = x * &acc;
                    acc = &acc * c;
                    y
                })
                .collect()
        };
        ZScalar::from_polys(pw(&self.num), pw(&self.den))
    }

    pub fn pow(&self, e: i64) -> ZScalar {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut acc = ZScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn parse(s: &str) -> Result<ZScalar, ScalarError> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(ScalarError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

impl Neg for ZScalar {
    type Output = ZScalar;
    fn neg(self) -> ZScalar {
        ZScalar { num: self.num.into_iter().map(|c| -c).collect(), den: self.den }
    }
}

impl<'a> Add<&'a ZScalar> for &'a ZScalar {
    type Output = ZScalar;
    fn add(self, o: &ZScalar) -> ZScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return ZScalar::from_polys(zpoly_add(&self.num, &o.num, false), self.den.clone());
        }
        let num = zpoly_add(&zpoly_mul(&self.num, &o.den), &zpoly_mul(&o.num, &self.den), false);
        ZScalar::from_polys(num, zpoly_mul(&self.den, &o.den))
    }
}

impl<'a> Sub<&'a ZScalar> for &'a ZScalar {
    type Output = ZScalar;
    fn sub(self, o: &ZScalar) -> ZScalar {
        self + &(-o.clone())
    }
}

impl<'a> Mul<&'a ZScalar> for &'a ZScalar {
    type Output = ZScalar;
    fn mul(self, o: &ZScalar) -> ZScalar {
        if self.is_zero() || o.is_zero() {
            return ZScalar::zero();
        }
        if self.den.len() == 1 && o.den.len() == 1 {
            return ZScalar { num: zpoly_mul(&self.num, &o.num), den: vec![Scalar::one()] };
        }
        ZScalar::from_polys(zpoly_mul(&self.num, &o.num), zpoly_mul(&self.den, &o.den))
    }
}

impl<'a> Div<&'a ZScalar> for &'a ZScalar {
    type Output = ZScalar;
    fn div(self, o: &ZScalar) -> ZScalar {
        self * &o.inv().expect("division by zero")
    }
}

forward_owned!(ZScalar, Add add, Sub sub, Mul mul, Div div);

fn fmt_zpoly(v: &[Scalar]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let terms: Vec<(usize, &Scalar)> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    // ascending in z, but lead with the first term whose sign is positive
    let first = terms
        .iter()
        .position(|(_, c)| !c.num().leading_coeff().is_negative())
        .unwrap_or(0);
    let mut order = vec![terms[first]];
    order.extend(terms.iter().enumerate().filter(|(i, _)| *i != first).map(|(_, t)| *t));
    let mut out = String::new();
    for (idx, (k, c)) in order.iter().enumerate() {
        let neg = c.num().leading_coeff().is_negative();
        let mag = if neg { -(*c).clone() } else { (*c).clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let ms = mag.to_string();
        let compound = mag.num().terms().count() > 1 || !mag.is_laurent();
        match (*k, mag.is_one()) {
            (0, _) => out.push_str(&ms),
            (_, true) => {}
            _ => {
                if compound {
                    out.push_str(&format!("({ms})*"));
                } else {
                    out.push_str(&format!("{ms}*"));
                }
            }
        }
        if *k == 1 {
            out.push('z');
        } else if *k > 1 {
            out.push_str(&format!("z^{k}"));
        }
    }
    out
}

impl fmt::Display for ZScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_zpoly(&self.num);
        if self.den.len() == 1 {
            let nonzero = self.num.iter().filter(|c| !c.is_zero()).count();
            if nonzero == 1 && self.num.len() == 1 {
                return write!(f, "{}", self.num[0]);
            }
            return write!(f, "{n}");
        }
        write!(f, "({n})/({})", fmt_zpoly(&self.den))
    }
}

impl fmt::Debug for ZScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    Z,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ScalarError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let txt: String = chars[start..i].iter().collect();
                out.push(Tok::Num(txt.parse().unwrap()));
            }
            'q' => {
                out.push(Tok::Q);
                i += 1;
            }
            'z' => {
                out.push(Tok::Z);
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(ScalarError::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ZScalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ZScalar, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == '*' {
                &acc * &t
            } else {
                if t.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                &acc / &t
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ZScalar, ScalarError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ZScalar, ScalarError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let mut neg = false;
            if self.peek_op() == Some('-') {
                neg = true;
                self.pos += 1;
            }
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    i64::try_from(n.clone()).map_err(|_| ScalarError::Parse("exponent too large".into()))?
                }
                _ => return Err(ScalarError::Parse("expected integer exponent".into())),
            };
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ZScalar, ScalarError> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => Ok(ZScalar::constant(Scalar::from_laurent(LaurentInt::constant(n)))),
            Some(Tok::Q) => Ok(ZScalar::constant(Scalar::q_pow(1))),
            Some(Tok::Z) => Ok(ZScalar::z()),
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(ScalarError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(ScalarError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// A common interface for the two coefficient fields used by vectors.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn recip(&self) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        Scalar::inv(self).expect("inverse of zero")
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

impl Coeff for ZScalar {
    fn zero() -> Self {
        ZScalar::zero()
    }
    fn one() -> Self {
        ZScalar::one()
    }
    fn is_zero(&self) -> bool {
        ZScalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        if let Some(c) = o.to_scalar() {
            return self.scale(&c);
        }
        if let Some(c) = self.to_scalar() {
            return o.scale(&c);
        }
        self * o
    }
    fn negate(&self) -> Self {
        -self.clone()
    }
    fn recip(&self) -> Self {
        ZScalar::inv(self).expect("inverse of zero")
    }
    fn from_scalar(s: &Scalar) -> Self {
        ZScalar::constant(s.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> Scalar {
        Scalar::q_pow(e)
    }

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(2), &q(1) + &q(-1));
        let five = [4, 2, 0, -2, -4].iter().fold(Scalar::zero(), |a, e| &a + &q(*e));
        assert_eq!(qint(5), five);
        assert_eq!(qint(-3), -qint(3));
    }

    #[test]
    fn qint_matches_defining_quotient() {
        let den = &q(1) - &q(-1);
        for m in -12..=12 {
            let num = &q(m) - &q(-m);
            assert_eq!(qint(m), &num / &den, "m={m}");
        }
    }

    #[test]
    fn qfact_values() {
        assert!(qfact(0).unwrap().is_one());
        assert_eq!(qfact(2).unwrap(), qint(2));
        assert_eq!(qfact(3).unwrap(), &qint(2) * &qint(3));
        assert!(qfact(-1).is_err());
    }

    #[test]
    fn substitution() {
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        assert_eq!(qint(3).substitute_q(&one).unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(
            qint(2).substitute_q(&two).unwrap(),
            BigRational::new(5.into(), 2.into())
        );
        let pole = Scalar::one() / (&q(1) - &Scalar::one());
        assert_eq!(pole.substitute_q(&one), Err(ScalarError::Pole));
    }

    #[test]
    fn canonical_denominator() {
        // q / (2q^3 - 2q) = 1 / (2q^2 - 2)
        let a = Scalar::from_parts(
            LaurentInt::q_pow(1),
            LaurentInt::from_coeffs(1, vec![(-2).into(), 0.into(), 2.into()]),
        );
        assert_eq!(a.den().low_exp(), 0);
        assert_eq!(a.num(), &LaurentInt::one());
        assert_eq!(a.den().coeff(2), BigInt::from(2));
        let b = Scalar::from_parts(
            LaurentInt::constant((-1).into()),
            LaurentInt::from_coeffs(0, vec![2.into(), 0.into(), (-2).into()]),
        );
        assert_eq!(a, b);
    }

    #[test]
    fn render_and_parse() {
        let s = &(&q(2) + &Scalar::one()) + &q(-2);
        assert_eq!(s.to_string(), "q^2 + 1 + q^-2");
        assert_eq!(Scalar::parse("q^2 + 1 + q^-2").unwrap(), s);
        let z = ZScalar::parse("(1 - q^3*z)/(z - q^3)").unwrap();
        assert_eq!(z.to_string(), "(1 - q^3*z)/(z - q^3)");
        assert_eq!(ZScalar::parse(&z.to_string()).unwrap(), z);
        assert_eq!(Scalar::parse("-q^-1").unwrap(), -q(-1));
        assert!(Scalar::parse("z").is_err());
        assert!(Scalar::parse("1/(q-q)").is_err());
    }

    #[test]
    fn zscalar_eval_and_cancel() {
        let z = ZScalar::z();
        let c = ZScalar::constant(q(3));
        let f = &(&ZScalar::one() - &(&c * &z)) / &(&z - &c);
        assert!(f.eval(&q(3)).is_err());
        let g = &f * &(&z - &c);
        assert_eq!(g, &ZScalar::one() - &(&c * &z));
        assert!(f.rescale_z(&Scalar::one()) == f);
    }
}
