use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qosc::scalars::{qfact, qint, LaurentInt, Scalar, ScalarError, ZScalar};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `[m]` as the plain sum `q^{m-1} + q^{m-3} + ... + q^{1-m}`.
fn qint_by_sum(m: i64) -> Scalar {
    let k = m.abs();
    let mut s = Scalar::zero();
    for j in 0..k {
        s = &s + &Scalar::q_pow(k - 1 - 2 * j);
    }
    if m < 0 {
        -s
    } else {
        s
    }
}

fn laurent() -> impl Strategy<Value = Scalar> {
    (-3i64..3, prop::collection::vec(-4i64..5, 1..4))
        .prop_map(|(lo, c)| Scalar::from_laurent(LaurentInt::from_coeffs(lo, c.into_iter().map(BigInt::from).collect())))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(a, b)| (!b.is_zero()).then(|| &a / &b))
}

#[test]
fn qint_examples() {
    assert!(qint(0).is_zero());
    assert_eq!(qint(2), &Scalar::q_pow(1) + &Scalar::q_pow(-1));
    assert_eq!(qint(2).substitute_q(&rat(2, 1)).unwrap(), rat(5, 2));
    assert_eq!(qint(3).substitute_q(&rat(1, 1)).unwrap(), rat(3, 1));
    assert_eq!(qfact(0).unwrap(), Scalar::one());
    assert_eq!(qfact(3).unwrap(), &qint(2) * &qint(3));
    assert_eq!(qfact(-1), Err(ScalarError::NegativeFactorial(-1)));
}

#[test]
fn pole_is_reported() {
    let s = &Scalar::one() / &(&Scalar::q_pow(1) - &Scalar::one());
    assert_eq!(s.substitute_q(&rat(1, 1)), Err(ScalarError::Pole));
}

#[test]
fn qint_identities() {
    for m in -20..=20 {
        assert_eq!(qint(m), qint_by_sum(m), "m = {m}");
        assert_eq!(&qint(m) * &qint(-m), -(&qint(m) * &qint(m)));
        assert_eq!(qint(m).substitute_q(&rat(1, 1)).unwrap(), rat(m, 1));
    }
}

#[test]
fn parse_round_trip() {
    for s in ["q^2", "1", "-q^-1", "(q^2 + 1)/(q - 1)"] {
        let x = Scalar::parse(s).unwrap();
        assert_eq!(Scalar::parse(&x.to_string()).unwrap(), x);
    }
    assert_eq!(Scalar::parse("z"), Err(ScalarError::DependsOnZ));
}

proptest! {
    #[test]
    fn canonical_form(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a * &b) / &b, a.clone());
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), n in 2i64..7, d in 1i64..4) {
        let v = rat(n, d);
        if let (Ok(x), Ok(y)) = (a.substitute_q(&v), b.substitute_q(&v)) {
            prop_assert_eq!((&a * &b).substitute_q(&v).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).substitute_q(&v).unwrap(), &x + &y);
        }
    }

    #[test]
    fn z_specialization_commutes(a in prop::collection::vec(scalar(), 1..3), b in prop::collection::vec(scalar(), 1..3), c in 2i64..6) {
        prop_assume!(b.iter().any(|x| !x.is_zero()));
        let f = ZScalar::from_polys(a.clone(), vec![Scalar::one(), Scalar::int(1)]);
        let g = ZScalar::poly(b);
        let c = Scalar::int(c);
        if let (Ok(x), Ok(y)) = (f.eval(&c), g.eval(&c)) {
            prop_assert_eq!((&f * &g).eval(&c).unwrap(), &x * &y);
            prop_assert_eq!((&f + &g).eval(&c).unwrap(), &x + &y);
        }
    }
}
