use proptest::prelude::*;
use qosc::engine::Gen;
use qosc::lattice::Eps;
use qosc::rmat::*;
use qosc::scalars::{Scalar, ZScalar};

#[test]
fn equal_charges_follow_the_closed_form() {
    let eps = Eps::zeros(4, 2);
    for l in [0, 1, -1] {
        let r = RMatrix::solve(&eps, l, l, 3, 6).unwrap();
        for t in 0..=3 {
            assert_eq!(r.rho(t).unwrap(), &spectral_closed_form(l, l, t), "l={l} t={t}");
        }
        // every coefficient is 1 at z = 1
        for rho in r.rho_at(&Arg::Value(Scalar::one())).unwrap().into_iter().flatten() {
            assert!(rho.is_one());
        }
    }
}

#[test]
fn ratios_are_closed_form_up_to_constants() {
    let eps = Eps::zeros(4, 2);
    for (l, m) in [(0, 0), (1, 0), (1, 1), (2, 1), (2, -1), (-1, -2)] {
        let r = RMatrix::solve(&eps, l, m, 3, 6).unwrap();
        for t in 1..=3 {
            let k = r.kappa(t).unwrap_or_else(|| panic!("({l},{m}) t={t}"));
            assert!(!k.is_zero());
            assert_eq!(r.ratio(t).unwrap(), spectral_factor((l - m).abs() + 2 * t).scale(&k));
        }
    }
}

#[test]
fn one_zero_constants() {
    // observed: kappa_t = q^2 [t] / [t+1] with [k] = 1 + q^2 + ... + q^{2k-2}
    let eps = Eps::zeros(4, 2);
    let r = RMatrix::solve(&eps, 1, 0, 3, 6).unwrap();
    let geo = |k: i64| (0..k).fold(Scalar::zero(), |acc, j| &acc + &Scalar::q_pow(2 * j));
    for t in 1..=3 {
        let expect = &(&Scalar::q_pow(2) * &geo(t)) / &geo(t + 1);
        assert_eq!(r.kappa(t).unwrap(), expect, "t={t}");
    }
}

#[test]
fn intertwines_all_generators() {
    for (bits, l, m) in [("0000", 1, 0), ("0100", 0, 0), ("0000", 2, -1)] {
        let eps = Eps::parse(bits, 2).unwrap();
        let r = RMatrix::solve(&eps, l, m, 3, 6).unwrap_or_else(|e| panic!("{bits} ({l},{m}): {e}"));
        let n = eps.n();
        let gens: Vec<Gen> = (0..n).map(Gen::E).chain((0..n).map(Gen::F)).collect();
        let bad = r.verify_intertwiner(&gens, 2).unwrap();
        assert!(bad.is_empty(), "{bits} ({l},{m}): {:?}", bad.first());
    }
}

#[test]
fn normalizer_cases() {
    assert!(c_norm(0, 3).is_one());
    assert!(c_norm(2, -2).is_one());
    assert_eq!(c_norm(-2, -3), &spectral_factor(3) * &spectral_factor(5));
}

proptest! {
    #[test]
    fn factor_is_unitary(a in 1i64..8, num in 1i64..50, den in 1i64..50) {
        // f(c) f(1/c) = 1 away from the poles
        let c = Scalar::rational(num, den);
        let f = spectral_factor(a);
        let (x, y) = (f.eval(&c), f.eval(&c.inv().unwrap()));
        if let (Ok(x), Ok(y)) = (x, y) {
            prop_assert!((&x * &y).is_one());
        }
    }

    #[test]
    fn closed_form_telescopes(l in -3i64..4, m in -3i64..4, t in 1i64..4) {
        let prev = spectral_closed_form(l, m, t - 1);
        let next = spectral_closed_form(l, m, t);
        prop_assert_eq!(&prev * &spectral_factor((l - m).abs() + 2 * t), next);
    }

    #[test]
    fn rescaling_by_one_is_trivial(a in 0i64..6) {
        let f = spectral_factor(a);
        prop_assert_eq!(f.rescale_z(&Scalar::one()), f.clone());
        prop_assert!((&f * &f.inv().unwrap()).is_one());
        prop_assert!(!ZScalar::z().is_constant());
    }
}
