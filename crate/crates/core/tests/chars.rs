use proptest::prelude::*;
use qosc::chars::*;
use qosc::lattice::Eps;

fn all_partitions(max: i64, max_len: usize) -> Vec<Vec<i64>> {
    (0..=max).flat_map(|k| partitions(k, max_len)).collect()
}

#[test]
fn tableaux_agree_with_jacobi_trudi() {
    for mu in all_partitions(6, 4) {
        for nv in 1..=4 {
            assert_eq!(schur_tableaux(&mu, nv), schur_jt(&mu, nv), "mu = {mu:?}, {nv} variables");
        }
    }
}

#[test]
fn skew_tableaux_agree_with_jacobi_trudi() {
    for outer in all_partitions(5, 3) {
        for inner in all_partitions(3, 3) {
            let fits = inner.iter().enumerate().all(|(i, x)| outer.get(i).is_some_and(|o| o >= x));
            if fits {
                assert_eq!(skew_schur_tableaux(&outer, &inner, 3), skew_schur_jt(&outer, &inner, 3), "{outer:?}/{inner:?}");
            }
        }
    }
}

#[test]
fn pieri() {
    let nv = 4;
    let s1 = schur_tableaux(&[1], nv);
    for mu in all_partitions(5, 4) {
        let mut rhs = Poly::zero(nv);
        for i in 0..=mu.len() {
            let mut lam = mu.clone();
            if i == mu.len() {
                lam.push(1);
            } else {
                lam[i] += 1;
            }
            if i == 0 || lam[i] <= lam[i - 1] {
                rhs = rhs.add(&schur_tableaux(&lam, nv));
            }
        }
        assert_eq!(s1.mul(&schur_tableaux(&mu, nv)), rhs, "mu = {mu:?}");
    }
}

#[test]
fn littlewood_richardson_expands_products() {
    let nv = 4;
    for mu in all_partitions(3, 3) {
        for nu in all_partitions(3, 3) {
            let size: i64 = mu.iter().chain(&nu).sum();
            let mut rhs = Poly::zero(nv);
            for lam in partitions(size, nv) {
                let c = lr_coefficient(&lam, &mu, &nu);
                rhs = rhs.add(&schur_tableaux(&lam, nv).scale(c));
            }
            assert_eq!(schur_tableaux(&mu, nv).mul(&schur_tableaux(&nu, nv)), rhs, "{mu:?} * {nu:?}");
        }
    }
}

#[test]
fn fundamental_characters_match_census() {
    for (n, r) in [(4, 2), (5, 2), (5, 3)] {
        let eps = Eps::zeros(n, r);
        for l in -2..=2 {
            assert_eq!(osc_character(&[l], r, n, 5).unwrap(), census_character(&eps, l, 5), "n={n} r={r} l={l}");
        }
    }
}

#[test]
fn zero_charge_is_a_cauchy_sum() {
    // t sum_p s_(p)(x) s_(p)(y)
    let ch = osc_character(&[0], 2, 4, 6).unwrap();
    let mut want = CharPoly::zero(2, 2, 6);
    for p in 0..=3 {
        want = want.add(&CharPoly::from_product(2, 2, 6, 1, &schur_tableaux(&[p], 2), &schur_tableaux(&[p], 2)));
    }
    assert_eq!(ch, want);
}

#[test]
fn two_fold_products_split_into_components() {
    let (n, r, deg) = (4, 2, 6);
    let eps = Eps::zeros(n, r);
    for (l, m) in [(0, 0), (1, 0), (1, 1), (2, -1), (-1, -2)] {
        let prod = census_character(&eps, l, deg).mul(&census_character(&eps, m, deg)).truncate(deg);
        let (hi, lo) = (l.max(m), l.min(m));
        let mut sum = CharPoly::zero(n - r, r, deg);
        for t in 0..=deg {
            let lam = [hi + t, lo - t];
            if in_osc_range(&lam, r, n) {
                sum = sum.add(&osc_character(&lam, r, n, deg).unwrap());
            }
        }
        assert_eq!(prod, sum, "({l},{m})");
    }
}

#[test]
fn stabilization_from_n_on() {
    for (mu, nu) in [(vec![], vec![]), (vec![1], vec![1]), (vec![2], vec![])] {
        let cs = normalized_characters(&mu, &nu, &[4, 5, 6], 2, 4, 6).unwrap();
        assert!(cs.windows(2).all(|w| w[0] == w[1]), "{mu:?} {nu:?}");
        assert_eq!(cs[0], cauchy_twisted(&mu, &nu, 0, 2, 4, 6));
    }
}

#[test]
fn comb_rule_example() {
    let w = eps_highest_weight(&[4, 2, 2, 0, 0, -1, -3], &Eps::zeros(8, 3)).unwrap();
    let w = qosc::lattice::to_standard_weight(&w);
    assert_eq!(w.level, -7);
    assert_eq!(w.d, vec![0, -1, -3, 4, 2, 2, 0, 0]);
}

proptest! {
    #[test]
    fn lr_formula_agrees_with_skew_formula(a in -2i64..3, b in -2i64..3, c in -2i64..3) {
        let mut lam = vec![a, b, c];
        lam.sort_unstable_by(|x, y| y.cmp(x));
        prop_assume!(in_osc_range(&lam, 2, 4));
        prop_assert_eq!(osc_character_lr(&lam, 2, 4, 5), osc_character_skew(&lam, 2, 4, 5, None));
    }

    #[test]
    fn skew_formula_does_not_depend_on_box_width(l in -3i64..4, extra in 0i64..3) {
        let base = osc_character_skew(&[l], 2, 4, 4, None);
        let d = 4i64.max(-l) + extra;
        prop_assert_eq!(osc_character_skew(&[l], 2, 4, 4, Some(d)), base);
    }
}
