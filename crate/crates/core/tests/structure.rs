use proptest::prelude::*;
use qosc::engine::{tensor_weight, SparseVec};
use qosc::lattice::Eps;
use qosc::structure::*;

const PAIRS: [(i64, i64); 6] = [(0, 0), (1, 0), (1, 1), (2, 1), (2, -1), (-1, -2)];

#[test]
fn formula_vectors_are_singular() {
    for (bits, r) in [("0000", 2), ("0100", 2), ("00000", 3), ("01010", 2)] {
        let eps = Eps::parse(bits, r).unwrap();
        for (l, m) in PAIRS {
            for i in -n_of(l, m)..=3 {
                let Ok(u) = singular_formula(&eps, l, m, i) else { continue };
                assert!(is_singular(&eps, &u), "{bits} ({l},{m}) i={i}");
            }
        }
    }
}

#[test]
fn formula_spans_the_kernel() {
    let eps = Eps::zeros(5, 3);
    for (l, m) in [(1, 0), (2, -1)] {
        let nn = n_of(l, m);
        let module = TensorModule::new(&eps, &[l, m], 2 * nn + 6);
        for i in -nn..=2 {
            let u = singular_formula(&eps, l, m, i).unwrap();
            let w = tensor_weight(&eps, u.leading().unwrap().0);
            let ker = singular_kernel(&module, &w).unwrap();
            assert_eq!(ker.len(), 1, "({l},{m}) i={i}");
            assert!(ker[0].ratio_to(&u).is_some());
        }
    }
}

#[test]
fn partitions_of_components() {
    assert_eq!(component_partition(2, -1, 0), [2, -1]);
    assert_eq!(component_partition(1, 2, 3), [5, -2]);
}

#[test]
fn components_fill_weight_spaces() {
    for (l, m) in [(1, 0), (0, 0), (2, -1)] {
        let eps = Eps::zeros(4, 2);
        let depth = 3;
        let dec = Decomposition::new(&eps, l, m, depth + n_of(l, m), depth).unwrap();
        for w in dec.module.weights_up_to(depth) {
            let total: usize = (0..=dec.max_t())
                .filter(|&t| dec.has_component(t))
                .map(|t| dec.component_dim(t, &w).unwrap())
                .sum();
            assert_eq!(total, dec.module.states_at(&w).unwrap().len(), "({l},{m}) {w:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn equal_charge_projectors_resolve_identity(pair in 0usize..3, pick in 0usize..10_000) {
        let l = [0, 1, -1][pair];
        let eps = Eps::zeros(4, 2);
        let dec = Decomposition::new(&eps, l, l, 3 + n_of(l, l), 3).unwrap();
        let weights = dec.module.weights_up_to(3);
        let w = &weights[pick % weights.len()];
        let states = dec.module.states_at(w).unwrap();
        let v = SparseVec::basis(states[(pick / weights.len()) % states.len()].clone());
        let parts = dec.project_all(w, &v).unwrap();
        let sum = parts.iter().fold(SparseVec::new(), |acc, p| acc.plus(p));
        prop_assert_eq!(&sum, &v);
        for (t, p) in parts.iter().enumerate() {
            let again = dec.project_all(w, p).unwrap();
            for (s, x) in again.iter().enumerate() {
                if s == t {
                    prop_assert_eq!(x, p);
                } else {
                    prop_assert!(x.is_zero());
                }
            }
        }
    }
}

