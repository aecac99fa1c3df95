use proptest::prelude::*;
use qosc::engine::*;
use qosc::lattice::{Eps, Weight};
use qosc::scalars::{qint, Scalar};

fn eps_strategy() -> impl Strategy<Value = Eps> {
    (4usize..=5)
        .prop_flat_map(|n| (prop::collection::vec(0u8..2, n), 2..n - 1))
        .prop_map(|(bits, r)| Eps::new(bits, r).unwrap())
}

fn all_gens(n: usize) -> Vec<Gen> {
    let mut g: Vec<Gen> = (0..n).map(Gen::E).collect();
    g.extend((0..n).map(Gen::F));
    g.extend((1..=n).map(|a| Gen::K(Weight::delta(n, a))));
    g
}

#[test]
fn cartan_commutator_on_first_state() {
    // (e_1 f_1 - f_1 e_1)|1,0,0,0> = [<wt, alpha_1>]|1,0,0,0>
    let eps = Eps::zeros(4, 2);
    let s = State(vec![1, 0, 0, 0]);
    let v = SparseVec::basis(TensorState::new(vec![s.clone()]));
    let ef = apply_word(&eps, &[Gen::E(1), Gen::F(1)], &v);
    let fe = apply_word(&eps, &[Gen::F(1), Gen::E(1)], &v);
    let lhs = ef.minus(&fe);
    // wt = Lambda - delta_1, so <wt, alpha_1^vee> = -1
    assert_eq!(lhs, v.scaled(&qint(-1)));
}

#[test]
fn odd_nodes_square_to_zero() {
    let eps = Eps::parse("0100", 2).unwrap();
    for s in states_up_to(&eps, 4) {
        let v = SparseVec::basis(TensorState::new(vec![s]));
        for i in [1, 2] {
            assert!(apply_word(&eps, &[Gen::E(i), Gen::E(i)], &v).is_zero());
            assert!(apply_word(&eps, &[Gen::F(i), Gen::F(i)], &v).is_zero());
        }
    }
}

#[test]
fn form_of_doubly_occupied_first_slot() {
    let s = State(vec![2, 0, 0, 0, 0]);
    assert_eq!(form_diag(&s), &Scalar::q_pow(-1) * &qint(2));
}

#[test]
fn classical_limit_five_slots() {
    let rep = classical_limit_check(&Eps::zeros(5, 3), 3);
    assert!(rep.checked > 0);
    assert!(rep.failures.is_empty(), "{:?}", rep.failures.first());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_are_monomial(eps in eps_strategy(), seed in 0usize..1000) {
        let states = states_up_to(&eps, 4);
        let s = &states[seed % states.len()];
        for g in all_gens(eps.n()) {
            let v = act(&eps, &g, s, &Scalar::one());
            prop_assert!(v.len() <= 1);
            if let Some((t, _)) = v.iter().next() {
                prop_assert!(t.is_valid(&eps));
            };
        }
    }

    #[test]
    fn relations_hold_on_random_states(eps in eps_strategy(), seed in 0usize..1000) {
        let states = states_up_to(&eps, 5);
        let t = TensorState::new(vec![states[seed % states.len()].clone()]);
        for rel in relations(&eps, true) {
            prop_assert!(check_relation(&eps, &rel, &t), "{:?} on {:?}", rel.id, t);
        }
    }

    #[test]
    fn relations_hold_on_random_pairs(eps in eps_strategy(), a in 0usize..1000, b in 0usize..1000) {
        let states = states_up_to(&eps, 2);
        let t = TensorState::new(vec![states[a % states.len()].clone(), states[b % states.len()].clone()]);
        for rel in relations(&eps, true) {
            prop_assert!(check_relation(&eps, &rel, &t), "{:?} on {:?}", rel.id, t);
        }
    }

    #[test]
    fn polarization_on_random_pairs(eps in eps_strategy(), a in 0usize..1000, b in 0usize..1000, i in 1usize..5) {
        let states = states_up_to(&eps, 4);
        let (v, w) = (&states[a % states.len()], &states[b % states.len()]);
        let i = 1 + (i - 1) % (eps.n() - 1);
        // make the pair weight-compatible for e_i half of the time
        let w2 = act(&eps, &Gen::E(i), v, &Scalar::one()).keys().next().cloned().unwrap_or_else(|| w.clone());
        for g in [Gen::E(i), Gen::F(i)] {
            prop_assert!(polarization_check(&eps, &g, v, &w2));
            prop_assert!(polarization_check(&eps, &g, w, v));
        }
    }

    #[test]
    fn k_eigenvalues_multiply(eps in eps_strategy(), s in (0usize..1000), a in 1usize..5, b in 1usize..5) {
        let states = states_up_to(&eps, 4);
        let s = &states[s % states.len()];
        let n = eps.n();
        let (da, db) = (Weight::delta(n, 1 + (a - 1) % n), Weight::delta(n, 1 + (b - 1) % n));
        let sum = &da + &db;
        prop_assert_eq!(k_eigen(&eps, s, &sum), &k_eigen(&eps, s, &da) * &k_eigen(&eps, s, &db));
    }
}

#[test]
fn states_fit_their_parity() {
    for bits in ["1111", "0110", "10101"] {
        let eps = Eps::parse(bits, 2).unwrap();
        for s in states_up_to(&eps, 5) {
            assert!(s.is_valid(&eps));
            assert!((1..=eps.n()).all(|i| eps.bit(i) == 0 || s.get(i) <= 1));
        }
    }
}
