use proptest::prelude::*;
use qosc::engine::{states_up_to, weight_of, TensorState};
use qosc::lattice::Eps;
use qosc::trunc::*;

fn embedding() -> impl Strategy<Value = EpsEmbedding> {
    (5usize..=6)
        .prop_flat_map(|n| (prop::collection::vec(0u8..2, n), 2..n - 1, prop::collection::vec(1..=n, 1..3)))
        .prop_filter_map("child must keep a valid split", |(bits, r, removed)| {
            EpsEmbedding::new(&Eps::new(bits, r).ok()?, &removed).ok()
        })
}

#[test]
fn hatted_generators_on_small_truncations() {
    for (bits, r, removed) in [("00000", 2, vec![5]), ("00000", 3, vec![1]), ("01000", 3, vec![2]), ("10010", 2, vec![3])] {
        let emb = EpsEmbedding::new(&Eps::parse(bits, r).unwrap(), &removed).unwrap();
        let states: Vec<TensorState> =
            states_up_to(&emb.child, 3).into_iter().map(|s| TensorState::new(vec![s])).collect();
        let rep = verify_hom(&emb, &states, true);
        assert!(rep.relations_checked > 0);
        assert!(rep.passed(), "{bits} {removed:?}: {:?} {:?}", rep.relation_failures.first(), rep.action_mismatches.first());
    }
}

#[test]
fn removing_a_split_slot_fails() {
    let eps = Eps::zeros(5, 2);
    assert!(EpsEmbedding::new(&eps, &[1, 2]).is_err());
    assert!(EpsEmbedding::new(&eps, &[3, 4]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncation_inverts_lifting(emb in embedding(), pick in 0usize..10_000) {
        let states = states_up_to(&emb.child, 3);
        let s = &states[pick % states.len()];
        let lifted = emb.lift_state(s);
        prop_assert!(lifted.is_valid(&emb.parent));
        prop_assert_eq!(emb.truncate_state(&lifted), Some(s.clone()));
        for &i in &emb.removed {
            prop_assert_eq!(lifted.get(i), 0);
        }
        let w = weight_of(&emb.child, s);
        prop_assert_eq!(emb.truncate_weight(&emb.lift_weight(&w)), Some(w));
    }

    #[test]
    fn occupied_removed_slots_leave(emb in embedding(), pick in 0usize..10_000) {
        let states = states_up_to(&emb.parent, 2);
        let s = &states[pick % states.len()];
        let inside = emb.removed.iter().all(|&i| s.get(i) == 0);
        prop_assert_eq!(emb.truncate_state(s).is_some(), inside);
        prop_assert_eq!(emb.child.n() + emb.removed.len(), emb.parent.n());
    }
}
