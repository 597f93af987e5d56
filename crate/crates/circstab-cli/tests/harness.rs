use circstab::graph::ConnectionSet;
use circstab_cli::suites::{chain_instances, multiplier_isomorphism, unstable_reduced};
use circstab_cli::survey::{candidate_sets, even_squarefree_upto, is_surveyed, SetSelection};
use proptest::prelude::*;

#[test]
fn even_squarefree_moduli() {
    assert_eq!(even_squarefree_upto(30), [2, 6, 10, 14, 22, 26, 30]);
}

#[test]
fn all_sets_cover_every_nonempty_symmetric_set() {
    let sets = candidate_sets(10, SetSelection::All).unwrap();
    assert_eq!(sets.len(), 31);
    assert_eq!(sets.iter().filter(|s| is_surveyed(s)).count(), 21);
    assert!(candidate_sets(28, SetSelection::All).is_err());
}

#[test]
fn oversized_samples_fall_back_to_every_set() {
    assert_eq!(candidate_sets(6, SetSelection::Sample { k: 100, seed: 1 }).unwrap().len(), 7);
}

#[test]
fn chain_instance_counts() {
    // 15 sets of size ≤ 2, plus 10 + 30 + 15 disjoint unordered pairs of them.
    assert_eq!(chain_instances(5).unwrap().len(), 70);
    let nine = chain_instances(9).unwrap();
    assert_eq!(nine.iter().filter(|c| c.colors().len() == 1).count(), 45);
}

#[test]
fn unstable_reduced_at_ten() {
    let sets: Vec<String> = unstable_reduced(10).unwrap().iter().map(ToString::to_string).collect();
    assert_eq!(sets, ["10:1,2,8,9", "10:3,4,6,7"]);
    assert!(unstable_reduced(14).unwrap().is_empty());
}

#[test]
fn multiplier_isomorphism_rejects_wrong_multipliers() {
    let s = ConnectionSet::new(10, [1, 2, 8, 9]).unwrap();
    assert!(multiplier_isomorphism(&s, 3).unwrap().0);
    assert!(!multiplier_isomorphism(&s, 1).unwrap().0);
}

proptest! {
    #[test]
    fn samples_are_sorted_distinct_and_reproducible(n in 3usize..=40, k in 1usize..50, seed in any::<u64>()) {
        let a = candidate_sets(n, SetSelection::Sample { k, seed }).unwrap();
        let b = candidate_sets(n, SetSelection::Sample { k, seed }).unwrap();
        prop_assert_eq!(&a, &b);
        let masks: Vec<u64> = a.iter().map(ConnectionSet::class_mask).collect();
        prop_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(masks.iter().all(|&m| m != 0));
        let total = (1u64 << ConnectionSet::class_count(n)) - 1;
        prop_assert_eq!(a.len() as u64, (k as u64).min(total));
    }
}
