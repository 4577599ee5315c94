use fibtree_core::represent::{construct_occurrence, occurrences_at_level};
use fibtree_core::tree::{build_levels_by_rules, position_of_label};
use fibtree_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn tree(range: i64) -> impl Strategy<Value = FibTree> {
    (-range..=range, -range..=range).prop_map(|(a, b)| FibTree::new(a, b))
}

fn psi_tree() -> impl Strategy<Value = FibTree> {
    (-60i64..=60, -3i64..=6).prop_filter_map("in Ψ", |(bb, da)| {
        let a = (-(bb as f64) * 1.618_033_988_749_895).floor() as i64 + da;
        let t = FibTree::new(a, bb);
        (classify(&t) == TreeClass::RepresentsZ).then_some(t)
    })
}

fn forward_word() -> impl Strategy<Value = MapWord> {
    prop::collection::vec(prop_oneof![Just(Atom::L), Just(Atom::R)], 0..=6).prop_map(MapWord)
}

proptest! {
    #[test]
    fn group_laws(x in tree(1_000_000), y in tree(1_000_000), z in tree(1_000_000)) {
        prop_assert_eq!(tree_sum(&x, &y), tree_sum(&y, &x));
        prop_assert_eq!(tree_sum(&tree_sum(&x, &y), &z), tree_sum(&x, &tree_sum(&y, &z)));
        prop_assert_eq!(tree_sum(&x, &FibTree::default()), x.clone());
        prop_assert_eq!(tree_sum(&x, &-&x), FibTree::default());
    }

    #[test]
    fn scalar_rule(k in -1000i64..=1000, x in tree(1000)) {
        let (e1, e2) = basis();
        let (a, bb) = decompose(&x);
        prop_assert_eq!(tree_sum(&scalar_mul(&a, &e1), &scalar_mul(&bb, &e2)), x.clone());
        prop_assert_eq!(scalar_mul(&b(k), &x), FibTree::new(&x.a * k, &x.b * k));
    }

    #[test]
    fn superposition(x in tree(50), y in tree(50)) {
        verify_superposition(&x, &y, 12, 12).unwrap();
    }

    #[test]
    fn subtree_of_word_is_found(t in tree(20), w in forward_word()) {
        let child = subtree_at(&t, &w).unwrap();
        let wit = is_subtree(&child, &t, 2 * w.len() as u32 + 2);
        prop_assert!(wit.is_some());
        let wit = wit.unwrap();
        prop_assert_eq!(subtree_at(&t, &wit.word).unwrap(), child);
    }

    #[test]
    fn branch_is_fibonacci(t in tree(100), level in 1u32..25, seed in any::<u64>()) {
        let u_nodes = fib(level as i64 + 1);
        let k = BigInt::from(seed) % &u_nodes + 1;
        let node = NodeRef::new(level, u(&k));
        let br = branch_sequence(&t, &node, 12).unwrap();
        for w in br.windows(3) {
            prop_assert_eq!(&w[0] + &w[1], w[2].clone());
        }
    }

    #[test]
    fn parent_children_duality(t in tree(100), level in 1u32..40, seed in any::<u64>()) {
        let len = fib(level as i64 + 2);
        let pos = BigInt::from(seed) % &len + 1;
        let node = NodeRef::new(level, pos);
        let me = node_label(&t, &node).unwrap();
        let parent = node.parent().unwrap();
        prop_assert_eq!(node_label(&t, &parent).unwrap().label, parent_label(&t, &node).unwrap());
        let kids = children_labels(&t, &parent).unwrap();
        prop_assert!(kids.iter().any(|c| c.node == node && c.label == me.label && c.letter == me.letter));
        prop_assert_eq!(position_of_label(&t, level, &me.label), Some(node.pos.clone()));
    }

    #[test]
    fn sequences_found_in_psi(t in psi_tree(), c in -200i64..=200, d in -200i64..=200) {
        let s = FibSeq::new(c, d);
        let occ = find_sequence(&t, &s, 60).unwrap();
        let br = branch_sequence(&t, &occ.node(), 8).unwrap();
        prop_assert_eq!(br, s.terms(occ.shift, 8));
        // nothing at a smaller level, nothing further left at the same level
        for n in 1..occ.level {
            prop_assert!(occurrences_at_level(&t, &s, n).is_empty());
        }
        prop_assert_eq!(&occurrences_at_level(&t, &s, occ.level)[0].pos, &occ.pos);
        if let Some(c) = construct_occurrence(&t, &s, 60).unwrap() {
            prop_assert!(c.level >= occ.level);
            prop_assert!(s.index_of_pair(&c.pair.0, &c.pair.1).is_some());
        }
    }

    #[test]
    fn interval_level_monotone(t in psi_tree(), lo in -500i64..=500, w1 in 0i64..200, w2 in 0i64..200) {
        let small = find_interval_level(&t, &b(lo), &b(lo + w1)).unwrap();
        let big = find_interval_level(&t, &b(lo - w2), &b(lo + w1 + w2)).unwrap();
        prop_assert!(big >= small);
        // contained from that level on
        for n in big..big + 6 {
            let iv = level_interval(&t, n);
            prop_assert!(iv.lo <= b(lo - w2) && b(lo + w1 + w2) <= iv.hi);
        }
    }
}

#[test]
fn node_label_cross_check_all_nodes() {
    for (a, bb) in [(0, 1), (1, 2), (-3, 4), (5, -2)] {
        let t = FibTree::new(a, bb);
        let levels = build_levels_by_rules(&t, 15, 15).unwrap();
        for (n, level) in levels.iter().enumerate() {
            for (i, node) in level.iter().enumerate() {
                let got = node_label(&t, &NodeRef::new(n as u32, i as i64 + 1)).unwrap();
                assert_eq!((got.label, got.letter), (node.label.clone(), node.letter));
            }
        }
    }
}

#[test]
fn classify_boundaries() {
    assert_eq!(classify(&FibTree::new(0, 0)), TreeClass::NonpositiveSide);
    assert_eq!(classify(&FibTree::new(0, 1)), TreeClass::RepresentsZ);
    assert_eq!(classify(&FibTree::new(1, 2)), TreeClass::PositiveSide);
}

#[test]
fn sum_does_not_respect_the_order() {
    let zero = FibTree::new(0, 0);
    assert!(is_subtree(&zero, &FibTree::new(0, 1), 10).is_some());
    assert!(is_subtree(&zero, &FibTree::new(1, 1), 10).is_some());
    assert!(is_subtree(&tree_sum(&zero, &zero), &FibTree::new(1, 2), 40).is_none());
}

#[test]
fn zero_sequence_once_per_cap() {
    for (a, bb) in [(0, 1), (1, 1), (-1, 2), (1, 0)] {
        let t = FibTree::new(a, bb);
        for cap in 1..=15 {
            let count = count_occurrences(&t, &FibSeq::zero(), cap, 15).unwrap();
            let first = find_sequence(&t, &FibSeq::zero(), 60).unwrap().level;
            assert_eq!(count, usize::from(cap >= first), "{t} cap {cap}");
        }
    }
}

#[test]
fn every_sequence_appears_again() {
    // represented by infinitely many branches: counts keep growing with the cap
    let t = FibTree::new(0, 1);
    for (c, d) in [(0, 1), (2, 1), (-1, 3)] {
        let s = FibSeq::new(c, d);
        let at10 = count_occurrences(&t, &s, 10, 20).unwrap();
        let at16 = count_occurrences(&t, &s, 16, 20).unwrap();
        assert!(at16 > at10, "({c},{d}): {at10} then {at16}");
    }
}
