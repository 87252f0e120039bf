//! Invariants checked on random tournaments against brute-force oracles.

use proptest::prelude::*;

use tk_core::canon::{are_isomorphic, canonical_form, canonical_labeling, sub_canonical};
use tk_core::decomposition::{
    gallai_partition, intervals, is_decomposable, is_interval, is_strongly_connected, quotient,
    scc_order, strong_intervals, tilde_partition,
};
use tk_core::diamonds::{diamond_cover, diamond_records, embeds_diamond, pair_stats};
use tk_core::hypomorphy::{hypomorphic, is_spec_self_dual, HypoSpec};
use tk_core::set::VertexSet;
use tk_core::shape::{diamond_minus, diamond_plus, is_transitive};
use tk_core::tournament::{pair_count, Tournament};

fn tournament(min: usize, max: usize) -> impl Strategy<Value = Tournament> {
    (min..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), pair_count(n))
            .prop_map(move |bits| Tournament::from_bits(n, &bits).unwrap())
    })
}

fn brute_intervals(t: &Tournament) -> Vec<VertexSet> {
    let mut all: Vec<VertexSet> = t
        .vertices()
        .subsets()
        .filter(|s| !s.is_empty() && is_interval(t, *s).unwrap())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp_lex(*b)));
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn intervals_match_subset_scan(t in tournament(1, 9)) {
        prop_assert_eq!(intervals(&t), brute_intervals(&t));
    }

    #[test]
    fn decomposable_iff_nontrivial_interval(t in tournament(1, 9)) {
        let n = t.n();
        let nontrivial = brute_intervals(&t).iter().any(|s| s.len() > 1 && s.len() < n);
        prop_assert_eq!(is_decomposable(&t), nontrivial);
    }

    #[test]
    fn gallai_blocks_are_maximal_strong_intervals(t in tournament(2, 10)) {
        let p = gallai_partition(&t).unwrap();
        let strong = strong_intervals(&t);
        for &b in p.blocks() {
            prop_assert!(strong.contains(&b));
        }
        let q = quotient(&t, &p).unwrap();
        if is_strongly_connected(&t) {
            prop_assert!(q.n() >= 3);
            prop_assert!(!is_decomposable(&q));
        } else {
            prop_assert!(is_transitive(&q));
            let mut scc = scc_order(&t);
            scc.sort_by_key(|b| b.first());
            prop_assert_eq!(p.blocks(), &scc[..]);
        }
    }

    #[test]
    fn tilde_coarsens_gallai(t in tournament(2, 10)) {
        let p = gallai_partition(&t).unwrap();
        let pt = tilde_partition(&t).unwrap();
        prop_assert!(pt.is_coarsening_of(&p));
        for &b in pt.blocks() {
            prop_assert!(is_interval(&t, b).unwrap());
        }
    }

    #[test]
    fn scc_order_is_dominating(t in tournament(1, 10)) {
        let comps = scc_order(&t);
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                for x in a.iter() {
                    for y in b.iter() {
                        prop_assert!(t.beats(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_relabel_invariant(t in tournament(1, 10), seed in any::<u64>()) {
        let n = t.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let u = t.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&t).unwrap(), canonical_form(&u).unwrap());
        let (code, lab) = canonical_labeling(&t).unwrap();
        let mut inv = vec![0; n];
        for (pos, &v) in lab.iter().enumerate() {
            inv[v] = pos;
        }
        prop_assert_eq!(t.relabel(&inv).unwrap().code_bits(), code.bits());
    }

    #[test]
    fn spec_self_duality_is_hypomorphy_with_dual(t in tournament(3, 8), k in 1usize..4) {
        let spec = HypoSpec::single(-(k as i32)).unwrap();
        prop_assert_eq!(
            is_spec_self_dual(&t, &spec).unwrap(),
            hypomorphic(&t, &t.dual(), &spec).unwrap()
        );
    }

    #[test]
    fn diamonds_match_class_comparison(t in tournament(4, 9)) {
        let plus = canonical_form(&diamond_plus()).unwrap();
        let minus = canonical_form(&diamond_minus()).unwrap();
        let expected: Vec<(VertexSet, i8)> = t
            .vertices()
            .subsets_of_size(4)
            .filter_map(|s| {
                let c = sub_canonical(&t, s);
                if c == plus { Some((s, 1)) } else if c == minus { Some((s, -1)) } else { None }
            })
            .collect();
        let mut got: Vec<(VertexSet, i8)> =
            diamond_records(&t).iter().map(|r| (r.verts, r.sign)).collect();
        let mut expected = expected;
        got.sort();
        expected.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn diamond_embedding_covers_every_vertex(t in tournament(4, 10)) {
        if embeds_diamond(&t) {
            prop_assert_eq!(diamond_cover(&t), t.vertices());
        }
    }

    #[test]
    fn pair_stats_identities(t in tournament(4, 9), x in 0usize..9, y in 0usize..9) {
        let n = t.n();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != y);
        let s = pair_stats(&t, x, y).unwrap();
        prop_assert!(s.summation_holds());
        prop_assert!(s.decomposition_holds());
        if is_interval(&t, VertexSet::from([x, y])).unwrap() {
            prop_assert_eq!(s.through_pair_plus, 0);
            prop_assert_eq!(s.through_pair_minus, 0);
        }
    }

    #[test]
    fn dual_preserves_isomorphism(t in tournament(1, 9)) {
        prop_assert!(are_isomorphic(&t.dual().dual(), &t).unwrap());
        prop_assert_eq!(is_decomposable(&t), is_decomposable(&t.dual()));
    }
}
