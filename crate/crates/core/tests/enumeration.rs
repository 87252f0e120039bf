//! Enumeration against an orbit-marking oracle over all labelled
//! tournaments.

use tk_core::canon::CanonicalCode;
use tk_core::enumerate::{enumerate_chain, Catalog, ParentRule};
use tk_core::set::VertexSet;
use tk_core::tournament::{pair_count, Tournament};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            prefix.push(v);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Orbit minima: walk labelled codes in increasing order; each unmarked
/// code is the least member of a new orbit, whose images are then marked.
fn oracle_codes(n: usize) -> Vec<u128> {
    let perms = permutations(n);
    let total = 1usize << pair_count(n);
    let mut seen = vec![false; total];
    let mut minima = Vec::new();
    for code in 0..total {
        if seen[code] {
            continue;
        }
        minima.push(code as u128);
        let t = Tournament::from_code_bits(n, code as u128).unwrap();
        for p in &perms {
            seen[t.relabel(p).unwrap().code_bits() as usize] = true;
        }
    }
    minima
}

#[test]
fn matches_orbit_oracle() {
    let chain = enumerate_chain(7, ParentRule::LastVertex, 10).unwrap();
    for cat in &chain {
        let got: Vec<u128> = cat.codes().iter().map(CanonicalCode::bits).collect();
        assert_eq!(got, oracle_codes(cat.n()), "n={}", cat.n());
    }
}

#[test]
fn parent_rules_agree_to_eight() {
    let last = enumerate_chain(8, ParentRule::LastVertex, 10).unwrap();
    let first = enumerate_chain(8, ParentRule::FirstVertex, 10).unwrap();
    let counts: Vec<usize> = last.iter().map(Catalog::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 12, 56, 456, 6880]);
    assert_eq!(last, first);
    for c in &last {
        c.validate().unwrap();
    }
}

#[test]
fn deleting_last_vertex_stays_in_catalog() {
    let chain = enumerate_chain(7, ParentRule::LastVertex, 10).unwrap();
    for w in chain.windows(2) {
        for t in w[1].tournaments() {
            let n = t.n();
            let sub = t.restrict(VertexSet::full(n - 1)).unwrap();
            let code = tk_core::canonical_form(&sub).unwrap();
            assert!(w[0].contains(&code));
        }
    }
}

#[test]
fn random_draws_cover_all_five_vertex_classes() {
    let cat = enumerate_chain(5, ParentRule::LastVertex, 10).unwrap().pop().unwrap();
    let mut hit = std::collections::BTreeSet::new();
    for seed in 0..10_000 {
        let t = tk_core::families::random_tournament(5, seed).unwrap();
        hit.insert(tk_core::canonical_form(&t).unwrap());
    }
    assert_eq!(hit.len(), cat.len());
    assert!(hit.iter().all(|c| cat.contains(c)));
}
