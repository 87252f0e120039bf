//! Intervals, strong intervals, the Gallai partition and its modified form,
//! quotients and strong connectivity.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::shape::is_transitive;
use crate::tournament::Tournament;

/// Disjoint non-empty blocks covering `{0..n-1}`, sorted by least element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::Precondition("partition block is empty".into()));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::Precondition(format!("block {b} overlaps another block")));
            }
            seen = seen.union(b);
        }
        if seen != VertexSet::full(n) {
            return Err(Error::Precondition(format!(
                "blocks cover {seen}, expected all of 0..{n}"
            )));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(Partition { n, blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (0..n).map(VertexSet::singleton).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    /// Every block of `self` is a union of blocks of `finer`.
    pub fn is_coarsening_of(&self, finer: &Partition) -> bool {
        finer
            .blocks
            .iter()
            .all(|f| self.blocks.iter().any(|b| f.is_subset(*b)))
    }

    /// `0|1,2|3` style rendering.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.render()).collect();
        parts.join("|")
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|b| {
                b.split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad vertex {v:?}")))
                    })
                    .collect::<Result<VertexSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, blocks)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({})", self.render())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

#[inline]
fn uniform_towards(t: &Tournament, x: usize, set: u32) -> bool {
    let hit = t.out_mask(x) & set;
    hit == 0 || hit == set
}

/// Interval test without range checks. `within` restricts the outside
/// vertices considered (the ambient vertex set of a subtournament).
#[inline]
pub(crate) fn is_interval_within(t: &Tournament, within: VertexSet, set: VertexSet) -> bool {
    let m = set.mask();
    within
        .difference(set)
        .iter()
        .all(|x| uniform_towards(t, x, m))
}

pub fn is_interval(t: &Tournament, set: VertexSet) -> Result<bool> {
    t.check_set(set)?;
    Ok(is_interval_within(t, t.vertices(), set))
}

/// Smallest interval of `T[within]` containing `seed`.
pub(crate) fn closure_within(t: &Tournament, within: VertexSet, seed: VertexSet) -> VertexSet {
    let mut s = seed.mask();
    loop {
        let mut grown = s;
        for x in within.difference(VertexSet::from_mask(s)) {
            if !uniform_towards(t, x, s) {
                grown |= 1 << x;
            }
        }
        if grown == s {
            return VertexSet::from_mask(s);
        }
        s = grown;
    }
}

/// Smallest interval containing `set`.
pub fn interval_closure(t: &Tournament, set: VertexSet) -> Result<VertexSet> {
    t.check_set(set)?;
    Ok(closure_within(t, t.vertices(), set))
}

/// Does `T[within]` have a non-trivial interval?
pub(crate) fn decomposable_within(t: &Tournament, within: VertexSet) -> bool {
    if within.len() < 3 {
        return false;
    }
    let verts: Vec<usize> = within.iter().collect();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            if closure_within(t, within, VertexSet::from([a, b])) != within {
                return true;
            }
        }
    }
    false
}

/// True iff some interval other than the empty set, singletons and `V`
/// exists.
pub fn is_decomposable(t: &Tournament) -> bool {
    decomposable_within(t, t.vertices())
}

pub fn is_indecomposable(t: &Tournament) -> bool {
    !is_decomposable(t)
}

/// Is `T[set]` indecomposable? `set` must be in range.
pub fn is_indecomposable_on(t: &Tournament, set: VertexSet) -> bool {
    !decomposable_within(t, set)
}

/// All non-empty intervals, ordered by size then vertex list. Every interval
/// with two or more vertices is the closure of one of its pairs, so pair
/// closures plus singletons are exhaustive.
pub fn intervals(t: &Tournament) -> Vec<VertexSet> {
    let n = t.n();
    let mut all: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
    for a in 0..n {
        for b in a + 1..n {
            all.push(closure_within(t, t.vertices(), VertexSet::from([a, b])));
        }
    }
    sort_sets(&mut all);
    all.dedup();
    all
}

fn sort_sets(sets: &mut [VertexSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp_lex(*b)));
}

/// Intervals that overlap no other interval; includes singletons and `V`.
pub fn strong_intervals(t: &Tournament) -> Vec<VertexSet> {
    let all = intervals(t);
    all.iter()
        .copied()
        .filter(|i| !all.iter().any(|j| i.overlaps(*j)))
        .collect()
}

/// `P(T)`: the maximal strong intervals distinct from `V`.
pub fn gallai_partition(t: &Tournament) -> Result<Partition> {
    if t.n() < 2 {
        return Err(Error::Precondition("the Gallai partition needs n >= 2".into()));
    }
    let full = t.vertices();
    let strong: Vec<VertexSet> = strong_intervals(t)
        .into_iter()
        .filter(|&s| s != full)
        .collect();
    let maximal: Vec<VertexSet> = strong
        .iter()
        .copied()
        .filter(|s| !strong.iter().any(|o| o != s && s.is_subset(*o)))
        .collect();
    Partition::new(t.n(), maximal)
}

/// Strongly connected components, listed so that earlier components
/// dominate later ones.
pub fn scc_order(t: &Tournament) -> Vec<VertexSet> {
    let n = t.n();
    let mut reach = vec![VertexSet::EMPTY; n];
    for (v, r) in reach.iter_mut().enumerate() {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(t.out_set(u));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        *r = seen;
    }
    let mut comps: Vec<VertexSet> = Vec::new();
    let mut assigned = VertexSet::EMPTY;
    for v in 0..n {
        if assigned.contains(v) {
            continue;
        }
        let comp: VertexSet = reach[v].iter().filter(|&u| reach[u].contains(v)).collect();
        assigned = assigned.union(comp);
        comps.push(comp);
    }
    comps.sort_by_key(|c| std::cmp::Reverse(reach[c.first().expect("non-empty")].len()));
    comps
}

pub fn is_strongly_connected(t: &Tournament) -> bool {
    scc_order(t).len() == 1
}

/// `P̃(T)`: `P(T)` when `T` is strongly connected; otherwise the components
/// of size two or more plus maximal runs of consecutive singleton
/// components, merged. A single vertex gives the singleton partition.
pub fn tilde_partition(t: &Tournament) -> Result<Partition> {
    if t.n() == 1 {
        return Ok(Partition::singletons(1));
    }
    if is_strongly_connected(t) {
        return gallai_partition(t);
    }
    Partition::new(t.n(), merge_singleton_runs(&scc_order(t)))
}

fn merge_singleton_runs(ordered: &[VertexSet]) -> Vec<VertexSet> {
    let mut blocks = Vec::new();
    let mut run = VertexSet::EMPTY;
    for &c in ordered {
        if c.len() == 1 {
            run = run.union(c);
        } else {
            if !run.is_empty() {
                blocks.push(run);
                run = VertexSet::EMPTY;
            }
            blocks.push(c);
        }
    }
    if !run.is_empty() {
        blocks.push(run);
    }
    blocks
}

/// The quotient by an interval partition; block `i` becomes vertex `i`.
pub fn quotient(t: &Tournament, p: &Partition) -> Result<Tournament> {
    if p.n() != t.n() {
        return Err(Error::VertexCountMismatch(p.n(), t.n()));
    }
    for &b in p.blocks() {
        if !is_interval_within(t, t.vertices(), b) {
            return Err(Error::NotAnInterval { block: b.render() });
        }
    }
    let reps: Vec<usize> = p
        .blocks()
        .iter()
        .map(|b| b.first().expect("non-empty"))
        .collect();
    Tournament::from_fn(reps.len(), |i, j| t.beats(reps[i], reps[j]))
}

/// `(I⁺, I⁻)`: outside vertices dominated by `I`, and those dominating it.
pub fn outside_split(t: &Tournament, set: VertexSet) -> Result<(VertexSet, VertexSet)> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if !is_interval(t, set)? {
        return Err(Error::NotAnInterval { block: set.render() });
    }
    let rep = set.first().expect("non-empty");
    let outside = t.vertices().difference(set);
    Ok((
        outside.intersection(t.out_set(rep)),
        outside.intersection(t.in_set(rep)),
    ))
}

/// Classification of the vertices outside an indecomposable `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    /// `x` with `T[X ∪ {x}]` indecomposable.
    pub ext: VertexSet,
    /// `x` for which `X` is an interval of `T[X ∪ {x}]`.
    pub bracket: VertexSet,
    /// `u -> X(u)`: `x` for which `{u, x}` is an interval of `T[X ∪ {x}]`.
    pub slots: BTreeMap<usize, VertexSet>,
}

impl ExtReport {
    pub fn slot(&self, u: usize) -> VertexSet {
        self.slots.get(&u).copied().unwrap_or_default()
    }
}

/// Which of the classes `x` falls into; used to check that they partition
/// `V \ X`.
pub fn ext_memberships(t: &Tournament, x_set: VertexSet, x: usize) -> (bool, bool, Vec<usize>) {
    let y = x_set.with(x);
    let ext = !decomposable_within(t, y);
    let bracket = uniform_towards(t, x, x_set.mask());
    let slots = x_set
        .iter()
        .filter(|&u| is_interval_within(t, y, VertexSet::from([u, x])))
        .collect();
    (ext, bracket, slots)
}

pub fn ext_partition(t: &Tournament, x_set: VertexSet) -> Result<ExtReport> {
    t.check_set(x_set)?;
    if x_set.len() < 3 {
        return Err(Error::Precondition("X needs at least 3 vertices".into()));
    }
    if decomposable_within(t, x_set) {
        return Err(Error::NotIndecomposable(format!("T[{x_set}]")));
    }
    let mut report = ExtReport {
        ext: VertexSet::EMPTY,
        bracket: VertexSet::EMPTY,
        slots: x_set.iter().map(|u| (u, VertexSet::EMPTY)).collect(),
    };
    for x in t.vertices().difference(x_set) {
        let (ext, bracket, slots) = ext_memberships(t, x_set, x);
        let count = usize::from(ext) + usize::from(bracket) + slots.len();
        if count != 1 {
            return Err(Error::Violation(format!(
                "vertex {x} falls in {count} classes for X = {x_set}"
            )));
        }
        if ext {
            report.ext = report.ext.with(x);
        } else if bracket {
            report.bracket = report.bracket.with(x);
        } else {
            let u = slots[0];
            let s = report.slots.entry(u).or_default();
            *s = s.with(x);
        }
    }
    Ok(report)
}

fn strongly_connected_within(t: &Tournament, set: VertexSet) -> bool {
    let Some(start) = set.first() else {
        return false;
    };
    let reach = |forward: bool| {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                let nb = if forward { t.out_set(u) } else { t.in_set(u) };
                next = next.union(nb.intersection(set));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen
    };
    reach(true) == set && reach(false) == set
}

/// Is `T[set]` strongly connected?
pub fn is_strongly_connected_on(t: &Tournament, set: VertexSet) -> Result<bool> {
    t.check_set(set)?;
    Ok(strongly_connected_within(t, set))
}

/// A `k`-set containing `x` that induces a strongly connected
/// subtournament. Grows greedily from the least 3-cycle through `x`, adding
/// the least vertex that keeps the set strongly connected; when no single
/// vertex does, falls back to scanning the `k`-sets through `x`.
pub fn moon_extend(t: &Tournament, x: usize, k: usize) -> Result<VertexSet> {
    let n = t.n();
    t.check_vertex(x)?;
    if n < 3 || !(3..=n).contains(&k) {
        return Err(Error::Precondition(format!("need 3 <= k <= n, got k={k}, n={n}")));
    }
    if !is_strongly_connected(t) {
        return Err(Error::Precondition("tournament is not strongly connected".into()));
    }
    let current = t.out_set(x).iter().find_map(|y| {
        let z = t.out_set(y).intersection(t.in_set(x)).first()?;
        Some(VertexSet::from([x, y, z]))
    });
    let mut s = current.ok_or_else(|| {
        Error::Violation(format!("vertex {x} of a strong tournament lies on no 3-cycle"))
    })?;
    while s.len() < k {
        let next = t.vertices().difference(s).iter().find(|&y| {
            let hit = t.out_mask(y) & s.mask();
            hit != 0 && hit != s.mask()
        });
        match next {
            Some(y) => s = s.with(y),
            None => return exhaustive_strong_set(t, x, k),
        }
    }
    Ok(s)
}

fn exhaustive_strong_set(t: &Tournament, x: usize, k: usize) -> Result<VertexSet> {
    let others = t.vertices().without(x);
    let mut found: Option<VertexSet> = None;
    for s in others.subsets_of_size(k - 1) {
        let s = s.with(x);
        if strongly_connected_within(t, s) && found.is_none_or(|f| s.cmp_lex(f).is_lt()) {
            found = Some(s);
        }
    }
    found.ok_or_else(|| Error::Violation(format!("no strong {k}-set through {x}")))
}

/// Distinct `x, y` outside `X` with `T[X ∪ {x, y}]` indecomposable.
pub fn indec_extend_pair(t: &Tournament, x_set: VertexSet) -> Result<(usize, usize)> {
    t.check_set(x_set)?;
    if x_set.len() < 3 || t.n() - x_set.len() < 2 {
        return Err(Error::Precondition(
            "need |X| >= 3 and at least two vertices outside X".into(),
        ));
    }
    if is_decomposable(t) {
        return Err(Error::NotIndecomposable("T".into()));
    }
    if decomposable_within(t, x_set) {
        return Err(Error::NotIndecomposable(format!("T[{x_set}]")));
    }
    let outside: Vec<usize> = t.vertices().difference(x_set).iter().collect();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i + 1..] {
            if !decomposable_within(t, x_set.with(a).with(b)) {
                return Ok((a, b));
            }
        }
    }
    Err(Error::Violation(format!(
        "no pair outside {x_set} extends it to an indecomposable subtournament"
    )))
}

/// Is the quotient transitive (non-strongly-connected branch of the Gallai
/// dichotomy)?
pub fn quotient_is_transitive(t: &Tournament) -> Result<bool> {
    let p = gallai_partition(t)?;
    Ok(is_transitive(&quotient(t, &p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{almost_transitive, diamond_minus, diamond_plus, four_cycle, three_cycle};

    fn t(n: usize, bits: &str) -> Tournament {
        Tournament::from_bit_str(n, bits).unwrap()
    }

    fn set<const N: usize>(v: [usize; N]) -> VertexSet {
        VertexSet::from(v)
    }

    #[test]
    fn interval_examples() {
        let d = diamond_plus();
        assert!(is_interval(&d, set([0, 1, 2])).unwrap());
        assert!(is_interval(&d, VertexSet::EMPTY).unwrap());
        assert!(!is_interval(&three_cycle(), set([0, 1])).unwrap());
        assert!(is_interval(&d, set([9])).is_err());
    }

    #[test]
    fn decomposability_examples() {
        assert!(!is_decomposable(&three_cycle()));
        assert!(is_decomposable(&four_cycle()));
        for c in 0..64u128 {
            assert!(is_decomposable(&Tournament::from_code_bits(4, c).unwrap()));
        }
        assert!(!is_decomposable(&Tournament::point()));
        assert!(!is_decomposable(&Tournament::transitive(2).unwrap()));
    }

    #[test]
    fn strong_interval_examples() {
        let full3 = VertexSet::full(3);
        assert_eq!(
            strong_intervals(&three_cycle()),
            vec![set([0]), set([1]), set([2]), full3]
        );
        assert_eq!(
            strong_intervals(&diamond_plus()),
            vec![set([0]), set([1]), set([2]), set([3]), set([0, 1, 2]), VertexSet::full(4)]
        );
        // every interval of a linear order is a run; the strong ones here
        // are singletons, the two 2-runs and V
        let o3 = Tournament::transitive(3).unwrap();
        assert_eq!(
            intervals(&o3),
            vec![set([0]), set([1]), set([2]), set([0, 1]), set([1, 2]), full3]
        );
        assert_eq!(strong_intervals(&o3), vec![set([0]), set([1]), set([2]), full3]);
    }

    #[test]
    fn gallai_examples() {
        let at = t(4, "110111");
        assert_eq!(gallai_partition(&at).unwrap().render(), "0|1,2|3");
        let o5 = Tournament::transitive(5).unwrap();
        assert_eq!(gallai_partition(&o5).unwrap(), Partition::singletons(5));
        let d = diamond_plus();
        let scc = scc_order(&d);
        let mut expected = scc.clone();
        expected.sort_by_key(|b| b.first());
        assert_eq!(gallai_partition(&d).unwrap().blocks(), &expected[..]);
        assert!(gallai_partition(&Tournament::point()).is_err());
    }

    #[test]
    fn tilde_examples() {
        let o5 = Tournament::transitive(5).unwrap();
        assert_eq!(tilde_partition(&o5).unwrap().render(), "0,1,2,3,4");
        let at = t(4, "110111");
        assert_eq!(tilde_partition(&at).unwrap(), gallai_partition(&at).unwrap());
        let o3 = Tournament::transitive(3).unwrap();
        let p = Tournament::point();
        let s = o3.lex_sum(&[p, three_cycle(), p]).unwrap();
        assert_eq!(tilde_partition(&s).unwrap().render(), "0|1,2,3|4");
        assert_eq!(tilde_partition(&p).unwrap().render(), "0");
    }

    #[test]
    fn quotient_examples() {
        let d = diamond_plus();
        let p = Partition::parse(4, "0,1,2|3").unwrap();
        assert_eq!(quotient(&d, &p).unwrap(), t(2, "1"));
        assert_eq!(quotient(&d, &Partition::singletons(4)).unwrap(), d);
        let at = t(4, "110111");
        let q = quotient(&at, &gallai_partition(&at).unwrap()).unwrap();
        assert!(crate::canon::are_isomorphic(&q, &three_cycle()).unwrap());
        let bad = Partition::parse(4, "0,1|2,3").unwrap();
        assert_eq!(
            quotient(&d, &bad),
            Err(Error::NotAnInterval { block: "0,1".into() })
        );
    }

    #[test]
    fn scc_examples() {
        let o3 = Tournament::transitive(3).unwrap();
        assert_eq!(scc_order(&o3), vec![set([0]), set([1]), set([2])]);
        assert_eq!(scc_order(&three_cycle()), vec![VertexSet::full(3)]);
        let o2 = Tournament::transitive(2).unwrap();
        let s = o2.lex_sum(&[three_cycle(), Tournament::point()]).unwrap();
        assert_eq!(scc_order(&s), vec![set([0, 1, 2]), set([3])]);
        // the sink component may come first in vertex order
        let s = o2.lex_sum(&[Tournament::point(), three_cycle()]).unwrap().dual();
        assert_eq!(scc_order(&s), vec![set([1, 2, 3]), set([0])]);
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_strongly_connected(&four_cycle()));
        assert!(is_decomposable(&four_cycle()));
        for n in 2..8 {
            assert!(!is_strongly_connected(&Tournament::transitive(n).unwrap()));
        }
        assert!(is_strongly_connected(&Tournament::point()));
    }

    #[test]
    fn outside_split_examples() {
        assert_eq!(
            outside_split(&diamond_plus(), set([0, 1, 2])).unwrap(),
            (set([3]), VertexSet::EMPTY)
        );
        let d = diamond_plus();
        assert_eq!(
            outside_split(&d, d.vertices()).unwrap(),
            (VertexSet::EMPTY, VertexSet::EMPTY)
        );
        assert_eq!(
            outside_split(&diamond_minus(), set([0, 1, 2])).unwrap(),
            (VertexSet::EMPTY, set([3]))
        );
        assert!(matches!(
            outside_split(&three_cycle(), set([0, 1])),
            Err(Error::NotAnInterval { .. })
        ));
    }

    #[test]
    fn ext_partition_examples() {
        let r = ext_partition(&diamond_plus(), set([0, 1, 2])).unwrap();
        assert_eq!(r.ext, VertexSet::EMPTY);
        assert_eq!(r.bracket, set([3]));
        assert!(r.slots.values().all(|s| s.is_empty()));

        let at = t(4, "110111");
        let r = ext_partition(&at, set([0, 1, 3])).unwrap();
        assert_eq!(r.slot(1), set([2]));

        assert!(matches!(
            ext_partition(&Tournament::transitive(4).unwrap(), set([0, 1, 2])),
            Err(Error::NotIndecomposable(_))
        ));
        assert!(ext_partition(&diamond_plus(), set([0, 1])).is_err());
    }

    #[test]
    fn moon_examples() {
        assert_eq!(moon_extend(&four_cycle(), 0, 3).unwrap(), set([0, 1, 2]));
        assert_eq!(moon_extend(&four_cycle(), 2, 4).unwrap(), VertexSet::full(4));
        assert_eq!(moon_extend(&three_cycle(), 2, 3).unwrap(), VertexSet::full(3));
        assert!(moon_extend(&Tournament::transitive(4).unwrap(), 0, 3).is_err());
        assert!(moon_extend(&four_cycle(), 0, 5).is_err());
    }

    #[test]
    fn moon_fallback_hits_exact_size() {
        // x on a 3-cycle that is an interval of a 3-cycle dilation: the
        // greedy step from {0,1,2} cannot add a single vertex.
        let at7 = three_cycle()
            .lex_sum(&[three_cycle(), Tournament::point(), Tournament::point()])
            .unwrap();
        let s = moon_extend(&at7, 0, 4).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(0));
        assert!(is_strongly_connected_on(&at7, s).unwrap());
    }

    #[test]
    fn indec_extend_examples() {
        // Paley tournament on 7 vertices: i -> i+1, i+2, i+4 (mod 7)
        let paley = Tournament::from_fn(7, |i, j| matches!((j - i) % 7, 1 | 2 | 4)).unwrap();
        assert!(!is_decomposable(&paley));
        let x = set([0, 1, 3]);
        let (a, b) = indec_extend_pair(&paley, x).unwrap();
        assert!(!decomposable_within(&paley, x.with(a).with(b)));
        assert!(indec_extend_pair(&paley, set([0, 1])).is_err());
        assert!(matches!(
            indec_extend_pair(&Tournament::transitive(6).unwrap(), set([0, 1, 2])),
            Err(Error::NotIndecomposable(_))
        ));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![set([0, 1]), set([1, 2])]).is_err());
        assert!(Partition::new(3, vec![set([0, 1])]).is_err());
        assert!(Partition::new(3, vec![set([0, 1]), VertexSet::EMPTY, set([2])]).is_err());
        assert_eq!(Partition::parse(4, "3|0,1|2").unwrap().render(), "0,1|2|3");
    }

    #[test]
    fn almost_transitive_partition() {
        for n in 3..=9 {
            let at = almost_transitive(n).unwrap();
            let p = gallai_partition(&at).unwrap();
            assert_eq!(p.len(), 3, "n={n}");
            assert!(is_strongly_connected(&at));
        }
    }
}
