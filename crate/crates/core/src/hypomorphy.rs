//! Hypomorphy over families of subset sizes, embedding counts, the
//! self-duality hierarchy, `{3}`-hypomorph search and the subset counting
//! lemma checker.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::canon::{
    canonical_form_bounded, canonical_search, class_table, sub_canonical, sub_is_self_dual,
    MAX_CANON_VERTICES, TABLE_MAX,
};
use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::tournament::{pair_count, Tournament};

/// Default vertex bound for [`three_hypomorphs`].
pub const DEFAULT_THREE_HYPO_BOUND: usize = 7;

/// A family of subset sizes: `p > 0` stands for all `p`-subsets and `-k`
/// for all subsets missing exactly `k` vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct HypoSpec {
    entries: BTreeSet<i32>,
}

impl HypoSpec {
    pub fn new(entries: impl IntoIterator<Item = i32>) -> Result<Self> {
        let entries: BTreeSet<i32> = entries.into_iter().collect();
        if entries.is_empty() || entries.contains(&0) {
            return Err(Error::Precondition(
                "a hypomorphy spec needs non-zero entries".into(),
            ));
        }
        Ok(HypoSpec { entries })
    }

    pub fn single(entry: i32) -> Result<Self> {
        Self::new([entry])
    }

    /// `(≤k)`, i.e. `{1, .., k}`.
    pub fn up_to(k: usize) -> Result<Self> {
        Self::new(1..=k as i32)
    }

    pub fn entries(&self) -> impl Iterator<Item = i32> + '_ {
        self.entries.iter().copied()
    }

    /// Subset sizes for `n` vertices, deduplicated and ascending.
    pub fn sizes(&self, n: usize) -> Result<Vec<usize>> {
        let mut sizes = BTreeSet::new();
        for &e in &self.entries {
            let size = entry_size(e, n)?;
            sizes.insert(size);
        }
        Ok(sizes.into_iter().collect())
    }
}

fn entry_size(entry: i32, n: usize) -> Result<usize> {
    let k = entry.unsigned_abs() as usize;
    if entry == 0 || k > n {
        return Err(Error::InvalidEntry { entry, n });
    }
    Ok(if entry > 0 { k } else { n - k })
}

impl fmt::Display for HypoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(i32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Accepts `3,-2`, `{-3}` or `<=4`.
impl FromStr for HypoSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("<=") {
            let k = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad bound in {s:?}")))?;
            return Self::up_to(k);
        }
        let inner = s.trim_start_matches('{').trim_end_matches('}');
        let entries = inner
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad entry {e:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// `T[X] ≅ U[X]`.
#[inline]
pub(crate) fn sub_isomorphic(t: &Tournament, u: &Tournament, set: VertexSet) -> bool {
    let k = set.len();
    if k <= 2 {
        return true;
    }
    let (a, b) = (t.restricted_code(set), u.restricted_code(set));
    if a == b {
        return true;
    }
    if k <= TABLE_MAX {
        let table = class_table(k);
        table.class_of(a) == table.class_of(b)
    } else {
        canonical_search(&t.restrict_unchecked(set)).0
            == canonical_search(&u.restrict_unchecked(set)).0
    }
}

fn check_same_size(t: &Tournament, u: &Tournament) -> Result<()> {
    if t.n() != u.n() {
        return Err(Error::VertexCountMismatch(t.n(), u.n()));
    }
    if t.n() > MAX_CANON_VERTICES {
        return Err(Error::BoundExceeded {
            what: "hypomorphy",
            n: t.n(),
            bound: MAX_CANON_VERTICES,
        });
    }
    Ok(())
}

/// Every subset of every size in `spec` induces isomorphic subtournaments.
pub fn hypomorphic(t: &Tournament, u: &Tournament, spec: &HypoSpec) -> Result<bool> {
    check_same_size(t, u)?;
    let sizes = spec.sizes(t.n())?;
    Ok(sizes.into_iter().all(|k| size_hypomorphic(t, u, k)))
}

pub(crate) fn size_hypomorphic(t: &Tournament, u: &Tournament, k: usize) -> bool {
    t.vertices()
        .subsets_of_size(k)
        .all(|x| sub_isomorphic(t, u, x))
}

/// Every `k`-subset induces a self dual subtournament, i.e. `T` and `T*`
/// agree on all `k`-subsets.
pub fn size_self_dual(t: &Tournament, k: usize) -> bool {
    k <= 2 || t.vertices().subsets_of_size(k).all(|x| sub_is_self_dual(t, x))
}

/// `T` and `T*` are `spec`-hypomorphic.
pub fn is_spec_self_dual(t: &Tournament, spec: &HypoSpec) -> Result<bool> {
    if t.n() > MAX_CANON_VERTICES {
        return Err(Error::BoundExceeded {
            what: "hypomorphy",
            n: t.n(),
            bound: MAX_CANON_VERTICES,
        });
    }
    Ok(spec
        .sizes(t.n())?
        .into_iter()
        .all(|k| size_self_dual(t, k)))
}

/// `{p}`-self duality for a single signed entry.
pub fn is_entry_self_dual(t: &Tournament, entry: i32) -> Result<bool> {
    is_spec_self_dual(t, &HypoSpec::single(entry)?)
}

/// `S(T, H; F)`: the vertex sets containing `F` inducing a copy of `H`.
pub fn embed_sets(t: &Tournament, h: &Tournament, f: VertexSet) -> Result<Vec<VertexSet>> {
    t.check_set(f)?;
    let k = h.n();
    if k > t.n() || f.len() > k {
        return Ok(Vec::new());
    }
    let target = canonical_form_bounded(h, MAX_CANON_VERTICES)?;
    Ok(t.vertices()
        .difference(f)
        .subsets_of_size(k - f.len())
        .map(|s| s.union(f))
        .filter(|&x| sub_canonical(t, x) == target)
        .collect())
}

/// `n(T, H; F)`.
pub fn embed_count(t: &Tournament, h: &Tournament, f: VertexSet) -> Result<usize> {
    Ok(embed_sets(t, h, f)?.len())
}

/// Which levels of the self-duality hierarchy a tournament reaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfDualProfile {
    pub n: usize,
    /// `k -> {−k}`-self dual, for `k = 1..=max_k`.
    pub minus: BTreeMap<usize, bool>,
    /// `k -> (≤k)`-self dual, for `k = 1..=max_k`.
    pub up_to: BTreeMap<usize, bool>,
    pub self_dual: bool,
    pub strongly_self_dual: bool,
}

impl SelfDualProfile {
    pub fn all_true(&self) -> bool {
        self.self_dual
            && self.strongly_self_dual
            && self.minus.values().all(|&b| b)
            && self.up_to.values().all(|&b| b)
    }
}

pub fn self_dual_profile(t: &Tournament, max_k: usize) -> Result<SelfDualProfile> {
    let n = t.n();
    if max_k > n {
        return Err(Error::Precondition(format!("max_k = {max_k} exceeds n = {n}")));
    }
    if n > MAX_CANON_VERTICES {
        return Err(Error::BoundExceeded {
            what: "hypomorphy",
            n,
            bound: MAX_CANON_VERTICES,
        });
    }
    // by_size[s]: every s-subset is self dual
    let by_size: Vec<bool> = (0..=n).map(|s| size_self_dual(t, s)).collect();
    let minus = (1..=max_k).map(|k| (k, by_size[n - k])).collect();
    let up_to = (1..=max_k)
        .map(|k| (k, by_size[1..=k].iter().all(|&b| b)))
        .collect();
    Ok(SelfDualProfile {
        n,
        minus,
        up_to,
        self_dual: by_size[n],
        strongly_self_dual: by_size.iter().all(|&b| b),
    })
}

/// Every labelled tournament on the same vertices that is `{3}`-hypomorphic
/// to `t`, sorted by packed arc bits.
pub fn three_hypomorphs(t: &Tournament) -> Result<Vec<Tournament>> {
    three_hypomorphs_bounded(t, DEFAULT_THREE_HYPO_BOUND)
}

/// As [`three_hypomorphs`] with an explicit vertex bound (at most 16).
///
/// Backtracks over arcs ordered by their larger endpoint. Once the arc
/// `{b, c}` with `b < c` is fixed, every triple `{a, b, c}` with `a < b` is
/// complete and must agree with `t` on being a 3-cycle, so partial
/// assignments are pruned as early as possible. The result equals a scan of
/// all `2^(n(n-1)/2)` labelled tournaments.
pub fn three_hypomorphs_bounded(t: &Tournament, bound: usize) -> Result<Vec<Tournament>> {
    let n = t.n();
    let bound = bound.min(MAX_CANON_VERTICES);
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "three_hypomorphs",
            n,
            bound,
        });
    }
    let mut out = vec![0u32; n];
    let mut found = Vec::new();
    extend_hypomorph(t, 1, 0, &mut out, &mut found);
    let mut result: Vec<Tournament> = found
        .into_iter()
        .map(|m: Vec<u32>| Tournament::from_out_masks(&m).expect("consistent"))
        .collect();
    result.sort_by_key(Tournament::to_bits);
    debug_assert!(result.len() <= 1 << pair_count(n));
    Ok(result)
}

fn extend_hypomorph(t: &Tournament, c: usize, b: usize, out: &mut [u32], found: &mut Vec<Vec<u32>>) {
    let n = t.n();
    if c >= n {
        found.push(out.to_vec());
        return;
    }
    let (nc, nb) = if b + 1 == c { (c + 1, 0) } else { (c, b + 1) };
    for forward in [true, false] {
        if forward {
            out[b] |= 1 << c;
        } else {
            out[c] |= 1 << b;
        }
        let ok = (0..b).all(|a| {
            let cyc_u = {
                let ab = out[a] >> b & 1 == 1;
                let bc = out[b] >> c & 1 == 1;
                let ac = out[a] >> c & 1 == 1;
                ab == bc && ac != ab
            };
            cyc_u == t.is_cyclic_triple(a, b, c)
        });
        if ok {
            extend_hypomorph(t, nc, nb, out, found);
        }
        if forward {
            out[b] &= !(1 << c);
        } else {
            out[c] &= !(1 << b);
        }
    }
}

/// Result of checking the subset counting lemma on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CombLemmaOutcome {
    /// Every `(p+r)`-set contains equally many members of both families.
    pub hypothesis: bool,
    /// Counts agree for every `P' ⊆ Q'` with `|Q' \ P'| >= p + r`, and the
    /// families coincide when the ground set has at least `2p + r` elements.
    pub conclusion: bool,
}

impl CombLemmaOutcome {
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Checks the counting lemma for two families `u`, `u2` of `p`-subsets of
/// `{0..ground_n-1}`. Both the hypothesis and the conclusion are evaluated
/// exhaustively; duplicate members are ignored.
pub fn combinatorial_lemma_check(
    ground_n: usize,
    u: &[VertexSet],
    u2: &[VertexSet],
    p: usize,
    r: usize,
) -> Result<CombLemmaOutcome> {
    if p == 0 || r == 0 {
        return Err(Error::Precondition("p and r must be positive".into()));
    }
    if ground_n < p + r {
        return Err(Error::Precondition(format!(
            "ground set of {ground_n} elements is smaller than p + r = {}",
            p + r
        )));
    }
    if ground_n > 20 {
        return Err(Error::BoundExceeded {
            what: "combinatorial lemma check",
            n: ground_n,
            bound: 20,
        });
    }
    let ground = VertexSet::full(ground_n);
    for &a in u.iter().chain(u2) {
        if a.len() != p || !a.is_subset(ground) {
            return Err(Error::Precondition(format!(
                "member {a} is not a {p}-subset of the ground set"
            )));
        }
    }
    // signed difference of the two indicator functions
    let mut diff: BTreeMap<VertexSet, i32> = BTreeMap::new();
    for &a in u.iter().collect::<BTreeSet<_>>() {
        *diff.entry(a).or_default() += 1;
    }
    for &a in u2.iter().collect::<BTreeSet<_>>() {
        *diff.entry(a).or_default() -= 1;
    }
    diff.retain(|_, d| *d != 0);
    let support: Vec<(VertexSet, i32)> = diff.into_iter().collect();

    let hypothesis = ground
        .subsets_of_size(p + r)
        .all(|q| signed_count(&support, VertexSet::EMPTY, q) == 0);

    // For fixed Q', the signed count at P' is the sum of diff(A) over
    // members P' ⊆ A ⊆ Q', so only subsets of support members can be
    // non-zero.
    let mut conclusion = true;
    let mut acc: HashMap<VertexSet, i32> = HashMap::new();
    'outer: for q in ground.subsets() {
        if q.len() < p + r {
            continue;
        }
        acc.clear();
        for &(a, d) in &support {
            if a.is_subset(q) {
                for sub in a.subsets() {
                    *acc.entry(sub).or_default() += d;
                }
            }
        }
        for (&pp, &v) in &acc {
            if v != 0 && q.len() - pp.len() >= p + r {
                conclusion = false;
                break 'outer;
            }
        }
    }
    if ground_n >= 2 * p + r && !support.is_empty() {
        conclusion = false;
    }
    Ok(CombLemmaOutcome {
        hypothesis,
        conclusion,
    })
}

fn signed_count(support: &[(VertexSet, i32)], lower: VertexSet, upper: VertexSet) -> i32 {
    support
        .iter()
        .filter(|(a, _)| lower.is_subset(*a) && a.is_subset(upper))
        .map(|(_, d)| d)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{almost_transitive, diamond_plus, four_cycle, three_cycle};

    #[test]
    fn spec_parsing() {
        assert_eq!("<=3".parse::<HypoSpec>().unwrap(), HypoSpec::up_to(3).unwrap());
        assert_eq!(
            "{3,-2}".parse::<HypoSpec>().unwrap(),
            HypoSpec::new([-2, 3]).unwrap()
        );
        assert!("0".parse::<HypoSpec>().is_err());
        assert_eq!(HypoSpec::new([-3, 2]).unwrap().sizes(9).unwrap(), vec![2, 6]);
        assert!(HypoSpec::single(-5).unwrap().sizes(4).is_err());
    }

    #[test]
    fn hypomorphic_examples() {
        let o4 = Tournament::transitive(4).unwrap();
        let c4 = four_cycle();
        let le2 = HypoSpec::up_to(2).unwrap();
        assert!(hypomorphic(&o4, &c4, &le2).unwrap());
        assert!(!hypomorphic(&o4, &c4, &HypoSpec::single(3).unwrap()).unwrap());
        assert!(hypomorphic(&c4, &c4, &HypoSpec::up_to(4).unwrap()).unwrap());
        assert!(matches!(
            hypomorphic(&o4, &three_cycle(), &le2),
            Err(Error::VertexCountMismatch(4, 3))
        ));
        assert!(matches!(
            hypomorphic(&o4, &c4, &HypoSpec::single(5).unwrap()),
            Err(Error::InvalidEntry { .. })
        ));
    }

    #[test]
    fn embed_examples() {
        let d = diamond_plus();
        let c3 = three_cycle();
        assert_eq!(embed_count(&d, &c3, VertexSet::from([0, 1])).unwrap(), 1);
        assert_eq!(embed_count(&d, &d, VertexSet::EMPTY).unwrap(), 1);
        assert!(embed_sets(&d, &c3, VertexSet::from([7])).is_err());
    }

    #[test]
    fn profile_examples() {
        let o9 = Tournament::transitive(9).unwrap();
        let prof = self_dual_profile(&o9, 9).unwrap();
        assert!(prof.all_true());
        assert!(!self_dual_profile(&diamond_plus(), 2).unwrap().self_dual);
        let at9 = almost_transitive(9).unwrap();
        assert!(self_dual_profile(&at9, 3).unwrap().minus[&3]);
        assert!(self_dual_profile(&o9, 10).is_err());
    }

    #[test]
    fn three_hypomorph_examples() {
        let found = three_hypomorphs(&three_cycle()).unwrap();
        let bits: Vec<String> = found.iter().map(Tournament::bit_string).collect();
        assert_eq!(bits, vec!["010", "101"]);
        let o3 = Tournament::transitive(3).unwrap();
        assert_eq!(three_hypomorphs(&o3).unwrap().len(), 6);
        let o8 = Tournament::transitive(8).unwrap();
        assert!(three_hypomorphs(&o8).is_err());
        assert_eq!(three_hypomorphs_bounded(&o8, 8).unwrap().len(), 40320);
    }

    #[test]
    fn three_hypomorphs_match_brute_force() {
        for n in 1..=5 {
            let m = pair_count(n);
            let spec3 = HypoSpec::single(3).ok();
            for c in 0..1u128 << m {
                let t = Tournament::from_code_bits(n, c).unwrap();
                let fast: Vec<u128> = three_hypomorphs(&t)
                    .unwrap()
                    .iter()
                    .map(Tournament::code_bits)
                    .collect();
                let slow: Vec<u128> = (0..1u128 << m)
                    .filter(|&d| {
                        let u = Tournament::from_code_bits(n, d).unwrap();
                        n < 3 || hypomorphic(&t, &u, spec3.as_ref().unwrap()).unwrap()
                    })
                    .collect();
                assert_eq!(fast, slow, "n={n} code={c}");
            }
        }
    }

    #[test]
    fn comb_lemma_trivial() {
        let u = vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])];
        let out = combinatorial_lemma_check(6, &u, &u, 2, 1).unwrap();
        assert!(out.hypothesis && out.conclusion);
        let u2 = vec![VertexSet::from([0, 2]), VertexSet::from([1, 3])];
        let out = combinatorial_lemma_check(6, &u, &u2, 2, 1).unwrap();
        assert!(!out.hypothesis);
        assert!(out.implication_holds());
        assert!(combinatorial_lemma_check(2, &u, &u, 2, 1).is_err());
        assert!(combinatorial_lemma_check(6, &u, &[VertexSet::from([0])], 2, 1).is_err());
    }

    #[test]
    fn comb_lemma_small_ground_trade() {
        // ground 4, p=2, r=1: {01,23} vs {02,13} differ on triple 012; a
        // hypothesis-true pair with distinct families needs ground < 2p+r.
        // Complement pairs on ground 3: every 3-set is the whole ground.
        let u = vec![VertexSet::from([0, 1])];
        let u2 = vec![VertexSet::from([1, 2])];
        let out = combinatorial_lemma_check(3, &u, &u2, 2, 1).unwrap();
        assert!(out.hypothesis);
        assert!(out.conclusion);
    }
}
