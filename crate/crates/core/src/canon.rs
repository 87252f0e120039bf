//! Canonical forms and isomorphism.
//!
//! The canonical code of a tournament is the lexicographically smallest
//! arc-bit string over all relabelings. The search places vertices one
//! position at a time. After `k` placements the unplaced vertices fall into
//! ordered cells according to their arcs to the placed ones; the next vertex
//! must come from the first cell, and its row of the code is minimised by
//! putting its in-neighbours first inside every cell. Only candidates whose
//! row ties for the minimum are explored, and a branch is cut as soon as its
//! prefix exceeds the best complete code found so far.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::tournament::{bits_to_hex, hex_to_bits, pair_count, Tournament};

/// Default largest vertex count accepted by [`canonical_form`].
pub const DEFAULT_CANON_BOUND: usize = 12;
/// Hard limit imposed by the 128-bit code representation.
pub const MAX_CANON_VERTICES: usize = 16;

/// Isomorphism-class key: the minimal arc-bit string of a tournament.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: u8,
    bits: u128,
}

impl CanonicalCode {
    /// Wraps packed bits that are already canonical. Not checked.
    pub fn from_raw(n: usize, bits: u128) -> Self {
        debug_assert!(n <= MAX_CANON_VERTICES);
        CanonicalCode { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// The canonical representative.
    pub fn tournament(&self) -> Tournament {
        Tournament::from_code_bits(self.n(), self.bits).expect("code within range")
    }

    /// Hex rendering, most significant bit first, tail padded.
    pub fn to_hex(&self) -> String {
        let m = pair_count(self.n());
        let bits: Vec<bool> = (0..m).rev().map(|k| self.bits >> k & 1 == 1).collect();
        bits_to_hex(&bits)
    }

    /// Parses a hex code and checks that it is canonical.
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > MAX_CANON_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_CANON_VERTICES,
            });
        }
        let bits = hex_to_bits(hex, pair_count(n))?;
        let raw = bits.iter().fold(0u128, |acc, &b| acc << 1 | u128::from(b));
        let code = CanonicalCode::from_raw(n, raw);
        let t = code.tournament();
        if canonical_search(&t).0 != raw {
            return Err(Error::Parse(format!("{hex} is not a canonical code")));
        }
        Ok(code)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(n={}, {})", self.n, self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Deserialises from `"<n>:<hex>"`.
impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (n, hex) = s
            .split_once(':')
            .ok_or_else(|| serde::de::Error::custom("expected <n>:<hex>"))?;
        let n: usize = n.parse().map_err(serde::de::Error::custom)?;
        CanonicalCode::from_hex(n, hex).map_err(serde::de::Error::custom)
    }
}

struct Search {
    n: usize,
    out: [u32; MAX_CANON_VERTICES],
    inn: [u32; MAX_CANON_VERTICES],
    cur_rows: [u32; MAX_CANON_VERTICES],
    cur_perm: [u8; MAX_CANON_VERTICES],
    best_rows: [u32; MAX_CANON_VERTICES],
    best_perm: [u8; MAX_CANON_VERTICES],
    have_best: bool,
}

type Cells = [u32; MAX_CANON_VERTICES];

impl Search {
    fn new(t: &Tournament) -> Self {
        let n = t.n();
        let mut out = [0u32; MAX_CANON_VERTICES];
        let mut inn = [0u32; MAX_CANON_VERTICES];
        let full = VertexSet::full(n).mask();
        for v in 0..n {
            out[v] = t.out_mask(v);
            inn[v] = full & !out[v] & !(1 << v);
        }
        Search {
            n,
            out,
            inn,
            cur_rows: [0; MAX_CANON_VERTICES],
            cur_perm: [0; MAX_CANON_VERTICES],
            best_rows: [0; MAX_CANON_VERTICES],
            best_perm: [0; MAX_CANON_VERTICES],
            have_best: false,
        }
    }

    #[inline]
    fn row(&self, v: usize, cells: &Cells, ncells: usize) -> u32 {
        let mut row = 0u32;
        for (c, &cell) in cells[..ncells].iter().enumerate() {
            let cell = if c == 0 { cell & !(1 << v) } else { cell };
            let zeros = (cell & self.inn[v]).count_ones();
            let ones = (cell & self.out[v]).count_ones();
            row = row << (zeros + ones) | ((1 << ones) - 1);
        }
        row
    }

    fn node(&mut self, k: usize, cells: &Cells, ncells: usize) {
        let n = self.n;
        if k + 1 >= n {
            if n > 0 {
                self.cur_perm[k] = cells[0].trailing_zeros() as u8;
            }
            let done = n.saturating_sub(1);
            if !self.have_best || self.cur_rows[..done] < self.best_rows[..done] {
                self.best_rows = self.cur_rows;
                self.best_perm = self.cur_perm;
                self.have_best = true;
            }
            return;
        }

        let first = cells[0];
        let mut cand = [(0u8, 0u32); MAX_CANON_VERTICES];
        let mut ncand = 0;
        let mut min_row = u32::MAX;
        let mut bits = first;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let row = self.row(v, cells, ncells);
            min_row = min_row.min(row);
            cand[ncand] = (v as u8, row);
            ncand += 1;
        }

        self.cur_rows[k] = min_row;
        if self.have_best && self.cur_rows[..=k] > self.best_rows[..=k] {
            return;
        }

        for &(v, row) in &cand[..ncand] {
            if row != min_row {
                continue;
            }
            // A sibling may have lowered the bound since the check above.
            if self.have_best && self.cur_rows[..=k] > self.best_rows[..=k] {
                return;
            }
            let v = v as usize;
            self.cur_perm[k] = v as u8;
            let mut next: Cells = [0; MAX_CANON_VERTICES];
            let mut nnext = 0;
            for (c, &cell) in cells[..ncells].iter().enumerate() {
                let cell = if c == 0 { cell & !(1 << v) } else { cell };
                let below = cell & self.inn[v];
                let above = cell & self.out[v];
                if below != 0 {
                    next[nnext] = below;
                    nnext += 1;
                }
                if above != 0 {
                    next[nnext] = above;
                    nnext += 1;
                }
            }
            self.node(k + 1, &next, nnext);
        }
    }

    fn code(&self) -> u128 {
        let n = self.n;
        let mut code = 0u128;
        for k in 0..n.saturating_sub(1) {
            code = code << (n - 1 - k) | u128::from(self.best_rows[k]);
        }
        code
    }
}

/// Runs the search with no bound check beyond the representation limit.
/// Returns the packed code and `perm[position] = original vertex`.
pub(crate) fn canonical_search(t: &Tournament) -> (u128, [u8; MAX_CANON_VERTICES]) {
    assert!(t.n() <= MAX_CANON_VERTICES, "canonical search limited to 16 vertices");
    let mut s = Search::new(t);
    let mut cells: Cells = [0; MAX_CANON_VERTICES];
    cells[0] = VertexSet::full(t.n()).mask();
    s.node(0, &cells, 1);
    (s.code(), s.best_perm)
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    let bound = bound.min(MAX_CANON_VERTICES);
    if n > bound {
        Err(Error::BoundExceeded {
            what: "canonicalization",
            n,
            bound,
        })
    } else {
        Ok(())
    }
}

/// Canonical code under the default bound of 12 vertices.
pub fn canonical_form(t: &Tournament) -> Result<CanonicalCode> {
    canonical_form_bounded(t, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_bounded(t: &Tournament, bound: usize) -> Result<CanonicalCode> {
    check_bound(t.n(), bound)?;
    Ok(CanonicalCode::from_raw(t.n(), canonical_search(t).0))
}

/// Canonical code together with the relabeling realising it:
/// `perm[position] = original vertex`.
pub fn canonical_labeling(t: &Tournament) -> Result<(CanonicalCode, Vec<usize>)> {
    check_bound(t.n(), DEFAULT_CANON_BOUND)?;
    let (code, perm) = canonical_search(t);
    Ok((
        CanonicalCode::from_raw(t.n(), code),
        perm[..t.n()].iter().map(|&v| v as usize).collect(),
    ))
}

pub fn are_isomorphic(t: &Tournament, u: &Tournament) -> Result<bool> {
    check_bound(t.n(), DEFAULT_CANON_BOUND)?;
    check_bound(u.n(), DEFAULT_CANON_BOUND)?;
    if t.n() != u.n() {
        return Ok(false);
    }
    if t.score_sequence_sorted() != u.score_sequence_sorted() {
        return Ok(false);
    }
    Ok(canonical_search(t).0 == canonical_search(u).0)
}

/// An isomorphism `f` from `t` onto `u` (`f[v]` is the image of `v`), if any.
pub fn find_isomorphism(t: &Tournament, u: &Tournament) -> Result<Option<Vec<usize>>> {
    if t.n() != u.n() {
        return Ok(None);
    }
    let (ct, pt) = canonical_labeling(t)?;
    let (cu, pu) = canonical_labeling(u)?;
    if ct != cu {
        return Ok(None);
    }
    let mut f = vec![0; t.n()];
    for (pos, &v) in pt.iter().enumerate() {
        f[v] = pu[pos];
    }
    Ok(Some(f))
}

/// Is `t` isomorphic to its dual?
pub fn is_self_dual(t: &Tournament) -> Result<bool> {
    are_isomorphic(t, &t.dual())
}

impl Tournament {
    fn score_sequence_sorted(&self) -> [u8; 32] {
        let mut s = [0u8; 32];
        for (v, d) in s.iter_mut().enumerate().take(self.n()) {
            *d = self.out_degree(v) as u8;
        }
        s[..self.n()].sort_unstable();
        s
    }
}

/// Lookup of isomorphism classes for every labelled tournament of a fixed
/// small size, indexed by packed arc bits.
pub struct ClassTable {
    size: usize,
    class_of: Vec<u16>,
    codes: Vec<u128>,
    self_dual: Vec<bool>,
}

/// Sizes served by [`ClassTable`].
pub const TABLE_MAX: usize = 7;

impl ClassTable {
    fn build(size: usize) -> Self {
        let m = pair_count(size);
        let raw: Vec<u128> = (0..1u128 << m)
            .map(|c| {
                let t = Tournament::from_code_bits(size.max(1), c).expect("small");
                canonical_search(&t).0
            })
            .collect();
        let mut codes = raw.clone();
        codes.sort_unstable();
        codes.dedup();
        let class_of = raw
            .iter()
            .map(|c| codes.binary_search(c).expect("present") as u16)
            .collect::<Vec<_>>();
        let self_dual = codes
            .iter()
            .map(|&c| {
                let t = Tournament::from_code_bits(size.max(1), c).expect("small");
                let d = t.dual().code_bits() as usize;
                class_of[d] as usize == codes.binary_search(&c).expect("present")
            })
            .collect();
        ClassTable {
            size,
            class_of,
            codes,
            self_dual,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn class_count(&self) -> usize {
        self.codes.len()
    }

    /// Class index of a labelled tournament given by its packed bits.
    #[inline]
    pub fn class_of(&self, bits: u128) -> usize {
        self.class_of[bits as usize] as usize
    }

    #[inline]
    pub fn canonical_bits(&self, class: usize) -> u128 {
        self.codes[class]
    }

    #[inline]
    pub fn is_self_dual(&self, class: usize) -> bool {
        self.self_dual[class]
    }
}

static TABLES: [OnceLock<ClassTable>; TABLE_MAX + 1] = [const { OnceLock::new() }; TABLE_MAX + 1];

/// The class table for `size <= 7`, built on first use.
pub fn class_table(size: usize) -> &'static ClassTable {
    assert!(size <= TABLE_MAX, "class tables cover at most {TABLE_MAX} vertices");
    TABLES[size].get_or_init(|| ClassTable::build(size))
}

/// Canonical code of the subtournament induced by `set`, using the lookup
/// tables where possible. `set` must be non-empty and within bounds.
#[inline]
pub fn sub_canonical(t: &Tournament, set: VertexSet) -> CanonicalCode {
    let k = set.len();
    if k <= TABLE_MAX {
        let table = class_table(k);
        let class = table.class_of(t.restricted_code(set));
        CanonicalCode::from_raw(k, table.canonical_bits(class))
    } else {
        CanonicalCode::from_raw(k, canonical_search(&t.restrict_unchecked(set)).0)
    }
}

/// Is the subtournament induced by `set` self dual?
#[inline]
pub fn sub_is_self_dual(t: &Tournament, set: VertexSet) -> bool {
    let k = set.len();
    if k <= TABLE_MAX {
        let table = class_table(k);
        table.is_self_dual(table.class_of(t.restricted_code(set)))
    } else {
        let r = t.restrict_unchecked(set);
        canonical_search(&r).0 == canonical_search(&r.dual()).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, bits: &str) -> Tournament {
        Tournament::from_bit_str(n, bits).unwrap()
    }

    /// Minimum code over every permutation; independent of the search.
    fn brute_min(t: &Tournament) -> u128 {
        fn rec(t: &Tournament, perm: &mut Vec<usize>, used: u32, best: &mut u128) {
            let n = t.n();
            if perm.len() == n {
                let mut code = 0u128;
                for i in 0..n {
                    for j in i + 1..n {
                        code = code << 1 | u128::from(t.beats(perm[i], perm[j]));
                    }
                }
                *best = (*best).min(code);
                return;
            }
            for v in 0..n {
                if used >> v & 1 == 0 {
                    perm.push(v);
                    rec(t, perm, used | 1 << v, best);
                    perm.pop();
                }
            }
        }
        let mut best = u128::MAX;
        rec(t, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn matches_brute_force_up_to_five() {
        for n in 1..=5 {
            for c in 0..1u128 << pair_count(n) {
                let tt = Tournament::from_code_bits(n, c).unwrap();
                assert_eq!(canonical_search(&tt).0, brute_min(&tt), "n={n} code={c:b}");
            }
        }
    }

    #[test]
    fn labeling_realises_code() {
        let tt = t(6, "101101001110101");
        let (code, perm) = canonical_labeling(&tt).unwrap();
        let mut bits = 0u128;
        for i in 0..6 {
            for j in i + 1..6 {
                bits = bits << 1 | u128::from(tt.beats(perm[i], perm[j]));
            }
        }
        assert_eq!(bits, code.bits());
    }

    #[test]
    fn three_cycles_share_a_code() {
        assert_eq!(
            canonical_form(&t(3, "101")).unwrap(),
            canonical_form(&t(3, "010")).unwrap()
        );
    }

    #[test]
    fn four_vertex_classes() {
        let mut codes: Vec<_> = (0..64u128)
            .map(|c| canonical_form(&Tournament::from_code_bits(4, c).unwrap()).unwrap())
            .collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 4);
        let named = [
            t(4, "111111"), // O_4
            t(4, "100111"), // C_4
            t(4, "101111"), // delta+
            t(4, "010000"), // delta-
        ];
        let mut named_codes: Vec<_> = named.iter().map(|x| canonical_form(x).unwrap()).collect();
        named_codes.sort();
        assert_eq!(named_codes, codes);
    }

    #[test]
    fn five_vertex_class_count() {
        let mut codes: Vec<_> = (0..1024u128)
            .map(|c| canonical_form(&Tournament::from_code_bits(5, c).unwrap()).unwrap())
            .collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 12);
    }

    #[test]
    fn isomorphism_examples() {
        let c3 = t(3, "101");
        assert!(are_isomorphic(&c3, &c3.dual()).unwrap());
        assert!(!are_isomorphic(&t(4, "101111"), &t(4, "010000")).unwrap());
        assert!(!are_isomorphic(&t(4, "111111"), &t(4, "100111")).unwrap());
        assert!(!are_isomorphic(&c3, &t(4, "100111")).unwrap());
    }

    #[test]
    fn self_duality_examples() {
        assert!(is_self_dual(&t(3, "101")).unwrap());
        assert!(!is_self_dual(&t(4, "101111")).unwrap());
        for n in 1..=12 {
            assert!(is_self_dual(&Tournament::transitive(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn bound_enforced() {
        let big = Tournament::transitive(13).unwrap();
        assert!(matches!(
            canonical_form(&big),
            Err(Error::BoundExceeded { n: 13, bound: 12, .. })
        ));
        assert!(canonical_form_bounded(&big, 13).is_ok());
        assert!(canonical_form_bounded(&Tournament::transitive(17).unwrap(), 40).is_err());
    }

    #[test]
    fn find_isomorphism_maps_arcs() {
        let a = t(5, "1011011001");
        let b = a.relabel(&[3, 0, 4, 1, 2]).unwrap();
        let f = find_isomorphism(&a, &b).unwrap().unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(a.beats(u, v), b.beats(f[u], f[v]));
                }
            }
        }
        assert!(find_isomorphism(&t(4, "101111"), &t(4, "010000")).unwrap().is_none());
    }

    #[test]
    fn hex_code_roundtrip() {
        let code = canonical_form(&t(4, "101111")).unwrap();
        assert_eq!(CanonicalCode::from_hex(4, &code.to_hex()).unwrap(), code);
        // "101111" itself is not minimal
        assert!(CanonicalCode::from_hex(4, "bc").is_err());
    }

    #[test]
    fn class_tables_agree_with_search() {
        for size in 0..=5 {
            let table = class_table(size);
            let expected = [1, 1, 1, 2, 4, 12][size];
            assert_eq!(table.class_count(), expected);
        }
        let tt = t(6, "101101001110101");
        for s in tt.vertices().subsets() {
            if s.is_empty() {
                continue;
            }
            let r = tt.restrict(s).unwrap();
            assert_eq!(sub_canonical(&tt, s), canonical_form(&r).unwrap());
            assert_eq!(sub_is_self_dual(&tt, s), is_self_dual(&r).unwrap());
        }
    }
}
