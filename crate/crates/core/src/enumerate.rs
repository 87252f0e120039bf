//! Isomorph-free enumeration by canonical augmentation, and the `.tkc`
//! catalog format.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::canon::{canonical_search, CanonicalCode, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::tournament::Tournament;

/// Default largest vertex count for [`enumerate_canonical`].
pub const DEFAULT_ENUM_BOUND: usize = 10;

/// One canonical code per isomorphism class of `n`-vertex tournaments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    n: usize,
    codes: Vec<CanonicalCode>,
}

impl Catalog {
    /// Sorts and deduplicates; every code must have `n` vertices.
    pub fn new(n: usize, mut codes: Vec<CanonicalCode>) -> Result<Self> {
        if let Some(c) = codes.iter().find(|c| c.n() != n) {
            return Err(Error::VertexCountMismatch(n, c.n()));
        }
        codes.sort_unstable();
        codes.dedup();
        Ok(Catalog { n, codes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn codes(&self) -> &[CanonicalCode] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.codes.binary_search(code).is_ok()
    }

    pub fn tournaments(&self) -> impl ExactSizeIterator<Item = Tournament> + '_ {
        self.codes.iter().map(CanonicalCode::tournament)
    }

    /// Strictly increasing and every code its own canonical form.
    pub fn validate(&self) -> Result<()> {
        if let Some(w) = self.codes.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Violation(format!("catalog out of order at {}", w[1])));
        }
        let bad = self
            .codes
            .par_iter()
            .find_first(|c| canonical_search(&c.tournament()).0 != c.bits());
        match bad {
            Some(c) => Err(Error::Violation(format!("{c} is not canonical"))),
            None => Ok(()),
        }
    }

    /// `TKC1 n=<N> count=<C>` followed by one hex code per line.
    pub fn to_tkc(&self) -> String {
        let mut s = format!("TKC1 n={} count={}\n", self.n, self.codes.len());
        for c in &self.codes {
            writeln!(s, "{}", c.to_hex()).expect("writing to a String");
        }
        s
    }

    /// Parses `.tkc` text. Codes are checked for order but not re-canonicalized;
    /// call [`Catalog::validate`] for that.
    pub fn from_tkc(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty catalog".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("TKC1") {
            return Err(Error::Parse(format!("bad catalog header {header:?}")));
        }
        let mut n = None;
        let mut count = None;
        for f in fields {
            match f.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("count", v)) => count = v.parse::<usize>().ok(),
                _ => return Err(Error::Parse(format!("bad header field {f:?}"))),
            }
        }
        let (n, count) = n
            .zip(count)
            .ok_or_else(|| Error::Parse(format!("bad catalog header {header:?}")))?;
        if n == 0 || n > MAX_CANON_VERTICES {
            return Err(Error::Parse(format!("unsupported catalog size n={n}")));
        }
        let m = crate::tournament::pair_count(n);
        // one line per code; the single 1-vertex code is an empty line
        let body: Vec<&str> = lines.collect();
        if body.len() < count || body[count..].iter().any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse(format!(
                "header announces {count} codes, found {}",
                body.iter().filter(|l| !l.trim().is_empty()).count()
            )));
        }
        let codes = body[..count]
            .iter()
            .map(|l| {
                let bits = crate::tournament::hex_to_bits(l.trim(), m)?;
                let raw = bits.iter().fold(0u128, |acc, &b| acc << 1 | u128::from(b));
                Ok(CanonicalCode::from_raw(n, raw))
            })
            .collect::<Result<Vec<_>>>()?;
        if codes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("catalog codes are not strictly increasing".into()));
        }
        Ok(Catalog { n, codes })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_tkc())
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_tkc(&text)
    }
}

/// Which vertex of a tournament in canonical labelling is deleted to name
/// its parent class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParentRule {
    /// The vertex in the last canonical position.
    LastVertex,
    /// The vertex in the first canonical position.
    FirstVertex,
}

impl ParentRule {
    fn position(self, n: usize) -> usize {
        match self {
            ParentRule::LastVertex => n - 1,
            ParentRule::FirstVertex => 0,
        }
    }
}

/// Canonical code of the parent of the class with the given canonical bits.
fn parent_bits(n: usize, bits: u128, rule: ParentRule) -> u128 {
    let canon = Tournament::from_code_bits(n, bits).expect("within range");
    let keep = VertexSet::full(n).without(rule.position(n));
    canonical_search(&canon.restrict_unchecked(keep)).0
}

/// The classes whose parent under `rule` lies in `parents`, given the
/// `(n-1)`-vertex catalog.
pub fn extend_catalog(parents: &Catalog, rule: ParentRule) -> Result<Catalog> {
    let n = parents.n() + 1;
    if n > MAX_CANON_VERTICES {
        return Err(Error::BoundExceeded {
            what: "enumeration",
            n,
            bound: MAX_CANON_VERTICES,
        });
    }
    let mut codes: Vec<CanonicalCode> = parents
        .codes()
        .par_iter()
        .flat_map_iter(|p| children(p, rule))
        .collect();
    codes.sort_unstable();
    let before = codes.len();
    codes.dedup();
    if codes.len() != before {
        return Err(Error::Violation(format!(
            "augmentation produced a class from two parents at n={n}"
        )));
    }
    Ok(Catalog { n, codes })
}

fn children(parent: &CanonicalCode, rule: ParentRule) -> Vec<CanonicalCode> {
    let base = parent.tournament();
    let n = base.n() + 1;
    let mut kids: Vec<u128> = Vec::new();
    for out in base.vertices().subsets() {
        let k = base.with_vertex(out).expect("one more vertex fits");
        let (bits, _) = canonical_search(&k);
        if parent_bits(n, bits, rule) == parent.bits() {
            kids.push(bits);
        }
    }
    kids.sort_unstable();
    kids.dedup();
    kids.into_iter()
        .map(|b| CanonicalCode::from_raw(n, b))
        .collect()
}

/// The one-vertex catalog.
pub fn base_catalog() -> Catalog {
    Catalog {
        n: 1,
        codes: vec![CanonicalCode::from_raw(1, 0)],
    }
}

/// All classes of `n`-vertex tournaments (`1 <= n <= 10`).
pub fn enumerate_canonical(n: usize) -> Result<Catalog> {
    enumerate_with(n, ParentRule::LastVertex, DEFAULT_ENUM_BOUND)
}

pub fn enumerate_with(n: usize, rule: ParentRule, bound: usize) -> Result<Catalog> {
    Ok(enumerate_chain(n, rule, bound)?.pop().expect("non-empty chain"))
}

/// Catalogs for `1..=n`.
pub fn enumerate_chain(n: usize, rule: ParentRule, bound: usize) -> Result<Vec<Catalog>> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let bound = bound.min(MAX_CANON_VERTICES);
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "enumeration",
            n,
            bound,
        });
    }
    let mut chain = vec![base_catalog()];
    for _ in 1..n {
        let next = extend_catalog(chain.last().expect("non-empty"), rule)?;
        chain.push(next);
    }
    Ok(chain)
}
