//! Named generators, the classes `I_{n,P}`, dilations of small shapes, the
//! exceptional family `Ω_m`, and seeded random generators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, is_self_dual, CanonicalCode};
use crate::decomposition::{is_decomposable, is_indecomposable_on, is_interval};
use crate::enumerate::Catalog;
use crate::error::{Error, Result};
use crate::hypomorphy::{is_spec_self_dual, HypoSpec};
use crate::set::VertexSet;
use crate::shape::{almost_transitive, diamond_minus, diamond_plus, four_cycle, three_cycle};
use crate::tournament::Tournament;

/// Generators accepted by [`gen_named`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedShape {
    Transitive,
    AlmostTransitive,
    C3,
    C4,
    DeltaPlus,
    DeltaMinus,
}

impl NamedShape {
    pub const ALL: [NamedShape; 6] = [
        NamedShape::Transitive,
        NamedShape::AlmostTransitive,
        NamedShape::C3,
        NamedShape::C4,
        NamedShape::DeltaPlus,
        NamedShape::DeltaMinus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NamedShape::Transitive => "O_n",
            NamedShape::AlmostTransitive => "almost_transitive",
            NamedShape::C3 => "C3",
            NamedShape::C4 => "C4",
            NamedShape::DeltaPlus => "delta_plus",
            NamedShape::DeltaMinus => "delta_minus",
        }
    }
}

impl fmt::Display for NamedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NamedShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "O_n" | "O" | "transitive" => NamedShape::Transitive,
            "almost_transitive" => NamedShape::AlmostTransitive,
            "C3" | "c3" => NamedShape::C3,
            "C4" | "c4" => NamedShape::C4,
            "delta_plus" => NamedShape::DeltaPlus,
            "delta_minus" => NamedShape::DeltaMinus,
            _ => return Err(Error::Parse(format!("unknown generator {s:?}"))),
        })
    }
}

/// The fixed labelled representative of a named shape.
pub fn gen_named(name: NamedShape, n: usize) -> Result<Tournament> {
    let fixed = |size: usize, t: Tournament| {
        if n == size {
            Ok(t)
        } else {
            Err(Error::Precondition(format!("{name} has {size} vertices, not {n}")))
        }
    };
    match name {
        NamedShape::Transitive => Tournament::transitive(n),
        NamedShape::AlmostTransitive => almost_transitive(n).ok_or_else(|| {
            Error::Precondition(format!("almost transitive needs n >= 3, got {n}"))
        }),
        NamedShape::C3 => fixed(3, three_cycle()),
        NamedShape::C4 => fixed(4, four_cycle()),
        NamedShape::DeltaPlus => fixed(4, diamond_plus()),
        NamedShape::DeltaMinus => fixed(4, diamond_minus()),
    }
}

/// `I_{n,P}`: indecomposable, not self dual, and `{p}`-self dual for every
/// `p` in `entries`.
pub fn class_i(n: usize, entries: &[i32], catalog: &Catalog) -> Result<Vec<CanonicalCode>> {
    if catalog.n() != n {
        return Err(Error::VertexCountMismatch(n, catalog.n()));
    }
    let spec = HypoSpec::new(entries.iter().copied())?;
    spec.sizes(n)?;
    let picked: Vec<Option<CanonicalCode>> = catalog
        .codes()
        .par_iter()
        .map(|c| {
            let t = c.tournament();
            let keep = !is_decomposable(&t)
                && is_spec_self_dual(&t, &spec)?
                && !is_self_dual(&t)?;
            Ok(keep.then_some(*c))
        })
        .collect::<Result<_>>()?;
    Ok(picked.into_iter().flatten().collect())
}

/// Shapes whose vertices get dilated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DilationShape {
    C3,
    O2,
    O3,
}

impl DilationShape {
    pub fn base(self) -> Tournament {
        match self {
            DilationShape::C3 => three_cycle(),
            DilationShape::O2 => Tournament::transitive(2).expect("n = 2"),
            DilationShape::O3 => Tournament::transitive(3).expect("n = 3"),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DilationShape::C3 => "C3",
            DilationShape::O2 => "O2",
            DilationShape::O3 => "O3",
        }
    }
}

impl fmt::Display for DilationShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dilates vertex `at` of `shape` by `part`; the part occupies a block of
/// consecutive vertices starting at `at`.
pub fn dilate_at(shape: DilationShape, part: &Tournament, at: usize) -> Result<Tournament> {
    let base = shape.base();
    base.check_vertex(at)?;
    let parts: Vec<Tournament> = (0..base.n())
        .map(|v| if v == at { *part } else { Tournament::point() })
        .collect();
    base.lex_sum(&parts)
}

/// One dilation per vertex of `shape`, deduplicated up to isomorphism and
/// returned as canonical representatives in code order.
pub fn dilate_into(shape: DilationShape, part: &Tournament) -> Result<Vec<Tournament>> {
    let mut codes = Vec::new();
    for at in 0..shape.base().n() {
        codes.push(canonical_form(&dilate_at(shape, part, at)?)?);
    }
    codes.sort_unstable();
    codes.dedup();
    Ok(codes.iter().map(CanonicalCode::tournament).collect())
}

/// A member of `Ω_m` and the constructors producing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaMember {
    pub code: CanonicalCode,
    pub provenance: Vec<DilationShape>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub m: usize,
    /// `I_{m-2,{-1,-2,-3}}`.
    pub i_small: Vec<CanonicalCode>,
    /// `I_{m-1,{-2,-3}}`.
    pub i_big: Vec<CanonicalCode>,
    pub members: Vec<OmegaMember>,
    pub conclusion: String,
}

/// Builds `Ω_m` from the catalogs at `m-2` and `m-1`.
pub fn omega(m: usize, small: &Catalog, big: &Catalog) -> Result<OmegaReport> {
    if m < 8 {
        return Err(Error::Precondition(format!("omega needs m >= 8, got {m}")));
    }
    if small.n() != m - 2 || big.n() != m - 1 {
        return Err(Error::Precondition(format!(
            "omega({m}) needs catalogs at {} and {}, got {} and {}",
            m - 2,
            m - 1,
            small.n(),
            big.n()
        )));
    }
    let i_small = class_i(m - 2, &[-1, -2, -3], small)?;
    let i_big = class_i(m - 1, &[-2, -3], big)?;

    let mut members: BTreeMap<CanonicalCode, Vec<DilationShape>> = BTreeMap::new();
    let jobs = i_small
        .iter()
        .flat_map(|c| [(DilationShape::C3, c), (DilationShape::O3, c)])
        .chain(i_big.iter().map(|c| (DilationShape::O2, c)));
    for (shape, code) in jobs {
        let part = code.tournament();
        for at in 0..shape.base().n() {
            let t = dilate_at(shape, &part, at)?;
            let block = VertexSet::full(part.n()).iter().map(|v| v + at).collect();
            check_omega_member(&t, block)?;
            let tags = members.entry(canonical_form(&t)?).or_default();
            if !tags.contains(&shape) {
                tags.push(shape);
                tags.sort_unstable();
            }
        }
    }
    let members: Vec<OmegaMember> = members
        .into_iter()
        .map(|(code, provenance)| OmegaMember { code, provenance })
        .collect();
    let conclusion = if members.is_empty() {
        format!(
            "both indecomposable classes are empty, so Omega_{m} is empty and every \
             decomposable {m}-vertex tournament is {{-3}}-reconstructible"
        )
    } else {
        format!(
            "Omega_{m} has {} classes; exactly these decomposable {m}-vertex tournaments \
             are not {{-3}}-reconstructible",
            members.len()
        )
    };
    Ok(OmegaReport {
        m,
        i_small,
        i_big,
        members,
        conclusion,
    })
}

/// A member is decomposable, has an indecomposable interval missing at most
/// two vertices, and is neither transitive nor almost transitive.
fn check_omega_member(t: &Tournament, block: VertexSet) -> Result<()> {
    let ok = is_decomposable(t)
        && is_interval(t, block)?
        && is_indecomposable_on(t, block)
        && t.n() - block.len() <= 2
        && !crate::shape::is_transitive(t)
        && !crate::shape::is_almost_transitive(t);
    if ok {
        Ok(())
    } else {
        Err(Error::Violation(format!(
            "dilation {t} lacks the expected indecomposable interval {block}"
        )))
    }
}

/// The generator used for instance `index` of a run seeded with `seed`:
/// one ChaCha8 stream per instance, so results do not depend on scheduling.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform arc bits.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    random_tournament_with(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

pub fn random_tournament_with<R: Rng>(rng: &mut R, n: usize) -> Result<Tournament> {
    Tournament::from_fn(n, |_, _| rng.random::<bool>())
}

/// A random lexicographic sum over a shape with `2..n` vertices, so some
/// block has two or more vertices and is a non-trivial interval; vertices
/// are then relabelled at random.
pub fn random_decomposable(n: usize, seed: u64) -> Result<Tournament> {
    random_decomposable_with(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

pub fn random_decomposable_with<R: Rng>(rng: &mut R, n: usize) -> Result<Tournament> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "a decomposable tournament needs n >= 3, got {n}"
        )));
    }
    let h = rng.random_range(2..n);
    let shape = random_tournament_with(rng, h)?;
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, h - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut parts = Vec::with_capacity(h);
    let mut prev = 0;
    for c in cuts {
        parts.push(random_tournament_with(rng, c - prev)?);
        prev = c;
    }
    let sum = shape.lex_sum(&parts)?;
    random_relabel(rng, &sum)
}

pub fn random_relabel<R: Rng>(rng: &mut R, t: &Tournament) -> Result<Tournament> {
    let mut perm: Vec<usize> = (0..t.n()).collect();
    perm.shuffle(rng);
    t.relabel(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_canonical;

    #[test]
    fn named_examples() {
        assert_eq!(
            gen_named(NamedShape::Transitive, 4).unwrap().bit_string(),
            "111111"
        );
        assert_eq!(
            gen_named(NamedShape::AlmostTransitive, 4).unwrap().bit_string(),
            "110111"
        );
        assert_eq!(
            gen_named(NamedShape::DeltaMinus, 4).unwrap().bit_string(),
            "010000"
        );
        assert!(gen_named(NamedShape::C3, 4).is_err());
        assert!(gen_named(NamedShape::AlmostTransitive, 2).is_err());
        for s in NamedShape::ALL {
            assert_eq!(s.as_str().parse::<NamedShape>().unwrap(), s);
        }
    }

    #[test]
    fn class_i_examples() {
        let c4 = enumerate_canonical(4).unwrap();
        assert!(class_i(4, &[-1], &c4).unwrap().is_empty());
        let c3 = enumerate_canonical(3).unwrap();
        assert!(class_i(3, &[-1], &c3).unwrap().is_empty());
        assert!(class_i(5, &[-1], &c4).is_err());
        assert!(class_i(4, &[0], &c4).is_err());
    }

    #[test]
    fn dilation_examples() {
        let o2 = Tournament::transitive(2).unwrap();
        let d = dilate_into(DilationShape::C3, &o2).unwrap();
        assert_eq!(d.len(), 1);
        assert!(crate::shape::is_almost_transitive(&d[0]));
        assert_eq!(dilate_into(DilationShape::O2, &three_cycle()).unwrap().len(), 2);
        let p = dilate_into(DilationShape::O3, &Tournament::point()).unwrap();
        assert_eq!(p.len(), 1);
        assert!(crate::shape::is_transitive(&p[0]));
    }

    #[test]
    fn omega_preconditions() {
        let c6 = enumerate_canonical(6).unwrap();
        let c7 = enumerate_canonical(7).unwrap();
        assert!(omega(7, &c6, &c7).is_err());
        assert!(omega(8, &c7, &c6).is_err());
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(random_tournament(9, 4).unwrap(), random_tournament(9, 4).unwrap());
        assert_ne!(random_tournament(9, 4).unwrap(), random_tournament(9, 5).unwrap());
        for seed in 0..1000 {
            let n = 3 + (seed as usize % 12);
            assert!(is_decomposable(&random_decomposable(n, seed).unwrap()));
        }
        assert!(random_decomposable(2, 0).is_err());
        let mut a = instance_rng(1, 2);
        let mut b = instance_rng(1, 3);
        assert_ne!(a.random::<u64>(), b.random::<u64>());
    }
}
