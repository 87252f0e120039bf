//! Suite registry. Each suite checks one stated result on exhaustive or
//! seeded random instances and returns a [`Report`].

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tk_core::families::{random_decomposable_with, random_tournament_with};
use tk_core::{Tournament, VertexSet};

use crate::catalogs;
use crate::error::{HarnessError, Result};
use crate::params::Params;
use crate::report::{Outcome, Recorder, Report};

mod diamond;
mod hypo;
pub mod reconstruction;
mod structure;

pub struct Suite {
    pub name: &'static str,
    /// The checked statement, in words.
    pub statement: &'static str,
    /// Instance coverage with default parameters.
    pub coverage: &'static str,
    run: fn(&Params) -> Result<Report>,
}

impl Suite {
    pub fn run(&self, params: &Params) -> Result<Report> {
        (self.run)(params)
    }
}

pub static SUITES: &[Suite] = &[
    Suite {
        name: "gallai",
        statement: "T is not strongly connected iff T/P(T) is transitive (then P(T) is the set of strong components); T is strongly connected iff T/P(T) is indecomposable with at least 3 vertices",
        coverage: "exhaustive n=2..9 plus 10^4 random tournaments with n in 2..16",
        run: structure::gallai,
    },
    Suite {
        name: "moon",
        statement: "in a strongly connected tournament every vertex lies in a strongly connected k-vertex subtournament for each 3 <= k <= n",
        coverage: "500 random strongly connected tournaments, n in 3..16, every vertex and k",
        run: structure::moon,
    },
    Suite {
        name: "ext-partition",
        statement: "for T[X] indecomposable with |X| >= 3, Ext(X), [X] and the sets X(u) constitute a partition of V \\ X",
        coverage: "500 random (T, X) with n in 4..16",
        run: structure::ext_partition_suite,
    },
    Suite {
        name: "indec-extend",
        statement: "if T and T[X] are indecomposable with 3 <= |X| <= n-2, there are x != y outside X with T[X + {x, y}] indecomposable",
        coverage: "500 random (T, X) with n in 5..14",
        run: structure::indec_extend,
    },
    Suite {
        name: "comb-lemma",
        statement: "families U, U' of p-sets meeting every (p+r)-set equally often meet every Q' \\ P' window equally often, and coincide when the ground set has at least 2p+r elements",
        coverage: "1000 random instances with the hypothesis satisfied, ground set of at most 10 elements",
        run: hypo::comb_lemma,
    },
    Suite {
        name: "hypo-descent",
        statement: "{p}-hypomorphic tournaments are {q}-hypomorphic for q <= min(p, n-p); for n >= 6, {-3}-hypomorphy implies (<=3)-hypomorphy",
        coverage: "every class against every labelled tournament for n=3..6, plus random constructed pairs with n in 7..10",
        run: hypo::hypo_descent,
    },
    Suite {
        name: "inversion",
        statement: "the only tournaments {3}-hypomorphic to an indecomposable T with n >= 3 are T and T*",
        coverage: "every indecomposable class for n=3..6",
        run: hypo::inversion,
    },
    Suite {
        name: "quotient-dual",
        statement: "{3}-hypomorphic T, T' share P(T), strong connectivity and indecomposability, and for strongly connected T the quotients T'/P(T) and T/P(T) are either equal or dual",
        coverage: "every class paired with every {3}-hypomorph for n=3..6",
        run: hypo::quotient_dual,
    },
    Suite {
        name: "interval-transfer",
        statement: "for {3}-hypomorphic T, T', an interval I of T with T[I] strongly connected is an interval of T'",
        coverage: "every class paired with every {3}-hypomorph for n=3..6",
        run: hypo::interval_transfer,
    },
    Suite {
        name: "prop-degre",
        statement: "for an interval I of T with T[I] indecomposable and |I| >= 3 and n >= 6: {3,-2}- or {-3}-hypomorphy with enough outside vertices forces T[I] ~ T'[I], equal sizes of I+ and I-, and with {-3} and |V \\ I| >= 4 the sets I+ and I- coincide",
        coverage: "every class paired with every {3}-hypomorph (a superset of all relevant pairs) for n=6..7",
        run: hypo::prop_degre,
    },
    Suite {
        name: "diamond-free-selfdual",
        statement: "a diamond-free tournament with at least 9 vertices is {-3}-self dual iff it is strongly self dual",
        coverage: "every 9-vertex class",
        run: diamond::diamond_free_selfdual,
    },
    Suite {
        name: "vertex-in-diamond",
        statement: "if T embeds a diamond, each vertex of T is contained in at least one diamond",
        coverage: "every class for n=4..8 plus 1000 random tournaments with n in 9..16",
        run: diamond::vertex_in_diamond,
    },
    Suite {
        name: "interval2-not-selfdual",
        statement: "a tournament with at least 8 vertices that embeds a diamond and has a 2-element interval is not {-3}-self dual",
        coverage: "every class for n=8..9",
        run: diamond::interval2_not_selfdual,
    },
    Suite {
        name: "center-everywhere",
        statement: "a {-3}-self dual tournament with at least 7 vertices that embeds a diamond has every vertex as the center of at least one diamond",
        coverage: "every class for n=7..8",
        run: diamond::center_everywhere,
    },
    Suite {
        name: "pair-interval-balance",
        statement: "if T is {-2}-self dual with n >= 7 (or {-3}-self dual with n >= 8) and {a, b} is an interval, then a is the center of as many positive as negative diamonds",
        coverage: "every class and every 2-element interval for n=7..8",
        run: diamond::pair_interval_balance,
    },
    Suite {
        name: "decomposable-diamond",
        statement: "a decomposable tournament with at least 8 vertices embedding a diamond is not {-3}-self dual",
        coverage: "every 8-vertex class",
        run: diamond::decomposable_diamond,
    },
    Suite {
        name: "theorem3",
        statement: "a decomposable tournament with at least 9 vertices is {-3}-self dual iff it is transitive or almost transitive",
        coverage: "every 9-vertex class",
        run: reconstruction::theorem3,
    },
    Suite {
        name: "prop28",
        statement: "for T strongly connected, decomposable, not almost transitive, n >= 9 and T' {-3}-hypomorphic: P(T') = P(T) and T'/P(T) = T/P(T); a block with T'[X] not isomorphic to T[X] forces |P(T)| = 3 and |X| = n-2; if every block has at most n-3 vertices then T' ~ T",
        coverage: "300 random T with 8 constructed candidates each, kept when {-3}-hypomorphic (randomized, not exhaustive)",
        run: reconstruction::prop28,
    },
    Suite {
        name: "hereditary-reassembly",
        statement: "for a common interval partition with equal quotients and blockwise isomorphisms, the union of the blockwise isomorphisms on A is an isomorphism from T[A] onto T'[A]",
        coverage: "300 random constructed pairs, every subset A",
        run: reconstruction::hereditary_reassembly,
    },
    Suite {
        name: "dilation-iso",
        statement: "dilating corresponding vertices of isomorphic tournaments by R_i and R'_i gives isomorphic results iff R_i ~ R'_i",
        coverage: "every class with n <= 4 against every pair of dilating classes of equal size <= 4, plus 2000 random instances",
        run: reconstruction::dilation_iso,
    },
    Suite {
        name: "eight-vertex",
        statement: "strongly connected decomposable 8-vertex tournaments are {-2,-3}-reconstructible",
        coverage: "10^5 constructed {-2,-3}-hypomorphic pairs (randomized falsification search, not exhaustive); --mode exhaustive scans every {3}-hypomorph of every class",
        run: reconstruction::eight_vertex,
    },
    Suite {
        name: "theorem4-facts",
        statement: "for T decomposable with n >= 9 and T' {-3}-hypomorphic: T' ~ T when T is almost transitive or outside Omega_n; when T is neither strongly connected nor transitive, strongly connected blocks of P~(T) with at least 3 vertices keep their relation to outside vertices, P~(T') = P~(T) and T'/P~(T) = T/P~(T)",
        coverage: "300 random decomposable T with 8 constructed candidates each, kept when {-3}-hypomorphic (randomized, not exhaustive)",
        run: reconstruction::theorem4_facts,
    },
    Suite {
        name: "remark7",
        statement: "there are four 4-vertex tournaments, all decomposable; {3}-hypomorphic T, T' are (<=4)-hypomorphic iff T'[X] ~ T[X] whenever T[X] or T'[X] is a diamond; diamond-free T gives {4}-hypomorphy",
        coverage: "every class paired with every {3}-hypomorph for n=4..6",
        run: hypo::remark7,
    },
    Suite {
        name: "corollary5",
        statement: "a decomposable tournament with no interval X such that T[X] is indecomposable and |V \\ X| <= 2 is {-3}-reconstructible (consistency: Omega_n members violate the hypothesis, tournaments satisfying it are outside Omega_n)",
        coverage: "every member of Omega_9 plus 1000 random decomposable 9-vertex tournaments",
        run: reconstruction::corollary5,
    },
];

pub fn find_suite(name: &str) -> Result<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| HarnessError::UnknownSuite(name.into()))
}

pub fn run_suite(name: &str, params: &Params) -> Result<Report> {
    find_suite(name)?.run(params)
}

/// Every class of the `n`-vertex catalog.
pub(crate) fn classes(n: usize, params: &Params) -> Result<Vec<Tournament>> {
    Ok(catalogs::catalog(n, params)?.tournaments().collect())
}

/// Checks items in parallel, returning outcomes in item order.
pub(crate) fn check_each<T, F>(items: &[T], f: F) -> Result<Vec<Outcome>>
where
    T: Sync,
    F: Fn(&T) -> Result<Outcome> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Checks instances `0..count` in parallel, in index order.
pub(crate) fn check_indexed<F>(count: usize, f: F) -> Result<Vec<Outcome>>
where
    F: Fn(u64) -> Result<Outcome> + Sync + Send,
{
    (0..count as u64).into_par_iter().map(f).collect()
}

/// Runs `check` on every class of each size, recording per-size counts.
pub(crate) fn scan_classes<F>(rec: &mut Recorder, sizes: &[usize], params: &Params, check: F) -> Result<()>
where
    F: Fn(&Tournament) -> Result<Outcome> + Sync + Send,
{
    for &n in sizes {
        let all = classes(n, params)?;
        let outcomes = check_each(&all, &check)?;
        let checked: u64 = outcomes.iter().map(|o| o.checked).sum();
        rec.note(&format!("classes_n{n}"), all.len());
        rec.note(&format!("checked_n{n}"), checked);
        rec.add_all(outcomes);
    }
    Ok(())
}

/// Uniform random tournament or random lexicographic sum, half each.
pub(crate) fn mixed_random(rng: &mut ChaCha8Rng, n: usize) -> Result<Tournament> {
    if n >= 3 && rng.random_bool(0.5) {
        Ok(random_decomposable_with(rng, n)?)
    } else {
        Ok(random_tournament_with(rng, n)?)
    }
}

/// Draws from `draw` until `keep` accepts.
pub(crate) fn draw_until(
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Result<Tournament>,
    keep: impl Fn(&Tournament) -> bool,
) -> Result<Tournament> {
    loop {
        let t = draw(rng)?;
        if keep(&t) {
            return Ok(t);
        }
    }
}

/// Vertices outside `set` dominated by all of `set` (`I+` for an interval).
pub(crate) fn dominated_by(t: &Tournament, set: VertexSet) -> VertexSet {
    t.vertices()
        .difference(set)
        .iter()
        .filter(|&x| set.iter().all(|v| t.beats(v, x)))
        .collect()
}

/// Vertices outside `set` dominating all of `set` (`I-` for an interval).
pub(crate) fn dominating(t: &Tournament, set: VertexSet) -> VertexSet {
    t.vertices()
        .difference(set)
        .iter()
        .filter(|&x| set.iter().all(|v| t.beats(x, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_consistent() {
        assert_eq!(SUITES.len(), 24);
        let mut names: Vec<_> = SUITES.iter().map(|s| s.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 24);
        assert!(matches!(find_suite("nope"), Err(HarnessError::UnknownSuite(_))));
    }
}
