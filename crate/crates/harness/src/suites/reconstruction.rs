//! Decomposable tournaments and {-3}-reconstruction.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use tk_core::canon::{canonical_form, find_isomorphism, sub_canonical};
use tk_core::decomposition::{
    gallai_partition, intervals, is_decomposable, is_indecomposable_on, is_strongly_connected,
    is_strongly_connected_on, quotient, tilde_partition,
};
use tk_core::families::{
    instance_rng, omega, random_decomposable_with, random_relabel, random_tournament_with, OmegaReport,
};
use tk_core::hypomorphy::{hypomorphic, size_self_dual, three_hypomorphs_bounded, HypoSpec};
use tk_core::shape::{almost_transitive, classify_shape, is_almost_transitive, is_transitive};
use tk_core::{are_isomorphic, CanonicalCode, Partition, Tournament, VertexSet};

use super::{check_each, check_indexed, classes, draw_until};
use crate::catalogs;
use crate::error::{invalid, Result};
use crate::pairs::random_candidate;
use crate::params::{Mode, Params};
use crate::report::{Outcome, Recorder, Report, Violation};

/// Candidates built per random `T` in the constructed-pair suites.
const CANDIDATES_PER_TRIAL: usize = 8;
/// Probability of reversing the quotient in a candidate.
const DUAL_QUOTIENT: f64 = 0.25;

pub(super) fn theorem3(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("theorem3");
    let sizes = params.sizes(9..=9, 9, 10)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    for &n in &sizes {
        let all = classes(n, params)?;
        let found: Vec<&Tournament> = all
            .par_iter()
            .filter(|t| is_decomposable(t) && size_self_dual(t, n - 3))
            .collect();
        rec.add(Outcome {
            checked: all.len() as u64,
            violations: Vec::new(),
        });
        let mut o = Outcome::skipped();
        for t in &found {
            o.check(is_transitive(t) || is_almost_transitive(t), || {
                Violation::new(t, "transitive or almost transitive", classify_shape(t).as_str())
            });
        }
        let expected = [Tournament::transitive(n)?, almost_transitive(n).expect("n >= 3")];
        for e in &expected {
            let code = canonical_form(e)?;
            let present = found.iter().any(|t| canonical_form(t).map(|c| c == code).unwrap_or(false));
            o.check(present, || {
                Violation::new(e, "decomposable and {-3}-self dual class found", "missing")
            });
        }
        rec.add(o);
        let listed: Vec<_> = found
            .iter()
            .map(|t| json!({"tk": t.to_tk(), "shape": classify_shape(t).as_str()}))
            .collect();
        rec.note(&format!("found_n{n}"), listed);
    }
    Ok(rec.finish())
}

/// `Ω_n` from the catalogs on `n-2` and `n-1` vertices.
pub fn omega_report(n: usize, params: &Params) -> Result<OmegaReport> {
    let small = catalogs::catalog(n - 2, params)?;
    let big = catalogs::catalog(n - 1, params)?;
    Ok(omega(n, &small, &big)?)
}

fn omega_codes(report: &OmegaReport) -> BTreeSet<CanonicalCode> {
    report.members.iter().map(|m| m.code).collect()
}

#[derive(Default)]
struct PairCounters {
    candidates: AtomicU64,
    hypomorphic: AtomicU64,
    distinct: AtomicU64,
    non_isomorphic_blocks: AtomicU64,
}

impl PairCounters {
    fn bump(c: &AtomicU64) {
        c.fetch_add(1, Ordering::Relaxed);
    }

    fn record(self, rec: &mut Recorder) {
        rec.note("candidates_built", self.candidates.into_inner());
        rec.note("hypomorphic_pairs", self.hypomorphic.into_inner());
        rec.note("pairs_with_t_prime_not_t", self.distinct.into_inner());
        rec.note("pairs_with_a_non_isomorphic_block", self.non_isomorphic_blocks.into_inner());
    }
}

fn constructed_n(params: &Params, lo: usize, hi: usize) -> Result<usize> {
    match params.n {
        None => Ok(lo),
        Some(n) if (lo..=hi).contains(&n) => Ok(n),
        Some(n) => Err(invalid(format!("n must lie in {lo}..={hi}, got {n}"))),
    }
}

fn blocks_isomorphic(t: &Tournament, u: &Tournament, p: &Partition) -> Vec<bool> {
    p.blocks().iter().map(|&b| sub_canonical(t, b) == sub_canonical(u, b)).collect()
}

pub(super) fn prop28(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("prop28");
    let n = constructed_n(params, 9, 12)?;
    let trials = params.trials_or(300);
    rec.param("n", n);
    rec.param("seed", params.seed);
    rec.param("trials", trials);
    rec.param("candidates_per_trial", CANDIDATES_PER_TRIAL);
    rec.param("coverage", "randomized constructed pairs, not exhaustive");
    let spec = HypoSpec::single(-3)?;
    let counters = PairCounters::default();
    let outcomes = check_indexed(trials, |i| {
        let mut rng = instance_rng(params.seed, i);
        let t = draw_until(
            &mut rng,
            |r| Ok(random_decomposable_with(r, n)?),
            |t| is_strongly_connected(t) && !is_almost_transitive(t),
        )?;
        let p = gallai_partition(&t)?;
        let q = quotient(&t, &p)?;
        let mut total = Outcome::skipped();
        for _ in 0..CANDIDATES_PER_TRIAL {
            let u = random_candidate(&mut rng, &t, &p, DUAL_QUOTIENT)?;
            PairCounters::bump(&counters.candidates);
            if !hypomorphic(&t, &u, &spec)? {
                continue;
            }
            PairCounters::bump(&counters.hypomorphic);
            if u != t {
                PairCounters::bump(&counters.distinct);
            }
            let mut o = Outcome::one();
            let other = u.to_tk();
            let pu = gallai_partition(&u)?;
            o.check(pu == p, || Violation::new(&t, format!("P(T') = {p} for T' = {other}"), pu.to_string()));
            let qu = quotient(&u, &p)?;
            o.check(qu == q, || {
                Violation::new(&t, format!("T'/P(T) = {} for T' = {other}", q.to_tk()), qu.to_tk())
            });
            let iso = blocks_isomorphic(&t, &u, &p);
            if iso.contains(&false) {
                PairCounters::bump(&counters.non_isomorphic_blocks);
            }
            for (&b, &same) in p.blocks().iter().zip(&iso) {
                o.check(same || (p.len() == 3 && b.len() == n - 2), || {
                    Violation::new(
                        &t,
                        format!("T'[{b}] ~ T[{b}] unless |P| = 3 and |X| = n-2, T' = {other}"),
                        format!("|P| = {}, |X| = {}", p.len(), b.len()),
                    )
                });
            }
            if p.blocks().iter().all(|b| b.len() <= n - 3) {
                let ok = !iso.contains(&false) && are_isomorphic(&t, &u)?;
                o.check(ok, || Violation::new(&t, format!("T' = {other} isomorphic to T"), "not isomorphic"));
            }
            total.absorb(o);
        }
        Ok(total)
    })?;
    rec.add_all(outcomes);
    counters.record(&mut rec);
    Ok(rec.finish())
}

/// `(T, T', blocks)`: a lexicographic sum and a copy with every block
/// replaced by a hereditarily isomorphic one, commonly relabelled.
fn hereditary_pair(rng: &mut ChaCha8Rng) -> Result<(Tournament, Tournament, Vec<VertexSet>)> {
    let h = rng.random_range(2..=5);
    let shape = random_tournament_with(rng, h)?;
    let mut budget = 10usize;
    let mut parts = Vec::with_capacity(h);
    let mut twins = Vec::with_capacity(h);
    for k in 0..h {
        let max = (budget - (h - k - 1)).min(4);
        let s = rng.random_range(1..=max);
        budget -= s;
        let (r, r2) = if s <= 3 {
            let r = random_tournament_with(rng, s)?;
            let r2 = random_relabel(rng, &r)?;
            (r, r2)
        } else if rng.random_bool(0.5) {
            let r = Tournament::transitive(s)?;
            let r2 = random_relabel(rng, &r)?;
            (r, r2)
        } else {
            // almost transitive tournaments are strongly self dual
            let r = almost_transitive(s).expect("s >= 3");
            let r2 = r.dual();
            (r, r2)
        };
        parts.push(r);
        twins.push(r2);
    }
    let t = shape.lex_sum(&parts)?;
    let u = shape.lex_sum(&twins)?;
    let mut perm: Vec<usize> = (0..t.n()).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    let mut blocks = Vec::with_capacity(h);
    let mut start = 0;
    for r in &parts {
        blocks.push((start..start + r.n()).map(|v| perm[v]).collect());
        start += r.n();
    }
    Ok((t.relabel(&perm)?, u.relabel(&perm)?, blocks))
}

fn reassembly_check(t: &Tournament, u: &Tournament, blocks: &[VertexSet]) -> Result<Outcome> {
    let mut o = Outcome::one();
    for a in t.vertices().subsets() {
        if a.is_empty() {
            continue;
        }
        let mut f = vec![usize::MAX; t.n()];
        for &y in blocks {
            let ya = y.intersection(a);
            if ya.is_empty() {
                continue;
            }
            let verts = ya.to_vec();
            match find_isomorphism(&t.restrict(ya)?, &u.restrict(ya)?)? {
                Some(phi) => {
                    for (k, &v) in verts.iter().enumerate() {
                        f[v] = verts[phi[k]];
                    }
                }
                None => {
                    o.fail(Violation::new(t, format!("T[{ya}] ~ T'[{ya}] by construction"), "not isomorphic"));
                    return Ok(o);
                }
            }
        }
        let ok = a.iter().all(|x| a.iter().all(|y| x == y || t.beats(x, y) == u.beats(f[x], f[y])));
        o.check(ok, || {
            Violation::new(t, format!("blockwise union an isomorphism on {a} onto T' = {}", u.to_tk()), "arc mismatch")
        });
        if !ok {
            break;
        }
    }
    Ok(o)
}

pub(super) fn hereditary_reassembly(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("hereditary-reassembly");
    let trials = params.trials_or(300);
    rec.param("seed", params.seed);
    rec.param("trials", trials);
    rec.param("max_n", 10);
    let outcomes = check_indexed(trials, |i| {
        let (t, u, blocks) = hereditary_pair(&mut instance_rng(params.seed, i))?;
        reassembly_check(&t, &u, &blocks)
    })?;
    rec.add_all(outcomes);
    Ok(rec.finish())
}

fn dilate_vertex(t: &Tournament, i: usize, r: &Tournament) -> Result<Tournament> {
    let parts: Vec<Tournament> = (0..t.n())
        .map(|v| if v == i { *r } else { Tournament::point() })
        .collect();
    Ok(t.lex_sum(&parts)?)
}

fn dilation_check(t: &Tournament, perm: &[usize], i: usize, r: &Tournament, r2: &Tournament) -> Result<Outcome> {
    let t2 = t.relabel(perm)?;
    let big = dilate_vertex(t, i, r)?;
    let big2 = dilate_vertex(&t2, perm[i], r2)?;
    let lhs = are_isomorphic(&big, &big2)?;
    let rhs = are_isomorphic(r, r2)?;
    let mut o = Outcome::one();
    o.check(lhs == rhs, || {
        Violation::new(
            t,
            format!("dilations at {i} by {} and {} isomorphic iff the parts are", r.to_tk(), r2.to_tk()),
            format!("dilations isomorphic={lhs}, parts isomorphic={rhs}"),
        )
    });
    Ok(o)
}

pub(super) fn dilation_iso(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("dilation-iso");
    let mode = params.mode_or(Mode::Both);
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    if mode.exhaustive() {
        let parts: Vec<Tournament> = (1..=4)
            .map(|s| classes(s, params))
            .collect::<Result<Vec<_>>>()?
            .concat();
        let mut cases = Vec::new();
        for t in &parts {
            let perm: Vec<usize> = (0..t.n()).rev().collect();
            for i in 0..t.n() {
                for r in &parts {
                    for r2 in parts.iter().filter(|r2| r2.n() == r.n()) {
                        cases.push((t, perm.clone(), i, r, r2));
                    }
                }
            }
        }
        let outcomes = check_each(&cases, |(t, perm, i, r, r2)| dilation_check(t, perm, *i, r, r2))?;
        rec.note("exhaustive_cases", cases.len());
        rec.add_all(outcomes);
    }
    if mode.random() {
        let trials = params.trials_or(2000);
        rec.param("trials", trials);
        let outcomes = check_indexed(trials, |k| {
            let mut rng = instance_rng(params.seed, k);
            let n = rng.random_range(1..=6);
            let t = random_tournament_with(&mut rng, n)?;
            let mut perm: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
            let i = rng.random_range(0..n);
            let s = rng.random_range(1..=4);
            let r = random_tournament_with(&mut rng, s)?;
            let r2 = if rng.random_bool(0.5) {
                random_relabel(&mut rng, &r)?
            } else {
                let s2 = if rng.random_bool(0.8) { s } else { rng.random_range(1..=4) };
                random_tournament_with(&mut rng, s2)?
            };
            dilation_check(&t, &perm, i, &r, &r2)
        })?;
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}

pub(super) fn eight_vertex(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("eight-vertex");
    if params.n.is_some_and(|n| n != 8) {
        return Err(invalid("eight-vertex runs on n = 8 only"));
    }
    let mode = params.mode_or(Mode::Random);
    rec.param("n", 8);
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    let pool: Vec<Tournament> = classes(8, params)?
        .into_iter()
        .filter(|t| is_strongly_connected(t) && is_decomposable(t))
        .collect();
    rec.note("strongly_connected_decomposable_classes", pool.len());
    let spec = HypoSpec::new([-2, -3])?;
    let counters = PairCounters::default();
    let check = |h: &Tournament, u: &Tournament| -> Result<Outcome> {
        let mut o = Outcome::one();
        PairCounters::bump(&counters.hypomorphic);
        if u != h {
            PairCounters::bump(&counters.distinct);
        }
        o.check(are_isomorphic(h, u)?, || {
            Violation::new(h, format!("{{-2,-3}}-hypomorphic {} isomorphic to T", u.to_tk()), "not isomorphic")
        });
        Ok(o)
    };
    if mode.exhaustive() {
        rec.param("exhaustive", "every {3}-hypomorph of every class, filtered by {-2,-3}-hypomorphy");
        let outcomes = check_each(&pool, |h| {
            let mut total = Outcome::skipped();
            for u in three_hypomorphs_bounded(h, 8)? {
                PairCounters::bump(&counters.candidates);
                if hypomorphic(h, &u, &spec)? {
                    total.absorb(check(h, &u)?);
                }
            }
            Ok(total)
        })?;
        rec.add_all(outcomes);
    }
    if mode.random() {
        let trials = params.trials_or(100_000);
        let attempts = 64;
        rec.param("trials", trials);
        rec.param("attempts_per_trial", attempts);
        rec.param("coverage", "randomized falsification search over constructed pairs, not exhaustive");
        let outcomes = check_indexed(trials, |i| {
            let mut rng = instance_rng(params.seed, i);
            for _ in 0..attempts {
                let base = pool.choose(&mut rng).expect("non-empty pool");
                let h = random_relabel(&mut rng, base)?;
                let p = gallai_partition(&h)?;
                let u = random_candidate(&mut rng, &h, &p, DUAL_QUOTIENT)?;
                PairCounters::bump(&counters.candidates);
                if hypomorphic(&h, &u, &spec)? {
                    return check(&h, &u);
                }
            }
            Ok(Outcome::skipped())
        })?;
        rec.add_all(outcomes);
    }
    counters.record(&mut rec);
    Ok(rec.finish())
}

pub(super) fn theorem4_facts(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("theorem4-facts");
    let n = constructed_n(params, 9, 10)?;
    let trials = params.trials_or(300);
    rec.param("n", n);
    rec.param("seed", params.seed);
    rec.param("trials", trials);
    rec.param("candidates_per_trial", CANDIDATES_PER_TRIAL);
    rec.param("coverage", "randomized constructed pairs, not exhaustive");
    let om = omega_report(n, params)?;
    let members = omega_codes(&om);
    rec.note("omega_size", members.len());
    let spec = HypoSpec::single(-3)?;
    let counters = PairCounters::default();
    let fact_pairs = AtomicU64::new(0);
    let outcomes = check_indexed(trials, |i| {
        let mut rng = instance_rng(params.seed, i);
        let t = random_decomposable_with(&mut rng, n)?;
        let pt = tilde_partition(&t)?;
        let q = quotient(&t, &pt)?;
        let in_omega = members.contains(&canonical_form(&t)?);
        // the facts belong to the case of T neither strongly connected nor transitive
        let facts_apply = !is_strongly_connected(&t) && !is_transitive(&t);
        let mut total = Outcome::skipped();
        for _ in 0..CANDIDATES_PER_TRIAL {
            let u = random_candidate(&mut rng, &t, &pt, DUAL_QUOTIENT)?;
            PairCounters::bump(&counters.candidates);
            if !hypomorphic(&t, &u, &spec)? {
                continue;
            }
            PairCounters::bump(&counters.hypomorphic);
            if u != t {
                PairCounters::bump(&counters.distinct);
            }
            let mut o = Outcome::one();
            let other = u.to_tk();
            if facts_apply {
                PairCounters::bump(&fact_pairs);
                for &x in pt.blocks() {
                    if x.len() < 3 || !is_strongly_connected_on(&t, x)? {
                        continue;
                    }
                    let rep = x.first().expect("non-empty");
                    for a in t.vertices().difference(x) {
                        let same = x.iter().all(|v| u.beats(a, v) == t.beats(a, rep));
                        o.check(same, || {
                            Violation::new(&t, format!("{a} relates to {x} in T' = {other} as in T"), "differs")
                        });
                    }
                }
                let pu = tilde_partition(&u)?;
                o.check(pu == pt, || {
                    Violation::new(&t, format!("P~(T') = {pt} for T' = {other}"), pu.to_string())
                });
                match quotient(&u, &pt) {
                    Ok(qu) => o.check(qu == q, || {
                        Violation::new(&t, format!("T'/P~(T) = {} for T' = {other}", q.to_tk()), qu.to_tk())
                    }),
                    Err(e) => o.fail(Violation::new(&t, format!("P~(T) an interval partition of {other}"), e.to_string())),
                }
            }
            let iso = blocks_isomorphic(&t, &u, &pt);
            if iso.contains(&false) {
                PairCounters::bump(&counters.non_isomorphic_blocks);
            }
            if is_almost_transitive(&t) || !in_omega {
                o.check(are_isomorphic(&t, &u)?, || {
                    Violation::new(&t, format!("T' = {other} isomorphic to T"), "not isomorphic")
                });
            }
            if !is_almost_transitive(&t) && !in_omega {
                o.check(!iso.contains(&false), || {
                    Violation::new(&t, format!("every block of T' = {other} isomorphic to T's"), "a block differs")
                });
            }
            total.absorb(o);
        }
        Ok(total)
    })?;
    rec.add_all(outcomes);
    counters.record(&mut rec);
    rec.note("pairs_with_t_neither_strong_nor_transitive", fact_pairs.into_inner());
    Ok(rec.finish())
}

/// Has an interval `X` with `T[X]` indecomposable and `|V \ X| <= 2`.
fn has_large_indecomposable_interval(t: &Tournament) -> bool {
    intervals(t)
        .into_iter()
        .any(|x| t.n() - x.len() <= 2 && is_indecomposable_on(t, x))
}

pub(super) fn corollary5(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("corollary5");
    let n = constructed_n(params, 9, 10)?;
    let trials = params.trials_or(1000);
    rec.param("n", n);
    rec.param("seed", params.seed);
    rec.param("trials", trials);
    let om = omega_report(n, params)?;
    let members = omega_codes(&om);
    rec.note("omega_size", members.len());
    rec.note("omega_conclusion", &om.conclusion);
    let listed: Vec<Tournament> = om.members.iter().map(|m| m.code.tournament()).collect();
    let outcomes = check_each(&listed, |t| {
        let mut o = Outcome::one();
        o.check(has_large_indecomposable_interval(t), || {
            Violation::new(t, "an indecomposable interval missing at most 2 vertices", "none")
        });
        Ok(o)
    })?;
    rec.add_all(outcomes);
    let hypothesis = AtomicU64::new(0);
    let outcomes = check_indexed(trials, |i| {
        let t = random_decomposable_with(&mut instance_rng(params.seed, i), n)?;
        let mut o = Outcome::one();
        if !has_large_indecomposable_interval(&t) {
            hypothesis.fetch_add(1, Ordering::Relaxed);
            o.check(!members.contains(&canonical_form(&t)?), || {
                Violation::new(&t, "outside Omega_n", "member of Omega_n")
            });
        }
        Ok(o)
    })?;
    rec.add_all(outcomes);
    rec.note("random_instances_meeting_hypothesis", hypothesis.into_inner());
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hereditary_pairs_are_hereditarily_isomorphic() {
        for i in 0..20 {
            let (t, u, blocks) = hereditary_pair(&mut instance_rng(5, i)).unwrap();
            assert!(t.n() <= 10);
            for a in t.vertices().subsets().filter(|a| !a.is_empty()) {
                assert_eq!(sub_canonical(&t, a), sub_canonical(&u, a));
            }
            let p = Partition::new(t.n(), blocks).unwrap();
            assert_eq!(quotient(&t, &p).unwrap(), quotient(&u, &p).unwrap());
        }
    }
}
