//! Interval structure: Gallai partition, strong subsets, extensions of
//! indecomposable subtournaments.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tk_core::decomposition::{
    ext_partition, gallai_partition, indec_extend_pair, is_indecomposable, is_indecomposable_on,
    is_interval, is_strongly_connected, moon_extend, quotient, scc_order,
};
use tk_core::families::{instance_rng, random_tournament_with};
use tk_core::shape::is_transitive;
use tk_core::{Partition, Tournament, VertexSet};

use super::{check_indexed, draw_until, mixed_random, scan_classes};
use crate::error::Result;
use crate::params::{Mode, Params};
use crate::report::{Outcome, Recorder, Report, Violation};

fn gallai_check(t: &Tournament) -> Result<Outcome> {
    let mut o = Outcome::one();
    if t.n() < 2 {
        return Ok(o);
    }
    let p = gallai_partition(t)?;
    let q = quotient(t, &p)?;
    let strong = is_strongly_connected(t);
    let q_transitive = is_transitive(&q);
    o.check(strong != q_transitive, || {
        Violation::new(
            t,
            "T/P(T) transitive exactly when T is not strongly connected",
            format!("strongly connected={strong}, quotient transitive={q_transitive}"),
        )
    });
    if strong {
        let ok = p.len() >= 3 && is_indecomposable(&q);
        o.check(ok, || {
            Violation::new(
                t,
                "T/P(T) indecomposable with at least 3 vertices",
                format!("quotient {} on {} blocks", q.to_tk(), p.len()),
            )
        });
    } else {
        let sccs = Partition::new(t.n(), scc_order(t))?;
        o.check(sccs == p, || {
            Violation::new(t, format!("P(T) = strong components {sccs}"), format!("P(T) = {p}"))
        });
    }
    Ok(o)
}

pub(super) fn gallai(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("gallai");
    let exhaustive_ok = params.n.is_none_or(|n| n <= 9);
    let mode = params.mode_or(match params.n {
        None => Mode::Both,
        Some(_) if exhaustive_ok => Mode::Exhaustive,
        Some(_) => Mode::Random,
    });
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    if mode.exhaustive() {
        let sizes = params.sizes(2..=9, 2, 9)?;
        rec.param("exhaustive_n", &sizes);
        scan_classes(&mut rec, &sizes, params, gallai_check)?;
    }
    if mode.random() {
        if let Some(n) = params.n {
            if !(2..=16).contains(&n) {
                return Err(crate::error::invalid(format!("random gallai needs n in 2..=16, got {n}")));
            }
        }
        let trials = params.trials_or(10_000);
        rec.param("trials", trials);
        rec.param("random_n", params.n.map_or("2..=16".to_string(), |n| n.to_string()));
        let outcomes = check_indexed(trials, |i| {
            let mut rng = instance_rng(params.seed, i);
            let n = params.n.unwrap_or_else(|| rng.random_range(2..=16));
            gallai_check(&mixed_random(&mut rng, n)?)
        })?;
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}

fn moon_check(t: &Tournament) -> Result<Outcome> {
    let mut o = Outcome::one();
    for x in t.vertices() {
        for k in 3..=t.n() {
            match moon_extend(t, x, k) {
                Ok(s) => {
                    let ok = s.len() == k
                        && s.contains(x)
                        && scc_order(&t.restrict(s)?).len() == 1;
                    o.check(ok, || {
                        Violation::new(
                            t,
                            format!("strongly connected {k}-set containing {x}"),
                            format!("{s}"),
                        )
                    });
                }
                Err(e) => o.fail(Violation::new(
                    t,
                    format!("strongly connected {k}-set containing {x}"),
                    e.to_string(),
                )),
            }
        }
    }
    Ok(o)
}

pub(super) fn moon(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("moon");
    let mode = params.mode_or(Mode::Random);
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    if mode.exhaustive() {
        let sizes = params.sizes(3..=7, 3, 9)?;
        rec.param("exhaustive_n", &sizes);
        scan_classes(&mut rec, &sizes, params, |t| {
            if is_strongly_connected(t) {
                moon_check(t)
            } else {
                Ok(Outcome::skipped())
            }
        })?;
    }
    if mode.random() {
        let trials = params.trials_or(500);
        rec.param("trials", trials);
        let range = random_range(params, 3, 16)?;
        rec.param("random_n", format!("{}..={}", range.0, range.1));
        let outcomes = check_indexed(trials, |i| {
            let mut rng = instance_rng(params.seed, i);
            let n = rng.random_range(range.0..=range.1);
            let t = draw_until(&mut rng, |r| mixed_random(r, n), is_strongly_connected)?;
            moon_check(&t)
        })?;
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}

/// `(lo, hi)` for random sizes: the given `n` or the default range.
fn random_range(params: &Params, lo: usize, hi: usize) -> Result<(usize, usize)> {
    match params.n {
        Some(n) if n < lo || n > 16 => Err(crate::error::invalid(format!("n must lie in {lo}..=16, got {n}"))),
        Some(n) => Ok((n, n)),
        None => Ok((lo, hi)),
    }
}

/// A random 3-cycle grown by random vertices of `Ext(X)` towards `target`
/// vertices; `None` when `t` has no 3-cycle.
fn random_indecomposable_set(rng: &mut ChaCha8Rng, t: &Tournament, target: usize) -> Option<VertexSet> {
    let cycles: Vec<VertexSet> = t
        .vertices()
        .subsets_of_size(3)
        .filter(|s| {
            let v = s.to_vec();
            t.is_cyclic_triple(v[0], v[1], v[2])
        })
        .collect();
    let mut x = *cycles.choose(rng)?;
    while x.len() < target {
        let ext: Vec<usize> = t
            .vertices()
            .difference(x)
            .iter()
            .filter(|&v| is_indecomposable_on(t, x.with(v)))
            .collect();
        match ext.choose(rng) {
            Some(&v) => x = x.with(v),
            None => break,
        }
    }
    Some(x)
}

fn position(set: VertexSet, v: usize) -> usize {
    set.iter().position(|w| w == v).expect("member")
}

/// Lemma check with the three classes recomputed from restrictions.
fn ext_check(t: &Tournament, x: VertexSet) -> Result<Outcome> {
    let mut o = Outcome::one();
    let expected = format!("Ext, [X] and X(u) partition V \\ {x}");
    if let Err(e) = ext_partition(t, x) {
        o.fail(Violation::new(t, expected.clone(), e.to_string()));
        return Ok(o);
    }
    for v in t.vertices().difference(x) {
        let y = x.with(v);
        let sub = t.restrict(y)?;
        let local = |s: VertexSet| -> VertexSet { s.iter().map(|w| position(y, w)).collect() };
        let mut count = usize::from(is_indecomposable(&sub));
        count += usize::from(is_interval(&sub, local(x))?);
        for u in x {
            count += usize::from(is_interval(&sub, local(VertexSet::from([u, v])))?);
        }
        o.check(count == 1, || {
            Violation::new(t, expected.clone(), format!("vertex {v} lies in {count} classes"))
        });
    }
    Ok(o)
}

pub(super) fn ext_partition_suite(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("ext-partition");
    let mode = params.mode_or(Mode::Random);
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    if mode.exhaustive() {
        let sizes = params.sizes(4..=7, 4, 8)?;
        rec.param("exhaustive_n", &sizes);
        scan_classes(&mut rec, &sizes, params, |t| {
            let mut total = Outcome::skipped();
            for k in 3..t.n() {
                for x in t.vertices().subsets_of_size(k) {
                    if is_indecomposable_on(t, x) {
                        total.absorb(ext_check(t, x)?);
                    }
                }
            }
            Ok(total)
        })?;
    }
    if mode.random() {
        let trials = params.trials_or(500);
        rec.param("trials", trials);
        let range = random_range(params, 4, 16)?;
        rec.param("random_n", format!("{}..={}", range.0, range.1));
        let outcomes = check_indexed(trials, |i| {
            let mut rng = instance_rng(params.seed, i);
            let n = rng.random_range(range.0..=range.1);
            loop {
                let t = mixed_random(&mut rng, n)?;
                let target = rng.random_range(3..n);
                if let Some(x) = random_indecomposable_set(&mut rng, &t, target) {
                    return ext_check(&t, x);
                }
            }
        })?;
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}

fn indec_check(t: &Tournament, x: VertexSet) -> Result<Outcome> {
    let mut o = Outcome::one();
    let expected = format!("x != y outside {x} with T[X + {{x, y}}] indecomposable");
    match indec_extend_pair(t, x) {
        Ok((a, b)) => {
            let ok = a != b
                && !x.contains(a)
                && !x.contains(b)
                && is_indecomposable(&t.restrict(x.with(a).with(b))?);
            o.check(ok, || Violation::new(t, expected.clone(), format!("pair ({a}, {b})")));
        }
        Err(e) => o.fail(Violation::new(t, expected, e.to_string())),
    }
    Ok(o)
}

pub(super) fn indec_extend(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("indec-extend");
    let mode = params.mode_or(Mode::Random);
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    if mode.exhaustive() {
        let sizes = params.sizes(5..=7, 5, 8)?;
        rec.param("exhaustive_n", &sizes);
        scan_classes(&mut rec, &sizes, params, |t| {
            let mut total = Outcome::skipped();
            if !is_indecomposable(t) {
                return Ok(total);
            }
            for k in 3..=t.n() - 2 {
                for x in t.vertices().subsets_of_size(k) {
                    if is_indecomposable_on(t, x) {
                        total.absorb(indec_check(t, x)?);
                    }
                }
            }
            Ok(total)
        })?;
    }
    if mode.random() {
        let trials = params.trials_or(500);
        rec.param("trials", trials);
        let range = random_range(params, 5, 14)?;
        rec.param("random_n", format!("{}..={}", range.0, range.1));
        let outcomes = check_indexed(trials, |i| {
            let mut rng = instance_rng(params.seed, i);
            let n = rng.random_range(range.0..=range.1);
            loop {
                let t = draw_until(&mut rng, |r| Ok(random_tournament_with(r, n)?), is_indecomposable)?;
                let target = rng.random_range(3..=n - 2);
                if let Some(x) = random_indecomposable_set(&mut rng, &t, target) {
                    return indec_check(&t, x);
                }
            }
        })?;
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}
