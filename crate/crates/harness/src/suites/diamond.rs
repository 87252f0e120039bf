//! Diamonds and {-k}-self duality.

use rand::Rng;
use tk_core::decomposition::{intervals, is_decomposable};
use tk_core::diamonds::{all_center_counts, diamond_cover, embeds_diamond, pair_stats};
use tk_core::families::{instance_rng, random_tournament_with};
use tk_core::hypomorphy::{self_dual_profile, size_self_dual};
use tk_core::{Tournament, VertexSet};

use super::{check_indexed, scan_classes};
use crate::error::{invalid, Result};
use crate::params::{Mode, Params};
use crate::report::{Outcome, Recorder, Report, Violation};

fn has_pair_interval(t: &Tournament) -> bool {
    intervals(t).iter().any(|i| i.len() == 2)
}

fn minus_self_dual(t: &Tournament, k: usize) -> bool {
    size_self_dual(t, t.n() - k)
}

pub(super) fn diamond_free_selfdual(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("diamond-free-selfdual");
    let sizes = params.sizes(9..=9, 9, 10)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    let hits = std::sync::atomic::AtomicU64::new(0);
    scan_classes(&mut rec, &sizes, params, |t| {
        if embeds_diamond(t) {
            return Ok(Outcome::skipped());
        }
        let mut o = Outcome::one();
        let m3 = minus_self_dual(t, 3);
        let strong = self_dual_profile(t, 0)?.strongly_self_dual;
        if m3 {
            hits.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        o.check(m3 == strong, || {
            Violation::new(
                t,
                "{-3}-self dual iff strongly self dual",
                format!("{{-3}}-self dual={m3}, strongly self dual={strong}"),
            )
        });
        Ok(o)
    })?;
    rec.note("diamond_free_minus3_self_dual", hits.into_inner());
    Ok(rec.finish())
}

fn cover_check(t: &Tournament) -> Outcome {
    if !embeds_diamond(t) {
        return Outcome::skipped();
    }
    let mut o = Outcome::one();
    let cover = diamond_cover(t);
    o.check(cover == t.vertices(), || {
        Violation::new(t, "every vertex in a diamond", format!("diamond vertices {cover}"))
    });
    o
}

pub(super) fn vertex_in_diamond(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("vertex-in-diamond");
    let mode = params.mode_or(match params.n {
        None => Mode::Both,
        Some(n) if n <= 9 => Mode::Exhaustive,
        Some(_) => Mode::Random,
    });
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    if mode.exhaustive() {
        let sizes = params.sizes(4..=8, 4, 9)?;
        rec.param("exhaustive_n", &sizes);
        scan_classes(&mut rec, &sizes, params, |t| Ok(cover_check(t)))?;
    }
    if mode.random() {
        let trials = params.trials_or(1000);
        let (lo, hi) = match params.n {
            Some(n) if !(4..=16).contains(&n) => return Err(invalid(format!("n must lie in 4..=16, got {n}"))),
            Some(n) => (n, n),
            None => (9, 16),
        };
        rec.param("trials", trials);
        rec.param("random_n", format!("{lo}..={hi}"));
        let outcomes = check_indexed(trials, |i| {
            let mut rng = instance_rng(params.seed, i);
            let n = rng.random_range(lo..=hi);
            Ok(cover_check(&random_tournament_with(&mut rng, n)?))
        })?;
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}

pub(super) fn interval2_not_selfdual(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("interval2-not-selfdual");
    let sizes = params.sizes(8..=9, 8, 10)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    scan_classes(&mut rec, &sizes, params, |t| {
        if !has_pair_interval(t) || !embeds_diamond(t) {
            return Ok(Outcome::skipped());
        }
        let mut o = Outcome::one();
        o.check(!minus_self_dual(t, 3), || {
            Violation::new(t, "not {-3}-self dual", "{-3}-self dual")
        });
        Ok(o)
    })?;
    Ok(rec.finish())
}

pub(super) fn center_everywhere(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("center-everywhere");
    let sizes = params.sizes(7..=8, 7, 9)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    scan_classes(&mut rec, &sizes, params, |t| {
        if !embeds_diamond(t) || !minus_self_dual(t, 3) {
            return Ok(Outcome::skipped());
        }
        let mut o = Outcome::one();
        let centers: VertexSet = all_center_counts(t)
            .iter()
            .enumerate()
            .filter(|(_, &(p, m))| p + m > 0)
            .map(|(v, _)| v)
            .collect();
        o.check(centers == t.vertices(), || {
            Violation::new(t, "every vertex a center", format!("centers {centers}"))
        });
        Ok(o)
    })?;
    Ok(rec.finish())
}

pub(super) fn pair_interval_balance(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("pair-interval-balance");
    let sizes = params.sizes(7..=8, 7, 9)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    let balanced = std::sync::atomic::AtomicU64::new(0);
    scan_classes(&mut rec, &sizes, params, |t| {
        let pairs: Vec<VertexSet> = intervals(t).into_iter().filter(|i| i.len() == 2).collect();
        let mut o = Outcome::skipped();
        if pairs.is_empty() {
            return Ok(o);
        }
        let n = t.n();
        let applies = (n >= 7 && minus_self_dual(t, 2)) || (n >= 8 && minus_self_dual(t, 3));
        let counts = all_center_counts(t);
        for pair in pairs {
            o.checked += 1;
            let v = pair.to_vec();
            let (a, b) = (v[0], v[1]);
            let s = pair_stats(t, a, b)?;
            let through = s.through_pair_plus + s.through_pair_minus;
            o.check(s.decomposition_holds() && through == 0, || {
                Violation::new(
                    t,
                    format!("no diamond through the interval {pair}, counts split into three terms"),
                    format!("{through} diamonds through it"),
                )
            });
            if applies {
                balanced.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                for x in [a, b] {
                    let (p, m) = counts[x];
                    o.check(p == m, || {
                        Violation::new(t, format!("delta+({x}) = delta-({x})"), format!("{p} vs {m}"))
                    });
                }
            }
        }
        Ok(o)
    })?;
    rec.note("balance_applications", balanced.into_inner());
    Ok(rec.finish())
}

pub(super) fn decomposable_diamond(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("decomposable-diamond");
    let sizes = params.sizes(8..=8, 8, 10)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    scan_classes(&mut rec, &sizes, params, |t| {
        if !is_decomposable(t) || !embeds_diamond(t) {
            return Ok(Outcome::skipped());
        }
        let mut o = Outcome::one();
        o.check(!minus_self_dual(t, 3), || {
            Violation::new(t, "not {-3}-self dual", "{-3}-self dual")
        });
        Ok(o)
    })?;
    Ok(rec.finish())
}
