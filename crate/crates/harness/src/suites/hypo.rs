//! Hypomorphy: the counting lemma, descent between subset sizes, and what
//! {3}-hypomorphy preserves.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tk_core::canon::sub_canonical;
use tk_core::decomposition::{
    gallai_partition, intervals, is_indecomposable, is_indecomposable_on, is_interval,
    is_strongly_connected, is_strongly_connected_on, quotient,
};
use tk_core::diamonds::{diamond_on, embeds_diamond};
use tk_core::families::{instance_rng, random_decomposable_with};
use tk_core::hypomorphy::{combinatorial_lemma_check, hypomorphic, three_hypomorphs_bounded, HypoSpec};
use tk_core::{Tournament, VertexSet};

use super::{check_each, check_indexed, classes, dominated_by, dominating};
use crate::error::{invalid, Result};
use crate::pairs::random_candidate;
use crate::params::{Mode, Params};
use crate::report::{Outcome, Recorder, Report, Violation};

fn render_family(f: &[VertexSet]) -> String {
    let parts: Vec<String> = f.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

/// A random instance satisfying the hypothesis. Below `2p + r` elements the
/// difference of the families is a trade: `t + 1` disjoint pairs (with
/// `t = n - p - r`) and a common `(r - 1)`-set, each `(n - p)`-set choosing
/// one element per pair, signed by how many second elements it takes; `U`
/// and `U'` are the complements of the even and odd sets, plus shared
/// random members. From `2p + r` elements on the families are equal.
fn comb_instance(rng: &mut ChaCha8Rng) -> (usize, usize, usize, Vec<VertexSet>, Vec<VertexSet>) {
    let n = rng.random_range(2..=10);
    let p = rng.random_range(1..n);
    let r = rng.random_range(1..=n - p);
    let ground = VertexSet::full(n);
    let all: Vec<VertexSet> = ground.subsets_of_size(p).collect();
    let density: f64 = rng.random_range(0.05..0.5);
    if n >= 2 * p + r {
        let u: Vec<VertexSet> = all.iter().copied().filter(|_| rng.random_bool(density)).collect();
        return (n, p, r, u.clone(), u);
    }
    let t = n - p - r;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let pairs: Vec<(usize, usize)> = (0..=t).map(|i| (order[2 * i], order[2 * i + 1])).collect();
    let common: VertexSet = order[2 * (t + 1)..2 * (t + 1) + r - 1].iter().copied().collect();
    let mut u = Vec::new();
    let mut u2 = Vec::new();
    for choice in 0u32..1 << (t + 1) {
        let mut b = common;
        for (i, &(x, y)) in pairs.iter().enumerate() {
            b = b.with(if choice >> i & 1 == 0 { x } else { y });
        }
        let a = ground.difference(b);
        if choice.count_ones() % 2 == 0 {
            u.push(a);
        } else {
            u2.push(a);
        }
    }
    let trade: BTreeSet<VertexSet> = u.iter().chain(&u2).copied().collect();
    for a in all {
        if !trade.contains(&a) && rng.random_bool(density) {
            u.push(a);
            u2.push(a);
        }
    }
    u.sort_by(|a, b| a.cmp_lex(*b));
    u2.sort_by(|a, b| a.cmp_lex(*b));
    (n, p, r, u, u2)
}

pub(super) fn comb_lemma(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("comb-lemma");
    let trials = params.trials_or(1000);
    rec.param("seed", params.seed);
    rec.param("trials", trials);
    rec.param("ground_n", "2..=10");
    let results = check_indexed(trials, |i| {
        let mut rng = instance_rng(params.seed, i);
        let (n, p, r, u, u2) = comb_instance(&mut rng);
        let out = combinatorial_lemma_check(n, &u, &u2, p, r)?;
        let instance = format!("ground={n} p={p} r={r} U={} U'={}", render_family(&u), render_family(&u2));
        let mut o = Outcome::one();
        if !out.hypothesis {
            o.fail(Violation::raw(instance.clone(), "hypothesis satisfied by construction", "hypothesis fails"));
        }
        o.check(out.conclusion, || Violation::raw(instance, "conclusion holds", "conclusion fails"));
        Ok(o)
    })?;
    rec.add_all(results);
    let (mut trades, mut equal) = (0u64, 0u64);
    for i in 0..trials as u64 {
        let (n, p, r, u, u2) = comb_instance(&mut instance_rng(params.seed, i));
        if n >= 2 * p + r || u == u2 {
            equal += 1;
        } else {
            trades += 1;
        }
    }
    rec.note("instances_with_distinct_families", trades);
    rec.note("instances_with_equal_families", equal);
    Ok(rec.finish())
}

/// `h[s]`: `{s}`-hypomorphic, for `s = 0..=n`.
fn size_profile(t: &Tournament, u: &Tournament, specs: &[HypoSpec]) -> Result<Vec<bool>> {
    let mut h = vec![true; t.n() + 1];
    for s in 1..t.n() {
        h[s] = hypomorphic(t, u, &specs[s])?;
    }
    h[t.n()] = tk_core::are_isomorphic(t, u)?;
    Ok(h)
}

fn descent_check(t: &Tournament, u: &Tournament, specs: &[HypoSpec]) -> Result<Outcome> {
    let n = t.n();
    let h = size_profile(t, u, specs)?;
    let mut o = Outcome::one();
    for p in 1..n {
        if !h[p] {
            continue;
        }
        for (q, &ok) in h.iter().enumerate().take(p.min(n - p) + 1).skip(1) {
            o.check(ok, || {
                Violation::new(t, format!("{{{q}}}-hypomorphic to {} since {{{p}}}-hypomorphic", u.to_tk()), "not")
            });
        }
    }
    if n >= 6 && h[n - 3] {
        o.check(h[1..=3].iter().all(|&b| b), || {
            Violation::new(t, format!("(<=3)-hypomorphic to {}", u.to_tk()), "not")
        });
    }
    Ok(o)
}

fn size_specs(n: usize) -> Result<Vec<HypoSpec>> {
    (0..=n)
        .map(|s| Ok(HypoSpec::single(s.max(1) as i32)?))
        .collect()
}

pub(super) fn hypo_descent(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("hypo-descent");
    let mode = params.mode_or(match params.n {
        None => Mode::Both,
        Some(n) if n <= 6 => Mode::Exhaustive,
        Some(_) => Mode::Random,
    });
    rec.param("mode", mode.as_str());
    rec.param("seed", params.seed);
    if mode.exhaustive() {
        let sizes = params.sizes(3..=6, 2, 6)?;
        rec.param("exhaustive_n", &sizes);
        for &n in &sizes {
            let specs = size_specs(n)?;
            let m = tk_core::tournament::pair_count(n);
            let outcomes = check_each(&classes(n, params)?, |t| {
                let mut total = Outcome::skipped();
                for bits in 0u128..1 << m {
                    let u = Tournament::from_code_bits(n, bits)?;
                    total.absorb(descent_check(t, &u, &specs)?);
                }
                Ok(total)
            })?;
            rec.note(&format!("pairs_n{n}"), outcomes.iter().map(|o| o.checked).sum::<u64>());
            rec.add_all(outcomes);
        }
    }
    if mode.random() {
        let trials = params.trials_or(200);
        let per = 8;
        rec.param("trials", trials);
        rec.param("candidates_per_trial", per);
        let (lo, hi) = match params.n {
            Some(n) if !(7..=12).contains(&n) => return Err(invalid(format!("random hypo-descent needs n in 7..=12, got {n}"))),
            Some(n) => (n, n),
            None => (7, 10),
        };
        rec.param("random_n", format!("{lo}..={hi}"));
        let outcomes = check_indexed(trials, |i| {
            let mut rng = instance_rng(params.seed, i);
            let n = rng.random_range(lo..=hi);
            let specs = size_specs(n)?;
            let t = random_decomposable_with(&mut rng, n)?;
            let p = gallai_partition(&t)?;
            let mut total = Outcome::skipped();
            for _ in 0..per {
                let u = random_candidate(&mut rng, &t, &p, 0.25)?;
                total.absorb(descent_check(&t, &u, &specs)?);
            }
            Ok(total)
        })?;
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}

pub(super) fn inversion(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("inversion");
    let sizes = params.sizes(3..=6, 3, 8)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    for &n in &sizes {
        let all = classes(n, params)?;
        let outcomes = check_each(&all, |t| {
            if !is_indecomposable(t) {
                return Ok(Outcome::skipped());
            }
            let mut o = Outcome::one();
            let found = three_hypomorphs_bounded(t, n.max(7))?;
            let mut expected = vec![*t, t.dual()];
            expected.sort_by_key(Tournament::to_bits);
            o.check(found == expected, || {
                let got: Vec<String> = found.iter().take(8).map(Tournament::to_tk).collect();
                Violation::new(
                    t,
                    format!("exactly T and T* ({})", expected[1].to_tk()),
                    format!("{} tournaments: {}", found.len(), got.join("; ")),
                )
            });
            Ok(o)
        })?;
        rec.note(&format!("indecomposable_classes_n{n}"), outcomes.iter().map(|o| o.checked).sum::<u64>());
        rec.add_all(outcomes);
    }
    Ok(rec.finish())
}

/// Checks every `(T, T')` with `T` a class accepted by `keep` and `T'` any
/// labelled `{3}`-hypomorph of `T`.
fn scan_three_hypo_pairs<K, F>(
    rec: &mut Recorder,
    sizes: &[usize],
    params: &Params,
    keep: K,
    check: F,
) -> Result<()>
where
    K: Fn(&Tournament) -> bool + Sync + Send,
    F: Fn(&Tournament, &Tournament) -> Result<Outcome> + Sync + Send,
{
    for &n in sizes {
        let all = classes(n, params)?;
        let outcomes = check_each(&all, |t| {
            let mut total = Outcome::skipped();
            if !keep(t) {
                return Ok(total);
            }
            for u in three_hypomorphs_bounded(t, n.max(7))? {
                total.absorb(check(t, &u)?);
            }
            Ok(total)
        })?;
        rec.note(&format!("pairs_n{n}"), outcomes.iter().map(|o| o.checked).sum::<u64>());
        rec.add_all(outcomes);
    }
    Ok(())
}

pub(super) fn quotient_dual(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("quotient-dual");
    let sizes = params.sizes(3..=6, 3, 7)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    scan_three_hypo_pairs(&mut rec, &sizes, params, |_| true, |t, u| {
        let mut o = Outcome::one();
        let p = gallai_partition(t)?;
        let pu = gallai_partition(u)?;
        let other = u.to_tk();
        o.check(p == pu, || Violation::new(t, format!("P(T') = {p} for T' = {other}"), format!("{pu}")));
        let (s, su) = (is_strongly_connected(t), is_strongly_connected(u));
        o.check(s == su, || {
            Violation::new(t, format!("same strong connectivity as {other}"), format!("{s} vs {su}"))
        });
        let (d, du) = (is_indecomposable(t), is_indecomposable(u));
        o.check(d == du, || {
            Violation::new(t, format!("same indecomposability as {other}"), format!("{d} vs {du}"))
        });
        if s && p == pu {
            let q = quotient(t, &p)?;
            let qu = quotient(u, &p)?;
            o.check(qu == q || qu == q.dual(), || {
                Violation::new(t, format!("T'/P(T) equal or dual to {} for T' = {other}", q.to_tk()), qu.to_tk())
            });
        }
        Ok(o)
    })?;
    Ok(rec.finish())
}

pub(super) fn interval_transfer(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("interval-transfer");
    let sizes = params.sizes(3..=6, 3, 7)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    scan_three_hypo_pairs(&mut rec, &sizes, params, |_| true, |t, u| {
        let mut o = Outcome::one();
        for i in intervals(t) {
            if i.len() < 2 || !is_strongly_connected_on(t, i)? {
                continue;
            }
            o.check(is_interval(u, i)?, || {
                Violation::new(t, format!("{i} an interval of {}", u.to_tk()), "not an interval")
            });
        }
        Ok(o)
    })?;
    Ok(rec.finish())
}

/// Intervals `I` with `|I| >= 3` and `T[I]` indecomposable, other than `V`.
fn indecomposable_intervals(t: &Tournament) -> Vec<VertexSet> {
    intervals(t)
        .into_iter()
        .filter(|&i| i.len() >= 3 && i.len() < t.n() && is_indecomposable_on(t, i))
        .collect()
}

pub(super) fn prop_degre(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("prop-degre");
    let sizes = params.sizes(6..=7, 6, 8)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    let applied = std::sync::Mutex::new([0u64; 3]);
    scan_three_hypo_pairs(
        &mut rec,
        &sizes,
        params,
        |t| !indecomposable_intervals(t).is_empty(),
        |t, u| {
            let n = t.n();
            let m2 = hypomorphic(t, u, &HypoSpec::single(-2)?)?;
            let m3 = hypomorphic(t, u, &HypoSpec::single(-3)?)?;
            let mut o = Outcome::one();
            let mut used = [0u64; 3];
            let other = u.to_tk();
            for i in indecomposable_intervals(t) {
                let out = n - i.len();
                let iso = sub_canonical(t, i) == sub_canonical(u, i);
                let (plus, minus) = (dominated_by(t, i), dominating(t, i));
                let (plus_u, minus_u) = (dominated_by(u, i), dominating(u, i));
                if (m2 && out >= 2) || (m3 && out >= 3) {
                    used[0] += 1;
                    o.check(iso, || Violation::new(t, format!("T[{i}] ~ T'[{i}] for T' = {other}"), "not isomorphic"));
                }
                if (m2 && out >= 3) || (m3 && out >= 4) {
                    used[1] += 1;
                    let ok = plus.len() == plus_u.len() && minus.len() == minus_u.len();
                    o.check(ok, || {
                        Violation::new(
                            t,
                            format!("|I+|, |I-| of {i} equal in T' = {other}"),
                            format!("{}/{} vs {}/{}", plus.len(), minus.len(), plus_u.len(), minus_u.len()),
                        )
                    });
                }
                if m3 && out >= 4 {
                    used[2] += 1;
                    let ok = iso && plus == plus_u && minus == minus_u;
                    o.check(ok, || {
                        Violation::new(
                            t,
                            format!("I+ = {plus}, I- = {minus} for {i} in T' = {other}"),
                            format!("I+ = {plus_u}, I- = {minus_u}"),
                        )
                    });
                }
            }
            let mut a = applied.lock().expect("counter");
            for k in 0..3 {
                a[k] += used[k];
            }
            Ok(o)
        },
    )?;
    let a = applied.into_inner().expect("counter");
    rec.note("isomorphic_interval_applications", a[0]);
    rec.note("equal_sizes_applications", a[1]);
    rec.note("equal_sets_applications", a[2]);
    Ok(rec.finish())
}

pub(super) fn remark7(params: &Params) -> Result<Report> {
    let mut rec = Recorder::new("remark7");
    let sizes = params.sizes(4..=6, 4, 7)?;
    rec.param("mode", "exhaustive");
    rec.param("n", &sizes);
    let four = classes(4, params)?;
    let mut o = Outcome::one();
    o.check(four.len() == 4, || {
        Violation::raw("catalog n=4", "four classes", format!("{} classes", four.len()))
    });
    for t in &four {
        o.check(!is_indecomposable(t), || Violation::new(t, "decomposable", "indecomposable"));
    }
    rec.add(o);
    let up_to_4 = HypoSpec::up_to(4)?;
    let four_spec = HypoSpec::single(4)?;
    scan_three_hypo_pairs(&mut rec, &sizes, params, |_| true, |t, u| {
        let mut o = Outcome::one();
        let lhs = hypomorphic(t, u, &up_to_4)?;
        let rhs = t.vertices().subsets_of_size(4).all(|x| {
            let diamond = diamond_on(t, x).is_some() || diamond_on(u, x).is_some();
            !diamond || sub_canonical(t, x) == sub_canonical(u, x)
        });
        o.check(lhs == rhs, || {
            Violation::new(
                t,
                format!("(<=4)-hypomorphy to {} iff diamonds agree", u.to_tk()),
                format!("(<=4)-hypomorphic={lhs}, diamonds agree={rhs}"),
            )
        });
        if !embeds_diamond(t) {
            o.check(hypomorphic(t, u, &four_spec)?, || {
                Violation::new(t, format!("diamond-free, so {{4}}-hypomorphic to {}", u.to_tk()), "not")
            });
        }
        Ok(o)
    })?;
    Ok(rec.finish())
}
