//! Diamonds (a 3-cycle together with a vertex it dominates or is dominated
//! by) and the counting statistics built on them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::tournament::Tournament;

/// A 4-set inducing a diamond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DiamondRecord {
    pub verts: VertexSet,
    /// `+1` when the cycle dominates the center, `-1` when the center
    /// dominates the cycle.
    pub sign: i8,
    pub center: usize,
    pub cycle: VertexSet,
}

impl DiamondRecord {
    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }
}

fn is_three_cycle_on(t: &Tournament, set: VertexSet) -> bool {
    let m = set.mask();
    set.iter().all(|v| (t.out_mask(v) & m).count_ones() == 1)
}

/// The diamond induced by a 4-set, if any.
pub fn diamond_on(t: &Tournament, verts: VertexSet) -> Option<DiamondRecord> {
    debug_assert_eq!(verts.len(), 4);
    let m = verts.mask();
    for v in verts {
        let outs = t.out_mask(v) & m;
        let sign = if outs == 0 {
            1
        } else if outs == m & !(1 << v) {
            -1
        } else {
            continue;
        };
        let cycle = verts.without(v);
        return is_three_cycle_on(t, cycle).then_some(DiamondRecord {
            verts,
            sign,
            center: v,
            cycle,
        });
    }
    None
}

/// Every diamond, ordered by vertex list.
pub fn diamond_records(t: &Tournament) -> Vec<DiamondRecord> {
    let mut records: Vec<DiamondRecord> = t
        .vertices()
        .subsets_of_size(4)
        .filter_map(|s| diamond_on(t, s))
        .collect();
    records.sort_by(|a, b| a.verts.cmp_lex(b.verts).then(a.sign.cmp(&b.sign)));
    records
}

pub fn embeds_diamond(t: &Tournament) -> bool {
    t.vertices()
        .subsets_of_size(4)
        .any(|s| diamond_on(t, s).is_some())
}

/// Vertices lying in at least one diamond.
pub fn diamond_cover(t: &Tournament) -> VertexSet {
    diamond_records(t)
        .iter()
        .fold(VertexSet::EMPTY, |acc, r| acc.union(r.verts))
}

/// `(δ⁺(x), δ⁻(x))`: positive and negative diamonds centered at `x`.
pub fn center_counts(t: &Tournament, x: usize) -> Result<(usize, usize)> {
    t.check_vertex(x)?;
    Ok(count_centers(&diamond_records(t), x))
}

fn count_centers(records: &[DiamondRecord], x: usize) -> (usize, usize) {
    records
        .iter()
        .filter(|r| r.center == x)
        .fold((0, 0), |(p, m), r| if r.is_positive() { (p + 1, m) } else { (p, m + 1) })
}

/// `(δ⁺(v), δ⁻(v))` for every vertex.
pub fn all_center_counts(t: &Tournament) -> Vec<(usize, usize)> {
    let records = diamond_records(t);
    (0..t.n()).map(|v| count_centers(&records, v)).collect()
}

/// Diamond counts attached to a pair of vertices `x != y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDiamondStats {
    pub x: usize,
    pub y: usize,
    /// `w` with `{x, y, w}` a 3-cycle.
    pub cycle_mates: VertexSet,
    /// Diamonds whose cycle contains both `x` and `y`.
    pub d_plus_cycle: usize,
    pub d_minus_cycle: usize,
    /// `w -> (plus, minus)`: diamonds whose cycle is `{x, y, w}`.
    pub per_mate: BTreeMap<usize, (usize, usize)>,
    /// Diamonds containing both `x` and `y`.
    pub through_pair_plus: usize,
    pub through_pair_minus: usize,
    /// Diamonds through `x` centered at `y`.
    pub centered_at_y_plus: usize,
    pub centered_at_y_minus: usize,
    /// Diamonds through `y` centered at `x`.
    pub centered_at_x_plus: usize,
    pub centered_at_x_minus: usize,
}

impl PairDiamondStats {
    /// A diamond through `x` and `y` has both in its cycle or one of them as
    /// center, so the pair count splits into three terms.
    pub fn decomposition_holds(&self) -> bool {
        self.through_pair_plus
            == self.centered_at_x_plus + self.centered_at_y_plus + self.d_plus_cycle
            && self.through_pair_minus
                == self.centered_at_x_minus + self.centered_at_y_minus + self.d_minus_cycle
    }

    pub fn summation_holds(&self) -> bool {
        let (p, m) = self
            .per_mate
            .values()
            .fold((0, 0), |(p, m), &(a, b)| (p + a, m + b));
        p == self.d_plus_cycle && m == self.d_minus_cycle
    }
}

pub fn pair_stats(t: &Tournament, x: usize, y: usize) -> Result<PairDiamondStats> {
    t.check_vertex(x)?;
    t.check_vertex(y)?;
    if x == y {
        return Err(Error::Precondition("pair statistics need x != y".into()));
    }
    let cycle_mates: VertexSet = t
        .vertices()
        .difference(VertexSet::from([x, y]))
        .iter()
        .filter(|&w| t.is_cyclic_triple(x, y, w))
        .collect();
    let mut s = PairDiamondStats {
        x,
        y,
        cycle_mates,
        d_plus_cycle: 0,
        d_minus_cycle: 0,
        per_mate: cycle_mates.iter().map(|w| (w, (0, 0))).collect(),
        through_pair_plus: 0,
        through_pair_minus: 0,
        centered_at_y_plus: 0,
        centered_at_y_minus: 0,
        centered_at_x_plus: 0,
        centered_at_x_minus: 0,
    };
    fn bump(pos: bool, plus: &mut usize, minus: &mut usize) {
        if pos {
            *plus += 1;
        } else {
            *minus += 1;
        }
    }
    for r in diamond_records(t) {
        if !(r.verts.contains(x) && r.verts.contains(y)) {
            continue;
        }
        let pos = r.is_positive();
        bump(pos, &mut s.through_pair_plus, &mut s.through_pair_minus);
        if r.center == y {
            bump(pos, &mut s.centered_at_y_plus, &mut s.centered_at_y_minus);
        } else if r.center == x {
            bump(pos, &mut s.centered_at_x_plus, &mut s.centered_at_x_minus);
        } else {
            bump(pos, &mut s.d_plus_cycle, &mut s.d_minus_cycle);
            let w = r.cycle.difference(VertexSet::from([x, y])).first().expect("3-set");
            let entry = s.per_mate.get_mut(&w).ok_or_else(|| {
                Error::Violation(format!("cycle {} is not a 3-cycle through {x},{y}", r.cycle))
            })?;
            if pos {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
    }
    if !s.summation_holds() {
        return Err(Error::Violation(format!(
            "diamond counts on cycles through {x},{y} do not sum over cycle mates"
        )));
    }
    Ok(s)
}
