//! Constructed candidate pairs `(T, T')` sharing an interval partition.
//!
//! `T'` keeps the partition of `T`, replaces each block by a variant of the
//! original block and keeps or reverses the quotient. Candidates are not
//! hypomorphic in general; suites filter them with an actual hypomorphy
//! check before testing a statement on them.

use rand::seq::IndexedRandom;
use rand::Rng;
use tk_core::decomposition::quotient;
use tk_core::families::random_relabel;
use tk_core::hypomorphy::three_hypomorphs;
use tk_core::{Partition, Result, Tournament};

/// Blocks this large or larger only get the cheap variants.
const HYPOMORPH_BLOCK_LIMIT: usize = 6;

/// How a block of `T'` is obtained from the block of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockVariant {
    Same,
    Relabel,
    Dual,
    /// A `{3}`-hypomorph of the block drawn at random.
    ThreeHypomorph,
}

impl BlockVariant {
    pub const ALL: [BlockVariant; 4] = [
        BlockVariant::Same,
        BlockVariant::Relabel,
        BlockVariant::Dual,
        BlockVariant::ThreeHypomorph,
    ];
}

/// The tournament whose block `i` carries `blocks[i]` (on the block's
/// vertices in increasing order) and whose arcs between blocks follow `q`.
pub fn reassemble(p: &Partition, blocks: &[Tournament], q: &Tournament) -> Result<Tournament> {
    let n = p.n();
    let mut pos = vec![0usize; n];
    let mut owner = vec![0usize; n];
    for (b, block) in p.blocks().iter().enumerate() {
        for (i, v) in block.iter().enumerate() {
            pos[v] = i;
            owner[v] = b;
        }
    }
    if blocks.len() != p.len() || q.n() != p.len() {
        return Err(tk_core::Error::PartCountMismatch {
            expected: p.len(),
            got: blocks.len(),
        });
    }
    Tournament::from_fn(n, |i, j| {
        if owner[i] == owner[j] {
            blocks[owner[i]].beats(pos[i], pos[j])
        } else {
            q.beats(owner[i], owner[j])
        }
    })
}

pub fn block_variant<R: Rng>(rng: &mut R, block: &Tournament, variant: BlockVariant) -> Result<Tournament> {
    Ok(match variant {
        BlockVariant::Same => *block,
        BlockVariant::Relabel => random_relabel(rng, block)?,
        BlockVariant::Dual => block.dual(),
        BlockVariant::ThreeHypomorph if block.n() <= HYPOMORPH_BLOCK_LIMIT => {
            let all = three_hypomorphs(block)?;
            all.choose(rng).cloned().unwrap_or(*block)
        }
        BlockVariant::ThreeHypomorph => random_relabel(rng, block)?,
    })
}

/// A random candidate `T'` over the interval partition `p` of `t`.
/// The quotient is reversed with probability `dual_quotient`.
pub fn random_candidate<R: Rng>(rng: &mut R, t: &Tournament, p: &Partition, dual_quotient: f64) -> Result<Tournament> {
    let q = quotient(t, p)?;
    let blocks = p
        .blocks()
        .iter()
        .map(|&b| {
            let original = t.restrict(b)?;
            let variant = *BlockVariant::ALL.choose(rng).expect("non-empty");
            block_variant(rng, &original, variant)
        })
        .collect::<Result<Vec<_>>>()?;
    let q = if rng.random_bool(dual_quotient) { q.dual() } else { q };
    reassemble(p, &blocks, &q)
}
