//! The tournament value type.
//!
//! A tournament on `n` vertices is stored as one out-neighbourhood mask per
//! vertex. The external encoding is one bit per pair `(i, j)` with `i < j`,
//! pairs in lexicographic order `(0,1), (0,2), .., (n-2,n-1)`, bit `1`
//! meaning `i -> j`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::set::VertexSet;

pub const MAX_VERTICES: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: u8,
    out: [u32; MAX_VERTICES],
}

/// Number of arc bits for `n` vertices.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of pair `(i, j)`, `i < j`, in the lexicographic pair order.
pub const fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl Tournament {
    fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Tournament {
            n: n as u8,
            out: [0; MAX_VERTICES],
        })
    }

    /// Builds a tournament from its arc bits.
    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        let mut t = Self::empty(n)?;
        let expected = pair_count(n);
        if bits.len() != expected {
            return Err(Error::SizeMismatch {
                expected,
                got: bits.len(),
            });
        }
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                t.set_arc(i, j, bits[k]);
                k += 1;
            }
        }
        Ok(t)
    }

    /// Builds a tournament from a string of `0`/`1` characters.
    pub fn from_bit_str(n: usize, bits: &str) -> Result<Self> {
        let parsed = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(n, &parsed)
    }

    /// Builds a tournament where `i -> j` (for `i < j`) iff `forward(i, j)`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut t = Self::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                t.set_arc(i, j, forward(i, j));
            }
        }
        Ok(t)
    }

    /// Builds a tournament from out-neighbourhood masks. The masks must
    /// describe a tournament; this is checked.
    pub fn from_out_masks(masks: &[u32]) -> Result<Self> {
        let n = masks.len();
        let mut t = Self::empty(n)?;
        let full = VertexSet::full(n).mask();
        for (v, &m) in masks.iter().enumerate() {
            if m & !full != 0 || m >> v & 1 == 1 {
                return Err(Error::Precondition(format!("bad out mask for vertex {v}")));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let fwd = masks[i] >> j & 1 == 1;
                let back = masks[j] >> i & 1 == 1;
                if fwd == back {
                    return Err(Error::Precondition(format!(
                        "pair ({i},{j}) is not oriented exactly once"
                    )));
                }
            }
            t.out[i] = masks[i];
        }
        Ok(t)
    }

    /// The transitive tournament `O_n`: `i -> j` iff `i < j`.
    pub fn transitive(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    /// The one-vertex tournament.
    pub fn point() -> Self {
        Self::empty(1).expect("one vertex is valid")
    }

    #[inline]
    fn set_arc(&mut self, i: usize, j: usize, forward: bool) {
        if forward {
            self.out[i] |= 1 << j;
            self.out[j] &= !(1 << i);
        } else {
            self.out[j] |= 1 << i;
            self.out[i] &= !(1 << j);
        }
    }

    /// Orients the pair `{u, v}` as `u -> v`.
    pub(crate) fn orient(&mut self, u: usize, v: usize) {
        self.out[u] |= 1 << v;
        self.out[v] &= !(1 << u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Does `u` dominate `v`?
    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    #[inline]
    pub fn out_set(&self, v: usize) -> VertexSet {
        VertexSet::from_mask(self.out[v])
    }

    #[inline]
    pub fn in_set(&self, v: usize) -> VertexSet {
        self.vertices().difference(self.out_set(v)).without(v)
    }

    #[inline]
    pub(crate) fn out_mask(&self, v: usize) -> u32 {
        self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    /// Out-degrees in vertex order.
    pub fn score_sequence(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.out_degree(v)).collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn check_set(&self, set: VertexSet) -> Result<()> {
        match set.last() {
            Some(v) if v >= self.n() => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            }),
            _ => Ok(()),
        }
    }

    /// Arc bits in pair order.
    pub fn to_bits(&self) -> Vec<bool> {
        let n = self.n();
        let mut bits = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                bits.push(self.beats(i, j));
            }
        }
        bits
    }

    pub fn bit_string(&self) -> String {
        self.to_bits()
            .into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect()
    }

    /// Arc bits packed into an integer, first pair most significant.
    /// Only meaningful for `n <= 16`.
    pub fn code_bits(&self) -> u128 {
        debug_assert!(self.n() <= 16);
        let n = self.n();
        let mut code = 0u128;
        for i in 0..n {
            for j in i + 1..n {
                code = code << 1 | u128::from(self.beats(i, j));
            }
        }
        code
    }

    /// Inverse of [`Tournament::code_bits`].
    pub fn from_code_bits(n: usize, code: u128) -> Result<Self> {
        if n > 16 {
            return Err(Error::TooManyVertices { n, max: 16 });
        }
        let m = pair_count(n);
        let mut t = Self::empty(n)?;
        let mut k = m;
        for i in 0..n {
            for j in i + 1..n {
                k -= 1;
                t.set_arc(i, j, code >> k & 1 == 1);
            }
        }
        Ok(t)
    }

    /// The dual tournament: every arc reversed.
    #[must_use]
    pub fn dual(&self) -> Self {
        let mut t = *self;
        let full = VertexSet::full(self.n()).mask();
        for v in 0..self.n() {
            t.out[v] = !self.out[v] & full & !(1 << v);
        }
        t
    }

    /// The subtournament induced by `set`, relabelled `0..|set|` in
    /// increasing original order.
    pub fn restrict(&self, set: VertexSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        self.check_set(set)?;
        Ok(self.restrict_unchecked(set))
    }

    pub(crate) fn restrict_unchecked(&self, set: VertexSet) -> Self {
        let verts = set.iter();
        let k = set.len();
        let mut t = Tournament {
            n: k as u8,
            out: [0; MAX_VERTICES],
        };
        let mut idx = [0u8; MAX_VERTICES];
        for (i, v) in verts.enumerate() {
            idx[i] = v as u8;
        }
        for i in 0..k {
            let row = self.out[idx[i] as usize];
            let mut m = 0u32;
            for (j, &w) in idx[..k].iter().enumerate() {
                m |= (row >> w & 1) << j;
            }
            t.out[i] = m;
        }
        t
    }

    /// Packed arc bits of the subtournament induced by `set` (at most 16
    /// vertices), without materialising it.
    #[inline]
    pub fn restricted_code(&self, set: VertexSet) -> u128 {
        let mut idx = [0u8; 16];
        let mut k = 0;
        for v in set.iter() {
            idx[k] = v as u8;
            k += 1;
        }
        let mut code = 0u128;
        for i in 0..k {
            let row = self.out[idx[i] as usize];
            for &w in &idx[i + 1..k] {
                code = code << 1 | u128::from(row >> w & 1);
            }
        }
        code
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = 0u32;
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return Err(Error::Precondition("relabelling is not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut t = Tournament {
            n: self.n,
            out: [0; MAX_VERTICES],
        };
        for u in 0..n {
            let mut m = 0u32;
            for v in self.out_set(u) {
                m |= 1 << perm[v];
            }
            t.out[perm[u]] = m;
        }
        Ok(t)
    }

    /// Lexicographic sum of `parts` over `self`: vertex `x` of `self` is
    /// replaced by `parts[x]`, blocks laid out consecutively.
    pub fn lex_sum(&self, parts: &[Tournament]) -> Result<Self> {
        if parts.len() != self.n() {
            return Err(Error::PartCountMismatch {
                expected: self.n(),
                got: parts.len(),
            });
        }
        let total: usize = parts.iter().map(Tournament::n).sum();
        let mut t = Self::empty(total)?;
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in parts {
            offsets.push(acc);
            acc += p.n();
        }
        for (x, px) in parts.iter().enumerate() {
            for u in 0..px.n() {
                let gu = offsets[x] + u;
                for v in u + 1..px.n() {
                    t.set_arc(gu, offsets[x] + v, px.beats(u, v));
                }
                for (y, py) in parts.iter().enumerate().skip(x + 1) {
                    let fwd = self.beats(x, y);
                    for v in 0..py.n() {
                        t.set_arc(gu, offsets[y] + v, fwd);
                    }
                }
            }
        }
        Ok(t)
    }

    /// Adds a new vertex `n` whose out-neighbourhood is `out`.
    pub fn with_vertex(&self, out: VertexSet) -> Result<Self> {
        self.check_set(out)?;
        let n = self.n();
        let mut t = Self::empty(n + 1)?;
        t.out[..n].copy_from_slice(&self.out[..n]);
        for v in 0..n {
            if out.contains(v) {
                t.orient(n, v);
            } else {
                t.orient(v, n);
            }
        }
        Ok(t)
    }

    /// Is `{a, b, c}` a 3-cycle?
    #[inline]
    pub fn is_cyclic_triple(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.beats(a, b);
        ab == self.beats(b, c) && ab == self.beats(c, a)
    }

    /// `.tk` line: `n=<N> bits=<HEX>`.
    pub fn to_tk(&self) -> String {
        format!("n={} bits={}", self.n(), bits_to_hex(&self.to_bits()))
    }

    pub fn parse_tk(line: &str) -> Result<Self> {
        let line = line.trim();
        let rest = line
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected `n=`: {line:?}")))?;
        let (n_str, bits_part) = rest
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("expected ` bits=`: {line:?}")))?;
        let hex = bits_part
            .strip_prefix("bits=")
            .ok_or_else(|| Error::Parse(format!("expected `bits=`: {line:?}")))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {n_str:?}")))?;
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let bits = hex_to_bits(hex, pair_count(n))?;
        Self::from_bits(n, &bits)
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament({}:{})", self.n(), self.bit_string())
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tk())
    }
}

impl FromStr for Tournament {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_tk(s)
    }
}

/// Packs bits most-significant first into lowercase hex, zero padded at the
/// tail to a multiple of four bits.
pub fn bits_to_hex(bits: &[bool]) -> String {
    bits.chunks(4)
        .map(|chunk| {
            let nibble = chunk
                .iter()
                .chain(std::iter::repeat(&false))
                .take(4)
                .fold(0u32, |acc, &b| acc << 1 | u32::from(b));
            char::from_digit(nibble, 16).expect("nibble < 16")
        })
        .collect()
}

/// Inverse of [`bits_to_hex`]; rejects wrong lengths and non-zero padding.
pub fn hex_to_bits(hex: &str, len: usize) -> Result<Vec<bool>> {
    let digits = len.div_ceil(4);
    if hex.len() != digits {
        return Err(Error::Parse(format!(
            "expected {digits} hex digits for {len} bits, got {}",
            hex.len()
        )));
    }
    let mut bits = Vec::with_capacity(digits * 4);
    for c in hex.chars() {
        let d = c
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))?;
        for k in (0..4).rev() {
            bits.push(d >> k & 1 == 1);
        }
    }
    if bits[len..].iter().any(|&b| b) {
        return Err(Error::Parse("non-zero padding bits".into()));
    }
    bits.truncate(len);
    Ok(bits)
}
