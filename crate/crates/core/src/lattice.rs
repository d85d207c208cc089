//! The Boolean-lattice universe: colorings of `Q_N`, layered colorings,
//! sublattice views, and symmetric chain decompositions.
//!
//! Masks are the canonical vertex identity throughout; a subset test is a
//! single bitwise containment.

use crate::error::LatticeError;
use crate::Color;
use std::collections::BTreeSet;

/// Colorings are dense (one bit per vertex) up to this dimension.
pub const DENSE_DIM_CAP: u32 = 24;
/// Hard cap on the dimension of any coloring.
pub const DIM_CAP: u32 = 30;

/// A blue/red coloring of all `2^N` subsets of an `N`-element ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    dim: u32,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Bit `m` of the word vector = 1 iff mask `m` is blue.
    Dense(Vec<u64>),
    /// Default color plus the explicit set of opposite-colored masks.
    Sparse { default: Color, explicit: BTreeSet<u64> },
}

impl Coloring {
    /// All vertices `default`; dense storage for `dim ≤ 24`.
    pub fn constant(dim: u32, default: Color) -> Result<Coloring, LatticeError> {
        if dim > DIM_CAP {
            return Err(LatticeError::DimRange(dim, DIM_CAP));
        }
        let repr = if dim <= DENSE_DIM_CAP {
            let words = if dim < 6 { 1 } else { 1usize << (dim - 6) };
            let mut v = vec![if default == Color::Blue { !0u64 } else { 0u64 }; words];
            if dim < 6 && default == Color::Blue {
                v[0] = (1u64 << (1 << dim)) - 1;
            }
            Repr::Dense(v)
        } else {
            Repr::Sparse { default, explicit: BTreeSet::new() }
        };
        Ok(Coloring { dim, repr })
    }

    /// Sparse coloring: `default` everywhere except on `explicit`.
    pub fn sparse(dim: u32, default: Color, explicit: BTreeSet<u64>) -> Result<Coloring, LatticeError> {
        if dim > DIM_CAP {
            return Err(LatticeError::DimRange(dim, DIM_CAP));
        }
        if let Some(&m) = explicit.iter().next_back() {
            if dim < 64 && m >= 1u64 << dim {
                return Err(LatticeError::Format(format!("mask {m:#x} out of range for dim {dim}")));
            }
        }
        Ok(Coloring { dim, repr: Repr::Sparse { default, explicit } })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn universe(&self) -> u64 {
        (1u64 << self.dim) - 1
    }

    pub fn size(&self) -> u64 {
        1u64 << self.dim
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    #[inline]
    pub fn color(&self, mask: u64) -> Color {
        debug_assert!(mask < 1u64 << self.dim);
        match &self.repr {
            Repr::Dense(words) => {
                if words[(mask >> 6) as usize] >> (mask & 63) & 1 == 1 {
                    Color::Blue
                } else {
                    Color::Red
                }
            }
            Repr::Sparse { default, explicit } => {
                if explicit.contains(&mask) {
                    default.flip()
                } else {
                    *default
                }
            }
        }
    }

    pub fn set(&mut self, mask: u64, color: Color) {
        debug_assert!(mask < 1u64 << self.dim);
        match &mut self.repr {
            Repr::Dense(words) => {
                let (w, b) = ((mask >> 6) as usize, mask & 63);
                if color == Color::Blue {
                    words[w] |= 1 << b;
                } else {
                    words[w] &= !(1 << b);
                }
            }
            Repr::Sparse { default, explicit } => {
                if color == *default {
                    explicit.remove(&mask);
                } else {
                    explicit.insert(mask);
                }
            }
        }
    }

    /// Vertices of the given color; for sparse colorings only legal when the
    /// color is the minority (explicit) one, or the caller accepts a huge set.
    pub fn vertices_of(&self, color: Color) -> Vec<u64> {
        match &self.repr {
            Repr::Dense(_) => (0..self.size()).filter(|&m| self.color(m) == color).collect(),
            Repr::Sparse { default, explicit } => {
                if color != *default {
                    explicit.iter().copied().collect()
                } else {
                    (0..self.size()).filter(|m| !explicit.contains(m)).collect()
                }
            }
        }
    }

    /// The sparse explicit set and its default color, if sparse.
    pub fn sparse_parts(&self) -> Option<(Color, &BTreeSet<u64>)> {
        match &self.repr {
            Repr::Sparse { default, explicit } => Some((*default, explicit)),
            Repr::Dense(_) => None,
        }
    }

    pub fn count(&self, color: Color) -> u64 {
        match &self.repr {
            Repr::Dense(words) => {
                let blue: u64 = if self.dim >= 6 {
                    words.iter().map(|w| w.count_ones() as u64).sum()
                } else {
                    (words[0] & self.universe_word()).count_ones() as u64
                };
                if color == Color::Blue {
                    blue
                } else {
                    self.size() - blue
                }
            }
            Repr::Sparse { default, explicit } => {
                if color == *default {
                    self.size() - explicit.len() as u64
                } else {
                    explicit.len() as u64
                }
            }
        }
    }

    fn universe_word(&self) -> u64 {
        if self.dim >= 6 {
            !0
        } else {
            (1u64 << (1 << self.dim)) - 1
        }
    }

    /// Lossless dense↔sparse conversion (dense requires `dim ≤ 24`).
    pub fn to_sparse(&self) -> Coloring {
        match &self.repr {
            Repr::Sparse { .. } => self.clone(),
            Repr::Dense(_) => {
                let blue = self.count(Color::Blue);
                let default = if blue * 2 <= self.size() { Color::Red } else { Color::Blue };
                let explicit = (0..self.size()).filter(|&m| self.color(m) != default).collect();
                Coloring { dim: self.dim, repr: Repr::Sparse { default, explicit } }
            }
        }
    }

    pub fn to_dense(&self) -> Result<Coloring, LatticeError> {
        if self.dim > DENSE_DIM_CAP {
            return Err(LatticeError::DimRange(self.dim, DENSE_DIM_CAP));
        }
        match &self.repr {
            Repr::Dense(_) => Ok(self.clone()),
            Repr::Sparse { .. } => {
                let mut c = Coloring::constant(self.dim, Color::Red)?;
                for m in 0..self.size() {
                    c.set(m, self.color(m));
                }
                Ok(c)
            }
        }
    }

    /// The complementary coloring (blue ↔ red).
    pub fn flipped(&self) -> Coloring {
        match &self.repr {
            Repr::Dense(words) => {
                let mut w = words.clone();
                for word in &mut w {
                    *word = !*word;
                }
                if self.dim < 6 {
                    w[0] &= (1u64 << (1 << self.dim)) - 1;
                }
                Coloring { dim: self.dim, repr: Repr::Dense(w) }
            }
            Repr::Sparse { default, explicit } => Coloring {
                dim: self.dim,
                repr: Repr::Sparse { default: default.flip(), explicit: explicit.clone() },
            },
        }
    }

    /// The image coloring under the set-complement map `Z ↦ ground ∖ Z`
    /// (order-reversing), used for dual-symmetry checks.
    pub fn complement_map(&self) -> Coloring {
        let mut c = Coloring::constant(self.dim, Color::Red).expect("same dim");
        for m in 0..self.size() {
            c.set(self.universe() ^ m, self.color(m));
        }
        c
    }
}

/// A blob `B(S;T)`: the interval `{Z : S ⊆ Z ⊆ S∪T}` over a base set and a
/// disjoint variable set, optionally truncated to `|Z∖S| ≤ trunc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Blob {
    pub s_mask: u64,
    pub t_mask: u64,
    pub trunc: Option<u32>,
}

impl Blob {
    pub fn new(s_mask: u64, t_mask: u64, trunc: Option<u32>) -> Result<Blob, LatticeError> {
        if s_mask & t_mask != 0 {
            return Err(LatticeError::Format(format!(
                "blob base {s_mask:#x} and variable set {t_mask:#x} must be disjoint"
            )));
        }
        if let Some(t) = trunc {
            if t > t_mask.count_ones() {
                return Err(LatticeError::Format(format!(
                    "truncation {t} exceeds the variable set size {}",
                    t_mask.count_ones()
                )));
            }
        }
        Ok(Blob { s_mask, t_mask, trunc })
    }

    /// Dimension of the blob: the variable set size.
    pub fn dim(&self) -> u32 {
        self.t_mask.count_ones()
    }

    /// All blob vertices `S ∪ T'`, ascending; truncation caps `|T'|`.
    pub fn vertices(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            if self.trunc.is_none_or(|t| sub.count_ones() <= t) {
                out.push(self.s_mask | sub);
            }
            sub = sub.wrapping_sub(self.t_mask) & self.t_mask;
            if sub == 0 {
                break;
            }
        }
        out.sort_unstable();
        out
    }

    /// True iff every blob vertex has the stated color.
    pub fn monochromatic(&self, c: &Coloring, color: Color) -> bool {
        self.vertices().into_iter().all(|v| c.color(v) == color)
    }
}

/// Vertex `Z` blue iff `|Z| ∈ blue_layers`.
pub fn layered_coloring(dim: u32, blue_layers: &[u32]) -> Result<Coloring, LatticeError> {
    for &l in blue_layers {
        if l > dim {
            return Err(LatticeError::LayerRange(l as usize, dim as usize));
        }
    }
    let mut c = Coloring::constant(dim, Color::Red)?;
    if dim > DENSE_DIM_CAP {
        return Err(LatticeError::DimRange(dim, DENSE_DIM_CAP));
    }
    for m in 0..c.size() {
        if blue_layers.contains(&m.count_ones()) {
            c.set(m, Color::Blue);
        }
    }
    Ok(c)
}

/// Read-only view of the sublattice `{X : A ⊆ X ⊆ B}` with inherited colors,
/// isomorphic to a Boolean lattice of dimension `|B∖A|`.
pub struct SublatticeView<'a> {
    pub base: u64,
    bits: Vec<u32>,
    coloring: &'a Coloring,
}

impl<'a> SublatticeView<'a> {
    pub fn new(coloring: &'a Coloring, a: u64, b: u64) -> Result<SublatticeView<'a>, LatticeError> {
        if a & !b != 0 {
            return Err(LatticeError::NotNested(a, b));
        }
        let free = b & !a;
        let bits = (0..64).filter(|i| free >> i & 1 == 1).collect();
        Ok(SublatticeView { base: a, bits, coloring })
    }

    pub fn dim(&self) -> u32 {
        self.bits.len() as u32
    }

    /// Absolute mask of the view vertex addressed by the local mask `m`.
    pub fn expand(&self, m: u64) -> u64 {
        let mut out = self.base;
        for (i, &bit) in self.bits.iter().enumerate() {
            if m >> i & 1 == 1 {
                out |= 1 << bit;
            }
        }
        out
    }

    pub fn color(&self, m: u64) -> Color {
        self.coloring.color(self.expand(m))
    }

    /// The restriction as a standalone coloring of dimension `dim()`.
    pub fn to_coloring(&self) -> Coloring {
        let mut c = Coloring::constant(self.dim(), Color::Red).expect("within cap");
        for m in 0..c.size() {
            c.set(m, self.color(m));
        }
        c
    }
}

/// Symmetric chain decomposition of `Q_N` by the parenthesis-matching rule:
/// position `i` reads `)` when `i ∈ S` and `(` otherwise; the chain through
/// `S` varies exactly the unmatched positions, filled left to right.
///
/// Chains partition all masks, each runs levels `ℓ..N−ℓ` with one vertex per
/// level, and there are `C(N, ⌊N/2⌋)` of them.
pub fn symmetric_chain_decomposition(dim: u32) -> Vec<Vec<u64>> {
    assert!(dim <= DENSE_DIM_CAP, "SCD supported up to dimension 24");
    let size = 1u64 << dim;
    let mut chains: Vec<Vec<u64>> = Vec::new();
    for m in 0..size {
        let unmatched = unmatched_positions(m, dim);
        // `m` is its chain's minimum iff none of the unmatched positions is
        // set; enumerate the chain from there.
        if unmatched.iter().any(|&i| m >> i & 1 == 1) {
            continue;
        }
        let mut chain = Vec::with_capacity(unmatched.len() + 1);
        let mut cur = m;
        chain.push(cur);
        for &i in &unmatched {
            cur |= 1 << i;
            chain.push(cur);
        }
        chains.push(chain);
    }
    chains
}

/// Unmatched positions of the bracket string of `m`, in ascending order.
/// Matched pairs are (unset, set) position pairs that nest like `()`.
fn unmatched_positions(m: u64, dim: u32) -> Vec<u32> {
    let mut stack: Vec<u32> = Vec::new(); // unmatched '(' so far
    let mut unmatched_close: Vec<u32> = Vec::new();
    for i in 0..dim {
        if m >> i & 1 == 0 {
            stack.push(i);
        } else if stack.pop().is_none() {
            unmatched_close.push(i);
        }
    }
    // Unmatched ')' (set positions) all precede unmatched '(' (unset ones).
    unmatched_close.extend(stack);
    unmatched_close
}

// ---------------------------------------------------------------------------
// Coloring file format.
//
//   line 1: `dim <N>`
//   line 2: `mode dense|sparse`
//   dense:  one line of 2^N characters over {b,r}, index = mask ascending
//   sparse: line 3 `default b|r`, then hex masks of the explicit set, one per
//           line, ascending.
// ---------------------------------------------------------------------------

pub fn encode_coloring(c: &Coloring) -> String {
    let mut out = format!("dim {}\n", c.dim());
    match &c.repr {
        Repr::Dense(_) => {
            out.push_str("mode dense\n");
            let mut line = String::with_capacity(c.size() as usize);
            for m in 0..c.size() {
                line.push(c.color(m).as_char());
            }
            out.push_str(&line);
            out.push('\n');
        }
        Repr::Sparse { default, explicit } => {
            out.push_str("mode sparse\n");
            out.push_str(&format!("default {}\n", default.as_char()));
            for m in explicit {
                out.push_str(&format!("{m:x}\n"));
            }
        }
    }
    out
}

pub fn decode_coloring(text: &str) -> Result<Coloring, LatticeError> {
    let bad = |msg: &str| LatticeError::Format(msg.to_string());
    let mut lines = text.lines();
    let dim_line = lines.next().ok_or_else(|| bad("missing dim line"))?;
    let dim: u32 = dim_line
        .strip_prefix("dim ")
        .ok_or_else(|| bad("first line must be `dim <N>`"))?
        .trim()
        .parse()
        .map_err(|_| bad("bad dimension"))?;
    if dim > DIM_CAP {
        return Err(LatticeError::DimRange(dim, DIM_CAP));
    }
    let mode_line = lines.next().ok_or_else(|| bad("missing mode line"))?;
    match mode_line.strip_prefix("mode ").map(str::trim) {
        Some("dense") => {
            if dim > DENSE_DIM_CAP {
                return Err(LatticeError::DimRange(dim, DENSE_DIM_CAP));
            }
            let body = lines.next().ok_or_else(|| bad("missing dense body"))?;
            if body.len() as u64 != 1u64 << dim {
                return Err(bad(&format!("dense body must have 2^{dim} characters")));
            }
            let mut c = Coloring::constant(dim, Color::Red)?;
            for (m, ch) in body.chars().enumerate() {
                let col = Color::from_char(ch).ok_or_else(|| bad("dense body must be over {b,r}"))?;
                c.set(m as u64, col);
            }
            if lines.next().is_some_and(|l| !l.trim().is_empty()) {
                return Err(bad("trailing content after dense body"));
            }
            Ok(c)
        }
        Some("sparse") => {
            let default_line = lines.next().ok_or_else(|| bad("missing default line"))?;
            let d = default_line
                .strip_prefix("default ")
                .map(str::trim)
                .and_then(|s| s.chars().next())
                .and_then(Color::from_char)
                .ok_or_else(|| bad("third line must be `default b|r`"))?;
            let mut explicit = BTreeSet::new();
            for line in lines {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let m = u64::from_str_radix(line, 16).map_err(|_| bad("bad hex mask"))?;
                if dim < 64 && m >= 1u64 << dim {
                    return Err(bad(&format!("mask {m:#x} out of range for dim {dim}")));
                }
                explicit.insert(m);
            }
            Coloring::sparse(dim, d, explicit)
        }
        _ => Err(bad("second line must be `mode dense|sparse`")),
    }
}
