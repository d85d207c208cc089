//! Copy and embedding search: induced, weak, and colored copies of a small
//! pattern poset inside a Boolean lattice or another poset; 2-dimension;
//! X-good normalization; factorial trees and shrubs.

use crate::error::EmbedError;
use crate::lattice::Coloring;
use crate::poset::{ColoredPoset, Poset};
use crate::Color;
use std::collections::BTreeMap;

/// Which copy notion an embedding realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyMode {
    /// `i ≤ j` in the pattern ⇔ `map[i] ⊆ map[j]`.
    Induced,
    /// `i ≤ j` in the pattern ⇒ `map[i] ⊆ map[j]` (injective).
    Weak,
    /// Induced, and the host color at `map[i]` equals the pattern color.
    Colored,
}

/// An injective vertex map from a pattern poset into host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub mode: CopyMode,
    /// One host vertex (subset mask, or poset vertex index) per pattern vertex.
    pub map: Vec<u64>,
    pub host_dim: u32,
}

impl Embedding {
    /// Witness serialization: `vertex_index -> hex mask` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, m) in self.map.iter().enumerate() {
            out.push_str(&format!("{i} -> {m:x}\n"));
        }
        out
    }
}

/// Search hosts. Lattice vertices are subset masks; poset vertices are their
/// indices cast to `u64`.
#[derive(Clone, Copy)]
pub enum Host<'a> {
    /// Uncolored Boolean lattice of the given dimension.
    Lattice(u32),
    /// A colored Boolean lattice.
    ColoredLattice(&'a Coloring),
    /// A plain poset.
    Poset(&'a Poset),
    /// A poset with vertex colors.
    ColoredPoset(&'a ColoredPoset),
    /// A colored lattice restricted to an explicit, ascending vertex list.
    /// Used for the documented weaker check on sparse colorings.
    Restricted { coloring: &'a Coloring, allowed: &'a [u64] },
}

impl<'a> Host<'a> {
    fn leq(&self, u: u64, v: u64) -> bool {
        match self {
            Host::Lattice(_) | Host::ColoredLattice(_) | Host::Restricted { .. } => u & v == u,
            Host::Poset(p) => p.leq(u as usize, v as usize),
            Host::ColoredPoset(c) => c.poset.leq(u as usize, v as usize),
        }
    }

    fn color(&self, v: u64) -> Option<Color> {
        match self {
            Host::Lattice(_) | Host::Poset(_) => None,
            Host::ColoredLattice(c) => Some(c.color(v)),
            Host::ColoredPoset(c) => Some(c.colors[v as usize]),
            Host::Restricted { coloring, .. } => Some(coloring.color(v)),
        }
    }

    fn dim(&self) -> u32 {
        match self {
            Host::Lattice(d) => *d,
            Host::ColoredLattice(c) => c.dim(),
            Host::Restricted { coloring, .. } => coloring.dim(),
            Host::Poset(_) | Host::ColoredPoset(_) => 0,
        }
    }

    fn is_lattice(&self) -> bool {
        !matches!(self, Host::Poset(_) | Host::ColoredPoset(_))
    }

    /// Calls `f` on candidates `v` with `lo ≤ v ≤ hi`, ascending; stops when
    /// `f` returns `true` (found).
    fn for_candidates(&self, lo: u64, hi: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        match self {
            Host::Lattice(_) | Host::ColoredLattice(_) => {
                if lo & hi != lo {
                    return false;
                }
                let free = hi & !lo;
                // Ascending submask enumeration: s = (s - free) & free.
                let mut s = 0u64;
                loop {
                    if f(lo | s) {
                        return true;
                    }
                    s = s.wrapping_sub(free) & free;
                    if s == 0 {
                        return false;
                    }
                }
            }
            Host::Restricted { allowed, .. } => {
                for &v in allowed.iter() {
                    if lo & v == lo && v & hi == v && f(v) {
                        return true;
                    }
                }
                false
            }
            Host::Poset(_) | Host::ColoredPoset(_) => {
                let n = match self {
                    Host::Poset(p) => p.len(),
                    Host::ColoredPoset(c) => c.len(),
                    _ => unreachable!(),
                };
                for v in 0..n as u64 {
                    if f(v) {
                        return true;
                    }
                }
                false
            }
        }
    }
}

/// Deterministic processing order: pattern vertices sorted by (level in a
/// fixed linear extension ascending, comparability degree descending, index).
fn processing_order(p: &Poset) -> Vec<usize> {
    let levels = p.levels();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&v| {
        let deg = p.down_set(v).count_ones() + p.up_set(v).count_ones() - 2;
        (levels[v], std::cmp::Reverse(deg), v)
    });
    order
}

const LATTICE_HOST_DIM_CAP: u32 = 24;

/// Finds a copy of `pattern` in `host`, or proves none exists by exhaustion.
///
/// Deterministic: the returned embedding is the lexicographically least map
/// under the documented vertex processing order. `color_filter` restricts
/// candidates to one host color (monochromatic copy search); colored mode
/// ignores it and matches the pattern's own colors instead.
pub fn find_copy(
    pattern: &Poset,
    pattern_colors: Option<&[Color]>,
    mode: CopyMode,
    host: &Host,
    color_filter: Option<Color>,
) -> Result<Option<Embedding>, EmbedError> {
    // The dense-enumeration cap; restricted hosts carry their own candidate
    // list and may live in lattices up to the sparse dimension cap.
    if matches!(host, Host::Lattice(_) | Host::ColoredLattice(_)) && host.dim() > LATTICE_HOST_DIM_CAP
    {
        return Err(EmbedError::Size(format!(
            "lattice host dimension {} exceeds cap {LATTICE_HOST_DIM_CAP}",
            host.dim()
        )));
    }
    if mode == CopyMode::Colored {
        if pattern_colors.is_none() {
            return Err(EmbedError::Size("colored mode needs a colored pattern".into()));
        }
        if host.color(0).is_none() {
            return Err(EmbedError::Size("colored mode needs a colored host".into()));
        }
    }
    let order = processing_order(pattern);
    let mut map = vec![0u64; pattern.len()];
    let found = assign(pattern, pattern_colors, mode, host, color_filter, &order, 0, &mut map);
    if !found {
        return Ok(None);
    }
    let emb = Embedding { mode, map, host_dim: host.dim() };
    debug_assert!(validate_embedding(pattern, pattern_colors, mode, host, &emb.map));
    Ok(Some(emb))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    pattern: &Poset,
    pattern_colors: Option<&[Color]>,
    mode: CopyMode,
    host: &Host,
    color_filter: Option<Color>,
    order: &[usize],
    pos: usize,
    map: &mut Vec<u64>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // Interval constraints from already-assigned comparable pattern vertices.
    let mut lo = 0u64;
    let mut hi = if host.is_lattice() { (1u64 << host.dim()) - 1 } else { !0u64 };
    for &u in &order[..pos] {
        if pattern.lt(u, v) {
            if host.is_lattice() {
                lo |= map[u];
            }
        } else if pattern.lt(v, u) && host.is_lattice() {
            hi &= map[u];
        }
    }
    let want_color = match mode {
        CopyMode::Colored => Some(pattern_colors.unwrap()[v]),
        _ => color_filter.filter(|_| host.color(0).is_some()),
    };
    let mut hit = false;
    host.for_candidates(lo, hi, &mut |x| {
        if let Some(w) = want_color {
            if host.color(x) != Some(w) {
                return false;
            }
        }
        // Exact relation checks against every assigned vertex.
        for &u in &order[..pos] {
            let img = map[u];
            if img == x {
                return false; // injectivity
            }
            let need_le = pattern.lt(u, v);
            let need_ge = pattern.lt(v, u);
            let is_le = host.leq(img, x);
            let is_ge = host.leq(x, img);
            match mode {
                CopyMode::Induced | CopyMode::Colored => {
                    if need_le != is_le || need_ge != is_ge {
                        return false;
                    }
                }
                CopyMode::Weak => {
                    if (need_le && !is_le) || (need_ge && !is_ge) {
                        return false;
                    }
                }
            }
        }
        map[v] = x;
        if assign(pattern, pattern_colors, mode, host, color_filter, order, pos + 1, map) {
            hit = true;
            return true;
        }
        false
    });
    hit
}

/// Re-checks the per-mode invariants of a map.
pub fn validate_embedding(
    pattern: &Poset,
    pattern_colors: Option<&[Color]>,
    mode: CopyMode,
    host: &Host,
    map: &[u64],
) -> bool {
    if map.len() != pattern.len() {
        return false;
    }
    for i in 0..map.len() {
        for j in 0..map.len() {
            if i == j {
                continue;
            }
            if map[i] == map[j] {
                return false;
            }
            let rel = pattern.leq(i, j);
            let img = host.leq(map[i], map[j]);
            match mode {
                CopyMode::Induced | CopyMode::Colored => {
                    if rel != img {
                        return false;
                    }
                }
                CopyMode::Weak => {
                    if rel && !img {
                        return false;
                    }
                }
            }
        }
    }
    if mode == CopyMode::Colored {
        let colors = match pattern_colors {
            Some(c) => c,
            None => return false,
        };
        for (i, &m) in map.iter().enumerate() {
            if host.color(m) != Some(colors[i]) {
                return false;
            }
        }
    }
    true
}

/// Smallest `n` such that `Q_n` contains an induced copy of the pattern,
/// together with a witness. The search ceiling `|P|` always suffices.
pub fn dim2(pattern: &Poset) -> (u32, Embedding) {
    for n in 0..=pattern.len() as u32 {
        if let Ok(Some(emb)) = find_copy(pattern, None, CopyMode::Induced, &Host::Lattice(n), None) {
            return (n, emb);
        }
    }
    unreachable!("every poset embeds into Q_{{|P|}}");
}

// ---------------------------------------------------------------------------
// X-good copies of full Boolean lattices.
// ---------------------------------------------------------------------------

/// An X-good embedding of the full lattice `Q(X)` into a larger lattice,
/// keyed by the absolute subset mask `S ⊆ x_mask`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XGoodCopy {
    pub x_mask: u64,
    pub images: BTreeMap<u64, u64>,
}

/// Ascending enumeration of the submasks of `m` (including 0 and `m`).
pub fn submasks(m: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << m.count_ones().min(20));
    let mut s = 0u64;
    loop {
        out.push(s);
        s = s.wrapping_sub(m) & m;
        if s == 0 {
            break;
        }
    }
    out
}

impl XGoodCopy {
    /// The identity embedding `S ↦ S`.
    pub fn identity(x_mask: u64) -> XGoodCopy {
        let images = submasks(x_mask).into_iter().map(|s| (s, s)).collect();
        XGoodCopy { x_mask, images }
    }

    pub fn image(&self, s: u64) -> u64 {
        self.images[&s]
    }

    /// X-goodness plus the embedding property (which, for an X-good
    /// homomorphism, reduces to monotonicity).
    pub fn validate(&self) -> bool {
        if self.images.len() != 1usize << self.x_mask.count_ones() {
            return false;
        }
        for (&s, &img) in &self.images {
            if s & !self.x_mask != 0 || img & self.x_mask != s {
                return false;
            }
            for (&t, &img_t) in &self.images {
                if t & s == t && img_t & img != img_t {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every image vertex has the stated color.
    pub fn monochromatic(&self, c: &Coloring, color: Color) -> bool {
        self.images.values().all(|&m| c.color(m) == color)
    }

    pub fn vertex_set(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.images.values().copied().collect();
        v.sort_unstable();
        v
    }
}

/// A truncated variant: images only for `|S| ≤ trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedXGoodCopy {
    pub x_mask: u64,
    pub trunc: u32,
    pub images: BTreeMap<u64, u64>,
}

impl TruncatedXGoodCopy {
    pub fn validate(&self) -> bool {
        let want = submasks(self.x_mask)
            .into_iter()
            .filter(|s| s.count_ones() <= self.trunc)
            .count();
        if self.images.len() != want {
            return false;
        }
        for (&s, &img) in &self.images {
            if s & !self.x_mask != 0 || s.count_ones() > self.trunc || img & self.x_mask != s {
                return false;
            }
            for (&t, &img_t) in &self.images {
                if t & s == t && img_t & img != img_t {
                    return false;
                }
            }
        }
        true
    }

    pub fn volume(&self) -> u64 {
        self.images.values().fold(0u64, |acc, &m| acc | m)
    }
}

/// Normalizes an induced embedding of a full `Q_n` into an X-good embedding
/// with the same image set (the constructive step behind every "some X-good
/// copy" argument). Representatives are chosen as the smallest available
/// ground element.
pub fn normalize_xgood(map: &[u64], host_dim: u32) -> Result<(u64, XGoodCopy), EmbedError> {
    let sz = map.len();
    if sz == 0 || !sz.is_power_of_two() {
        return Err(EmbedError::NotFullLattice(format!("image count {sz} is not a power of two")));
    }
    let n = sz.trailing_zeros();
    // The map must be an induced embedding of Q(U), U = [n], indexed by mask.
    for a in 0..sz {
        for b in 0..sz {
            if a != b && ((a & b == a) != (map[a] & map[b] == map[a]) || map[a] == map[b]) {
                return Err(EmbedError::NotFullLattice(format!(
                    "indices {a} and {b} violate the embedding property"
                )));
            }
        }
    }
    let full = sz - 1;
    let mut reps = Vec::with_capacity(n as usize);
    for u in 0..n {
        let candidates = map[1usize << u] & !map[full ^ (1usize << u)];
        if candidates == 0 {
            return Err(EmbedError::NotFullLattice(format!("no representative for element {u}")));
        }
        reps.push(candidates.trailing_zeros() as u64);
    }
    let x_mask = reps.iter().fold(0u64, |m, &b| m | (1 << b));
    if reps.len() != x_mask.count_ones() as usize {
        return Err(EmbedError::NotFullLattice("representatives clash".into()));
    }
    // φ'(X) = φ(U_X) where U_X pulls each chosen representative back.
    let mut images = BTreeMap::new();
    for s in submasks(x_mask) {
        let mut u_mask = 0usize;
        for (u, &b) in reps.iter().enumerate() {
            if s >> b & 1 == 1 {
                u_mask |= 1 << u;
            }
        }
        images.insert(s, map[u_mask]);
    }
    let out = XGoodCopy { x_mask, images };
    debug_assert!(out.validate());
    debug_assert!(host_dim == 0 || out.images.values().all(|&m| m < 1u64 << host_dim));
    Ok((x_mask, out))
}

// ---------------------------------------------------------------------------
// Factorial trees and shrubs.
// ---------------------------------------------------------------------------

/// The poset of all ordered subsets of a ground list under the prefix order.
#[derive(Debug, Clone)]
pub struct FactorialTree {
    /// Ground elements (bit positions), in the fixed enumeration order.
    pub ground: Vec<u32>,
    /// All ordered subsets: by size, then lexicographically by element index.
    pub verts: Vec<Vec<u32>>,
}

impl FactorialTree {
    pub fn new(ground: &[u32]) -> FactorialTree {
        let k = ground.len();
        let mut verts: Vec<Vec<u32>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for seq in &frontier {
                for (idx, &g) in ground.iter().enumerate() {
                    if !seq.contains(&(idx as u32)) {
                        let mut s = seq.clone();
                        s.push(idx as u32);
                        let _ = g;
                        next.push(s);
                    }
                }
            }
            verts.extend(next.iter().cloned());
            frontier = next;
        }
        FactorialTree { ground: ground.to_vec(), verts }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Prefix order on vertex indices.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (s, t) = (&self.verts[a], &self.verts[b]);
        s.len() <= t.len() && t[..s.len()] == s[..]
    }

    /// Underlying unordered set of a vertex, as a mask of ground bits.
    pub fn underlying(&self, a: usize) -> u64 {
        self.verts[a].iter().fold(0u64, |m, &i| m | (1u64 << self.ground[i as usize]))
    }
}

/// A Y-good copy of the factorial tree `O(Y)`: `xi[i] ∩ Y` equals the
/// underlying set of vertex `i`, and `xi` is an embedding of the prefix order.
#[derive(Debug, Clone)]
pub struct Shrub {
    pub tree: FactorialTree,
    pub y_mask: u64,
    pub xi: Vec<u64>,
}

/// One antichain block for the shrub construction: a set of fresh ground
/// elements hosting an antichain of `k` subsets.
#[derive(Debug, Clone)]
pub struct ShrubBlock {
    pub mask: u64,
    pub antichain: Vec<u64>,
}

/// Block size used by the standard construction: the middle binomial
/// coefficient of 11 covers every `k ≤ 256`; beyond that `⌈log k + log log k⌉`
/// elements host an antichain of size `k`.
pub fn standard_block_size(k: usize) -> u32 {
    if k <= 1 {
        return if k == 0 { 0 } else { 11 };
    }
    if k < 256 {
        11
    } else {
        let lk = (k as f64).log2();
        (lk + lk.log2()).ceil() as u32
    }
}

/// Middle-layer antichain of size `k` inside `size` fresh bits starting at
/// `start`: the lexicographically first `k` masks of the middle layer.
pub fn standard_block(start: u32, size: u32, k: usize) -> Option<ShrubBlock> {
    let mask = ((1u64 << size) - 1) << start;
    let half = size / 2;
    let mut antichain = Vec::with_capacity(k);
    let mut m = (1u64 << half) - 1; // smallest mask with `half` bits
    if half == 0 {
        return if k <= 1 { Some(ShrubBlock { mask, antichain: vec![0; k] }) } else { None };
    }
    while antichain.len() < k {
        if m >= 1u64 << size {
            return None;
        }
        antichain.push(m << start);
        // Next mask with the same popcount (Gosper's hack).
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    Some(ShrubBlock { mask, antichain })
}

/// Builds a shrub from per-element antichain blocks: `ξ((y_{i1},…,y_{ij})) =
/// A_{i1} ∪ A^{i2}_{i1+1} ∪ … ∪ A^{ij}_{i1+j−1} ∪ {y_{i1},…,y_{ij}}`, with
/// block indices mod `k`. The full first block forces any two images with
/// different leading elements apart; the per-step antichain entries keep
/// reorderings of the same underlying set incomparable.
pub fn build_shrub(y_elems: &[u32], blocks: &[ShrubBlock]) -> Result<Shrub, EmbedError> {
    let k = y_elems.len();
    if blocks.len() != k {
        return Err(EmbedError::GroundTooSmall { need: k, have: blocks.len() });
    }
    for b in blocks {
        if b.antichain.len() < k {
            return Err(EmbedError::GroundTooSmall { need: k, have: b.antichain.len() });
        }
    }
    let y_mask = y_elems.iter().fold(0u64, |m, &b| m | (1u64 << b));
    let tree = FactorialTree::new(y_elems);
    let mut xi = Vec::with_capacity(tree.len());
    for seq in &tree.verts {
        let mut img = 0u64;
        if let Some(&first) = seq.first() {
            img |= blocks[first as usize].mask;
            for (j, &e) in seq.iter().enumerate().skip(1) {
                let block = (first as usize + j) % k;
                img |= blocks[block].antichain[e as usize];
            }
        }
        for &e in seq {
            img |= 1u64 << y_elems[e as usize];
        }
        xi.push(img);
    }
    let shrub = Shrub { tree, y_mask, xi };
    Ok(shrub)
}

/// The standard shrub on `Y = {0,…,k−1}` with blocks laid out above the `Y`
/// bits; host dimension is `k + k·block_size`.
pub fn standard_shrub(k: usize) -> Result<Shrub, EmbedError> {
    let bs = standard_block_size(k);
    let y: Vec<u32> = (0..k as u32).collect();
    let mut blocks = Vec::with_capacity(k);
    for i in 0..k as u32 {
        let start = k as u32 + i * bs;
        if start + bs > 64 {
            return Err(EmbedError::GroundTooSmall { need: (start + bs) as usize, have: 64 });
        }
        blocks.push(standard_block(start, bs, k).ok_or(EmbedError::GroundTooSmall {
            need: k,
            have: 1 << bs,
        })?);
    }
    build_shrub(&y, &blocks)
}

/// Checks Y-goodness, the embedding property, injectivity, and the up-tree
/// shape of a shrub.
pub fn verify_shrub(s: &Shrub) -> bool {
    let n = s.tree.len();
    for i in 0..n {
        if s.xi[i] & s.y_mask != s.tree.underlying(i) {
            return false; // Y-goodness
        }
        for j in 0..n {
            if i != j && s.xi[i] == s.xi[j] {
                return false;
            }
            let rel = s.tree.leq(i, j);
            let img = s.xi[i] & s.xi[j] == s.xi[i];
            if rel != img {
                return false; // embedding both ways
            }
        }
    }
    // Up-tree: unique minimal vertex, and every down-set inside the image is
    // a chain.
    let minimals = (0..n)
        .filter(|&v| (0..n).all(|u| u == v || s.xi[u] & s.xi[v] != s.xi[u]))
        .count();
    if minimals != 1 {
        return false;
    }
    for v in 0..n {
        let below: Vec<u64> = (0..n).filter(|&u| s.xi[u] & s.xi[v] == s.xi[u]).map(|u| s.xi[u]).collect();
        for a in &below {
            for b in &below {
                if a & b != *a && b & a != *b {
                    return false;
                }
            }
        }
    }
    true
}

/// Validates that a candidate chain is the Y-chain corresponding to `tau`:
/// `Z_i ∩ Y = {y_1,…,y_i}` with nested X-parts.
pub fn validate_y_chain(chain: &[u64], x_mask: u64, y_mask: u64, tau: &[u32]) -> bool {
    if chain.len() != tau.len() + 1 {
        return false;
    }
    let mut y_prefix = 0u64;
    for (i, &z) in chain.iter().enumerate() {
        if i > 0 {
            y_prefix |= 1u64 << tau[i - 1];
            if chain[i - 1] & z != chain[i - 1] {
                return false;
            }
        }
        if z & y_mask != y_prefix || z & !(x_mask | y_mask) != 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, parse_and_build, CatalogExpr};
    use crate::lattice::layered_coloring;

    fn plain(src: &str) -> Poset {
        parse_and_build(src).unwrap().expect_plain()
    }

    /// Independent all-injections oracle used to pin the search down.
    fn naive_copy_exists(pattern: &Poset, mode: CopyMode, host: &Host, filter: Option<Color>) -> bool {
        let verts: Vec<u64> = match host {
            Host::Lattice(d) => (0..1u64 << d).collect(),
            Host::ColoredLattice(c) => (0..c.size()).collect(),
            Host::Poset(p) => (0..p.len() as u64).collect(),
            Host::ColoredPoset(c) => (0..c.len() as u64).collect(),
            Host::Restricted { allowed, .. } => allowed.to_vec(),
        };
        let verts: Vec<u64> = match filter {
            Some(f) => verts.into_iter().filter(|&v| host.color(v) == Some(f)).collect(),
            None => verts,
        };
        let k = pattern.len();
        let mut map = vec![0u64; k];
        fn rec(
            pattern: &Poset,
            mode: CopyMode,
            host: &Host,
            verts: &[u64],
            map: &mut Vec<u64>,
            pos: usize,
        ) -> bool {
            if pos == pattern.len() {
                return validate_embedding(pattern, None, mode, host, map);
            }
            for &v in verts {
                if map[..pos].contains(&v) {
                    continue;
                }
                map[pos] = v;
                if rec(pattern, mode, host, verts, map, pos + 1) {
                    return true;
                }
            }
            false
        }
        rec(pattern, mode, host, &verts, &mut map, 0)
    }

    #[test]
    fn find_copy_first_vertex() {
        let c1 = Poset::chain(1);
        let host = Host::Lattice(2);
        let emb = find_copy(&c1, None, CopyMode::Induced, &host, None).unwrap().unwrap();
        assert_eq!(emb.map, vec![0]);
    }

    #[test]
    fn no_monochromatic_q2_in_parity_coloring() {
        // Parity coloring of Q_3 (blue = odd layers) has no monochromatic Q_2.
        let host_c = layered_coloring(3, &[1, 3]).unwrap();
        let q2 = plain("Q(2)");
        for color in [Color::Blue, Color::Red] {
            let got = find_copy(&q2, None, CopyMode::Induced, &Host::ColoredLattice(&host_c), Some(color))
                .unwrap();
            assert!(got.is_none(), "no {color:?} Q_2");
        }
        // But an uncolored search finds Q_2 inside Q_3.
        assert!(find_copy(&q2, None, CopyMode::Induced, &Host::Lattice(3), None).unwrap().is_some());
    }

    #[test]
    fn find_copy_matches_naive_oracle() {
        let patterns = ["C(3)", "A(3)", "VEE", "LAM", "NPOSET", "Q(2)", "CC(2,1)"];
        let hosts: Vec<Coloring> = vec![
            layered_coloring(3, &[0, 2]).unwrap(),
            layered_coloring(4, &[1, 2]).unwrap(),
            layered_coloring(3, &[1, 3]).unwrap(),
        ];
        for pat in patterns {
            let p = plain(pat);
            for host_c in &hosts {
                for mode in [CopyMode::Induced, CopyMode::Weak] {
                    for filter in [None, Some(Color::Blue), Some(Color::Red)] {
                        let host = Host::ColoredLattice(host_c);
                        let fast = find_copy(&p, None, mode, &host, filter).unwrap();
                        let slow = naive_copy_exists(&p, mode, &host, filter);
                        assert_eq!(fast.is_some(), slow, "{pat} {mode:?} {filter:?}");
                        if let Some(e) = fast {
                            assert!(validate_embedding(&p, None, mode, &host, &e.map));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn weak_copies_include_chains() {
        // C_{|P|} is a weak copy of any P: a weak copy's image always has
        // height ≥ h(P). Check the reported weak copies of NPOSET in Q_3.
        let n = plain("NPOSET");
        let host = Host::Lattice(3);
        let emb = find_copy(&n, None, CopyMode::Weak, &host, None).unwrap().unwrap();
        // Image poset (under inclusion) has height ≥ h(N) = 2.
        let mut best = 0;
        for &a in &emb.map {
            let chain = emb.map.iter().filter(|&&b| a & b == a).count();
            best = best.max(chain);
        }
        assert!(best >= 2);
    }

    #[test]
    fn dim2_values() {
        assert_eq!(dim2(&plain("Q(3)")).0, 3);
        for t in 1..=5u32 {
            assert_eq!(dim2(&Poset::chain(t as usize)).0, t - 1, "dim2(C_t) = t-1");
        }
        assert_eq!(dim2(&plain("A(5)")).0, 4);
        assert_eq!(dim2(&plain("A(2)")).0, 2);
        assert_eq!(dim2(&plain("VEE")).0, 2);
    }

    #[test]
    fn dim2_monotone_on_catalog_pairs() {
        // P' induced in P forces dim2(P') ≤ dim2(P).
        let pairs = [
            ("VEE", "Q(2)"),
            ("C(3)", "Q(2)"),
            ("A(3)", "Q(3)"),
            ("NPOSET", "SE(3)"),
            ("LAM", "D(3)"),
        ];
        for (small, big) in pairs {
            let ps = plain(small);
            let pb = plain(big);
            let inside =
                find_copy(&ps, None, CopyMode::Induced, &Host::Poset(&pb), None).unwrap().is_some();
            assert!(inside, "{small} should embed into {big}");
            assert!(dim2(&ps).0 <= dim2(&pb).0);
        }
    }

    #[test]
    fn normalize_identity_and_shift() {
        // Identity embedding of Q(X) normalizes to X itself.
        let x_mask = 0b101u64;
        let id = XGoodCopy::identity(x_mask);
        let map: Vec<u64> = (0..4usize)
            .map(|m| {
                let mut s = 0u64;
                if m & 1 == 1 {
                    s |= 0b001;
                }
                if m & 2 == 2 {
                    s |= 0b100;
                }
                s
            })
            .collect();
        let (x, copy) = normalize_xgood(&map, 3).unwrap();
        assert_eq!(x, x_mask);
        assert_eq!(copy, id);

        // Shift embedding φ(S) = S ∪ {a} for a ∉ U: already U-good.
        let map: Vec<u64> = (0..4u64).map(|m| m | 0b100).collect();
        let (x, copy) = normalize_xgood(&map, 3).unwrap();
        assert_eq!(x, 0b011);
        assert!(copy.validate());
        for (&s, &img) in &copy.images {
            assert_eq!(img, s | 0b100);
        }
    }

    #[test]
    fn normalize_relabeled_q2_in_q4() {
        // A relabeled Q_2 embedding into Q_4; normalization must preserve the
        // image set and be X-good.
        let q2 = plain("Q(2)");
        let emb = find_copy(&q2, None, CopyMode::Induced, &Host::Lattice(4), None).unwrap().unwrap();
        // find_copy's processing order for Q(2) is (bottom, mid, mid, top);
        // rebuild the by-mask map before normalizing.
        let by_mask = emb.map.clone();
        let (x, copy) = normalize_xgood(&by_mask, 4).unwrap();
        assert_eq!(x.count_ones(), 2);
        assert!(copy.validate());
        let mut before: Vec<u64> = by_mask.clone();
        before.sort_unstable();
        assert_eq!(copy.vertex_set(), before, "same image set");
        // Rejects non-full-lattice maps.
        assert!(normalize_xgood(&[0, 1, 3], 2).is_err());
        assert!(normalize_xgood(&[0, 1, 1, 3], 2).is_err());
    }

    #[test]
    fn factorial_tree_shape() {
        let t = FactorialTree::new(&[0, 1, 2]);
        assert_eq!(t.len(), 1 + 3 + 6 + 6);
        assert_eq!(t.verts[0], Vec::<u32>::new());
        // Unique minimal vertex is the empty ordered set.
        assert!((1..t.len()).all(|i| t.leq(0, i)));
    }

    #[test]
    fn shrub_small_cases() {
        // k = 1: a two-vertex chain {∅, A_0 ∪ {y_0}}.
        let s1 = standard_shrub(1).unwrap();
        assert_eq!(s1.xi.len(), 2);
        assert_eq!(s1.xi[0], 0);
        assert!(verify_shrub(&s1));

        // k = 2: five-vertex up-tree with two maximal leaves.
        let s2 = standard_shrub(2).unwrap();
        assert_eq!(s2.xi.len(), 5);
        assert!(verify_shrub(&s2));
        let n = s2.xi.len();
        let maximal = (0..n)
            .filter(|&v| (0..n).all(|u| u == v || s2.xi[v] & s2.xi[u] != s2.xi[v]))
            .count();
        assert_eq!(maximal, 2, "2 maximal leaves = 2!");

        // Leaf count of the standard shrub is k! in general.
        let s3 = standard_shrub(3).unwrap();
        assert!(verify_shrub(&s3));
        let n = s3.xi.len();
        let leaves = (0..n)
            .filter(|&v| (0..n).all(|u| u == v || s3.xi[v] & s3.xi[u] != s3.xi[v]))
            .count();
        assert_eq!(leaves, 6);
    }

    #[test]
    fn shrub_assignment_matches_block_pattern() {
        // k = 4: ξ((y_0,y_1,y_2)) = A_0 ∪ A_1^1 ∪ A_2^2 ∪ {y_0,y_1,y_2}.
        let k = 4usize;
        let s = standard_shrub(k).unwrap();
        let blocks: Vec<ShrubBlock> = (0..k as u32)
            .map(|i| standard_block(k as u32 + i * standard_block_size(k), standard_block_size(k), k).unwrap())
            .collect();
        let idx = s
            .tree
            .verts
            .iter()
            .position(|v| v == &vec![0u32, 1, 2])
            .unwrap();
        let want = blocks[0].mask | blocks[1].antichain[1] | blocks[2].antichain[2] | 0b0111;
        assert_eq!(s.xi[idx], want);
    }

    #[test]
    fn y_chain_validation() {
        // Y = ∅: a single vertex is always a valid Y-chain.
        assert!(validate_y_chain(&[0b01], 0b11, 0, &[]));
        // ∅, {y1}, {y1,y2} with empty X-parts, τ = (y1,y2).
        let x_mask = 0b1100;
        let (y1, y2) = (0u32, 1u32);
        let chain = [0u64, 0b01, 0b11];
        assert!(validate_y_chain(&chain, x_mask, 0b11, &[y1, y2]));
        // Same chain against τ = (y2,y1) has the wrong Y-parts.
        assert!(!validate_y_chain(&chain, x_mask, 0b11, &[y2, y1]));
    }

    #[test]
    fn restricted_host_search() {
        let c = layered_coloring(3, &[0, 1]).unwrap();
        let blue: Vec<u64> = c.vertices_of(Color::Blue);
        let host = Host::Restricted { coloring: &c, allowed: &blue };
        let vee = build(&CatalogExpr::Vee).unwrap().expect_plain();
        let emb = find_copy(&vee, None, CopyMode::Induced, &host, None).unwrap().unwrap();
        assert!(emb.map.iter().all(|m| blue.contains(m)));
    }
}
