//! Constructive procedures: the chain lemma, truncated blob completion,
//! middle-layer extraction, blocker duality, the Λ-free duality witness, and
//! Erdős–Hajnal phase partitions.

use crate::catalog::{build, CatalogExpr};
use crate::embed::{
    find_copy, submasks, CopyMode, FactorialTree, Host, Shrub, TruncatedXGoodCopy, XGoodCopy,
};
use crate::error::EngineError;
use crate::lattice::{Blob, Coloring};
use crate::poset::ColoredPoset;
use crate::Color;
use std::collections::BTreeMap;

/// Bits of `mask`, ascending.
pub fn bits_of(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn prefix_mask(tau: &[u32], len: usize) -> u64 {
    tau[..len].iter().fold(0u64, |m, &b| m | (1u64 << b))
}

// ---------------------------------------------------------------------------
// Chain Lemma.
// ---------------------------------------------------------------------------

/// Output of [`chain_lemma`]: exactly one branch, each validating against the
/// input coloring.
#[derive(Debug, Clone)]
pub enum ChainLemmaOutcome {
    /// A red, X-good copy of `Q(X)` of the shape `φ(S) = S ∪ [ℓ_S]`.
    RedCopy(XGoodCopy),
    /// A blue Y-chain corresponding to the requested ordering.
    BlueChain(Vec<u64>),
}

const CHAIN_LEMMA_X_CAP: u32 = 12;

/// Either a red X-good copy of `Q(X)` or a blue Y-chain for `tau`, built by
/// the smallest-ℓ recursion. At every step the smallest valid `ℓ_S` is taken
/// and the lexicographically least maximizing proper subset feeds the blue
/// prefix chain.
pub fn chain_lemma(c: &Coloring, x_mask: u64, tau: &[u32]) -> Result<ChainLemmaOutcome, EngineError> {
    let y_mask = prefix_mask(tau, tau.len());
    let universe = (1u64 << c.dim()) - 1;
    if x_mask & y_mask != 0 || x_mask | y_mask != universe {
        return Err(EngineError::Size("X and tau must partition the ground set".into()));
    }
    if x_mask.count_ones() > CHAIN_LEMMA_X_CAP {
        return Err(EngineError::Size(format!("|X| capped at {CHAIN_LEMMA_X_CAP}")));
    }
    let k = tau.len();
    let mut ell: BTreeMap<u64, usize> = BTreeMap::new();
    let mut parent: BTreeMap<u64, u64> = BTreeMap::new();

    // Reconstructs the blue prefix chain below S covering levels 0..limit.
    let chain_below = |s: u64, limit: usize, ell: &BTreeMap<u64, usize>, parent: &BTreeMap<u64, u64>| -> Vec<u64> {
        let mut segments: Vec<(u64, usize, usize)> = Vec::new(); // (X-part, from, to)
        let mut cur = s;
        let mut hi = limit;
        loop {
            let lo = match parent.get(&cur) {
                Some(&p) => ell[&p],
                None => 0,
            };
            segments.push((cur, lo.min(hi), hi));
            match parent.get(&cur) {
                Some(&p) => {
                    cur = p;
                    hi = lo.min(hi);
                }
                None => break,
            }
        }
        segments.reverse();
        let mut chain = Vec::with_capacity(limit);
        for (xpart, lo, hi) in segments {
            for j in lo..hi {
                chain.push(xpart | prefix_mask(tau, j));
            }
        }
        chain
    };

    let mut subsets = submasks(x_mask);
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        // Lexicographically least proper subset maximizing ℓ.
        let mut base = 0usize;
        let mut par: Option<u64> = None;
        for t in submasks(s) {
            if t == s {
                continue;
            }
            if ell.get(&t).is_some_and(|&l| l > base) {
                base = ell[&t];
                par = Some(t);
            }
        }
        // Smallest red level at or above the inherited floor.
        let red_at = (base..=k).find(|&l| c.color(s | prefix_mask(tau, l)) == Color::Red);
        match red_at {
            Some(l) => {
                ell.insert(s, l);
                if let Some(p) = par {
                    parent.insert(s, p);
                }
            }
            None => {
                // All of S∪[base..k] is blue: assemble the full blue Y-chain.
                let mut chain = match par {
                    Some(p) => chain_below(p, base, &ell, &parent),
                    None => Vec::new(),
                };
                for j in base..=k {
                    chain.push(s | prefix_mask(tau, j));
                }
                debug_assert_eq!(chain.len(), k + 1);
                return Ok(ChainLemmaOutcome::BlueChain(chain));
            }
        }
    }
    let images = ell
        .iter()
        .map(|(&s, &l)| (s, s | prefix_mask(tau, l)))
        .collect();
    Ok(ChainLemmaOutcome::RedCopy(XGoodCopy { x_mask, images }))
}

/// Re-validates a chain-lemma outcome against the coloring it came from.
pub fn validate_chain_outcome(
    c: &Coloring,
    x_mask: u64,
    tau: &[u32],
    outcome: &ChainLemmaOutcome,
) -> bool {
    match outcome {
        ChainLemmaOutcome::RedCopy(copy) => {
            copy.x_mask == x_mask && copy.validate() && copy.monochromatic(c, Color::Red)
        }
        ChainLemmaOutcome::BlueChain(chain) => {
            let y_mask = prefix_mask(tau, tau.len());
            crate::embed::validate_y_chain(chain, x_mask, y_mask, tau)
                && chain.iter().all(|&z| c.color(z) == Color::Blue)
        }
    }
}

// ---------------------------------------------------------------------------
// Blob lemmas.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum BlobOutcome {
    /// The truncated embedding extended to a red full `Q(X)` copy.
    RedCopy(XGoodCopy),
    /// A fully blue blob, i.e. a blue `Q_m` copy.
    BlueBlob(Blob),
}

/// Extends a red X-good embedding of the t-truncated `Q(X)` through fresh
/// m-element blocks, or finds a fully blue blob along the way.
pub fn blob_completion(
    c: &Coloring,
    phi: &TruncatedXGoodCopy,
    m: u32,
) -> Result<BlobOutcome, EngineError> {
    if !phi.validate() {
        return Err(EngineError::InvalidHomomorphism("input truncated copy invalid".into()));
    }
    if !phi.images.values().all(|&v| c.color(v) == Color::Red) {
        return Err(EngineError::InvalidHomomorphism("input truncated copy must be red".into()));
    }
    let n = phi.x_mask.count_ones();
    let t = phi.trunc;
    let cap = 1u64 << c.dim();
    if phi.images.values().any(|&v| v >= cap) {
        return Err(EngineError::Size("image exceeds the host".into()));
    }
    if t >= n {
        return Ok(BlobOutcome::RedCopy(XGoodCopy {
            x_mask: phi.x_mask,
            images: phi.images.clone(),
        }));
    }
    let used = phi.volume() | phi.x_mask;
    let budget = (c.dim() as usize)
        .checked_sub(((n - t) * m) as usize)
        .ok_or(EngineError::Volume { vol: used.count_ones() as usize, limit: 0 })?;
    if used.count_ones() as usize > budget {
        return Err(EngineError::Volume { vol: used.count_ones() as usize, limit: budget });
    }
    // Fresh m-element blocks Y^(t+1..n), lowest available bits first.
    let avail = bits_of(((1u64 << c.dim()) - 1) & !used);
    let mut blocks: Vec<u64> = Vec::new();
    for i in 0..(n - t) as usize {
        let blk = avail[i * m as usize..(i + 1) * m as usize]
            .iter()
            .fold(0u64, |acc, &b| acc | (1u64 << b));
        blocks.push(blk);
    }
    let off_x = phi.volume() & !phi.x_mask;
    let mut images = phi.images.clone();
    let mut subsets = submasks(phi.x_mask);
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        let level = s.count_ones();
        if level <= t {
            continue;
        }
        let mut base = s | off_x;
        for b in &blocks[..(level - t - 1) as usize] {
            base |= b;
        }
        let var = blocks[(level - t - 1) as usize];
        let mut found = None;
        for sub in submasks(var) {
            if c.color(base | sub) == Color::Red {
                found = Some(base | sub);
                break;
            }
        }
        match found {
            Some(v) => {
                images.insert(s, v);
            }
            None => {
                let blob = Blob::new(base, var, None).expect("disjoint by construction");
                debug_assert!(blob.monochromatic(c, Color::Blue));
                return Ok(BlobOutcome::BlueBlob(blob));
            }
        }
    }
    let copy = XGoodCopy { x_mask: phi.x_mask, images };
    assert!(copy.validate() && copy.monochromatic(c, Color::Red), "completion must validate");
    Ok(BlobOutcome::RedCopy(copy))
}

#[derive(Debug, Clone)]
pub enum MiddleOutcome {
    /// A fully blue blob of dimension n.
    BlueBlob(Blob),
    /// A red X-good copy of the middle layers s..t of `Q(X)`.
    RedMiddle { x_mask: u64, s: u32, t: u32, images: BTreeMap<u64, u64> },
}

const MIDDLE_LAYERS_N_CAP: u32 = 3;

/// Blob-per-level extraction inside `Q_{(t−s+2)n}`: a blue `Q_n` copy or a
/// red copy of the middle layers `s..t` of `Q_n`.
pub fn middle_layers_engine(
    c: &Coloring,
    n: u32,
    s: u32,
    t: u32,
) -> Result<MiddleOutcome, EngineError> {
    if !(s <= t && t <= n) {
        return Err(EngineError::Size("need 0 ≤ s ≤ t ≤ n".into()));
    }
    if n > MIDDLE_LAYERS_N_CAP {
        return Err(EngineError::Size(format!("middle layers capped at n ≤ {MIDDLE_LAYERS_N_CAP}")));
    }
    let want_dim = (t - s + 2) * n;
    if c.dim() != want_dim {
        return Err(EngineError::Size(format!(
            "host dimension must be (t-s+2)n = {want_dim}, got {}",
            c.dim()
        )));
    }
    let x_mask = (1u64 << n) - 1;
    // Fresh n-element blocks Y^(s..t) above the X bits.
    let blocks: Vec<u64> = (0..=(t - s))
        .map(|i| ((1u64 << n) - 1) << (n * (i + 1)))
        .collect();
    let mut images = BTreeMap::new();
    for x in submasks(x_mask) {
        let level = x.count_ones();
        if level < s || level > t {
            continue;
        }
        let mut base = x;
        for b in &blocks[..(level - s) as usize] {
            base |= b;
        }
        let var = blocks[(level - s) as usize];
        let mut found = None;
        for sub in submasks(var) {
            if c.color(base | sub) == Color::Red {
                found = Some(base | sub);
                break;
            }
        }
        match found {
            Some(v) => {
                images.insert(x, v);
            }
            None => {
                let blob = Blob::new(base, var, None).expect("disjoint by construction");
                return Ok(MiddleOutcome::BlueBlob(blob));
            }
        }
    }
    Ok(MiddleOutcome::RedMiddle { x_mask, s, t, images })
}

/// Validates a [`MiddleOutcome`] against the coloring.
pub fn validate_middle_outcome(c: &Coloring, out: &MiddleOutcome) -> bool {
    match out {
        MiddleOutcome::BlueBlob(blob) => {
            blob.s_mask & blob.t_mask == 0 && blob.monochromatic(c, Color::Blue)
        }
        MiddleOutcome::RedMiddle { x_mask, s, t, images } => {
            for (&x, &img) in images {
                if x & !x_mask != 0 || img & x_mask != x || c.color(img) != Color::Red {
                    return false;
                }
                let lv = x.count_ones();
                if lv < *s || lv > *t {
                    return false;
                }
                for (&x2, &img2) in images {
                    if x & x2 == x && img & img2 != img {
                        return false;
                    }
                }
            }
            let want = submasks(*x_mask)
                .iter()
                .filter(|m| (*s..=*t).contains(&m.count_ones()))
                .count();
            images.len() == want
        }
    }
}

// ---------------------------------------------------------------------------
// Blockers.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum BlockerWitness {
    /// A Y-avoiding homomorphism, aligned with the input family.
    Avoiding(Vec<u64>),
    /// All homomorphisms are Y-hitting; the search exhausted this many nodes.
    Exhausted { nodes: u64 },
}

#[derive(Debug, Clone)]
pub struct BlockerReport {
    pub is_blocker: bool,
    pub witness: BlockerWitness,
}

const BLOCKER_F_CAP: usize = 16;
const BLOCKER_Y_CAP: u32 = 4;

/// Decides whether `family` is a Y-blocker in `Q(Z)` via the homomorphism
/// criterion: it is one iff no Y-avoiding monotone map `F → Q(Y)` exists.
pub fn blocker_report(family: &[u64], y_mask: u64, dim: u32) -> Result<BlockerReport, EngineError> {
    if family.len() > BLOCKER_F_CAP {
        return Err(EngineError::Size(format!("|F| capped at {BLOCKER_F_CAP}")));
    }
    if y_mask.count_ones() > BLOCKER_Y_CAP {
        return Err(EngineError::Size(format!("|Y| capped at {BLOCKER_Y_CAP}")));
    }
    let cap = 1u64 << dim;
    if family.iter().any(|&f| f >= cap) || y_mask >= cap {
        return Err(EngineError::Size("vertices outside the host lattice".into()));
    }
    // Linear extension of F: ascending (popcount, value).
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by_key(|&i| (family[i].count_ones(), family[i]));
    let y_subs = submasks(y_mask);
    let mut assign = vec![0u64; family.len()];
    let mut nodes = 0u64;

    fn rec(
        family: &[u64],
        order: &[usize],
        y_subs: &[u64],
        y_mask: u64,
        pos: usize,
        assign: &mut Vec<u64>,
        nodes: &mut u64,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        let fv = family[i];
        'cand: for &val in y_subs {
            *nodes += 1;
            if val == fv & y_mask {
                continue; // must be Y-avoiding at every vertex
            }
            for &j in &order[..pos] {
                let fj = family[j];
                if fj & fv == fj && assign[j] & val != assign[j] {
                    continue 'cand; // monotone over comparable predecessors
                }
                if fv & fj == fv && val & assign[j] != val {
                    continue 'cand;
                }
            }
            assign[i] = val;
            if rec(family, order, y_subs, y_mask, pos + 1, assign, nodes) {
                return true;
            }
        }
        false
    }

    let found = rec(family, &order, &y_subs, y_mask, 0, &mut assign, &mut nodes);
    if found {
        Ok(BlockerReport { is_blocker: false, witness: BlockerWitness::Avoiding(assign) })
    } else {
        Ok(BlockerReport { is_blocker: true, witness: BlockerWitness::Exhausted { nodes } })
    }
}

/// Checks that `psi` (aligned with `family`) is a monotone, Y-avoiding map
/// into `Q(Y)`.
pub fn validate_avoiding(family: &[u64], y_mask: u64, psi: &[u64]) -> bool {
    if psi.len() != family.len() {
        return false;
    }
    for (i, (&f, &v)) in family.iter().zip(psi).enumerate() {
        if v & !y_mask != 0 || v == f & y_mask {
            return false;
        }
        for (j, (&f2, &v2)) in family.iter().zip(psi).enumerate() {
            if i != j && f & f2 == f && v & v2 != v {
                return false;
            }
        }
    }
    true
}

/// Turns a Y-avoiding homomorphism into an X-good embedding of `Q(X)` whose
/// image avoids the family, by the iterated-absorption construction
/// `φ_{i+1}(U) = φ_i(U) ∪ ψ(φ_i(X_i))`.
pub fn blocker_to_embedding(
    family: &[u64],
    y_mask: u64,
    psi: &[u64],
    dim: u32,
) -> Result<XGoodCopy, EngineError> {
    if !validate_avoiding(family, y_mask, psi) {
        return Err(EngineError::InvalidHomomorphism("psi is not monotone Y-avoiding".into()));
    }
    let x_mask = ((1u64 << dim) - 1) & !y_mask;
    if x_mask.count_ones() > 4 {
        return Err(EngineError::Size("|X| capped at 4 for embedding construction".into()));
    }
    let lookup = |v: u64| family.iter().position(|&f| f == v);
    let mut subsets = submasks(x_mask);
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let mut images: BTreeMap<u64, u64> = subsets.iter().map(|&s| (s, s)).collect();
    loop {
        // Minimal X_i with φ(X_i) ∈ F, smallest mask among minimal ones.
        let mut hit: Option<(u64, usize)> = None;
        for &s in &subsets {
            if let Some(idx) = lookup(images[&s]) {
                let minimal = subsets
                    .iter()
                    .all(|&t| t == s || t & s != t || lookup(images[&t]).is_none());
                if minimal {
                    hit = Some((s, idx));
                    break;
                }
            }
        }
        let Some((xi, idx)) = hit else {
            break;
        };
        let grow = psi[idx];
        for &s in &subsets {
            if xi & s == xi {
                *images.get_mut(&s).unwrap() |= grow;
            }
        }
    }
    let copy = XGoodCopy { x_mask, images };
    debug_assert!(copy.validate());
    debug_assert!(copy.images.values().all(|v| !family.contains(v)));
    Ok(copy)
}

/// Greedy criticalization: delete vertices in ascending mask order while the
/// family stays a blocker.
pub fn reduce_blocker(family: &[u64], y_mask: u64, dim: u32) -> Result<Vec<u64>, EngineError> {
    let report = blocker_report(family, y_mask, dim)?;
    if !report.is_blocker {
        return Err(EngineError::NotABlocker);
    }
    let mut current: Vec<u64> = family.to_vec();
    current.sort_unstable();
    let mut i = 0;
    while i < current.len() {
        let mut trial = current.clone();
        trial.remove(i);
        if blocker_report(&trial, y_mask, dim)?.is_blocker {
            current = trial;
        } else {
            i += 1;
        }
    }
    Ok(current)
}

/// Splits a Y-blocker along a ground element `a ∈ Y` into the two
/// `(Y∖{a})`-blockers `{F : a ∈ F}` and `{F : a ∉ F}`.
pub fn blocker_restrict(
    family: &[u64],
    y_mask: u64,
    a_bit: u32,
    dim: u32,
) -> Result<(Vec<u64>, Vec<u64>), EngineError> {
    if y_mask.count_ones() < 2 || y_mask >> a_bit & 1 == 0 {
        return Err(EngineError::Size("restrict needs |Y| ≥ 2 and a ∈ Y".into()));
    }
    if !blocker_report(family, y_mask, dim)?.is_blocker {
        return Err(EngineError::NotABlocker);
    }
    let with_a: Vec<u64> = family.iter().copied().filter(|f| f >> a_bit & 1 == 1).collect();
    let without_a: Vec<u64> = family.iter().copied().filter(|f| f >> a_bit & 1 == 0).collect();
    let y2 = y_mask & !(1u64 << a_bit);
    debug_assert!(blocker_report(&with_a, y2, dim)?.is_blocker);
    debug_assert!(blocker_report(&without_a, y2, dim)?.is_blocker);
    Ok((with_a, without_a))
}

// ---------------------------------------------------------------------------
// Duality witness for blue-Λ-free colorings.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum DualityOutcome {
    RedCopy(XGoodCopy),
    BlueShrub(Shrub),
}

const DUALITY_X_CAP: u32 = 4;
const DUALITY_Y_CAP: u32 = 3;

pub fn has_blue_lambda(c: &Coloring) -> bool {
    let lam = build(&CatalogExpr::Lambda).unwrap().expect_plain();
    find_copy(&lam, None, CopyMode::Induced, &Host::ColoredLattice(c), Some(Color::Blue))
        .map(|o| o.is_some())
        .unwrap_or(false)
}

/// For a blue-Λ-free coloring of `Q(X∪Y)`: exactly one of a red X-good copy
/// of `Q(X)` (iff the bottom vertex is embeddable) or a blue Y-shrub.
pub fn duality_witness(
    c: &Coloring,
    x_mask: u64,
    y_mask: u64,
) -> Result<DualityOutcome, EngineError> {
    let universe = (1u64 << c.dim()) - 1;
    if x_mask & y_mask != 0 || x_mask | y_mask != universe {
        return Err(EngineError::Size("X and Y must partition the ground set".into()));
    }
    if x_mask.count_ones() > DUALITY_X_CAP || y_mask.count_ones() > DUALITY_Y_CAP {
        return Err(EngineError::Size(format!(
            "duality witness capped at |X| ≤ {DUALITY_X_CAP}, |Y| ≤ {DUALITY_Y_CAP}"
        )));
    }
    if has_blue_lambda(c) {
        return Err(EngineError::NotLambdaFree);
    }

    // Embeddability of (X-part, Y-part), by the recursive characterization:
    // blue vertices look one step up in Y, red vertices quantify over all
    // strict X-supersets. The recursion strictly increases |X|+|Y|, so a
    // top-down sweep settles it.
    let xs = {
        let mut v = submasks(x_mask);
        v.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
        v
    };
    let ys = {
        let mut v = submasks(y_mask);
        v.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
        v
    };
    let mut emb: BTreeMap<(u64, u64), bool> = BTreeMap::new();
    for &x in &xs {
        for &y in &ys {
            let vertex = x | y;
            let value = match c.color(vertex) {
                Color::Blue => submasks(y_mask)
                    .into_iter()
                    .any(|y2| y2 & y == y && y2 != y && emb[&(x, y2)]),
                Color::Red => submasks(x_mask)
                    .into_iter()
                    .filter(|&x2| x2 & x == x && x2 != x)
                    .all(|x2| emb[&(x2, y)]),
            };
            emb.insert((x, y), value);
        }
    }

    if emb[&(0, 0)] {
        let witness = RedWitnessBuilder { c, x_mask, y_mask, emb: &emb, memo: BTreeMap::new() }
            .build(0, 0);
        let copy = XGoodCopy { x_mask, images: witness };
        debug_assert!(copy.validate() && copy.monochromatic(c, Color::Red));
        Ok(DualityOutcome::RedCopy(copy))
    } else {
        // Climb from a non-embeddable vertex to a blue non-embeddable one
        // with the same Y-part (possible because red non-embeddable vertices
        // always have a non-embeddable strict X-superset).
        let climb = |mut x: u64, y: u64| -> u64 {
            loop {
                if c.color(x | y) == Color::Blue {
                    debug_assert!(!emb[&(x, y)]);
                    return x;
                }
                let next = submasks(x_mask)
                    .into_iter()
                    .find(|&x2| x2 & x == x && x2 != x && !emb[&(x2, y)])
                    .expect("red non-embeddable vertices have a witness superset");
                x = next;
            }
        };
        let y_elems = bits_of(y_mask);
        let tree = FactorialTree::new(&y_elems);
        let mut xi = vec![0u64; tree.len()];
        let mut xparts = vec![0u64; tree.len()];
        // BFS order: verts are sorted by size, prefixes precede extensions.
        for i in 0..tree.len() {
            let seq = &tree.verts[i];
            if seq.is_empty() {
                let x0 = climb(0, 0);
                xparts[i] = x0;
                xi[i] = x0;
                continue;
            }
            let parent_seq = &seq[..seq.len() - 1];
            let parent = tree.verts.iter().position(|v| v == parent_seq).unwrap();
            let under = tree.underlying(i);
            let x = climb(xparts[parent], under);
            xparts[i] = x;
            xi[i] = x | under;
        }
        let shrub = Shrub { tree, y_mask, xi };
        assert!(crate::embed::verify_shrub(&shrub), "blue witness must be a shrub");
        assert!(shrub.xi.iter().all(|&v| c.color(v) == Color::Blue));
        Ok(DualityOutcome::BlueShrub(shrub))
    }
}

struct RedWitnessBuilder<'a> {
    c: &'a Coloring,
    x_mask: u64,
    y_mask: u64,
    emb: &'a BTreeMap<(u64, u64), bool>,
    memo: BTreeMap<(u64, u64), BTreeMap<u64, u64>>,
}

impl<'a> RedWitnessBuilder<'a> {
    /// Witness map for the embeddable vertex (x, y): an X-good red embedding
    /// of `{X' ⊇ x}` whose every image contains (x, y).
    fn build(&mut self, x: u64, y: u64) -> BTreeMap<u64, u64> {
        if let Some(m) = self.memo.get(&(x, y)) {
            return m.clone();
        }
        debug_assert!(self.emb[&(x, y)]);
        let result = if self.c.color(x | y) == Color::Blue {
            // Delegate to the smallest strictly larger embeddable Y-part.
            let y2 = submasks(self.y_mask)
                .into_iter()
                .find(|&y2| y2 & y == y && y2 != y && self.emb[&(x, y2)])
                .expect("blue embeddable vertex has a larger embeddable Y-part");
            self.build(x, y2)
        } else {
            let supers: Vec<u64> = submasks(self.x_mask)
                .into_iter()
                .filter(|&x2| x2 & x == x)
                .collect();
            let mut map = BTreeMap::new();
            for &x2 in &supers {
                // Minimal blue (x*, y) with x ⊆ x* ⊆ x2.
                let blues: Vec<u64> = submasks(x2 & !x)
                    .into_iter()
                    .map(|t| x | t)
                    .filter(|&xs| self.c.color(xs | y) == Color::Blue)
                    .collect();
                let minimals: Vec<u64> = blues
                    .iter()
                    .copied()
                    .filter(|&a| blues.iter().all(|&b| b == a || b & a != b))
                    .collect();
                let img = match minimals.len() {
                    0 => x2 | y,
                    1 => {
                        let sub = self.build(minimals[0], y);
                        sub[&x2]
                    }
                    _ => x2 | self.y_mask,
                };
                map.insert(x2, img);
            }
            map
        };
        self.memo.insert((x, y), result.clone());
        result
    }
}

// ---------------------------------------------------------------------------
// Erdős–Hajnal phase partition.
// ---------------------------------------------------------------------------

/// Partitions a Ċ-free colored lattice into phases F_1..F_t: vertex `X` sits
/// in phase `i` when its down-set realizes exactly the first `i−1` vertices
/// of the forbidden colored chain.
pub fn phase_partition(c: &Coloring, cdot: &ColoredPoset) -> Result<Vec<Vec<u64>>, EngineError> {
    let t = cdot.len();
    // Bottom-up colors of the chain pattern.
    let mut order: Vec<usize> = (0..t).collect();
    for i in 0..t {
        for j in (i + 1)..t {
            if !cdot.poset.comparable(i, j) {
                return Err(EngineError::Size("phase pattern must be a chain".into()));
            }
        }
    }
    order.sort_by_key(|&v| cdot.poset.down_set(v).count_ones());
    let colors: Vec<Color> = order.iter().map(|&v| cdot.colors[v]).collect();

    let size = c.size();
    let mut g = vec![0u32; size as usize];
    for x in 0..size {
        // m = longest realizable prefix strictly below x.
        let mut m = 0u32;
        for b in bits_of(x) {
            m = m.max(g[(x & !(1u64 << b)) as usize]);
        }
        // f = longest prefix realizable with top exactly x.
        let mut f = 0u32;
        for i in (1..=(m + 1).min(t as u32)).rev() {
            if colors[i as usize - 1] == c.color(x) {
                f = i;
                break;
            }
        }
        g[x as usize] = m.max(f);
        if g[x as usize] >= t as u32 {
            return Err(EngineError::NotFree);
        }
    }
    let mut phases = vec![Vec::new(); t];
    for x in 0..size {
        phases[g[x as usize] as usize].push(x);
    }
    Ok(phases)
}

/// Checks the structural phase laws: phases partition the lattice, respect
/// the order, and have the forced colors (switch phases monochromatic; at a
/// non-switch index only the minimal vertices carry the repeated color).
pub fn validate_phases(c: &Coloring, cdot: &ColoredPoset, phases: &[Vec<u64>]) -> bool {
    let t = cdot.len();
    if phases.len() != t {
        return false;
    }
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&v| cdot.poset.down_set(v).count_ones());
    let colors: Vec<Color> = order.iter().map(|&v| cdot.colors[v]).collect();

    let size = c.size();
    let mut phase_of = vec![usize::MAX; size as usize];
    for (i, ph) in phases.iter().enumerate() {
        for &x in ph {
            if phase_of[x as usize] != usize::MAX {
                return false;
            }
            phase_of[x as usize] = i;
        }
    }
    if phase_of.iter().any(|&p| p == usize::MAX) {
        return false; // not a partition
    }
    for x in 0..size {
        for y in 0..size {
            if x & y == x && phase_of[x as usize] > phase_of[y as usize] {
                return false; // order violated
            }
        }
    }
    for (idx, ph) in phases.iter().enumerate() {
        let i = idx + 1; // 1-based phase index
        if i == 1 {
            if ph.iter().any(|&x| c.color(x) == colors[0]) {
                return false;
            }
            continue;
        }
        let (ci, cprev) = (colors[i - 1], colors[i - 2]);
        if ci != cprev {
            if ph.iter().any(|&x| c.color(x) == ci) {
                return false;
            }
        } else {
            for &x in ph {
                let minimal = ph.iter().all(|&w| w == x || w & x != w);
                let want = if minimal { ci } else { ci.flip() };
                if c.color(x) != want {
                    return false;
                }
            }
        }
    }
    true
}
