//! Shared brute-force oracles for the integration suites. Everything here is
//! independent of the library's search paths: plain enumerations only.

#![allow(dead_code)]

use poset_ramsey::embed::{submasks, validate_embedding, CopyMode, Host};
use poset_ramsey::lattice::Coloring;
use poset_ramsey::poset::Poset;
use poset_ramsey::Color;

/// All-injections copy oracle.
pub fn naive_copy_exists(
    pattern: &Poset,
    pattern_colors: Option<&[Color]>,
    mode: CopyMode,
    host: &Host,
    filter: Option<Color>,
) -> bool {
    let verts: Vec<u64> = match host {
        Host::Lattice(d) => (0..1u64 << d).collect(),
        Host::ColoredLattice(c) => (0..c.size()).collect(),
        Host::Poset(p) => (0..p.len() as u64).collect(),
        Host::ColoredPoset(c) => (0..c.len() as u64).collect(),
        Host::Restricted { allowed, .. } => allowed.to_vec(),
    };
    let mut map = vec![0u64; pattern.len()];
    fn rec(
        pattern: &Poset,
        colors: Option<&[Color]>,
        mode: CopyMode,
        host: &Host,
        filter: Option<Color>,
        verts: &[u64],
        map: &mut Vec<u64>,
        pos: usize,
    ) -> bool {
        if pos == pattern.len() {
            if let Some(f) = filter {
                if map.iter().any(|&v| host.color_of(v) != Some(f)) {
                    return false;
                }
            }
            return validate_embedding(pattern, colors, mode, host, map);
        }
        for &v in verts {
            if map[..pos].contains(&v) {
                continue;
            }
            map[pos] = v;
            if rec(pattern, colors, mode, host, filter, verts, map, pos + 1) {
                return true;
            }
        }
        false
    }
    rec(pattern, pattern_colors, mode, host, filter, &verts, &mut map, 0)
}

/// Host color access for the oracle (mirrors the library's semantics).
trait HostColor {
    fn color_of(&self, v: u64) -> Option<Color>;
}

impl<'a> HostColor for Host<'a> {
    fn color_of(&self, v: u64) -> Option<Color> {
        match self {
            Host::Lattice(_) | Host::Poset(_) => None,
            Host::ColoredLattice(c) => Some(c.color(v)),
            Host::ColoredPoset(c) => Some(c.colors[v as usize]),
            Host::Restricted { coloring, .. } => Some(coloring.color(v)),
        }
    }
}

/// Enumerates the Y-part functions of X-good embeddings of the full `Q(X)`
/// into `Q(X∪Y)`: monotone maps from subsets of `x_mask` to subsets of
/// `y_mask`. Calls `f` with the full image list; stops early when `f`
/// returns `true`.
pub fn for_each_xgood_copy(
    x_mask: u64,
    y_mask: u64,
    f: &mut dyn FnMut(&[(u64, u64)]) -> bool,
) -> bool {
    let mut subsets = submasks(x_mask);
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let mut images: Vec<(u64, u64)> = Vec::new();
    fn rec(
        subsets: &[u64],
        y_mask: u64,
        pos: usize,
        images: &mut Vec<(u64, u64)>,
        f: &mut dyn FnMut(&[(u64, u64)]) -> bool,
    ) -> bool {
        if pos == subsets.len() {
            return f(images);
        }
        let s = subsets[pos];
        'cand: for y in submasks(y_mask) {
            let img = s | y;
            // Monotone against all earlier comparable sets (full images).
            for &(s2, img2) in images.iter() {
                if s2 & s == s2 && img2 & img != img2 {
                    continue 'cand;
                }
                if s & s2 == s && img & img2 != img {
                    continue 'cand;
                }
            }
            images.push((s, img));
            if rec(subsets, y_mask, pos + 1, images, f) {
                return true;
            }
            images.pop();
        }
        false
    }
    rec(&subsets, y_mask, 0, &mut images, f)
}

/// Definition-based blocker test: `family` meets every X-good copy of `Q(X)`.
pub fn is_blocker_by_definition(family: &[u64], y_mask: u64, dim: u32) -> bool {
    let x_mask = ((1u64 << dim) - 1) & !y_mask;
    // Look for one X-good copy avoiding the family.
    let avoiding = for_each_xgood_copy(x_mask, y_mask, &mut |images| {
        images.iter().all(|(_, img)| !family.contains(img))
    });
    !avoiding
}

/// Exhaustive search for a monochromatic X-good copy of `Q(X)`.
pub fn exists_monochromatic_xgood(c: &Coloring, x_mask: u64, y_mask: u64, color: Color) -> bool {
    for_each_xgood_copy(x_mask, y_mask, &mut |images| {
        images.iter().all(|&(_, img)| c.color(img) == color)
    })
}

/// Exhaustive search for a monochromatic Y-shrub (a Y-good embedding of the
/// factorial tree) in a colored lattice.
pub fn exists_monochromatic_y_shrub(c: &Coloring, y_mask: u64, color: Color) -> bool {
    let dim = c.dim();
    let x_mask = ((1u64 << dim) - 1) & !y_mask;
    let y_elems: Vec<u32> = (0..dim).filter(|b| y_mask >> b & 1 == 1).collect();
    let tree = poset_ramsey::embed::FactorialTree::new(&y_elems);
    let n = tree.len();
    let mut xi = vec![u64::MAX; n];
    fn rec(
        tree: &poset_ramsey::embed::FactorialTree,
        c: &Coloring,
        x_mask: u64,
        color: Color,
        pos: usize,
        xi: &mut Vec<u64>,
    ) -> bool {
        if pos == tree.len() {
            return true;
        }
        let under = tree.underlying(pos);
        'cand: for xpart in submasks(x_mask) {
            let img = xpart | under;
            if c.color(img) != color {
                continue;
            }
            for prev in 0..pos {
                if xi[prev] == img {
                    continue 'cand;
                }
                let rel = tree.leq(prev, pos) as u8 * 2 + tree.leq(pos, prev) as u8;
                let img_le = (xi[prev] & img == xi[prev]) as u8 * 2 + (img & xi[prev] == img) as u8;
                if rel != img_le {
                    continue 'cand;
                }
            }
            xi[pos] = img;
            if rec(tree, c, x_mask, color, pos + 1, xi) {
                return true;
            }
            xi[pos] = u64::MAX;
        }
        false
    }
    rec(&tree, c, x_mask, color, 0, &mut xi)
}

/// Brute-force maximum antichain size of a poset.
pub fn max_antichain(p: &Poset) -> usize {
    let n = p.len();
    let mut best = 0;
    for bits in 0u32..(1 << n) {
        let chosen: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
        if chosen.len() <= best {
            continue;
        }
        let anti = chosen
            .iter()
            .all(|&a| chosen.iter().all(|&b| a == b || !p.comparable(a, b)));
        if anti {
            best = chosen.len();
        }
    }
    best
}

/// All labeled posets on `n ≤ 6` vertices, by enumerating orientations of
/// vertex pairs and keeping the transitive ones (4231 at n = 5, 130023 at
/// n = 6).
pub fn all_posets(n: usize) -> Vec<Poset> {
    assert!(n >= 1 && n <= 6);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut states = vec![0u8; pairs.len()];
    loop {
        let rels: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&states)
            .filter_map(|(&(i, j), &s)| match s {
                1 => Some((i, j)),
                2 => Some((j, i)),
                _ => None,
            })
            .collect();
        if let Ok(p) = Poset::from_relations(n, &rels) {
            // Keep only those whose relation equals the closure of `rels`
            // (i.e. count each poset once, not per generating set).
            let direct: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| i != j).map(move |j| (i, j)))
                .filter(|&(i, j)| p.lt(i, j))
                .collect();
            if direct.len() == rels.len() {
                out.push(p);
            }
        }
        // Odometer.
        let mut k = 0;
        loop {
            if k == states.len() {
                return out;
            }
            states[k] += 1;
            if states[k] <= 2 {
                break;
            }
            states[k] = 0;
            k += 1;
        }
    }
}

/// Deterministic pseudo-random posets on up to 8 vertices.
pub fn random_poset(seed: u64, n: usize) -> Poset {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match next() % 4 {
                0 => pairs.push((i, j)),
                1 => pairs.push((j, i)),
                _ => {}
            }
        }
    }
    // Random orientations can close a cycle; reorient everything upward then.
    Poset::from_relations(n, &pairs).unwrap_or_else(|_| {
        let forward: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Poset::from_relations(n, &forward).expect("forward edges are acyclic")
    })
}

/// Deterministic pseudo-random coloring of `Q_dim`.
pub fn random_coloring(seed: u64, dim: u32) -> Coloring {
    let mut state = seed.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(0xdeadbeef);
    let mut c = Coloring::constant(dim, Color::Red).unwrap();
    for m in 0..c.size() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        if state & 1 == 1 {
            c.set(m, Color::Blue);
        }
    }
    c
}

/// Random blue-Λ-free coloring: grow the blue set vertex by vertex, keeping
/// every blue down-set a chain.
pub fn random_lambda_free_coloring(seed: u64, dim: u32) -> Coloring {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(42);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut c = Coloring::constant(dim, Color::Red).unwrap();
    let size = c.size();
    let mut blue: Vec<u64> = Vec::new();
    for _ in 0..2 * size {
        let v = next() % size;
        if blue.contains(&v) {
            continue;
        }
        let mut trial = blue.clone();
        trial.push(v);
        let ok = trial.iter().all(|&top| {
            let below: Vec<u64> = trial.iter().copied().filter(|&u| u & top == u).collect();
            below
                .iter()
                .all(|&a| below.iter().all(|&b| a & b == a || b & a == b))
        });
        if ok {
            blue.push(v);
        }
    }
    for &v in &blue {
        c.set(v, Color::Blue);
    }
    c
}
