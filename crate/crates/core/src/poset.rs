//! Finite posets on up to 16 labeled vertices.
//!
//! The relation is stored as a reflexive-transitive bit-matrix: row `i` is a
//! 16-bit word whose bit `j` says `i ≤ j`. Sixteen vertices keep every
//! comparability test word-parallel.

use crate::error::PosetError;
use crate::Color;

pub const MAX_VERTICES: usize = 16;

/// A finite poset. `up[i]` bit `j` is set iff vertex `i ≤ j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: u8,
    up: [u16; MAX_VERTICES],
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.cover_pairs())
    }
}

impl Poset {
    /// The poset with `n` vertices and no relations besides reflexivity.
    pub fn antichain(n: usize) -> Poset {
        assert!((1..=MAX_VERTICES).contains(&n));
        let mut up = [0u16; MAX_VERTICES];
        for (i, row) in up.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        Poset { n: n as u8, up }
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Poset {
        assert!((1..=MAX_VERTICES).contains(&n));
        let mut up = [0u16; MAX_VERTICES];
        let full = ((1u32 << n) - 1) as u16;
        for (i, row) in up.iter_mut().enumerate().take(n) {
            *row = full & !(((1u32 << i) - 1) as u16);
        }
        Poset { n: n as u8, up }
    }

    /// Builds a poset from cover (or any generating) relations by taking the
    /// reflexive-transitive closure. Rejects cyclic inputs.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(PosetError::RangeCount(n));
        }
        let mut up = [0u16; MAX_VERTICES];
        for (i, row) in up.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        for &(a, b) in pairs {
            if a >= n {
                return Err(PosetError::RangeIndex(a, n));
            }
            if b >= n {
                return Err(PosetError::RangeIndex(b, n));
            }
            up[a] |= 1 << b;
        }
        // Transitive closure, one warshall pass per intermediate vertex.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        // Antisymmetry: i ≤ j and j ≤ i forces i = j.
        for i in 0..n {
            for j in (i + 1)..n {
                if up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                    return Err(PosetError::Cycle(i));
                }
            }
        }
        Ok(Poset { n: n as u8, up })
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Bitmask of vertices `j` with `i ≤ j`.
    #[inline]
    pub fn up_set(&self, i: usize) -> u16 {
        self.up[i]
    }

    /// Bitmask of vertices `j` with `j ≤ i`.
    pub fn down_set(&self, i: usize) -> u16 {
        let mut m = 0u16;
        for j in 0..self.len() {
            if self.leq(j, i) {
                m |= 1 << j;
            }
        }
        m
    }

    /// Checks reflexivity, antisymmetry and transitivity of the stored matrix.
    pub fn validate(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if self.up[i] >> i & 1 == 0 {
                return false;
            }
            if self.up[i] >> n != 0 {
                return false;
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return false;
                }
                if self.leq(i, j) && self.up[j] & !self.up[i] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Cover relations (i, j): `i < j` with nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) {
                    let between = (0..n).any(|k| k != i && k != j && self.lt(i, k) && self.lt(k, j));
                    if !between {
                        covers.push((i, j));
                    }
                }
            }
        }
        covers
    }

    /// Longest-chain level of each vertex (0 for minimal vertices).
    pub fn levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut level = vec![0usize; n];
        // Vertices sorted by down-set size give a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| self.down_set(v).count_ones());
        for &v in &order {
            let mut l = 0;
            for u in 0..n {
                if self.lt(u, v) {
                    l = l.max(level[u] + 1);
                }
            }
            level[v] = l;
        }
        level
    }

    /// Height: the largest number of pairwise comparable vertices.
    pub fn height(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.levels().into_iter().max().unwrap() + 1
    }

    /// Width: the largest number of pairwise incomparable vertices, computed
    /// via Dilworth's theorem from a maximum matching in the strict
    /// comparability bigraph.
    pub fn width(&self) -> usize {
        self.len() - self.max_matching().iter().filter(|m| m.is_some()).count()
    }

    /// Maximum matching `succ` on the split digraph: `succ[u] = Some(v)` pairs
    /// `u < v`. Kuhn's algorithm; left vertices and candidates are tried in
    /// ascending index order, so the matching is deterministic.
    fn max_matching(&self) -> Vec<Option<usize>> {
        let n = self.len();
        let mut succ: Vec<Option<usize>> = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];

        fn try_augment(
            p: &Poset,
            u: usize,
            seen: &mut [bool],
            succ: &mut [Option<usize>],
            pred: &mut [Option<usize>],
        ) -> bool {
            for v in 0..p.len() {
                if p.lt(u, v) && !seen[v] {
                    seen[v] = true;
                    if pred[v].is_none()
                        || try_augment(p, pred[v].unwrap(), seen, succ, pred)
                    {
                        pred[v] = Some(u);
                        succ[u] = Some(v);
                        return true;
                    }
                }
            }
            false
        }

        for u in 0..n {
            let mut seen = vec![false; n];
            try_augment(self, u, &mut seen, &mut succ, &mut pred);
        }
        succ
    }

    /// Partitions the vertices into exactly `width()` chains (Dilworth
    /// optimum). Chains are listed by ascending minimal vertex, each chain
    /// bottom-up.
    pub fn chain_cover(&self) -> Vec<Vec<usize>> {
        let succ = self.max_matching();
        let n = self.len();
        let mut has_pred = vec![false; n];
        for s in succ.iter().flatten() {
            has_pred[*s] = true;
        }
        let mut chains = Vec::new();
        for start in 0..n {
            if !has_pred[start] {
                let mut chain = vec![start];
                let mut cur = start;
                while let Some(nxt) = succ[cur] {
                    chain.push(nxt);
                    cur = nxt;
                }
                chains.push(chain);
            }
        }
        chains
    }

    /// Induced subposet on the vertices of `keep` (ascending), relabeled 0..k.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        assert!(!keep.is_empty() && keep.len() <= MAX_VERTICES);
        let mut up = [0u16; MAX_VERTICES];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.leq(i, j) {
                    up[a] |= 1 << b;
                }
            }
        }
        Poset { n: keep.len() as u8, up }
    }

    /// The dual poset (all relations reversed).
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut up = [0u16; MAX_VERTICES];
        for i in 0..n {
            for j in 0..n {
                if self.leq(j, i) {
                    up[i] |= 1 << j;
                }
            }
        }
        Poset { n: self.n, up }
    }

    pub fn minimal_vertices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| (0..self.len()).all(|u| !self.lt(u, v)))
            .collect()
    }

    pub fn maximal_vertices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| (0..self.len()).all(|u| !self.lt(v, u)))
            .collect()
    }

    /// Connected components of the comparability graph, each sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.graph_components(|i, j| self.comparable(i, j))
    }

    fn graph_components<F: Fn(usize, usize) -> bool>(&self, adj: F) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for u in 0..n {
                    if comp[u] == usize::MAX && u != v && adj(v, u) {
                        comp[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Parallel composition: all cross pairs incomparable. Left vertices keep
    /// their indices, right vertices are shifted.
    pub fn parallel(&self, other: &Poset) -> Poset {
        let (n1, n2) = (self.len(), other.len());
        assert!(n1 + n2 <= MAX_VERTICES);
        let mut up = [0u16; MAX_VERTICES];
        up[..n1].copy_from_slice(&self.up[..n1]);
        for j in 0..n2 {
            up[n1 + j] = other.up[j] << n1;
        }
        Poset { n: (n1 + n2) as u8, up }
    }

    /// Series composition: every left vertex below every right vertex.
    pub fn series(&self, other: &Poset) -> Poset {
        let (n1, n2) = (self.len(), other.len());
        assert!(n1 + n2 <= MAX_VERTICES);
        let mut p = self.parallel(other);
        let right = (((1u32 << n2) - 1) << n1) as u16;
        for i in 0..n1 {
            p.up[i] |= right;
        }
        p
    }

    /// Gluing: identifies the unique maximal vertex of `self` with the unique
    /// minimal vertex of `other`. The identified vertex keeps the left slot;
    /// the remaining right vertices follow in order.
    pub fn glue(&self, other: &Poset) -> Result<Poset, PosetError> {
        let max1 = self.maximal_vertices();
        let min2 = other.minimal_vertices();
        if max1.len() != 1 || min2.len() != 1 {
            return Err(PosetError::GlueShape);
        }
        let (z1, z2) = (max1[0], min2[0]);
        let (n1, n2) = (self.len(), other.len());
        let n = n1 + n2 - 1;
        if n > MAX_VERTICES {
            return Err(PosetError::RangeCount(n));
        }
        // Right vertices other than z2, in ascending order, take slots n1…
        let right: Vec<usize> = (0..n2).filter(|&v| v != z2).collect();
        let slot = |v: usize| -> usize {
            if v == z2 {
                z1
            } else {
                n1 + right.iter().position(|&r| r == v).unwrap()
            }
        };
        let mut pairs = Vec::new();
        for i in 0..n1 {
            for j in 0..n1 {
                if self.lt(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                if other.lt(i, j) {
                    pairs.push((slot(i), slot(j)));
                }
            }
        }
        // Everything in P1 is below everything in P2 \ {z2} through the seam.
        for i in 0..n1 {
            if i != z1 {
                for &j in &right {
                    pairs.push((i, slot(j)));
                }
            }
        }
        Poset::from_relations(n, &pairs)
    }

    /// Classification per the trivial/non-trivial dichotomy.
    pub fn classify(&self) -> Classification {
        if let Some(w) = self.first_vee_or_lambda() {
            return Classification::Nontrivial(w);
        }
        // Trivial: a parallel composition of chains; report the chain lengths
        // sorted descending.
        let mut lens: Vec<usize> = self.components().iter().map(|c| c.len()).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Classification::Trivial(lens)
    }

    /// Lexicographically first vertex triple inducing Λ₂ or V₂, if any.
    fn first_vee_or_lambda(&self) -> Option<Witness3> {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let tri = [a, b, c];
                    // One vertex related to the two others, which are
                    // themselves incomparable.
                    for (x, rest) in [(0, [1, 2]), (1, [0, 2]), (2, [0, 1])] {
                        let v = tri[x];
                        let (p, q) = (tri[rest[0]], tri[rest[1]]);
                        if self.comparable(p, q) {
                            continue;
                        }
                        if self.lt(p, v) && self.lt(q, v) {
                            return Some(Witness3 {
                                kind: ThreeKind::Lambda,
                                vertices: [p, q, v],
                            });
                        }
                        if self.lt(v, p) && self.lt(v, q) {
                            return Some(Witness3 {
                                kind: ThreeKind::Vee,
                                vertices: [v, p, q],
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// True iff the poset decomposes into series/parallel compositions of
    /// singletons. Equivalent to containing no induced N-shaped poset.
    pub fn is_series_parallel(&self) -> bool {
        let n = self.len();
        if n == 1 {
            return true;
        }
        let comps = self.components();
        if comps.len() > 1 {
            return comps.iter().all(|c| self.induced(c).is_series_parallel());
        }
        let anti = self.graph_components(|i, j| !self.comparable(i, j));
        if anti.len() > 1 {
            return anti.iter().all(|c| self.induced(c).is_series_parallel());
        }
        false
    }

    /// Order-isomorphism test via backtracking on degree/level invariants.
    pub fn isomorphic(&self, other: &Poset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        let profile = |p: &Poset, v: usize| -> (u32, u32, usize) {
            (
                p.down_set(v).count_ones() - 1,
                p.up_set(v).count_ones() - 1,
                p.levels()[v],
            )
        };
        let mut prof1: Vec<_> = (0..n).map(|v| profile(self, v)).collect();
        let mut prof2: Vec<_> = (0..n).map(|v| profile(other, v)).collect();
        prof1.sort_unstable();
        prof2.sort_unstable();
        if prof1 != prof2 {
            return false;
        }

        let mut map = vec![usize::MAX; n];
        let mut used = 0u16;
        self.iso_backtrack(other, 0, &mut map, &mut used)
    }

    fn iso_backtrack(&self, other: &Poset, v: usize, map: &mut Vec<usize>, used: &mut u16) -> bool {
        let n = self.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if *used >> w & 1 == 1 {
                continue;
            }
            let ok = (0..v).all(|u| {
                self.leq(u, v) == other.leq(map[u], w) && self.leq(v, u) == other.leq(w, map[u])
            });
            if ok
                && self.down_set(v).count_ones() == other.down_set(w).count_ones()
                && self.up_set(v).count_ones() == other.up_set(w).count_ones()
            {
                map[v] = w;
                *used |= 1 << w;
                if self.iso_backtrack(other, v + 1, map, used) {
                    return true;
                }
                *used &= !(1 << w);
                map[v] = usize::MAX;
            }
        }
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeKind {
    /// Unique maximal vertex over two incomparable ones.
    Lambda,
    /// Unique minimal vertex under two incomparable ones.
    Vee,
}

/// An induced copy of Λ₂ or V₂ (vertices listed minimals-first for Λ, the
/// minimum first for V).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness3 {
    pub kind: ThreeKind,
    pub vertices: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Parallel composition of chains with these lengths (descending).
    Trivial(Vec<usize>),
    Nontrivial(Witness3),
}

/// A poset with a blue/red color per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPoset {
    pub poset: Poset,
    pub colors: Vec<Color>,
}

impl ColoredPoset {
    pub fn new(poset: Poset, colors: Vec<Color>) -> Result<ColoredPoset, PosetError> {
        if colors.len() != poset.len() {
            return Err(PosetError::ColorLength { got: colors.len(), want: poset.len() });
        }
        Ok(ColoredPoset { poset, colors })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Largest alternating (`rbr…` or `brb…`) subchain length of a colored
    /// chain. One representative per run of equal colors is optimal.
    pub fn max_alternating(&self) -> Result<usize, PosetError> {
        let n = self.len();
        // The underlying poset must be a chain; recover its bottom-up order.
        let mut order: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.poset.comparable(i, j) {
                    return Err(PosetError::NotAChain(i, j));
                }
            }
        }
        order.sort_by_key(|&v| self.poset.down_set(v).count_ones());
        let mut runs = 1;
        for w in order.windows(2) {
            if self.colors[w[0]] != self.colors[w[1]] {
                runs += 1;
            }
        }
        Ok(runs)
    }

    /// The same poset with both colors flipped.
    pub fn flipped(&self) -> ColoredPoset {
        ColoredPoset {
            poset: self.poset.clone(),
            colors: self.colors.iter().map(|c| c.flip()).collect(),
        }
    }

    pub fn isomorphic(&self, other: &ColoredPoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        // Colored isomorphism = plain backtracking with a color guard.
        let n = self.len();
        fn bt(a: &ColoredPoset, b: &ColoredPoset, v: usize, map: &mut Vec<usize>, used: &mut u16) -> bool {
            let n = a.len();
            if v == n {
                return true;
            }
            for w in 0..n {
                if *used >> w & 1 == 1 || a.colors[v] != b.colors[w] {
                    continue;
                }
                let ok = (0..v).all(|u| {
                    a.poset.leq(u, v) == b.poset.leq(map[u], w)
                        && a.poset.leq(v, u) == b.poset.leq(w, map[u])
                });
                if ok {
                    map[v] = w;
                    *used |= 1 << w;
                    if bt(a, b, v + 1, map, used) {
                        return true;
                    }
                    *used &= !(1 << w);
                }
            }
            false
        }
        let mut map = vec![usize::MAX; n];
        let mut used = 0u16;
        bt(self, other, 0, &mut map, &mut used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, Built, CatalogExpr};

    fn chain_comp(lens: &[usize]) -> Poset {
        let mut p = Poset::chain(lens[0]);
        for &l in &lens[1..] {
            p = p.parallel(&Poset::chain(l));
        }
        p
    }

    #[test]
    fn from_relations_identity_case() {
        let p = Poset::from_relations(1, &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
        assert!(p.validate());
    }

    #[test]
    fn from_relations_closure() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2), "transitivity forced");
        assert!(p.isomorphic(&Poset::chain(3)));
    }

    #[test]
    fn from_relations_cycle() {
        assert!(matches!(
            Poset::from_relations(2, &[(0, 1), (1, 0)]),
            Err(PosetError::Cycle(_))
        ));
        assert!(matches!(
            Poset::from_relations(2, &[(0, 5)]),
            Err(PosetError::RangeIndex(5, 2))
        ));
    }

    #[test]
    fn height_width_basics() {
        assert_eq!(Poset::chain(5).height(), 5);
        assert_eq!(Poset::antichain(4).width(), 4);
        let q3 = match build(&CatalogExpr::Q(3)).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        assert_eq!(q3.width(), 3); // Sperner: C(3,1)
        assert_eq!(q3.height(), 4);
    }

    #[test]
    fn chain_cover_c441() {
        let p = chain_comp(&[4, 4, 1]);
        let cover = p.chain_cover();
        assert_eq!(cover.len(), 3);
        let mut sizes: Vec<usize> = cover.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 4, 4]);
        assert_eq!(p.width(), 3);
        // Every cover member must be a chain and the chains partition.
        let mut seen = 0u16;
        for ch in &cover {
            for w in ch.windows(2) {
                assert!(p.lt(w[0], w[1]));
            }
            for &v in ch {
                assert_eq!(seen >> v & 1, 0);
                seen |= 1 << v;
            }
        }
        assert_eq!(seen, (1 << p.len()) - 1);
    }

    #[test]
    fn compose_laws() {
        let a2 = Poset::chain(1).parallel(&Poset::chain(1));
        assert!(a2.isomorphic(&Poset::antichain(2)));
        let k22 = Poset::antichain(2).series(&Poset::antichain(2));
        match build(&CatalogExpr::K(vec![2, 2])).unwrap() {
            Built::Plain(k) => assert!(k22.isomorphic(&k)),
            _ => unreachable!(),
        }
        assert_eq!(
            Poset::chain(2).parallel(&Poset::chain(3)).height(),
            3,
            "parallel height is the max"
        );
        assert_eq!(Poset::chain(2).series(&Poset::chain(3)).height(), 5);
    }

    #[test]
    fn glue_diamonds() {
        let d2 = match build(&CatalogExpr::K(vec![1, 2, 1])).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        let glued = d2.glue(&d2).unwrap();
        assert_eq!(glued.len(), 7);
        match build(&CatalogExpr::K(vec![1, 2, 1, 2, 1])).unwrap() {
            Built::Plain(k) => assert!(glued.isomorphic(&k)),
            _ => unreachable!(),
        }
        // Glue precondition: antichains have no unique extremes.
        assert!(Poset::antichain(2).glue(&Poset::chain(1)).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            chain_comp(&[2, 1]).classify(),
            Classification::Trivial(vec![2, 1])
        );
        let vee = match build(&CatalogExpr::Vee).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        match vee.classify() {
            Classification::Nontrivial(w) => {
                assert_eq!(w.kind, ThreeKind::Vee);
                assert_eq!(w.vertices, [0, 1, 2]);
            }
            _ => panic!("V₂ is nontrivial"),
        }
        let q2 = match build(&CatalogExpr::Q(2)).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        assert!(matches!(q2.classify(), Classification::Nontrivial(_)));
    }

    #[test]
    fn series_parallel_examples() {
        let n = match build(&CatalogExpr::NPoset).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        assert!(!n.is_series_parallel());
        assert!(Poset::chain(7).is_series_parallel());
        let sd32 = match build(&CatalogExpr::Sd(3, 2)).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        assert!(sd32.is_series_parallel());
    }

    #[test]
    fn iso_examples() {
        let c3 = Poset::chain(3);
        let relabeled = Poset::from_relations(3, &[(2, 0), (0, 1)]).unwrap();
        assert!(c3.isomorphic(&relabeled));
        let vee = match build(&CatalogExpr::Vee).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        let lam = match build(&CatalogExpr::Lambda).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        assert!(!vee.isomorphic(&lam));
        let k112 = match build(&CatalogExpr::K(vec![1, 1, 2])).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        let hook = match build(&CatalogExpr::Hook).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        assert!(!k112.isomorphic(&hook));
    }

    #[test]
    fn max_alternating_examples() {
        let all_red = ColoredPoset::new(Poset::chain(4), vec![Color::Red; 4]).unwrap();
        assert_eq!(all_red.max_alternating().unwrap(), 1);
        let rrbbr = ColoredPoset::new(
            Poset::chain(5),
            vec![Color::Red, Color::Red, Color::Blue, Color::Blue, Color::Red],
        )
        .unwrap();
        assert_eq!(rrbbr.max_alternating().unwrap(), 3);
        let not_chain = ColoredPoset::new(Poset::antichain(2), vec![Color::Red; 2]).unwrap();
        assert!(not_chain.max_alternating().is_err());
    }

    #[test]
    fn dual_involution() {
        let n = match build(&CatalogExpr::NPoset).unwrap() {
            Built::Plain(p) => p,
            _ => unreachable!(),
        };
        assert_eq!(n.dual().dual(), n);
        assert_eq!(n.dual().height(), n.height());
        assert_eq!(n.dual().width(), n.width());
    }
}
