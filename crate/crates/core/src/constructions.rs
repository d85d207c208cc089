//! Lower-bound coloring gallery: each constructor emits a coloring together
//! with the forbidden-object claims it supports; `verify_coloring` checks any
//! claim list exhaustively (with a documented weaker, sampled check for
//! sparse colorings).

use crate::catalog::{build, CatalogExpr};
use crate::combinatorics::{alpha, beta, binomial, n_star};
use crate::embed::{find_copy, CopyMode, Embedding, Host};
use crate::error::ConstructionError;
use crate::lattice::{layered_coloring, Coloring, DENSE_DIM_CAP};
use crate::poset::Poset;
use crate::Color;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// One forbidden object: a pattern, a copy mode, and either a color filter
/// (monochromatic claims) or exact pattern colors.
#[derive(Debug, Clone)]
pub struct Forbid {
    pub label: String,
    pub pattern: Poset,
    pub pattern_colors: Option<Vec<Color>>,
    pub mode: CopyMode,
    pub filter: Option<Color>,
}

impl Forbid {
    pub fn blue(label: impl Into<String>, pattern: Poset) -> Forbid {
        Forbid {
            label: label.into(),
            pattern,
            pattern_colors: None,
            mode: CopyMode::Induced,
            filter: Some(Color::Blue),
        }
    }

    pub fn red(label: impl Into<String>, pattern: Poset) -> Forbid {
        Forbid {
            label: label.into(),
            pattern,
            pattern_colors: None,
            mode: CopyMode::Induced,
            filter: Some(Color::Red),
        }
    }

    pub fn colored(label: impl Into<String>, pattern: crate::poset::ColoredPoset) -> Forbid {
        Forbid {
            label: label.into(),
            pattern: pattern.poset,
            pattern_colors: Some(pattern.colors),
            mode: CopyMode::Colored,
            filter: None,
        }
    }
}

/// A constructed coloring plus the claims its verifier must confirm.
#[derive(Debug, Clone)]
pub struct Construction {
    pub name: String,
    pub coloring: Coloring,
    pub claims: Vec<Forbid>,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub label: String,
    pub violation: Option<Embedding>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub outcomes: Vec<VerifyOutcome>,
    /// Set when the coloring was sparse and only a restricted vertex set was
    /// searched; absence of a violation is then a weaker statement.
    pub restricted: bool,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.violation.is_none())
    }
}

/// Exhaustively confirms absence of every forbidden object, or returns the
/// violating embedding. Sparse colorings are searched over the explicit
/// (blue) set plus `sparse_samples` seeded default-colored vertices — a
/// weaker check, flagged in the report.
pub fn verify_coloring(
    c: &Coloring,
    forbid: &[Forbid],
    sparse_seed: u64,
    sparse_samples: usize,
) -> Result<VerifyReport, ConstructionError> {
    let mut outcomes = Vec::new();
    let restricted = !c.is_dense();
    let allowed: Option<Vec<u64>> = if restricted {
        let (default, explicit) = c.sparse_parts().expect("sparse");
        let mut set: BTreeSet<u64> = explicit.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(sparse_seed);
        let _ = default;
        for _ in 0..sparse_samples {
            let m = rng.gen_range(0..c.size());
            set.insert(m);
        }
        Some(set.into_iter().collect())
    } else {
        None
    };
    for f in forbid {
        let hit = match &allowed {
            Some(list) => find_copy(
                &f.pattern,
                f.pattern_colors.as_deref(),
                f.mode,
                &Host::Restricted { coloring: c, allowed: list },
                f.filter,
            ),
            None => find_copy(
                &f.pattern,
                f.pattern_colors.as_deref(),
                f.mode,
                &Host::ColoredLattice(c),
                f.filter,
            ),
        }
        .map_err(|e| ConstructionError::CapExceeded(e.to_string()))?;
        outcomes.push(VerifyOutcome { label: f.label.clone(), violation: hit });
    }
    Ok(VerifyReport { outcomes, restricted })
}

fn plain(e: &CatalogExpr) -> Poset {
    build(e).expect("catalog pattern").expect_plain()
}

/// Blue on the prefix chain `[1]⊂…⊂[N]` and the complement chain
/// `[N]∖[1]⊃…⊃∅`, red elsewhere. The blue set is a union of two chains, so
/// it has no antichain of size 3; the red remainder misses `Q_{N−2}`.
pub fn two_chain_coloring(dim: u32) -> Result<Construction, ConstructionError> {
    if dim < 1 || dim > DENSE_DIM_CAP {
        return Err(ConstructionError::Range(format!("two_chain needs 1 ≤ N ≤ {DENSE_DIM_CAP}")));
    }
    let universe = (1u64 << dim) - 1;
    let mut c = Coloring::constant(dim, Color::Red).expect("dense");
    for i in 1..=dim {
        let prefix = (1u64 << i) - 1;
        c.set(prefix, Color::Blue);
        c.set(universe ^ prefix, Color::Blue);
    }
    let mut claims = vec![Forbid::blue("blue A_3", plain(&CatalogExpr::Antichain(3)))];
    if dim >= 2 && dim <= 2 + 4 {
        claims.push(Forbid::red(
            format!("red Q_{}", dim - 2),
            plain(&CatalogExpr::Q(dim - 2)),
        ));
    }
    Ok(Construction { name: format!("two_chain({dim})"), coloring: c, claims })
}

/// Layered: blue iff `|Z| ≤ r` or `|Z| ≥ n+r+1` in `Q_{n+2r+1}`. The red band
/// has exactly `n` layers; every blue vertex lives on a symmetric chain
/// through layer `r`, of which there are only `C(n+2r+1, r)`.
pub fn antichain_layered(n: u32, r: u32) -> Result<Construction, ConstructionError> {
    let dim = n + 2 * r + 1;
    if dim > 12 {
        return Err(ConstructionError::Range("antichain_layered desk cap is N ≤ 12".into()));
    }
    let blue: Vec<u32> = (0..=dim).filter(|&l| l <= r || l >= n + r + 1).collect();
    let c = layered_coloring(dim, &blue).expect("within cap");
    let mut claims = Vec::new();
    if n <= 4 {
        claims.push(Forbid::red(format!("red Q_{n}"), plain(&CatalogExpr::Q(n))));
    }
    let cover = binomial(dim as u64, r as u64);
    if cover + 1 <= 16 {
        claims.push(Forbid::blue(
            format!("blue A_{}", cover + 1),
            plain(&CatalogExpr::Antichain(cover as u32 + 1)),
        ));
    }
    Ok(Construction { name: format!("antichain_layered({n},{r})"), coloring: c, claims })
}

/// Layered two-chain-composition bound: blue on layers `{0,…,t1−1}` and the
/// top layer of `Q_{n+t1}`; the remaining `n` layers are red. Any blue
/// `t1`-chain passes through `∅` or the full set, which are comparable to
/// everything, so no blue `C_{t1,1}` (hence no `C_{t1,t2}`) exists.
pub fn cc_layered(n: u32, t1: u32) -> Result<Construction, ConstructionError> {
    if n < 1 || t1 < 1 {
        return Err(ConstructionError::Range("cc_layered needs n, t1 ≥ 1".into()));
    }
    let dim = n + t1;
    if dim > 12 {
        return Err(ConstructionError::Range("cc_layered desk cap is N ≤ 12".into()));
    }
    let mut blue: Vec<u32> = (0..t1).collect();
    blue.push(dim);
    let c = layered_coloring(dim, &blue).expect("within cap");
    let mut claims = vec![Forbid::blue(
        format!("blue C_{{{t1},1}}"),
        plain(&CatalogExpr::ChainComp(vec![t1, 1])),
    )];
    if n <= 4 {
        claims.push(Forbid::red(format!("red Q_{n}"), plain(&CatalogExpr::Q(n))));
    }
    Ok(Construction { name: format!("cc_layered({n},{t1})"), coloring: c, claims })
}

/// Layered three-chain-composition bound for `t1 ≤ t2+1`: blue on layers
/// `{0,1,…,t1−1}` and the two top layers of `Q_{n+t1+1}`; extra blue layers
/// are the lowest available ones.
pub fn ccc_layered(n: u32, t1: u32) -> Result<Construction, ConstructionError> {
    if n < 1 || t1 < 2 {
        return Err(ConstructionError::Range("ccc_layered needs n ≥ 1, t1 ≥ 2".into()));
    }
    let dim = n + t1 + 1;
    if dim > 12 {
        return Err(ConstructionError::Range("ccc_layered desk cap is N ≤ 12".into()));
    }
    let mut blue: Vec<u32> = (0..t1).collect(); // layers 0,1 plus the t1−2 lowest others
    blue.push(dim - 1);
    blue.push(dim);
    let c = layered_coloring(dim, &blue).expect("within cap");
    let t2 = (t1 - 1).max(1);
    let mut claims = vec![Forbid::blue(
        format!("blue C_{{{t1},{t2},1}}"),
        plain(&CatalogExpr::ChainComp(vec![t1, t2, 1])),
    )];
    if n <= 4 {
        claims.push(Forbid::red(format!("red Q_{n}"), plain(&CatalogExpr::Q(n))));
    }
    Ok(Construction { name: format!("ccc_layered({n},{t1})"), coloring: c, claims })
}

/// Half/half layered diagonal-diamond coloring of `Q_{2α(n)−1}`: red below
/// the middle, blue above. Neither half has room for an antichain of size `n`
/// under a common extreme vertex.
pub fn dn_lower(n: u32) -> Result<Construction, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::Range("dn_lower needs n ≥ 2".into()));
    }
    if n > 3 {
        return Err(ConstructionError::CapExceeded("dn_lower verified at n ≤ 3".into()));
    }
    let a = alpha(n as u64);
    let dim = 2 * a - 1;
    let blue: Vec<u32> = (a..=dim).collect();
    let c = layered_coloring(dim, &blue).expect("within cap");
    let d = plain(&CatalogExpr::Diamond(n));
    let claims = vec![
        Forbid::blue(format!("blue D_{n}"), d.clone()),
        Forbid::red(format!("red D_{n}"), d),
    ];
    Ok(Construction { name: format!("dn_lower({n})"), coloring: c, claims })
}

/// Fork-diagonal coloring of `Q_{N*(n)}`: red strictly below layer
/// `β(N*,n)`, blue from there up.
pub fn vn_lower(n: u32) -> Result<Construction, ConstructionError> {
    if n < 1 {
        return Err(ConstructionError::Range("vn_lower needs n ≥ 1".into()));
    }
    if n > 3 {
        return Err(ConstructionError::CapExceeded("vn_lower verified at n ≤ 3".into()));
    }
    let ns = n_star(n as u64);
    let b = beta(ns, n as u64).expect("N* ≥ α(n)");
    let blue: Vec<u32> = (b..=ns).collect();
    let c = layered_coloring(ns, &blue).expect("within cap");
    let v = plain(&CatalogExpr::Fork(n));
    let claims = vec![
        Forbid::blue(format!("blue V_{n}"), v.clone()),
        Forbid::red(format!("red V_{n}"), v),
    ];
    Ok(Construction { name: format!("vn_lower({n})"), coloring: c, claims })
}

/// The four-band alternating-chain-free coloring built from incomparable
/// families S (low) and T (high): blue below n/2, red on `V_T ∪ W_S`, blue on
/// `V_S ∪ W_T`, red above `N − n/2`.
pub fn eh_chain_coloring(
    dim: u32,
    n: u32,
    s_fam: &[u64],
    t_fam: &[u64],
) -> Result<Construction, ConstructionError> {
    if dim < 2 * n {
        return Err(ConstructionError::Range("eh_chain needs N ≥ 2n".into()));
    }
    if dim > 12 {
        return Err(ConstructionError::Range("eh_chain desk cap is N ≤ 12".into()));
    }
    for &s in s_fam {
        for &t in t_fam {
            if !(s.count_ones() < t.count_ones() && s & t != s) {
                return Err(ConstructionError::Incomparability(s, t));
            }
        }
    }
    let mut c = Coloring::constant(dim, Color::Red).expect("dense");
    let in_v_t = |z: u64| 2 * z.count_ones() >= n && t_fam.iter().any(|&t| z & t == z);
    let in_v_s =
        |z: u64| 2 * z.count_ones() <= 2 * dim - n && s_fam.iter().any(|&s| z & s == s);
    for z in 0..c.size() {
        let lv2 = 2 * z.count_ones();
        let color = if lv2 < n {
            Color::Blue
        } else if in_v_t(z) || (lv2 <= dim && !in_v_s(z)) {
            Color::Red // V_T ∪ W_S
        } else if in_v_s(z) || lv2 <= 2 * dim - n {
            Color::Blue // V_S ∪ W_T
        } else {
            Color::Red
        };
        c.set(z, color);
    }
    let rbr4 = build(&CatalogExpr::Alt(Color::Red, 4)).expect("alt chain").expect_colored();
    let claims = vec![Forbid::colored("colored rbr-chain of length 4", rbr4)];
    Ok(Construction {
        name: format!("eh_chain({dim},{n},|S|={},|T|={})", s_fam.len(), t_fam.len()),
        coloring: c,
        claims,
    })
}

/// Classification of vertices by the four-band rules, used by the interval
/// invariant check.
pub fn eh_chain_red_core(dim: u32, n: u32, s_fam: &[u64], t_fam: &[u64], z: u64) -> bool {
    let lv2 = 2 * z.count_ones();
    let in_v_t = lv2 >= n && t_fam.iter().any(|&t| z & t == z);
    let in_v_s = lv2 <= 2 * dim - n && s_fam.iter().any(|&s| z & s == s);
    let in_w_s = lv2 >= n && lv2 <= dim && !in_v_s;
    in_v_t || in_w_s
}

// ---------------------------------------------------------------------------
// Shrub-forest sampler.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct ShrubForestConfig {
    /// Constants of the asymptotic guarantee; configurable, no finite-scale
    /// success promise.
    pub gamma: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub retries: u32,
}

impl Default for ShrubForestConfig {
    fn default() -> Self {
        ShrubForestConfig { gamma: 14.9, delta1: 0.135, delta2: 0.3, retries: 16 }
    }
}

#[derive(Debug, Clone)]
pub enum SampleOutcome {
    Coloring(Coloring),
    Failure { attempts: u32, reason: String },
}

/// Samples one framework per k-subset Y (blocks of α(k) fresh elements, a
/// random half-weight shift set X_Y) and, when the pairwise condition
/// `X_{Y1} ∩ Z_{Y2} ⊄ X_{Y2}` holds for all pairs, emits the union of the
/// shifted shrubs in blue over a red background.
pub fn shrub_forest_sample(
    dim: u32,
    k: u32,
    seed: u64,
    cfg: &ShrubForestConfig,
) -> Result<SampleOutcome, ConstructionError> {
    if dim > 30 {
        return Err(ConstructionError::CapExceeded("dimension cap is 30".into()));
    }
    if k == 0 {
        return Ok(SampleOutcome::Coloring(Coloring::constant(dim, Color::Red).expect("cap")));
    }
    let a = alpha(k as u64);
    let need = k + k * a;
    if need > dim {
        return Err(ConstructionError::Range(format!(
            "need k + k·α(k) = {need} ground elements, have {dim}"
        )));
    }
    let subsets = k_subsets(dim, k);
    if subsets.len() > 5000 {
        return Err(ConstructionError::CapExceeded(format!(
            "{} k-subsets exceed the sampling cap",
            subsets.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for attempt in 0..cfg.retries.max(1) {
        let mut frameworks: Vec<(u64, u64, Vec<u32>, u64)> = Vec::new(); // (y, x, a_bits, z)
        for &y in &subsets {
            let mut rest: Vec<u32> = (0..dim).filter(|b| y >> b & 1 == 0).collect();
            rest.shuffle(&mut rng);
            let a_bits: Vec<u32> = rest[..(k * a) as usize].to_vec();
            let z_mask: u64 = rest[(k * a) as usize..].iter().fold(0, |m, &b| m | (1u64 << b));
            let mut x_mask = 0u64;
            for b in rest[(k * a) as usize..].iter() {
                if rng.gen_bool(0.5) {
                    x_mask |= 1u64 << b;
                }
            }
            frameworks.push((y, x_mask, a_bits, z_mask));
        }
        for (i, f1) in frameworks.iter().enumerate() {
            for (j, f2) in frameworks.iter().enumerate() {
                if i != j && f1.1 & f2.3 & !f2.1 == 0 {
                    // X_{Y1} ∩ Z_{Y2} ⊆ X_{Y2}: this attempt fails.
                    if attempt + 1 == cfg.retries.max(1) {
                        return Ok(SampleOutcome::Failure {
                            attempts: attempt + 1,
                            reason: "pairwise framework condition failed".into(),
                        });
                    }
                    continue 'attempt;
                }
            }
        }
        // Build the shifted shrubs; their union is the blue set.
        let mut blue = BTreeSet::new();
        for (y, x_mask, a_bits, _) in &frameworks {
            let y_elems: Vec<u32> = (0..dim).filter(|b| y >> b & 1 == 1).collect();
            let mut blocks = Vec::new();
            for i in 0..k as usize {
                let bits = &a_bits[i * a as usize..(i + 1) * a as usize];
                let antichain = antichain_in_bits(bits, k as usize).ok_or_else(|| {
                    ConstructionError::Range("block cannot host the antichain".into())
                })?;
                let mask = bits.iter().fold(0u64, |m, &b| m | (1u64 << b));
                blocks.push(crate::embed::ShrubBlock { mask, antichain });
            }
            let shrub = crate::embed::build_shrub(&y_elems, &blocks)
                .map_err(|e| ConstructionError::Range(e.to_string()))?;
            for v in shrub.xi {
                blue.insert(v | x_mask);
            }
        }
        if !blue_lambda_free(&blue) {
            return Ok(SampleOutcome::Failure {
                attempts: attempt + 1,
                reason: "blue union not Λ-free (overlapping shrubs)".into(),
            });
        }
        let coloring = if dim <= DENSE_DIM_CAP {
            let mut c = Coloring::constant(dim, Color::Red).expect("cap");
            for &b in &blue {
                c.set(b, Color::Blue);
            }
            c
        } else {
            Coloring::sparse(dim, Color::Red, blue).map_err(|e| ConstructionError::Range(e.to_string()))?
        };
        return Ok(SampleOutcome::Coloring(coloring));
    }
    Ok(SampleOutcome::Failure { attempts: cfg.retries, reason: "retries exhausted".into() })
}

/// Every vertex's blue down-set must be a chain (parallel up-trees).
pub fn blue_lambda_free(blue: &BTreeSet<u64>) -> bool {
    for &v in blue {
        let below: Vec<u64> = blue.iter().copied().filter(|&u| u & v == u).collect();
        for (i, a) in below.iter().enumerate() {
            for b in below.iter().skip(i + 1) {
                if a & b != *a && a & b != *b {
                    return false;
                }
            }
        }
    }
    true
}

fn k_subsets(dim: u32, k: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = (1u64 << k) - 1;
    let limit = 1u64 << dim;
    while m < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
        if c == 0 {
            break;
        }
    }
    out
}

/// The lexicographically first `k` middle-layer masks over the given bits.
fn antichain_in_bits(bits: &[u32], k: usize) -> Option<Vec<u64>> {
    let b = bits.len();
    let half = b / 2;
    if binomial(b as u64, half as u64) < k as u64 {
        return None;
    }
    if b == 0 {
        return if k <= 1 { Some(vec![0]) } else { None };
    }
    let mut local = (1u64 << half) - 1;
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let mut abs = 0u64;
        for (i, &bit) in bits.iter().enumerate() {
            if local >> i & 1 == 1 {
                abs |= 1u64 << bit;
            }
        }
        out.push(abs);
        if half == 0 {
            break;
        }
        let c = local & local.wrapping_neg();
        let r = local + c;
        local = (((r ^ local) >> 2) / c) | r;
    }
    Some(out)
}
