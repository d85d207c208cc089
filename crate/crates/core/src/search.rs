//! Exact decision procedure and Ramsey-number computation with pruning,
//! symmetry reduction, and machine-checkable certificates.
//!
//! The engine walks colorings of `Q_N` vertex by vertex in (popcount, value)
//! order. After each assignment it checks, incrementally, whether a forbidden
//! copy through the new vertex appeared; a vertex whose both colors are
//! forbidden triggers backtracking, a vertex with one live color is forced
//! without branching. Vertices of the first two layers may additionally be
//! canonicalized under the ground-set permutation group (and, for
//! swap-symmetric problems, under color swap).

use crate::embed::{find_copy, validate_embedding, CopyMode, Host};
use crate::error::SearchError;
use crate::lattice::Coloring;
use crate::poset::{ColoredPoset, Poset};
use crate::Color;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::Instant;

pub const DIM_CAP: u32 = 6;
/// Dimensions above this require an explicit budget.
pub const FREE_DIM_CAP: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Induced,
    Weak,
}

impl SearchMode {
    fn copy_mode(self) -> CopyMode {
        match self {
            SearchMode::Induced => CopyMode::Induced,
            SearchMode::Weak => CopyMode::Weak,
        }
    }
}

/// What the engine forbids in a coloring of `Q_N`.
#[derive(Debug, Clone)]
pub enum Problem {
    /// No blue copy of `blue`, no red copy of `red` (induced or weak).
    Ramsey { mode: SearchMode, blue: Poset, red: Poset },
    /// No colored copy of `pattern`, no monochromatic copy of `Q_n`.
    ErdosHajnal { pattern: ColoredPoset, n: u32 },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub node_limit: Option<u64>,
    pub time_limit_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Lex-leader canonicalization over the lowest layers.
    pub symmetry: bool,
    /// How many layers the canonicalization covers: 1 pins the bottom vertex
    /// under color swap (when applicable), 2 additionally sorts the singleton
    /// colors. Deeper prefixes are not canonicalized.
    pub symmetry_layers: u32,
    pub threads: usize,
    pub budget: Budget,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { symmetry: true, symmetry_layers: 2, threads: 1, budget: Budget::default() }
    }
}

/// Either a witness coloring avoiding every forbidden object, or an
/// exhaustion record proving none exists at this dimension.
#[derive(Debug, Clone)]
pub enum Certificate {
    Witness(Coloring),
    Exhausted { nodes: u64, classes: u64, elapsed_ms: u64 },
}

impl Certificate {
    pub fn is_witness(&self) -> bool {
        matches!(self, Certificate::Witness(_))
    }

    /// The certificate line format for exhaustion records.
    pub fn exhausted_line(&self, dim: u32) -> Option<String> {
        match self {
            Certificate::Exhausted { nodes, classes, elapsed_ms } => {
                Some(format!("UNSAT N={dim} nodes={nodes} classes={classes} ms={elapsed_ms}"))
            }
            Certificate::Witness(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
enum PatternColors {
    Mono(Color),
    Exact(Vec<Color>),
}

#[derive(Debug, Clone)]
struct CompiledPattern {
    poset: Poset,
    colors: PatternColors,
    mode: CopyMode,
    order: Vec<usize>,
    maximal: Vec<usize>,
    height: u32,
}

impl CompiledPattern {
    fn new(poset: Poset, colors: PatternColors, mode: CopyMode) -> CompiledPattern {
        let levels = poset.levels();
        let mut order: Vec<usize> = (0..poset.len()).collect();
        order.sort_by_key(|&v| {
            let deg = poset.down_set(v).count_ones() + poset.up_set(v).count_ones();
            (std::cmp::Reverse(deg), levels[v], v)
        });
        let maximal = poset.maximal_vertices();
        let height = poset.height() as u32;
        CompiledPattern { poset, colors, mode, order, maximal, height }
    }

    fn wanted(&self, v: usize) -> Color {
        match &self.colors {
            PatternColors::Mono(c) => *c,
            PatternColors::Exact(cs) => cs[v],
        }
    }
}

struct Engine {
    dim: u32,
    size: usize,
    verts: Vec<u64>,
    below: Vec<u64>,
    above: Vec<u64>,
    incomp: Vec<u64>,
    patterns: Vec<CompiledPattern>,
    swap_symmetric: bool,
    symmetry: bool,
    symmetry_layers: u32,
    /// Number of vertices in the first two layers (the canonicalized prefix).
    sym_depth: usize,
    budget: Budget,
}

struct State {
    blue: u64,
    red: u64,
    /// Count of assigned vertices per (color, level).
    level_cnt: [[u8; 7]; 2],
    nodes: u64,
    classes: u64,
}

enum Walk {
    Sat { blue: u64 },
    Unsat,
}

impl Engine {
    fn new(problem: &Problem, dim: u32, options: &SearchOptions) -> Result<Engine, SearchError> {
        if dim > DIM_CAP {
            return Err(SearchError::CapExceeded(format!("decision dimension capped at {DIM_CAP}")));
        }
        if dim > FREE_DIM_CAP
            && options.budget.node_limit.is_none()
            && options.budget.time_limit_ms.is_none()
        {
            return Err(SearchError::CapExceeded(format!(
                "dimensions above {FREE_DIM_CAP} require an explicit budget"
            )));
        }
        let patterns = match problem {
            Problem::Ramsey { mode, blue, red } => vec![
                CompiledPattern::new(blue.clone(), PatternColors::Mono(Color::Blue), mode.copy_mode()),
                CompiledPattern::new(red.clone(), PatternColors::Mono(Color::Red), mode.copy_mode()),
            ],
            Problem::ErdosHajnal { pattern, n } => {
                if *n > 4 {
                    return Err(SearchError::CapExceeded("monochromatic target capped at Q_4".into()));
                }
                let qn = crate::catalog::build(&crate::catalog::CatalogExpr::Q(*n))
                    .map_err(|e| SearchError::CapExceeded(e.to_string()))?
                    .expect_plain();
                vec![
                    CompiledPattern::new(
                        pattern.poset.clone(),
                        PatternColors::Exact(pattern.colors.clone()),
                        CopyMode::Colored,
                    ),
                    CompiledPattern::new(qn.clone(), PatternColors::Mono(Color::Blue), CopyMode::Induced),
                    CompiledPattern::new(qn, PatternColors::Mono(Color::Red), CopyMode::Induced),
                ]
            }
        };
        let swap_symmetric = match problem {
            Problem::Ramsey { blue, red, .. } => blue.isomorphic(red),
            Problem::ErdosHajnal { pattern, .. } => pattern.flipped().isomorphic(pattern),
        };
        let size = 1usize << dim;
        let mut verts: Vec<u64> = (0..size as u64).collect();
        verts.sort_by_key(|&m| (m.count_ones(), m));
        let mut below = vec![0u64; size];
        let mut above = vec![0u64; size];
        let mut incomp = vec![0u64; size];
        for i in 0..size {
            for j in 0..size {
                if i == j {
                    continue;
                }
                if verts[j] & verts[i] == verts[j] {
                    below[i] |= 1 << j;
                } else if verts[i] & verts[j] == verts[i] {
                    above[i] |= 1 << j;
                } else {
                    incomp[i] |= 1 << j;
                }
            }
        }
        let sym_depth = (1 + dim as usize).min(size);
        Ok(Engine {
            dim,
            size,
            verts,
            below,
            above,
            incomp,
            patterns,
            swap_symmetric,
            symmetry: options.symmetry,
            symmetry_layers: options.symmetry_layers,
            sym_depth,
            budget: options.budget,
        })
    }

    /// True iff assigning `color` to vertex `id` completes a forbidden copy
    /// among the assigned vertices.
    fn violates(&self, state: &State, id: usize, color: Color) -> bool {
        let (blue, red) = match color {
            Color::Blue => (state.blue | 1 << id, state.red),
            Color::Red => (state.blue, state.red | 1 << id),
        };
        for pat in &self.patterns {
            // Level gate: a copy of height h needs h distinct populated
            // levels in the relevant color(s).
            if let PatternColors::Mono(c) = pat.colors {
                if c != color {
                    continue;
                }
                let mut populated = 0u32;
                for l in 0..=self.dim as usize {
                    let extra =
                        (c == color && self.verts[id].count_ones() as usize == l) as u8;
                    if state.level_cnt[color_idx(c)][l] + extra > 0 {
                        populated += 1;
                    }
                }
                if populated < pat.height {
                    continue;
                }
            }
            for &p in &pat.maximal {
                if pat.wanted(p) != color {
                    continue;
                }
                if self.pinned_copy(pat, p, id, blue, red) {
                    return true;
                }
            }
        }
        false
    }

    /// Searches for a copy of `pat` among the assigned vertices that maps
    /// pattern vertex `pin` to host vertex `pin_id`.
    fn pinned_copy(&self, pat: &CompiledPattern, pin: usize, pin_id: usize, blue: u64, red: u64) -> bool {
        let k = pat.poset.len();
        let mut images = vec![usize::MAX; k];
        images[pin] = pin_id;
        let order: Vec<usize> = pat.order.iter().copied().filter(|&v| v != pin).collect();
        self.pinned_rec(pat, &order, 0, &mut images, blue, red)
    }

    fn pinned_rec(
        &self,
        pat: &CompiledPattern,
        order: &[usize],
        pos: usize,
        images: &mut Vec<usize>,
        blue: u64,
        red: u64,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let mut cands = match pat.wanted(v) {
            Color::Blue => blue,
            Color::Red => red,
        };
        for (u, &img) in images.iter().enumerate() {
            if img == usize::MAX || u == v {
                continue;
            }
            cands &= if pat.poset.lt(u, v) {
                self.above[img]
            } else if pat.poset.lt(v, u) {
                self.below[img]
            } else if pat.mode == CopyMode::Weak {
                !(1u64 << img) // incomparable pattern pair: only injectivity
            } else {
                self.incomp[img]
            };
            if cands == 0 {
                return false;
            }
        }
        let mut rest = cands;
        while rest != 0 {
            let id = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            images[v] = id;
            if self.pinned_rec(pat, order, pos + 1, images, blue, red) {
                return true;
            }
            images[v] = usize::MAX;
        }
        images[v] = usize::MAX;
        false
    }

    fn check_budget(&self, state: &State, start: &Instant, stop: &AtomicBool) -> Result<(), SearchError> {
        if stop.load(Ordering::Relaxed) {
            // Another worker finished; unwind as a pseudo-budget stop.
            return Err(SearchError::BudgetExceeded { nodes: state.nodes, elapsed_ms: 0 });
        }
        if let Some(limit) = self.budget.node_limit {
            if state.nodes > limit {
                return Err(SearchError::BudgetExceeded {
                    nodes: state.nodes,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                });
            }
        }
        if let Some(ms) = self.budget.time_limit_ms {
            if state.nodes % 1024 == 0 && start.elapsed().as_millis() as u64 > ms {
                return Err(SearchError::BudgetExceeded {
                    nodes: state.nodes,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                });
            }
        }
        Ok(())
    }

    fn level_of(&self, id: usize) -> usize {
        self.verts[id].count_ones() as usize
    }

    fn apply(&self, state: &mut State, id: usize, color: Color) {
        match color {
            Color::Blue => state.blue |= 1 << id,
            Color::Red => state.red |= 1 << id,
        }
        state.level_cnt[color_idx(color)][self.level_of(id)] += 1;
        state.nodes += 1;
    }

    fn undo(&self, state: &mut State, id: usize, color: Color) {
        match color {
            Color::Blue => state.blue &= !(1 << id),
            Color::Red => state.red &= !(1 << id),
        }
        state.level_cnt[color_idx(color)][self.level_of(id)] -= 1;
    }

    /// Colors that respect the lex-leader canonicalization at this vertex.
    fn symmetry_allows(&self, state: &State, id: usize, color: Color) -> bool {
        if !self.symmetry || id >= self.sym_depth {
            return true;
        }
        if id == 0 {
            // Swap-symmetric problems pin the bottom vertex blue.
            return !(self.symmetry_layers >= 1 && self.swap_symmetric && color == Color::Red);
        }
        // Singletons: colors must be non-decreasing (blue before red), so
        // once a red singleton appears every later singleton is red.
        if self.symmetry_layers >= 2
            && color == Color::Blue
            && state.red >> (id - 1) & 1 == 1
            && id >= 2
        {
            return false;
        }
        true
    }

    fn dfs(
        &self,
        state: &mut State,
        id: usize,
        start: &Instant,
        stop: &AtomicBool,
    ) -> Result<Walk, SearchError> {
        if id == self.size {
            return Ok(Walk::Sat { blue: state.blue });
        }
        if id == self.sym_depth {
            state.classes += 1;
        }
        self.check_budget(state, start, stop)?;
        let mut live: [Option<Color>; 2] = [None, None];
        let mut live_n = 0;
        for color in [Color::Blue, Color::Red] {
            if self.symmetry_allows(state, id, color) && !self.violates(state, id, color) {
                live[live_n] = Some(color);
                live_n += 1;
            }
        }
        for c in live.into_iter().flatten() {
            self.apply(state, id, c);
            let out = self.dfs(state, id + 1, start, stop)?;
            if let Walk::Sat { .. } = out {
                return Ok(out);
            }
            self.undo(state, id, c);
        }
        Ok(Walk::Unsat)
    }

    fn coloring_from_blue(&self, blue: u64) -> Coloring {
        let mut c = Coloring::constant(self.dim, Color::Red).expect("within cap");
        for (id, &mask) in self.verts.iter().enumerate() {
            if blue >> id & 1 == 1 {
                c.set(mask, Color::Blue);
            }
        }
        c
    }

    /// Independent re-verification of a witness with the generic copy search.
    fn verify_witness(&self, c: &Coloring) -> bool {
        for pat in &self.patterns {
            let host = Host::ColoredLattice(c);
            let hit = match &pat.colors {
                PatternColors::Mono(color) => {
                    find_copy(&pat.poset, None, pat.mode, &host, Some(*color))
                }
                PatternColors::Exact(colors) => {
                    find_copy(&pat.poset, Some(colors), CopyMode::Colored, &host, None)
                }
            };
            match hit {
                Ok(None) => {}
                Ok(Some(emb)) => {
                    debug_assert!(validate_embedding(
                        &pat.poset,
                        match &pat.colors {
                            PatternColors::Exact(cs) => Some(cs),
                            _ => None,
                        },
                        pat.mode,
                        &host,
                        &emb.map
                    ));
                    return false;
                }
                Err(_) => return false,
            }
        }
        true
    }

    /// Frontier states for parallel search: all consistent partial colorings
    /// of the canonicalized prefix plus a few free levels for balance.
    fn frontier(&self, depth: usize, start: &Instant) -> Result<(Vec<State>, u64, u64), SearchError> {
        let stop = AtomicBool::new(false);
        let mut frontier = Vec::new();
        let mut state =
            State { blue: 0, red: 0, level_cnt: [[0; 7]; 2], nodes: 0, classes: 0 };
        self.expand(&mut state, 0, depth, &mut frontier, start, &stop)?;
        let nodes = state.nodes;
        let classes = state.classes;
        Ok((frontier, nodes, classes))
    }

    fn expand(
        &self,
        state: &mut State,
        id: usize,
        depth: usize,
        out: &mut Vec<State>,
        start: &Instant,
        stop: &AtomicBool,
    ) -> Result<(), SearchError> {
        if id == depth {
            out.push(State {
                blue: state.blue,
                red: state.red,
                level_cnt: state.level_cnt,
                nodes: 0,
                classes: 0,
            });
            return Ok(());
        }
        if id == self.sym_depth {
            state.classes += 1;
        }
        self.check_budget(state, start, stop)?;
        for color in [Color::Blue, Color::Red] {
            if self.symmetry_allows(state, id, color) && !self.violates(state, id, color) {
                self.apply(state, id, color);
                self.expand(state, id + 1, depth, out, start, stop)?;
                self.undo(state, id, color);
            }
        }
        Ok(())
    }
}

fn color_idx(c: Color) -> usize {
    match c {
        Color::Blue => 0,
        Color::Red => 1,
    }
}

/// Decides whether some coloring of `Q_dim` avoids every forbidden object.
/// Returns a verified witness, or an exhaustion certificate.
pub fn decide(problem: &Problem, dim: u32, options: &SearchOptions) -> Result<Certificate, SearchError> {
    let engine = Engine::new(problem, dim, options)?;
    let start = Instant::now();
    if options.threads <= 1 || engine.size <= engine.sym_depth + 2 {
        let mut state =
            State { blue: 0, red: 0, level_cnt: [[0; 7]; 2], nodes: 0, classes: 0 };
        let stop = AtomicBool::new(false);
        let out = engine.dfs(&mut state, 0, &start, &stop)?;
        return finish(&engine, out, state.nodes, state.classes, start);
    }

    // Parallel mode: expand a frontier past the canonicalized prefix, then
    // farm the subtrees out. Node totals over a full exhaustion are
    // independent of the thread count.
    let depth = (engine.sym_depth + 4).min(engine.size);
    let (frontier, prefix_nodes, classes) = engine.frontier(depth, &start)?;
    let queue = Mutex::new(frontier);
    let found: Mutex<Option<u64>> = Mutex::new(None);
    let stop = AtomicBool::new(false);
    let total_nodes = Mutex::new(prefix_nodes);
    let budget_hit = Mutex::new(None::<SearchError>);
    std::thread::scope(|scope| {
        for _ in 0..options.threads {
            scope.spawn(|| loop {
                let Some(mut task) = queue.lock().unwrap().pop() else {
                    return;
                };
                if stop.load(Ordering::Relaxed) {
                    return;
                }
                match engine.dfs(&mut task, depth, &start, &stop) {
                    Ok(Walk::Sat { blue }) => {
                        *found.lock().unwrap() = Some(blue);
                        stop.store(true, Ordering::Relaxed);
                        *total_nodes.lock().unwrap() += task.nodes;
                        return;
                    }
                    Ok(Walk::Unsat) => {
                        *total_nodes.lock().unwrap() += task.nodes;
                    }
                    Err(e) => {
                        *budget_hit.lock().unwrap() = Some(e);
                        stop.store(true, Ordering::Relaxed);
                        *total_nodes.lock().unwrap() += task.nodes;
                        return;
                    }
                }
            });
        }
    });
    let nodes = *total_nodes.lock().unwrap();
    if let Some(blue) = *found.lock().unwrap() {
        return finish(&engine, Walk::Sat { blue }, nodes, classes, start);
    }
    if let Some(e) = budget_hit.lock().unwrap().take() {
        if let SearchError::BudgetExceeded { .. } = e {
            return Err(SearchError::BudgetExceeded {
                nodes,
                elapsed_ms: start.elapsed().as_millis() as u64,
            });
        }
        return Err(e);
    }
    finish(&engine, Walk::Unsat, nodes, classes, start)
}

fn finish(
    engine: &Engine,
    out: Walk,
    nodes: u64,
    classes: u64,
    start: Instant,
) -> Result<Certificate, SearchError> {
    match out {
        Walk::Sat { blue } => {
            let c = engine.coloring_from_blue(blue);
            assert!(engine.verify_witness(&c), "witness failed independent re-verification");
            Ok(Certificate::Witness(c))
        }
        Walk::Unsat => Ok(Certificate::Exhausted {
            nodes,
            classes,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }),
    }
}

/// Minimal `N` such that every coloring of `Q_N` contains a blue copy of
/// `blue` or a red copy of `red`. Scans from the layered lower bound.
pub fn ramsey(
    mode: SearchMode,
    blue: &Poset,
    red: &Poset,
    max_n: u32,
    options: &SearchOptions,
) -> Result<u32, SearchError> {
    let problem =
        Problem::Ramsey { mode, blue: blue.clone(), red: red.clone() };
    let start = (blue.height() + red.height()).saturating_sub(2) as u32;
    for dim in start..=max_n {
        match decide(&problem, dim, options)? {
            Certificate::Exhausted { .. } => return Ok(dim),
            Certificate::Witness(_) => {}
        }
    }
    Err(SearchError::CapExceeded(format!("no exhaustion up to max_n = {max_n}")))
}

/// Minimal `N` such that every coloring of `Q_N` contains a colored copy of
/// the pattern or a monochromatic `Q_n`.
pub fn eh_number(
    pattern: &ColoredPoset,
    n: u32,
    max_n: u32,
    options: &SearchOptions,
) -> Result<u32, SearchError> {
    let problem = Problem::ErdosHajnal { pattern: pattern.clone(), n };
    for dim in 0..=max_n {
        match decide(&problem, dim, options)? {
            Certificate::Exhausted { .. } => return Ok(dim),
            Certificate::Witness(_) => {}
        }
    }
    Err(SearchError::CapExceeded(format!("no exhaustion up to max_n = {max_n}")))
}

/// Decides whether some P-free `[k]`-blocker exists in `Q([N])`, by
/// exhaustive enumeration of subposets.
pub fn m_p_decision(p: &Poset, k: u32, dim: u32) -> Result<bool, SearchError> {
    if dim > 4 || k > 2 {
        return Err(SearchError::CapExceeded("m_P decision capped at N ≤ 4, k ≤ 2".into()));
    }
    if k == 0 || k > dim {
        return Ok(false); // Y must be a nonempty subset of the ground set
    }
    let size = 1usize << dim;
    let y_mask = (1u64 << k) - 1;
    let dummy = Coloring::constant(dim, Color::Red).expect("within cap");
    for fam_bits in 1u64..(1 << size) {
        let family: Vec<u64> = (0..size as u64).filter(|&m| fam_bits >> m & 1 == 1).collect();
        let host = Host::Restricted { coloring: &dummy, allowed: &family };
        let free = find_copy(p, None, CopyMode::Induced, &host, None)
            .map_err(|e| SearchError::CapExceeded(e.to_string()))?
            .is_none();
        if !free {
            continue;
        }
        let rep = crate::engines::blocker_report(&family, y_mask, dim)
            .map_err(|e| SearchError::CapExceeded(e.to_string()))?;
        if rep.is_blocker {
            return Ok(true);
        }
    }
    Ok(false)
}
