//! Exact chromatic index by backtracking, criticality certification and seeded sampling of
//! Δ-colorings of `G - e`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::ColorSet;
use crate::coloring::{Color, ColoringError, PartialEdgeColoring, MAX_PALETTE};
use crate::graph::{Edge, Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Budget for one decision (one χ′ call, one criticality test, one sample).
    pub timeout: Duration,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { timeout: Duration::from_secs(10) }
    }
}

impl OracleConfig {
    pub fn with_timeout(timeout: Duration) -> Self {
        Self { timeout }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the chromatic index of an edgeless graph is not decided here")]
    Edgeless,
    #[error("search exceeded its time budget")]
    Timeout,
    #[error("{0:?} is not critical: G - e has no Δ-edge-coloring")]
    NotCritical(Edge),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Class {
    #[serde(rename = "class1")]
    One,
    #[serde(rename = "class2")]
    Two,
}

#[derive(Debug, Clone)]
pub struct ChiResult {
    pub chi_prime: usize,
    pub class: Class,
    /// A full proper coloring with colors in `[1, chi_prime]`.
    pub witness: PartialEdgeColoring,
}

/// Extra requirements for [`find_coloring`].
#[derive(Debug, Clone, Default)]
pub struct Constraints {
    /// Edge left uncolored.
    pub skip: Option<Edge>,
    /// Edges with a prescribed color.
    pub fixed: Vec<(Edge, Color)>,
    /// Colors that must stay missing at a vertex.
    pub forbidden: Vec<(usize, ColorSet)>,
}

/// χ′(G), deciding Δ-colorability and falling back to a (Δ+1)-coloring.
pub fn chromatic_index(g: &Graph, cfg: &OracleConfig) -> Result<ChiResult, OracleError> {
    if g.edge_count() == 0 {
        return Err(OracleError::Edgeless);
    }
    let graph = Arc::new(g.clone());
    let delta = g.max_degree();
    if let Some(witness) = find_coloring(&graph, delta, &Constraints::default(), cfg)? {
        return Ok(ChiResult { chi_prime: delta, class: Class::One, witness });
    }
    let witness = find_coloring(&graph, delta + 1, &Constraints::default(), cfg)?
        .expect("every simple graph is (Δ+1)-edge-colorable");
    Ok(ChiResult { chi_prime: delta + 1, class: Class::Two, witness })
}

/// Whether `G - e` is Δ(G)-colorable, for a class 2 graph; `false` for class 1 graphs.
pub fn is_critical_edge(g: &Graph, e: Edge, cfg: &OracleConfig) -> Result<bool, OracleError> {
    g.require_edge(e.0, e.1)?;
    let chi = chromatic_index(g, cfg)?;
    if chi.class == Class::One {
        return Ok(false);
    }
    Ok(delta_coloring_without(&Arc::new(g.clone()), e, cfg)?.is_some())
}

/// A Δ(G)-coloring of `G - e` as a partial coloring of `G`, if one exists.
pub fn delta_coloring_without(
    g: &Arc<Graph>,
    e: Edge,
    cfg: &OracleConfig,
) -> Result<Option<PartialEdgeColoring>, OracleError> {
    let constraints = Constraints { skip: Some(e), ..Constraints::default() };
    find_coloring(g, g.max_degree(), &constraints, cfg)
}

/// Criticality data computed with a single χ′ decision shared across all edge deletions.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub chi: ChiResult,
    pub connected: bool,
    /// For class 2 graphs, a Δ-coloring of `G - e` per edge id when `e` is critical.
    pub deletions: Vec<Option<PartialEdgeColoring>>,
}

impl Certificate {
    pub fn is_delta_critical(&self) -> bool {
        self.connected
            && self.chi.class == Class::Two
            && self.deletions.iter().all(Option::is_some)
    }

    pub fn critical_edge_count(&self) -> usize {
        self.deletions.iter().filter(|d| d.is_some()).count()
    }
}

pub fn certify(g: &Graph, cfg: &OracleConfig) -> Result<Certificate, OracleError> {
    let chi = chromatic_index(g, cfg)?;
    let graph = chi.witness.graph_arc().clone();
    let connected = g.is_connected();
    let mut deletions = vec![None; g.edge_count()];
    if chi.class == Class::Two {
        for (id, &e) in g.edges().iter().enumerate() {
            deletions[id] = delta_coloring_without(&graph, e, cfg)?;
            if deletions[id].is_none() && connected {
                // Not critical; remaining edges are still recorded for reporting.
                continue;
            }
        }
    }
    Ok(Certificate { chi, connected, deletions })
}

/// Connected, class 2 and every edge critical.
pub fn is_delta_critical(g: &Graph, cfg: &OracleConfig) -> Result<bool, OracleError> {
    if g.edge_count() == 0 || !g.is_connected() {
        return Ok(false);
    }
    let chi = chromatic_index(g, cfg)?;
    if chi.class == Class::One {
        return Ok(false);
    }
    let graph = chi.witness.graph_arc().clone();
    for &e in g.edges() {
        if delta_coloring_without(&graph, e, cfg)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `count` Δ-colorings of `G - e` from randomized backtracking seeded by `seed`. Repeats are
/// possible; no uniformity is claimed.
pub fn sample_colorings(
    g: &Arc<Graph>,
    e: Edge,
    count: usize,
    seed: u64,
    cfg: &OracleConfig,
) -> Result<Vec<PartialEdgeColoring>, OracleError> {
    g.require_edge(e.0, e.1)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let constraints = Constraints { skip: Some(e), ..Constraints::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut search = Search::new(g, g.max_degree(), &constraints, cfg, Some(&mut rng))?;
        match search.run()? {
            Some(c) => out.push(c),
            None => return Err(OracleError::NotCritical(e)),
        }
    }
    Ok(out)
}

/// Exact search for a proper `k`-coloring of `G - skip` honoring fixed colors and per-vertex
/// forbidden colors. `Ok(None)` means no such coloring exists.
pub fn find_coloring(
    g: &Arc<Graph>,
    k: usize,
    constraints: &Constraints,
    cfg: &OracleConfig,
) -> Result<Option<PartialEdgeColoring>, OracleError> {
    Search::new(g, k, constraints, cfg, None)?.run()
}

struct Search<'a> {
    graph: &'a Arc<Graph>,
    k: Color,
    palette: ColorSet,
    colors: Vec<Color>,
    /// Present colors plus forbidden ones.
    blocked: Vec<ColorSet>,
    todo: Vec<u32>,
    pending: Vec<usize>,
    remaining: usize,
    /// Colors not yet used anywhere and not mentioned by any constraint; interchangeable.
    fresh: ColorSet,
    rng: Option<&'a mut ChaCha8Rng>,
    nodes: u64,
    deadline: Instant,
    infeasible: bool,
}

impl<'a> Search<'a> {
    fn new(
        graph: &'a Arc<Graph>,
        k: usize,
        constraints: &Constraints,
        cfg: &OracleConfig,
        rng: Option<&'a mut ChaCha8Rng>,
    ) -> Result<Self, OracleError> {
        if k > MAX_PALETTE as usize {
            return Err(ColoringError::PaletteTooLarge(k).into());
        }
        let n = graph.vertex_count();
        let palette = ColorSet::palette(k as Color);
        let mut s = Search {
            graph,
            k: k as Color,
            palette,
            colors: vec![0; graph.edge_count()],
            blocked: vec![ColorSet::EMPTY; n],
            todo: vec![0; n],
            pending: Vec::new(),
            remaining: 0,
            fresh: palette,
            rng,
            nodes: 0,
            deadline: Instant::now() + cfg.timeout,
            infeasible: false,
        };
        let skip = match constraints.skip {
            Some(e) => Some(graph.require_edge(e.0, e.1)?),
            None => None,
        };
        for &(v, set) in &constraints.forbidden {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
            }
            s.blocked[v] |= set & palette;
            s.fresh = s.fresh - set;
        }
        for &(e, c) in &constraints.fixed {
            let id = graph.require_edge(e.0, e.1)?;
            if c == 0 || c > s.k {
                return Err(ColoringError::ColorOutOfRange { color: c, k: s.k }.into());
            }
            s.fresh.remove(c);
            if Some(id) == skip || s.colors[id] != 0 {
                s.infeasible |= s.colors[id] != c;
                continue;
            }
            if s.blocked[e.0].contains(c) || s.blocked[e.1].contains(c) {
                s.infeasible = true;
                continue;
            }
            s.place(id, c);
        }
        for id in 0..graph.edge_count() {
            if Some(id) != skip && s.colors[id] == 0 {
                let Edge(u, v) = graph.edge(id);
                s.todo[u] += 1;
                s.todo[v] += 1;
                s.pending.push(id);
            }
        }
        s.remaining = s.pending.len();
        if s.rng.is_none() && s.fresh == palette && !s.infeasible {
            s.fix_max_degree_star();
        }
        Ok(s)
    }

    /// Colors the pending edges at a busiest vertex with `1, 2, ..` in order.
    fn fix_max_degree_star(&mut self) {
        let Some(v) = self.graph.vertices().max_by_key(|&v| (self.todo[v], std::cmp::Reverse(v))) else {
            return;
        };
        let ids: Vec<usize> = self
            .graph
            .neighbors(v)
            .iter()
            .map(|&w| self.graph.edge_id(v, w).unwrap())
            .filter(|&id| self.colors[id] == 0 && self.pending.contains(&id))
            .collect();
        if ids.len() > self.k as usize {
            self.infeasible = true;
            return;
        }
        for (i, id) in ids.into_iter().enumerate() {
            let c = i as Color + 1;
            self.fresh.remove(c);
            self.place(id, c);
            self.consume(id);
            self.pending.retain(|&p| p != id);
        }
    }

    fn place(&mut self, id: usize, c: Color) {
        let Edge(u, v) = self.graph.edge(id);
        self.colors[id] = c;
        self.blocked[u].insert(c);
        self.blocked[v].insert(c);
    }

    fn unplace(&mut self, id: usize, c: Color) {
        let Edge(u, v) = self.graph.edge(id);
        self.colors[id] = 0;
        self.blocked[u].remove(c);
        self.blocked[v].remove(c);
    }

    fn consume(&mut self, id: usize) {
        let Edge(u, v) = self.graph.edge(id);
        self.todo[u] -= 1;
        self.todo[v] -= 1;
        self.remaining -= 1;
    }

    fn restore(&mut self, id: usize) {
        let Edge(u, v) = self.graph.edge(id);
        self.todo[u] += 1;
        self.todo[v] += 1;
        self.remaining += 1;
    }

    fn run(&mut self) -> Result<Option<PartialEdgeColoring>, OracleError> {
        if self.infeasible || !self.dfs()? {
            return Ok(None);
        }
        let c = PartialEdgeColoring::from_colors(self.graph.clone(), self.k as usize, &self.colors)?;
        Ok(Some(c))
    }

    /// Necessary conditions: every vertex has room for its uncolored edges, and each color
    /// class can still absorb at most half the vertices that miss it.
    fn hopeless(&self) -> bool {
        let mut capacity = 0usize;
        let mut counts = [0u32; MAX_PALETTE as usize + 2];
        for v in self.graph.vertices() {
            if self.todo[v] == 0 {
                continue;
            }
            let open = self.palette - self.blocked[v];
            if (open.len() as u32) < self.todo[v] {
                return true;
            }
            for c in open.iter() {
                counts[c as usize] += 1;
            }
        }
        for c in self.palette.iter() {
            capacity += counts[c as usize] as usize / 2;
        }
        capacity < self.remaining
    }

    fn dfs(&mut self) -> Result<bool, OracleError> {
        if self.remaining == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline {
            return Err(OracleError::Timeout);
        }
        if self.hopeless() {
            return Ok(false);
        }
        let Some((slot, open)) = self.choose_edge() else {
            return Ok(false);
        };
        let id = self.pending[slot];
        let mut candidates: Vec<Color> = if self.rng.is_some() {
            open.iter().collect()
        } else {
            let fixed = open - self.fresh;
            let mut v: Vec<Color> = fixed.iter().collect();
            v.extend((open & self.fresh).first());
            v
        };
        if let Some(rng) = self.rng.as_deref_mut() {
            candidates.shuffle(rng);
        }
        self.pending.swap_remove(slot);
        self.consume(id);
        let fresh = self.fresh;
        for c in candidates {
            self.fresh.remove(c);
            self.place(id, c);
            let found = self.dfs();
            if !matches!(found, Ok(false)) {
                self.pending.push(id);
                let last = self.pending.len() - 1;
                self.pending.swap(slot, last);
                return found;
            }
            self.unplace(id, c);
            self.fresh = fresh;
        }
        self.restore(id);
        self.pending.push(id);
        let last = self.pending.len() - 1;
        self.pending.swap(slot, last);
        Ok(false)
    }

    /// Most constrained pending edge; ties go to the larger count of uncolored edges at its
    /// ends, then (when sampling) to a random choice.
    fn choose_edge(&mut self) -> Option<(usize, ColorSet)> {
        let mut best: Option<(usize, ColorSet)> = None;
        let mut best_key = (u32::MAX, 0u32);
        let mut ties = 0u32;
        for (slot, &id) in self.pending.iter().enumerate() {
            let Edge(u, v) = self.graph.edge(id);
            let open = self.palette - self.blocked[u] - self.blocked[v];
            if open.is_empty() {
                return None;
            }
            let key = (open.len() as u32, self.todo[u] + self.todo[v]);
            let better = key.0 < best_key.0 || (key.0 == best_key.0 && key.1 > best_key.1);
            if better {
                best = Some((slot, open));
                best_key = key;
                ties = 1;
            } else if key == best_key {
                if let Some(rng) = self.rng.as_deref_mut() {
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        best = Some((slot, open));
                    }
                }
            }
        }
        best
    }
}
