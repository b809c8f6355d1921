//! Partial edge colorings with exact present/missing bookkeeping, Kempe chains and swaps.
//!
//! Colors are `1..=k`; `0` marks an uncolored edge. Every operation that changes a coloring
//! returns a new value and leaves its input untouched.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{ColorSet, VertexSet};
use crate::graph::{Edge, Graph, GraphError};

pub type Color = u8;

/// Largest supported palette; colors must fit in a single-word [`ColorSet`].
pub const MAX_PALETTE: Color = 62;

const NONE: u16 = u16::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("palette size {k} is smaller than the maximum degree {max_degree}")]
    PaletteTooSmall { k: usize, max_degree: usize },
    #[error("palette size {0} exceeds the supported maximum {MAX_PALETTE}")]
    PaletteTooLarge(usize),
    #[error("color {color} outside [1, {k}]")]
    ColorOutOfRange { color: Color, k: Color },
    #[error("a chain needs two distinct colors, got {0} twice")]
    SameColors(Color),
    #[error("color {color} on {edge:?} clashes at vertex {vertex}")]
    Conflict { edge: Edge, color: Color, vertex: usize },
    #[error("edge {0:?} is already colored")]
    AlreadyColored(Edge),
    #[error("edge {edge:?} has color {found}, expected {expected}")]
    ColorMismatch { edge: Edge, expected: Color, found: Color },
    #[error("color vector has {found} entries for a graph with {expected} edges")]
    WrongLength { expected: usize, found: usize },
    #[error("chain is stale: the coloring changed since it was extracted")]
    StaleChain,
    #[error("vertices {x} and {y} are not ({alpha},{beta})-linked")]
    NotLinked { x: usize, y: usize, alpha: Color, beta: Color },
    #[error("the ({alpha},{beta})-chain through {x} is a cycle, not a path")]
    NotAPath { x: usize, alpha: Color, beta: Color },
    #[error("exchanging colors on the subchain {x}..{y} leaves color {color} twice at vertex {vertex}")]
    ImproperSubchainSwap { x: usize, y: usize, vertex: usize, color: Color },
    #[error("coloring JSON does not match the graph: {0}")]
    Json(String),
}

/// An edge coloring of `G - U` for a set `U` of uncolored edges, using colors `1..=k`.
#[derive(Clone)]
pub struct PartialEdgeColoring {
    graph: Arc<Graph>,
    k: Color,
    colors: Vec<Color>,
    present: Vec<ColorSet>,
    /// `slots[v * (k + 1) + c]` is the edge id colored `c` at `v`.
    slots: Vec<u16>,
}

impl PartialEdgeColoring {
    /// All-uncolored shell with palette `k` over the graph.
    pub fn uncolored(graph: Arc<Graph>, k: usize) -> Result<Self, ColoringError> {
        if k > MAX_PALETTE as usize {
            return Err(ColoringError::PaletteTooLarge(k));
        }
        let max_degree = graph.max_degree();
        if k < max_degree {
            return Err(ColoringError::PaletteTooSmall { k, max_degree });
        }
        let n = graph.vertex_count();
        Ok(Self {
            colors: vec![0; graph.edge_count()],
            present: vec![ColorSet::EMPTY; n],
            slots: vec![NONE; n * (k + 1)],
            k: k as Color,
            graph,
        })
    }

    /// The shell the colorer starts from: `e` must be an edge, `k >= Δ`.
    pub fn empty_partial(graph: Arc<Graph>, e: Edge, k: usize) -> Result<Self, ColoringError> {
        graph.require_edge(e.0, e.1)?;
        Self::uncolored(graph, k)
    }

    /// Builds a coloring from a color per edge id (`0` = uncolored), checking properness.
    pub fn from_colors(graph: Arc<Graph>, k: usize, colors: &[Color]) -> Result<Self, ColoringError> {
        if colors.len() != graph.edge_count() {
            return Err(ColoringError::WrongLength {
                expected: graph.edge_count(),
                found: colors.len(),
            });
        }
        let mut c = Self::uncolored(graph, k)?;
        for (id, &color) in colors.iter().enumerate() {
            if color != 0 {
                c.check_assignable(id, color)?;
                c.assign(id, color);
            }
        }
        Ok(c)
    }

    /// Builds a coloring from `(u, v, color)` triples; unlisted edges stay uncolored.
    pub fn from_triples(
        graph: Arc<Graph>,
        k: usize,
        triples: &[(usize, usize, Color)],
    ) -> Result<Self, ColoringError> {
        let mut colors = vec![0; graph.edge_count()];
        for &(u, v, color) in triples {
            colors[graph.require_edge(u, v)?] = color;
        }
        Self::from_colors(graph, k, &colors)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn palette_size(&self) -> Color {
        self.k
    }

    pub fn palette(&self) -> ColorSet {
        ColorSet::palette(self.k)
    }

    /// Raw color vector by edge id, `0` for uncolored.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, edge_id: usize) -> Option<Color> {
        match self.colors[edge_id] {
            0 => None,
            c => Some(c),
        }
    }

    /// Color of the edge `uv`; `None` if uncolored or not an edge.
    pub fn color_of(&self, u: usize, v: usize) -> Option<Color> {
        self.graph.edge_id(u, v).and_then(|id| self.color(id))
    }

    /// φ(v): colors on edges at `v`.
    pub fn present(&self, v: usize) -> ColorSet {
        self.present[v]
    }

    /// φ̄(v) = [1,k] \ φ(v).
    pub fn missing(&self, v: usize) -> ColorSet {
        self.palette() - self.present[v]
    }

    /// φ̄(X): union of missing sets.
    pub fn missing_union(&self, vs: impl IntoIterator<Item = usize>) -> ColorSet {
        vs.into_iter()
            .fold(ColorSet::EMPTY, |acc, v| acc | self.missing(v))
    }

    pub fn misses(&self, v: usize, c: Color) -> bool {
        !self.present[v].contains(c)
    }

    /// Edge id colored `c` at `v`, if any.
    pub fn edge_at(&self, v: usize, c: Color) -> Option<usize> {
        if c == 0 || c > self.k {
            return None;
        }
        match self.slots[self.slot(v, c)] {
            NONE => None,
            id => Some(id as usize),
        }
    }

    /// The neighbor joined to `v` by the edge colored `c`.
    pub fn neighbor_via(&self, v: usize, c: Color) -> Option<usize> {
        self.edge_at(v, c).map(|id| self.graph.edge(id).other(v))
    }

    pub fn uncolored_edges(&self) -> Vec<Edge> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(id, _)| self.graph.edge(id))
            .collect()
    }

    /// The uncolored edge when there is exactly one.
    pub fn uncolored_edge(&self) -> Option<Edge> {
        let mut it = self.colors.iter().enumerate().filter(|(_, &c)| c == 0);
        match (it.next(), it.next()) {
            (Some((id, _)), None) => Some(self.graph.edge(id)),
            _ => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    /// Properness by a full scan of the raw colors, independent of the cached tables.
    pub fn is_proper(&self) -> bool {
        let n = self.graph.vertex_count();
        let mut seen = vec![0u64; n];
        for (id, &c) in self.colors.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > self.k {
                return false;
            }
            let Edge(u, v) = self.graph.edge(id);
            for x in [u, v] {
                if seen[x] >> c & 1 == 1 {
                    return false;
                }
                seen[x] |= 1 << c;
            }
        }
        true
    }

    /// Recomputes present sets and the slot table from scratch and compares.
    pub fn bookkeeping_consistent(&self) -> bool {
        let Ok(fresh) = Self::from_colors(self.graph.clone(), self.k as usize, &self.colors) else {
            return false;
        };
        fresh.present == self.present
            && fresh.slots == self.slots
            && self.graph.vertices().all(|v| {
                let (p, m) = (self.present(v), self.missing(v));
                p.is_disjoint(m) && (p | m) == self.palette()
            })
    }

    /// Copy with the uncolored edge `uv` colored `c`.
    pub fn with_color(&self, u: usize, v: usize, c: Color) -> Result<Self, ColoringError> {
        let mut out = self.clone();
        out.color_edge_mut(u, v, c)?;
        Ok(out)
    }

    /// Copy with `uv: from -> to`.
    pub fn recolored(&self, u: usize, v: usize, from: Color, to: Color) -> Result<Self, ColoringError> {
        let mut out = self.clone();
        let id = out.graph.require_edge(u, v)?;
        out.expect_color(id, from)?;
        out.unassign(id);
        out.check_assignable(id, to)?;
        out.assign(id, to);
        Ok(out)
    }

    /// Copy with `uv` uncolored.
    pub fn without_color(&self, u: usize, v: usize) -> Result<Self, ColoringError> {
        let mut out = self.clone();
        let id = out.graph.require_edge(u, v)?;
        out.unassign(id);
        Ok(out)
    }

    /// Whether the missing sets of the given vertices are pairwise disjoint.
    pub fn is_elementary(&self, set: VertexSet) -> bool {
        self.elementary_conflict(set).is_none()
    }

    /// First pair `(u, v, color)` with a shared missing color.
    pub fn elementary_conflict(&self, set: VertexSet) -> Option<(usize, usize, Color)> {
        let mut seen = ColorSet::EMPTY;
        for v in set.iter() {
            let m = self.missing(v);
            let shared = seen & m;
            if let Some(c) = shared.first() {
                let u = set.iter().find(|&u| u < v && self.misses(u, c)).unwrap();
                return Some((u, v, c));
            }
            seen |= m;
        }
        None
    }

    /// The maximal (α,β)-chain through `x`.
    pub fn kempe_chain(&self, x: usize, alpha: Color, beta: Color) -> Result<KempeChain, ColoringError> {
        self.check_pair(alpha, beta)?;
        Ok(self.chain_unchecked(x, alpha, beta))
    }

    /// Whether `x` and `y` lie on a common (α,β)-chain.
    pub fn linked(&self, x: usize, y: usize, alpha: Color, beta: Color) -> Result<bool, ColoringError> {
        self.check_pair(alpha, beta)?;
        Ok(x == y || self.chain_unchecked(x, alpha, beta).contains(y))
    }

    /// Kempe change: exchanges α and β on the chain's edges.
    pub fn swap(&self, chain: &KempeChain) -> Result<Self, ColoringError> {
        let current = self.kempe_chain(chain.start, chain.alpha, chain.beta)?;
        if current.edges != chain.edges
            || current.vertices != chain.vertices
            || current.edge_colors != chain.edge_colors
        {
            return Err(ColoringError::StaleChain);
        }
        let mut out = self.clone();
        out.flip_edges(&chain.edges, chain.alpha, chain.beta);
        Ok(out)
    }

    /// The "(α,β)-swap at x": Kempe change on the chain through `x`.
    pub fn swap_at(&self, x: usize, alpha: Color, beta: Color) -> Result<Self, ColoringError> {
        let chain = self.kempe_chain(x, alpha, beta)?;
        let mut out = self.clone();
        out.flip_edges(&chain.edges, alpha, beta);
        Ok(out)
    }

    /// Exchanges α and β on the segment of the (α,β)-path between `x` and `y`. The result is
    /// checked for properness at the segment's ends.
    pub fn swap_subchain(
        &self,
        x: usize,
        y: usize,
        alpha: Color,
        beta: Color,
    ) -> Result<Self, ColoringError> {
        self.check_pair(alpha, beta)?;
        if x == y {
            return Ok(self.clone());
        }
        let chain = self.chain_unchecked(x, alpha, beta);
        if !chain.contains(y) {
            return Err(ColoringError::NotLinked { x, y, alpha, beta });
        }
        if chain.shape == ChainShape::Cycle {
            return Err(ColoringError::NotAPath { x, alpha, beta });
        }
        let edges = chain.subchain_edges(x, y).expect("both vertices lie on the path");
        let mut out = self.clone();
        // Unassign first so that the interior can be reassigned without transient clashes.
        let flipped: Vec<(usize, Color)> = edges
            .iter()
            .map(|&id| (id, if self.colors[id] == alpha { beta } else { alpha }))
            .collect();
        for &(id, _) in &flipped {
            out.unassign(id);
        }
        for &(id, c) in &flipped {
            if let Some(vertex) = [self.graph.edge(id).0, self.graph.edge(id).1]
                .into_iter()
                .find(|&v| out.present[v].contains(c))
            {
                return Err(ColoringError::ImproperSubchainSwap { x, y, vertex, color: c });
            }
            out.assign(id, c);
        }
        Ok(out)
    }

    /// Applies a swap script step by step; see [`SwapScript`].
    pub fn apply_script(&self, script: &SwapScript) -> Result<ScriptRun, ScriptError> {
        let mut state = ScriptState::new(self);
        let mut transcript = Vec::with_capacity(script.steps.len());
        for (index, step) in script.steps.iter().enumerate() {
            state
                .apply(step)
                .map_err(|source| ScriptError { index, step: step.clone(), source })?;
            transcript.push(state.colors.clone());
        }
        let coloring = state.finish().map_err(|source| ScriptError {
            index: script.steps.len(),
            step: ScriptStep::Finish,
            source,
        })?;
        Ok(ScriptRun { coloring, transcript })
    }

    /// JSON form: `{"k", "uncolored", "edges": [[u, v, color], ..]}` with 0 for uncolored edges.
    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            k: self.k as usize,
            uncolored: self.uncolored_edge().map(|e| [e.0, e.1]),
            edges: self
                .graph
                .edges()
                .iter()
                .zip(&self.colors)
                .map(|(e, &c)| [e.0, e.1, c as usize])
                .collect(),
        }
    }

    pub fn from_json(graph: Arc<Graph>, json: &ColoringJson) -> Result<Self, ColoringError> {
        let mut colors = vec![0; graph.edge_count()];
        let mut listed = vec![false; graph.edge_count()];
        for &[u, v, c] in &json.edges {
            let id = graph
                .edge_id(u, v)
                .ok_or_else(|| ColoringError::Json(format!("{u}-{v} is not an edge")))?;
            if c > MAX_PALETTE as usize {
                return Err(ColoringError::Json(format!("color {c} out of range")));
            }
            colors[id] = c as Color;
            listed[id] = true;
        }
        if let Some(missing) = listed.iter().position(|&l| !l) {
            return Err(ColoringError::Json(format!(
                "edge {:?} is not listed",
                graph.edge(missing)
            )));
        }
        let c = Self::from_colors(graph, json.k, &colors)?;
        if let Some([u, v]) = json.uncolored {
            if c.uncolored_edge() != Some(Edge::new(u, v)) {
                return Err(ColoringError::Json(format!(
                    "declared uncolored edge {u}-{v} disagrees with the edge list"
                )));
            }
        }
        Ok(c)
    }

    // ---- internals -------------------------------------------------------------------

    #[inline]
    fn slot(&self, v: usize, c: Color) -> usize {
        v * (self.k as usize + 1) + c as usize
    }

    fn check_color(&self, c: Color) -> Result<(), ColoringError> {
        if c == 0 || c > self.k {
            Err(ColoringError::ColorOutOfRange { color: c, k: self.k })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, alpha: Color, beta: Color) -> Result<(), ColoringError> {
        self.check_color(alpha)?;
        self.check_color(beta)?;
        if alpha == beta {
            return Err(ColoringError::SameColors(alpha));
        }
        Ok(())
    }

    fn check_assignable(&self, id: usize, c: Color) -> Result<(), ColoringError> {
        self.check_color(c)?;
        let edge = self.graph.edge(id);
        if self.colors[id] != 0 {
            return Err(ColoringError::AlreadyColored(edge));
        }
        for vertex in [edge.0, edge.1] {
            if self.present[vertex].contains(c) {
                return Err(ColoringError::Conflict { edge, color: c, vertex });
            }
        }
        Ok(())
    }

    fn expect_color(&self, id: usize, expected: Color) -> Result<(), ColoringError> {
        let found = self.colors[id];
        if found != expected {
            return Err(ColoringError::ColorMismatch {
                edge: self.graph.edge(id),
                expected,
                found,
            });
        }
        Ok(())
    }

    pub(crate) fn color_edge_mut(&mut self, u: usize, v: usize, c: Color) -> Result<(), ColoringError> {
        let id = self.graph.require_edge(u, v)?;
        self.check_assignable(id, c)?;
        self.assign(id, c);
        Ok(())
    }

    fn assign(&mut self, id: usize, c: Color) {
        let Edge(u, v) = self.graph.edge(id);
        self.colors[id] = c;
        for x in [u, v] {
            self.present[x].insert(c);
            let s = self.slot(x, c);
            self.slots[s] = id as u16;
        }
    }

    fn unassign(&mut self, id: usize) {
        let c = self.colors[id];
        if c == 0 {
            return;
        }
        let Edge(u, v) = self.graph.edge(id);
        self.colors[id] = 0;
        for x in [u, v] {
            self.present[x].remove(c);
            let s = self.slot(x, c);
            self.slots[s] = NONE;
        }
    }

    fn flip_edges(&mut self, edges: &[usize], alpha: Color, beta: Color) {
        let targets: Vec<Color> = edges
            .iter()
            .map(|&id| if self.colors[id] == alpha { beta } else { alpha })
            .collect();
        for &id in edges {
            self.unassign(id);
        }
        for (&id, &c) in edges.iter().zip(&targets) {
            self.assign(id, c);
        }
    }

    /// Walks from `x` along edges alternating α/β, starting with color `first`.
    fn walk(&self, x: usize, first: Color, other: Color) -> (Vec<usize>, Vec<usize>, bool) {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut at = x;
        let mut c = first;
        while let Some(id) = self.edge_at(at, c) {
            edges.push(id);
            at = self.graph.edge(id).other(at);
            if at == x {
                return (vertices, edges, true);
            }
            vertices.push(at);
            c = if c == first { other } else { first };
        }
        (vertices, edges, false)
    }

    pub(crate) fn chain_unchecked(&self, x: usize, alpha: Color, beta: Color) -> KempeChain {
        let (fwd_v, fwd_e, cycle) = self.walk(x, alpha, beta);
        if cycle {
            let mut vertices = vec![x];
            vertices.extend(fwd_v);
            return KempeChain {
                alpha,
                beta,
                shape: ChainShape::Cycle,
                start: x,
                vertices,
                edge_colors: fwd_e.iter().map(|&id| self.colors[id]).collect(),
                edges: fwd_e,
            };
        }
        let (back_v, back_e, _) = self.walk(x, beta, alpha);
        let mut vertices: Vec<usize> = back_v.into_iter().rev().collect();
        vertices.push(x);
        vertices.extend(fwd_v);
        let mut edges: Vec<usize> = back_e.into_iter().rev().collect();
        edges.extend(fwd_e);
        let (first, last) = (vertices[0], *vertices.last().unwrap());
        // Orient from x when x is an end, otherwise from the lower-indexed end.
        let flip = if first == x {
            false
        } else if last == x {
            true
        } else {
            last < first
        };
        if flip {
            vertices.reverse();
            edges.reverse();
        }
        KempeChain {
            alpha,
            beta,
            shape: ChainShape::Path,
            start: x,
            vertices,
            edge_colors: edges.iter().map(|&id| self.colors[id]).collect(),
            edges,
        }
    }
}

impl PartialEq for PartialEdgeColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.colors == other.colors && *self.graph == *other.graph
    }
}

impl Eq for PartialEdgeColoring {}

impl std::fmt::Debug for PartialEdgeColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let assigned: Vec<(Edge, Color)> = self
            .graph
            .edges()
            .iter()
            .copied()
            .zip(self.colors.iter().copied())
            .collect();
        f.debug_struct("PartialEdgeColoring")
            .field("k", &self.k)
            .field("edges", &assigned)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: usize,
    pub uncolored: Option<[usize; 2]>,
    pub edges: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainShape {
    Path,
    Cycle,
}

/// A maximal connected subgraph whose edges are colored α or β: a path or an even cycle.
///
/// Paths are ordered end to end. When the query vertex is an end the order starts there;
/// otherwise it starts at the lower-indexed end, and [`KempeChain::segments_from`] lists both
/// candidate segments leaving the query vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempeChain {
    alpha: Color,
    beta: Color,
    shape: ChainShape,
    start: usize,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    edge_colors: Vec<Color>,
}

impl KempeChain {
    pub fn colors(&self) -> (Color, Color) {
        (self.alpha, self.beta)
    }

    pub fn shape(&self) -> ChainShape {
        self.shape
    }

    pub fn is_path(&self) -> bool {
        self.shape == ChainShape::Path
    }

    /// The vertex the chain was extracted from.
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Edge ids in walk order.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, id: usize) -> bool {
        self.edges.contains(&id)
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        match self.shape {
            ChainShape::Path => Some((self.vertices[0], *self.vertices.last().unwrap())),
            ChainShape::Cycle => None,
        }
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// Every candidate for P_x(α,β): the path segments from `x` to a different end of the
    /// path. One segment when `x` is an end, two when it is interior, none for cycles or
    /// single-vertex chains.
    pub fn segments_from(&self, x: usize) -> Vec<Vec<usize>> {
        let Some(i) = self.position(x) else {
            return Vec::new();
        };
        if self.shape == ChainShape::Cycle {
            return Vec::new();
        }
        let mut out = Vec::new();
        if i + 1 < self.vertices.len() {
            out.push(self.vertices[i..].to_vec());
        }
        if i > 0 {
            out.push(self.vertices[..=i].iter().rev().copied().collect());
        }
        out
    }

    /// Edge ids of the path segment between `x` and `y`.
    pub fn subchain_edges(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        if self.shape == ChainShape::Cycle {
            return None;
        }
        let (i, j) = (self.position(x)?, self.position(y)?);
        let (lo, hi) = (i.min(j), i.max(j));
        Some(self.edges[lo..hi].to_vec())
    }

    /// Whether walking from `from`, the path reaches `first` before `second`.
    pub fn meets_before(&self, from: usize, first: usize, second: usize) -> Option<bool> {
        let (s, a, b) = (self.position(from)?, self.position(first)?, self.position(second)?);
        Some(s.abs_diff(a) < s.abs_diff(b))
    }
}

/// One operation of a swap script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ScriptStep {
    /// Kempe change on the (α,β)-chain through `at`.
    SwapChain { at: usize, alpha: Color, beta: Color },
    /// Exchange α/β on the path segment between `from` and `to`.
    SwapSubchain { from: usize, to: usize, alpha: Color, beta: Color },
    /// `uv: from -> to`.
    Recolor { edge: Edge, from: Color, to: Color },
    /// Color the currently uncolored edge.
    Color { edge: Edge, color: Color },
    /// Marker for the final properness check; never part of a script.
    Finish,
}

/// A left-to-right sequence of operations. Intermediate states may be improper, as long as
/// each chain step finds its two colors proper along the chain and the final coloring is proper.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SwapScript {
    pub steps: Vec<ScriptStep>,
}

impl SwapScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn swap_chain(mut self, at: usize, alpha: Color, beta: Color) -> Self {
        self.steps.push(ScriptStep::SwapChain { at, alpha, beta });
        self
    }

    pub fn swap_subchain(mut self, from: usize, to: usize, alpha: Color, beta: Color) -> Self {
        self.steps.push(ScriptStep::SwapSubchain { from, to, alpha, beta });
        self
    }

    pub fn recolor(mut self, u: usize, v: usize, from: Color, to: Color) -> Self {
        self.steps.push(ScriptStep::Recolor { edge: Edge::new(u, v), from, to });
        self
    }

    pub fn color(mut self, u: usize, v: usize, color: Color) -> Self {
        self.steps.push(ScriptStep::Color { edge: Edge::new(u, v), color });
        self
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("script step {index} ({step:?}) failed: {source}")]
pub struct ScriptError {
    pub index: usize,
    pub step: ScriptStep,
    #[source]
    pub source: ColoringError,
}

#[derive(Debug, Clone)]
pub struct ScriptRun {
    pub coloring: PartialEdgeColoring,
    /// Raw color vectors after each step (possibly improper between recolor steps).
    pub transcript: Vec<Vec<Color>>,
}

struct ScriptState<'a> {
    base: &'a PartialEdgeColoring,
    colors: Vec<Color>,
}

/// Script steps act on raw color vectors so that recolor steps may pass through improper
/// states. Chain steps only need the two chain colors to be proper along the chain.
impl<'a> ScriptState<'a> {
    fn new(base: &'a PartialEdgeColoring) -> Self {
        Self { base, colors: base.colors.clone() }
    }

    fn edge_colored(&self, v: usize, c: Color, skip: Option<usize>) -> Result<Option<usize>, ColoringError> {
        let graph = &self.base.graph;
        let mut found = None;
        for &w in graph.neighbors(v) {
            let id = graph.edge_id(v, w).unwrap();
            if Some(id) != skip && self.colors[id] == c {
                if found.is_some() {
                    return Err(ColoringError::Conflict { edge: graph.edge(id), color: c, vertex: v });
                }
                found = Some(id);
            }
        }
        Ok(found)
    }

    fn walk(&self, x: usize, first: Color, other: Color) -> Result<(Vec<usize>, Vec<usize>, bool), ColoringError> {
        let (mut vertices, mut edges) = (Vec::new(), Vec::new());
        let (mut at, mut c, mut came) = (x, first, None);
        while let Some(id) = self.edge_colored(at, c, came)? {
            edges.push(id);
            at = self.base.graph.edge(id).other(at);
            if at == x {
                return Ok((vertices, edges, true));
            }
            vertices.push(at);
            came = Some(id);
            c = if c == first { other } else { first };
        }
        Ok((vertices, edges, false))
    }

    /// Vertices and edge ids of the chain through `x`, in path order, plus a cycle flag.
    fn chain(&self, x: usize, alpha: Color, beta: Color) -> Result<(Vec<usize>, Vec<usize>, bool), ColoringError> {
        self.base.check_pair(alpha, beta)?;
        // Fail on a clash at x before walking either way.
        self.edge_colored(x, alpha, None)?;
        self.edge_colored(x, beta, None)?;
        let (fv, fe, cycle) = self.walk(x, alpha, beta)?;
        if cycle {
            let mut vs = vec![x];
            vs.extend(fv);
            return Ok((vs, fe, true));
        }
        let (bv, be, _) = self.walk(x, beta, alpha)?;
        let mut vs: Vec<usize> = bv.into_iter().rev().collect();
        vs.push(x);
        vs.extend(fv);
        let mut es: Vec<usize> = be.into_iter().rev().collect();
        es.extend(fe);
        Ok((vs, es, false))
    }

    fn flip(&mut self, edges: &[usize], alpha: Color, beta: Color) {
        for &id in edges {
            self.colors[id] = if self.colors[id] == alpha { beta } else { alpha };
        }
    }

    fn apply(&mut self, step: &ScriptStep) -> Result<(), ColoringError> {
        let graph = self.base.graph.clone();
        match *step {
            ScriptStep::SwapChain { at, alpha, beta } => {
                let (_, edges, _) = self.chain(at, alpha, beta)?;
                self.flip(&edges, alpha, beta);
            }
            ScriptStep::SwapSubchain { from, to, alpha, beta } => {
                let (vs, edges, cycle) = self.chain(from, alpha, beta)?;
                let Some(j) = vs.iter().position(|&v| v == to) else {
                    return Err(ColoringError::NotLinked { x: from, y: to, alpha, beta });
                };
                if cycle {
                    return Err(ColoringError::NotAPath { x: from, alpha, beta });
                }
                let i = vs.iter().position(|&v| v == from).unwrap();
                let (lo, hi) = (i.min(j), i.max(j));
                self.flip(&edges[lo..hi], alpha, beta);
            }
            ScriptStep::Recolor { edge, from, to } => {
                let id = graph.require_edge(edge.0, edge.1)?;
                self.base.check_color(to)?;
                if self.colors[id] != from {
                    return Err(ColoringError::ColorMismatch { edge, expected: from, found: self.colors[id] });
                }
                self.colors[id] = to;
            }
            ScriptStep::Color { edge, color } => {
                let id = graph.require_edge(edge.0, edge.1)?;
                self.base.check_color(color)?;
                if self.colors[id] != 0 {
                    return Err(ColoringError::AlreadyColored(edge));
                }
                self.colors[id] = color;
            }
            ScriptStep::Finish => {}
        }
        Ok(())
    }

    fn finish(self) -> Result<PartialEdgeColoring, ColoringError> {
        PartialEdgeColoring::from_colors(self.base.graph.clone(), self.base.k as usize, &self.colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> PartialEdgeColoring {
        // a=0, b=1, c=2, d=3 with ab=1, bc=2, cd=1
        let g = Arc::new(Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap());
        PartialEdgeColoring::from_triples(g, 2, &[(0, 1, 1), (1, 2, 2), (2, 3, 1)]).unwrap()
    }

    fn c4_alternating() -> PartialEdgeColoring {
        let g = Arc::new(Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
        PartialEdgeColoring::from_triples(g, 2, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 2)]).unwrap()
    }

    #[test]
    fn shells() {
        let k2 = Arc::new(Graph::new(2, [(0, 1)]).unwrap());
        let c = PartialEdgeColoring::empty_partial(k2.clone(), Edge(0, 1), 1).unwrap();
        assert_eq!(c.uncolored_edge(), Some(Edge(0, 1)));
        let k4 = Arc::new(crate::fixtures::complete(4));
        let c = PartialEdgeColoring::empty_partial(k4.clone(), Edge(0, 1), 3).unwrap();
        assert!((0..4).all(|v| c.missing(v) == ColorSet::palette(3)));
        assert!(matches!(
            PartialEdgeColoring::empty_partial(k4.clone(), Edge(0, 1), 2),
            Err(ColoringError::PaletteTooSmall { k: 2, max_degree: 3 })
        ));
        let c5 = Arc::new(crate::fixtures::cycle(5));
        assert!(PartialEdgeColoring::empty_partial(c5.clone(), Edge(0, 1), 2).is_ok());
        assert!(PartialEdgeColoring::empty_partial(c5, Edge(0, 2), 2).is_err());
    }

    #[test]
    fn from_colors_rejects_clashes() {
        let g = Arc::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        let err = PartialEdgeColoring::from_triples(g, 2, &[(0, 1, 1), (1, 2, 1)]).unwrap_err();
        assert!(matches!(err, ColoringError::Conflict { vertex: 1, .. }));
    }

    #[test]
    fn chain_on_path_from_end() {
        let c = path4();
        let ch = c.kempe_chain(0, 1, 2).unwrap();
        assert_eq!(ch.vertices(), &[0, 1, 2, 3]);
        assert!(ch.is_path());
        // from the other end the order starts there
        assert_eq!(c.kempe_chain(3, 1, 2).unwrap().vertices(), &[3, 2, 1, 0]);
        // interior: lower-indexed end first, two candidate segments
        let mid = c.kempe_chain(2, 2, 1).unwrap();
        assert_eq!(mid.vertices(), &[0, 1, 2, 3]);
        assert_eq!(mid.segments_from(2), vec![vec![2, 3], vec![2, 1, 0]]);
    }

    #[test]
    fn chain_degenerate_and_cycle() {
        let c = path4();
        let g = Arc::new(Graph::new(5, [(0, 1), (1, 2), (2, 3)]).unwrap());
        let c5 = PartialEdgeColoring::from_colors(g, 2, c.colors()).unwrap();
        let single = c5.kempe_chain(4, 1, 2).unwrap();
        assert_eq!(single.vertices(), &[4]);
        assert!(single.edges().is_empty());
        let cyc = c4_alternating().kempe_chain(0, 1, 2).unwrap();
        assert_eq!(cyc.shape(), ChainShape::Cycle);
        assert_eq!(cyc.vertices().len(), 4);
        assert_eq!(cyc.edges().len(), 4);
    }

    #[test]
    fn chain_palette_errors() {
        let c = path4();
        assert!(matches!(c.kempe_chain(0, 1, 3), Err(ColoringError::ColorOutOfRange { color: 3, .. })));
        assert!(matches!(c.kempe_chain(0, 0, 1), Err(ColoringError::ColorOutOfRange { color: 0, .. })));
        assert_eq!(c.kempe_chain(0, 1, 1), Err(ColoringError::SameColors(1)));
    }

    #[test]
    fn swap_path_and_involution() {
        let c = path4();
        let ch = c.kempe_chain(0, 1, 2).unwrap();
        let d = c.swap(&ch).unwrap();
        assert_eq!(d.colors(), &[2, 1, 2]);
        assert!(d.is_proper() && d.bookkeeping_consistent());
        let back = d.swap(&d.kempe_chain(0, 1, 2).unwrap()).unwrap();
        assert_eq!(back, c);
        // stale chain
        assert_eq!(d.swap(&ch), Err(ColoringError::StaleChain));
    }

    #[test]
    fn swap_single_vertex_chain_is_identity() {
        let g = Arc::new(Graph::new(3, [(0, 1)]).unwrap());
        let c = PartialEdgeColoring::from_triples(g, 3, &[(0, 1, 1)]).unwrap();
        let ch = c.kempe_chain(2, 1, 2).unwrap();
        assert_eq!(c.swap(&ch).unwrap(), c);
    }

    #[test]
    fn linked_cases() {
        let c = path4();
        assert!(c.linked(0, 0, 1, 2).unwrap());
        assert!(c.linked(0, 3, 1, 2).unwrap());
        let g = Arc::new(Graph::new(4, [(0, 1)]).unwrap());
        let lonely = PartialEdgeColoring::from_triples(g, 3, &[(0, 1, 3)]).unwrap();
        assert!(!lonely.linked(2, 3, 1, 2).unwrap());
    }

    #[test]
    fn subchain_swaps() {
        let c = path4();
        assert_eq!(c.swap_subchain(1, 1, 1, 2).unwrap(), c);
        assert_eq!(c.swap_subchain(0, 3, 1, 2).unwrap(), c.swap_at(0, 1, 2).unwrap());
        // interior segment of a 4-edge path: 0-1 (1), 1-2 (2), 2-3 (1), 3-4 (2)
        let g = Arc::new(Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap());
        let p = PartialEdgeColoring::from_triples(g, 2, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 2)])
            .unwrap();
        let err = p.swap_subchain(1, 3, 1, 2).unwrap_err();
        assert!(matches!(err, ColoringError::ImproperSubchainSwap { .. }));
        assert!(p.swap_subchain(0, 4, 1, 2).is_ok());
        assert!(matches!(c4_alternating().swap_subchain(0, 2, 1, 2), Err(ColoringError::NotAPath { .. })));
    }

    #[test]
    fn subchain_requires_link() {
        let g = Arc::new(Graph::new(4, [(0, 1), (2, 3)]).unwrap());
        let c = PartialEdgeColoring::from_triples(g, 2, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert!(matches!(c.swap_subchain(0, 2, 1, 2), Err(ColoringError::NotLinked { .. })));
    }

    #[test]
    fn elementary_sets() {
        let c = path4();
        assert!(c.is_elementary(VertexSet::singleton(0)));
        // 0 and 3 both miss color 2
        assert!(!c.is_elementary([0, 3].into_iter().collect()));
        assert_eq!(c.elementary_conflict([0, 3].into_iter().collect()), Some((0, 3, 2)));
    }

    #[test]
    fn script_basics() {
        let c = path4();
        let run = c.apply_script(&SwapScript::new()).unwrap();
        assert_eq!(run.coloring, c);
        let bad = SwapScript::new().swap_chain(0, 1, 2).recolor(0, 1, 1, 2);
        let err = c.apply_script(&bad).unwrap_err();
        assert_eq!(err.index, 1);
        assert!(matches!(err.source, ColoringError::ColorMismatch { .. }));
        // transient clash resolved by the next recolor
        let g = Arc::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        let p = PartialEdgeColoring::from_triples(g, 2, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let s = SwapScript::new().recolor(1, 2, 2, 1).recolor(0, 1, 1, 2);
        let run = p.apply_script(&s).unwrap();
        assert_eq!(run.coloring.colors(), &[2, 1]);
        assert_eq!(run.transcript.len(), 2);
        assert_eq!(run.transcript[0], vec![1, 1]);
        // ending improper is an error at the finish marker
        let s = SwapScript::new().recolor(1, 2, 2, 1);
        assert_eq!(p.apply_script(&s).unwrap_err().step, ScriptStep::Finish);
    }

    #[test]
    fn json_round_trip() {
        let g = Arc::new(crate::fixtures::cycle(5));
        let c = PartialEdgeColoring::from_triples(
            g.clone(),
            2,
            &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 2)],
        )
        .unwrap();
        let json = c.to_json();
        assert_eq!(json.uncolored, Some([0, 4]));
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.starts_with("{\"k\":2,\"uncolored\":[0,4],\"edges\":[[0,1,1]"));
        let back = PartialEdgeColoring::from_json(g, &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
