//! Overfullness, the minimum-degree overfullness criterion, the parity count of missing
//! colors, and a brute-force search for overfull subgraphs.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::coloring::{Color, PartialEdgeColoring};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::oracle::{self, OracleConfig, OracleError};

pub type Rational = Ratio<i64>;

/// Largest order accepted by [`find_overfull_subgraph`].
pub const SUBGRAPH_SEARCH_MAX_N: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OverfullError {
    #[error("ε = {0} must satisfy 0 < ε < 1/7")]
    EpsilonOutOfRange(Rational),
    #[error("subset search is limited to {SUBGRAPH_SEARCH_MAX_N} vertices, got {0}")]
    BudgetExceeded(usize),
    #[error("degree statistics are undefined for the empty graph")]
    Empty,
    #[error("the parity count needs a full coloring, {0} edges are uncolored")]
    PartialColoring(usize),
}

fn ratio_string<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverfullVerdict {
    pub is_overfull: bool,
    /// `|E| - Δ·⌊n/2⌋`.
    pub excess: i64,
    pub hypothesis_t1: bool,
    #[serde(serialize_with = "ratio_string")]
    pub hypothesis_margin: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub holds: bool,
    #[serde(serialize_with = "ratio_string")]
    pub margin: Rational,
}

pub fn excess(g: &Graph) -> i64 {
    g.edge_count() as i64 - (g.max_degree() * (g.vertex_count() / 2)) as i64
}

pub fn is_overfull(g: &Graph) -> Result<OverfullVerdict, OverfullError> {
    let h = theorem1_hypothesis(g)?;
    let excess = excess(g);
    Ok(OverfullVerdict {
        is_overfull: excess >= 1,
        excess,
        hypothesis_t1: h.holds,
        hypothesis_margin: h.margin,
    })
}

/// `Δ - 7δ/4 ≥ (3n - 17)/4`, with margin `(Δ - 7δ/4) - (3n - 17)/4`.
pub fn theorem1_hypothesis(g: &Graph) -> Result<Hypothesis, OverfullError> {
    if g.vertex_count() == 0 {
        return Err(OverfullError::Empty);
    }
    let (n, max, min) = (g.vertex_count() as i64, g.max_degree() as i64, g.min_degree() as i64);
    let margin = (Rational::from(max) - Rational::new(7 * min, 4)) - Rational::new(3 * n - 17, 4);
    Ok(Hypothesis { holds: margin >= Rational::from(0), margin })
}

/// `δ ≤ εn` and `Δ ≥ (3n - 17 + 7εn)/4` for `0 < ε < 1/7`.
pub fn corollary_hypothesis(g: &Graph, eps: Rational) -> Result<bool, OverfullError> {
    if eps <= Rational::from(0) || eps >= Rational::new(1, 7) {
        return Err(OverfullError::EpsilonOutOfRange(eps));
    }
    if g.vertex_count() == 0 {
        return Err(OverfullError::Empty);
    }
    let n = Rational::from(g.vertex_count() as i64);
    let (max, min) = (Rational::from(g.max_degree() as i64), Rational::from(g.min_degree() as i64));
    let bound = (Rational::from(3) * n - Rational::from(17) + Rational::from(7) * eps * n) / 4;
    Ok(min <= eps * n && max >= bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Theorem1Verdict {
    Holds,
    Counterexample { graph6: String },
    Inapplicable { reason: String },
    Undecided { reason: String },
}

impl Theorem1Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Holds => "holds",
            Self::Counterexample { .. } => "counterexample",
            Self::Inapplicable { .. } => "inapplicable",
            Self::Undecided { .. } => "undecided",
        }
    }
}

/// Checks "Δ-critical and hypothesis ⇒ overfull" on one graph, deciding criticality exactly.
pub fn verify_theorem1(g: &Graph, cfg: &OracleConfig) -> Theorem1Verdict {
    let h = match theorem1_hypothesis(g) {
        Ok(h) => h,
        Err(e) => return Theorem1Verdict::Inapplicable { reason: e.to_string() },
    };
    if !h.holds {
        return Theorem1Verdict::Inapplicable { reason: format!("hypothesis margin {} < 0", h.margin) };
    }
    match oracle::is_delta_critical(g, cfg) {
        Ok(critical) => theorem1_from(g, critical),
        Err(OracleError::Edgeless) => Theorem1Verdict::Inapplicable { reason: "edgeless".into() },
        Err(e) => Theorem1Verdict::Undecided { reason: e.to_string() },
    }
}

/// Same as [`verify_theorem1`] with criticality already known.
pub fn theorem1_from(g: &Graph, delta_critical: bool) -> Theorem1Verdict {
    let h = match theorem1_hypothesis(g) {
        Ok(h) => h,
        Err(e) => return Theorem1Verdict::Inapplicable { reason: e.to_string() },
    };
    if !delta_critical {
        return Theorem1Verdict::Inapplicable { reason: "not Δ-critical".into() };
    }
    if !h.holds {
        return Theorem1Verdict::Inapplicable { reason: format!("hypothesis margin {} < 0", h.margin) };
    }
    if excess(g) >= 1 {
        Theorem1Verdict::Holds
    } else {
        Theorem1Verdict::Counterexample {
            graph6: to_graph6(g).unwrap_or_else(|e| format!("<unencodable: {e}>")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityViolation {
    pub color: Color,
    pub missing_at: usize,
}

/// Every color of a full coloring is missing at a number of vertices of the same parity as n.
pub fn parity_check(c: &PartialEdgeColoring) -> Result<Option<ParityViolation>, OverfullError> {
    let uncolored = c.uncolored_edges().len();
    if uncolored > 0 {
        return Err(OverfullError::PartialColoring(uncolored));
    }
    let n = c.graph().vertex_count();
    let counts: Vec<usize> = c
        .palette()
        .iter()
        .map(|color| c.graph().vertices().filter(|&v| c.misses(v, color)).count())
        .collect();
    Ok(parity_violation(n, &counts))
}

/// `counts[i]` is the number of vertices missing color `i + 1`.
pub fn parity_violation(n: usize, counts: &[usize]) -> Option<ParityViolation> {
    counts
        .iter()
        .enumerate()
        .find(|(_, &m)| m % 2 != n % 2)
        .map(|(i, &m)| ParityViolation { color: i as Color + 1, missing_at: m })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverfullSubgraph {
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub max_degree: usize,
}

/// First induced subgraph on an odd vertex set, largest sets first and then in lexicographic
/// order of the vertex mask, that keeps Δ(G) and is overfull. Restricting to induced subgraphs
/// loses nothing: adding edges inside a vertex set cannot lower |E| or raise Δ above Δ(G).
pub fn find_overfull_subgraph(g: &Graph) -> Result<Option<OverfullSubgraph>, OverfullError> {
    let n = g.vertex_count();
    if n > SUBGRAPH_SEARCH_MAX_N {
        return Err(OverfullError::BudgetExceeded(n));
    }
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(None);
    }
    let top: VertexSet = g.vertices().filter(|&v| g.degree(v) == delta).collect();
    let mut size = if n % 2 == 1 { n } else { n.saturating_sub(1) };
    while size >= 1 {
        let threshold = delta * (size / 2);
        let mut found = None;
        for_each_subset(n, size, |mask| {
            let set = VertexSet(mask);
            if set.is_disjoint(top) || g.edges_within(set) <= threshold {
                return false;
            }
            if top.iter().any(|v| set.contains(v) && (g.adjacency(v) & set).len() == delta) {
                found = Some(set);
                return true;
            }
            false
        });
        if let Some(set) = found {
            return Ok(Some(OverfullSubgraph {
                vertices: set.iter().collect(),
                edges: g.edges_within(set),
                max_degree: delta,
            }));
        }
        if size < 2 {
            break;
        }
        size -= 2;
    }
    Ok(None)
}

/// Visits all `size`-subsets of `0..n` as bitmasks in increasing order until `visit` says stop.
fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(u64) -> bool) {
    if size > n {
        return;
    }
    if size == 0 {
        visit(0);
        return;
    }
    let limit = 1u64 << n;
    let mut mask = (1u64 << size) - 1;
    while mask < limit {
        if visit(mask) {
            return;
        }
        // Gosper's hack: next integer with the same popcount.
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
}
