//! Degree dichotomy around a low-degree vertex of a Δ-critical graph.

use super::{StructureError, Verdict};
use crate::coloring::PartialEdgeColoring;
use crate::graph::Graph;

/// `3 d(a) ≤ 2Δ - n + 2`, or the reason it fails.
fn low_degree_precondition(g: &Graph, a: usize) -> Result<(), String> {
    let (n, delta, da) = (g.vertex_count() as i64, g.max_degree() as i64, g.degree(a) as i64);
    if 3 * da <= 2 * delta - n + 2 {
        Ok(())
    } else {
        Err(format!("3·d({a}) = {} exceeds 2Δ - n + 2 = {}", 3 * da, 2 * delta - n + 2))
    }
}

/// Every `v ≠ a` has `d(v) ≥ Δ - d(a) + 1` or `d(v) ≤ n - Δ + 2d(a) - 6`. The caller certifies
/// that `g` is Δ-critical.
pub fn check_degree_dichotomy(g: &Graph, a: usize) -> Result<Verdict, StructureError> {
    if a >= g.vertex_count() {
        return Err(StructureError::Malformed {
            kind: "vertex",
            reason: format!("{a} is not a vertex of a graph on {} vertices", g.vertex_count()),
        });
    }
    if let Err(reason) = low_degree_precondition(g, a) {
        return Ok(Verdict::Inapplicable { reason });
    }
    let (n, delta, da) = (g.vertex_count() as i64, g.max_degree() as i64, g.degree(a) as i64);
    let (high, low) = (delta - da + 1, n - delta + 2 * da - 6);
    for v in g.vertices().filter(|&v| v != a) {
        let dv = g.degree(v) as i64;
        if dv < high && dv > low {
            return Ok(Verdict::violation(format!(
                "d({v}) = {dv} lies strictly between {low} and {high}"
            )));
        }
    }
    Ok(Verdict::Ok)
}

/// With `ab` the uncolored edge, `d(b) = Δ` and the degree bound at `a`: every `v ≠ a` with
/// `d(v) ≥ Δ - d(a) + 1` shares at most one missing color with `a` and `b`.
pub fn check_degree_dichotomy_colors(c: &PartialEdgeColoring, a: usize) -> Result<Verdict, StructureError> {
    let Some(e) = c.uncolored_edge().filter(|e| e.has(a)) else {
        return Err(StructureError::Malformed {
            kind: "coloring",
            reason: format!("expected exactly one uncolored edge, at {a}"),
        });
    };
    let g = c.graph();
    let b = e.other(a);
    if g.degree(b) != g.max_degree() {
        return Ok(Verdict::inapplicable(format!("d({b}) < Δ")));
    }
    if let Err(reason) = low_degree_precondition(g, a) {
        return Ok(Verdict::Inapplicable { reason });
    }
    let high = g.max_degree() + 1 - g.degree(a).min(g.max_degree());
    let ab = c.missing(a) | c.missing(b);
    for v in g.vertices().filter(|&v| v != a && g.degree(v) >= high) {
        let shared = c.missing(v) & ab;
        if shared.len() > 1 {
            return Ok(Verdict::violation(format!(
                "{v} shares {shared:?} with the missing colors of {a} and {b}"
            )));
        }
    }
    Ok(Verdict::Ok)
}
