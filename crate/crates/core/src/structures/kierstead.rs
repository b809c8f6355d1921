//! Kierstead paths: `v0 v1 .. vp` from the uncolored edge `v0v1`, where each later edge is
//! colored with a color missing at some vertex at least two steps back.

use serde::Serialize;

use super::{StructureError, Verdict};
use crate::bitset::{ColorSet, VertexSet};
use crate::coloring::PartialEdgeColoring;
use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KiersteadPath {
    pub vertices: Vec<usize>,
}

impl KiersteadPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn validate_structure(&self, c: &PartialEdgeColoring) -> Result<(), StructureError> {
        let bad = |m: String| Err(StructureError::NotAKiersteadPath(m));
        let v = &self.vertices;
        if v.len() < 2 {
            return bad("fewer than two vertices".into());
        }
        if self.vertex_set().len() != v.len() {
            return bad("repeated vertex".into());
        }
        if c.uncolored_edge() != Some(Edge::new(v[0], v[1])) {
            return bad(format!("{}-{} is not the single uncolored edge", v[0], v[1]));
        }
        let mut earlier = ColorSet::EMPTY;
        for i in 2..v.len() {
            earlier |= c.missing(v[i - 2]);
            let Some(color) = c.color_of(v[i - 1], v[i]) else {
                return bad(format!("{}-{} is not a colored edge", v[i - 1], v[i]));
            };
            if !earlier.contains(color) {
                return bad(format!(
                    "color {color} of {}-{} is not missing before {}",
                    v[i - 1], v[i], v[i - 1]
                ));
            }
        }
        Ok(())
    }
}

/// All Kierstead paths with `len` vertices starting `v0, v1` along the uncolored edge, in
/// lexicographic order of vertex tuples.
pub fn kierstead_paths(c: &PartialEdgeColoring, v0: usize, v1: usize, len: usize) -> Vec<KiersteadPath> {
    let mut out = Vec::new();
    if c.uncolored_edge() != Some(Edge::new(v0, v1)) || len < 2 {
        return out;
    }
    let mut path = vec![v0, v1];
    extend(c, &mut path, c.missing(v0), len, &mut out);
    out
}

fn extend(
    c: &PartialEdgeColoring,
    path: &mut Vec<usize>,
    allowed: ColorSet,
    len: usize,
    out: &mut Vec<KiersteadPath>,
) {
    if path.len() == len {
        out.push(KiersteadPath::new(path.clone()));
        return;
    }
    let last = *path.last().unwrap();
    let mut next: Vec<usize> = (allowed & c.present(last))
        .iter()
        .filter_map(|color| c.neighbor_via(last, color))
        .filter(|w| !path.contains(w))
        .collect();
    next.sort_unstable();
    for w in next {
        let grown = allowed | c.missing(last);
        path.push(w);
        extend(c, path, grown, len, out);
        path.pop();
    }
}

/// The two conclusions for a 4-vertex path at a critical edge, in order: elementary when
/// `min(d(v1), d(v2)) < Δ`; and `|φ̄(v3) ∩ (φ̄(v0) ∪ φ̄(v1))| ≤ 1`.
pub fn validate_kierstead4(
    c: &PartialEdgeColoring,
    k: &KiersteadPath,
) -> Result<(Verdict, Verdict), StructureError> {
    k.validate_structure(c)?;
    if k.len() != 4 {
        return Err(StructureError::Malformed {
            kind: "4-vertex Kierstead path",
            reason: format!("{} vertices", k.len()),
        });
    }
    let g = c.graph();
    let [v0, v1, v2, v3] = [k.vertices[0], k.vertices[1], k.vertices[2], k.vertices[3]];
    let delta = g.max_degree();
    let first = if g.degree(v1).min(g.degree(v2)) >= delta {
        Verdict::inapplicable("both middle vertices have maximum degree")
    } else {
        match c.elementary_conflict(k.vertex_set()) {
            None => Verdict::Ok,
            Some((u, v, color)) => Verdict::violation(format!(
                "path {:?} with a low-degree middle vertex: {u} and {v} both miss {color}",
                k.vertices
            )),
        }
    };
    let shared = c.missing(v3) & (c.missing(v0) | c.missing(v1));
    let second = if shared.len() <= 1 {
        Verdict::Ok
    } else {
        Verdict::violation(format!(
            "path {:?}: {v3} shares colors {shared:?} with the uncolored edge",
            k.vertices
        ))
    };
    Ok((first, second))
}
