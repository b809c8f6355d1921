//! Forks, short-kites and kites: small trees and cycles hanging off the uncolored edge `ab`.

use serde::Serialize;

use super::{StructureError, Verdict};
use crate::bitset::{ColorSet, VertexSet};
use crate::coloring::PartialEdgeColoring;
use crate::graph::Edge;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForkKind {
    Fork,
    ShortKite,
    Kite,
}

impl ForkKind {
    pub fn labels(self) -> &'static [&'static str] {
        match self {
            Self::Fork => &["a", "b", "u", "s1", "s2", "t1", "t2"],
            Self::ShortKite => &["a", "b", "c", "u", "x", "y"],
            Self::Kite => &["a", "b", "c", "u", "s1", "s2", "t1", "t2"],
        }
    }

    /// Edges as pairs of label positions.
    fn template(self) -> &'static [(usize, usize)] {
        match self {
            // ab, bu, us1, us2, s1t1, s2t2
            Self::Fork => &[(0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (4, 6)],
            // ab, ac, bu, cu, ux, uy
            Self::ShortKite => &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5)],
            // ab, ac, bu, cu, us1, us2, s1t1, s2t2
            Self::Kite => &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 7)],
        }
    }
}

/// An embedding of one of the three shapes; `vertices` follows [`ForkKind::labels`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForkLike {
    pub kind: ForkKind,
    pub vertices: Vec<usize>,
}

impl ForkLike {
    pub fn vertex(&self, label: &str) -> usize {
        let pos = self.kind.labels().iter().position(|&l| l == label).expect("known label");
        self.vertices[pos]
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.kind
            .template()
            .iter()
            .map(|&(i, j)| Edge::new(self.vertices[i], self.vertices[j]))
            .collect()
    }

    /// Distinct vertices, the edge set present, and `ab` the uncolored edge.
    pub fn validate_structure(&self, c: &PartialEdgeColoring) -> Result<(), StructureError> {
        let bad = |reason: String| Err(StructureError::Malformed { kind: "fork-like structure", reason });
        if self.vertices.len() != self.kind.labels().len() {
            return bad(format!("{} vertices for a {:?}", self.vertices.len(), self.kind));
        }
        let set: VertexSet = self.vertices.iter().copied().collect();
        if set.len() != self.vertices.len() {
            return bad("repeated vertex".into());
        }
        if let Some(e) = self.edges().into_iter().find(|e| !c.graph().has_edge(e.0, e.1)) {
            return bad(format!("{}-{} is not an edge", e.0, e.1));
        }
        let (a, b) = (self.vertices[0], self.vertices[1]);
        if c.uncolored_edge() != Some(Edge::new(a, b)) {
            return bad(format!("{a}-{b} is not the single uncolored edge"));
        }
        Ok(())
    }

    /// The color conditions of the kind: the fork definition, or the two Kierstead paths
    /// `K` and `K*` for short-kites and kites. `Err` names the first failing condition.
    pub fn color_conditions(&self, c: &PartialEdgeColoring) -> Result<(), String> {
        let v = &self.vertices;
        let (a, b) = (v[0], v[1]);
        let m = |x: usize| c.missing(x);
        let ab = m(a) | m(b);
        let check = |x: usize, y: usize, allowed: ColorSet| -> Result<(), String> {
            match c.color_of(x, y) {
                Some(col) if allowed.contains(col) => Ok(()),
                Some(col) => Err(format!("color {col} of {x}-{y} is outside {allowed:?}")),
                None => Err(format!("{x}-{y} is uncolored")),
            }
        };
        match self.kind {
            ForkKind::Fork => {
                let [u, s1, s2, t1, t2] = [v[2], v[3], v[4], v[5], v[6]];
                check(b, u, m(a))?;
                check(u, s1, ab)?;
                check(u, s2, ab)?;
                check(s1, t1, ab & m(t2))?;
                check(s2, t2, ab & m(t1))
            }
            ForkKind::ShortKite => {
                let [cc, u, x, y] = [v[2], v[3], v[4], v[5]];
                check(b, u, m(a))?;
                check(u, x, ab)?;
                check(a, cc, m(b))?;
                check(cc, u, ab)?;
                check(u, y, ab | m(cc))
            }
            ForkKind::Kite => {
                let [cc, u, s1, s2, t1, t2] = [v[2], v[3], v[4], v[5], v[6], v[7]];
                check(b, u, m(a))?;
                check(u, s1, ab)?;
                check(s1, t1, ab | m(u))?;
                check(a, cc, m(b))?;
                check(cc, u, ab)?;
                check(u, s2, ab | m(cc))?;
                check(s2, t2, ab | m(cc) | m(u))
            }
        }
    }
}

/// Neighbors of `x` through an edge colored from `allowed`, in increasing order.
fn via(c: &PartialEdgeColoring, x: usize, allowed: ColorSet) -> Vec<usize> {
    let mut out: Vec<usize> = (allowed & c.present(x))
        .iter()
        .filter_map(|col| c.neighbor_via(x, col))
        .collect();
    out.sort_unstable();
    out
}

/// Every embedding of `kind` at the uncolored edge, in both orientations, meeting the color
/// conditions; sorted by vertex tuple. Forks are listed once per unordered pair `{s1, s2}`.
pub fn find_forklike(c: &PartialEdgeColoring, kind: ForkKind) -> Vec<ForkLike> {
    let Some(e) = c.uncolored_edge() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (a, b) in [(e.0, e.1), (e.1, e.0)] {
        match kind {
            ForkKind::Fork => forks(c, a, b, &mut out),
            ForkKind::ShortKite | ForkKind::Kite => kites(c, a, b, kind, &mut out),
        }
    }
    out.retain(|f| f.color_conditions(c).is_ok());
    out.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    out
}

fn distinct(vs: &[usize]) -> bool {
    vs.iter().copied().collect::<VertexSet>().len() == vs.len()
}

fn forks(c: &PartialEdgeColoring, a: usize, b: usize, out: &mut Vec<ForkLike>) {
    let ab = c.missing(a) | c.missing(b);
    for u in via(c, b, c.missing(a)) {
        let spokes = via(c, u, ab);
        for (i, &s1) in spokes.iter().enumerate() {
            for &s2 in &spokes[i + 1..] {
                for t1 in via(c, s1, ab) {
                    for t2 in via(c, s2, ab) {
                        let vs = [a, b, u, s1, s2, t1, t2];
                        if distinct(&vs) {
                            out.push(ForkLike { kind: ForkKind::Fork, vertices: vs.to_vec() });
                        }
                    }
                }
            }
        }
    }
}

fn kites(c: &PartialEdgeColoring, a: usize, b: usize, kind: ForkKind, out: &mut Vec<ForkLike>) {
    let ab = c.missing(a) | c.missing(b);
    for u in via(c, b, c.missing(a)) {
        for cc in via(c, a, c.missing(b)) {
            if !c.color_of(cc, u).is_some_and(|col| ab.contains(col)) {
                continue;
            }
            let first = via(c, u, ab);
            let second = via(c, u, ab | c.missing(cc));
            for &s1 in &first {
                for &s2 in &second {
                    if kind == ForkKind::ShortKite {
                        let vs = [a, b, cc, u, s1, s2];
                        if distinct(&vs) {
                            out.push(ForkLike { kind, vertices: vs.to_vec() });
                        }
                        continue;
                    }
                    for t1 in via(c, s1, ab | c.missing(u)) {
                        for t2 in via(c, s2, ab | c.missing(cc) | c.missing(u)) {
                            let vs = [a, b, cc, u, s1, s2, t1, t2];
                            if distinct(&vs) {
                                out.push(ForkLike { kind, vertices: vs.to_vec() });
                            }
                        }
                    }
                }
            }
        }
    }
}

/// A fork with `Δ ≥ d(a) + d(t1) + d(t2) + 1` cannot exist at a critical edge; other forks
/// fall outside the degree hypothesis.
pub fn validate_fork(c: &PartialEdgeColoring, f: &ForkLike) -> Result<Verdict, StructureError> {
    expect_kind(f, ForkKind::Fork)?;
    f.validate_structure(c)?;
    if let Err(reason) = f.color_conditions(c) {
        return Err(StructureError::Malformed { kind: "fork", reason });
    }
    let g = c.graph();
    let sum = g.degree(f.vertex("a")) + g.degree(f.vertex("t1")) + g.degree(f.vertex("t2"));
    Ok(if g.max_degree() > sum {
        Verdict::violation(format!("fork {:?} with d(a) + d(t1) + d(t2) = {sum} < Δ", f.vertices))
    } else {
        Verdict::inapplicable(format!("d(a) + d(t1) + d(t2) = {sum} ≥ Δ"))
    })
}

/// Whether two distinct vertices `t1, t2` outside `{a, b}` could satisfy the fork degree
/// hypothesis at all.
pub fn fork_hypothesis_possible(c: &PartialEdgeColoring, a: usize, b: usize) -> bool {
    let g = c.graph();
    let mut low: Vec<usize> = g.vertices().filter(|&v| v != a && v != b).map(|v| g.degree(v)).collect();
    low.sort_unstable();
    low.len() >= 2 && g.max_degree() > g.degree(a) + low[0] + low[1]
}

/// `max(d(x), d(y)) = Δ` when both `x` and `y` miss a color of `a` or `b`.
pub fn validate_shortkite(c: &PartialEdgeColoring, sk: &ForkLike) -> Result<Verdict, StructureError> {
    expect_kind(sk, ForkKind::ShortKite)?;
    sk.validate_structure(c)?;
    if let Err(reason) = sk.color_conditions(c) {
        return Ok(Verdict::Inapplicable { reason });
    }
    let (a, b, x, y) = (sk.vertex("a"), sk.vertex("b"), sk.vertex("x"), sk.vertex("y"));
    let ab = c.missing(a) | c.missing(b);
    for v in [x, y] {
        if c.missing(v).is_disjoint(ab) {
            return Ok(Verdict::inapplicable(format!("{v} misses no color of {a} or {b}")));
        }
    }
    let g = c.graph();
    Ok(if g.degree(x).max(g.degree(y)) == g.max_degree() {
        Verdict::Ok
    } else {
        Verdict::violation(format!(
            "short-kite {:?}: d(x) = {}, d(y) = {}, Δ = {}",
            sk.vertices,
            g.degree(x),
            g.degree(y),
            g.max_degree()
        ))
    })
}

/// `|φ̄(t1) ∩ φ̄(t2) ∩ (φ̄(a) ∪ φ̄(b))| ≤ 4` when `φ(s1t1) = φ(s2t2)`.
pub fn validate_kite(c: &PartialEdgeColoring, kt: &ForkLike) -> Result<Verdict, StructureError> {
    expect_kind(kt, ForkKind::Kite)?;
    kt.validate_structure(c)?;
    if let Err(reason) = kt.color_conditions(c) {
        return Ok(Verdict::Inapplicable { reason });
    }
    let [s1, s2, t1, t2] = ["s1", "s2", "t1", "t2"].map(|l| kt.vertex(l));
    if c.color_of(s1, t1) != c.color_of(s2, t2) {
        return Ok(Verdict::inapplicable(format!("{s1}-{t1} and {s2}-{t2} have different colors")));
    }
    let gamma = c.missing(t1) & c.missing(t2) & (c.missing(kt.vertex("a")) | c.missing(kt.vertex("b")));
    Ok(if gamma.len() <= 4 {
        Verdict::Ok
    } else {
        Verdict::violation(format!("kite {:?}: Γ = {gamma:?} has {} colors", kt.vertices, gamma.len()))
    })
}

fn expect_kind(f: &ForkLike, kind: ForkKind) -> Result<(), StructureError> {
    if f.kind == kind {
        Ok(())
    } else {
        Err(StructureError::Malformed { kind: "fork-like structure", reason: format!("expected {kind:?}, got {:?}", f.kind) })
    }
}
