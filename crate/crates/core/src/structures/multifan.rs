//! Multifans at an uncolored edge and their decomposition into α-sequences.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{StructureError, Verdict};
use crate::bitset::{ColorSet, VertexSet};
use crate::coloring::{Color, PartialEdgeColoring};
use crate::graph::Edge;

/// `F = (x, xy1, y1, .., xyp, yp)`: spokes `y1..yp`, with `xy1` the uncolored edge and each
/// later spoke colored with a color missing at an earlier spoke.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multifan {
    pub center: usize,
    pub spokes: Vec<usize>,
}

impl Multifan {
    pub fn len(&self) -> usize {
        self.spokes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spokes.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.spokes.iter().copied().chain([self.center]).collect()
    }

    /// φ̄(y1) ∪ .. ∪ φ̄(yp).
    pub fn spoke_missing(&self, c: &PartialEdgeColoring) -> ColorSet {
        c.missing_union(self.spokes.iter().copied())
    }

    /// Checks the defining conditions against `c`.
    pub fn validate_structure(&self, c: &PartialEdgeColoring) -> Result<(), StructureError> {
        let bad = |m: String| Err(StructureError::NotAMultifan(m));
        let x = self.center;
        let Some(&y1) = self.spokes.first() else {
            return bad("no spokes".into());
        };
        if c.uncolored_edge() != Some(Edge::new(x, y1)) {
            return bad(format!("{x}-{y1} is not the single uncolored edge"));
        }
        if self.vertex_set().len() != self.spokes.len() + 1 {
            return bad("repeated vertex".into());
        }
        let mut seen = c.missing(y1);
        for &y in &self.spokes[1..] {
            let Some(color) = c.color_of(x, y) else {
                return bad(format!("{x}-{y} is not a colored edge"));
            };
            if !seen.contains(color) {
                return bad(format!("color {color} of {x}-{y} is not missing at an earlier spoke"));
            }
            seen |= c.missing(y);
        }
        Ok(())
    }
}

/// A maximal multifan at `x` for the uncolored edge `xy`. Spokes are appended by smallest
/// color first.
pub fn grow_multifan(c: &PartialEdgeColoring, x: usize) -> Result<Multifan, StructureError> {
    let Some(e) = c.uncolored_edge().filter(|e| e.has(x)) else {
        return Err(StructureError::NotAMultifan(format!(
            "the coloring must leave exactly one edge at {x} uncolored"
        )));
    };
    let mut fan = Multifan { center: x, spokes: vec![e.other(x)] };
    let mut open = c.missing(e.other(x));
    let mut used = VertexSet::singleton(x) | VertexSet::singleton(e.other(x));
    loop {
        let next = (open & c.present(x))
            .iter()
            .filter_map(|color| c.neighbor_via(x, color))
            .find(|&y| !used.contains(y));
        let Some(y) = next else { break };
        fan.spokes.push(y);
        used.insert(y);
        open |= c.missing(y);
    }
    Ok(fan)
}

/// Elementarity of `V(F)` and linkage of `x` with every spoke for each pair of missing
/// colors. Meaningful when the uncolored edge is critical.
pub fn validate_multifan(c: &PartialEdgeColoring, f: &Multifan) -> Result<(Verdict, Verdict), StructureError> {
    f.validate_structure(c)?;
    Ok((check_fan_elementary(c, f), check_fan_linked(c, f)?))
}

pub fn check_fan_elementary(c: &PartialEdgeColoring, f: &Multifan) -> Verdict {
    match c.elementary_conflict(f.vertex_set()) {
        None => Verdict::Ok,
        Some((u, v, color)) => Verdict::violation(format!("{u} and {v} both miss color {color}")),
    }
}

pub fn check_fan_linked(c: &PartialEdgeColoring, f: &Multifan) -> Result<Verdict, StructureError> {
    let x = f.center;
    for &y in &f.spokes {
        for alpha in c.missing(x).iter() {
            for beta in c.missing(y).iter().filter(|&b| b != alpha) {
                if !c.linked(x, y, alpha, beta)? {
                    return Ok(Verdict::violation(format!(
                        "{x} and {y} are not ({alpha},{beta})-linked"
                    )));
                }
            }
        }
    }
    Ok(Verdict::Ok)
}

/// Missing colors of the spokes grouped by the color of `φ̄(y1)` that induces them.
///
/// Within a fan each spoke `y_j` (`j ≥ 2`) has a unique parent: the spoke missing `φ(xy_j)`.
/// The α-sequences are the root-to-leaf paths below the child of `y1` reached by color α.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaDecomposition {
    /// Parent spoke position for each spoke position; `None` for `y1`.
    pub parent: Vec<Option<usize>>,
    /// Inducing color of each spoke position; `None` for `y1`.
    pub group: Vec<Option<Color>>,
    /// Missing color → (spoke position, inducing color).
    pub induced: BTreeMap<Color, (usize, Color)>,
}

impl AlphaDecomposition {
    pub fn inducing(&self, color: Color) -> Option<Color> {
        self.induced.get(&color).map(|&(_, a)| a)
    }

    fn is_ancestor(&self, anc: usize, mut pos: usize) -> bool {
        while let Some(p) = self.parent[pos] {
            if p == anc {
                return true;
            }
            pos = p;
        }
        false
    }

    /// `δ ≺ λ`: both induced by the same color and `δ` sits strictly earlier on an
    /// α-sequence (the inducing color itself precedes every other color of its group).
    pub fn precedes(&self, delta: Color, lambda: Color) -> bool {
        match (self.induced.get(&delta), self.induced.get(&lambda)) {
            (Some(&(pd, ad)), Some(&(pl, al))) if ad == al && delta != lambda => {
                delta == ad || self.is_ancestor(pd, pl)
            }
            _ => false,
        }
    }

    /// The α-sequences of one inducing color as lists of spoke positions.
    pub fn sequences(&self, alpha: Color) -> Vec<Vec<usize>> {
        let members: Vec<usize> = (0..self.parent.len())
            .filter(|&p| self.group[p] == Some(alpha))
            .collect();
        members
            .iter()
            .filter(|&&p| !members.iter().any(|&q| self.parent[q] == Some(p)))
            .map(|&leaf| {
                let mut seq = vec![leaf];
                while let Some(p) = self.parent[*seq.last().unwrap()].filter(|&p| p != 0) {
                    seq.push(p);
                }
                seq.reverse();
                seq
            })
            .collect()
    }
}

/// Builds the α-sequence decomposition of a fan whose spokes are elementary.
pub fn alpha_decompose(c: &PartialEdgeColoring, f: &Multifan) -> Result<AlphaDecomposition, StructureError> {
    f.validate_structure(c)?;
    let spokes: VertexSet = f.spokes.iter().copied().collect();
    if !c.is_elementary(spokes) {
        return Err(StructureError::NotElementary);
    }
    let owner = |color: Color| f.spokes.iter().position(|&y| c.misses(y, color));
    let mut parent = vec![None; f.spokes.len()];
    let mut group: Vec<Option<Color>> = vec![None; f.spokes.len()];
    // Parents precede children in fan order, so one pass settles every group.
    for (pos, &y) in f.spokes.iter().enumerate().skip(1) {
        let color = c.color_of(f.center, y).expect("validated spoke");
        let p = owner(color).expect("validated spoke color");
        parent[pos] = Some(p);
        group[pos] = if p == 0 { Some(color) } else { group[p] };
    }
    let mut induced = BTreeMap::new();
    for color in c.missing(f.spokes[0]).iter() {
        induced.insert(color, (0, color));
    }
    for (pos, &y) in f.spokes.iter().enumerate().skip(1) {
        for color in c.missing(y).iter() {
            induced.insert(color, (pos, group[pos].expect("set for every later spoke")));
        }
    }
    Ok(AlphaDecomposition { parent, group, induced })
}

/// Linkage between spokes according to their inducing colors, as two verdicts:
/// different inducing colors force linkage; same inducing color with `δ ≺ λ` and no linkage
/// puts `x` on the `(λ,δ)`-path from `y_j`.
pub fn validate_fan_linkage(
    c: &PartialEdgeColoring,
    f: &Multifan,
    d: &AlphaDecomposition,
) -> Result<(Verdict, Verdict), StructureError> {
    if d.parent.len() != f.spokes.len() {
        return Err(StructureError::Malformed {
            kind: "α-sequence decomposition",
            reason: "spoke count mismatch".into(),
        });
    }
    let (mut first, mut second) = (Verdict::Ok, Verdict::Ok);
    for (&delta, &(i, a_delta)) in &d.induced {
        for (&lambda, &(j, a_lambda)) in &d.induced {
            if i == j || delta == lambda {
                continue;
            }
            let (yi, yj) = (f.spokes[i], f.spokes[j]);
            let linked = c.linked(yi, yj, delta, lambda)?;
            if a_delta != a_lambda {
                if !linked && first.is_ok() {
                    first = Verdict::violation(format!(
                        "{yi} and {yj} are not ({delta},{lambda})-linked though induced by {a_delta} and {a_lambda}"
                    ));
                }
            } else if d.precedes(delta, lambda)
                && !linked
                && !c.linked(f.center, yj, lambda, delta)?
                && second.is_ok()
            {
                second = Verdict::violation(format!(
                    "{delta} precedes {lambda}, {yi} and {yj} are unlinked, and {} is off the ({lambda},{delta})-path from {yj}",
                    f.center
                ));
            }
        }
    }
    Ok((first, second))
}
