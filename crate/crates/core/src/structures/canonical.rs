//! Normal form for a 5-vertex Kierstead path `a b u s t` whose last vertex shares at least
//! three missing colors with the uncolored edge `ab`.
//!
//! The recoloring is a fixed case analysis of Kempe changes. Each executed change is recorded
//! in a [`SwapScript`], and the result is replayed from the input as a cross-check.

use std::sync::Arc;

use super::kierstead::KiersteadPath;
use super::{StructureError, Verdict};
use crate::bitset::ColorSet;
use crate::coloring::{Color, PartialEdgeColoring, SwapScript};
use crate::graph::{Edge, Graph};
use crate::oracle::{self, Constraints, OracleConfig, OracleError};

#[derive(Debug, Clone)]
pub enum CanonicalOutcome {
    /// A coloring meeting (i) `φ(bu) ∈ φ̄(a) ∩ φ̄(t)`, (ii) `φ(us) ∈ φ̄(b) ∩ φ̄(t)` and
    /// (iii) `φ(st) ∈ φ̄(a)`.
    Canonical { coloring: PartialEdgeColoring, script: SwapScript, branch: &'static str },
    Inapplicable { reason: String },
    /// The case analysis could not continue or finished without (i)–(iii).
    DeadEnd { branch: &'static str, reason: String, script: SwapScript },
}

impl CanonicalOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Canonical { .. } => "canonical",
            Self::Inapplicable { .. } => "inapplicable",
            Self::DeadEnd { .. } => "dead-end",
        }
    }
}

fn five(k: &KiersteadPath) -> Result<[usize; 5], StructureError> {
    <[usize; 5]>::try_from(k.vertices.as_slice()).map_err(|_| StructureError::Malformed {
        kind: "5-vertex Kierstead path",
        reason: format!("{} vertices", k.len()),
    })
}

/// `φ̄(t) ∩ (φ̄(a) ∪ φ̄(b))`.
fn gamma(c: &PartialEdgeColoring, [a, b, _, _, t]: [usize; 5]) -> ColorSet {
    c.missing(t) & (c.missing(a) | c.missing(b))
}

/// Checks (i)–(iii) for `K = (a, b, u, s, t)`; `Err` names the first that fails.
pub fn canonical_conditions(c: &PartialEdgeColoring, k: &KiersteadPath) -> Result<(), String> {
    let [a, b, u, s, t] = five(k).map_err(|e| e.to_string())?;
    let holds = |x: usize, y: usize, want: ColorSet| c.color_of(x, y).is_some_and(|col| want.contains(col));
    if !holds(b, u, c.missing(a) & c.missing(t)) {
        return Err(format!("(i) fails: φ({b}{u}) is not missing at both {a} and {t}"));
    }
    if !holds(u, s, c.missing(b) & c.missing(t)) {
        return Err(format!("(ii) fails: φ({u}{s}) is not missing at both {b} and {t}"));
    }
    if !holds(s, t, c.missing(a)) {
        return Err(format!("(iii) fails: φ({s}{t}) is not missing at {a}"));
    }
    Ok(())
}

enum Halt {
    Dead(String),
    Error(StructureError),
}

impl From<crate::coloring::ColoringError> for Halt {
    fn from(e: crate::coloring::ColoringError) -> Self {
        Halt::Error(e.into())
    }
}

struct Run {
    c: PartialEdgeColoring,
    script: SwapScript,
    branch: &'static str,
}

impl Run {
    fn swap(&mut self, at: usize, p: Color, q: Color) -> Result<(), Halt> {
        if !self.c.misses(at, p) && !self.c.misses(at, q) {
            return Err(Halt::Dead(format!("({p},{q})-swap at {at}, which misses neither color")));
        }
        self.c = self.c.swap_at(at, p, q)?;
        self.script = std::mem::take(&mut self.script).swap_chain(at, p, q);
        Ok(())
    }

    fn chain_has_vertex(&self, x: usize, p: Color, q: Color, v: usize) -> Result<bool, Halt> {
        Ok(self.c.kempe_chain(x, p, q)?.contains(v))
    }

    fn color(&self, x: usize, y: usize) -> Result<Color, Halt> {
        self.c
            .color_of(x, y)
            .ok_or_else(|| Halt::Dead(format!("{x}-{y} is uncolored")))
    }

    fn require(&self, ok: bool, what: impl FnOnce() -> String) -> Result<(), Halt> {
        if ok {
            Ok(())
        } else {
            Err(Halt::Dead(what()))
        }
    }
}

/// Runs the case analysis on `K = (a, b, u, s, t)`.
pub fn canonicalize_k5_path(
    c: &PartialEdgeColoring,
    k: &KiersteadPath,
) -> Result<CanonicalOutcome, StructureError> {
    let vs = five(k)?;
    k.validate_structure(c)?;
    let g = gamma(c, vs);
    if g.len() < 3 {
        return Ok(CanonicalOutcome::Inapplicable {
            reason: format!("|φ̄(t) ∩ (φ̄(a) ∪ φ̄(b))| = {} < 3", g.len()),
        });
    }
    if canonical_conditions(c, k).is_ok() {
        return Ok(CanonicalOutcome::Canonical {
            coloring: c.clone(),
            script: SwapScript::new(),
            branch: "already canonical",
        });
    }
    let mut run = Run { c: c.clone(), script: SwapScript::new(), branch: "normalize" };
    let result = steps(&mut run, vs).and_then(|()| {
        canonical_conditions(&run.c, k).map_err(Halt::Dead)
    });
    match result {
        Ok(()) => {
            let replay = c.apply_script(&run.script).map_err(|e| StructureError::Malformed {
                kind: "swap script",
                reason: e.to_string(),
            })?;
            if replay.coloring.colors() != run.c.colors() {
                return Err(StructureError::Malformed {
                    kind: "swap script",
                    reason: "replay differs from the executed swaps".into(),
                });
            }
            Ok(CanonicalOutcome::Canonical { coloring: run.c, script: run.script, branch: run.branch })
        }
        Err(Halt::Dead(reason)) => {
            Ok(CanonicalOutcome::DeadEnd { branch: run.branch, reason, script: run.script })
        }
        Err(Halt::Error(e)) => Err(e),
    }
}

fn steps(run: &mut Run, [a, b, u, s, t]: [usize; 5]) -> Result<(), Halt> {
    // α ∈ Γ ∩ φ̄(a), β ∈ Γ ∩ φ̄(b)
    let g = gamma(&run.c, [a, b, u, s, t]);
    let (in_a, in_b) = (g & run.c.missing(a), g & run.c.missing(b));
    let without = |mut set: ColorSet, col: Color| {
        set.remove(col);
        set
    };
    let pair = |set: ColorSet| Some((set.first()?, set.iter().nth(1)?));
    let (alpha, beta) = if let Some((x, y)) = in_a.first().and_then(|x| Some((x, without(in_b, x).first()?))) {
        (x, y)
    } else if let Some((x, y)) = pair(in_a) {
        let lambda = run.c.missing(b).first().ok_or_else(|| Halt::Dead(format!("{b} misses no color")))?;
        run.swap(b, y, lambda)?;
        (x, y)
    } else if let Some((x, y)) = pair(in_b) {
        let lambda = run.c.missing(a).first().ok_or_else(|| Halt::Dead(format!("{a} misses no color")))?;
        run.swap(a, x, lambda)?;
        (x, y)
    } else {
        return Err(Halt::Dead("no two colors of Γ fit a and b".into()));
    };
    let both = |run: &Run, x: usize, col: Color| run.c.misses(x, col) && run.c.misses(t, col);
    run.require(both(run, a, alpha) && both(run, b, beta), || {
        format!("{alpha} is not missing at {a} and {t}, or {beta} not at {b} and {t}")
    })?;

    // φ(bu) = α
    run.branch = "recolor bu";
    let mut alpha = alpha;
    let delta = run.color(b, u)?;
    if delta != alpha {
        run.swap(t, beta, delta)?;
        run.swap(t, alpha, beta)?;
        alpha = delta;
    }
    run.require(run.color(b, u)? == alpha && both(run, a, alpha) && both(run, b, beta), || {
        format!("φ({b}{u}) = {alpha} is not missing at {a} and {t}")
    })?;

    let sigma = run.color(u, s)?;
    if run.c.misses(b, sigma) {
        run.branch = "us colored from b";
        if sigma != beta {
            let us = run.c.graph().edge_id(u, s).expect("path edge");
            if run.c.kempe_chain(t, beta, sigma)?.contains_edge(us) {
                run.swap(t, beta, sigma)?;
                run.swap(t, alpha, beta)?;
                run.swap(t, alpha, sigma)?;
            } else {
                run.swap(t, beta, sigma)?;
            }
        }
        return Ok(());
    }

    let delta = sigma;
    run.require(run.c.misses(a, delta), || format!("φ({u}{s}) = {delta} is missing at neither {a} nor {b}"))?;
    let gamma_color = run.color(s, t)?;
    let gc = gamma_color;
    if run.c.misses(b, gc) {
        if run.chain_has_vertex(a, beta, delta, u)? {
            run.branch = "case 1, u on the (β,δ)-chain";
            run.swap(t, beta, delta)?;
            run.swap(a, delta, gc)?;
        } else {
            run.branch = "case 1, u off the (β,δ)-chain";
            run.swap(a, beta, delta)?;
            run.swap(a, beta, gc)?;
        }
    } else if run.c.misses(u, gc) {
        if run.c.misses(t, delta) {
            run.branch = "case 2, δ missing at t";
            run.swap(t, beta, gc)?;
            run.swap(a, beta, delta)?;
        } else {
            run.branch = "case 2, δ present at t";
            run.swap(t, beta, gc)?;
            run.swap(t, gc, delta)?;
            run.swap(a, beta, delta)?;
        }
    } else if run.c.misses(a, gc) {
        if run.c.misses(t, delta) {
            run.branch = "case 3, δ missing at t";
            return case3_delta_missing(run, a, t, beta, gc, delta);
        }
        let mut rest = gamma(&run.c, [a, b, u, s, t]);
        rest.remove(alpha);
        rest.remove(beta);
        let tau = rest.first().ok_or_else(|| Halt::Dead("no third color of Γ".into()))?;
        if run.c.misses(u, tau) {
            run.branch = "case 3, τ missing at u";
            run.swap(t, tau, delta)?;
            return case3_delta_missing(run, a, t, beta, gc, delta);
        }
        if run.c.misses(b, tau) {
            if run.chain_has_vertex(a, tau, delta, u)? {
                run.branch = "case 3, τ missing at b, u on the (τ,δ)-chain";
                run.swap(t, tau, delta)?;
                return case3_delta_missing(run, a, t, beta, gc, delta);
            }
            run.branch = "case 3, τ missing at b, u off the (τ,δ)-chain";
            return run.swap(a, tau, delta);
        }
        if run.chain_has_vertex(a, beta, delta, u)? {
            run.branch = "case 3, τ missing at a, u on the (β,δ)-chain";
            run.swap(t, beta, delta)?;
            run.swap(t, tau, beta)?;
            run.swap(a, beta, gc)?;
            run.swap(a, gc, delta)?;
        } else {
            run.branch = "case 3, τ missing at a, u off the (β,δ)-chain";
            run.swap(a, beta, delta)?;
            run.swap(t, alpha, delta)?;
            run.swap(a, gc, delta)?;
            run.swap(t, beta, gc)?;
            run.swap(t, gc, alpha)?;
            run.swap(t, tau, gc)?;
            run.swap(a, beta, gc)?;
            run.swap(a, beta, delta)?;
        }
    } else {
        run.branch = "st color";
        return Err(Halt::Dead(format!("φ({s}{t}) = {gc} is missing at none of {a}, {b}, {u}")));
    }
    Ok(())
}

fn case3_delta_missing(run: &mut Run, a: usize, t: usize, beta: Color, gc: Color, delta: Color) -> Result<(), Halt> {
    run.swap(t, beta, gc)?;
    run.swap(a, beta, delta)
}

/// `d(b) = d(u) = Δ` whenever `|φ̄(t) ∩ (φ̄(a) ∪ φ̄(b))| ≥ 3`.
pub fn check_k5_degrees(c: &PartialEdgeColoring, k: &KiersteadPath) -> Result<Verdict, StructureError> {
    let vs = five(k)?;
    k.validate_structure(c)?;
    let g = gamma(c, vs);
    if g.len() < 3 {
        return Ok(Verdict::inapplicable(format!("|Γ| = {} < 3", g.len())));
    }
    let graph = c.graph();
    let [_, b, u, _, _] = vs;
    let delta = graph.max_degree();
    Ok(if graph.degree(b) == delta && graph.degree(u) == delta {
        Verdict::Ok
    } else {
        Verdict::violation(format!(
            "path {:?} with |Γ| = {}: d(b) = {}, d(u) = {}, Δ = {delta}",
            k.vertices,
            g.len(),
            graph.degree(b),
            graph.degree(u)
        ))
    })
}

/// Exact search for a Δ-coloring of `G - ab` meeting (i)–(iii) on the path `a b u s t`. Colors
/// are interchangeable, so `bu`, `us`, `st` are fixed to 1, 2, 3.
pub fn canonical_exists(
    g: &Arc<Graph>,
    [a, b, u, s, t]: [usize; 5],
    cfg: &OracleConfig,
) -> Result<Option<PartialEdgeColoring>, OracleError> {
    let delta = g.max_degree();
    if delta < 3 {
        return Ok(None);
    }
    let set = |cs: &[Color]| cs.iter().copied().collect::<ColorSet>();
    let constraints = Constraints {
        skip: Some(Edge::new(a, b)),
        fixed: vec![(Edge::new(b, u), 1), (Edge::new(u, s), 2), (Edge::new(s, t), 3)],
        forbidden: vec![(a, set(&[1, 3])), (b, set(&[2])), (t, set(&[1, 2]))],
    };
    oracle::find_coloring(g, delta, &constraints, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    /// Path a=0, b=1, u=2, s=3, t=4 with pendant edges, k = 5. `a` misses {1,2,3}, `b` misses
    /// {2,3,4,5}, `t` misses {1,2,4}.
    fn canonical_path() -> PartialEdgeColoring {
        let g = Arc::new(
            Graph::new(8, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (0, 6), (4, 7)]).unwrap(),
        );
        // bu = 1 ∈ m(a) ∩ m(t), us = 4 ∈ m(b) ∩ m(t), st = 3 ∈ m(a)
        PartialEdgeColoring::from_triples(
            g,
            5,
            &[(1, 2, 1), (2, 3, 4), (3, 4, 3), (0, 5, 4), (0, 6, 5), (4, 7, 5)],
        )
        .unwrap()
    }

    fn k5() -> KiersteadPath {
        KiersteadPath::new(vec![0, 1, 2, 3, 4])
    }

    #[test]
    fn identity_case() {
        let c = canonical_path();
        k5().validate_structure(&c).unwrap();
        match canonicalize_k5_path(&c, &k5()).unwrap() {
            CanonicalOutcome::Canonical { coloring, script, branch } => {
                assert_eq!(coloring.colors(), c.colors());
                assert!(script.is_empty());
                assert_eq!(branch, "already canonical");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_gamma_is_inapplicable() {
        // t gains an edge colored 4, leaving Γ = {1, 2}
        let g = Arc::new(
            Graph::new(9, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (0, 6), (4, 7), (4, 8)]).unwrap(),
        );
        let c = PartialEdgeColoring::from_triples(
            g,
            5,
            &[(1, 2, 1), (2, 3, 4), (3, 4, 3), (0, 5, 4), (0, 6, 5), (4, 7, 5), (4, 8, 4)],
        )
        .unwrap();
        assert!(matches!(canonicalize_k5_path(&c, &k5()).unwrap(), CanonicalOutcome::Inapplicable { .. }));
        assert!(matches!(check_k5_degrees(&c, &k5()).unwrap(), Verdict::Inapplicable { .. }));
    }

    #[test]
    fn degrees_checked_on_non_critical_host() {
        let c = canonical_path();
        // d(b) = d(u) = 2 < Δ = 3
        assert!(check_k5_degrees(&c, &k5()).unwrap().is_violation());
        assert!(check_k5_degrees(&c, &KiersteadPath::new(vec![0, 1, 2, 3])).is_err());
    }

    #[test]
    fn recolors_into_normal_form() {
        // a misses {1,2,3}, b misses {4,5}, t misses {1,4,5}; bu = 2 is present at t
        let g = Arc::new(
            Graph::new(10, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (0, 6), (1, 7), (1, 8), (4, 9)])
                .unwrap(),
        );
        let c = PartialEdgeColoring::from_triples(
            g,
            5,
            &[(1, 2, 2), (2, 3, 4), (3, 4, 3), (0, 5, 4), (0, 6, 5), (1, 7, 1), (1, 8, 3), (4, 9, 2)],
        )
        .unwrap();
        assert!(canonical_conditions(&c, &k5()).unwrap_err().starts_with("(i)"));
        match canonicalize_k5_path(&c, &k5()).unwrap() {
            CanonicalOutcome::Canonical { coloring, script, branch } => {
                canonical_conditions(&coloring, &k5()).unwrap();
                assert!(coloring.is_proper());
                assert_eq!(branch, "us colored from b");
                assert_eq!(script.len(), 2);
                let replay = c.apply_script(&script).unwrap().coloring;
                assert_eq!(replay.colors(), coloring.colors());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn existence_search_respects_the_conditions() {
        let g = Arc::new(petersen_minus_vertex());
        let cfg = OracleConfig::default();
        for e in g.edges() {
            let c = oracle::delta_coloring_without(&g, *e, &cfg).unwrap().unwrap();
            for k in crate::structures::kierstead::kierstead_paths(&c, e.0, e.1, 5) {
                let vs: [usize; 5] = k.vertices.clone().try_into().unwrap();
                if let Some(found) = canonical_exists(&g, vs, &cfg).unwrap() {
                    assert!(found.is_proper());
                    assert_eq!(found.uncolored_edge(), Some(*e));
                    canonical_conditions(&found, &k).unwrap();
                }
            }
        }
    }
}
