//! Recoloring structures at an uncolored edge and checkers for their known properties.
//!
//! Every checker separates three outcomes: the input is not the claimed object (an `Err`), the
//! hypotheses do not apply ([`Verdict::Inapplicable`]), or the conclusion fails
//! ([`Verdict::Violation`]).

use serde::Serialize;
use thiserror::Error;

use crate::coloring::ColoringError;
use crate::graph::Graph;

pub mod canonical;
pub mod degree;
pub mod forklike;
pub mod kierstead;
pub mod multifan;

pub use canonical::{canonicalize_k5_path, CanonicalOutcome};
pub use degree::{check_degree_dichotomy, check_degree_dichotomy_colors};
pub use forklike::{find_forklike, ForkKind, ForkLike};
pub use kierstead::KiersteadPath;
pub use multifan::{alpha_decompose, grow_multifan, AlphaDecomposition, Multifan};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Inapplicable { reason: String },
    Violation { detail: String },
}

impl Verdict {
    pub fn inapplicable(reason: impl Into<String>) -> Self {
        Self::Inapplicable { reason: reason.into() }
    }

    pub fn violation(detail: impl Into<String>) -> Self {
        Self::Violation { detail: detail.into() }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self, Self::Ok)
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Self::Violation { .. })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("not a multifan: {0}")]
    NotAMultifan(String),
    #[error("not a Kierstead path: {0}")]
    NotAKiersteadPath(String),
    #[error("malformed {kind}: {reason}")]
    Malformed { kind: &'static str, reason: String },
    #[error("the vertex set is not elementary, so colors cannot be assigned to unique inducing colors")]
    NotElementary,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Adjacency bound at a critical edge `xy`: `x` has at least `Δ - d(y) + 1` neighbors of
/// maximum degree other than `y`.
pub fn check_val(g: &Graph, x: usize, y: usize) -> Result<Verdict, StructureError> {
    g.require_edge(x, y).map_err(ColoringError::from)?;
    let delta = g.max_degree();
    let full = g
        .neighbors(x)
        .iter()
        .filter(|&&z| z != y && g.degree(z) == delta)
        .count();
    let need = delta + 1 - g.degree(y);
    Ok(if full >= need {
        Verdict::Ok
    } else {
        Verdict::violation(format!(
            "{x} has {full} neighbors of degree {delta} besides {y}, needs {need}"
        ))
    })
}
