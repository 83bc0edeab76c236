//! Contractivity certificates: disjoint convex bodies mapped strictly into
//! their union, the pair-graph metric between bodies, Hilbert metrics
//! inside them, and the combined metric in which every map contracts.

pub mod cluster;
mod graph;
pub(crate) mod search;
mod verify;

use alloc::vec::Vec;

use crate::convex::{hilbert_distance, ConvexBody};
use crate::projcore::{Hyperplane, ProjPoint};
use crate::{Error, Result};

pub use graph::{build_graph_metric, cycle_type_check, CycleWitness, GraphMetric};
pub use search::{default_start, find_certificate, find_certificate_from, seeded_attractor, SearchBudget};
pub use verify::{verify_certificate, Check, VerificationReport};

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Hyperplane avoided by every body; all bodies live in its chart.
    pub avoided: Hyperplane,
    pub bodies: Vec<ConvexBody>,
    /// Extra inflation giving the bodies `Ĉ_i` that carry the Hilbert metrics.
    pub hat_eps: f64,
    pub hat_bodies: Vec<ConvexBody>,
    /// `edge_map[m][i]`: the body that map `m` sends body `i` into.
    pub edge_map: Vec<Vec<usize>>,
    /// Chart margin of `f_m(Ĉ_i)` inside `Ĉ_{edge_map[m][i]}`.
    pub betas: Vec<Vec<f64>>,
    /// Hilbert contraction bound of each edge.
    pub factors: Vec<Vec<f64>>,
    pub alpha: f64,
    pub graph: GraphMetric,
    /// Normalizer making every within-body distance at most 1.
    pub j_scale: f64,
    /// Clustering level and inflation the search settled on.
    pub level: usize,
    pub eps: f64,
}

impl Certificate {
    /// `max(α, s, 1/2)`, the contraction factor of the combined metric.
    pub fn lambda_star(&self) -> f64 {
        self.alpha.max(self.graph.s).max(0.5)
    }

    /// Index of the body containing `p` (closed), if any.
    pub fn body_of(&self, p: &ProjPoint) -> Option<usize> {
        self.bodies.iter().position(|b| b.contains(p, false).unwrap_or(false))
    }
}

/// Hilbert distance in `Ĉ_i` over `J` within a body, the graph metric
/// between different bodies.
pub fn combined_metric(cert: &Certificate, x: &ProjPoint, y: &ProjPoint) -> Result<f64> {
    let i = cert.body_of(x).ok_or(Error::OutsideCertificate)?;
    let j = cert.body_of(y).ok_or(Error::OutsideCertificate)?;
    if i != j {
        return Ok(cert.graph.get(i, j));
    }
    Ok(hilbert_distance(&cert.hat_bodies[i], x, y)? / cert.j_scale)
}
