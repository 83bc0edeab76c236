//! Points and hyperplanes through `p ↦ p^⊥`: adjoint and inverse systems,
//! complementary duals and hyperplane repellers.

use alloc::vec::Vec;

use crate::certify::SearchBudget;
use crate::engine::{attractor_estimate, chaos_game, hausdorff, AttractorEstimate, Ifs, InverseHyperplaneAction, PointCloud};
use crate::grid::Grid;
use crate::projcore::{Dim, Hyperplane, ProjPoint};
use crate::{Error, Result};

/// Default clearance of the complementary dual.
pub const DUAL_CLEARANCE: f64 = 1e-3;

/// A set of hyperplanes stored by their normals, which live in the dual
/// space. Distances between hyperplanes are distances between normals.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneCloud {
    normals: PointCloud,
}

impl HyperplaneCloud {
    pub fn new(normals: PointCloud) -> HyperplaneCloud {
        HyperplaneCloud { normals }
    }

    pub fn from_hyperplanes(dim: Dim, hs: &[Hyperplane]) -> Result<HyperplaneCloud> {
        Ok(HyperplaneCloud { normals: PointCloud::new(dim, hs.iter().map(|h| *h.normal()).collect())? })
    }

    pub fn normals(&self) -> &PointCloud {
        &self.normals
    }

    pub fn dim(&self) -> Dim {
        self.normals.dim()
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = Hyperplane> + '_ {
        self.normals.points().iter().map(|n| Hyperplane::from_normal(*n))
    }

    /// `min_a |⟨p, a⟩|`: how far `p` is from every hyperplane of the cloud.
    pub fn clearance(&self, p: &ProjPoint) -> f64 {
        self.normals.points().iter().map(|a| a.dot(p).abs()).fold(f64::INFINITY, f64::min)
    }

    /// Whether `clearance(p) < band`, stopping at the first close hyperplane.
    pub fn within(&self, p: &ProjPoint, band: f64) -> bool {
        self.normals.points().iter().any(|a| a.dot(p).abs() < band)
    }

    pub fn dedup(&self, resolution: f64) -> HyperplaneCloud {
        HyperplaneCloud { normals: self.normals.dedup(resolution) }
    }
}

pub fn duality_map(p: &ProjPoint) -> Hyperplane {
    Hyperplane::from_normal(*p)
}

pub fn duality_map_cloud(a: &PointCloud) -> HyperplaneCloud {
    HyperplaneCloud { normals: a.clone() }
}

pub fn adjoint_ifs(f: &Ifs) -> Ifs {
    f.adjoint()
}

pub fn inverse_ifs(f: &Ifs) -> Ifs {
    f.inverse()
}

/// `X*` at a clearance: the points orthogonal to nothing in `X`.
#[derive(Debug, Clone, Copy)]
pub struct ComplementaryDual<'a> {
    x: &'a PointCloud,
    clearance: f64,
}

impl<'a> ComplementaryDual<'a> {
    pub fn new(x: &'a PointCloud, clearance: f64) -> ComplementaryDual<'a> {
        ComplementaryDual { x, clearance }
    }

    pub fn contains(&self, q: &ProjPoint) -> bool {
        self.x.points().iter().all(|x| x.dot(q).abs() > self.clearance)
    }

    /// The grid points that pass.
    pub fn sample(&self, grid: &Grid) -> PointCloud {
        let pts: Vec<ProjPoint> = grid.cells().iter().flatten().filter(|q| self.contains(q)).copied().collect();
        PointCloud::new(grid.dim(), pts).unwrap_or_else(|_| PointCloud::empty(grid.dim()))
    }
}

pub fn complementary_dual(x: &PointCloud, clearance: f64) -> ComplementaryDual<'_> {
    ComplementaryDual::new(x, clearance)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepellerEstimate {
    pub repeller: HyperplaneCloud,
    /// Attractor estimate of the adjoint system, whose points are the normals.
    pub adjoint: AttractorEstimate,
    /// Same set computed by iterating `f^{-1}` on hyperplanes.
    pub cross_check: AttractorEstimate,
    /// Hausdorff distance between the two.
    pub agreement: f64,
}

impl RepellerEstimate {
    pub fn converged(&self) -> bool {
        self.adjoint.converged && self.cross_check.converged
    }
}

/// The hyperplane repeller, as the dual of the adjoint system's attractor.
pub fn hyperplane_repeller(f: &Ifs, budget: &SearchBudget) -> Result<RepellerEstimate> {
    let adj = f.adjoint();
    let start = crate::certify::search::default_start(f.dim());
    let init = chaos_game(&adj, budget.seed, budget.chaos_points, budget.burn_in, &start)?.cloud;
    let est = attractor_estimate(&adj, &budget.attractor, &init)?;
    if !est.converged {
        return Err(Error::NonConvergence { iterations: est.iterations, delta: est.last_delta });
    }
    let cross = attractor_estimate(&InverseHyperplaneAction::new(f), &budget.attractor, &init)?;
    if !cross.converged {
        return Err(Error::NonConvergence { iterations: cross.iterations, delta: cross.last_delta });
    }
    let agreement = hausdorff(&est.cloud, &cross.cloud)?;
    Ok(RepellerEstimate { repeller: duality_map_cloud(&est.cloud), adjoint: est, cross_check: cross, agreement })
}
