//! Deterministic attractor estimation by iterating `B ↦ F(B)`.

use alloc::vec::Vec;

use super::cloud::{PointCloud, DEDUP_RESOLUTION};
use super::hausdorff::hausdorff;
use super::ifs::Ifs;
use crate::projcore::{Dim, Hyperplane, ProjMap, ProjPoint};
use crate::{Error, Result};

/// A finite family of maps acting on points of P^n.
pub trait Action {
    fn dim(&self) -> Dim;
    fn count(&self) -> usize;
    fn act(&self, m: usize, p: &ProjPoint) -> ProjPoint;
}

impl Action for Ifs {
    fn dim(&self) -> Dim {
        Ifs::dim(self)
    }

    fn count(&self) -> usize {
        self.len()
    }

    fn act(&self, m: usize, p: &ProjPoint) -> ProjPoint {
        self.apply(m, p)
    }
}

/// `f^{-1}` acting on hyperplanes, written on their normals. Each hyperplane
/// is moved through a spanning set of its points, not through `L^t`.
#[derive(Debug, Clone)]
pub struct InverseHyperplaneAction {
    inverses: Vec<ProjMap>,
    dim: Dim,
}

impl InverseHyperplaneAction {
    pub fn new(f: &Ifs) -> InverseHyperplaneAction {
        InverseHyperplaneAction { inverses: f.maps().iter().map(ProjMap::inverse).collect(), dim: f.dim() }
    }
}

impl Action for InverseHyperplaneAction {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn count(&self) -> usize {
        self.inverses.len()
    }

    fn act(&self, m: usize, p: &ProjPoint) -> ProjPoint {
        *self.inverses[m].map_hyperplane_pointwise(&Hyperplane::from_normal(*p)).normal()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractorParams {
    /// Hausdorff step size that counts as settled.
    pub tol: f64,
    pub max_iter: usize,
    /// Largest cloud kept between steps.
    pub cap: usize,
    /// Total number of point images allowed over the whole run.
    pub max_work: usize,
    /// Consecutive settled steps needed.
    pub stable_steps: usize,
}

impl Default for AttractorParams {
    fn default() -> Self {
        AttractorParams { tol: 1e-6, max_iter: 10_000, cap: 200_000, max_work: 20_000_000, stable_steps: 3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorEstimate {
    pub cloud: PointCloud,
    pub converged: bool,
    pub iterations: usize,
    pub last_delta: f64,
    /// Coarsest deduplication resolution that was needed.
    pub resolution: f64,
    /// Total point images computed.
    pub work: usize,
}

/// Applies every map of the action to every point.
pub fn image_of<A: Action + ?Sized>(action: &A, b: &PointCloud) -> PointCloud {
    let mut out = Vec::with_capacity(action.count() * b.len());
    for m in 0..action.count() {
        out.extend(b.points().iter().map(|p| action.act(m, p)));
    }
    PointCloud::from_points_unchecked(action.dim(), out)
}

/// One step `B ↦ dedup(F(B))`, coarsening the deduplication grid until the
/// cloud fits under `cap`. Returns the new cloud and the resolution used.
pub fn step<A: Action + ?Sized>(action: &A, b: &PointCloud, params: &AttractorParams) -> Result<(PointCloud, f64)> {
    let raw = image_of(action, b);
    thin(raw, params)
}

/// Deduplicates at the finest resolution that keeps the cloud under the cap.
pub fn thin(raw: PointCloud, params: &AttractorParams) -> Result<(PointCloud, f64)> {
    let mut res = DEDUP_RESOLUTION;
    let mut next = raw.dedup(res);
    while next.len() > params.cap {
        res *= 2.0;
        if res > params.tol / 4.0 {
            return Err(Error::ResourceCap { points: next.len(), resolution: res });
        }
        next = next.dedup(res);
    }
    Ok((next, res))
}

/// Iterates `B_{k+1} = dedup(F(B_k))` from `init` until `stable_steps`
/// consecutive Hausdorff steps fall below `tol`, or the iteration or work
/// budget runs out (then `converged` is false).
pub fn attractor_estimate<A: Action + ?Sized>(action: &A, params: &AttractorParams, init: &PointCloud) -> Result<AttractorEstimate> {
    attractor_estimate_with(action, params, init, |a, b| hausdorff(a, b), |a, b, p| step(a, b, p))
}

/// Same as [`attractor_estimate`] with caller-supplied step and distance;
/// used to plug in parallel kernels that give identical results.
pub fn attractor_estimate_with<A, H, S>(action: &A, params: &AttractorParams, init: &PointCloud, dist: H, stepper: S) -> Result<AttractorEstimate>
where
    A: Action + ?Sized,
    H: Fn(&PointCloud, &PointCloud) -> Result<f64>,
    S: Fn(&A, &PointCloud, &AttractorParams) -> Result<(PointCloud, f64)>,
{
    if init.is_empty() {
        return Err(Error::EmptyCloud);
    }
    action.dim().check(init.dim())?;
    let (mut b, mut resolution) = thin(init.clone(), params)?;
    let mut stable = 0;
    let mut work = 0;
    let mut last_delta = f64::INFINITY;
    for k in 1..=params.max_iter {
        work += action.count() * b.len();
        let (next, res) = stepper(action, &b, params)?;
        resolution = resolution.max(res);
        last_delta = dist(&b, &next)?;
        b = next;
        if last_delta < params.tol {
            stable += 1;
            if stable >= params.stable_steps {
                return Ok(AttractorEstimate { cloud: b, converged: true, iterations: k, last_delta, resolution, work });
            }
        } else {
            stable = 0;
        }
        if work >= params.max_work {
            return Ok(AttractorEstimate { cloud: b, converged: false, iterations: k, last_delta, resolution, work });
        }
    }
    Ok(AttractorEstimate { cloud: b, converged: false, iterations: params.max_iter, last_delta, resolution, work })
}
