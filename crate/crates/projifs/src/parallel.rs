//! Rayon versions of the heavy kernels. Each computes exactly what its
//! sequential counterpart does, in the same order, so results do not depend
//! on the number of workers.

use projifs_core::basin::{basin_from_exclusion, BasinMask, LINE_THICKNESS_CELLS};
use projifs_core::duality::HyperplaneCloud;
use projifs_core::engine::{
    attractor_estimate_with, thin, Action, AttractorEstimate, AttractorParams, NearestIndex, PointCloud, BRUTE_FORCE_LIMIT,
};
use projifs_core::grid::Grid;
use projifs_core::render::{RasterImage, RenderPlan, Scene};
use projifs_core::{Error, Result};
use rayon::prelude::*;

pub fn image_of<A: Action + Sync + ?Sized>(action: &A, b: &PointCloud) -> Result<PointCloud> {
    let mut out = Vec::with_capacity(action.count() * b.len());
    for m in 0..action.count() {
        out.par_extend(b.points().par_iter().map(|p| action.act(m, p)));
    }
    if out.is_empty() {
        return Ok(PointCloud::empty(action.dim()));
    }
    PointCloud::new(action.dim(), out)
}

pub fn step<A: Action + Sync + ?Sized>(action: &A, b: &PointCloud, params: &AttractorParams) -> Result<(PointCloud, f64)> {
    thin(image_of(action, b)?, params)
}

pub fn directed_hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim().n(), found: b.dim().n() });
    }
    // max is exact, so the reduction order does not matter
    if a.len() <= BRUTE_FORCE_LIMIT && b.len() <= BRUTE_FORCE_LIMIT {
        return Ok(a.points().par_iter().map(|p| b.distance_to(p).expect("nonempty")).reduce(|| 0.0, f64::max));
    }
    let index = NearestIndex::new(b.points());
    Ok(a.points().par_iter().map(|p| index.nearest_distance(p)).reduce(|| 0.0, f64::max))
}

pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

pub fn attractor_estimate<A: Action + Sync + ?Sized>(action: &A, params: &AttractorParams, init: &PointCloud) -> Result<AttractorEstimate> {
    attractor_estimate_with(action, params, init, hausdorff, step)
}

pub fn basin(repeller: &HyperplaneCloud, grid: Grid) -> Result<BasinMask> {
    if repeller.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let band = LINE_THICKNESS_CELLS * grid.cell_size();
    let excluded: Vec<bool> = grid.cells().par_iter().map(|c| c.as_ref().map_or(true, |p| repeller.within(p, band))).collect();
    basin_from_exclusion(grid, band, &excluded)
}

pub fn render(scene: Scene<'_>, size: usize) -> Result<RasterImage> {
    let plan = RenderPlan::new(scene, size)?;
    let mut pixels = vec![[0u8; 4]; plan.width * plan.height];
    let mut layers = vec![0u8; plan.width * plan.height];
    pixels
        .par_chunks_mut(plan.width)
        .zip(layers.par_chunks_mut(plan.width))
        .enumerate()
        .for_each(|(j, (row, lrow))| plan.render_row(j, row, lrow));
    Ok(plan.finish(pixels, layers))
}
