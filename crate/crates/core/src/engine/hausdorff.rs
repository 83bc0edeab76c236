use super::cloud::PointCloud;
use super::kdtree::NearestIndex;
use crate::projcore::round_distance_unchecked;
use crate::{Error, Result};

/// Clouds at most this large on both sides are compared by brute force.
pub const BRUTE_FORCE_LIMIT: usize = 4096;

/// `sup_{a∈A} inf_{b∈B} d_P(a, b)`.
pub fn directed_hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    a.dim().check(b.dim())?;
    if a.len() <= BRUTE_FORCE_LIMIT && b.len() <= BRUTE_FORCE_LIMIT {
        let mut worst: f64 = 0.0;
        for p in a.points() {
            let near = b.points().iter().map(|q| round_distance_unchecked(p, q)).fold(f64::INFINITY, f64::min);
            worst = worst.max(near);
        }
        return Ok(worst);
    }
    let index = NearestIndex::new(b.points());
    Ok(a.points().iter().map(|p| index.nearest_distance(p)).fold(0.0, f64::max))
}

/// Hausdorff distance in the round metric.
pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}
