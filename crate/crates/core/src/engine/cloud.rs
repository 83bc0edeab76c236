use alloc::vec::Vec;

use crate::math;
use crate::projcore::{Dim, ProjPoint};
use crate::{Error, Result};

/// Default deduplication resolution.
pub const DEDUP_RESOLUTION: f64 = 1e-7;

/// A finite set of points of P^n standing in for a compact set.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: Dim,
    points: Vec<ProjPoint>,
}

impl PointCloud {
    pub fn new(dim: Dim, points: Vec<ProjPoint>) -> Result<PointCloud> {
        for p in &points {
            dim.check(p.dim())?;
        }
        Ok(PointCloud { dim, points })
    }

    pub(crate) fn from_points_unchecked(dim: Dim, points: Vec<ProjPoint>) -> PointCloud {
        PointCloud { dim, points }
    }

    pub fn empty(dim: Dim) -> PointCloud {
        PointCloud { dim, points: Vec::new() }
    }

    pub fn singleton(p: ProjPoint) -> PointCloud {
        PointCloud { dim: p.dim(), points: alloc::vec![p] }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<ProjPoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn extend(&mut self, other: &PointCloud) {
        self.points.extend_from_slice(&other.points);
    }

    /// Keeps one point per grid cell of side `resolution` in coordinate
    /// space, chosen as the first in input order. The output is sorted by
    /// cell, so it does not depend on input order beyond that choice.
    pub fn dedup(&self, resolution: f64) -> PointCloud {
        let mut keyed: Vec<([i64; 3], usize)> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let c = p.raw();
                let k = |x: f64| math::floor(x / resolution) as i64;
                ([k(c[0]), k(c[1]), k(c[2])], i)
            })
            .collect();
        keyed.sort_unstable();
        keyed.dedup_by_key(|e| e.0);
        PointCloud { dim: self.dim, points: keyed.into_iter().map(|(_, i)| self.points[i]).collect() }
    }

    /// Every `k`-th point, at most `cap` points; deterministic.
    pub fn subsample(&self, cap: usize) -> PointCloud {
        if self.points.len() <= cap || cap == 0 {
            return self.clone();
        }
        let step = self.points.len().div_ceil(cap);
        PointCloud { dim: self.dim, points: self.points.iter().step_by(step).copied().collect() }
    }

    /// Round distance from `p` to the nearest point of the cloud.
    pub fn distance_to(&self, p: &ProjPoint) -> Result<f64> {
        if self.points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        Ok(self.points.iter().map(|q| crate::projcore::round_distance_unchecked(p, q)).fold(f64::INFINITY, f64::min))
    }
}
