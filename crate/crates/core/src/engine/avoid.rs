//! Search for a hyperplane that a point cloud avoids.

use alloc::vec::Vec;

use super::cloud::PointCloud;
use crate::math;
use crate::projcore::{orthonormal_complement, Dim, Hyperplane, ProjPoint};

/// Smallest clearance accepted as avoiding.
pub const MIN_CLEARANCE: f64 = 1e-4;
const COARSE_P1: usize = 1440;
const COARSE_P2: usize = 6000;
const COARSE_SUBSAMPLE: usize = 2000;
const CANDIDATES: usize = 6;
const REFINE_ROUNDS: usize = 3;

/// `min_{a∈A} |<h, a>|`: the sine of the angle from `H_h` to the nearest point.
pub fn clearance(h: &[f64; 3], cloud: &PointCloud) -> f64 {
    let mut m = f64::INFINITY;
    for p in cloud.points() {
        let c = p.raw();
        let d = (h[0] * c[0] + h[1] * c[1] + h[2] * c[2]).abs();
        if d < m {
            m = d;
        }
    }
    m
}

fn coarse_normals(dim: Dim) -> Vec<[f64; 3]> {
    match dim {
        Dim::One => (0..COARSE_P1)
            .map(|k| {
                let t = core::f64::consts::PI * (k as f64) / (COARSE_P1 as f64);
                [math::cos(t), math::sin(t), 0.0]
            })
            .collect(),
        Dim::Two => {
            // Fibonacci points on the upper hemisphere
            let golden = core::f64::consts::PI * (3.0 - math::sqrt(5.0));
            (0..COARSE_P2)
                .map(|k| {
                    let z = 1.0 - (k as f64 + 0.5) / (COARSE_P2 as f64);
                    let r = math::sqrt((1.0 - z * z).max(0.0));
                    let t = golden * (k as f64);
                    [r * math::cos(t), r * math::sin(t), z]
                })
                .collect()
        }
    }
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = math::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    [v[0] / n, v[1] / n, v[2] / n]
}

fn neighbours(dim: Dim, h: &[f64; 3], step: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    match dim {
        Dim::One => {
            let t = math::atan2(h[1], h[0]);
            for j in -4..=4 {
                let s = t + step * (j as f64) / 4.0;
                out.push([math::cos(s), math::sin(s), 0.0]);
            }
        }
        Dim::Two => {
            let (e1, e2) = orthonormal_complement(h);
            for a in -2..=2 {
                for b in -2..=2 {
                    let (x, y) = (step * a as f64 / 2.0, step * b as f64 / 2.0);
                    out.push(unit([h[0] + x * e1[0] + y * e2[0], h[1] + x * e1[1] + y * e2[1], h[2] + x * e1[2] + y * e2[2]]));
                }
            }
        }
    }
    out
}

/// The hyperplane of largest clearance found by a coarse grid of normals
/// on a subsample followed by three local refinements on the full cloud.
/// Returns the hyperplane and its clearance; `None` for an empty cloud.
pub fn best_avoided_hyperplane(a: &PointCloud) -> Option<(Hyperplane, f64)> {
    if a.is_empty() {
        return None;
    }
    let dim = a.dim();
    let sub = a.subsample(COARSE_SUBSAMPLE);
    let mut scored: Vec<(f64, [f64; 3])> = coarse_normals(dim).into_iter().map(|h| (clearance(&h, &sub), h)).collect();
    scored.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut step = match dim {
        Dim::One => core::f64::consts::PI / COARSE_P1 as f64,
        Dim::Two => math::sqrt(2.0 * core::f64::consts::PI / COARSE_P2 as f64),
    };
    let mut cands: Vec<(f64, [f64; 3])> = scored.into_iter().take(CANDIDATES).map(|(_, h)| (clearance(&h, a), h)).collect();
    for _ in 0..REFINE_ROUNDS {
        for c in cands.iter_mut() {
            for h in neighbours(dim, &c.1, step) {
                let v = clearance(&h, a);
                if v > c.0 {
                    *c = (v, h);
                }
            }
        }
        step /= 3.0;
    }
    let (best, h) = cands.into_iter().fold((f64::NEG_INFINITY, [0.0; 3]), |acc, c| if c.0 > acc.0 { c } else { acc });
    let normal = ProjPoint::from_array(dim, h).ok()?;
    Some((Hyperplane::from_normal(normal), best))
}

/// A hyperplane avoided by the cloud with clearance above [`MIN_CLEARANCE`].
pub fn find_avoided_hyperplane(a: &PointCloud) -> Option<Hyperplane> {
    best_avoided_hyperplane(a).filter(|(_, c)| *c > MIN_CLEARANCE).map(|(h, _)| h)
}
