//! Planar convex hulls and polygon predicates on chart coordinates.

use alloc::vec::Vec;

use crate::math;

pub type Vec2 = [f64; 2];

#[inline]
pub(crate) fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub(crate) fn cross(o: Vec2, a: Vec2, b: Vec2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

#[inline]
pub(crate) fn dist(a: Vec2, b: Vec2) -> f64 {
    math::hypot(a[0] - b[0], a[1] - b[1])
}

/// Monotone chain. Returns the strictly convex hull in counterclockwise
/// order; collinear and duplicate points are dropped. One or two points
/// come back as they are (after deduplication).
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.iter().copied().filter(|p| p[0].is_finite() && p[1].is_finite()).collect();
    pts.sort_unstable_by(|p, q| p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1])));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(pts.len() + 1);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        // all collinear: keep the two extremes
        hull.truncate(2);
    }
    hull
}

pub fn polygon_area(poly: &[Vec2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut a = 0.0;
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    a / 2.0
}

fn segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = sub(b, a);
    let len2 = d[0] * d[0] + d[1] * d[1];
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * d[0], a[1] + t * d[1]])
}

/// Signed depth of `p` in a CCW convex polygon: the distance to the
/// boundary when inside, negative outside. For fewer than three vertices
/// this is minus the distance to the point or segment.
pub fn polygon_margin(poly: &[Vec2], p: Vec2) -> f64 {
    match poly.len() {
        0 => f64::NEG_INFINITY,
        1 => -dist(p, poly[0]),
        2 => -segment_distance(p, poly[0], poly[1]),
        n => {
            let mut m = f64::INFINITY;
            for i in 0..n {
                let a = poly[i];
                let b = poly[(i + 1) % n];
                let len = dist(a, b);
                m = m.min(cross(a, b, p) / len);
            }
            m
        }
    }
}

/// Half-plane form `n·x ≤ c` of each edge, with unit outward normal `n`.
pub(crate) fn edge_halfplanes(poly: &[Vec2]) -> Vec<(Vec2, f64)> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let d = sub(b, a);
        let len = math::hypot(d[0], d[1]);
        let nrm = [d[1] / len, -d[0] / len];
        out.push((nrm, nrm[0] * a[0] + nrm[1] * a[1]));
    }
    out
}

/// Separating-axis gap between two convex polygons (any vertex count).
/// Positive iff they are disjoint; a lower bound on their distance.
pub fn separation_gap(p: &[Vec2], q: &[Vec2]) -> f64 {
    let mut axes: Vec<Vec2> = Vec::new();
    for poly in [p, q] {
        let n = poly.len();
        if n >= 2 {
            for i in 0..n {
                let d = sub(poly[(i + 1) % n], poly[i]);
                let len = math::hypot(d[0], d[1]);
                if len > 0.0 {
                    axes.push([d[1] / len, -d[0] / len]);
                }
            }
        }
    }
    if p.len() == 1 && q.len() == 1 {
        return dist(p[0], q[0]);
    }
    // segment/point cases also need the axis joining closest features
    if p.len() <= 2 || q.len() <= 2 {
        for &a in p {
            for &b in q {
                let d = sub(b, a);
                let len = math::hypot(d[0], d[1]);
                if len > 0.0 {
                    axes.push([d[0] / len, d[1] / len]);
                }
            }
        }
    }
    let mut best = f64::NEG_INFINITY;
    for ax in axes {
        let proj = |poly: &[Vec2]| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in poly {
                let t = v[0] * ax[0] + v[1] * ax[1];
                lo = lo.min(t);
                hi = hi.max(t);
            }
            (lo, hi)
        };
        let (a0, a1) = proj(p);
        let (b0, b1) = proj(q);
        best = best.max((b0 - a1).max(a0 - b1));
    }
    best
}

pub fn diameter(poly: &[Vec2]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..poly.len() {
        for j in i + 1..poly.len() {
            d = d.max(dist(poly[i], poly[j]));
        }
    }
    d
}
