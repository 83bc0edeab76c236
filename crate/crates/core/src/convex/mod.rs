//! Convexity relative to an avoided hyperplane.
//!
//! A body lives in the affine chart of its own avoided hyperplane `H`:
//! an interval on P¹, a counterclockwise polygon on P². Cross-body
//! predicates lift vertices to R^{n+1}, push them through the map, and
//! read them off in the target body's chart.

mod hilbert;
pub mod hull;

use alloc::vec::Vec;

use crate::linalg;
use crate::projcore::{orthonormal_complement, Dim, Hyperplane, ProjMap, ProjPoint};
use crate::{Error, Result};

pub use hilbert::{contraction_factor, contraction_margin, hilbert_distance, chain_inequality};
pub use hull::Vec2;

/// Minimum chart gap that counts as strict containment.
pub const MARGIN_FLOOR: f64 = 1e-9;
/// Points closer than this to the avoided hyperplane (in `|<p,u>|`) have no
/// chart coordinates.
pub const POLE_TOL: f64 = 1e-9;
/// Number of points on the small circle used to inflate polygon vertices.
pub const INFLATE_SIDES: usize = 16;

/// The affine chart `P^n \ H -> {x : <x,u> = 1}` with an orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    avoided: Hyperplane,
    u: [f64; 3],
    e: [[f64; 3]; 2],
}

impl Chart {
    pub fn new(avoided: Hyperplane) -> Chart {
        let u = *avoided.normal().raw();
        let e = match avoided.dim() {
            Dim::One => [[u[1], -u[0], 0.0], [0.0; 3]],
            Dim::Two => {
                let (e1, e2) = orthonormal_complement(&u);
                [e1, e2]
            }
        };
        Chart { avoided, u, e }
    }

    pub fn avoided(&self) -> &Hyperplane {
        &self.avoided
    }

    pub fn dim(&self) -> Dim {
        self.avoided.dim()
    }

    /// Chart coordinates of a raw homogeneous vector (second entry 0 on P¹).
    pub fn coords_raw(&self, v: &[f64; 3]) -> Result<Vec2> {
        let n = linalg::norm(v);
        let h = linalg::dot(v, &self.u);
        if !(n > 0.0) || !((h / n).abs() > POLE_TOL) {
            return Err(Error::OnAvoidedHyperplane);
        }
        let w0 = linalg::dot(v, &self.e[0]) / h;
        let w1 = match self.dim() {
            Dim::One => 0.0,
            Dim::Two => linalg::dot(v, &self.e[1]) / h,
        };
        Ok([w0, w1])
    }

    pub fn to_chart(&self, p: &ProjPoint) -> Result<Vec2> {
        self.dim().check(p.dim())?;
        self.coords_raw(p.raw())
    }

    /// The lift `u + w₀e₁ + w₁e₂`, a representative with `<x,u> = 1`.
    pub fn lift(&self, w: Vec2) -> [f64; 3] {
        let mut x = self.u;
        for (k, wk) in w.iter().enumerate().take(self.dim().n()) {
            for i in 0..3 {
                x[i] += wk * self.e[k][i];
            }
        }
        x
    }

    pub fn from_chart(&self, w: Vec2) -> ProjPoint {
        ProjPoint::from_array(self.dim(), self.lift(w)).expect("lift has <x,u> = 1")
    }
}

pub fn chart_to(chart: &Chart, p: &ProjPoint) -> Result<Vec2> {
    chart.to_chart(p)
}

pub fn chart_from(chart: &Chart, w: Vec2) -> ProjPoint {
    chart.from_chart(w)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Interval { lo: f64, hi: f64 },
    /// Counterclockwise, strictly convex; fewer than three vertices means
    /// the body is degenerate.
    Polygon(Vec<Vec2>),
}

/// Convex body with respect to its avoided hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    chart: Chart,
    shape: Shape,
}

/// Chart coordinates beyond this size sit within `POLE_TOL` of the pole.
const CHART_LIMIT: f64 = 1.0 / POLE_TOL;

fn check_finite(w: Vec2) -> Result<()> {
    if w[0].abs() < CHART_LIMIT && w[1].abs() < CHART_LIMIT {
        Ok(())
    } else {
        Err(Error::OnAvoidedHyperplane)
    }
}

impl ConvexBody {
    pub fn interval(avoided: Hyperplane, lo: f64, hi: f64) -> Result<ConvexBody> {
        if avoided.dim() != Dim::One {
            return Err(Error::DimensionMismatch { expected: 1, found: avoided.dim().n() });
        }
        check_finite([lo, 0.0])?;
        check_finite([hi, 0.0])?;
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        Ok(ConvexBody { chart: Chart::new(avoided), shape: Shape::Interval { lo, hi } })
    }

    /// Convex hull of chart points, in the chart of `avoided`.
    pub fn polygon(avoided: Hyperplane, points: &[Vec2]) -> Result<ConvexBody> {
        if avoided.dim() != Dim::Two {
            return Err(Error::DimensionMismatch { expected: 2, found: avoided.dim().n() });
        }
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for &w in points {
            check_finite(w)?;
        }
        Ok(ConvexBody { chart: Chart::new(avoided), shape: Shape::Polygon(hull::convex_hull(points)) })
    }

    /// Body with the given chart points as generators, in either dimension.
    pub fn from_chart_points(avoided: Hyperplane, points: &[Vec2]) -> Result<ConvexBody> {
        match avoided.dim() {
            Dim::One => {
                if points.is_empty() {
                    return Err(Error::EmptyInput);
                }
                let lo = points.iter().map(|w| w[0]).fold(f64::INFINITY, f64::min);
                let hi = points.iter().map(|w| w[0]).fold(f64::NEG_INFINITY, f64::max);
                ConvexBody::interval(avoided, lo, hi)
            }
            Dim::Two => ConvexBody::polygon(avoided, points),
        }
    }

    pub fn dim(&self) -> Dim {
        self.chart.dim()
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn avoided(&self) -> &Hyperplane {
        self.chart.avoided()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Chart vertices: the two endpoints of an interval (as `[x, 0]`) or the
    /// polygon vertices.
    pub fn vertices(&self) -> Vec<Vec2> {
        match &self.shape {
            Shape::Interval { lo, hi } => alloc::vec![[*lo, 0.0], [*hi, 0.0]],
            Shape::Polygon(v) => v.clone(),
        }
    }

    /// Lifted vertices, all with `<x,u> = 1`; the body is the projectivized
    /// cone they span.
    pub fn lifted_vertices(&self) -> Vec<[f64; 3]> {
        self.vertices().into_iter().map(|w| self.chart.lift(w)).collect()
    }

    pub fn vertex_points(&self) -> Vec<ProjPoint> {
        self.vertices().into_iter().map(|w| self.chart.from_chart(w)).collect()
    }

    /// Length or area in chart units.
    pub fn measure(&self) -> f64 {
        match &self.shape {
            Shape::Interval { lo, hi } => hi - lo,
            Shape::Polygon(v) => hull::polygon_area(v),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.measure() > 0.0)
    }

    pub fn diameter(&self) -> f64 {
        match &self.shape {
            Shape::Interval { lo, hi } => hi - lo,
            Shape::Polygon(v) => hull::diameter(v),
        }
    }

    /// Chart-space Minkowski inflation by `eps`; polygon vertices are
    /// replaced by small inscribed circles.
    pub fn inflate(&self, eps: f64) -> Result<ConvexBody> {
        match &self.shape {
            Shape::Interval { lo, hi } => ConvexBody::interval(self.chart.avoided, lo - eps, hi + eps),
            Shape::Polygon(v) => {
                if eps <= 0.0 {
                    return Ok(self.clone());
                }
                let mut pts = Vec::with_capacity(v.len() * INFLATE_SIDES);
                for w in v {
                    for k in 0..INFLATE_SIDES {
                        let t = 2.0 * core::f64::consts::PI * (k as f64) / (INFLATE_SIDES as f64);
                        pts.push([w[0] + eps * crate::math::cos(t), w[1] + eps * crate::math::sin(t)]);
                    }
                }
                ConvexBody::polygon(self.chart.avoided, &pts)
            }
        }
    }

    /// Signed depth of a chart point: distance to the boundary when inside,
    /// negative outside.
    pub fn margin_chart(&self, w: Vec2) -> f64 {
        match &self.shape {
            Shape::Interval { lo, hi } => (w[0] - lo).min(hi - w[0]),
            Shape::Polygon(v) => hull::polygon_margin(v, w),
        }
    }

    pub fn margin(&self, p: &ProjPoint) -> Result<f64> {
        Ok(self.margin_chart(self.chart.to_chart(p)?))
    }

    pub fn contains(&self, p: &ProjPoint, strict: bool) -> Result<bool> {
        let m = self.margin(p)?;
        Ok(if strict { m > 0.0 } else { m >= -1e-12 })
    }

    /// Chart coordinates, in `target`, of the images of this body's vertices
    /// under `f`. Fails if the image cone meets the target's hyperplane; in
    /// that case the image is not a body in the target chart.
    pub fn image_in(&self, f: &ProjMap, target: &Chart) -> Result<Vec<Vec2>> {
        self.dim().check(f.dim())?;
        self.dim().check(target.dim())?;
        let lifted = self.lifted_vertices();
        let verts: Vec<[f64; 3]> = lifted.iter().map(|v| f.apply_raw(v)).collect();
        // edge midpoints are redundant by linearity; kept as a cross-check
        let k = lifted.len();
        let edges = if k > 2 { k } else { k - 1 };
        let mids = (0..edges).map(|i| {
            let (a, b) = (&lifted[i], &lifted[(i + 1) % k]);
            f.apply_raw(&[0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])])
        });
        let mut sign = 0.0;
        for v in verts.iter().copied().chain(mids) {
            let h = linalg::dot(&v, &target.u) / linalg::norm(&v);
            if !(h.abs() > POLE_TOL) {
                return Err(Error::ImageMeetsAvoidedHyperplane);
            }
            let s = if h > 0.0 { 1.0 } else { -1.0 };
            if sign == 0.0 {
                sign = s;
            } else if s != sign {
                return Err(Error::ImageMeetsAvoidedHyperplane);
            }
        }
        verts.iter().map(|v| target.coords_raw(v)).collect()
    }

    /// `f(C)`, kept in the chart of `C`'s avoided hyperplane.
    pub fn push(&self, f: &ProjMap) -> Result<ConvexBody> {
        let pts = self.image_in(f, &self.chart)?;
        ConvexBody::from_chart_points(self.chart.avoided, &pts)
    }

    /// The same set expressed in another chart.
    pub fn rechart(&self, chart: &Chart) -> Result<ConvexBody> {
        let pts = self.image_in(&ProjMap::identity(self.dim()), chart)?;
        ConvexBody::from_chart_points(chart.avoided, &pts)
    }

    /// Chart-level separation from another body, evaluated in this body's
    /// chart or else in the other's. `None` when neither body lies in the
    /// other's chart.
    pub fn separation(&self, other: &ConvexBody) -> Option<f64> {
        let gap = |a: &ConvexBody, b: &ConvexBody| -> Option<f64> {
            let b = b.rechart(&a.chart).ok()?;
            match (&a.shape, &b.shape) {
                (Shape::Interval { lo: a0, hi: a1 }, Shape::Interval { lo: b0, hi: b1 }) => Some((b0 - a1).max(a0 - b1)),
                _ => Some(hull::separation_gap(&a.vertices(), &b.vertices())),
            }
        };
        gap(self, other).or_else(|| gap(other, self))
    }

    /// Convex combination of the vertices with the given nonnegative weights.
    pub fn point_from_weights(&self, weights: &[f64]) -> ProjPoint {
        let v = self.vertices();
        let mut w = [0.0; 2];
        let mut total = 0.0;
        for (vi, &t) in v.iter().zip(weights) {
            w[0] += t * vi[0];
            w[1] += t * vi[1];
            total += t;
        }
        if total > 0.0 {
            w = [w[0] / total, w[1] / total];
        } else {
            w = v[0];
        }
        self.chart.from_chart(w)
    }

    /// Boundary point at perimeter fraction `s ∈ [0,1)`; on P¹ the endpoint
    /// `lo` for `s < 1/2`, else `hi`.
    pub fn boundary_point(&self, s: f64) -> ProjPoint {
        match &self.shape {
            Shape::Interval { lo, hi } => self.chart.from_chart([if s < 0.5 { *lo } else { *hi }, 0.0]),
            Shape::Polygon(v) => {
                let n = v.len();
                let mut per = 0.0;
                for i in 0..n {
                    per += hull::dist(v[i], v[(i + 1) % n]);
                }
                let mut target = (s - crate::math::floor(s)) * per;
                for i in 0..n {
                    let a = v[i];
                    let b = v[(i + 1) % n];
                    let len = hull::dist(a, b);
                    if target <= len || i + 1 == n {
                        let t = if len > 0.0 { (target / len).min(1.0) } else { 0.0 };
                        return self.chart.from_chart([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
                    }
                    target -= len;
                }
                self.chart.from_chart(v[0])
            }
        }
    }
}

/// The closed segment from `x` to `y` that does not meet `H`.
pub fn segment_wrt(x: &ProjPoint, y: &ProjPoint, h: &Hyperplane) -> Result<ConvexBody> {
    let chart = Chart::new(*h);
    let a = chart.to_chart(x)?;
    let b = chart.to_chart(y)?;
    ConvexBody::from_chart_points(*h, &[a, b])
}

/// `conv_H(S)`: the ordinary hull of `S` in the chart of `H`.
pub fn conv_hull_wrt(points: &[ProjPoint], h: &Hyperplane) -> Result<ConvexBody> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let chart = Chart::new(*h);
    let mut w = Vec::with_capacity(points.len());
    for p in points {
        w.push(chart.to_chart(p)?);
    }
    ConvexBody::from_chart_points(*h, &w)
}

pub fn push_body(f: &ProjMap, c: &ConvexBody) -> Result<ConvexBody> {
    c.push(f)
}

/// Smallest depth of `f(C_in)` inside `C_out`, in `C_out`'s chart. Negative
/// when some image vertex falls outside.
pub fn containment_margin(f: &ProjMap, c_in: &ConvexBody, c_out: &ConvexBody) -> Result<f64> {
    let pts = c_in.image_in(f, &c_out.chart)?;
    Ok(pts.iter().map(|&w| c_out.margin_chart(w)).fold(f64::INFINITY, f64::min))
}

/// `C_in ⊂ int(C_out)` with depth at least [`MARGIN_FLOOR`].
pub fn body_subset_interior(c_in: &ConvexBody, c_out: &ConvexBody) -> bool {
    match containment_margin(&ProjMap::identity(c_in.dim()), c_in, c_out) {
        Ok(m) => m >= MARGIN_FLOOR,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn h_inf() -> Hyperplane {
        Hyperplane::point_p1(&ProjPoint::p1_infinity())
    }

    fn h_zero() -> Hyperplane {
        Hyperplane::point_p1(&ProjPoint::p1(0.0))
    }

    fn f1() -> ProjMap {
        ProjMap::from_rows2([[4.0, 0.0], [1.0, 1.0]]).unwrap()
    }

    fn f2() -> ProjMap {
        ProjMap::from_rows2([[-4.0, 0.0], [1.0, 1.0]]).unwrap()
    }

    #[test]
    fn standard_chart_reads_affine_value() {
        let c = Chart::new(Hyperplane::from_normal_coords(&[0.0, 1.0]).unwrap());
        assert!((c.to_chart(&ProjPoint::p1(4.5)).unwrap()[0] - 4.5).abs() < 1e-14);
        assert_eq!(c.to_chart(&ProjPoint::p1_infinity()), Err(Error::OnAvoidedHyperplane));
        assert!(c.from_chart([4.5, 0.0]).approx_eq(&ProjPoint::p1(4.5), 1e-15));
    }

    #[test]
    fn segments_avoid_the_hyperplane() {
        let s = segment_wrt(&ProjPoint::p1(-9.0), &ProjPoint::p1(-2.0), &h_zero()).unwrap();
        assert!(s.contains(&ProjPoint::p1(-5.0), true).unwrap());
        assert!(!s.contains(&ProjPoint::p1(1.0), false).unwrap());
        // -1 to 1 avoiding 0 runs through infinity
        let s = segment_wrt(&ProjPoint::p1(-1.0), &ProjPoint::p1(1.0), &h_zero()).unwrap();
        assert!(s.contains(&ProjPoint::p1_infinity(), true).unwrap());
        assert!(s.contains(&ProjPoint::p1(5.0), true).unwrap());
        assert!(!s.contains(&ProjPoint::p1(0.5), false).unwrap());
        let s = segment_wrt(&ProjPoint::p1(3.0), &ProjPoint::p1(3.0), &h_zero()).unwrap();
        assert!(s.is_degenerate());
    }

    #[test]
    fn hulls() {
        let pts = [ProjPoint::p1(2.0), ProjPoint::p1(9.0), ProjPoint::p1(4.0)];
        let c = conv_hull_wrt(&pts, &h_zero()).unwrap();
        let inf = conv_hull_wrt(&pts, &h_inf()).unwrap();
        assert_eq!(inf.shape(), &Shape::Interval { lo: 2.0, hi: 9.0 });
        assert!(c.contains(&ProjPoint::p1(5.0), true).unwrap());
        assert!(conv_hull_wrt(&pts[..1], &h_inf()).unwrap().is_degenerate());
        assert_eq!(conv_hull_wrt(&[], &h_inf()), Err(Error::EmptyInput));
        let h = Hyperplane::from_normal_coords(&[0.0, 0.0, 1.0]).unwrap();
        let chart = Chart::new(h);
        let tri = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let pts: Vec<ProjPoint> = tri.iter().map(|&w| chart.from_chart(w)).collect();
        let body = conv_hull_wrt(&pts, &h).unwrap();
        assert_eq!(body.vertices().len(), 3);
        for b in tri.iter() {
            assert!(body.vertices().iter().any(|a| hull::dist(*a, *b) < 1e-12));
        }
    }

    #[test]
    fn mirror_pair_images() {
        let c1 = ConvexBody::interval(h_inf(), -9.0, -2.0).unwrap();
        let c2 = ConvexBody::interval(h_inf(), 2.0, 9.0).unwrap();
        let img = c1.push(&f1()).unwrap();
        let Shape::Interval { lo, hi } = *img.shape() else { panic!() };
        assert!((lo - 4.5).abs() < 1e-12 && (hi - 8.0).abs() < 1e-12);
        let img = c2.push(&f2()).unwrap();
        let Shape::Interval { lo, hi } = *img.shape() else { panic!() };
        assert!((lo + 3.6).abs() < 1e-12 && (hi + 8.0 / 3.0).abs() < 1e-12);
        assert!(c1.push(&ProjMap::identity(Dim::One)).unwrap().vertices().iter().zip(c1.vertices()).all(|(a, b)| hull::dist(*a, b) < 1e-12));
        assert!((containment_margin(&f1(), &c1, &c2).unwrap() - 1.0).abs() < 1e-12);
        assert!(body_subset_interior(&img, &ConvexBody::interval(h_inf(), -9.0, -2.0).unwrap()));
        assert!(!body_subset_interior(&c2, &c2));
    }

    #[test]
    fn image_through_the_pole_is_rejected() {
        // [-1, 1] contains 0, which f(x) = 1/x sends to the pole
        let c = ConvexBody::interval(h_inf(), -1.0, 1.0).unwrap();
        let inv = ProjMap::from_rows2([[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(c.push(&inv), Err(Error::ImageMeetsAvoidedHyperplane));
    }

    #[test]
    fn separation_across_charts() {
        let a = ConvexBody::interval(h_inf(), -9.0, -2.0).unwrap();
        let b = ConvexBody::interval(h_zero(), -0.5, -0.1).unwrap(); // x in [2, 10]
        let gap = a.separation(&b).unwrap();
        assert!(gap > 0.0);
        let c = ConvexBody::interval(h_inf(), 5.0, 20.0).unwrap();
        assert!(b.separation(&c).unwrap() < 0.0);
    }

    #[test]
    fn polygon_inflation_contains_original() {
        let h = Hyperplane::from_normal_coords(&[1.0, 0.0, 0.0]).unwrap();
        let body = ConvexBody::polygon(h, &vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        let big = body.inflate(0.1).unwrap();
        assert!(body_subset_interior(&body, &big));
        let m = containment_margin(&ProjMap::identity(Dim::Two), &body, &big).unwrap();
        assert!(m > 0.09 && m <= 0.1 + 1e-12);
        let pt = ConvexBody::polygon(h, &[[0.3, 0.3]]).unwrap();
        assert!(pt.is_degenerate());
        assert!(!pt.inflate(0.01).unwrap().is_degenerate());
    }
}
