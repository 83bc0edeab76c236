//! Points, hyperplanes and projective maps of P¹ and P², the round metric,
//! and the cross ratio.
//!
//! A [`ProjPoint`] is stored as its canonical representative: the unit vector
//! whose first nonzero coordinate is positive. Two points are the same
//! projective point iff their representatives agree, so equality can be
//! tested on coordinates up to rounding.

use crate::linalg::{self, Mat};
use crate::math;
use crate::{Error, Result};

/// Determinant floor on the unit-Frobenius representative of a matrix.
pub const DET_FLOOR: f64 = 1e-12;
/// Residual allowed when checking that four points lie on one line.
pub const COLLINEAR_TOL: f64 = 1e-9;

/// Projective dimension: P¹ or P².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn from_n(n: usize) -> Result<Dim> {
        match n {
            1 => Ok(Dim::One),
            2 => Ok(Dim::Two),
            _ => Err(Error::UnsupportedDimension(n + 1)),
        }
    }

    /// The `n` of Pⁿ.
    pub fn n(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }

    /// Length of homogeneous coordinate vectors, `n + 1`.
    pub fn len(self) -> usize {
        self.n() + 1
    }

    pub(crate) fn check(self, other: Dim) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n(), found: other.n() })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    c: [f64; 3],
    dim: Dim,
}

impl ProjPoint {
    /// Normalizes a raw homogeneous vector of length 2 or 3.
    pub fn new(raw: &[f64]) -> Result<ProjPoint> {
        let dim = match raw.len() {
            2 => Dim::One,
            3 => Dim::Two,
            k => return Err(Error::UnsupportedDimension(k)),
        };
        let mut c = [0.0; 3];
        c[..raw.len()].copy_from_slice(raw);
        ProjPoint::from_array(dim, c)
    }

    pub fn from_array(dim: Dim, mut c: [f64; 3]) -> Result<ProjPoint> {
        if dim == Dim::One {
            c[2] = 0.0;
        }
        let nrm = linalg::norm(&c);
        if !(nrm >= 1e-300) || !nrm.is_finite() {
            return Err(Error::ZeroVector);
        }
        let first = c.iter().copied().find(|x| *x != 0.0).unwrap_or(1.0);
        let sign = if first < 0.0 { -1.0 } else { 1.0 };
        // already unit length: leave the bits alone so normalization is idempotent
        let scale = if (nrm - 1.0).abs() <= 2.0 * f64::EPSILON { sign } else { sign / nrm };
        for x in c.iter_mut() {
            *x = *x * scale + 0.0;
        }
        Ok(ProjPoint { c, dim })
    }

    /// `(x, 1)` on P¹: the affine point `x` of the standard chart.
    pub fn p1(x: f64) -> ProjPoint {
        ProjPoint::new(&[x, 1.0]).expect("nonzero")
    }

    /// `(1, 0)` on P¹, the point at infinity of the standard chart.
    pub fn p1_infinity() -> ProjPoint {
        ProjPoint { c: [1.0, 0.0, 0.0], dim: Dim::One }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.c[..self.dim.len()]
    }

    pub(crate) fn raw(&self) -> &[f64; 3] {
        &self.c
    }

    pub fn dot(&self, other: &ProjPoint) -> f64 {
        linalg::dot(&self.c, &other.c)
    }

    /// `x₀ / x₁` on P¹, infinite at `(1, 0)`.
    pub fn affine1(&self) -> f64 {
        debug_assert_eq!(self.dim, Dim::One);
        if self.c[1] == 0.0 {
            f64::INFINITY
        } else {
            self.c[0] / self.c[1]
        }
    }

    /// Angle of the representative on P¹ = ℝ/πℤ, in `[0, π)`.
    pub fn angle1(&self) -> f64 {
        let mut t = math::atan2(self.c[1], self.c[0]);
        if t < 0.0 {
            t += core::f64::consts::PI;
        }
        if t >= core::f64::consts::PI {
            t -= core::f64::consts::PI;
        }
        t
    }

    pub fn from_angle1(theta: f64) -> ProjPoint {
        ProjPoint::new(&[math::cos(theta), math::sin(theta)]).expect("unit vector")
    }

    /// Projective equality at tolerance `tol` in the round metric.
    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        self.dim == other.dim && chord(self, other) <= tol
    }
}

/// Canonical representative of `φ(raw)`.
pub fn normalize(raw: &[f64]) -> Result<ProjPoint> {
    ProjPoint::new(raw)
}

fn chord(p: &ProjPoint, q: &ProjPoint) -> f64 {
    let (a, b) = (&p.c, &q.c);
    let mut dm = 0.0;
    let mut dp = 0.0;
    for i in 0..3 {
        dm += (a[i] - b[i]) * (a[i] - b[i]);
        dp += (a[i] + b[i]) * (a[i] + b[i]);
    }
    math::sqrt(dm.min(dp)).min(core::f64::consts::SQRT_2)
}

/// The round metric `sqrt(2 - 2|<p,q>|)` on unit representatives.
///
/// Evaluated as the shorter of the two chords `|p - q|`, `|p + q|`, which is
/// the same quantity without the cancellation near `p = q`.
pub fn round_distance(p: &ProjPoint, q: &ProjPoint) -> Result<f64> {
    p.dim.check(q.dim)?;
    Ok(chord(p, q))
}

pub(crate) fn round_distance_unchecked(p: &ProjPoint, q: &ProjPoint) -> f64 {
    chord(p, q)
}

/// A hyperplane `H_p = {q : <p, q> = 0}`, stored through its dual point `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperplane {
    normal: ProjPoint,
}

impl Hyperplane {
    pub fn from_normal(normal: ProjPoint) -> Hyperplane {
        Hyperplane { normal }
    }

    pub fn from_normal_coords(raw: &[f64]) -> Result<Hyperplane> {
        Ok(Hyperplane { normal: ProjPoint::new(raw)? })
    }

    /// On P¹ a hyperplane is a single point; this is the hyperplane `{p}`.
    pub fn point_p1(p: &ProjPoint) -> Hyperplane {
        debug_assert_eq!(p.dim, Dim::One);
        let c = p.raw();
        Hyperplane { normal: ProjPoint::new(&[-c[1], c[0]]).expect("unit") }
    }

    pub fn normal(&self) -> &ProjPoint {
        &self.normal
    }

    pub fn dim(&self) -> Dim {
        self.normal.dim
    }

    /// `|<normal, q>|`, the sine of the angle between `q` and the hyperplane.
    pub fn clearance(&self, q: &ProjPoint) -> f64 {
        self.normal.dot(q).abs()
    }

    pub fn contains(&self, q: &ProjPoint, tol: f64) -> bool {
        self.clearance(q) <= tol
    }

    /// On P¹, the single point making up the hyperplane.
    pub fn as_point_p1(&self) -> ProjPoint {
        let c = self.normal.raw();
        ProjPoint::new(&[-c[1], c[0]]).expect("unit")
    }

    /// An orthonormal basis of the hyperplane as points (`n` of them).
    pub fn spanning_points(&self) -> ([ProjPoint; 2], usize) {
        let n = self.normal.raw();
        match self.dim() {
            Dim::One => {
                let p = self.as_point_p1();
                ([p, p], 1)
            }
            Dim::Two => {
                let (e1, e2) = orthonormal_complement(n);
                (
                    [
                        ProjPoint::from_array(Dim::Two, e1).expect("unit"),
                        ProjPoint::from_array(Dim::Two, e2).expect("unit"),
                    ],
                    2,
                )
            }
        }
    }
}

/// Orthonormal pair spanning the plane orthogonal to the unit vector `u`.
pub(crate) fn orthonormal_complement(u: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let mut axis = 0;
    for i in 1..3 {
        if u[i].abs() < u[axis].abs() {
            axis = i;
        }
    }
    let mut a = [0.0; 3];
    a[axis] = 1.0;
    let e1 = linalg::cross(u, &a);
    let n1 = linalg::norm(&e1);
    let e1 = [e1[0] / n1, e1[1] / n1, e1[2] / n1];
    let e2 = linalg::cross(u, &e1);
    (e1, e2)
}

/// An element of PGL(n+1, ℝ).
///
/// The matrix is kept at unit Frobenius norm; the inverse is cached the
/// same way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjMap {
    m: Mat,
    inv: Mat,
    dim: Dim,
}

impl ProjMap {
    pub fn new(m: Mat) -> Result<ProjMap> {
        let dim = Dim::from_n(m.size() - 1)?;
        let f = m.frobenius();
        if !(f > 0.0) || !f.is_finite() {
            return Err(Error::SingularMatrix { det: 0.0 });
        }
        let m = m.scale(1.0 / f);
        let det = m.det();
        if !(det.abs() >= DET_FLOOR) {
            return Err(Error::SingularMatrix { det });
        }
        let inv = m.inverse().ok_or(Error::SingularMatrix { det })?;
        let inv = inv.scale(1.0 / inv.frobenius());
        Ok(ProjMap { m, inv, dim })
    }

    pub fn from_row_major(entries: &[f64]) -> Result<ProjMap> {
        let m = Mat::from_row_major(entries).ok_or(Error::UnsupportedDimension(entries.len()))?;
        ProjMap::new(m)
    }

    pub fn from_rows2(r: [[f64; 2]; 2]) -> Result<ProjMap> {
        ProjMap::new(Mat::from_rows2(r))
    }

    pub fn from_rows3(r: [[f64; 3]; 3]) -> Result<ProjMap> {
        ProjMap::new(Mat::from_rows3(r))
    }

    pub fn identity(dim: Dim) -> ProjMap {
        ProjMap::new(Mat::identity(dim.len())).expect("identity")
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inv
    }

    /// `L_f x` on a raw homogeneous vector.
    pub fn apply_raw(&self, x: &[f64; 3]) -> [f64; 3] {
        self.m.mul_vec(x)
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        debug_assert_eq!(p.dim, self.dim);
        let v = self.m.mul_vec(p.raw());
        ProjPoint::from_array(self.dim, v).expect("invertible map has no kernel")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ProjMap) -> ProjMap {
        ProjMap::new(self.m.mul(&inner.m)).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap { m: self.inv, inv: self.m, dim: self.dim }
    }

    /// `f^t`, represented by the transpose.
    pub fn adjoint(&self) -> ProjMap {
        let m = self.m.transpose();
        let inv = self.inv.transpose();
        ProjMap { m, inv, dim: self.dim }
    }

    /// Image of a hyperplane: normal `L_f^{-t} p`.
    pub fn map_hyperplane(&self, h: &Hyperplane) -> Hyperplane {
        let v = self.inv.transpose().mul_vec(h.normal.raw());
        Hyperplane::from_normal(ProjPoint::from_array(self.dim, v).expect("invertible"))
    }

    /// Image of a hyperplane computed by moving a spanning set of its points
    /// and taking the normal of the result.
    pub fn map_hyperplane_pointwise(&self, h: &Hyperplane) -> Hyperplane {
        let (pts, k) = h.spanning_points();
        match k {
            1 => Hyperplane::point_p1(&self.apply(&pts[0])),
            _ => {
                let a = self.m.mul_vec(pts[0].raw());
                let b = self.m.mul_vec(pts[1].raw());
                let n = linalg::cross(&a, &b);
                Hyperplane::from_normal(ProjPoint::from_array(Dim::Two, n).expect("independent images"))
            }
        }
    }

    /// Matrix equality up to a nonzero scalar, at absolute entry tolerance on
    /// the unit-Frobenius representatives.
    pub fn eq_up_to_scale(&self, other: &ProjMap, tol: f64) -> bool {
        self.dim == other.dim && self.m.residual_up_to_scale(&other.m).0 <= tol
    }
}

pub fn apply(f: &ProjMap, p: &ProjPoint) -> ProjPoint {
    f.apply(p)
}

pub fn map_hyperplane(f: &ProjMap, h: &Hyperplane) -> Hyperplane {
    f.map_hyperplane(h)
}

pub fn adjoint(f: &ProjMap) -> ProjMap {
    f.adjoint()
}

pub fn inverse(f: &ProjMap) -> ProjMap {
    f.inverse()
}

/// Cross ratio of four points given by homogeneous parameters on a line:
/// `[c,a][d,b] / ([c,b][d,a])` with `[u,v]` the 2×2 determinant.
pub fn cross_ratio_params(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Result<f64> {
    let det = |u: [f64; 2], v: [f64; 2]| u[0] * v[1] - v[0] * u[1];
    let scale = |u: [f64; 2]| math::hypot(u[0], u[1]);
    let (sa, sb, sc, sd) = (scale(a), scale(b), scale(c), scale(d));
    if sa == 0.0 || sb == 0.0 || sc == 0.0 || sd == 0.0 {
        return Err(Error::ZeroVector);
    }
    let cb = det(c, b) / (sc * sb);
    let da = det(d, a) / (sd * sa);
    if cb.abs() < 1e-12 || da.abs() < 1e-12 {
        return Err(Error::DegenerateConfiguration("cross ratio denominator vanishes"));
    }
    let ca = det(c, a) / (sc * sa);
    let db = det(d, b) / (sd * sb);
    Ok(ca * db / (cb * da))
}

/// Cross ratio `R(a, b, c, d)` of four collinear projective points.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<f64> {
    for p in [b, c, d] {
        a.dim.check(p.dim)?;
    }
    let params = |p: &ProjPoint| [p.c[0], p.c[1]];
    if a.dim == Dim::One {
        return cross_ratio_params(params(a), params(b), params(c), params(d));
    }
    // basis of the line: a, then the most independent of the rest
    let e1 = a.c;
    let mut best = None;
    let mut best_norm = 0.0;
    for p in [b, c, d] {
        let t = linalg::dot(&p.c, &e1);
        let r = [p.c[0] - t * e1[0], p.c[1] - t * e1[1], p.c[2] - t * e1[2]];
        let n = linalg::norm(&r);
        if n > best_norm {
            best_norm = n;
            best = Some(r);
        }
    }
    let r = best.expect("three candidates");
    if best_norm < 1e-12 {
        return Err(Error::DegenerateConfiguration("all four points coincide"));
    }
    let e2 = [r[0] / best_norm, r[1] / best_norm, r[2] / best_norm];
    let mut out = [[0.0; 2]; 4];
    for (slot, p) in out.iter_mut().zip([a, b, c, d]) {
        let u = linalg::dot(&p.c, &e1);
        let v = linalg::dot(&p.c, &e2);
        let res = [p.c[0] - u * e1[0] - v * e2[0], p.c[1] - u * e1[1] - v * e2[1], p.c[2] - u * e1[2] - v * e2[2]];
        let residual = linalg::norm(&res);
        if residual > COLLINEAR_TOL {
            return Err(Error::NotCollinear { residual });
        }
        *slot = [u, v];
    }
    cross_ratio_params(out[0], out[1], out[2], out[3])
}
