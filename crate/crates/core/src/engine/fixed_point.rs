use alloc::vec::Vec;

use crate::linalg::{self, Eigenvalue, Mat};
use crate::projcore::{Hyperplane, ProjMap, ProjPoint};

/// Relative modulus gap required for a dominant eigenvalue.
pub const DOMINANCE_GAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    /// Eigenvector of the dominant eigenvalue.
    pub attractive_point: Option<ProjPoint>,
    /// The span of the other generalized eigenspaces, given by its normal
    /// (the dominant left eigenvector).
    pub invariant_hyperplane: Option<Hyperplane>,
    pub dominant: bool,
    /// Dominant eigenvalue of the unit-Frobenius matrix, sign included.
    pub dominant_eigenvalue: Option<f64>,
    pub eigenvalues: Vec<Eigenvalue>,
}

impl FixedPointReport {
    pub fn moduli(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(Eigenvalue::modulus).collect()
    }

    /// On P¹ the invariant hyperplane is a single point: the repulsive fixed
    /// point.
    pub fn repulsive_point_p1(&self) -> Option<ProjPoint> {
        self.invariant_hyperplane.filter(|h| h.dim() == crate::Dim::One).map(|h| h.as_point_p1())
    }
}

/// Null vector of a rank-deficient matrix: the adjugate column (or row, for
/// the left null vector) of largest norm.
fn null_vector(a: &Mat, left: bool) -> [f64; 3] {
    let adj = a.adjugate();
    let k = a.size();
    let mut best = [0.0; 3];
    let mut best_norm = -1.0;
    for j in 0..k {
        let mut v = [0.0; 3];
        for (i, vi) in v.iter_mut().enumerate().take(k) {
            *vi = if left { adj.get(j, i) } else { adj.get(i, j) };
        }
        let n = linalg::norm(&v);
        if n > best_norm {
            best_norm = n;
            best = v;
        }
    }
    best
}

/// A few steps of shifted inverse iteration to clean up an eigenvector.
fn polish(m: &Mat, lambda: f64, mut v: [f64; 3]) -> [f64; 3] {
    let shift = m.sub_identity(lambda * (1.0 + 1e-8));
    let Some(inv) = shift.inverse() else { return v };
    for _ in 0..3 {
        let w = inv.mul_vec(&v);
        let n = linalg::norm(&w);
        if !(n > 0.0) || !n.is_finite() {
            break;
        }
        v = [w[0] / n, w[1] / n, w[2] / n];
    }
    v
}

/// Eigen-analysis of `L_f`: dominant eigenvalue, attractive fixed point, and
/// the invariant hyperplane.
pub fn fixed_point_analysis(f: &ProjMap) -> FixedPointReport {
    let m = f.matrix();
    let eig: Vec<Eigenvalue> = m.eigenvalues().iter().flatten().copied().collect();
    let top = eig[0];
    let gap = (top.modulus() - eig[1].modulus()) / top.modulus();
    let dominant = top.is_real() && gap > DOMINANCE_GAP;
    if !dominant {
        return FixedPointReport {
            attractive_point: None,
            invariant_hyperplane: None,
            dominant: false,
            dominant_eigenvalue: None,
            eigenvalues: eig,
        };
    }
    let lambda = top.re;
    let a = m.sub_identity(lambda);
    let right = polish(m, lambda, null_vector(&a, false));
    let left = polish(&m.transpose(), lambda, null_vector(&a, true));
    let dim = f.dim();
    let point = ProjPoint::from_array(dim, right).ok();
    let plane = ProjPoint::from_array(dim, left).ok().map(Hyperplane::from_normal);
    FixedPointReport {
        dominant: point.is_some() && plane.is_some(),
        attractive_point: point,
        invariant_hyperplane: plane,
        dominant_eigenvalue: Some(lambda),
        eigenvalues: eig,
    }
}
