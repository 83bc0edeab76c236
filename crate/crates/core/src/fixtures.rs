//! The worked examples as ready-made IFSs.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::Ifs;
use crate::math;
use crate::projcore::ProjMap;

fn ifs(maps: Vec<ProjMap>) -> Ifs {
    Ifs::new(maps).expect("fixture maps share a dimension")
}

fn m2(r: [[f64; 2]; 2]) -> ProjMap {
    ProjMap::from_rows2(r).expect("fixture matrix is invertible")
}

fn m3(r: [[f64; 3]; 3]) -> ProjMap {
    ProjMap::from_rows3(r).expect("fixture matrix is invertible")
}

/// A single map with a dominant eigenvalue: `diag(2, 1)`.
pub fn single_map() -> Ifs {
    ifs(vec![m2([[2.0, 0.0], [0.0, 1.0]])])
}

/// `x ↦ 4x/(x+1)` and `x ↦ -4x/(x+1)`.
pub fn mirror_pair() -> Ifs {
    ifs(vec![m2([[4.0, 0.0], [1.0, 1.0]]), m2([[-4.0, 0.0], [1.0, 1.0]])])
}

/// `diag(1, 2, 2)` and the same scaling composed with a rotation by
/// `theta` in the `(y, z)` plane; the attractor is the line `x = 0`.
pub fn rotating_line(theta: f64) -> Ifs {
    let (c, s) = (math::cos(theta), math::sin(theta));
    ifs(vec![
        m3([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 2.0]]),
        m3([[1.0, 0.0, 0.0], [0.0, 2.0 * c, -2.0 * s], [0.0, 2.0 * s, 2.0 * c]]),
    ])
}

/// Two maps whose attractor is a union of lines.
pub fn crossing_lines() -> Ifs {
    ifs(vec![
        m3([[41.0, -19.0, 19.0], [-19.0, 41.0, 19.0], [19.0, 19.0, 41.0]]),
        m3([[-10.0, -1.0, 19.0], [-10.0, 21.0, 1.0], [10.0, 10.0, 10.0]]),
    ])
}

/// The matrices of the three-map family at parameter `t`, row-major.
pub fn family_matrices(t: f64) -> [[f64; 9]; 3] {
    [
        [198.0 * t + 199.0, 198.0 * t + 198.0, -198.0 * t * t - 297.0 * t - 99.0, 0.0, 1.0, 0.0, 198.0, 198.0, -198.0 * t - 98.0],
        [397.0, 396.0, -594.0, 0.0, 1.0, 0.0, 198.0, 198.0, -296.0],
        [595.0, 594.0, -1485.0, 0.0, 1.0, 0.0, 198.0, 198.0, -494.0],
    ]
}

pub fn family(t: f64) -> Ifs {
    let m = family_matrices(t);
    Ifs::from_matrices(&[&m[0], &m[1], &m[2]]).expect("fixture matrices are invertible")
}

/// `L_m` for `m = 1..=count`: attracting fixed point `m`, repelling `m - 1/2`.
pub fn ladder_matrix(m: usize, lambda: f64) -> [[f64; 2]; 2] {
    let m = m as f64;
    [
        [2.0 * m * lambda - 2.0 * m + 1.0, 2.0 * m * (m - 0.5) - m * lambda * (2.0 * m - 1.0)],
        [2.0 * lambda - 2.0, 2.0 * m - lambda * (2.0 * m - 1.0)],
    ]
}

pub fn ladder(count: usize, lambda: f64) -> Ifs {
    ifs((1..=count).map(|m| m2(ladder_matrix(m, lambda))).collect())
}

/// The conjugated two-map system `x ↦ x/10`, `x ↦ (37x-18)/(54x-26)`.
pub fn conjugate_pair() -> Ifs {
    ifs(vec![m2([[0.1, 0.0], [0.0, 1.0]]), m2([[37.0, -18.0], [54.0, -26.0]])])
}

/// The conjugating map `[[1, -1], [1, -1/2]]`.
pub fn conjugator() -> ProjMap {
    m2([[1.0, -1.0], [1.0, -0.5]])
}

/// An affine IFS `x ↦ a x + t` on the affine chart `x₀ ≠ 0` of P¹:
/// the middle-thirds Cantor system.
pub fn cantor_p1() -> Ifs {
    affine_p1(&[(1.0 / 3.0, 0.0), (1.0 / 3.0, 2.0 / 3.0)])
}

/// Affine maps `(a, t)` acting on points `(1, x)`.
pub fn affine_p1(maps: &[(f64, f64)]) -> Ifs {
    ifs(maps.iter().map(|&(a, t)| m2([[1.0, 0.0], [t, a]])).collect())
}

/// Three similarities of ratio 1/5 towards the corners of the unit
/// triangle, acting on points `(1, x, y)`.
pub fn gasket_p2() -> Ifs {
    let a = 0.2;
    let corners = [(0.0, 0.0), (0.8, 0.0), (0.0, 0.8)];
    ifs(corners.iter().map(|&(tx, ty)| m3([[1.0, 0.0, 0.0], [tx, a, 0.0], [ty, 0.0, a]])).collect())
}
