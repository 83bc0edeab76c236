//! Small dense linear algebra on 2×2 and 3×3 real matrices.
//!
//! Matrices are stored in a fixed `[[f64; 3]; 3]` block together with their
//! active size, so every value is `Copy` and nothing allocates.

use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat {
    pub(crate) a: [[f64; 3]; 3],
    pub(crate) k: usize,
}

/// An eigenvalue as a complex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn modulus(&self) -> f64 {
        math::hypot(self.re, self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }
}

impl Mat {
    pub fn zeros(k: usize) -> Self {
        debug_assert!(k == 2 || k == 3);
        Mat { a: [[0.0; 3]; 3], k }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Mat::zeros(k);
        for i in 0..k {
            m.a[i][i] = 1.0;
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be 4 or 9.
    pub fn from_row_major(entries: &[f64]) -> Option<Self> {
        let k = match entries.len() {
            4 => 2,
            9 => 3,
            _ => return None,
        };
        let mut m = Mat::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.a[i][j] = entries[i * k + j];
            }
        }
        Some(m)
    }

    pub fn from_rows2(r: [[f64; 2]; 2]) -> Self {
        let mut m = Mat::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                m.a[i][j] = r[i][j];
            }
        }
        m
    }

    pub fn from_rows3(r: [[f64; 3]; 3]) -> Self {
        Mat { a: r, k: 3 }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i][j]
    }

    pub fn row_major(&self) -> ([f64; 9], usize) {
        let mut out = [0.0; 9];
        for i in 0..self.k {
            for j in 0..self.k {
                out[i * self.k + j] = self.a[i][j];
            }
        }
        (out, self.k * self.k)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.k, other.k);
        let mut m = Mat::zeros(self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                let mut s = 0.0;
                for l in 0..self.k {
                    s += self.a[i][l] * other.a[l][j];
                }
                m.a[i][j] = s;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate().take(self.k) {
            let mut s = 0.0;
            for j in 0..self.k {
                s += self.a[i][j] * v[j];
            }
            *o = s;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                m.a[i][j] = self.a[j][i];
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Mat {
        let mut m = *self;
        for i in 0..self.k {
            for j in 0..self.k {
                m.a[i][j] *= s;
            }
        }
        m
    }

    pub fn sub_identity(&self, lambda: f64) -> Mat {
        let mut m = *self;
        for i in 0..self.k {
            m.a[i][i] -= lambda;
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.k {
            for j in 0..self.k {
                s += self.a[i][j] * self.a[i][j];
            }
        }
        math::sqrt(s)
    }

    pub fn trace(&self) -> f64 {
        (0..self.k).map(|i| self.a[i][i]).sum()
    }

    pub fn det(&self) -> f64 {
        let a = &self.a;
        if self.k == 2 {
            a[0][0] * a[1][1] - a[0][1] * a[1][0]
        } else {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        }
    }

    /// Classical adjugate: `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Mat {
        let a = &self.a;
        let mut m = Mat::zeros(self.k);
        if self.k == 2 {
            m.a[0][0] = a[1][1];
            m.a[0][1] = -a[0][1];
            m.a[1][0] = -a[1][0];
            m.a[1][1] = a[0][0];
        } else {
            for i in 0..3 {
                for j in 0..3 {
                    let (r0, r1) = others(j);
                    let (c0, c1) = others(i);
                    let minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
                    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                    m.a[i][j] = sign * minor;
                }
            }
        }
        m
    }

    pub fn inverse(&self) -> Option<Mat> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adjugate().scale(1.0 / d))
    }

    /// Largest absolute entry difference after fitting the best scalar `s`
    /// in `self ≈ s · other` (least squares), returned with `s`.
    pub fn residual_up_to_scale(&self, other: &Mat) -> (f64, f64) {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..self.k {
            for j in 0..self.k {
                num += self.a[i][j] * other.a[i][j];
                den += other.a[i][j] * other.a[i][j];
            }
        }
        let s = if den > 0.0 { num / den } else { 0.0 };
        let mut worst: f64 = 0.0;
        for i in 0..self.k {
            for j in 0..self.k {
                worst = worst.max((self.a[i][j] - s * other.a[i][j]).abs());
            }
        }
        (worst, s)
    }

    /// All eigenvalues in decreasing modulus.
    pub fn eigenvalues(&self) -> [Option<Eigenvalue>; 3] {
        let mut out = [None; 3];
        if self.k == 2 {
            let (r0, r1) = quadratic_roots(-self.trace(), self.det());
            out[0] = Some(r0);
            out[1] = Some(r1);
        } else {
            let a = &self.a;
            let c2 = -self.trace();
            let c1 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2]
                - a[0][2] * a[2][0]
                + a[1][1] * a[2][2]
                - a[1][2] * a[2][1];
            let c0 = -self.det();
            let roots = cubic_roots(c2, c1, c0);
            for (o, r) in out.iter_mut().zip(roots) {
                *o = Some(r);
            }
        }
        let n = self.k;
        let slice = &mut out[..n];
        slice.sort_by(|x, y| {
            let (x, y) = (x.unwrap(), y.unwrap());
            y.modulus().partial_cmp(&x.modulus()).unwrap_or(core::cmp::Ordering::Equal)
        });
        out
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Roots of `x² + b x + c`.
fn quadratic_roots(b: f64, c: f64) -> (Eigenvalue, Eigenvalue) {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let sq = math::sqrt(disc);
        // stable form avoids cancellation
        let q = if b >= 0.0 { -0.5 * (b + sq) } else { -0.5 * (b - sq) };
        let (x0, x1) = if q != 0.0 { (q, c / q) } else { (0.0, -b) };
        (Eigenvalue { re: x0, im: 0.0 }, Eigenvalue { re: x1, im: 0.0 })
    } else {
        let re = -0.5 * b;
        let im = 0.5 * math::sqrt(-disc);
        (Eigenvalue { re, im }, Eigenvalue { re, im: -im })
    }
}

/// Roots of `x³ + a x² + b x + c`.
fn cubic_roots(a: f64, b: f64, c: f64) -> [Eigenvalue; 3] {
    let cubic = |x: f64| ((x + a) * x + b) * x + c;
    let deriv = |x: f64| (3.0 * x + 2.0 * a) * x + b;
    // depressed cubic t³ + p t + q with x = t - a/3
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = q * q / 4.0 + p * p * p / 27.0;
    let shift = -a / 3.0;
    let mut real = if disc > 0.0 {
        let sq = math::sqrt(disc);
        math::cbrt(-q / 2.0 + sq) + math::cbrt(-q / 2.0 - sq) + shift
    } else if p < 0.0 {
        let r = math::sqrt(-p / 3.0);
        let arg = (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0);
        let phi = math::acos(arg);
        // largest of the three real roots
        2.0 * r * math::cos(phi / 3.0) + shift
    } else {
        shift
    };
    for _ in 0..4 {
        let d = deriv(real);
        if d == 0.0 {
            break;
        }
        let step = cubic(real) / d;
        if !step.is_finite() {
            break;
        }
        real -= step;
    }
    // deflate: x³ + a x² + b x + c = (x - r)(x² + e x + f)
    let e = a + real;
    let f = b + e * real;
    let (mut r1, mut r2) = quadratic_roots(e, f);
    for r in [&mut r1, &mut r2] {
        if r.is_real() {
            for _ in 0..3 {
                let d = deriv(r.re);
                if d == 0.0 {
                    break;
                }
                let step = cubic(r.re) / d;
                if !step.is_finite() {
                    break;
                }
                r.re -= step;
            }
        }
    }
    [Eigenvalue { re: real, im: 0.0 }, r1, r2]
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: &[f64; 3]) -> f64 {
    math::sqrt(dot(a, a))
}

pub(crate) fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
