//! Sampling grids on P¹ (angles) and P² (pixels of the disk model).

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math;
use crate::projcore::{Dim, ProjPoint};

/// Disk-model coordinates: the representative with `x₀ ≥ 0` mapped to
/// `(x₁, x₂) / (1 + x₀)`. Points with `x₀ = 0` land on the unit circle,
/// where antipodes are identified.
pub fn to_disk(p: &ProjPoint) -> [f64; 2] {
    let c = p.coords();
    let (x0, x1, x2) = (c[0], c[1], c.get(2).copied().unwrap_or(0.0));
    // first nonzero coordinate is positive, so x0 >= 0 already
    [x1 / (1.0 + x0), x2 / (1.0 + x0)]
}

/// Inverse of [`to_disk`] on the closed unit disk.
pub fn from_disk(w: [f64; 2]) -> ProjPoint {
    let r2 = w[0] * w[0] + w[1] * w[1];
    let s = 1.0 + r2;
    ProjPoint::new(&[(1.0 - r2) / s, 2.0 * w[0] / s, 2.0 * w[1] / s]).expect("nonzero")
}

/// A raster of projective points: `n` angles on P¹ (height 1), or a
/// `w × w` square over the disk model on P² with pixels outside the disk
/// left empty. Row 0 is the top (`y = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    dim: Dim,
    width: usize,
    height: usize,
    cells: Vec<Option<ProjPoint>>,
}

impl Grid {
    /// Angles `π(k + 1/2)/n`.
    pub fn p1(n: usize) -> Grid {
        let cells = (0..n).map(|k| Some(ProjPoint::from_angle1(PI * (k as f64 + 0.5) / n as f64))).collect();
        Grid { dim: Dim::One, width: n, height: 1, cells }
    }

    pub fn disk(w: usize) -> Grid {
        let mut cells = Vec::with_capacity(w * w);
        for j in 0..w {
            for i in 0..w {
                let c = Grid::pixel_center(w, i, j);
                cells.push(if c[0] * c[0] + c[1] * c[1] < 1.0 { Some(from_disk(c)) } else { None });
            }
        }
        Grid { dim: Dim::Two, width: w, height: w, cells }
    }

    pub fn new(dim: Dim, n: usize) -> Grid {
        match dim {
            Dim::One => Grid::p1(n),
            Dim::Two => Grid::disk(n),
        }
    }

    fn pixel_center(w: usize, i: usize, j: usize) -> [f64; 2] {
        let s = 2.0 / w as f64;
        [-1.0 + s * (i as f64 + 0.5), 1.0 - s * (j as f64 + 0.5)]
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Option<ProjPoint>] {
        &self.cells
    }

    pub fn point(&self, idx: usize) -> Option<&ProjPoint> {
        self.cells.get(idx).and_then(Option::as_ref)
    }

    /// Typical spacing of neighbouring cells in the round metric. On the disk
    /// the radius `w/2` covers a quarter turn.
    pub fn cell_size(&self) -> f64 {
        PI / self.width as f64
    }

    /// Cell containing `p`, if it falls inside the raster.
    pub fn cell_of(&self, p: &ProjPoint) -> Option<usize> {
        match self.dim {
            Dim::One => {
                let k = math::floor(p.angle1() / PI * self.width as f64) as usize;
                Some(k.min(self.width - 1))
            }
            Dim::Two => {
                let d = to_disk(p);
                let w = self.width as f64;
                let i = math::floor((d[0] + 1.0) / 2.0 * w);
                let j = math::floor((1.0 - d[1]) / 2.0 * w);
                if i < 0.0 || j < 0.0 || i >= w || j >= w {
                    return None;
                }
                let idx = j as usize * self.width + i as usize;
                if self.cells[idx].is_some() {
                    Some(idx)
                } else {
                    // boundary points can round just outside the disk; use the antipode
                    let a = (self.width - 1 - j as usize) * self.width + (self.width - 1 - i as usize);
                    self.cells[a].is_some().then_some(a)
                }
            }
        }
    }

    /// Neighbours for connectivity: cyclic on P¹; 4-neighbours on the disk
    /// plus the antipodal pixel for cells on the rim.
    pub fn neighbors(&self, idx: usize, out: &mut Vec<usize>) {
        out.clear();
        let w = self.width;
        match self.dim {
            Dim::One => {
                if w > 1 {
                    out.push((idx + 1) % w);
                    out.push((idx + w - 1) % w);
                }
            }
            Dim::Two => {
                let (i, j) = (idx % w, idx / w);
                let mut rim = false;
                let mut push = |ii: isize, jj: isize, out: &mut Vec<usize>| {
                    if ii >= 0 && jj >= 0 && (ii as usize) < w && (jj as usize) < w {
                        let n = jj as usize * w + ii as usize;
                        if self.cells[n].is_some() {
                            out.push(n);
                            return;
                        }
                    }
                    rim = true;
                };
                let (ii, jj) = (i as isize, j as isize);
                push(ii + 1, jj, out);
                push(ii - 1, jj, out);
                push(ii, jj + 1, out);
                push(ii, jj - 1, out);
                if rim {
                    let a = (w - 1 - j) * w + (w - 1 - i);
                    if self.cells[a].is_some() {
                        out.push(a);
                    }
                }
            }
        }
    }

    /// Whether the cell touches the outside of the disk.
    pub fn is_rim(&self, idx: usize) -> bool {
        if self.dim == Dim::One || self.cells[idx].is_none() {
            return false;
        }
        let w = self.width;
        let (i, j) = (idx % w, idx / w);
        let inside = |ii: isize, jj: isize| {
            ii >= 0 && jj >= 0 && (ii as usize) < w && (jj as usize) < w && self.cells[jj as usize * w + ii as usize].is_some()
        };
        let (ii, jj) = (i as isize, j as isize);
        !(inside(ii + 1, jj) && inside(ii - 1, jj) && inside(ii, jj + 1) && inside(ii, jj - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_examples() {
        assert_eq!(to_disk(&ProjPoint::new(&[1.0, 0.0, 0.0]).unwrap()), [0.0, 0.0]);
        assert_eq!(to_disk(&ProjPoint::new(&[0.0, 1.0, 0.0]).unwrap()), [1.0, 0.0]);
        // (0,-1,0) normalizes to (0,1,0): antipodes on the rim are glued
        assert_eq!(to_disk(&ProjPoint::new(&[0.0, -1.0, 0.0]).unwrap()), [1.0, 0.0]);
        let p = ProjPoint::new(&[0.3, -0.2, 0.9]).unwrap();
        assert!(from_disk(to_disk(&p)).approx_eq(&p, 1e-15));
    }

    #[test]
    fn rim_cells_see_their_antipode() {
        let g = Grid::disk(32);
        let mut nb = Vec::new();
        let mut rims = 0;
        for idx in 0..g.len() {
            if g.is_rim(idx) {
                rims += 1;
                g.neighbors(idx, &mut nb);
                let (i, j) = (idx % 32, idx / 32);
                assert!(nb.contains(&((31 - j) * 32 + (31 - i))));
            }
        }
        assert!(rims > 0);
    }

    #[test]
    fn cells_round_trip() {
        let g = Grid::p1(360);
        for k in 0..360 {
            assert_eq!(g.cell_of(g.point(k).unwrap()), Some(k));
        }
        let g = Grid::disk(64);
        for idx in 0..g.len() {
            if let Some(p) = g.point(idx) {
                assert_eq!(g.cell_of(p), Some(idx));
            }
        }
    }
}
