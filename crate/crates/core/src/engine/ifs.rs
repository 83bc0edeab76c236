use alloc::vec::Vec;

use super::cloud::PointCloud;
use crate::projcore::{Dim, ProjMap, ProjPoint};
use crate::{Error, Result};

/// An ordered list of projective maps of one P^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Ifs {
    maps: Vec<ProjMap>,
    dim: Dim,
}

impl Ifs {
    pub fn new(maps: Vec<ProjMap>) -> Result<Ifs> {
        let dim = maps.first().ok_or(Error::EmptyInput)?.dim();
        for m in &maps {
            dim.check(m.dim())?;
        }
        Ok(Ifs { maps, dim })
    }

    /// Maps from row-major matrices, all of the same size.
    pub fn from_matrices(mats: &[&[f64]]) -> Result<Ifs> {
        let maps = mats.iter().map(|m| ProjMap::from_row_major(m)).collect::<Result<Vec<_>>>()?;
        Ifs::new(maps)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn maps(&self) -> &[ProjMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `F^t`.
    pub fn adjoint(&self) -> Ifs {
        Ifs { maps: self.maps.iter().map(ProjMap::adjoint).collect(), dim: self.dim }
    }

    /// `F^{-1}`.
    pub fn inverse(&self) -> Ifs {
        Ifs { maps: self.maps.iter().map(ProjMap::inverse).collect(), dim: self.dim }
    }

    /// `g F g^{-1}`.
    pub fn conjugate(&self, g: &ProjMap) -> Ifs {
        let gi = g.inverse();
        Ifs { maps: self.maps.iter().map(|f| g.compose(&f.compose(&gi))).collect(), dim: self.dim }
    }

    /// All words of length two, `f_i ∘ f_j` in lexicographic `(i, j)` order.
    pub fn squared_words(&self) -> Ifs {
        let mut maps = Vec::with_capacity(self.maps.len() * self.maps.len());
        for f in &self.maps {
            for g in &self.maps {
                maps.push(f.compose(g));
            }
        }
        Ifs { maps, dim: self.dim }
    }

    pub fn apply(&self, m: usize, p: &ProjPoint) -> ProjPoint {
        self.maps[m].apply(p)
    }

    /// `F(B)`: all map images, grouped by map, before deduplication.
    pub fn image(&self, b: &PointCloud) -> PointCloud {
        let mut out = Vec::with_capacity(self.maps.len() * b.len());
        for f in &self.maps {
            out.extend(b.points().iter().map(|p| f.apply(p)));
        }
        PointCloud::from_points_unchecked(self.dim, out)
    }

    /// Matrix-wise equality up to scale.
    pub fn eq_up_to_scale(&self, other: &Ifs, tol: f64) -> bool {
        self.maps.len() == other.maps.len()
            && self.maps.iter().zip(&other.maps).all(|(a, b)| a.eq_up_to_scale(b, tol))
    }
}

pub fn ifs_image(f: &Ifs, b: &PointCloud) -> PointCloud {
    f.image(b)
}
