//! The complement of a hyperplane repeller on a grid, split into connected
//! components.

use alloc::vec;
use alloc::vec::Vec;

use crate::duality::HyperplaneCloud;
use crate::grid::Grid;
use crate::projcore::ProjPoint;
use crate::{Error, Result};

/// Width of a rasterized hyperplane, in grid cells.
pub const LINE_THICKNESS_CELLS: f64 = 1.5;

pub const NO_LABEL: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct BasinMask {
    pub grid: Grid,
    /// Band half-width in `|⟨p, a⟩|`.
    pub band: f64,
    /// Component label per cell, `NO_LABEL` for excluded or empty cells.
    pub labels: Vec<u32>,
    pub components: usize,
}

impl BasinMask {
    pub fn in_basin(&self, idx: usize) -> bool {
        self.labels[idx] != NO_LABEL
    }

    pub fn label_of(&self, p: &ProjPoint) -> Option<u32> {
        self.grid.cell_of(p).map(|i| self.labels[i]).filter(|&l| l != NO_LABEL)
    }

    /// Grid points left in the basin.
    pub fn basin_points(&self) -> impl Iterator<Item = (usize, &ProjPoint)> {
        self.grid.cells().iter().enumerate().filter_map(|(i, c)| c.as_ref().filter(|_| self.labels[i] != NO_LABEL).map(|p| (i, p)))
    }

    pub fn excluded_count(&self) -> usize {
        self.grid.cells().iter().zip(&self.labels).filter(|(c, &l)| c.is_some() && l == NO_LABEL).count()
    }
}

/// Which cells lie within `band` of some hyperplane of the repeller.
pub fn exclusion(grid: &Grid, repeller: &HyperplaneCloud, band: f64) -> Vec<bool> {
    grid.cells().iter().map(|c| c.as_ref().map_or(true, |p| repeller.within(p, band))).collect()
}

/// Labels the connected components of the non-excluded cells in scan order.
pub fn label_components(grid: &Grid, excluded: &[bool]) -> (Vec<u32>, usize) {
    let mut labels = vec![NO_LABEL; grid.len()];
    let mut next = 0u32;
    let mut stack = Vec::new();
    let mut nb = Vec::new();
    for start in 0..grid.len() {
        if excluded[start] || labels[start] != NO_LABEL {
            continue;
        }
        labels[start] = next;
        stack.push(start);
        while let Some(c) = stack.pop() {
            grid.neighbors(c, &mut nb);
            for &n in &nb {
                if !excluded[n] && labels[n] == NO_LABEL {
                    labels[n] = next;
                    stack.push(n);
                }
            }
        }
        next += 1;
    }
    (labels, next as usize)
}

/// The basin `P^n ∖ ∪R` on `grid`, with hyperplanes drawn
/// [`LINE_THICKNESS_CELLS`] cells wide.
pub fn basin(repeller: &HyperplaneCloud, grid: Grid) -> Result<BasinMask> {
    if repeller.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if repeller.dim() != grid.dim() {
        return Err(Error::DimensionMismatch { expected: grid.dim().n(), found: repeller.dim().n() });
    }
    let band = LINE_THICKNESS_CELLS * grid.cell_size();
    let excluded = exclusion(&grid, repeller, band);
    basin_from_exclusion(grid, band, &excluded)
}

/// Same as [`basin`] with a precomputed exclusion mask.
pub fn basin_from_exclusion(grid: Grid, band: f64, excluded: &[bool]) -> Result<BasinMask> {
    let (labels, components) = label_components(&grid, excluded);
    Ok(BasinMask { grid, band, labels, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::PointCloud;
    use crate::projcore::Dim;

    #[test]
    fn one_point_removed_from_the_circle() {
        let r = HyperplaneCloud::new(PointCloud::singleton(ProjPoint::new(&[1.0, 0.0]).unwrap()));
        let b = basin(&r, Grid::p1(720)).unwrap();
        assert_eq!(b.components, 1);
        assert!(b.excluded_count() >= 2 && b.excluded_count() <= 4);
    }

    #[test]
    fn two_points_give_two_arcs() {
        let pts = vec![ProjPoint::p1(0.5), ProjPoint::p1(1.5)];
        let r = HyperplaneCloud::from_hyperplanes(Dim::One, &pts.iter().map(crate::Hyperplane::point_p1).collect::<Vec<_>>()).unwrap();
        let b = basin(&r, Grid::p1(720)).unwrap();
        assert_eq!(b.components, 2);
        assert_ne!(b.label_of(&ProjPoint::p1(1.0)), b.label_of(&ProjPoint::p1(2.0)));
    }

    #[test]
    fn one_line_leaves_the_plane_connected() {
        // P² minus a line is a disk; two lines split it into two pieces
        let l1 = ProjPoint::new(&[0.0, 1.0, 0.0]).unwrap();
        let b = basin(&HyperplaneCloud::new(PointCloud::singleton(l1)), Grid::disk(128)).unwrap();
        assert_eq!(b.components, 1);
        let l2 = ProjPoint::new(&[0.0, 0.0, 1.0]).unwrap();
        let r = HyperplaneCloud::new(PointCloud::new(Dim::Two, vec![l1, l2]).unwrap());
        let b = basin(&r, Grid::disk(128)).unwrap();
        assert_eq!(b.components, 2);
    }

    #[test]
    fn empty_repeller_is_an_error() {
        assert_eq!(basin(&HyperplaneCloud::new(PointCloud::empty(Dim::One)), Grid::p1(10)), Err(Error::EmptyCloud));
    }
}
