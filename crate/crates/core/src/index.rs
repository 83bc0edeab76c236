//! The index of an IFS: how many components of the complement of its
//! hyperplane repeller meet the attractor.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basin::{basin, BasinMask, NO_LABEL};
use crate::certify::search::seeded_attractor;
use crate::certify::{find_certificate_from, SearchBudget};
use crate::duality::{hyperplane_repeller, HyperplaneCloud};
use crate::engine::{fixed_point_analysis, Ifs, PointCloud};
use crate::fixtures;
use crate::grid::Grid;
use crate::math;
use crate::projcore::{Dim, ProjPoint};
use crate::{Error, Result};

/// An open arc of P¹ between two repeller points, as angles in `[0, π)`
/// traversed counterclockwise from `start` to `end` (wrapping past `π`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
}

impl Arc {
    pub fn length(&self) -> f64 {
        let l = self.end - self.start;
        if l > 0.0 {
            l
        } else {
            l + PI
        }
    }

    pub fn contains_angle(&self, t: f64) -> bool {
        let off = if t >= self.start { t - self.start } else { t - self.start + PI };
        off > 0.0 && off < self.length()
    }

    /// Endpoints in the affine chart `x₀/x₁`.
    pub fn chart_interval(&self) -> (f64, f64) {
        (ProjPoint::from_angle1(self.start).affine1(), ProjPoint::from_angle1(self.end).affine1())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    Arc(Arc),
    /// A connected region of the disk raster.
    Region { label: u32, cells: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexParams {
    pub budget: SearchBudget,
    /// Gap threshold on P¹ as a multiple of the attractor tolerance.
    pub gap_factor: f64,
    pub escalations: usize,
    /// Raster width on P².
    pub grid: usize,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams { budget: SearchBudget::default(), gap_factor: 10.0, escalations: 3, grid: 512 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub index: usize,
    pub components: Vec<Component>,
    /// Indices into `components` of those meeting the attractor.
    pub occupied: Vec<usize>,
    /// Gap threshold actually used (P¹ only).
    pub gap_threshold: Option<f64>,
    pub attractor_tol: f64,
    pub repeller_tol: f64,
    pub attractor: PointCloud,
    pub repeller: HyperplaneCloud,
}

fn sorted_angles(repeller: &HyperplaneCloud) -> Vec<f64> {
    let mut a: Vec<f64> = repeller.hyperplanes().map(|h| h.as_point_p1().angle1()).collect();
    a.sort_by(f64::total_cmp);
    a
}

/// Maximal arcs between repeller points whose gap exceeds the threshold.
pub fn components_p1(repeller: &HyperplaneCloud, gap_threshold: f64) -> Result<Vec<Arc>> {
    if repeller.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let a = sorted_angles(repeller);
    let mut arcs = Vec::new();
    for k in 0..a.len() {
        let (s, e) = (a[k], a[(k + 1) % a.len()]);
        let arc = Arc { start: s, end: e };
        let len = if a.len() == 1 { PI } else { arc.length() };
        if len > gap_threshold {
            arcs.push(arc);
        }
    }
    if arcs.is_empty() {
        return Err(Error::DegenerateAllGaps { threshold: gap_threshold });
    }
    Ok(arcs)
}

fn occupied_arcs(arcs: &[Arc], attractor: &PointCloud) -> Vec<usize> {
    let mut hit = BTreeSet::new();
    for p in attractor.points() {
        let t = p.angle1();
        // arcs are disjoint; a single repeller point gives one arc of length π
        if arcs.len() == 1 {
            if t != arcs[0].start {
                hit.insert(0);
            }
            continue;
        }
        if let Some(k) = arcs.iter().position(|a| a.contains_angle(t)) {
            hit.insert(k);
        }
    }
    hit.into_iter().collect()
}

/// Index from an attractor and repeller that were computed elsewhere.
pub fn index_from_sets(attractor: &PointCloud, repeller: &HyperplaneCloud, params: &IndexParams) -> Result<IndexReport> {
    let tol = params.budget.attractor.tol;
    let (components, occupied, gap_threshold) = match attractor.dim() {
        Dim::One => {
            let count = |g: f64| -> Result<(Vec<Arc>, Vec<usize>)> {
                let arcs = components_p1(repeller, g)?;
                let occ = occupied_arcs(&arcs, attractor);
                Ok((arcs, occ))
            };
            let mut g = params.gap_factor * tol;
            let mut cur = count(g)?;
            for _ in 0..params.escalations {
                let next = count(2.0 * g)?;
                if next.1.len() == cur.1.len() {
                    break;
                }
                g *= 2.0;
                cur = next;
            }
            (cur.0.into_iter().map(Component::Arc).collect(), cur.1, Some(g))
        }
        Dim::Two => {
            let mask = basin(repeller, Grid::disk(params.grid))?;
            return Ok(index_from_mask(attractor, repeller, &mask, params));
        }
    };
    Ok(IndexReport {
        index: occupied.len(),
        components,
        occupied,
        gap_threshold,
        attractor_tol: tol,
        repeller_tol: tol,
        attractor: attractor.clone(),
        repeller: repeller.clone(),
    })
}

/// Index on P² from a basin mask computed elsewhere.
pub fn index_from_mask(attractor: &PointCloud, repeller: &HyperplaneCloud, mask: &BasinMask, params: &IndexParams) -> IndexReport {
    let mut sizes = alloc::vec![0usize; mask.components];
    for &l in &mask.labels {
        if l != NO_LABEL {
            sizes[l as usize] += 1;
        }
    }
    let occupied: BTreeSet<usize> = attractor.points().iter().filter_map(|p| mask.label_of(p)).map(|l| l as usize).collect();
    let components = sizes.iter().enumerate().map(|(l, &cells)| Component::Region { label: l as u32, cells }).collect();
    IndexReport {
        index: occupied.len(),
        components,
        occupied: occupied.into_iter().collect(),
        gap_threshold: None,
        attractor_tol: params.budget.attractor.tol,
        repeller_tol: params.budget.attractor.tol,
        attractor: attractor.clone(),
        repeller: repeller.clone(),
    }
}

/// `index(F)`. Refuses systems without a contractivity certificate.
pub fn index_of_ifs(f: &Ifs, params: &IndexParams) -> Result<IndexReport> {
    let est = seeded_attractor(f, &params.budget)?;
    if !est.converged {
        return Err(Error::NonConvergence { iterations: est.iterations, delta: est.last_delta });
    }
    find_certificate_from(f, &est, &params.budget).map_err(|e| Error::NotCertified(format!("{e}")))?;
    let rep = hyperplane_repeller(f, &params.budget)?;
    index_from_sets(&est.cloud, &rep.repeller, params)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePairReport {
    /// Up-to-scale residuals of `f ∘ f_m ∘ f^{-1}` against the two maps.
    pub conjugacy_residuals: [f64; 2],
    /// Attractive fixed points of `f₁` and `f₂`.
    pub a: f64,
    pub c: f64,
    /// Repulsive fixed points of `f₁` and `f₂`.
    pub repulsive: [f64; 2],
    /// Attractive fixed points of `f₁∘f₂` and `f₂∘f₁`.
    pub b: f64,
    pub d: f64,
    /// Largest distance of an attractor point outside `[a,b] ∪ [c,d]`.
    pub interval_violation: f64,
    pub index: IndexReport,
}

impl ConjugatePairReport {
    pub fn b_exact() -> f64 {
        11.0 / 40.0 - math::sqrt(609.0) / 120.0
    }

    pub fn d_exact() -> f64 {
        11.0 / 4.0 - math::sqrt(609.0) / 12.0
    }
}

/// The two-map system conjugate to the index-2 family at `M = 2, λ = 10`,
/// with its proof properties recomputed.
pub fn conjugate_pair_report(params: &IndexParams) -> Result<ConjugatePairReport> {
    let hat = fixtures::conjugate_pair();
    let conj = fixtures::conjugator();
    let orig = fixtures::ladder(2, 10.0);
    let mut conjugacy_residuals = [0.0; 2];
    for m in 0..2 {
        let c = conj.compose(&orig.maps()[m]).compose(&conj.inverse());
        conjugacy_residuals[m] = c.matrix().residual_up_to_scale(hat.maps()[m].matrix()).0;
    }
    let attractive = |g: &crate::ProjMap| fixed_point_analysis(g).attractive_point.map_or(f64::NAN, |p| p.affine1());
    let repulsive = |g: &crate::ProjMap| fixed_point_analysis(g).repulsive_point_p1().map_or(f64::NAN, |p| p.affine1());
    let (f1, f2) = (&hat.maps()[0], &hat.maps()[1]);
    let (a, c) = (attractive(f1), attractive(f2));
    let b = attractive(&f1.compose(f2));
    let d = attractive(&f2.compose(f1));
    let index = index_of_ifs(&hat, params)?;
    let mut interval_violation: f64 = 0.0;
    for p in index.attractor.points() {
        let x = p.affine1();
        let out1 = (a - x).max(x - b).max(0.0);
        let out2 = (c - x).max(x - d).max(0.0);
        interval_violation = interval_violation.max(out1.min(out2));
    }
    Ok(ConjugatePairReport { conjugacy_residuals, a, c, repulsive: [repulsive(f1).abs(), repulsive(f2)], b, d, interval_violation, index })
}
