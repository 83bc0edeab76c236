//! Rasterization into RGBA buffers: the disk model of P² and a strip model
//! of P¹. Encoding to image files is left to the caller.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basin::BasinMask;
use crate::duality::HyperplaneCloud;
use crate::engine::PointCloud;
use crate::grid::{from_disk, to_disk};
use crate::math;
use crate::projcore::{Dim, ProjPoint};
use crate::{Error, Result};

pub use crate::grid::to_disk as disk_coords;

/// Largest accepted side length.
pub const MAX_SIDE: usize = 8192;

pub type Rgba = [u8; 4];

const TRANSPARENT: Rgba = [0, 0, 0, 0];
const BACKGROUND: Rgba = [255, 255, 255, 255];
const BASIN: Rgba = [48, 48, 56, 255];
const REPELLER: Rgba = [120, 150, 230, 255];
const REPELLER_ALPHA: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Disk,
    Strip,
}

impl Model {
    pub fn for_dim(dim: Dim) -> Model {
        match dim {
            Dim::One => Model::Strip,
            Dim::Two => Model::Disk,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<Rgba>,
    pub model: Model,
    /// Color of each map, by map index.
    pub legend: Vec<Rgba>,
}

impl RasterImage {
    pub fn pixel(&self, i: usize, j: usize) -> Rgba {
        self.pixels[j * self.width + i]
    }

    pub fn as_bytes(&self) -> Vec<u8> {
        self.pixels.iter().flatten().copied().collect()
    }
}

/// Map `m` of `count` gets hue `m / count` at full saturation and value.
pub fn map_color(m: usize, count: usize) -> Rgba {
    let h = 6.0 * (m as f64 / count.max(1) as f64);
    let sector = math::floor(h);
    let f = h - sector;
    let up = (255.0 * f + 0.5) as u8;
    let down = 255 - up;
    match sector as u32 % 6 {
        0 => [255, up, 0, 255],
        1 => [down, 255, 0, 255],
        2 => [0, 255, up, 255],
        3 => [0, down, 255, 255],
        4 => [up, 0, 255, 255],
        _ => [255, 0, down, 255],
    }
}

/// What to draw. `colors[k]` is the map that produced attractor point `k`.
#[derive(Debug, Clone, Copy)]
pub struct Scene<'a> {
    pub dim: Dim,
    pub maps: usize,
    pub attractor: Option<&'a PointCloud>,
    pub colors: Option<&'a [u8]>,
    pub repeller: Option<&'a HyperplaneCloud>,
    pub basin: Option<&'a BasinMask>,
}

impl<'a> Scene<'a> {
    pub fn new(dim: Dim, maps: usize) -> Scene<'a> {
        Scene { dim, maps, attractor: None, colors: None, repeller: None, basin: None }
    }
}

/// Layer of each pixel, used to glue antipodal rim pixels.
const L_NONE: u8 = 0;
const L_BACKGROUND: u8 = 1;
const L_BASIN: u8 = 2;
const L_REPELLER: u8 = 3;
const L_ATTRACTOR: u8 = 4;

/// A render split into independent rows (basin and repeller layers), then a
/// sequential pass for the attractor points and the rim gluing.
#[derive(Debug, Clone, Copy)]
pub struct RenderPlan<'a> {
    pub scene: Scene<'a>,
    pub model: Model,
    pub width: usize,
    pub height: usize,
    band: f64,
}

fn blend(under: Rgba, over: Rgba, alpha: f64) -> Rgba {
    let mut out = [0u8; 4];
    for k in 0..3 {
        out[k] = (under[k] as f64 * (1.0 - alpha) + over[k] as f64 * alpha + 0.5) as u8;
    }
    out[3] = 255;
    out
}

/// Deterministic per-pixel noise in `[0, 1)` for the grainy repeller overlay.
fn grain(i: usize, j: usize) -> f64 {
    let mut h = (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (j as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    h ^= h >> 29;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^= h >> 32;
    (h >> 11) as f64 / (1u64 << 53) as f64
}

impl<'a> RenderPlan<'a> {
    pub fn new(scene: Scene<'a>, size: usize) -> Result<RenderPlan<'a>> {
        let model = Model::for_dim(scene.dim);
        let (width, height) = match model {
            Model::Disk => (size, size),
            Model::Strip => (size, (size / 8).max(6)),
        };
        if size == 0 || width > MAX_SIDE || height > MAX_SIDE {
            return Err(Error::SizeLimit { width, height });
        }
        for dim in [scene.attractor.map(PointCloud::dim), scene.repeller.map(HyperplaneCloud::dim), scene.basin.map(|b| b.grid.dim())]
            .into_iter()
            .flatten()
        {
            if dim != scene.dim {
                return Err(Error::DimensionMismatch { expected: scene.dim.n(), found: dim.n() });
            }
        }
        if let (Some(a), Some(c)) = (scene.attractor, scene.colors) {
            if a.len() != c.len() {
                return Err(Error::DegenerateConfiguration("one color per attractor point is required"));
            }
        }
        // hyperplanes drawn 1.5 pixels wide
        let band = 1.5 * PI / width as f64;
        Ok(RenderPlan { scene, model, width, height, band })
    }

    /// The point shown at pixel `(i, j)`, if any.
    pub fn pixel_point(&self, i: usize, j: usize) -> Option<ProjPoint> {
        match self.model {
            Model::Disk => {
                let s = 2.0 / self.width as f64;
                let w = [-1.0 + s * (i as f64 + 0.5), 1.0 - s * (j as f64 + 0.5)];
                (w[0] * w[0] + w[1] * w[1] < 1.0).then(|| from_disk(w))
            }
            Model::Strip => Some(ProjPoint::from_angle1(PI * (i as f64 + 0.5) / self.width as f64)),
        }
    }

    /// Strip rows: attractor on top, repeller in the middle, basin below.
    fn strip_band(&self, j: usize) -> u8 {
        (3 * j / self.height) as u8
    }

    /// Fills row `j` (`out` and `layers` have `width` entries).
    pub fn render_row(&self, j: usize, out: &mut [Rgba], layers: &mut [u8]) {
        for i in 0..self.width {
            let Some(p) = self.pixel_point(i, j) else {
                out[i] = TRANSPARENT;
                layers[i] = L_NONE;
                continue;
            };
            let band = if self.model == Model::Strip { self.strip_band(j) } else { 3 };
            let mut c = BACKGROUND;
            let mut l = L_BACKGROUND;
            if let Some(b) = self.scene.basin {
                if (band == 2 || band == 3) && b.label_of(&p).is_some() {
                    c = BASIN;
                    l = L_BASIN;
                }
            }
            if let Some(r) = self.scene.repeller {
                if (band == 1 || band == 3) && r.within(&p, self.band) {
                    c = blend(c, REPELLER, REPELLER_ALPHA * (0.5 + 0.5 * grain(i, j)));
                    l = L_REPELLER;
                }
            }
            out[i] = c;
            layers[i] = l;
        }
    }

    fn antipode(&self, idx: usize) -> Option<usize> {
        if self.model != Model::Disk {
            return None;
        }
        let w = self.width;
        let (i, j) = (idx % w, idx / w);
        Some((w - 1 - j) * w + (w - 1 - i))
    }

    fn is_rim(&self, layers: &[u8], idx: usize) -> bool {
        let w = self.width;
        let (i, j) = (idx % w, idx / w);
        if layers[idx] == L_NONE {
            return false;
        }
        i == 0 || j == 0 || i + 1 == w || j + 1 == w || layers[idx - 1] == L_NONE || layers[idx + 1] == L_NONE || layers[idx - w] == L_NONE || layers[idx + w] == L_NONE
    }

    /// Plots the attractor and glues the rim.
    pub fn finish(&self, mut pixels: Vec<Rgba>, mut layers: Vec<u8>) -> RasterImage {
        let legend: Vec<Rgba> = (0..self.scene.maps).map(|m| map_color(m, self.scene.maps)).collect();
        if let Some(a) = self.scene.attractor {
            for (k, p) in a.points().iter().enumerate() {
                let color = match self.scene.colors {
                    Some(cs) => map_color(cs[k] as usize, self.scene.maps),
                    None => [0, 0, 0, 255],
                };
                for idx in self.pixels_of(p, &layers) {
                    pixels[idx] = color;
                    layers[idx] = L_ATTRACTOR;
                }
            }
        }
        if self.model == Model::Disk {
            for idx in 0..pixels.len() {
                if !self.is_rim(&layers, idx) {
                    continue;
                }
                let Some(a) = self.antipode(idx).filter(|&a| layers[a] != L_NONE) else { continue };
                // higher layer wins, then the lower index
                let (src, dst) = if layers[idx] > layers[a] || (layers[idx] == layers[a] && idx < a) { (idx, a) } else { (a, idx) };
                pixels[dst] = pixels[src];
                layers[dst] = layers[src];
            }
        }
        RasterImage { width: self.width, height: self.height, pixels, model: self.model, legend }
    }

    fn pixels_of(&self, p: &ProjPoint, layers: &[u8]) -> Vec<usize> {
        match self.model {
            Model::Disk => {
                let d = to_disk(p);
                let w = self.width as f64;
                let i = math::floor((d[0] + 1.0) / 2.0 * w).clamp(0.0, w - 1.0) as usize;
                let j = math::floor((1.0 - d[1]) / 2.0 * w).clamp(0.0, w - 1.0) as usize;
                let idx = j * self.width + i;
                if layers[idx] != L_NONE {
                    return vec![idx];
                }
                // just outside the disk: use the antipodal pixel
                self.antipode(idx).filter(|&a| layers[a] != L_NONE).into_iter().collect()
            }
            Model::Strip => {
                let i = (math::floor(p.angle1() / PI * self.width as f64) as usize).min(self.width - 1);
                (0..self.height).filter(|&j| self.strip_band(j) == 0).map(|j| j * self.width + i).collect()
            }
        }
    }
}

/// Sequential render.
pub fn render_scene(scene: Scene<'_>, size: usize) -> Result<RasterImage> {
    let plan = RenderPlan::new(scene, size)?;
    let mut pixels = vec![TRANSPARENT; plan.width * plan.height];
    let mut layers = vec![L_NONE; plan.width * plan.height];
    for (j, (row, lrow)) in pixels.chunks_mut(plan.width).zip(layers.chunks_mut(plan.width)).enumerate() {
        plan.render_row(j, row, lrow);
    }
    Ok(plan.finish(pixels, layers))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_center_point() {
        let a = PointCloud::singleton(ProjPoint::new(&[1.0, 0.0, 0.0]).unwrap());
        let cols = [0u8];
        let scene = Scene { attractor: Some(&a), colors: Some(&cols), ..Scene::new(Dim::Two, 1) };
        let img = render_scene(scene, 64).unwrap();
        let red = map_color(0, 1);
        assert_eq!(red, [255, 0, 0, 255]);
        let hits: Vec<usize> = (0..img.pixels.len()).filter(|&k| img.pixels[k] == red).collect();
        assert_eq!(hits, vec![32 * 64 + 32]);
        assert_eq!(img.pixel(0, 0), TRANSPARENT);
    }

    #[test]
    fn rim_points_are_glued() {
        let pts: Vec<ProjPoint> = (0..90).map(|k| {
            let t = PI * k as f64 / 90.0;
            ProjPoint::new(&[0.0, math::cos(t), math::sin(t)]).unwrap()
        }).collect();
        let cols: Vec<u8> = (0..90).map(|k| (k % 3) as u8).collect();
        let a = PointCloud::new(Dim::Two, pts).unwrap();
        let scene = Scene { attractor: Some(&a), colors: Some(&cols), ..Scene::new(Dim::Two, 3) };
        let img = render_scene(scene, 101).unwrap();
        let w = img.width;
        let plan = RenderPlan::new(scene, 101).unwrap();
        let mut layers = vec![0u8; w * w];
        for j in 0..w {
            for i in 0..w {
                layers[j * w + i] = if plan.pixel_point(i, j).is_some() { 1 } else { 0 };
            }
        }
        for idx in 0..w * w {
            if plan.is_rim(&layers, idx) {
                let a = plan.antipode(idx).unwrap();
                if layers[a] != 0 {
                    assert_eq!(img.pixels[idx], img.pixels[a]);
                }
            }
        }
    }

    #[test]
    fn size_limit() {
        let scene = Scene::new(Dim::Two, 1);
        assert!(matches!(render_scene(scene, MAX_SIDE + 1), Err(Error::SizeLimit { .. })));
    }
}
