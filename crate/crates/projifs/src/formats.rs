//! Text point clouds, PGM masks and PNG encoding.

use std::fmt::Write as _;

use projifs_core::basin::BasinMask;
use projifs_core::duality::HyperplaneCloud;
use projifs_core::engine::PointCloud;
use projifs_core::render::RasterImage;
use projifs_core::{Dim, ProjPoint};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("png encoding failed: {0}")]
    Png(String),
}

const MAGIC: &str = "# projifs point cloud";

fn write_points(out: &mut String, cloud: &PointCloud) {
    writeln!(out, "dim {}", cloud.dim().n()).unwrap();
    writeln!(out, "count {}", cloud.len()).unwrap();
    for p in cloud.points() {
        let line: Vec<String> = p.coords().iter().map(|x| format!("{x:.16e}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

/// One point per line, 17 significant digits.
pub fn cloud_to_text(cloud: &PointCloud) -> String {
    let mut out = String::from(MAGIC);
    out.push('\n');
    write_points(&mut out, cloud);
    out
}

/// Same layout with a `dual` line: each point is a hyperplane normal.
pub fn hyperplanes_to_text(h: &HyperplaneCloud) -> String {
    let mut out = String::from(MAGIC);
    out.push_str("\ndual\n");
    write_points(&mut out, h.normals());
    out
}

pub enum ParsedCloud {
    Points(PointCloud),
    Hyperplanes(HyperplaneCloud),
}

pub fn parse_cloud(text: &str) -> Result<ParsedCloud, FormatError> {
    let err = |line: usize, m: &str| FormatError::Syntax { line, message: m.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        Some((n, _)) => return Err(err(n, "missing header")),
        None => return Err(err(1, "empty input")),
    }
    let mut dual = false;
    let (mut n, mut l) = lines.next().ok_or_else(|| err(2, "missing dim"))?;
    if l == "dual" {
        dual = true;
        (n, l) = lines.next().ok_or_else(|| err(n + 1, "missing dim"))?;
    }
    let dim = match l.strip_prefix("dim ").map(str::trim) {
        Some("1") => Dim::One,
        Some("2") => Dim::Two,
        _ => return Err(err(n, "expected `dim 1` or `dim 2`")),
    };
    let (n, l) = lines.next().ok_or_else(|| err(n + 1, "missing count"))?;
    let count: usize = l.strip_prefix("count ").and_then(|c| c.trim().parse().ok()).ok_or_else(|| err(n, "expected `count N`"))?;
    let mut pts = Vec::with_capacity(count);
    for (n, l) in lines {
        let xs: Vec<f64> = l.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| err(n, "bad number"))?;
        if xs.len() != dim.len() {
            return Err(err(n, "wrong number of coordinates"));
        }
        pts.push(ProjPoint::new(&xs).map_err(|e| err(n, &e.to_string()))?);
    }
    if pts.len() != count {
        return Err(err(0, &format!("expected {count} points, found {}", pts.len())));
    }
    let cloud = if pts.is_empty() { PointCloud::empty(dim) } else { PointCloud::new(dim, pts).map_err(|e| err(0, &e.to_string()))? };
    Ok(if dual { ParsedCloud::Hyperplanes(HyperplaneCloud::new(cloud)) } else { ParsedCloud::Points(cloud) })
}

/// Binary PGM of the basin: black where excluded, grey levels per component.
pub fn basin_to_pgm(mask: &BasinMask) -> Vec<u8> {
    let (w, h) = (mask.grid.width(), mask.grid.height());
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    let comps = mask.components.max(1) as u32;
    for (idx, cell) in mask.grid.cells().iter().enumerate() {
        let v = match (cell, mask.labels[idx]) {
            (None, _) => 0u8,
            (Some(_), l) if l == projifs_core::basin::NO_LABEL => 0,
            (Some(_), l) => (96 + (159 * (l + 1)) / comps) as u8,
        };
        out.push(v);
    }
    out
}

pub fn encode_png(img: &RasterImage) -> Result<Vec<u8>, FormatError> {
    use image::ImageEncoder;
    let mut buf = Vec::new();
    image::codecs::png::PngEncoder::new(&mut buf)
        .write_image(&img.as_bytes(), img.width as u32, img.height as u32, image::ExtendedColorType::Rgba8)
        .map_err(|e| FormatError::Png(e.to_string()))?;
    Ok(buf)
}
