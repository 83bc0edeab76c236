//! Hilbert metric of a convex body and the margins that bound how much a
//! projective map contracts it.

use super::hull::{self, edge_halfplanes, Vec2};
use super::{ConvexBody, Shape, MARGIN_FLOOR};
use crate::math;
use crate::projcore::{ProjMap, ProjPoint};
use crate::{Error, Result};

/// Parameter range `(t_min, t_max)` of the chord `x + t(y - x)` inside the body.
fn chord_range(c: &ConvexBody, x: Vec2, y: Vec2) -> (f64, f64) {
    let d = hull::sub(y, x);
    let mut tmin = f64::NEG_INFINITY;
    let mut tmax = f64::INFINITY;
    let mut clip = |nd: f64, slack: f64| {
        if nd > 0.0 {
            tmax = tmax.min(slack / nd);
        } else if nd < 0.0 {
            tmin = tmin.max(slack / nd);
        }
    };
    match c.shape() {
        Shape::Interval { lo, hi } => {
            clip(d[0], hi - x[0]);
            clip(-d[0], x[0] - lo);
        }
        Shape::Polygon(v) => {
            for (n, off) in edge_halfplanes(v) {
                clip(n[0] * d[0] + n[1] * d[1], off - (n[0] * x[0] + n[1] * x[1]));
            }
        }
    }
    (tmin, tmax)
}

/// `d_C(x, y) = log(|ay||bx| / (|ax||by|))` along the chord `a, x, y, b`.
pub fn hilbert_distance(c: &ConvexBody, x: &ProjPoint, y: &ProjPoint) -> Result<f64> {
    let wx = c.chart().to_chart(x)?;
    let wy = c.chart().to_chart(y)?;
    if !(c.margin_chart(wx) > 0.0) || !(c.margin_chart(wy) > 0.0) {
        return Err(Error::NotInInterior);
    }
    if wx == wy {
        return Ok(0.0);
    }
    let (tmin, tmax) = chord_range(c, wx, wy);
    if !(tmin < 0.0 && tmax > 1.0) || !tmin.is_finite() || !tmax.is_finite() {
        return Err(Error::DegenerateChord);
    }
    // log((1 - tmin)/(-tmin)) + log(tmax/(tmax - 1)), each as log1p
    Ok(math::ln_1p(-1.0 / tmin) + math::ln_1p(1.0 / (tmax - 1.0)))
}

/// Chart distance from `f(Ĉ_in)` to the boundary of `Ĉ_out`, where `Ĉ` is
/// the `eps`-inflation.
pub fn contraction_margin(c_in: &ConvexBody, c_out: &ConvexBody, f: &ProjMap, eps: f64) -> Result<f64> {
    let (beta, _) = margin_and_image_diameter(c_in, c_out, f, eps)?;
    Ok(beta)
}

fn margin_and_image_diameter(c_in: &ConvexBody, c_out: &ConvexBody, f: &ProjMap, eps: f64) -> Result<(f64, f64)> {
    let a = c_in.inflate(eps)?;
    let b = c_out.inflate(eps)?;
    let pts = a.image_in(f, b.chart())?;
    let beta = pts.iter().map(|&w| b.margin_chart(w)).fold(f64::INFINITY, f64::min);
    if !(beta >= MARGIN_FLOOR) {
        return Err(Error::NoStrictContainment { margin: beta });
    }
    Ok((beta, hull::diameter(&pts)))
}

/// Upper bound on the Hilbert-metric contraction of `f: Ĉ_in -> Ĉ_out`.
///
/// The margin is measured relative to the image diameter `D`, which makes
/// it chart independent: along any chord the image occupies at most `D`
/// with at least `β` to spare on each side, so the Birkhoff factor is at most
/// `D / (D + 2β) ≤ 1 / (1 + β/D)`.
pub fn contraction_factor(c_in: &ConvexBody, c_out: &ConvexBody, f: &ProjMap, eps: f64) -> Result<f64> {
    let (beta, diam) = margin_and_image_diameter(c_in, c_out, f, eps)?;
    if diam == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (1.0 + beta / diam))
}

/// The three quantities of the chain inequality behind the contraction
/// bound, for `r ≥ α ≥ 0`, `t ≥ α`, `0 < s ≤ h < 1`:
/// `log((r+h)(t+s')/((r+s)(t+h')))`, `log((α+h)(α+s')/((α+s)(α+h')))` and
/// `log(hs'/(sh'))/(α+1)`, with `s' = 1-s`, `h' = 1-h`. The first is at most
/// the second, which is at most the third.
pub fn chain_inequality(r: f64, t: f64, s: f64, h: f64, alpha: f64) -> (f64, f64, f64) {
    let (sp, hp) = (1.0 - s, 1.0 - h);
    let lhs = math::ln((r + h) * (t + sp) / ((r + s) * (t + hp)));
    let mid = math::ln((alpha + h) * (alpha + sp) / ((alpha + s) * (alpha + hp)));
    let rhs = math::ln(h * sp / (s * hp)) / (alpha + 1.0);
    (lhs, mid, rhs)
}
