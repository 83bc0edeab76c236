//! Static kd-tree for exact nearest-neighbour queries in the round metric.
//!
//! Every point is stored with both unit representatives `±p`, so the
//! Euclidean nearest neighbour among them realizes `min(|p-q|, |p+q|)`.

use alloc::vec::Vec;

use crate::math;
use crate::projcore::ProjPoint;

const LEAF: usize = 8;

#[derive(Debug, Clone)]
pub struct NearestIndex {
    pts: Vec<([f64; 3], u32)>,
    axis: Vec<u8>,
}

#[inline]
fn dist2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let d0 = a[0] - b[0];
    let d1 = a[1] - b[1];
    let d2 = a[2] - b[2];
    d0 * d0 + d1 * d1 + d2 * d2
}

impl NearestIndex {
    pub fn new(points: &[ProjPoint]) -> NearestIndex {
        let mut pts = Vec::with_capacity(2 * points.len());
        for (i, p) in points.iter().enumerate() {
            let c = *p.raw();
            pts.push((c, i as u32));
            pts.push(([-c[0], -c[1], -c[2]], i as u32));
        }
        let n = pts.len();
        let mut tree = NearestIndex { pts, axis: alloc::vec![0; n] };
        tree.build(0, n);
        tree
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    fn build(&mut self, lo: usize, hi: usize) {
        if hi - lo <= LEAF {
            return;
        }
        let mut mn = [f64::INFINITY; 3];
        let mut mx = [f64::NEG_INFINITY; 3];
        for (p, _) in &self.pts[lo..hi] {
            for i in 0..3 {
                mn[i] = mn[i].min(p[i]);
                mx[i] = mx[i].max(p[i]);
            }
        }
        let mut ax = 0;
        for i in 1..3 {
            if mx[i] - mn[i] > mx[ax] - mn[ax] {
                ax = i;
            }
        }
        let mid = (lo + hi) / 2;
        self.pts[lo..hi].select_nth_unstable_by(mid - lo, |a, b| a.0[ax].total_cmp(&b.0[ax]).then(a.1.cmp(&b.1)));
        self.axis[mid] = ax as u8;
        self.build(lo, mid);
        self.build(mid + 1, hi);
    }

    fn search(&self, lo: usize, hi: usize, q: &[f64; 3], best: &mut (f64, u32)) {
        if hi - lo <= LEAF {
            for (p, i) in &self.pts[lo..hi] {
                let d = dist2(p, q);
                if d < best.0 || (d == best.0 && *i < best.1) {
                    *best = (d, *i);
                }
            }
            return;
        }
        let mid = (lo + hi) / 2;
        let (p, i) = &self.pts[mid];
        let d = dist2(p, q);
        if d < best.0 || (d == best.0 && *i < best.1) {
            *best = (d, *i);
        }
        let ax = self.axis[mid] as usize;
        let diff = q[ax] - p[ax];
        let (first, second) = if diff < 0.0 { ((lo, mid), (mid + 1, hi)) } else { ((mid + 1, hi), (lo, mid)) };
        self.search(first.0, first.1, q, best);
        if diff * diff <= best.0 {
            self.search(second.0, second.1, q, best);
        }
    }

    /// Index (into the input slice) and round distance of the nearest
    /// stored point; ties go to the lower index.
    pub fn nearest(&self, q: &ProjPoint) -> (usize, f64) {
        let mut best = (f64::INFINITY, u32::MAX);
        self.search(0, self.pts.len(), q.raw(), &mut best);
        (best.1 as usize, math::sqrt(best.0).min(core::f64::consts::SQRT_2))
    }

    /// Round distance from `q` to the nearest stored point.
    pub fn nearest_distance(&self, q: &ProjPoint) -> f64 {
        self.nearest(q).1
    }
}
