use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cloud::PointCloud;
use super::ifs::Ifs;
use crate::projcore::ProjPoint;
use crate::Result;

/// Orbit points with the index of the map that produced each one.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosCloud {
    pub cloud: PointCloud,
    pub last_map: Vec<u8>,
}

/// Random iteration with uniform, independent map choices. The first
/// `burn_in` iterates are discarded.
pub fn chaos_game(f: &Ifs, seed: u64, n_points: usize, burn_in: usize, start: &ProjPoint) -> Result<ChaosCloud> {
    f.dim().check(start.dim())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = f.len();
    let mut p = *start;
    for _ in 0..burn_in {
        p = f.apply(rng.gen_range(0..m), &p);
    }
    let mut pts = Vec::with_capacity(n_points);
    let mut last = Vec::with_capacity(n_points);
    for _ in 0..n_points {
        let k = rng.gen_range(0..m);
        p = f.apply(k, &p);
        pts.push(p);
        last.push(k as u8);
    }
    Ok(ChaosCloud { cloud: PointCloud::new(f.dim(), pts)?, last_map: last })
}
