use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cluster::Hierarchy;
use super::graph::{build_graph_metric, cycle_type_check};
use super::Certificate;
use crate::convex::{contraction_factor, contraction_margin, hilbert_distance, hull, Chart, ConvexBody, Vec2, MARGIN_FLOOR};
use crate::engine::{attractor_estimate, chaos_game, find_avoided_hyperplane, AttractorEstimate, AttractorParams, Ifs, PointCloud};
use crate::projcore::{Dim, Hyperplane, ProjPoint};
use crate::{Error, Result, Stage};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub attractor: AttractorParams,
    pub seed: u64,
    /// Chaos-game points used to seed the deterministic iteration.
    pub chaos_points: usize,
    pub burn_in: usize,
    /// Highest clustering level tried.
    pub max_level: usize,
    /// Halvings of the inflation radius per level.
    pub halvings: usize,
    pub merge_rounds: usize,
    /// Random boundary pairs per body when estimating `J`.
    pub boundary_samples: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            attractor: AttractorParams::default(),
            seed: 42,
            chaos_points: 2000,
            burn_in: 1000,
            max_level: 32,
            halvings: 20,
            merge_rounds: 10,
            boundary_samples: 1000,
        }
    }
}

/// A generic starting point for the chaos game.
pub fn default_start(dim: Dim) -> ProjPoint {
    match dim {
        Dim::One => ProjPoint::new(&[0.3, 0.7]).expect("nonzero"),
        Dim::Two => ProjPoint::new(&[0.6, 0.3, 0.2]).expect("nonzero"),
    }
}

/// Attractor estimate seeded by a chaos-game cloud.
pub fn seeded_attractor(f: &Ifs, budget: &SearchBudget) -> Result<AttractorEstimate> {
    let init = chaos_game(f, budget.seed, budget.chaos_points, budget.burn_in, &default_start(f.dim()))?;
    attractor_estimate(f, &budget.attractor, &init.cloud)
}

/// Runs the whole search: attractor, avoided hyperplane, clustering, bodies,
/// containment, cycle check, metric.
pub fn find_certificate(f: &Ifs, budget: &SearchBudget) -> Result<Certificate> {
    let est = seeded_attractor(f, budget)?;
    find_certificate_from(f, &est, budget)
}

struct Failure {
    stage: Stage,
    detail: String,
}

fn rank(s: Stage) -> u8 {
    match s {
        Stage::Attractor => 0,
        Stage::AvoidedHyperplane => 1,
        Stage::Clustering => 2,
        Stage::Containment => 3,
        Stage::CycleType => 4,
        Stage::Metric => 5,
    }
}

/// The search from an attractor estimate computed elsewhere.
pub fn find_certificate_from(f: &Ifs, est: &AttractorEstimate, budget: &SearchBudget) -> Result<Certificate> {
    if !est.converged {
        return Err(Error::NoCertificateFound {
            stage: Stage::Attractor,
            diagnostics: format!(
                "attractor estimate did not converge ({} iterations, {} points, last delta {:e})",
                est.iterations,
                est.cloud.len(),
                est.last_delta
            ),
        });
    }
    let cloud = &est.cloud;
    let Some(h) = find_avoided_hyperplane(cloud) else {
        return Err(Error::NoCertificateFound {
            stage: Stage::AvoidedHyperplane,
            diagnostics: format!("no hyperplane with clearance above the floor among {} points", cloud.len()),
        });
    };
    let chart = Chart::new(h);
    let pts: Vec<Vec2> = cloud.points().iter().map(|p| chart.to_chart(p)).collect::<Result<_>>()?;
    let hier = Hierarchy::new(cloud, &chart)?;
    let top = budget.max_level.min(hier.max_level());
    let mut worst: Option<Failure> = None;
    let mut note = |fail: Failure| {
        if worst.as_ref().map_or(true, |w| rank(fail.stage) >= rank(w.stage)) {
            worst = Some(fail);
        }
    };
    // separated clusters first, the whole cloud last
    for level in (1..=top).chain(core::iter::once(0)) {
        let (labels, count) = hier.labels(level);
        let mut groups: Vec<Vec<Vec2>> = vec![Vec::new(); count];
        for (w, &l) in pts.iter().zip(&labels) {
            groups[l].push(*w);
        }
        let raw: Vec<ConvexBody> = groups.iter().map(|g| ConvexBody::from_chart_points(h, g)).collect::<Result<_>>()?;
        match try_level(f, h, &raw, level, budget) {
            Ok(cert) => return Ok(cert),
            Err(fail) => note(fail),
        }
    }
    let fail = worst.unwrap_or(Failure { stage: Stage::Clustering, detail: String::from("no clustering level to try") });
    Err(Error::NoCertificateFound { stage: fail.stage, diagnostics: fail.detail })
}

fn initial_eps(raw: &[ConvexBody]) -> f64 {
    let d = raw.iter().map(ConvexBody::diameter).fold(0.0, f64::max);
    if d > 0.0 {
        0.05 * d
    } else {
        1e-2
    }
}

fn try_level(f: &Ifs, h: Hyperplane, raw: &[ConvexBody], level: usize, budget: &SearchBudget) -> core::result::Result<Certificate, Failure> {
    let eps0 = initial_eps(raw);
    let mut worst: Option<Failure> = None;
    for halving in 0..=budget.halvings {
        let eps = eps0 / (1u64 << halving) as f64;
        let attempt = (|| {
            let bodies = merge_bodies(h, raw, eps, budget.merge_rounds)?;
            let edge_map = edge_map(f, &bodies)?;
            if let Err(w) = cycle_type_check(bodies.len(), &edge_map) {
                return Err(Failure { stage: Stage::CycleType, detail: format!("pair graph cycle {:?}", w.cycle) });
            }
            finish(f, h, bodies, edge_map, level, eps, budget)
        })();
        match attempt {
            Ok(c) => return Ok(c),
            Err(fail) => {
                let detail = format!("level {level}, eps {eps:e}: {}", fail.detail);
                if worst.as_ref().map_or(true, |w| rank(fail.stage) >= rank(w.stage)) {
                    worst = Some(Failure { stage: fail.stage, detail });
                }
            }
        }
    }
    Err(worst.expect("at least one attempt"))
}

/// Inflates the raw hulls and merges overlapping ones until none overlap.
fn merge_bodies(h: Hyperplane, raw: &[ConvexBody], eps: f64, rounds: usize) -> core::result::Result<Vec<ConvexBody>, Failure> {
    let err = |e: Error| Failure { stage: Stage::Clustering, detail: format!("{e}") };
    let mut cores: Vec<ConvexBody> = raw.to_vec();
    for _ in 0..rounds {
        let bodies: Vec<ConvexBody> = cores.iter().map(|c| c.inflate(eps)).collect::<Result<_>>().map_err(err)?;
        let n = bodies.len();
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                x = root[x];
            }
            x
        }
        let mut merged = false;
        for i in 0..n {
            for j in i + 1..n {
                let gap = bodies[i].separation(&bodies[j]).unwrap_or(f64::NEG_INFINITY);
                if !(gap > MARGIN_FLOOR) {
                    let (a, b) = (find(&mut root, i), find(&mut root, j));
                    if a != b {
                        root[a.max(b)] = a.min(b);
                        merged = true;
                    }
                }
            }
        }
        if !merged {
            return Ok(bodies);
        }
        let mut groups: Vec<Vec<Vec2>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = find(&mut root, i);
            groups[r].extend(cores[i].vertices());
        }
        cores = groups
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(|g| ConvexBody::from_chart_points(h, &g))
            .collect::<Result<_>>()
            .map_err(err)?;
    }
    Err(Failure { stage: Stage::Clustering, detail: format!("merging did not settle in {rounds} rounds") })
}

/// Image vertices of `f_m(C_i)` in the common chart.
fn images(f: &Ifs, bodies: &[ConvexBody]) -> Result<Vec<Vec<Vec<Vec2>>>> {
    let chart = *bodies[0].chart();
    f.maps().iter().map(|g| bodies.iter().map(|b| b.image_in(g, &chart)).collect()).collect()
}

fn depth(body: &ConvexBody, pts: &[Vec2]) -> f64 {
    let mut m = f64::INFINITY;
    for &w in pts {
        m = m.min(body.margin_chart(w));
        if m < MARGIN_FLOOR {
            break;
        }
    }
    m
}

fn edge_map(f: &Ifs, bodies: &[ConvexBody]) -> core::result::Result<Vec<Vec<usize>>, Failure> {
    let imgs = images(f, bodies).map_err(|e| Failure { stage: Stage::Containment, detail: format!("{e}") })?;
    let mut map = vec![vec![0; bodies.len()]; f.len()];
    for (m, row) in imgs.iter().enumerate() {
        for (i, pts) in row.iter().enumerate() {
            let target = bodies.iter().position(|b| depth(b, pts) >= MARGIN_FLOOR);
            match target {
                Some(j) => map[m][i] = j,
                None => {
                    return Err(Failure {
                        stage: Stage::Containment,
                        detail: format!("map {} sends body {} into no single body's interior", m + 1, i + 1),
                    })
                }
            }
        }
    }
    Ok(map)
}

fn disjoint(bodies: &[ConvexBody]) -> bool {
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            if !(bodies[i].separation(&bodies[j]).unwrap_or(f64::NEG_INFINITY) > MARGIN_FLOOR) {
                return false;
            }
        }
    }
    true
}

fn finish(
    f: &Ifs,
    h: Hyperplane,
    bodies: Vec<ConvexBody>,
    edge_map: Vec<Vec<usize>>,
    level: usize,
    eps: f64,
    budget: &SearchBudget,
) -> core::result::Result<Certificate, Failure> {
    let metric_err = |detail: String| Failure { stage: Stage::Metric, detail };
    // Ĉ: a further inflation that keeps the bodies disjoint and the edges strict
    let mut found = None;
    for k in 0..=budget.halvings {
        let he = eps / 4.0 / (1u64 << k) as f64;
        let Ok(hat) = bodies.iter().map(|b| b.inflate(he)).collect::<Result<Vec<_>>>() else { continue };
        if !disjoint(&hat) {
            continue;
        }
        let Ok(imgs) = images(f, &hat) else { continue };
        let ok = imgs.iter().enumerate().all(|(m, row)| row.iter().enumerate().all(|(i, pts)| depth(&hat[edge_map[m][i]], pts) >= MARGIN_FLOOR));
        if ok {
            found = Some((he, hat));
            break;
        }
    }
    let Some((hat_eps, hat_bodies)) = found else {
        return Err(metric_err(String::from("no inflation keeps the edges strict")));
    };
    let mut betas = vec![vec![0.0; bodies.len()]; f.len()];
    let mut factors = vec![vec![0.0; bodies.len()]; f.len()];
    let mut alpha: f64 = 0.0;
    for (m, g) in f.maps().iter().enumerate() {
        for i in 0..bodies.len() {
            let j = edge_map[m][i];
            let beta = contraction_margin(&bodies[i], &bodies[j], g, hat_eps).map_err(|e| metric_err(format!("{e}")))?;
            let fac = contraction_factor(&bodies[i], &bodies[j], g, hat_eps).map_err(|e| metric_err(format!("{e}")))?;
            betas[m][i] = beta;
            factors[m][i] = fac;
            alpha = alpha.max(fac);
        }
    }
    let graph = build_graph_metric(bodies.len(), &edge_map).map_err(|e| metric_err(format!("{e}")))?;
    let j_scale = within_body_scale(&bodies, &hat_bodies, budget).map_err(|e| metric_err(format!("{e}")))?;
    Ok(Certificate { avoided: h, bodies, hat_eps, hat_bodies, edge_map, betas, factors, alpha, graph, j_scale, level, eps })
}

/// `1.1 · max_k sup_{x,y ∈ C_k} d_{Ĉ_k}(x, y)`. The sup over a polytope is
/// attained at a vertex pair (Hilbert balls are convex); random boundary
/// pairs are added on top.
pub(crate) fn within_body_scale(bodies: &[ConvexBody], hat: &[ConvexBody], budget: &SearchBudget) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x4a5f_3c1d);
    let mut sup: f64 = 0.0;
    for (b, hb) in bodies.iter().zip(hat) {
        let v = b.vertex_points();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                sup = sup.max(hilbert_distance(hb, &v[i], &v[j])?);
            }
        }
        if let crate::convex::Shape::Polygon(_) = b.shape() {
            for _ in 0..budget.boundary_samples {
                let x = b.boundary_point(rng.gen::<f64>());
                let y = b.boundary_point(rng.gen::<f64>());
                sup = sup.max(hilbert_distance(hb, &x, &y)?);
            }
        }
    }
    Ok(if sup > 0.0 { 1.1 * sup } else { 1.0 })
}

#[allow(dead_code)]
fn cloud_spread(cloud: &PointCloud, chart: &Chart) -> f64 {
    let pts: Vec<Vec2> = cloud.points().iter().filter_map(|p| chart.to_chart(p).ok()).collect();
    hull::diameter(&hull::convex_hull(&pts))
}
