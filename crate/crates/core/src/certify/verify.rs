use alloc::vec::Vec;

use super::graph::{cycle_type_check, pairs};
use super::search::{within_body_scale, SearchBudget};
use super::Certificate;
use crate::convex::{containment_margin, contraction_factor, contraction_margin, MARGIN_FLOOR};
use crate::engine::Ifs;
use crate::Result;

/// One recomputed condition. `margin` is positive exactly when it holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub lambda_star: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &'static str, margin: f64) -> Check {
    Check { name, passed: margin > 0.0, margin }
}

fn min_separation(bodies: &[crate::convex::ConvexBody]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            m = m.min(bodies[i].separation(&bodies[j]).unwrap_or(f64::NEG_INFINITY));
        }
    }
    m
}

/// Recomputes every condition of the certificate from scratch against `f`.
pub fn verify_certificate(f: &Ifs, cert: &Certificate) -> Result<VerificationReport> {
    let n = cert.bodies.len();
    let k = f.len();
    let mut checks = Vec::new();

    let shape_ok = n > 0
        && cert.hat_bodies.len() == n
        && cert.edge_map.len() == k
        && cert.edge_map.iter().all(|r| r.len() == n && r.iter().all(|&j| j < n))
        && cert.bodies.iter().chain(&cert.hat_bodies).all(|b| b.dim() == f.dim() && !b.is_degenerate());
    checks.push(check("structure", if shape_ok { 1.0 } else { -1.0 }));
    if !shape_ok {
        return Ok(VerificationReport { checks, lambda_star: cert.lambda_star() });
    }

    // separations are +inf for a single body
    checks.push(check("disjoint", min_separation(&cert.bodies) - MARGIN_FLOOR));
    checks.push(check("disjoint-hat", min_separation(&cert.hat_bodies) - MARGIN_FLOOR));

    let mut contain = f64::INFINITY;
    let mut contain_hat = f64::INFINITY;
    let mut beta_drift: f64 = 0.0;
    let mut beta_min = f64::INFINITY;
    let mut alpha: f64 = 0.0;
    for (m, g) in f.maps().iter().enumerate() {
        for i in 0..n {
            let j = cert.edge_map[m][i];
            contain = contain.min(containment_margin(g, &cert.bodies[i], &cert.bodies[j]).unwrap_or(f64::NEG_INFINITY));
            contain_hat = contain_hat.min(containment_margin(g, &cert.hat_bodies[i], &cert.hat_bodies[j]).unwrap_or(f64::NEG_INFINITY));
            match contraction_margin(&cert.bodies[i], &cert.bodies[j], g, cert.hat_eps) {
                Ok(b) => {
                    beta_min = beta_min.min(b);
                    beta_drift = beta_drift.max((b - cert.betas[m][i]).abs());
                }
                Err(_) => beta_min = f64::NEG_INFINITY,
            }
            match contraction_factor(&cert.bodies[i], &cert.bodies[j], g, cert.hat_eps) {
                Ok(a) => alpha = alpha.max(a),
                Err(_) => alpha = f64::INFINITY,
            }
        }
    }
    checks.push(check("containment", contain - MARGIN_FLOOR));
    checks.push(check("containment-hat", contain_hat - MARGIN_FLOOR));
    checks.push(check("beta", beta_min.min(1e-9 - beta_drift)));
    checks.push(check("alpha", (1.0 - alpha).min(1e-12 + cert.alpha - alpha)));

    let cyc = cycle_type_check(n, &cert.edge_map);
    checks.push(check("cycle-type", if cyc.is_ok() { 1.0 } else { -1.0 }));

    // graph metric: values in [2, 4] and every map contracts it by s < 1
    let gm = &cert.graph;
    let mut graph_margin = 1.0 - gm.s;
    if gm.n != n {
        graph_margin = -1.0;
    } else {
        for (a, b) in pairs(n) {
            let d = gm.get(a, b);
            let in_range = (2.0..=4.0).contains(&d) && gm.get(b, a) == d;
            graph_margin = graph_margin.min(if in_range { 1.0 } else { -1.0 });
            for row in &cert.edge_map {
                let (fa, fb) = (row[a], row[b]);
                if fa != fb {
                    graph_margin = graph_margin.min(gm.s * d - gm.get(fa, fb) + 1e-12);
                }
            }
        }
    }
    checks.push(check("graph-metric", graph_margin));

    let budget = SearchBudget { boundary_samples: 0, ..SearchBudget::default() };
    let sup = within_body_scale(&cert.bodies, &cert.hat_bodies, &budget)? / 1.1;
    checks.push(check("scale", cert.j_scale - sup));

    Ok(VerificationReport { checks, lambda_star: cert.lambda_star() })
}
