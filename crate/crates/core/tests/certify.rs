use std::time::Instant;

use projifs_core::certify::*;
use projifs_core::engine::Ifs;
use projifs_core::{fixtures, Error, ProjPoint, Stage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn certify(name: &str, f: &Ifs) -> projifs_core::Result<Certificate> {
    let t = Instant::now();
    let r = find_certificate(f, &SearchBudget::default());
    match &r {
        Ok(c) => eprintln!(
            "{name}: {} bodies, level {}, alpha {:.4}, s {:.4}, lambda* {:.4}, J {:.3} in {:?}",
            c.bodies.len(),
            c.level,
            c.alpha,
            c.graph.s,
            c.lambda_star(),
            c.j_scale,
            t.elapsed()
        ),
        Err(e) => eprintln!("{name}: {e} in {:?}", t.elapsed()),
    }
    r
}

fn assert_verified(f: &Ifs, c: &Certificate) {
    let rep = verify_certificate(f, c).unwrap();
    for ch in &rep.checks {
        assert!(ch.passed, "{} failed with margin {:e}", ch.name, ch.margin);
    }
    assert!(rep.lambda_star < 1.0);
}

#[test]
fn mirror_pair_has_two_bodies() {
    let f = fixtures::mirror_pair();
    let c = certify("mirror_pair", &f).unwrap();
    assert_eq!(c.bodies.len(), 2);
    assert_eq!(c.graph.get(0, 1), 2.0);
    assert_verified(&f, &c);
}

#[test]
fn positive_fixtures_certify() {
    let mut cases: Vec<(String, Ifs)> = vec![
        ("single_map".into(), fixtures::single_map()),
        ("conjugate_pair".into(), fixtures::conjugate_pair()),
        ("cantor_p1".into(), fixtures::cantor_p1()),
        ("gasket_p2".into(), fixtures::gasket_p2()),
    ];
    for m in 2..=5 {
        cases.push((format!("ladder M={m}"), fixtures::ladder(m, 10.0)));
    }
    for t in [0.0, 1.0, 2.0] {
        cases.push((format!("family t={t}"), fixtures::family(t)));
    }
    for (name, f) in &cases {
        let c = certify(name, f).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_verified(f, &c);
    }
}

#[test]
fn ladder_bodies_match_maps() {
    for m in 2..=5 {
        let f = fixtures::ladder(m, 10.0);
        let c = certify("ladder", &f).unwrap();
        assert_eq!(c.bodies.len(), m);
        assert!(c.graph.s < 1.0);
    }
}

#[test]
fn rotation_fails_at_attractor_stage() {
    let th = 0.3f64;
    let f = Ifs::from_matrices(&[&[th.cos(), -th.sin(), th.sin(), th.cos()]]).unwrap();
    match find_certificate(&f, &SearchBudget { attractor: projifs_core::engine::AttractorParams { max_iter: 50, ..Default::default() }, ..Default::default() }) {
        Err(Error::NoCertificateFound { stage, .. }) => assert_eq!(stage, Stage::Attractor),
        other => panic!("unexpected {other:?}"),
    }
}

fn random_point(c: &Certificate, rng: &mut ChaCha8Rng) -> ProjPoint {
    let b = &c.bodies[rng.gen_range(0..c.bodies.len())];
    let w: Vec<f64> = (0..b.vertices().len()).map(|_| rng.gen::<f64>().powi(4)).collect();
    b.point_from_weights(&w)
}

fn audit(f: &Ifs, c: &Certificate, pairs: usize) {
    let lam = c.lambda_star();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..pairs {
        let x = random_point(c, &mut rng);
        let y = random_point(c, &mut rng);
        let d = combined_metric(c, &x, &y).unwrap();
        for g in f.maps() {
            let e = combined_metric(c, &g.apply(&x), &g.apply(&y)).unwrap();
            assert!(e <= lam * d + 1e-9, "{e} > {lam} * {d}");
        }
    }
}

#[test]
fn combined_metric_contracts() {
    let f = fixtures::mirror_pair();
    let c = find_certificate(&f, &SearchBudget::default()).unwrap();
    audit(&f, &c, 2000);
    let f = fixtures::ladder(4, 10.0);
    let c = find_certificate(&f, &SearchBudget::default()).unwrap();
    audit(&f, &c, 2000);
    let pole = ProjPoint::p1(0.0);
    assert!(matches!(combined_metric(&c, &pole, &pole), Err(Error::OutsideCertificate)));
}
