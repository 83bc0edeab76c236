use projifs_core::engine::*;
use projifs_core::fixtures;
use projifs_core::{Dim, Hyperplane, ProjMap, ProjPoint};

fn chart_values(c: &PointCloud) -> Vec<f64> {
    let mut v: Vec<f64> = c.points().iter().map(|p| p.affine1()).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn init_cloud(f: &Ifs, seed: u64) -> PointCloud {
    let start = match f.dim() {
        Dim::One => ProjPoint::new(&[0.3, 0.7]).unwrap(),
        Dim::Two => ProjPoint::new(&[0.6, 0.3, 0.2]).unwrap(),
    };
    chaos_game(f, seed, 2000, 1000, &start).unwrap().cloud
}

#[test]
fn image_of_mirror_pair_corners() {
    let f = fixtures::mirror_pair();
    let b = PointCloud::new(Dim::One, [-9.0, -2.0, 2.0, 9.0].map(ProjPoint::p1).to_vec()).unwrap();
    let img = ifs_image(&f, &b);
    assert_eq!(img.len(), 8);
    let got = chart_values(&img);
    let mut want = vec![4.5, 8.0, 8.0 / 3.0, 3.6, -4.5, -8.0, -8.0 / 3.0, -3.6];
    want.sort_by(f64::total_cmp);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() < 1e-12, "{g} vs {w}");
    }
    let single = Ifs::new(vec![f.maps()[0]]).unwrap();
    let one = ifs_image(&single, &PointCloud::singleton(ProjPoint::p1(-9.0)));
    assert_eq!(one.len(), 1);
}

#[test]
fn chaos_game_is_deterministic_and_finds_power_limit() {
    let f = fixtures::single_map();
    let start = ProjPoint::new(&[0.2, 1.0]).unwrap();
    let a = chaos_game(&f, 7, 500, 100, &start).unwrap();
    let b = chaos_game(&f, 7, 500, 100, &start).unwrap();
    assert_eq!(a, b);
    let e = ProjPoint::new(&[1.0, 0.0]).unwrap();
    assert!(a.cloud.points().iter().all(|p| p.approx_eq(&e, 1e-6)));
}

#[test]
fn rotating_line_chaos_cloud_lies_on_the_line() {
    let f = fixtures::rotating_line(1.0);
    let start = ProjPoint::new(&[0.5, 0.4, 0.3]).unwrap();
    let c = chaos_game(&f, 42, 20_000, 10_000, &start).unwrap();
    let worst = c.cloud.points().iter().map(|p| p.coords()[0].abs()).fold(0.0, f64::max);
    assert!(worst < 1e-4, "max |x| = {worst}");
}

#[test]
fn dense_line_avoids_no_hyperplane() {
    let n = 100_000;
    let pts = (0..n)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / n as f64;
            ProjPoint::new(&[0.0, t.cos(), t.sin()]).unwrap()
        })
        .collect();
    let line = PointCloud::new(Dim::Two, pts).unwrap();
    assert_eq!(find_avoided_hyperplane(&line), None);
}

#[test]
fn hausdorff_examples() {
    let a = PointCloud::singleton(ProjPoint::new(&[1.0, 0.0]).unwrap());
    let b = PointCloud::singleton(ProjPoint::new(&[0.0, 1.0]).unwrap());
    assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
    assert!((hausdorff(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    assert!(hausdorff(&a, &PointCloud::empty(Dim::One)).is_err());
    let mut ab = a.clone();
    ab.extend(&b);
    assert!(hausdorff(&a, &ab).unwrap() <= hausdorff(&a, &b).unwrap());
}

#[test]
fn kd_tree_and_brute_force_agree_exactly() {
    let f = fixtures::gasket_p2();
    let big = init_cloud(&f, 1);
    let mut many = big.clone();
    for s in 2..4 {
        many.extend(&chaos_game(&f, s, 2000, 10, &ProjPoint::new(&[1.0, 0.1, 0.1]).unwrap()).unwrap().cloud);
    }
    assert!(many.len() > BRUTE_FORCE_LIMIT);
    let tree = NearestIndex::new(many.points());
    for p in big.points().iter().take(300) {
        let brute = many.distance_to(p).unwrap();
        assert_eq!(tree.nearest_distance(p), brute);
    }
}

#[test]
fn fixed_points_of_diagonal_map() {
    let r = fixed_point_analysis(&ProjMap::from_rows2([[2.0, 0.0], [0.0, 1.0]]).unwrap());
    assert!(r.dominant);
    assert!(r.attractive_point.unwrap().approx_eq(&ProjPoint::new(&[1.0, 0.0]).unwrap(), 1e-12));
    let h = r.invariant_hyperplane.unwrap();
    assert!(h.normal().approx_eq(&ProjPoint::new(&[1.0, 0.0]).unwrap(), 1e-12));
    assert!(r.repulsive_point_p1().unwrap().approx_eq(&ProjPoint::p1(0.0), 1e-12));
}

#[test]
fn fixed_points_of_ladder_maps() {
    for m in 1..=5 {
        let f = ProjMap::from_rows2(fixtures::ladder_matrix(m, 10.0)).unwrap();
        let r = fixed_point_analysis(&f);
        assert!(r.dominant);
        assert!((r.attractive_point.unwrap().affine1() - m as f64).abs() < 1e-9);
        assert!((r.repulsive_point_p1().unwrap().affine1() - (m as f64 - 0.5)).abs() < 1e-9);
    }
}

#[test]
fn fixed_points_of_conjugate_pair_second_map() {
    let f = fixtures::conjugate_pair().maps()[1];
    let r = fixed_point_analysis(&f);
    assert!(r.dominant);
    assert!((r.attractive_point.unwrap().affine1() - 2.0 / 3.0).abs() < 1e-9);
    assert!((r.repulsive_point_p1().unwrap().affine1() - 0.5).abs() < 1e-9);
}

#[test]
fn rotation_has_no_dominant_eigenvalue() {
    let t: f64 = 0.7;
    let f = ProjMap::from_rows2([[t.cos(), -t.sin()], [t.sin(), t.cos()]]).unwrap();
    let r = fixed_point_analysis(&f);
    assert!(!r.dominant);
    assert!(r.attractive_point.is_none());
    assert!(r.moduli().iter().all(|m| (m - r.moduli()[0]).abs() < 1e-12));
}

#[test]
fn avoided_hyperplane_of_a_point() {
    let a = PointCloud::singleton(ProjPoint::new(&[1.0, 0.0]).unwrap());
    let (h, c) = best_avoided_hyperplane(&a).unwrap();
    assert!(c > 0.999);
    assert!(h.normal().approx_eq(&ProjPoint::new(&[1.0, 0.0]).unwrap(), 1e-3));
    // the hyperplane whose only point is (1,0) itself is the one to avoid
    let bad = Hyperplane::from_normal_coords(&[0.0, 1.0]).unwrap();
    assert!(clearance(bad.normal().coords().try_into().map(|c: [f64; 2]| [c[0], c[1], 0.0]).as_ref().unwrap(), &a) < 1e-4);
}

#[test]
fn mirror_pair_attractor_avoids_a_hyperplane_near_zero_or_infinity() {
    let f = fixtures::mirror_pair();
    let est = attractor_estimate(&f, &AttractorParams::default(), &init_cloud(&f, 3)).unwrap();
    assert!(est.converged);
    let h = find_avoided_hyperplane(&est.cloud).unwrap();
    let p = h.as_point_p1();
    let near_zero = p.approx_eq(&ProjPoint::p1(0.0), 0.1);
    let near_inf = p.approx_eq(&ProjPoint::p1_infinity(), 0.1);
    assert!(near_zero || near_inf);
}

#[test]
fn single_map_attractor_is_the_eigenvector() {
    let f = fixtures::single_map();
    let est = attractor_estimate(&f, &AttractorParams::default(), &init_cloud(&f, 5)).unwrap();
    assert!(est.converged);
    let e = ProjPoint::new(&[1.0, 0.0]).unwrap();
    assert!(est.cloud.points().iter().all(|p| p.approx_eq(&e, 1e-6)));
}

#[test]
fn rotation_never_converges() {
    let t: f64 = 1.0;
    let f = Ifs::new(vec![ProjMap::from_rows2([[t.cos(), -t.sin()], [t.sin(), t.cos()]]).unwrap()]).unwrap();
    let params = AttractorParams { max_iter: 200, ..AttractorParams::default() };
    let est = attractor_estimate(&f, &params, &PointCloud::singleton(ProjPoint::p1(0.3))).unwrap();
    assert!(!est.converged);
    assert_eq!(est.iterations, 200);
}

#[test]
fn converged_estimates_are_invariant() {
    for (name, f) in [
        ("mirror_pair", fixtures::mirror_pair()),
        ("ladder", fixtures::ladder(2, 10.0)),
        ("conjugate_pair", fixtures::conjugate_pair()),
        ("cantor_p1", fixtures::cantor_p1()),
        ("gasket_p2", fixtures::gasket_p2()),
        ("family_t0", fixtures::family(0.0)),
        ("family_t1", fixtures::family(1.0)),
        ("family_t2", fixtures::family(2.0)),
    ] {
        let params = AttractorParams::default();
        let t = std::time::Instant::now();
        let est = attractor_estimate(&f, &params, &init_cloud(&f, 9)).unwrap();
        eprintln!("{name}: converged={} iters={} points={} work={} res={:e} in {:?}", est.converged, est.iterations, est.cloud.len(), est.work, est.resolution, t.elapsed());
        assert!(est.converged, "{name}");
        let img = ifs_image(&f, &est.cloud);
        assert!(hausdorff(&img, &est.cloud).unwrap() < 5.0 * params.tol, "{name}");
    }
}
