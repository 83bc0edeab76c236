use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use projifs_core::convex::hull::convex_hull;
use projifs_core::convex::{contraction_factor, hilbert_distance, chain_inequality, ConvexBody};
use projifs_core::duality::complementary_dual;
use projifs_core::engine::{Ifs, PointCloud};
use projifs_core::grid::Grid;
use projifs_core::{cross_ratio, normalize, round_distance, Dim, Hyperplane, ProjMap, ProjPoint};

fn vec3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-10.0f64..10.0).prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-6)
}

fn pt3() -> impl Strategy<Value = ProjPoint> {
    vec3().prop_map(|v| ProjPoint::new(&v).unwrap())
}

fn map3() -> impl Strategy<Value = ProjMap> {
    prop::array::uniform9(-5.0f64..5.0).prop_filter_map("invertible", |m| ProjMap::from_row_major(&m).ok())
}

fn map2() -> impl Strategy<Value = ProjMap> {
    prop::array::uniform4(-5.0f64..5.0).prop_filter_map("invertible", |m| ProjMap::from_row_major(&m).ok())
}

proptest! {
    #[test]
    fn round_metric_axioms(p in pt3(), q in pt3(), r in pt3()) {
        let d = |a: &ProjPoint, b: &ProjPoint| round_distance(a, b).unwrap();
        prop_assert_eq!(d(&p, &p), 0.0);
        prop_assert_eq!(d(&p, &q), d(&q, &p));
        prop_assert!(d(&p, &q) <= 2f64.sqrt());
        prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-15);
    }

    #[test]
    fn normalization_ignores_scale(v in vec3(), s in prop::sample::select(vec![-1.0, 1e-6, 1e6, -3.5, 0.25])) {
        let a = normalize(&v).unwrap();
        let b = normalize(&[v[0] * s, v[1] * s, v[2] * s]).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-15));
        prop_assert_eq!(normalize(a.coords()).unwrap(), a);
    }

    #[test]
    fn hyperplanes_move_contravariantly(f in map3(), n in pt3(), w in prop::array::uniform2(-3.0f64..3.0)) {
        let h = Hyperplane::from_normal(n);
        let img = f.map_hyperplane(&h);
        prop_assert!(img.normal().approx_eq(f.map_hyperplane_pointwise(&h).normal(), 1e-6));
        // a point of h, pushed forward, lies on f(h)
        let (span, _) = h.spanning_points();
        let raw: Vec<f64> = (0..3).map(|k| w[0] * span[0].coords()[k] + w[1] * span[1].coords()[k]).collect();
        if let Ok(p) = ProjPoint::new(&raw) {
            prop_assert!(img.clearance(&f.apply(&p)) < 1e-7);
        }
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(f in map2(), xs in prop::array::uniform4(-20.0f64..20.0)) {
        let pts: Vec<ProjPoint> = xs.iter().map(|&x| ProjPoint::p1(x)).collect();
        if let Ok(r) = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]) {
            if r.abs() < 1e4 {
                let img: Vec<ProjPoint> = pts.iter().map(|p| f.apply(p)).collect();
                let s = cross_ratio(&img[0], &img[1], &img[2], &img[3]).unwrap();
                prop_assert!((r - s).abs() <= 1e-6 * (1.0 + r.abs()), "{} vs {}", r, s);
            }
        }
    }

    #[test]
    fn hull_is_idempotent(pts in prop::collection::vec(prop::array::uniform2(-5.0f64..5.0), 3..60)) {
        let h = convex_hull(&pts);
        prop_assert_eq!(convex_hull(&h), h);
    }

    #[test]
    fn hilbert_distance_shrinks_under_margin_maps(
        k in 0.1f64..0.9,
        centre in prop::array::uniform2(-0.3f64..0.3),
        shear in prop::array::uniform4(-0.05f64..0.05),
        pts in prop::collection::vec(prop::array::uniform3(0.01f64..1.0), 2),
    ) {
        let h = Hyperplane::from_normal_coords(&[0.0, 0.0, 1.0]).unwrap();
        let tri = ConvexBody::polygon(h, &[[-1.0, -1.0], [2.0, -1.0], [-1.0, 2.0]]).unwrap();
        // a homothety towards an interior point, slightly perturbed
        let m = [
            k + shear[0], shear[1], (1.0 - k) * centre[0],
            shear[2], k + shear[3], (1.0 - k) * centre[1],
            0.02 * shear[0], -0.02 * shear[3], 1.0,
        ];
        let f = ProjMap::from_row_major(&m).unwrap();
        if let Ok(alpha) = contraction_factor(&tri, &tri, &f, 0.0) {
            prop_assert!(alpha < 1.0);
            let x = tri.point_from_weights(&pts[0]);
            let y = tri.point_from_weights(&pts[1]);
            if let (Ok(d), Ok(e)) = (hilbert_distance(&tri, &x, &y), hilbert_distance(&tri, &f.apply(&x), &f.apply(&y))) {
                prop_assert!(e <= alpha * d + 1e-9, "{} > {} * {}", e, alpha, d);
            }
        }
    }

    #[test]
    fn dual_reverses_inclusion(f in map2(), xs in prop::collection::vec(-5.0f64..5.0, 1..12)) {
        // X and Y = X ∪ F(X), so F(X) ⊂ Y; then F^t(Y*) ⊂ X*
        let g = Ifs::new(vec![f]).unwrap();
        let x = PointCloud::new(Dim::One, xs.iter().map(|&v| ProjPoint::p1(v)).collect()).unwrap();
        let mut y = x.clone();
        y.extend(&g.image(&x));
        let c = 1e-3;
        // unit representatives: ⟨L^t q, x⟩ = ⟨q, L x⟩ up to ‖L x‖/‖L^t q‖ ≥ σ_min
        let m = f.matrix();
        let (a, b, cc, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        let fro2 = a * a + b * b + cc * cc + d * d;
        let det = (a * d - b * cc).abs();
        let sigma_min = ((fro2 - (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt()) / 2.0).sqrt();
        let ystar = complementary_dual(&y, c).sample(&Grid::p1(720));
        let adj = f.adjoint();
        let xstar = complementary_dual(&x, c * sigma_min * (1.0 - 1e-9));
        for q in ystar.points() {
            prop_assert!(xstar.contains(&adj.apply(q)));
        }
    }
}

#[test]
fn chain_inequality_holds_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violations = 0;
    for _ in 0..100_000 {
        let alpha = rng.gen_range(0.0..50.0);
        let r = alpha + rng.gen_range(0.0..50.0);
        let t = alpha + rng.gen_range(0.0..50.0);
        let s = rng.gen_range(1e-6..0.999);
        let h = rng.gen_range(s..0.999_999);
        let (lhs, mid, rhs) = chain_inequality(r, t, s, h, alpha);
        if lhs > mid + 1e-12 || mid > rhs + 1e-12 {
            violations += 1;
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn inverse_of_dual_hyperplane_is_dual_of_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst: f64 = 0.0;
    for k in 0..1000 {
        let n = if k % 2 == 0 { 4 } else { 9 };
        let m: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let Ok(f) = ProjMap::from_row_major(&m) else { continue };
        let x: Vec<f64> = (0..if n == 4 { 2 } else { 3 }).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = ProjPoint::new(&x).unwrap();
        // f^{-1}(x^⊥), moved point by point, against (L^t x)^⊥
        let lhs = f.inverse().map_hyperplane_pointwise(&Hyperplane::from_normal(x));
        let rhs = f.adjoint().apply(&x);
        worst = worst.max(round_distance(lhs.normal(), &rhs).unwrap());
    }
    assert!(worst < 1e-9, "{worst}");
}
