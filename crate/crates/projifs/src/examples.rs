//! The `examples` command: every bundled scene run through the pipeline
//! that exercises it, with a pass/fail line per row.

use projifs_core::engine::{chaos_game, find_avoided_hyperplane, PointCloud};
use projifs_core::index::{conjugate_pair_report, ConjugatePairReport};
use projifs_core::{Dim, ProjPoint};

use crate::commands::{self, Command, Outcome};
use crate::fixtures;
use crate::report::{num, Report};

struct Row {
    name: String,
    passed: bool,
    detail: String,
}

fn row(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Row {
    Row { name: name.into(), passed, detail: detail.into() }
}

fn certify_row(name: &str, want_exit: u8) -> Row {
    let scene = fixtures::scene(name).expect("bundled");
    let out = commands::run(Command::Certify, &scene);
    let status = out.report.lines().find_map(|l| l.strip_prefix("status: ")).unwrap_or("?").to_string();
    let bodies = out.report.lines().find_map(|l| l.strip_prefix("bodies: ")).map(|b| format!(", {b} bodies")).unwrap_or_default();
    row(format!("{name} certify"), out.exit_code == want_exit, format!("exit {} (want {want_exit}), {status}{bodies}", out.exit_code))
}

fn index_row(name: &str, want: usize) -> Row {
    let scene = fixtures::scene(name).expect("bundled");
    match commands::index(&scene) {
        Ok((r, _)) => row(format!("{name} index"), r.index == want, format!("index {} (want {want})", r.index)),
        Err(e) => row(format!("{name} index"), false, e.to_string()),
    }
}

fn line_row() -> Row {
    let scene = fixtures::scene("rotating_line").expect("bundled");
    let f = scene.ifs();
    let p = &scene.parameters;
    let start = projifs_core::certify::default_start(f.dim());
    match chaos_game(&f, p.seed, 20_000, 10_000, &start) {
        Ok(c) => {
            let dev = c.cloud.points().iter().map(|q| q.coords()[0].abs()).fold(0.0, f64::max);
            // the attractor is a whole projective line, which meets every line
            let n = 100_000;
            let line: Vec<ProjPoint> = (0..n)
                .map(|k| {
                    let t = std::f64::consts::PI * k as f64 / n as f64;
                    ProjPoint::new(&[0.0, t.cos(), t.sin()]).expect("unit")
                })
                .collect();
            let avoided = PointCloud::new(Dim::Two, line).ok().and_then(|l| find_avoided_hyperplane(&l));
            row(
                "rotating_line attractor",
                dev < 1e-4 && avoided.is_none(),
                format!("max |x0| {}, avoided hyperplane of the line {}", num(dev), if avoided.is_some() { "found" } else { "none" }),
            )
        }
        Err(e) => row("rotating_line attractor", false, e.to_string()),
    }
}

fn conjugate_pair_row() -> Row {
    let scene = fixtures::scene("conjugate_pair").expect("bundled");
    match conjugate_pair_report(&scene.index_params()) {
        Ok(t) => {
            let ok = t.conjugacy_residuals.iter().all(|&r| r < 1e-12)
                && (t.a - 0.0).abs() < 1e-12
                && (t.c - 2.0 / 3.0).abs() < 1e-12
                && (t.b - ConjugatePairReport::b_exact()).abs() < 1e-9
                && (t.d - ConjugatePairReport::d_exact()).abs() < 1e-9
                && t.interval_violation < 1e-9
                && t.index.index == 2;
            row(
                "conjugate_pair fixture",
                ok,
                format!("a {}, b {}, c {}, d {}, index {}", num(t.a), num(t.b), num(t.c), num(t.d), t.index.index),
            )
        }
        Err(e) => row("conjugate_pair fixture", false, e.to_string()),
    }
}

pub fn run_examples() -> Outcome {
    let mut rows = vec![certify_row("single_map", 0), certify_row("mirror_pair", 0), line_row()];
    for (name, want) in [("family_t0", 0), ("family_t0.5", 2), ("family_t1", 0), ("family_t1.5", 2), ("family_t2", 0)] {
        rows.push(certify_row(name, want));
    }
    for m in 2..=5 {
        rows.push(index_row(&format!("ladder_M{m}"), m));
    }
    rows.push(conjugate_pair_row());
    rows.push(index_row("cantor_p1", 1));
    rows.push(index_row("gasket_p2", 1));

    let mut r = Report::new("examples", "bundled");
    for x in &rows {
        r.push(x.name.clone(), format!("{} ({})", if x.passed { "pass" } else { "FAIL" }, x.detail));
    }
    let failed = rows.iter().filter(|x| !x.passed).count();
    r.push("summary", format!("{} passed, {failed} failed", rows.len() - failed));
    let code = if failed == 0 { 0 } else { 1 };
    r.push("exit_code", code);
    Outcome { report: r.text(), artifacts: Vec::new(), exit_code: code }
}
