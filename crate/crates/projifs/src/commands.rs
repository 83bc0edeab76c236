//! The command pipeline behind the CLI. Every command turns a validated
//! scene into a report, a list of artifacts and an exit code.

use projifs_core::basin::BasinMask;
use projifs_core::certify::{default_start, find_certificate_from, verify_certificate, Certificate, VerificationReport};
use projifs_core::convex::Shape;
use projifs_core::duality::{duality_map_cloud, RepellerEstimate};
use projifs_core::engine::{best_avoided_hyperplane, chaos_game, AttractorEstimate, ChaosCloud, Ifs, InverseHyperplaneAction};
use projifs_core::grid::Grid;
use projifs_core::index::{index_from_mask, index_from_sets, Component, IndexReport};
use projifs_core::render::Scene;
use projifs_core::{Dim, Error};

use crate::formats::{basin_to_pgm, cloud_to_text, encode_png, hyperplanes_to_text, FormatError};
use crate::parallel;
use crate::report::{list, num, point, Report};
use crate::scene::{Output, SceneConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Attractor,
    Certify,
    Repeller,
    Basin,
    Index,
    Adjoint,
    Render,
    Examples,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Attractor => "attractor",
            Command::Certify => "certify",
            Command::Repeller => "repeller",
            Command::Basin => "basin",
            Command::Index => "index",
            Command::Adjoint => "adjoint",
            Command::Render => "render",
            Command::Examples => "examples",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub kind: Output,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub artifacts: Vec<Artifact>,
    pub exit_code: u8,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// 2 for an honest "nothing found within budget", 1 for anything else.
pub fn exit_code_for(e: &RunError) -> u8 {
    match e {
        RunError::Core(Error::NoCertificateFound { .. } | Error::NonConvergence { .. } | Error::ResourceCap { .. } | Error::NotCertified(_)) => 2,
        _ => 1,
    }
}

type Res<T> = Result<T, RunError>;

pub struct AttractorRun {
    pub ifs: Ifs,
    pub chaos: ChaosCloud,
    pub estimate: AttractorEstimate,
}

/// Chaos-game seed cloud, then the deterministic iteration.
pub fn attractor(scene: &SceneConfig) -> Res<AttractorRun> {
    let f = scene.ifs();
    let p = &scene.parameters;
    let chaos = chaos_game(&f, p.seed, p.chaos_points, p.burn_in, &default_start(f.dim()))?;
    let estimate = parallel::attractor_estimate(&f, &scene.attractor_params(), &chaos.cloud)?;
    Ok(AttractorRun { ifs: f, chaos, estimate })
}

pub fn certify(scene: &SceneConfig, run: &AttractorRun) -> Res<(Certificate, VerificationReport)> {
    let cert = find_certificate_from(&run.ifs, &run.estimate, &scene.budget())?;
    let rep = verify_certificate(&run.ifs, &cert)?;
    Ok((cert, rep))
}

/// Adjoint attractor, cross-checked by iterating `f^{-1}` on hyperplanes.
pub fn repeller(scene: &SceneConfig, f: &Ifs) -> Res<RepellerEstimate> {
    let p = &scene.parameters;
    let adj = f.adjoint();
    let params = scene.attractor_params();
    let init = chaos_game(&adj, p.seed, p.chaos_points, p.burn_in, &default_start(f.dim()))?.cloud;
    let est = parallel::attractor_estimate(&adj, &params, &init)?;
    if !est.converged {
        return Err(Error::NonConvergence { iterations: est.iterations, delta: est.last_delta }.into());
    }
    let cross = parallel::attractor_estimate(&InverseHyperplaneAction::new(f), &params, &init)?;
    if !cross.converged {
        return Err(Error::NonConvergence { iterations: cross.iterations, delta: cross.last_delta }.into());
    }
    let agreement = parallel::hausdorff(&est.cloud, &cross.cloud)?;
    Ok(RepellerEstimate { repeller: duality_map_cloud(&est.cloud), adjoint: est, cross_check: cross, agreement })
}

pub fn index(scene: &SceneConfig) -> Res<(IndexReport, AttractorRun)> {
    let run = attractor(scene)?;
    if !run.estimate.converged {
        return Err(Error::NonConvergence { iterations: run.estimate.iterations, delta: run.estimate.last_delta }.into());
    }
    find_certificate_from(&run.ifs, &run.estimate, &scene.budget()).map_err(|e| Error::NotCertified(e.to_string()))?;
    let rep = repeller(scene, &run.ifs)?;
    let params = scene.index_params();
    let report = match run.ifs.dim() {
        Dim::One => index_from_sets(&run.estimate.cloud, &rep.repeller, &params)?,
        Dim::Two => {
            let mask = parallel::basin(&rep.repeller, Grid::disk(scene.parameters.grid))?;
            index_from_mask(&run.estimate.cloud, &rep.repeller, &mask, &params)
        }
    };
    Ok((report, run))
}

fn push_estimate(r: &mut Report, prefix: &str, e: &AttractorEstimate) {
    r.push(format!("{prefix}.converged"), e.converged);
    r.push(format!("{prefix}.iterations"), e.iterations);
    r.push(format!("{prefix}.points"), e.cloud.len());
    r.push(format!("{prefix}.last_delta"), num(e.last_delta));
    r.push(format!("{prefix}.resolution"), num(e.resolution));
    r.push(format!("{prefix}.work"), e.work);
}

fn push_certificate(r: &mut Report, cert: &Certificate, ver: &VerificationReport) {
    r.push("avoided_hyperplane", point(cert.avoided.normal()));
    r.push("bodies", cert.bodies.len());
    for (k, b) in cert.bodies.iter().enumerate() {
        let desc = match b.shape() {
            Shape::Interval { lo, hi } => format!("interval {}", list(&[*lo, *hi])),
            Shape::Polygon(v) => {
                let vs: Vec<String> = v.iter().map(|w| list(w)).collect();
                format!("polygon [{}]", vs.join(", "))
            }
        };
        r.push(format!("body.{}", k + 1), desc);
    }
    for (m, row) in cert.edge_map.iter().enumerate() {
        let targets: Vec<String> = row.iter().map(|j| (j + 1).to_string()).collect();
        r.push(format!("edges.f{}", m + 1), format!("[{}]", targets.join(", ")));
    }
    r.push("level", cert.level);
    r.push("eps", num(cert.eps));
    r.push("hat_eps", num(cert.hat_eps));
    r.push("alpha", num(cert.alpha));
    r.push("s", num(cert.graph.s));
    r.push("lambda_star", num(cert.lambda_star()));
    r.push("j_scale", num(cert.j_scale));
    for c in &ver.checks {
        r.push(format!("check.{}", c.name), format!("{} margin {}", if c.passed { "pass" } else { "FAIL" }, num(c.margin)));
    }
    r.push("verified", ver.passed());
}

fn cmd_attractor(scene: &SceneConfig, r: &mut Report, arts: &mut Vec<Artifact>) -> Res<u8> {
    let run = attractor(scene)?;
    let e = &run.estimate;
    r.push("status", if e.converged { "converged" } else { "not-converged" });
    push_estimate(r, "attractor", e);
    match best_avoided_hyperplane(&e.cloud) {
        Some((h, c)) => {
            r.push("best_hyperplane", point(h.normal()));
            r.push("best_hyperplane.clearance", num(c));
        }
        None => r.push("best_hyperplane", "none"),
    }
    arts.push(Artifact { name: "attractor.txt".into(), kind: Output::Cloud, bytes: cloud_to_text(&e.cloud).into_bytes() });
    Ok(if e.converged { 0 } else { 2 })
}

fn cmd_certify(scene: &SceneConfig, r: &mut Report) -> Res<u8> {
    let run = attractor(scene)?;
    push_estimate(r, "attractor", &run.estimate);
    match certify(scene, &run) {
        Ok((cert, ver)) => {
            r.push("status", if ver.passed() { "certified" } else { "verification-failed" });
            push_certificate(r, &cert, &ver);
            Ok(if ver.passed() { 0 } else { 1 })
        }
        Err(RunError::Core(Error::NoCertificateFound { stage, diagnostics })) => {
            r.push("status", "no-certificate");
            r.push("stage", stage);
            r.push("diagnostics", diagnostics);
            Ok(2)
        }
        Err(e) => Err(e),
    }
}

fn cmd_repeller(scene: &SceneConfig, r: &mut Report, arts: &mut Vec<Artifact>) -> Res<u8> {
    let rep = repeller(scene, &scene.ifs())?;
    r.push("status", "converged");
    push_estimate(r, "adjoint", &rep.adjoint);
    push_estimate(r, "inverse_hyperplane", &rep.cross_check);
    r.push("agreement", num(rep.agreement));
    r.push("agreement_ok", rep.agreement < 5.0 * scene.parameters.tol);
    r.push("hyperplanes", rep.repeller.len());
    arts.push(Artifact { name: "repeller.txt".into(), kind: Output::Cloud, bytes: hyperplanes_to_text(&rep.repeller).into_bytes() });
    Ok(0)
}

fn basin_mask(scene: &SceneConfig) -> Res<(AttractorRun, RepellerEstimate, BasinMask)> {
    let run = attractor(scene)?;
    let rep = repeller(scene, &run.ifs)?;
    let mask = parallel::basin(&rep.repeller, Grid::new(run.ifs.dim(), scene.parameters.grid))?;
    Ok((run, rep, mask))
}

fn cmd_basin(scene: &SceneConfig, r: &mut Report, arts: &mut Vec<Artifact>) -> Res<u8> {
    let (run, rep, mask) = basin_mask(scene)?;
    r.push("status", "ok");
    push_estimate(r, "attractor", &run.estimate);
    r.push("hyperplanes", rep.repeller.len());
    r.push("grid", format!("{}x{}", mask.grid.width(), mask.grid.height()));
    r.push("band", num(mask.band));
    r.push("excluded_cells", mask.excluded_count());
    r.push("components", mask.components);
    let mut hit: Vec<u32> = run.estimate.cloud.points().iter().filter_map(|p| mask.label_of(p)).collect();
    hit.sort_unstable();
    hit.dedup();
    r.push("components_meeting_attractor", hit.len());
    arts.push(Artifact { name: "basin.pgm".into(), kind: Output::Pgm, bytes: basin_to_pgm(&mask) });
    let scene_r = Scene { basin: Some(&mask), repeller: Some(&rep.repeller), ..Scene::new(run.ifs.dim(), run.ifs.len()) };
    let img = parallel::render(scene_r, scene.parameters.render_size)?;
    arts.push(Artifact { name: "basin.png".into(), kind: Output::Png, bytes: encode_png(&img)? });
    Ok(0)
}

fn cmd_index(scene: &SceneConfig, r: &mut Report) -> Res<u8> {
    let (rep, run) = index(scene)?;
    r.push("status", "ok");
    push_estimate(r, "attractor", &run.estimate);
    r.push("index", rep.index);
    r.push("components", rep.components.len());
    if let Some(g) = rep.gap_threshold {
        r.push("gap_threshold", num(g));
    }
    for (k, &c) in rep.occupied.iter().enumerate() {
        let desc = match &rep.components[c] {
            Component::Arc(a) => {
                let (x0, x1) = a.chart_interval();
                format!("arc {}", list(&[x0, x1]))
            }
            Component::Region { label, cells } => format!("region {label} ({cells} cells)"),
        };
        r.push(format!("occupied.{}", k + 1), desc);
    }
    Ok(0)
}

fn cmd_adjoint(scene: &SceneConfig, r: &mut Report, arts: &mut Vec<Artifact>) -> Res<u8> {
    let f = scene.ifs();
    r.push("status", "ok");
    for (label, g) in [("adjoint", f.adjoint()), ("inverse", f.inverse())] {
        let mut out = SceneConfig::from_ifs(&format!("{}_{label}", scene.name), &g);
        out.parameters = scene.parameters.clone();
        out.outputs = scene.outputs.clone();
        for (m, spec) in out.maps.iter_mut().enumerate() {
            spec.name = format!("{}^{}", scene.maps[m].name, if label == "adjoint" { "t" } else { "-1" });
            r.push(format!("{label}.{}", spec.name), list(&spec.matrix));
        }
        arts.push(Artifact { name: format!("{label}.json"), kind: Output::Cloud, bytes: (out.to_json_pretty() + "\n").into_bytes() });
    }
    Ok(0)
}

fn cmd_render(scene: &SceneConfig, r: &mut Report, arts: &mut Vec<Artifact>) -> Res<u8> {
    let f = scene.ifs();
    let p = &scene.parameters;
    let chaos = chaos_game(&f, p.seed, p.chaos_points, p.burn_in, &default_start(f.dim()))?;
    let rep = repeller(scene, &f);
    let mask = match &rep {
        Ok(rep) => Some(parallel::basin(&rep.repeller, Grid::new(f.dim(), p.grid))?),
        Err(_) => None,
    };
    let scene_r = Scene {
        attractor: Some(&chaos.cloud),
        colors: Some(&chaos.last_map),
        repeller: rep.as_ref().ok().map(|x| &x.repeller),
        basin: mask.as_ref(),
        ..Scene::new(f.dim(), f.len())
    };
    let img = parallel::render(scene_r, p.render_size)?;
    r.push("status", "ok");
    r.push("model", format!("{:?}", img.model).to_lowercase());
    r.push("size", format!("{}x{}", img.width, img.height));
    r.push("attractor_points", chaos.cloud.len());
    r.push("repeller_layer", match &rep {
        Ok(x) => format!("{} hyperplanes", x.repeller.len()),
        Err(e) => format!("omitted ({e})"),
    });
    for (m, c) in img.legend.iter().enumerate() {
        r.push(format!("legend.{}", scene.maps[m].name), format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2]));
    }
    arts.push(Artifact { name: "render.png".into(), kind: Output::Png, bytes: encode_png(&img)? });
    Ok(0)
}

/// Runs one command on a validated scene.
pub fn run(cmd: Command, scene: &SceneConfig) -> Outcome {
    if cmd == Command::Examples {
        return crate::examples::run_examples();
    }
    let mut r = Report::new(cmd.name(), &scene.name);
    let mut arts = Vec::new();
    let res = match cmd {
        Command::Attractor => cmd_attractor(scene, &mut r, &mut arts),
        Command::Certify => cmd_certify(scene, &mut r),
        Command::Repeller => cmd_repeller(scene, &mut r, &mut arts),
        Command::Basin => cmd_basin(scene, &mut r, &mut arts),
        Command::Index => cmd_index(scene, &mut r),
        Command::Adjoint => cmd_adjoint(scene, &mut r, &mut arts),
        Command::Render => cmd_render(scene, &mut r, &mut arts),
        Command::Examples => unreachable!(),
    };
    let code = match res {
        Ok(c) => c,
        Err(e) => {
            let c = exit_code_for(&e);
            r.push("status", if c == 2 { "no-result" } else { "error" });
            r.push("error", &e);
            arts.clear();
            c
        }
    };
    r.push("exit_code", code);
    r.push("config", scene.to_json());
    arts.retain(|a| scene.wants(a.kind) || a.name.ends_with(".json"));
    Outcome { report: r.text(), artifacts: arts, exit_code: code }
}
