use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use projifs::commands::{run, Command};
use projifs::fixtures;
use projifs::scene::{parse_scene, revalidate, SceneConfig};

/// Attractors, repellers and contractivity certificates of projective IFS.
#[derive(Parser, Debug)]
#[command(name = "projifs", version)]
struct Cli {
    command: Command,
    /// Scene file (JSON). Without it, `--example` picks a bundled scene.
    #[arg(long)]
    scene: Option<PathBuf>,
    /// Bundled scene name, e.g. `mirror_pair` or `ladder_M3`.
    #[arg(long, conflicts_with = "scene")]
    example: Option<String>,
    /// Directory for report.txt and artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    size: Option<usize>,
}

fn load(cli: &Cli) -> Result<SceneConfig, String> {
    let mut scene = match (&cli.scene, &cli.example) {
        (Some(p), _) => parse_scene(p).map_err(|e| e.to_string())?,
        (None, Some(n)) => fixtures::scene(n).ok_or_else(|| {
            let names: Vec<&str> = fixtures::names().collect();
            format!("unknown example `{n}`; bundled: {}", names.join(", "))
        })?,
        (None, None) if cli.command == Command::Examples => fixtures::scene("single_map").expect("bundled"),
        (None, None) => return Err("a scene is required: pass --scene FILE or --example NAME".into()),
    };
    let p = &mut scene.parameters;
    if let Some(s) = cli.seed {
        p.seed = s;
    }
    if let Some(t) = cli.tol {
        p.tol = t;
    }
    if let Some(g) = cli.grid {
        p.grid = g;
    }
    if let Some(s) = cli.size {
        p.render_size = s;
    }
    revalidate(scene).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    // clap's own exit code 2 would read as "no result within budget"
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let scene = match load(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let outcome = pool.install(|| run(cli.command, &scene));
    print!("{}", outcome.report);
    if let Some(dir) = &cli.out {
        let write = || -> std::io::Result<()> {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("report.txt"), &outcome.report)?;
            for a in &outcome.artifacts {
                std::fs::write(dir.join(&a.name), &a.bytes)?;
            }
            Ok(())
        };
        if let Err(e) = write() {
            eprintln!("error: cannot write to {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(outcome.exit_code)
}
