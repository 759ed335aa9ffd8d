//! Command-line front end. Every command writes one canonical JSON document
//! (or an OBJ file for `export --format obj`, or a text table for
//! `paper-repro` without `--json`).

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use fuchsian_core::covolume::{
    area_jacobian, ball_covolume, ball_minkowski_area, covol, hausdorff_to_ball, minkowski_area, verify_inequalities,
    SimpleClass,
};
use fuchsian_core::polyhedra::{approximate_ball, build_with, BuildOptions};
use fuchsian_core::solver::solve_minkowski;
use fuchsian_core::LorentzVector;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{self, MixedSpec, PolyhedronSpec, SolveSpec};
use crate::json::{self, document, to_canonical};

#[derive(Debug, Parser)]
#[command(name = "fuchsian", version, about = "Fuchsian convex polyhedra in Minkowski space")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators, volume and Dirichlet cell of a group.
    GroupInfo {
        /// `octagon`, `boost:<length>`, or a JSON group file.
        group: String,
    },
    /// Orbit of a hyperboloid point within a radius.
    Orbit {
        #[arg(long)]
        group: String,
        /// Comma-separated coordinates of a point on the hyperboloid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<f64>,
        #[arg(long)]
        radius: f64,
    },
    /// Build the polyhedron of a support vector.
    Build {
        spec: String,
        #[arg(long)]
        allow_false_faces: bool,
    },
    /// Covolume and facet areas.
    Covol { spec: String },
    /// Area Jacobian with its positive-definiteness certificate.
    Jacobian { spec: String },
    /// Solve the Minkowski problem for prescribed facet areas.
    Solve { spec: String },
    /// Mixed covolume of d + 1 support vectors of one simple class.
    Mixed { spec: String },
    /// Check the reversed inequalities on random members of a simple class.
    Check {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0.01)]
        spread: f64,
    },
    /// Polyhedral approximants of the hyperboloid.
    ApproxBall {
        #[arg(long)]
        group: String,
        /// Sample radius; repeat for a sequence.
        #[arg(long = "radius")]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 6)]
        density: usize,
    },
    /// Export the facets of a polyhedron, with orbit copies up to a word length.
    Export {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        words: usize,
    },
    /// The octagon example with published and computed values.
    PaperRepro {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Obj,
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(report) = e.report() {
                eprint!("{}", to_canonical(report));
            }
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = match &cli.command {
        Command::GroupInfo { group } => group_info(group)?,
        Command::Orbit { group, point, radius } => orbit(group, point, *radius)?,
        Command::Build { spec, allow_false_faces } => {
            let spec: PolyhedronSpec = input::load(spec)?;
            let p =
                build_with(&spec.family()?, &spec.support()?, BuildOptions { allow_false_faces: *allow_false_faces })?;
            to_canonical(&document("polyhedron", json::polyhedron(&p)))
        }
        Command::Covol { spec } => {
            let spec: PolyhedronSpec = input::load(spec)?;
            let p = build_with(&spec.family()?, &spec.support()?, BuildOptions::default())?;
            let mut body = json::covolume(&covol(&p));
            body["minkowski_area"] = json!(minkowski_area(&p));
            body["simple"] = json!(p.is_simple());
            to_canonical(&document("covolume", body))
        }
        Command::Jacobian { spec } => {
            let spec: PolyhedronSpec = input::load(spec)?;
            let p = build_with(&spec.family()?, &spec.support()?, BuildOptions::default())?;
            let mut body = json::jacobian(&area_jacobian(&p));
            body["simple"] = json!(p.is_simple());
            to_canonical(&document("jacobian", body))
        }
        Command::Solve { spec } => solve(spec)?,
        Command::Mixed { spec } => mixed(spec)?,
        Command::Check { spec, seed, trials, spread } => check(spec, *seed, *trials, *spread)?,
        Command::ApproxBall { group, radii, density } => approx_ball(group, radii, *density)?,
        Command::Export { spec, format, words } => {
            let spec: PolyhedronSpec = input::load(spec)?;
            let p = build_with(&spec.family()?, &spec.support()?, BuildOptions { allow_false_faces: true })?;
            let mesh = p.mesh(*words);
            match format {
                Format::Obj => crate::obj::write_obj(&mesh),
                Format::Json => {
                    let faces: Vec<Value> = mesh
                        .iter()
                        .map(|(i, g, poly)| {
                            json!({ "facet": i, "word": g.word(), "vertices": poly.iter().map(json::vector).collect::<Vec<_>>() })
                        })
                        .collect();
                    to_canonical(&document("mesh", json!({ "word_length": words, "faces": faces })))
                }
            }
        }
        Command::PaperRepro { json } => {
            let r = crate::repro::run()?;
            if *json {
                to_canonical(&document("paper_repro", r.to_json()))
            } else {
                r.table()
            }
        }
    };
    emit(cli.output.as_ref(), &out)
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io { path: p.display().to_string(), source: e }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
        }
    }
}

fn group_info(arg: &str) -> Result<String, CliError> {
    let g = input::group_from_arg(arg)?;
    let mut body = json::group(&g);
    let cell = g.dirichlet_cell(&LorentzVector::origin(g.dim()))?;
    body["dirichlet_cell"] = json::dirichlet_cell(&cell);
    Ok(to_canonical(&document("group", body)))
}

fn orbit(group: &str, point: &[f64], radius: f64) -> Result<String, CliError> {
    let g = input::group_from_arg(group)?;
    if point.len() != g.dim() + 1 {
        return Err(CliError::Validation(format!("point needs {} coordinates, got {}", g.dim() + 1, point.len())));
    }
    let x = LorentzVector::from_slice(point)?;
    let o = g.orbit(&x, radius)?;
    Ok(to_canonical(&document("orbit", json::orbit(&o))))
}

fn solve(path: &str) -> Result<String, CliError> {
    let spec: SolveSpec = input::load(path)?;
    let family = spec.family.family()?;
    let cfg = spec.config.config()?;
    if spec.target_areas.len() != family.len() {
        return Err(CliError::Validation(format!(
            "expected {} target areas, got {}",
            family.len(),
            spec.target_areas.len()
        )));
    }
    if let Some(k) = spec.target_areas.iter().position(|a| !(*a > 0.0 && a.is_finite())) {
        return Err(CliError::Validation(format!("target area {k} must be positive, got {}", spec.target_areas[k])));
    }
    let report = solve_minkowski(&family, &spec.target_areas, &cfg)?;
    Ok(to_canonical(&document("solution", json::solver(&report))))
}

fn mixed(path: &str) -> Result<String, CliError> {
    let spec: MixedSpec = input::load(path)?;
    let family = input::family(&spec.group, &spec.normals)?;
    let m = family.dim() + 1;
    if spec.supports.len() != m {
        return Err(CliError::Validation(format!("expected {m} support vectors, got {}", spec.supports.len())));
    }
    let hs = spec.supports.iter().map(|s| input::support(s, family.len())).collect::<Result<Vec<_>, _>>()?;
    let p = build_with(&family, &hs[0], BuildOptions::default())?;
    let class = SimpleClass::new(&p)?;
    let refs: Vec<_> = hs.iter().collect();
    let mc = class.mixed_covol(&refs)?;
    Ok(to_canonical(&document("mixed_covolume", json::mixed(&mc))))
}

fn check(path: &str, seed: u64, trials: usize, spread: f64) -> Result<String, CliError> {
    let spec: PolyhedronSpec = input::load(path)?;
    if !(spread > 0.0 && spread < 1.0) {
        return Err(CliError::Validation(format!("spread must lie in (0, 1), got {spread}")));
    }
    let base = spec.support()?;
    let p = build_with(&spec.family()?, &base, BuildOptions::default())?;
    let class = SimpleClass::new(&p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::new();
    let mut failures = 0usize;
    for trial in 0..trials {
        let k1 = class.sample_member(&base, spread, &mut rng)?;
        let k2 = class.sample_member(&base, spread, &mut rng)?;
        for (k, t) in [0.25, 0.5, 0.75].into_iter().enumerate() {
            let trial_seed = seed.wrapping_mul(1_000_003).wrapping_add((trial * 3 + k) as u64);
            for r in verify_inequalities(&class, &k1, &k2, t, trial_seed)? {
                if !r.pass {
                    failures += 1;
                }
                let mut v = json::inequality(&r);
                v["trial"] = json!(trial);
                v["t"] = json!(t);
                results.push(v);
            }
        }
    }
    let body =
        json!({ "seed": seed, "trials": trials, "checks": results.len(), "failures": failures, "results": results });
    let text = to_canonical(&document("inequality_check", body));
    if failures > 0 {
        return Err(CliError::Numeric {
            message: format!("{failures} inequality check(s) failed"),
            report: serde_json::from_str(&text).ok(),
        });
    }
    Ok(text)
}

fn approx_ball(group: &str, radii: &[f64], density: usize) -> Result<String, CliError> {
    let g = Arc::new(input::group_from_arg(group)?);
    let radii = if radii.is_empty() { vec![1.0, 0.6, 0.4, 0.3, 0.2] } else { radii.to_vec() };
    let ball_covol = ball_covolume(&g)?;
    let ball_area = ball_minkowski_area(&g)?;
    let mut rows = Vec::new();
    let mut previous: Option<f64> = None;
    let mut monotone = true;
    for &s in &radii {
        let p = approximate_ball(&g, s)?;
        let c = covol(&p).covol;
        if let Some(prev) = previous {
            monotone &= c >= prev;
        }
        previous = Some(c);
        let hd = hausdorff_to_ball(&p, density)?;
        rows.push(json!({
            "sample_radius": s,
            "facets": p.facets.len(),
            "covol": c,
            "minkowski_area": minkowski_area(&p),
            "relative_gap": (ball_covol - c) / ball_covol,
            "hausdorff": hd.distance,
            "hausdorff_samples": hd.samples,
        }));
    }
    let body = json!({
        "ball_covol": ball_covol,
        "ball_minkowski_area": ball_area,
        "approximants": rows,
        "covol_increasing": monotone,
    });
    Ok(to_canonical(&document("ball_approximation", body)))
}
