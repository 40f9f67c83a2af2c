//! `octaflip`: run scenes, compare results, verify the octagon relation and
//! audit the Laurent property.
//!
//! Exit codes: 0 success, 1 invalid input, 2 non-generic motion, 3 relation
//! or audit failure, 4 results differ.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octaflip_core::algebra::Backend;
use octaflip_core::engine::{
    compute_invariant, first_difference, laurent_audit, Difference, EngineError, InvariantResult,
    OctagonFixture,
};
use octaflip_core::geometry::{build_arrangement, Configuration, GeometryError, ProjPoint};
use octaflip_core::motion::MotionError;
use octaflip_core::scene::{load_scene, SceneError};

#[derive(Parser)]
#[command(name = "octaflip", version, about = "Braid invariant from Desargues flips")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Classical,
    Tropical,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Classical => Backend::Classical,
            BackendArg::Tropical => Backend::Tropical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OctagonBackend {
    Both,
    Classical,
    Tropical,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the label transformation of a closed motion.
    Run {
        scene: PathBuf,
        /// Overrides the backend named in the scene.
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        /// Where to write the result JSON (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two result files.
    Compare { a: PathBuf, b: PathBuf },
    /// Check the octagon relation symbolically.
    VerifyOctagon {
        #[arg(long, value_enum, default_value = "both")]
        backend: OctagonBackend,
    },
    /// Check that random geometric flip scripts only produce Laurent polynomials.
    LaurentAudit {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        len: usize,
        #[arg(long, env = "OCTAFLIP_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Print cell counts of the dual arrangement of a scene's points.
    GeometryStats {
        scene: PathBuf,
        /// Also dump the arrangement as JSON.
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn motion_code(e: &MotionError) -> u8 {
    match e {
        MotionError::InvalidTrajectory(_) | MotionError::InvalidWord(_) => 1,
        _ => 2,
    }
}

impl From<SceneError> for Failure {
    fn from(e: SceneError) -> Self {
        let code = match &e {
            SceneError::Motion(m) => motion_code(m),
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match &e {
            EngineError::Motion(m) => motion_code(m),
            EngineError::Geometry(GeometryError::NotGeneric { .. }) => 2,
            EngineError::RelationFailed { .. } | EngineError::Internal(_) => 3,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn read_result(path: &Path) -> Result<InvariantResult, Failure> {
    let value: serde_json::Value = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    InvariantResult::from_json(&value).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn run(scene: &Path, backend: Option<BackendArg>, out: Option<&Path>) -> Result<(), Failure> {
    let scene = load_scene(&read(scene)?, backend.map(Into::into))?;
    let run = compute_invariant(&scene.trajectory, scene.backend, scene.labels.clone())?;
    let json = run.result.to_json_string();
    let summary = format!(
        "backend {}, {} flips, permutation {:?}",
        scene.backend, run.result.script_length, run.result.permutation
    );
    match out {
        Some(path) => {
            std::fs::write(path, json)
                .map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            print!("{json}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn compare(a: &Path, b: &Path) -> Result<(), Failure> {
    let (ra, rb) = (read_result(a)?, read_result(b)?);
    match first_difference(&ra, &rb)? {
        None => {
            println!("same");
            Ok(())
        }
        Some(Difference::Permutation) => Err(Failure::new(
            4,
            format!("permutations differ: {:?} vs {:?}", ra.permutation, rb.permutation),
        )),
        Some(Difference::Face { face, left, right }) => Err(Failure::new(
            4,
            format!("labels differ at face {face}\n  {}: {left}\n  {}: {right}", a.display(), b.display()),
        )),
    }
}

fn verify_octagon(which: OctagonBackend) -> Result<(), Failure> {
    let backends: &[Backend] = match which {
        OctagonBackend::Both => &[Backend::Classical, Backend::Tropical],
        OctagonBackend::Classical => &[Backend::Classical],
        OctagonBackend::Tropical => &[Backend::Tropical],
    };
    let fixture = OctagonFixture {
        corrupt_fifth_flip: cfg!(feature = "fault-injection"),
    };
    for &backend in backends {
        println!("{backend}:");
        let report = fixture.verify(backend)?;
        for id in &report.identities {
            println!("  ok  {}\n      lhs: {}\n      rhs: {}", id.name, id.lhs, id.rhs);
        }
    }
    println!("octagon relation holds");
    Ok(())
}

fn audit(n: usize, trials: usize, len: usize, seed: u64) -> Result<(), Failure> {
    let report = laurent_audit(n, trials, len, seed)?;
    let ratio = if report.labels_checked == 0 {
        100.0
    } else {
        100.0 * report.laurent_labels as f64 / report.labels_checked as f64
    };
    println!(
        "n={} trials={} len={} seed={}: {} flips, {}/{} labels Laurent ({ratio:.2}%)",
        report.n,
        report.trials,
        report.script_length,
        report.seed,
        report.flips,
        report.laurent_labels,
        report.labels_checked
    );
    for f in report.failures.iter().take(5) {
        println!("  trial {} face {}: {}", f.trial, f.face, f.label);
    }
    if report.all_laurent() {
        Ok(())
    } else {
        Err(Failure::new(3, "some labels are not Laurent polynomials"))
    }
}

fn geometry_stats(scene: &Path, json: bool) -> Result<(), Failure> {
    let scene = load_scene(&read(scene)?, None)?;
    let config = Configuration::new(
        scene
            .points
            .iter()
            .map(|p| ProjPoint::affine(p[0].clone(), p[1].clone()))
            .collect(),
    );
    let a = build_arrangement(&config).map_err(|e| {
        let code = if matches!(e, GeometryError::NotGeneric { .. }) { 2 } else { 1 };
        Failure::new(code, e.to_string())
    })?;
    println!(
        "n={} V={} E={} F={} triangles={}",
        a.line_count(),
        a.vertices().len(),
        a.edges().len(),
        a.faces().len(),
        a.triangles().len()
    );
    if json {
        println!("{}", serde_json::to_string_pretty(&a.to_json()).expect("plain JSON"));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            scene,
            backend,
            out,
        } => run(&scene, backend, out.as_deref()),
        Command::Compare { a, b } => compare(&a, &b),
        Command::VerifyOctagon { backend } => verify_octagon(backend),
        Command::LaurentAudit { n, trials, len, seed } => audit(n, trials, len, seed),
        Command::GeometryStats { scene, json } => geometry_stats(&scene, json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
