use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use torsion3::arith::format_rational;
use torsion3::conductor::{wild_exponent, RamificationFiltration};
use torsion3::io;
use torsion3::pipeline::{check_orbits, run_pipeline, PipelineConfig};
use torsion3::recon::reconstruct_orbits;
use torsion3::scheme::{build_torsion_scheme, Parity, TorsionScheme};
use torsion3::solver::{newton_refine, solve_all, NumericSolution, Status};
use torsion3::verify::{census, negation_closure_check, residual_report};

#[derive(Parser)]
#[command(name = "torsion3", version, about = "3-torsion points on genus-3 hyperelliptic Jacobians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Working precision in decimal digits
    #[arg(long, default_value_t = 1000)]
    digits: u32,
    /// Homotopy steps
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest minimal-polynomial degree searched
    #[arg(long, default_value_t = 8)]
    dmax: usize,
    /// Lattice scaling 10^(digits - offset)
    #[arg(long, default_value_t = 50)]
    kprime_offset: u32,
    /// Solutions closer than 10^-exp are duplicates
    #[arg(long, default_value_t = 20)]
    dedup_exp: u32,
    /// Primes per orbit for the modular checks
    #[arg(long, default_value_t = 3)]
    primes: usize,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
    /// Paths handed to a worker at a time
    #[arg(long, default_value_t = 64)]
    paths_per_worker: usize,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, smoke: bool) -> PipelineConfig {
        PipelineConfig {
            digits: self.digits,
            steps: self.steps,
            seed: self.seed,
            dmax: self.dmax,
            kprime_offset: self.kprime_offset,
            dedup_exp: self.dedup_exp,
            primes: self.primes,
            paths_per_worker: self.paths_per_worker,
            jobs: self.jobs,
            smoke,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the ten scheme equations as JSON
    Scheme {
        #[arg(long)]
        curve: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Track all homotopy paths and refine the endpoints
    Solve {
        #[arg(long)]
        curve: PathBuf,
        /// Track a seeded 2% sample of the paths
        #[arg(long)]
        smoke: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Refine saved solutions to --digits
    Refine {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Group solutions into Galois orbits with exact descriptions
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check solutions (residuals, census, negation closure) or orbits
    /// (modular checks)
    Verify {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Wild conductor exponent at 2 from a ramification filtration
    Conductor {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scheme, solve, reconstruct and verify in one run
    Pipeline {
        #[arg(long)]
        curve: PathBuf,
        /// Track a seeded 2% sample and check only residuals and
        /// distinctness
        #[arg(long)]
        smoke: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_scheme(path: &Path) -> Result<TorsionScheme> {
    let curve = io::curve_from_json(&read(path)?).with_context(|| format!("curve {}", path.display()))?;
    Ok(build_torsion_scheme(&curve)?)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn verify_solutions(ts: &TorsionScheme, sols: &[NumericSolution], cfg: &PipelineConfig) -> Result<(serde_json::Value, bool)> {
    let res = residual_report(ts, sols, cfg.residual_tol_exp())?;
    let c = census(sols, &[]);
    let mut passed = res.passed;
    let mut doc = serde_json::json!({
        "residuals": {"tol_exp": res.tol_exp, "worst_exp": (!sols.is_empty()).then(|| res.worst()), "passed": res.passed},
        "census": {"total": c.total, "expected": c.expected, "passed": c.total == c.expected},
    });
    passed &= c.total == c.expected;
    if ts.parity() == Parity::Odd {
        let n = negation_closure_check(sols, Parity::Odd, 1e-6)?;
        doc["negation"] = serde_json::json!({"checked": n.checked, "unmatched": n.unmatched.len(), "passed": n.passed()});
        passed &= n.passed();
    }
    doc["passed"] = passed.into();
    Ok((doc, passed))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Scheme { curve, common } => {
            let ts = load_scheme(&curve)?;
            emit(common.out.as_deref(), &io::scheme_to_json(&ts))?;
            Ok(true)
        }
        Command::Solve { curve, smoke, common } => {
            let cfg = common.config(smoke);
            cfg.validate()?;
            let ts = load_scheme(&curve)?;
            let outcome = solve_all(&ts, &cfg.track_config())?;
            eprintln!(
                "paths {} converged {} diverged {} singular {} duplicates {} refine failures {} distinct {}",
                outcome.paths,
                outcome.converged,
                outcome.diverged,
                outcome.singular,
                outcome.duplicates,
                outcome.refine_failed,
                outcome.solutions.len()
            );
            emit(common.out.as_deref(), &io::solutions_to_json(&outcome.solutions))?;
            Ok(true)
        }
        Command::Refine { curve, input, common } => {
            let ts = load_scheme(&curve)?;
            let sols = io::solutions_from_json(&read(&input)?)?;
            let refined = sols.iter().map(|s| newton_refine(&ts, s, common.digits, 60)).collect::<torsion3::Result<Vec<_>>>()?;
            let ok = refined.iter().all(|s| s.status == Status::Converged);
            emit(common.out.as_deref(), &io::solutions_to_json(&refined))?;
            Ok(ok)
        }
        Command::Reconstruct { input, common } => {
            let cfg = common.config(false);
            cfg.validate()?;
            let sols = io::solutions_from_json(&read(&input)?)?;
            let orbits = reconstruct_orbits(&sols, &cfg.recon_options())?;
            emit(common.out.as_deref(), &io::orbits_to_json(&orbits))?;
            Ok(true)
        }
        Command::Verify { curve, input, common } => {
            let cfg = common.config(false);
            let ts = load_scheme(&curve)?;
            let text = read(&input)?;
            let (doc, passed) = match io::orbits_from_json(&text) {
                Ok(orbits) => {
                    let checks = check_orbits(&ts, &orbits, cfg.primes);
                    let passed = checks.iter().all(|c| c.passed);
                    (serde_json::json!({"orbits": checks, "passed": passed}), passed)
                }
                Err(_) => {
                    let sols = io::solutions_from_json(&text).context("input is neither an orbit list nor a solution list")?;
                    verify_solutions(&ts, &sols, &cfg)?
                }
            };
            emit(common.out.as_deref(), &pretty(&doc))?;
            Ok(passed)
        }
        Command::Conductor { input, out } => {
            let f = RamificationFiltration::from_json(&read(&input)?)?;
            emit(out.as_deref(), &format!("{}\n", format_rational(&wild_exponent(&f))))?;
            Ok(true)
        }
        Command::Pipeline { curve, smoke, common } => {
            let c = io::curve_from_json(&read(&curve)?).with_context(|| format!("curve {}", curve.display()))?;
            let (report, _, _) = run_pipeline(&c, &common.config(smoke))?;
            emit(common.out.as_deref(), &report.to_json())?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("torsion3: checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("torsion3: {e:#}");
            ExitCode::from(2)
        }
    }
}
