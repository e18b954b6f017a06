mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lvfrac::stability::caputo_cone_stable;
use lvfrac::table2::reproduce_table2;
use lvfrac::{
    cf_stable_disk, cf_stable_theorem, classify_region, equilibria, equilibrium_report,
    integrate_caputo, integrate_cf, CfMode, FdeError, FractionalOrder, LotkaVolterra,
};
use num_complex::Complex64;
use serde_json::Value;

use config::{OperatorChoice, RunConfig};

/// `println!` that reports write errors instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout(), $($arg)*).map_err(anyhow::Error::from)?
    }};
}
use output::{
    write_json, write_trajectory, Manifest, MANIFEST_FILE, STABILITY_FILE, TRAJECTORY_FILE,
};

/// Fractional Lotka-Volterra simulations and stability analysis.
#[derive(Debug, Parser)]
#[command(name = "lvfrac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Standard,
    Corrected,
}

impl From<ModeArg> for CfMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Standard => CfMode::Standard,
            ModeArg::Corrected => CfMode::Corrected,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the system and write trajectory.csv and manifest.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides `alpha` from the config.
        #[arg(long)]
        alpha: Option<f64>,
        /// Overrides `cf_mode` from the config.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Print the five equilibria with their existence conditions as JSON.
    Equilibria {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print spectra, stability verdicts and region classes for every equilibrium.
    Stability {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
        /// Also write stability_report.json into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify one eigenvalue into region A, B, C or D.
    Classify {
        #[arg(allow_negative_numbers = true)]
        re: f64,
        #[arg(allow_negative_numbers = true)]
        im: f64,
        #[arg(long)]
        alpha: f64,
    },
    /// Recompute the published summary table and grade every cell.
    ReproduceTable2,
}

enum Failure {
    /// Bad arguments, config or I/O.
    Usage(anyhow::Error),
    /// The integrator blew up; outputs were still written.
    Diverged(String),
    /// A reproduction cell failed.
    Mismatch,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        // Reader went away, e.g. `lvfrac equilibria ... | head`.
        Err(Failure::Usage(e)) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Diverged(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Simulate {
            config,
            out,
            alpha,
            mode,
        } => simulate(&config, &out, alpha, mode),
        Command::Equilibria { config } => {
            let config = RunConfig::load(&config).map_err(anyhow::Error::from)?;
            print_json(&equilibria(&config.params))?;
            Ok(())
        }
        Command::Stability { config, alpha, out } => stability(&config, alpha, out.as_deref()),
        Command::Classify { re, im, alpha } => classify(re, im, alpha),
        Command::ReproduceTable2 => {
            let report = reproduce_table2();
            for cell in &report.cells {
                out!("{cell}");
            }
            let all = report.counts();
            let verdicts = report.verdict_counts();
            out!(
                "verdict cells: {} PASS, {} KNOWN-DISCREPANCY, {} FAIL; all cells: {} PASS, {} KNOWN-DISCREPANCY, {} FAIL",
                verdicts.pass, verdicts.known, verdicts.fail, all.pass, all.known, all.fail
            );
            if report.is_success() {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn simulate(
    path: &Path,
    out: &Path,
    alpha: Option<f64>,
    mode: Option<ModeArg>,
) -> Result<(), Failure> {
    let mut config = RunConfig::load(path).map_err(anyhow::Error::from)?;
    if alpha.is_some() {
        config.alpha = alpha;
    }
    if let Some(mode) = mode {
        config.cf_mode = mode.into();
    }
    let sim = config
        .simulation()
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let field = LotkaVolterra::new(config.params);
    let initial = sim.initial.to_array();
    let start = Instant::now();
    let result = match sim.operator {
        OperatorChoice::Caputo => integrate_caputo(&field, &initial, sim.order, &sim.solver),
        OperatorChoice::Cf => integrate_cf(&field, &initial, sim.order, &sim.solver),
    };
    let elapsed = start.elapsed().as_secs_f64();

    let (trajectory, divergence) = match result {
        Ok(t) => (t, None),
        Err(FdeError::Diverged {
            step,
            time,
            partial,
        }) => (*partial, Some((step, time))),
        Err(e) => return Err(anyhow::Error::from(e).into()),
    };
    write_trajectory(&out.join(TRAJECTORY_FILE), &trajectory)?;
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        config: &config,
        outputs: vec![TRAJECTORY_FILE, MANIFEST_FILE],
        wall_clock_seconds: elapsed,
        diverged: divergence.is_some(),
        divergence_step: divergence.map(|d| d.0),
        divergence_time: divergence.map(|d| d.1),
    };
    write_json(&out.join(MANIFEST_FILE), &manifest)?;

    match divergence {
        Some((step, time)) => Err(Failure::Diverged(format!(
            "solution diverged at step {step} (t = {time}); partial trajectory written to {}",
            out.display()
        ))),
        None => {
            let end = trajectory.last_state();
            out!(
                "t = {}: x = {:.6}, y = {:.6}, z = {:.6} ({} rows, {elapsed:.2} s)",
                trajectory.last_time(),
                end[0],
                end[1],
                end[2],
                trajectory.len()
            );
            Ok(())
        }
    }
}

fn stability(path: &Path, alpha: Option<f64>, out: Option<&Path>) -> Result<(), Failure> {
    let mut config = RunConfig::load(path).map_err(anyhow::Error::from)?;
    if alpha.is_some() {
        config.alpha = alpha;
    }
    let order = config
        .order()
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let reports = equilibrium_report(&config.params, order);
    let mut value = serde_json::json!({ "alpha": order.value(), "equilibria": reports });
    // CF criteria are undefined at alpha = 1.
    for entry in value["equilibria"].as_array_mut().into_iter().flatten() {
        for key in ["cf_theorem", "cf_disk", "regions"] {
            if entry[key].is_null() {
                entry[key] = Value::from("not applicable");
            }
        }
    }
    print_json(&value)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_json(&dir.join(STABILITY_FILE), &value)?;
    }
    Ok(())
}

fn classify(re: f64, im: f64, alpha: f64) -> Result<(), Failure> {
    let order = FractionalOrder::new(alpha).map_err(anyhow::Error::from)?;
    let lambda = Complex64::new(re, im);
    let region =
        classify_region(lambda, order).map_err(|e| anyhow!("{e} (alpha must lie in (0, 1))"))?;
    let theorem = cf_stable_theorem(&[lambda], order).map_err(anyhow::Error::from)?;
    let disk = cf_stable_disk(lambda, order).map_err(anyhow::Error::from)?;
    out!("region: {region:?}");
    out!("caputo_cone: {}", caputo_cone_stable(lambda, order));
    out!("cf_theorem: {}", theorem.stable);
    out!("cf_disk: {disk}");
    Ok(())
}
