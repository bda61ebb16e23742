use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fcstat_cli::config::ExperimentConfig;
use fcstat_cli::{load_config, run_experiment, write_outputs, RunOutcome};
use fcstat_core::bounds::fuzz::{gronwall_suite, trace_inequality_suite, SuiteSummary};
use fcstat_core::linalg::random::seeded_rng;

#[derive(Parser)]
#[command(
    name = "fcstat",
    version,
    about = "Full counting statistics of energy transfer and its exponential bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        config: PathBuf,
        /// Override the Hilbert-space dimension budget.
        #[arg(long)]
        max_dim: Option<usize>,
        /// Override `output.dir`.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Also write wall-clock timings to `timings.json`.
        #[arg(long)]
        timings: bool,
    },
    /// Randomised tests of the trace and Gronwall inequalities.
    CheckInequalities {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest dimension for the trace inequality.
        #[arg(long, default_value_t = 16)]
        dim: usize,
        /// Largest dimension for the Gronwall bound.
        #[arg(long, default_value_t = 12)]
        gronwall_dim: usize,
        /// Largest operator norm of the Gronwall pair.
        #[arg(long, default_value_t = 3.0)]
        max_norm: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 101)]
        s_points: usize,
    },
    /// Rerun a config over a list of values of one parameter.
    Sweep {
        config: PathBuf,
        #[arg(long, value_enum)]
        param: SweepParam,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepParam {
    T,
    Alpha,
    #[value(name = "C")]
    C,
}

fn print_summary(outcome: &RunOutcome) {
    let r = &outcome.report;
    println!(
        "model {} (dim {}, ‖V‖ = {:.6e}, {} levels)",
        r.model.label, r.model.dim, r.model.v_norm, r.model.n_levels
    );
    println!(
        "R(alpha_m = {}) = {:.6e}",
        r.regularity.alpha, r.regularity.r_value
    );
    for rec in &r.records {
        println!(
            "t = {:<10} mean = {:+.6e}  E[e^(a|dE|)] = {:.6e} <= {:.6e}  tail {:.3e} <= {:.3e}  first-law residual {:.1e}  {}",
            rec.t,
            rec.mean,
            rec.exp_moment,
            rec.theorem_bound,
            rec.tail.empirical,
            rec.tail.bound,
            rec.first_law.residual,
            if rec.pass { "pass" } else { "FAIL" }
        );
    }
    println!("overall: {}", if r.pass { "pass" } else { "FAIL" });
}

fn run_one(
    cfg: &ExperimentConfig,
    max_dim: Option<usize>,
    dir: &Path,
    timings: bool,
) -> Result<bool> {
    let outcome = run_experiment(cfg, max_dim)?;
    let written = write_outputs(&outcome, dir)
        .with_context(|| format!("writing results to {}", dir.display()))?;
    if timings {
        let path = dir.join("timings.json");
        std::fs::write(&path, serde_json::to_string_pretty(&outcome.timings)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    log::info!(
        "wrote {} files to {} in {:.3}s",
        written.len(),
        dir.display(),
        outcome.timings.total
    );
    print_summary(&outcome);
    Ok(outcome.report.pass)
}

fn print_suite(name: &str, s: &SuiteSummary) {
    println!(
        "{name}: {} trials, {} failures, worst lhs/rhs = {:.12}",
        s.trials, s.failures, s.worst_ratio
    );
}

fn sweep_label(param: SweepParam, value: f64) -> String {
    match param {
        SweepParam::T => format!("t={value}"),
        SweepParam::Alpha => format!("alpha_m={value}"),
        SweepParam::C => format!("C={value}"),
    }
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run {
            config,
            max_dim,
            output_dir,
            timings,
        } => {
            let cfg = load_config(&config)?;
            let dir = output_dir.unwrap_or_else(|| cfg.output.dir.clone());
            run_one(&cfg, max_dim, &dir, timings)
        }
        Command::CheckInequalities {
            trials,
            dim,
            gronwall_dim,
            max_norm,
            seed,
            s_points,
        } => {
            anyhow::ensure!(dim >= 1 && gronwall_dim >= 1, "dimensions must be positive");
            anyhow::ensure!(
                max_norm > 0.0 && max_norm.is_finite(),
                "--max-norm must be positive"
            );
            let mut rng = seeded_rng(seed);
            let trace = trace_inequality_suite(&mut rng, trials, dim)?;
            let gronwall = gronwall_suite(&mut rng, trials, gronwall_dim, max_norm, s_points)?;
            print_suite("trace inequality", &trace);
            print_suite("gronwall bound", &gronwall);
            Ok(trace.failures == 0 && gronwall.failures == 0)
        }
        Command::Sweep {
            config,
            param,
            values,
            max_dim,
            output_dir,
        } => {
            let base = load_config(&config)?;
            let root = output_dir.unwrap_or_else(|| base.output.dir.clone());
            if let SweepParam::T = param {
                let mut cfg = base;
                cfg.t_values = values;
                cfg.validate()?;
                return run_one(&cfg, max_dim, &root, false);
            }
            let mut all = true;
            for v in values {
                let mut cfg = base.clone();
                match param {
                    SweepParam::Alpha => cfg.alpha_m = v,
                    SweepParam::C => cfg.c = Some(v),
                    SweepParam::T => unreachable!(),
                }
                cfg.validate()?;
                let label = sweep_label(param, v);
                println!("== {label}");
                all &= run_one(&cfg, max_dim, &root.join(&label), false)?;
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
