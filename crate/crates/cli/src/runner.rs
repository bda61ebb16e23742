//! Experiment pipeline: model → state → FCS → bounds.

use std::fs;
use std::path::Path;
use std::time::Instant;

use fcstat_core::bounds::{
    log_grid, strong_tail_from_r, tail_bound_check, theorem_report, FirstLawReport,
    HeatFromCoupling, Regularity, RegularityReport, StrongTailOptimum, TailCheck, DEFAULT_C_GRID,
};
use fcstat_core::fcs::{moments, FcsEngine, FcsTolerances};
use fcstat_core::linalg::{DEFAULT_MAX_DIM, EXP_LIMIT};
use fcstat_core::models::{
    build_anderson_with_limit, build_explicit, build_xy_lattice_with_limit, gibbs_product_state,
    random_pure,
};
use fcstat_core::{
    Complex64, ComplexMatrix, DensityMatrix, Error, FcsDistribution, HermitianOperator,
    PartitionedSystem,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, ModelConfig, StateConfig};

/// Environment variable capping the number of worker threads.
pub const MAX_WORKERS_ENV: &str = "FCS_MAX_WORKERS";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{stage} stage failed")]
    Stage { stage: &'static str, source: Error },
    #[error("model: {0}")]
    Model(String),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

fn stage(stage: &'static str) -> impl Fn(Error) -> RunError {
    move |source| RunError::Stage { stage, source }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub label: String,
    pub dim: usize,
    pub v_norm: f64,
    pub n_levels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeRecord {
    pub t: f64,
    pub n_atoms: usize,
    pub max_abs_delta_e: f64,
    pub mean: f64,
    pub mean_over_t: f64,
    pub exp_moment: f64,
    pub theorem_bound: f64,
    pub theorem_pass: bool,
    pub tail: TailCheck,
    /// Strong tail bound at the configured `C`, if any and representable.
    pub strong_tail: Option<TailCheck>,
    /// Strong tail bound at the best `C` of the log grid.
    pub strong_tail_optimum: Option<StrongTailOptimum>,
    pub first_law: FirstLawReport,
    /// `|𝔼_t(ΔE)| ≤ 2‖V‖ + 1e−8`.
    pub mean_current_pass: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub model: ModelSummary,
    /// `R(α_m)`.
    pub regularity: RegularityReport,
    /// `R(C/ε)` for the configured `C`, when representable.
    pub strong_regularity: Option<RegularityReport>,
    pub records: Vec<TimeRecord>,
    pub pass: bool,
}

/// Wall-clock seconds per stage. Kept out of [`RunReport`] so that reports
/// are reproducible byte for byte.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub setup: f64,
    pub per_t: Vec<f64>,
    pub total: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    pub distributions: Vec<FcsDistribution>,
    pub timings: Timings,
}

#[derive(Deserialize)]
struct ExplicitMatrices {
    h_a: Vec<Vec<[f64; 2]>>,
    h_b: Vec<Vec<[f64; 2]>>,
    v: Vec<Vec<[f64; 2]>>,
}

fn operator(rows: &[Vec<[f64; 2]>], name: &str) -> Result<HermitianOperator, RunError> {
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
        .and_then(HermitianOperator::new)
        .map_err(|e| RunError::Model(format!("{name}: {e}")))
}

pub fn build_model(model: &ModelConfig, max_dim: usize) -> Result<PartitionedSystem, RunError> {
    match model {
        ModelConfig::XyLattice { .. } => {
            let spec = model.xy_spec().expect("xy model");
            build_xy_lattice_with_limit(&spec, max_dim).map_err(stage("model"))
        }
        ModelConfig::Anderson(a) => {
            let spec = a.to_spec().map_err(|e| RunError::Model(e.to_string()))?;
            build_anderson_with_limit(&spec, max_dim).map_err(stage("model"))
        }
        ModelConfig::Explicit { path } => {
            let text = fs::read_to_string(path)
                .map_err(|e| RunError::Model(format!("{}: {e}", path.display())))?;
            let m: ExplicitMatrices = serde_json::from_str(&text)
                .map_err(|e| RunError::Model(format!("{}: {e}", path.display())))?;
            let (h_a, h_b, v) = (
                operator(&m.h_a, "h_a")?,
                operator(&m.h_b, "h_b")?,
                operator(&m.v, "v")?,
            );
            if h_a.dim() > max_dim {
                return Err(stage("model")(Error::SizeLimit {
                    dim: h_a.dim(),
                    max: max_dim,
                }));
            }
            build_explicit(h_a, h_b, v).map_err(stage("model"))
        }
    }
}

pub fn build_state(
    state: &StateConfig,
    system: &PartitionedSystem,
) -> Result<DensityMatrix, RunError> {
    match *state {
        StateConfig::MaximallyMixed => Ok(DensityMatrix::maximally_mixed(system.dim())),
        StateConfig::GibbsProduct { beta_a, beta_b } => {
            gibbs_product_state(system, beta_a, beta_b).map_err(stage("state"))
        }
        StateConfig::PureRandom { seed } => Ok(random_pure(system.dim(), seed)),
    }
}

/// `R(x)` on the refined grid, `None` when `e^{R(x)}` is not representable.
fn regularity_if_representable(
    reg: &Regularity,
    x: f64,
    s_points: usize,
) -> Result<Option<RegularityReport>, RunError> {
    match reg.evaluate_refined(x, s_points) {
        Ok(r) if r.r_value <= EXP_LIMIT => Ok(Some(r)),
        Ok(_) | Err(Error::Overflow { .. }) => Ok(None),
        Err(e) => Err(stage("regularity")(e)),
    }
}

fn worker_pool() -> Result<rayon::ThreadPool, RunError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(MAX_WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| RunError::Pool(e.to_string()))
}

/// Runs the full pipeline. `max_dim` overrides the config's dimension budget.
/// Times are processed in parallel; records keep the order of `t_values`.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    max_dim: Option<usize>,
) -> Result<RunOutcome, RunError> {
    let start = Instant::now();
    let max_dim = max_dim.or(cfg.max_dim).unwrap_or(DEFAULT_MAX_DIM);
    let system = build_model(&cfg.model, max_dim)?;
    log::info!("built {} (dim {})", system.label(), system.dim());
    let rho = build_state(&cfg.state, &system)?;
    let tolerances = FcsTolerances {
        cluster_tol: cfg.tolerances.cluster_tol,
        bin_tol: cfg.tolerances.bin_tol,
    };
    let engine = FcsEngine::new(&system, &rho, tolerances).map_err(stage("fcs"))?;
    let v_norm = system.v_norm().map_err(stage("model"))?;

    let reg = Regularity::new(&system).map_err(stage("regularity"))?;
    let regularity = reg
        .evaluate_refined(cfg.alpha_m, cfg.s_points)
        .map_err(stage("regularity"))?;
    let strong_regularity = match cfg.c {
        Some(c) => regularity_if_representable(&reg, c / cfg.epsilon, cfg.s_points)?,
        None => None,
    };
    let (lo, hi, _) = DEFAULT_C_GRID;
    let c_values = if cfg.c_grid_points == 0 {
        Vec::new()
    } else {
        log_grid(lo, hi, cfg.c_grid_points)
    };
    let pool = worker_pool()?;
    let c_grid: Vec<(f64, RegularityReport)> = pool
        .install(|| {
            c_values
                .into_par_iter()
                .map(|c| {
                    Ok(
                        regularity_if_representable(&reg, c / cfg.epsilon, cfg.s_points)?
                            .map(|r| (c, r)),
                    )
                })
                .collect::<Result<Vec<_>, RunError>>()
        })?
        .into_iter()
        .flatten()
        .collect();
    let heat =
        HeatFromCoupling::new(&system, engine.pinched_state()).map_err(stage("first law"))?;
    let setup = start.elapsed().as_secs_f64();

    let per_t: Vec<(TimeRecord, FcsDistribution, f64)> = pool.install(|| {
        cfg.t_values
            .par_iter()
            .map(|&t| {
                let t0 = Instant::now();
                let d = engine.distribution(t).map_err(stage("fcs"))?;
                let theorem =
                    theorem_report(&d, t, cfg.alpha_m, &regularity).map_err(stage("theorem"))?;
                let tail = tail_bound_check(&d, t, cfg.epsilon, cfg.alpha_m, regularity.r_value)
                    .map_err(stage("tail"))?;
                let strong_tail = match (cfg.c, strong_regularity) {
                    (Some(c), Some(r)) => Some(
                        strong_tail_from_r(&d, t, cfg.epsilon, c, r.r_value)
                            .map_err(stage("tail"))?,
                    ),
                    _ => None,
                };
                let mut strong_tail_optimum: Option<StrongTailOptimum> = None;
                for &(c, r) in &c_grid {
                    let check = strong_tail_from_r(&d, t, cfg.epsilon, c, r.r_value)
                        .map_err(stage("tail"))?;
                    if check.bound.is_finite()
                        && strong_tail_optimum.is_none_or(|b| check.bound < b.check.bound)
                    {
                        strong_tail_optimum = Some(StrongTailOptimum { c, check });
                    }
                }
                let mean = moments(&d, 1);
                let first_law = FirstLawReport::from_parts(t, mean, heat.at(t));
                let mean_current_pass = mean.abs() <= 2.0 * v_norm + 1e-8;
                let pass = theorem.pass
                    && tail.pass
                    && strong_tail.is_none_or(|s| s.pass)
                    && strong_tail_optimum.is_none_or(|s| s.check.pass)
                    && first_law.pass
                    && mean_current_pass;
                let record = TimeRecord {
                    t,
                    n_atoms: d.len(),
                    max_abs_delta_e: d.max_abs_delta_e(),
                    mean,
                    mean_over_t: first_law.mean_over_t,
                    exp_moment: theorem.lhs,
                    theorem_bound: theorem.rhs,
                    theorem_pass: theorem.pass,
                    tail,
                    strong_tail,
                    strong_tail_optimum,
                    first_law,
                    mean_current_pass,
                    pass,
                };
                Ok((record, d, t0.elapsed().as_secs_f64()))
            })
            .collect::<Result<Vec<_>, RunError>>()
    })?;

    let mut records = Vec::with_capacity(per_t.len());
    let mut distributions = Vec::with_capacity(per_t.len());
    let mut times = Vec::with_capacity(per_t.len());
    for (r, d, s) in per_t {
        records.push(r);
        distributions.push(d);
        times.push(s);
    }
    let pass = records.iter().all(|r| r.pass);
    let report = RunReport {
        config: cfg.clone(),
        model: ModelSummary {
            label: system.label().to_string(),
            dim: system.dim(),
            v_norm,
            n_levels: engine.decomposition().levels().len(),
        },
        regularity,
        strong_regularity,
        records,
        pass,
    };
    let timings = Timings {
        setup,
        per_t: times,
        total: start.elapsed().as_secs_f64(),
    };
    Ok(RunOutcome {
        report,
        distributions,
        timings,
    })
}

/// Writes the report and one distribution file per time into `dir`.
pub fn write_outputs(outcome: &RunOutcome, dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    use crate::config::OutputFormat;
    use crate::emit::{distribution_file_name, emit_distribution, emit_report, emit_report_json};

    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for format in &outcome.report.config.output.formats {
        let path = match format {
            OutputFormat::Csv => {
                let p = dir.join("report.csv");
                emit_report(&outcome.report, &p)?;
                p
            }
            OutputFormat::Json => {
                let p = dir.join("report.json");
                emit_report_json(&outcome.report, &p)?;
                p
            }
        };
        written.push(path);
    }
    for (k, d) in outcome.distributions.iter().enumerate() {
        let p = dir.join(distribution_file_name(k, outcome.report.records[k].t));
        emit_distribution(d, &p)?;
        written.push(p);
    }
    Ok(written)
}
