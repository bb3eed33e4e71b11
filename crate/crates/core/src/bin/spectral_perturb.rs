//! Command-line front end: data ingestion, experiment drivers, and JSON/CSV
//! reporting over the library. All randomness flows from `--seed`; output for
//! identical arguments is byte-identical across runs.
//!
//! Exit codes: 0 success, 1 invariant violation (or runtime failure),
//! 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spectral_perturb::bounds::analyze_bordered;
use spectral_perturb::cs::{cross_gram_tail, design_to_csv, DesignMatrix, Ensemble, SubsetExperiment};
use spectral_perturb::error::{Error, Result};
use spectral_perturb::io::{
    load_graph, load_pinning_input, load_rect_matrix, load_symmetric_matrix, load_vector,
    ASYMMETRY_WARN_THRESHOLD,
};
use spectral_perturb::jacobi::to_arrowhead;
use spectral_perturb::matrix::BorderedSpec;
use spectral_perturb::pinning::KappaThreshold;
use spectral_perturb::report::{fmt_f64, JsonObject};
use spectral_perturb::secular::SecularProblem;
use spectral_perturb::verify::{
    graph_json, json_array, random_bordered_spec, run_battery, BatteryConfig,
};

/// Thread cap for trial-parallel drivers; 0 or unset picks the default.
const THREADS_ENV: &str = "SPECTRAL_PERTURB_THREADS";

#[derive(Parser)]
#[command(name = "spectral-perturb", version, about = "Eigenvalue perturbation bounds for bordered symmetric matrices", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable bound for a bordered matrix against the
    /// exact values.
    Bounds {
        /// Symmetric block matrix (CSV rows or JSON {"dim", "entries"}).
        #[arg(long)]
        input: PathBuf,
        /// Border vector (CSV row/column or JSON array).
        #[arg(long)]
        vector: PathBuf,
        /// Corner scalar.
        #[arg(long)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact extreme eigenvalues via the secular equation, with the oracle
    /// cross-check.
    Secular {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph connectivity reports and the edge-deletion bound.
    Graph {
        /// Edge-list file ("n m" header then "u v" lines) or JSON graph.
        #[arg(long)]
        edges: PathBuf,
        /// Report the connectivity bound for deleting this edge.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        delete: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Pinning controllability: condition, bounds and gain threshold.
    Pinning {
        /// Problem JSON (graph, pinned, sigma, f_bound, scalars or Q/B).
        #[arg(long)]
        problem: PathBuf,
        /// Feedback gain; overrides the problem file.
        #[arg(long)]
        kappa: Option<f64>,
        /// Sweep "start:end:step" producing CSV of bound vs exact.
        #[arg(long)]
        kappa_sweep: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Column-subset experiments on a design matrix.
    Cs {
        /// Generate a design: "gaussian" or "bernoulli" (normalized columns).
        #[arg(long)]
        gen: Option<String>,
        /// Or load one from CSV (columns are normalized on load).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 40)]
        p: usize,
        /// Subset size per trial.
        #[arg(long, default_value_t = 4)]
        s: usize,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Deviation offset in the cross-Gram threshold.
        #[arg(long, default_value_t = 0.1)]
        t: f64,
        /// Restricted isometry target in (0, 1/2).
        #[arg(long, default_value_t = 0.25)]
        rho: f64,
        #[arg(long, default_value_t = 0.125)]
        c_const: f64,
        /// Also dump the generated design to this CSV path.
        #[arg(long)]
        dump_design: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized invariant battery.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Largest random block dimension (desk scale, <= 12).
        #[arg(long, default_value_t = 6)]
        dim: usize,
        /// Slack tolerance for oracle comparisons.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the battery's bordered-spec instances as CSV fixtures here.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Corrupt one bound to prove the detector trips.
        #[arg(long, default_value_t = false)]
        inject_fault: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn init_threads() {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(threads) = v.trim().parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, format!("{content}\n"))?;
        }
        None => println!("{content}"),
    }
    Ok(())
}

fn load_spec(input: &Path, vector: &Path, c: f64) -> Result<BorderedSpec> {
    let (m, asym) = load_symmetric_matrix(input)?;
    if asym > ASYMMETRY_WARN_THRESHOLD {
        eprintln!(
            "warning: {} symmetrized; max asymmetry {asym:e} exceeds {ASYMMETRY_WARN_THRESHOLD:e}",
            input.display()
        );
    }
    let a = load_vector(vector)?;
    BorderedSpec::new(m, a, c)
}

fn csv_field(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn cmd_bounds(input: &Path, vector: &Path, c: f64, out: &Option<PathBuf>, format: Format) -> Result<()> {
    let spec = load_spec(input, vector, c)?;
    let analysis = analyze_bordered(&spec)?;
    match format {
        Format::Json => emit(out, &analysis.to_json()),
        Format::Csv => {
            let mut lines = vec!["method,lower,upper,exact,slack_lower,slack_upper".to_string()];
            for r in &analysis.reports {
                lines.push(format!(
                    "{},{},{},{},{},{}",
                    r.method,
                    csv_field(r.lower),
                    csv_field(r.upper),
                    csv_field(r.exact),
                    csv_field(r.slack_lower),
                    csv_field(r.slack_upper)
                ));
            }
            emit(out, &lines.join("\n"))
        }
    }
}

fn cmd_secular(input: &Path, vector: &Path, c: f64, out: &Option<PathBuf>) -> Result<()> {
    let spec = load_spec(input, vector, c)?;
    let arrow = to_arrowhead(&spec)?;
    let problem = SecularProblem::from_arrowhead(&arrow)?;
    let oracle = spectral_perturb::jacobi::jacobi_eigen(
        &spectral_perturb::matrix::assemble_bordered(&spec),
    )?;
    let mut obj = JsonObject::new();
    obj.push_f64("lambda_max", problem.largest_eigenvalue())
        .push_f64("lambda_min", problem.smallest_eigenvalue())
        .push_f64("lambda_max_oracle", oracle.largest())
        .push_f64("lambda_min_oracle", oracle.smallest())
        .push_raw("poles", json_array(problem.poles()))
        .push_raw("weights", json_array(problem.weights()))
        .push_f64("c", problem.corner());
    emit(out, &obj.finish())
}

fn cmd_graph(
    edges: &Path,
    delete: &Option<Vec<usize>>,
    out: &Option<PathBuf>,
    format: Format,
) -> Result<()> {
    let graph = load_graph(edges)?;
    if let Some(pair) = delete {
        let report = graph.edge_append_bound(pair[0], pair[1])?;
        return match format {
            Format::Json => emit(out, &report.to_json()),
            Format::Csv => {
                let lines = vec![
                    "method,lower,exact,slack_lower".to_string(),
                    format!(
                        "{},{},{},{}",
                        report.method,
                        csv_field(report.lower),
                        csv_field(report.exact),
                        csv_field(report.slack_lower)
                    ),
                ];
                emit(out, &lines.join("\n"))
            }
        };
    }
    let mut obj = JsonObject::new();
    obj.push_usize("n", graph.vertex_count())
        .push_usize("m", graph.edge_count())
        .push_usize("components", graph.connected_components())
        .push_f64("algebraic_connectivity", graph.algebraic_connectivity()?)
        .push_f64(
            "complement_lower_bound",
            graph.connectivity_lower_from_complement()?,
        )
        .push_raw("graph", graph_json(&graph));
    emit(out, &obj.finish())
}

fn parse_sweep(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::input(format!(
            "sweep must be start:end:step, got '{spec}'"
        )));
    }
    let parse = |s: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::input(format!("bad sweep number '{s}'")))
    };
    let (start, end, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if !(step > 0.0) || end < start {
        return Err(Error::input(format!("bad sweep range '{spec}'")));
    }
    Ok((start, end, step))
}

fn cmd_pinning(
    problem_path: &Path,
    kappa: Option<f64>,
    sweep: &Option<String>,
    out: &Option<PathBuf>,
) -> Result<()> {
    let input = load_pinning_input(problem_path)?;

    if let Some(sweep) = sweep {
        let (start, end, step) = parse_sweep(sweep)?;
        let mut lines =
            vec!["kappa,iterative_lower_bound,scaled_lower_bound,oracle_smallest_nonzero,margin"
                .to_string()];
        let mut k = start;
        let mut i = 0u64;
        while k <= end + 1e-12 * step {
            let problem = input.problem(k)?;
            let report = problem.controllability_condition()?;
            lines.push(format!(
                "{},{},{},{},{}",
                fmt_f64(k),
                csv_field(problem.iterative_lower_bound()?),
                csv_field(problem.iterative_lower_bound_scaled()?),
                fmt_f64(problem.coupling_smallest_nonzero()?),
                fmt_f64(report.margin)
            ));
            i += 1;
            k = start + step * i as f64;
        }
        return emit(out, &lines.join("\n"));
    }

    let kappa = kappa
        .or(input.kappa)
        .ok_or_else(|| Error::input("no kappa: pass --kappa or put it in the problem file"))?;
    let problem = input.problem(kappa)?;
    let condition = problem.controllability_condition()?;
    let mut obj = JsonObject::new();
    obj.push_f64("kappa", kappa)
        .push_f64("sigma_lambda0", problem.sigma_lambda0()?)
        .push_opt_f64("iterative_lower_bound", problem.iterative_lower_bound()?)
        .push_opt_f64(
            "scaled_lower_bound",
            problem.iterative_lower_bound_scaled()?,
        )
        .push_f64(
            "oracle_smallest_nonzero",
            problem.coupling_smallest_nonzero()?,
        )
        .push_raw("controllability", condition.to_json());
    match problem.kappa_threshold()? {
        KappaThreshold::Feasible(th) => {
            obj.push_f64("kappa_threshold", th);
        }
        KappaThreshold::Infeasible { margin } => {
            obj.push_f64("kappa_threshold_infeasible_margin", margin);
        }
    }
    emit(out, &obj.finish())
}

#[allow(clippy::too_many_arguments)]
fn cmd_cs(
    gen: &Option<String>,
    input: &Option<PathBuf>,
    n: usize,
    p: usize,
    s: usize,
    trials: usize,
    seed: u64,
    t: f64,
    rho: f64,
    c_const: f64,
    dump_design: &Option<PathBuf>,
    out: &Option<PathBuf>,
) -> Result<()> {
    let dm = match (gen, input) {
        (Some(name), None) => DesignMatrix::generate(n, p, Ensemble::parse(name)?, seed)?,
        (None, Some(path)) => DesignMatrix::from_mat(load_rect_matrix(path)?, true)?,
        _ => {
            return Err(Error::input(
                "pass exactly one of --gen ENSEMBLE or --input FILE",
            ))
        }
    };
    if let Some(path) = dump_design {
        std::fs::write(path, design_to_csv(&dm))?;
    }
    let exp = SubsetExperiment::new(s, trials, seed, t, rho, c_const)?;
    let report = cross_gram_tail(&dm, &exp)?;
    emit(out, &report.to_json())
}

fn emit_fixtures(dir: &Path, seed: u64, trials: usize, dim: usize) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for trial in 0..trials as u64 {
        let spec = random_bordered_spec(seed, trial, 2, dim);
        let mut matrix_csv = String::new();
        for i in 0..spec.m.dim() {
            let line: Vec<String> = spec.m.row(i).iter().map(|&v| fmt_f64(v)).collect();
            matrix_csv.push_str(&line.join(","));
            matrix_csv.push('\n');
        }
        let vector_csv: Vec<String> = spec.a.iter().map(|&v| fmt_f64(v)).collect();
        std::fs::write(dir.join(format!("spec_{trial}_m.csv")), matrix_csv)?;
        std::fs::write(
            dir.join(format!("spec_{trial}_a.csv")),
            format!("{}\n", vector_csv.join(",")),
        )?;
        std::fs::write(
            dir.join(format!("spec_{trial}_c.txt")),
            format!("{}\n", fmt_f64(spec.c)),
        )?;
    }
    Ok(())
}

fn cmd_verify(
    seed: u64,
    trials: usize,
    dim: usize,
    tol: f64,
    emit_dir: &Option<PathBuf>,
    inject_fault: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    if !(tol > 0.0) {
        return Err(Error::input(format!("tolerance must be positive, got {tol}")));
    }
    let mut cfg = BatteryConfig::new(seed, trials, dim)?;
    cfg.tolerance = tol;
    cfg.inject_fault = inject_fault;

    if let Some(dir) = emit_dir {
        emit_fixtures(dir, seed, trials, dim)?;
    }
    if trials == 0 {
        eprintln!("warning: 0 trials requested; vacuous pass");
        emit(out, "{\"trials\":0,\"violations_total\":0,\"counts\":[],\"violations\":[]}")?;
        return Ok(ExitCode::SUCCESS);
    }
    let summary = run_battery(&cfg)?;
    for v in &summary.violations {
        eprintln!(
            "violation [{}]: {}; instance for replay: {}",
            v.invariant, v.detail, v.instance
        );
    }
    emit(out, &summary.to_json())?;
    if summary.ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Bounds {
            input,
            vector,
            c,
            out,
            format,
        } => {
            cmd_bounds(input, vector, *c, out, *format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Secular {
            input,
            vector,
            c,
            out,
        } => {
            cmd_secular(input, vector, *c, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph {
            edges,
            delete,
            out,
            format,
        } => {
            cmd_graph(edges, delete, out, *format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pinning {
            problem,
            kappa,
            kappa_sweep,
            out,
        } => {
            cmd_pinning(problem, *kappa, kappa_sweep, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cs {
            gen,
            input,
            n,
            p,
            s,
            trials,
            seed,
            t,
            rho,
            c_const,
            dump_design,
            out,
        } => {
            cmd_cs(
                gen, input, *n, *p, *s, *trials, *seed, *t, *rho, *c_const, dump_design, out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            seed,
            trials,
            dim,
            tol,
            emit,
            inject_fault,
            out,
        } => cmd_verify(*seed, *trials, *dim, *tol, emit, *inject_fault, out),
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
