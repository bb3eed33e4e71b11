//! Randomized invariant battery.
//!
//! Runs every provable invariant of the crate over seeded random instances
//! and counts violations per invariant. A violation serializes the offending
//! instance as JSON so it can be replayed. The pinned tolerances live here,
//! next to the checks that use them.
//!
//! Instance generation is substream-indexed: trial `k` of seed `s` depends
//! only on `(s, k)`, so batteries are reproducible and the same generators
//! are reused by the acceptance suite.

use std::collections::BTreeMap;

use crate::bounds::{
    correction_term, ipsen_nadler, lili_two_sided, mathias_arrowhead, opnorm_bounds,
    smallest_nonzero_corollaries, smallest_nonzero_lower, weyl_arrowhead, IpsenNadlerInputs,
    LiLiInputs,
};
use crate::cs::{DesignMatrix, Ensemble};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::jacobi::{jacobi_eigen, rank_at_tolerance, to_arrowhead, zero_tolerance};
use crate::matrix::{assemble_bordered, norm2, BorderedSpec, Mat, SymmetricMatrix};
use crate::pinning::{KappaThreshold, PinningProblem};
use crate::report::{fmt_f64, JsonObject};
use crate::rng::SplitMix64;
use crate::secular::SecularProblem;

#[derive(Debug, Clone)]
pub struct BatteryConfig {
    pub seed: u64,
    pub trials: usize,
    /// Largest block dimension used for random instances (desk scale, <= 12).
    pub dim: usize,
    /// Slack tolerance for oracle comparisons, relative to `1 + |exact|`.
    pub tolerance: f64,
    /// Corrupt one bound on trial 0 to prove the detector works.
    pub inject_fault: bool,
}

impl BatteryConfig {
    pub fn new(seed: u64, trials: usize, dim: usize) -> Result<Self> {
        if !(2..=12).contains(&dim) {
            return Err(Error::input(format!(
                "dimension must lie in 2..=12 (desk scale), got {dim}"
            )));
        }
        Ok(BatteryConfig {
            seed,
            trials,
            dim,
            tolerance: 1e-9,
            inject_fault: false,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
    pub instance: String,
}

#[derive(Debug, Clone, Default)]
pub struct BatterySummary {
    pub trials: usize,
    /// invariant name -> (checks, violations)
    pub counts: BTreeMap<&'static str, (usize, usize)>,
    pub violations: Vec<Violation>,
}

impl BatterySummary {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        let counts: Vec<String> = self
            .counts
            .iter()
            .map(|(name, (checks, violations))| {
                let mut obj = JsonObject::new();
                obj.push_str("invariant", name)
                    .push_usize("checks", *checks)
                    .push_usize("violations", *violations);
                obj.finish()
            })
            .collect();
        let violations: Vec<String> = self
            .violations
            .iter()
            .map(|v| {
                let mut obj = JsonObject::new();
                obj.push_str("invariant", v.invariant)
                    .push_str("detail", &v.detail)
                    .push_raw("instance", v.instance.clone());
                obj.finish()
            })
            .collect();
        format!(
            "{{\"trials\":{},\"violations_total\":{},\"counts\":[{}],\"violations\":[{}]}}",
            self.trials,
            self.violations.len(),
            counts.join(","),
            violations.join(",")
        )
    }

    fn record(
        &mut self,
        invariant: &'static str,
        ok: bool,
        detail: impl FnOnce() -> String,
        instance: impl FnOnce() -> String,
    ) {
        let entry = self.counts.entry(invariant).or_insert((0, 0));
        entry.0 += 1;
        if !ok {
            entry.1 += 1;
            self.violations.push(Violation {
                invariant,
                detail: detail(),
                instance: instance(),
            });
        }
    }
}

pub fn json_array(values: &[f64]) -> String {
    let body: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
    format!("[{}]", body.join(","))
}

pub fn matrix_json(m: &SymmetricMatrix) -> String {
    let rows: Vec<String> = (0..m.dim()).map(|i| json_array(m.row(i))).collect();
    format!("{{\"dim\":{},\"entries\":[{}]}}", m.dim(), rows.join(","))
}

pub fn spec_json(spec: &BorderedSpec) -> String {
    format!(
        "{{\"m\":{},\"a\":{},\"c\":{}}}",
        matrix_json(&spec.m),
        json_array(&spec.a),
        fmt_f64(spec.c)
    )
}

pub fn graph_json(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("[{u},{v}]")).collect();
    format!(
        "{{\"n\":{},\"edges\":[{}]}}",
        g.vertex_count(),
        edges.join(",")
    )
}

/// Random bordered spec with Gaussian entries, block dimension uniform in
/// `d_min..=d_max`, fully determined by `(seed, trial)`.
pub fn random_bordered_spec(seed: u64, trial: u64, d_min: usize, d_max: usize) -> BorderedSpec {
    let mut g = SplitMix64::substream(seed, trial);
    let d = d_min + (g.next_u64() % (d_max - d_min + 1) as u64) as usize;
    let m = SymmetricMatrix::from_fn(d, |_, _| g.next_gaussian());
    let a: Vec<f64> = (0..d).map(|_| g.next_gaussian()).collect();
    let c = g.next_gaussian();
    BorderedSpec::new(m, a, c).expect("generated spec is consistent")
}

/// Random PSD spec with controlled rank `r < d`: the block is `FᵗF` for a
/// Gaussian `r x d` factor. Returns the spec and the constructed rank.
pub fn random_psd_spec(seed: u64, trial: u64, d_min: usize, d_max: usize) -> (BorderedSpec, usize) {
    let mut g = SplitMix64::substream(seed, trial);
    let d = d_min.max(2) + (g.next_u64() % (d_max - d_min.max(2) + 1) as u64) as usize;
    let r = 1 + (g.next_u64() % (d as u64 - 1)) as usize;
    let cols: Vec<Vec<f64>> = (0..d)
        .map(|_| (0..r).map(|_| g.next_gaussian()).collect())
        .collect();
    let factor = Mat::from_columns(cols).expect("consistent factor");
    let a: Vec<f64> = (0..d).map(|_| g.next_gaussian()).collect();
    let c = g.next_gaussian();
    (
        BorderedSpec::new(factor.gram(), a, c).expect("generated spec is consistent"),
        r,
    )
}

/// Random simple graph on `n_min..=n_max` vertices with edge probability
/// `edge_prob`; guaranteed at least one edge.
pub fn random_graph(seed: u64, trial: u64, n_min: usize, n_max: usize, edge_prob: f64) -> Graph {
    let mut g = SplitMix64::substream(seed, trial);
    let n = n_min + (g.next_u64() % (n_max - n_min + 1) as u64) as usize;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.next_f64() < edge_prob {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 1));
    }
    Graph::new(n, &edges).expect("generated edges are valid")
}

pub fn run_battery(cfg: &BatteryConfig) -> Result<BatterySummary> {
    let mut summary = BatterySummary {
        trials: cfg.trials,
        ..Default::default()
    };
    for trial in 0..cfg.trials as u64 {
        check_bordered_invariants(cfg, trial, &mut summary)?;
        check_psd_invariants(cfg, trial, &mut summary)?;
        check_rank_one_invariants(cfg, trial, &mut summary)?;
        check_graph_invariants(cfg, trial, &mut summary)?;
        check_pinning_invariants(cfg, trial, &mut summary)?;
        check_cs_invariants(cfg, trial, &mut summary)?;
    }
    Ok(summary)
}

fn check_bordered_invariants(
    cfg: &BatteryConfig,
    trial: u64,
    summary: &mut BatterySummary,
) -> Result<()> {
    let spec = random_bordered_spec(cfg.seed, trial, 2, cfg.dim);
    let instance = || spec_json(&spec);

    let block = jacobi_eigen(&spec.m)?;
    let full = jacobi_eigen(&assemble_bordered(&spec))?;
    let arrow = to_arrowhead(&spec)?;
    let reduced = jacobi_eigen(&assemble_bordered(&arrow.to_bordered()))?;

    let lam_max = full.largest();
    let scale = 1.0 + lam_max.abs();

    // Similarity: the arrowhead reduction preserves the spectrum.
    let sim_err = full
        .eigenvalues()
        .iter()
        .zip(reduced.eigenvalues())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    summary.record(
        "similarity",
        sim_err <= 1e-9 * scale,
        || format!("spectra differ by {sim_err:e}"),
        instance,
    );

    // Interlacing against the block.
    let slack = 1e-10 * (1.0 + block.largest().abs());
    let interlaces = lam_max >= block.largest() - slack && full.smallest() <= block.smallest() + slack;
    summary.record(
        "interlacing",
        interlaces,
        || {
            format!(
                "lambda_1(A)={} vs lambda_1(M)={}, lambda_d+1(A)={} vs lambda_d(M)={}",
                lam_max,
                block.largest(),
                full.smallest(),
                block.smallest()
            )
        },
        instance,
    );

    // Trace and Frobenius conservation through the rotations.
    let a_mat = assemble_bordered(&spec);
    let tr = a_mat.trace();
    let tr_eigs: f64 = full.eigenvalues().iter().sum();
    let fr = a_mat.frobenius_norm();
    let fr_eigs = full.eigenvalues().iter().map(|l| l * l).sum::<f64>().sqrt();
    summary.record(
        "conservation",
        (tr - tr_eigs).abs() <= 1e-10 * (1.0 + tr.abs())
            && (fr - fr_eigs).abs() <= 1e-10 * (1.0 + fr),
        || format!("trace {tr} vs {tr_eigs}, frobenius {fr} vs {fr_eigs}"),
        instance,
    );

    // Secular route agrees with the oracle and its root is bracketed.
    let problem = SecularProblem::from_arrowhead(&arrow)?;
    let sec_max = problem.largest_eigenvalue();
    let sec_min = problem.smallest_eigenvalue();
    summary.record(
        "secular_oracle",
        (sec_max - lam_max).abs() <= 1e-9 * scale
            && (sec_min - full.smallest()).abs() <= 1e-9 * (1.0 + full.smallest().abs()),
        || format!("secular ({sec_max}, {sec_min}) vs oracle ({lam_max}, {})", full.smallest()),
        instance,
    );

    let weights_l1: f64 = problem.weights().iter().sum();
    let live = problem
        .weights()
        .iter()
        .all(|&w| w > 1e-12 * weights_l1.max(f64::MIN_POSITIVE));
    if live {
        let lam1 = problem.poles()[0];
        let lam_star = 0.5 * (problem.corner() + lam1)
            + 0.5 * ((problem.corner() - lam1).powi(2) + 4.0 * weights_l1).sqrt();
        let eps = 1e-6 * (1.0 + lam1.abs() + weights_l1);
        let interior = sec_max - eps > lam1;
        let signs_ok = if interior {
            problem.eval(sec_max - eps).map_or(false, |v| v > 0.0)
                && problem.eval(sec_max + eps).map_or(false, |v| v < 0.0)
        } else {
            true
        };
        summary.record(
            "secular_bracket",
            sec_max > lam1 && sec_max <= lam_star + 1e-12 * scale && signs_ok,
            || format!("root {sec_max} outside ({lam1}, {lam_star}] or sign test failed"),
            instance,
        );
    }
    summary.record(
        "secular_negation",
        problem.largest_eigenvalue() == -problem.negated().smallest_eigenvalue(),
        || "negation mirror not exact".to_string(),
        instance,
    );

    // Two-sided sandwich, with optional fault injection for self-testing.
    let inputs = LiLiInputs::from_spectrum(&block, &spec.a, spec.c)?;
    let report = lili_two_sided(&inputs);
    let mut upper = report.upper.expect("two-sided report has an upper bound");
    let lower = report.lower.expect("two-sided report has a lower bound");
    if cfg.inject_fault && trial == 0 {
        upper = lam_max - 0.01 * scale;
    }
    let tol = cfg.tolerance * scale;
    summary.record(
        "sandwich",
        lower <= lam_max + tol && upper >= lam_max - tol,
        || format!("bounds [{lower}, {upper}] miss exact {lam_max}"),
        instance,
    );

    // Dominance of the stronger bound over its weakenings.
    let lam1 = block.largest();
    let a_norm = norm2(&spec.a);
    let weyl = weyl_arrowhead(lam1, spec.c, a_norm);
    let tight = 1e-12 * scale;
    let mut dominated = report.upper.unwrap() <= weyl + tight;
    if let Some(m) = mathias_arrowhead(lam1, spec.c, a_norm) {
        dominated &= report.upper.unwrap() <= m + tight;
    }
    dominated &= lower >= spec.c.max(lam1) - tight;
    summary.record(
        "dominance",
        dominated,
        || "weakened bound fell below the two-sided one".to_string(),
        instance,
    );

    // Spectral shift invariance at t = 1 and t = 10.
    let mut shift_ok = true;
    for t in [1.0, 10.0] {
        let shifted = LiLiInputs::new(lam1 + t, spec.c + t, a_norm, inputs.a_dot_v1)?;
        let rs = lili_two_sided(&shifted);
        let tol_shift = 1e-12 * (scale + t);
        shift_ok &= (rs.lower.unwrap() - (lower + t)).abs() <= tol_shift;
        shift_ok &= (rs.upper.unwrap() - (report.upper.unwrap() + t)).abs() <= tol_shift;
        shift_ok &=
            (weyl_arrowhead(lam1 + t, spec.c + t, a_norm) - (weyl + t)).abs() <= tol_shift;
        if let (Some(m0), Some(mt)) = (
            mathias_arrowhead(lam1, spec.c, a_norm),
            mathias_arrowhead(lam1 + t, spec.c + t, a_norm),
        ) {
            shift_ok &= (mt - (m0 + t)).abs() <= tol_shift;
        }
    }
    summary.record(
        "shift_invariance",
        shift_ok,
        || "bounds did not shift with the spectrum".to_string(),
        instance,
    );

    // Operator-norm family. Only the provable pieces run here: all three
    // bound the top eigenvalue under their availability conditions, the
    // corner-symmetric b3 (and b1 once the corner enters through |c|) bound
    // the operator norm, and the comparison conditions hold in their
    // sign-corrected forms. The literal forms, which assume the PSD
    // application setting, are exercised by the acceptance suite instead.
    let m_norm = block
        .eigenvalues()
        .iter()
        .fold(0.0f64, |acc, &l| acc.max(l.abs()));
    if m_norm > 0.0 {
        let op = full
            .eigenvalues()
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs()));
        let ob = opnorm_bounds(m_norm, spec.c, a_norm, lam1)?;
        let mut ok = ob.b1 >= lam_max - tol && ob.b3 >= lam_max - tol;
        ok &= ob.b3 >= op - tol;
        ok &= spec.c.abs().max(m_norm) + a_norm >= op - tol;
        if spec.c >= 0.0 {
            ok &= ob.b1 >= op - tol;
        }
        if let Some(b2) = ob.b2 {
            ok &= b2 >= lam_max - tol;
            if a_norm <= m_norm - spec.c {
                ok &= b2 <= ob.b1 + tight;
            }
        }
        let s_term = (a_norm * a_norm + spec.c * spec.c / 8.0) / m_norm;
        if spec.c.abs() / 2.0 + s_term <= a_norm {
            ok &= ob.b3 <= ob.b1 + tight;
        }
        summary.record(
            "opnorm",
            ok,
            || format!("opnorm bounds ({}, {:?}, {}) vs exact {op}", ob.b1, ob.b2, ob.b3),
            instance,
        );
    }

    Ok(())
}

fn check_psd_invariants(
    cfg: &BatteryConfig,
    trial: u64,
    summary: &mut BatterySummary,
) -> Result<()> {
    let (spec, _) = random_psd_spec(cfg.seed, trial, 2, cfg.dim);
    let instance = || spec_json(&spec);
    let block = jacobi_eigen(&spec.m)?;
    let rank = rank_at_tolerance(block.eigenvalues());
    if rank == 0 {
        return Ok(());
    }
    let lam_r = block.eigenvalues()[rank - 1];
    let full = jacobi_eigen(&assemble_bordered(&spec))?;
    let exact = full.eigenvalues()[rank];
    let a_norm = norm2(&spec.a);
    let scale = 1.0 + exact.abs();
    let tol = cfg.tolerance * scale;

    let lower = smallest_nonzero_lower(lam_r, spec.c, a_norm)?;
    let (weyl_min, mathias_min) = smallest_nonzero_corollaries(lam_r, spec.c, a_norm)?;
    let tight = 1e-12 * scale;
    let mut ok = lower <= exact + tol && weyl_min <= lower + tight;
    if let Some(m) = mathias_min {
        ok &= m <= lower + tight;
    }
    summary.record(
        "smallest_nonzero",
        ok,
        || format!("lower {lower} vs exact {exact} (rank {rank})"),
        instance,
    );
    Ok(())
}

fn check_rank_one_invariants(
    cfg: &BatteryConfig,
    trial: u64,
    summary: &mut BatterySummary,
) -> Result<()> {
    let mut g = SplitMix64::substream(cfg.seed ^ 0x5EED_0001, trial);
    let d = 2 + (g.next_u64() % (cfg.dim as u64 - 1)) as usize;
    let m = SymmetricMatrix::from_fn(d, |_, _| g.next_gaussian());
    let x: Vec<f64> = (0..d).map(|_| g.next_gaussian()).collect();
    let instance = || {
        format!(
            "{{\"m\":{},\"x\":{}}}",
            matrix_json(&m),
            json_array(&x)
        )
    };
    let inputs = IpsenNadlerInputs::from_matrix(&m, &x)?;
    let updated = crate::matrix::rank_one_update(&m, &x)?;
    let exact = jacobi_eigen(&updated)?.largest();
    let r = ipsen_nadler(&inputs);
    let tol = cfg.tolerance * (1.0 + exact.abs());
    summary.record(
        "ipsen_nadler",
        r.lower.unwrap() <= exact + tol && r.upper.unwrap() >= exact - tol,
        || format!("bounds [{:?}, {:?}] miss exact {exact}", r.lower, r.upper),
        instance,
    );
    Ok(())
}

fn check_graph_invariants(
    cfg: &BatteryConfig,
    trial: u64,
    summary: &mut BatterySummary,
) -> Result<()> {
    let graph = random_graph(cfg.seed ^ 0x5EED_0002, trial, 2, cfg.dim.min(10), 0.45);
    let instance = || graph_json(&graph);

    summary.record(
        "laplacian_factorization",
        graph.incidence().outer_gram() == graph.laplacian(),
        || "incidence factorization differs from the Laplacian".to_string(),
        instance,
    );
    summary.record(
        "complement_involution",
        graph.complement().complement() == graph,
        || "complement twice is not the identity".to_string(),
        instance,
    );

    let eigs = jacobi_eigen(&graph.laplacian())?;
    let zeros = graph.vertex_count() - rank_at_tolerance(eigs.eigenvalues());
    summary.record(
        "kernel_multiplicity",
        zeros == graph.connected_components() && eigs.smallest() >= -zero_tolerance(eigs.eigenvalues()),
        || {
            format!(
                "zero multiplicity {zeros} vs {} components",
                graph.connected_components()
            )
        },
        instance,
    );

    let bound = graph.connectivity_lower_from_complement()?;
    let exact = graph.algebraic_connectivity()?;
    summary.record(
        "complement_bound",
        bound <= exact + cfg.tolerance * (1.0 + exact.abs()),
        || format!("complement bound {bound} above connectivity {exact}"),
        instance,
    );

    // Edge deletion bound on a deterministic edge pick.
    if graph.edge_count() > 0 {
        let pick = (trial % graph.edge_count() as u64) as usize;
        let (u, v) = graph.edges().nth(pick).expect("edge exists");
        let r = graph.edge_append_bound(u, v)?;
        summary.record(
            "edge_delete_bound",
            r.lower.unwrap() <= r.exact.unwrap() + cfg.tolerance * (1.0 + r.exact.unwrap().abs()),
            || format!("edge ({u},{v}): bound {:?} vs exact {:?}", r.lower, r.exact),
            instance,
        );
    }
    Ok(())
}

fn check_pinning_invariants(
    cfg: &BatteryConfig,
    trial: u64,
    summary: &mut BatterySummary,
) -> Result<()> {
    let graph = random_graph(cfg.seed ^ 0x5EED_0003, trial, 3, cfg.dim.min(10), 0.5);
    let mut g = SplitMix64::substream(cfg.seed ^ 0x5EED_0004, trial);
    let n = graph.vertex_count();
    let sigma = 0.5 + 1.5 * g.next_f64();
    let pin_count = (g.next_u64() % (n as u64 + 1)) as usize;
    let pinned = g.sample_distinct(n, pin_count);
    let q_norm = 0.5 + 1.5 * g.next_f64();
    let qb_min = 0.5 + 1.5 * g.next_f64();

    let probe = PinningProblem::new(graph.clone(), pinned.clone(), sigma, 1.0, 0.0, q_norm, qb_min)?;
    let sl0 = probe.sigma_lambda0()?;
    let kappa = sl0 * (1.1 + 8.9 * g.next_f64());
    let f_bound = 0.5 * g.next_f64() * sl0 * qb_min / (2.0 * q_norm);
    let problem = PinningProblem::new(graph.clone(), pinned.clone(), sigma, kappa, f_bound, q_norm, qb_min)?;
    let instance = || {
        format!(
            "{{\"graph\":{},\"pinned\":{:?},\"sigma\":{},\"kappa\":{},\"f_bound\":{},\"q_norm\":{},\"qb_min\":{}}}",
            graph_json(&graph),
            pinned,
            fmt_f64(sigma),
            fmt_f64(kappa),
            fmt_f64(f_bound),
            fmt_f64(q_norm),
            fmt_f64(qb_min)
        )
    };

    // The scaled iterate stays below the oracle.
    let oracle = problem.coupling_smallest_nonzero()?;
    if let Some(scaled) = problem.iterative_lower_bound_scaled()? {
        summary.record(
            "pinning_scaled_bound",
            scaled <= oracle + cfg.tolerance * (1.0 + oracle.abs()),
            || format!("scaled bound {scaled} above oracle {oracle}"),
            instance,
        );
    }

    // Monotonicity of the plain formula in kappa.
    let lower_now = problem.iterative_lower_bound()?;
    let bigger = PinningProblem::new(
        graph.clone(),
        pinned.clone(),
        sigma,
        kappa * 2.0,
        f_bound,
        q_norm,
        qb_min,
    )?;
    if let (Some(b1), Some(b2)) = (lower_now, bigger.iterative_lower_bound()?) {
        summary.record(
            "pinning_monotone",
            b2 >= b1 - 1e-12 * (1.0 + b1.abs()),
            || format!("bound decreased from {b1} to {b2} as kappa grew"),
            instance,
        );
    }

    // Threshold chain arithmetic.
    if let KappaThreshold::Feasible(th) = problem.kappa_threshold()? {
        let target = 2.0 * f_bound * q_norm / qb_min;
        let mut ok = true;
        for k in [th, 2.0 * th] {
            let p = PinningProblem::new(
                graph.clone(),
                pinned.clone(),
                sigma,
                k,
                f_bound,
                q_norm,
                qb_min,
            )?;
            match p.iterative_lower_bound()? {
                Some(b) => ok &= b >= target - 1e-9 * (1.0 + target.abs()),
                None => ok = false,
            }
        }
        summary.record(
            "pinning_threshold_chain",
            ok,
            || format!("iterated bound below target {target} at threshold {th}"),
            instance,
        );
    }

    // Controllability margin definition consistency.
    let report = problem.controllability_condition()?;
    let margin = 0.5 * report.lambda_min * qb_min - f_bound * q_norm;
    summary.record(
        "pinning_margin",
        (report.margin - margin).abs() <= 1e-12 * (1.0 + margin.abs())
            && report.satisfied == (report.margin > 0.0),
        || "margin bookkeeping mismatch".to_string(),
        instance,
    );
    Ok(())
}

fn check_cs_invariants(
    cfg: &BatteryConfig,
    trial: u64,
    summary: &mut BatterySummary,
) -> Result<()> {
    let mut g = SplitMix64::substream(cfg.seed ^ 0x5EED_0005, trial);
    let dm = DesignMatrix::generate(6, 10, Ensemble::Gaussian, g.next_u64())?;
    let picks = g.sample_distinct(10, 4);
    let (t_set, j) = (&picks[..3], picks[3]);
    let instance = || format!("{{\"seed_trial\":{trial},\"t_set\":{t_set:?},\"j\":{j}}}");

    let reports = dm.append_column_bounds(t_set, j)?;
    let tol = cfg.tolerance
        * (1.0 + reports.first().and_then(|r| r.exact).map_or(0.0, f64::abs));
    summary.record(
        "cs_append_sandwich",
        reports.iter().all(|r| r.brackets_exact(tol)),
        || format!("{reports:?}"),
        instance,
    );

    let mut permuted = t_set.to_vec();
    permuted.rotate_left(1);
    let d1 = dm.gram_deviation(t_set)?;
    let d2 = dm.gram_deviation(&permuted)?;
    summary.record(
        "cs_permutation",
        (d1 - d2).abs() <= 1e-12 * (1.0 + d1.abs()),
        || format!("deviation changed under permutation: {d1} vs {d2}"),
        instance,
    );
    Ok(())
}

/// A correction-term identity used by a couple of checks and tests:
/// `corr(eta, w)` solves `x (x + eta) = w`, so reconstructing `w` from the
/// returned value must be exact to rounding.
pub fn correction_inverse_residual(eta: f64, weight_sq: f64) -> f64 {
    let x = correction_term(eta, weight_sq);
    x * (x + eta) - weight_sq
}
