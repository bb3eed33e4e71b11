//! Column-subset experiments on design matrices: coherence, restricted
//! isometry deviations, and perturbation bounds for appending one column to a
//! selected submatrix.
//!
//! All experiments are seeded and trial-indexed: trial `k` draws only from
//! `SplitMix64::substream(seed, k)`, so the parallel driver and a sequential
//! rerun produce byte-identical reports.

use rayon::prelude::*;

use crate::bounds::{lili_two_sided, mathias_arrowhead, weyl_arrowhead, LiLiInputs};
use crate::error::{Error, Result};
use crate::jacobi::jacobi_eigen;
use crate::matrix::{assemble_bordered, dot, BorderedSpec, Mat};
use crate::report::{fmt_f64, BoundReport, JsonObject};
use crate::rng::SplitMix64;

/// Column ensembles for generated designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Gaussian,
    Bernoulli,
}

impl Ensemble {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "gaussian" => Ok(Ensemble::Gaussian),
            "bernoulli" => Ok(Ensemble::Bernoulli),
            other => Err(Error::input(format!(
                "unknown ensemble '{other}' (expected 'gaussian' or 'bernoulli')"
            ))),
        }
    }
}

/// An `n x p` design matrix, optionally with unit-norm columns.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    mat: Mat,
    normalized: bool,
}

impl DesignMatrix {
    /// Wrap a matrix, normalizing the columns when requested. Normalization
    /// aborts if any column cannot be brought within 1e-10 of unit norm.
    pub fn from_mat(mut mat: Mat, normalize: bool) -> Result<Self> {
        if mat.rows() == 0 || mat.cols() == 0 {
            return Err(Error::input("design matrix must be nonempty"));
        }
        if normalize {
            for j in 0..mat.cols() {
                let norm = dot(mat.col(j), mat.col(j)).sqrt();
                if norm == 0.0 {
                    return Err(Error::input(format!(
                        "column {j} has zero norm and cannot be normalized"
                    )));
                }
                for i in 0..mat.rows() {
                    mat.set(i, j, mat.get(i, j) / norm);
                }
                let check = dot(mat.col(j), mat.col(j)).sqrt();
                if (check - 1.0).abs() > 1e-10 {
                    return Err(Error::input(format!(
                        "column {j} norm {check} is outside the post-normalization tolerance"
                    )));
                }
            }
        }
        Ok(DesignMatrix {
            mat,
            normalized: normalize,
        })
    }

    /// Generate an i.i.d. design with normalized columns. Entries are drawn
    /// column by column from a single `SplitMix64::new(seed)` stream.
    pub fn generate(n: usize, p: usize, ensemble: Ensemble, seed: u64) -> Result<Self> {
        let mut g = SplitMix64::new(seed);
        let mut cols = Vec::with_capacity(p);
        for _ in 0..p {
            let col: Vec<f64> = (0..n)
                .map(|_| match ensemble {
                    Ensemble::Gaussian => g.next_gaussian(),
                    Ensemble::Bernoulli => g.next_pm1(),
                })
                .collect();
            cols.push(col);
        }
        DesignMatrix::from_mat(Mat::from_columns(cols)?, true)
    }

    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    /// Maximum absolute inner product between distinct columns.
    pub fn coherence(&self) -> Result<f64> {
        let p = self.cols();
        if p < 2 {
            return Err(Error::input(format!(
                "coherence needs at least 2 columns, got {p}"
            )));
        }
        let mut mu = 0.0f64;
        for j in 0..p {
            for k in j + 1..p {
                mu = mu.max(dot(self.mat.col(j), self.mat.col(k)).abs());
            }
        }
        Ok(mu)
    }

    /// Squared spectral norm `||X||^2`, computed on the smaller of the two
    /// Gram matrices (they share their nonzero spectrum).
    pub fn spectral_norm_sq(&self) -> Result<f64> {
        let gram = if self.rows() <= self.cols() {
            self.mat.outer_gram()
        } else {
            self.mat.gram()
        };
        Ok(jacobi_eigen(&gram)?.largest().max(0.0))
    }

    /// `floor( p / ln(p) * c_const / ||X||^2 )`, the column-subset size up to
    /// which random submatrices stay well conditioned.
    pub fn max_subset_size(&self, c_const: f64) -> Result<usize> {
        let p = self.cols();
        if p < 3 {
            return Err(Error::input(format!(
                "subset-size rule needs at least 3 columns, got {p}"
            )));
        }
        if !(c_const > 0.0) {
            return Err(Error::input(format!(
                "c_const must be positive (got {c_const})"
            )));
        }
        let val = p as f64 / (p as f64).ln() * c_const / self.spectral_norm_sq()?;
        Ok(val.max(0.0).floor() as usize)
    }

    fn check_subset(&self, t_set: &[usize]) -> Result<()> {
        if t_set.is_empty() {
            return Err(Error::input("column subset must be nonempty"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &j in t_set {
            if j >= self.cols() {
                return Err(Error::input(format!(
                    "column index {j} out of range for {} columns",
                    self.cols()
                )));
            }
            if !seen.insert(j) {
                return Err(Error::input(format!("duplicate column index {j}")));
            }
        }
        Ok(())
    }

    fn submatrix(&self, t_set: &[usize]) -> Mat {
        let cols = t_set.iter().map(|&j| self.mat.col(j).to_vec()).collect();
        Mat::from_columns(cols).expect("validated subset")
    }

    /// `|| X_Tᵗ X_T - I ||` via the oracle.
    pub fn gram_deviation(&self, t_set: &[usize]) -> Result<f64> {
        self.check_subset(t_set)?;
        let gram = self.submatrix(t_set).gram();
        let eigs = jacobi_eigen(&gram)?;
        Ok(eigs
            .eigenvalues()
            .iter()
            .fold(0.0f64, |acc, &l| acc.max((l - 1.0).abs())))
    }

    /// Bounds on the largest eigenvalue of the Gram matrix after appending
    /// column `j` to the subset `T`: the two-sided bound plus its Weyl and
    /// (when available) Mathias weakenings, each against the exact value.
    pub fn append_column_bounds(&self, t_set: &[usize], j: usize) -> Result<Vec<BoundReport>> {
        self.check_subset(t_set)?;
        if j >= self.cols() {
            return Err(Error::input(format!(
                "column index {j} out of range for {} columns",
                self.cols()
            )));
        }
        if t_set.contains(&j) {
            return Err(Error::input(format!(
                "appended column {j} is already in the subset"
            )));
        }
        let sub = self.submatrix(t_set);
        let block = sub.gram();
        let border = sub.transpose_mul_vec(self.mat.col(j))?;
        let corner = dot(self.mat.col(j), self.mat.col(j));
        let spec = BorderedSpec::new(block, border, corner)?;
        let exact = jacobi_eigen(&assemble_bordered(&spec))?.largest();

        let spectrum = jacobi_eigen(&spec.m)?;
        let inputs = LiLiInputs::from_spectrum(&spectrum, &spec.a, spec.c)?;
        let lam1 = spectrum.largest();
        let a_norm = inputs.a_norm;

        let mut reports = vec![lili_two_sided(&inputs).with_exact(exact)];
        reports.push(
            BoundReport::new("weyl")
                .with_upper(weyl_arrowhead(lam1, corner, a_norm))
                .with_exact(exact),
        );
        if let Some(m) = mathias_arrowhead(lam1, corner, a_norm) {
            reports.push(BoundReport::new("mathias").with_upper(m).with_exact(exact));
        }
        Ok(reports)
    }
}

/// Parameters of a random column-subset experiment.
#[derive(Debug, Clone)]
pub struct SubsetExperiment {
    pub s: usize,
    pub trials: usize,
    pub seed: u64,
    /// deviation offset `t` in the cross-Gram tail threshold
    pub t: f64,
    /// restricted isometry target in (0, 1/2)
    pub rho: f64,
    /// the constant in the subset-size rule
    pub c_const: f64,
}

impl SubsetExperiment {
    pub fn new(s: usize, trials: usize, seed: u64, t: f64, rho: f64, c_const: f64) -> Result<Self> {
        if s < 1 {
            return Err(Error::input("subset size must be at least 1"));
        }
        if trials < 1 {
            return Err(Error::input("trial count must be at least 1"));
        }
        if !(rho > 0.0 && rho < 0.5) {
            return Err(Error::input(format!("rho must lie in (0, 1/2), got {rho}")));
        }
        if !(c_const > 0.0) {
            return Err(Error::input(format!(
                "c_const must be positive (got {c_const})"
            )));
        }
        if t < 0.0 {
            return Err(Error::input(format!(
                "deviation offset must be nonnegative (got {t})"
            )));
        }
        Ok(SubsetExperiment {
            s,
            trials,
            seed,
            t,
            rho,
            c_const,
        })
    }
}

/// Outcome of [`cross_gram_tail`]; serializes with a fixed field order.
#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub p: usize,
    pub n: usize,
    pub s: usize,
    pub trials: usize,
    pub seed: u64,
    /// fraction of trials with `||X_Tᵗ X_j||^2 <= 1/(4 ln p)`
    pub freq_cp36: f64,
    pub threshold_cp36: f64,
    /// fraction of trials with `||X_Tᵗ X_T - I|| <= rho`
    pub freq_ric: f64,
    pub rho: f64,
    /// fraction of trials with `||X_Tᵗ X_j||^2 >= s/p ||X||^2 + t`
    pub freq_cross_tail: f64,
    pub threshold_cross_tail: f64,
    /// `2 exp(-t^2 / (2 mu^2 (s ||X||^2 / p + t/3)))`
    pub tail_bound: f64,
    /// `1 - 2 exp(-3 / (64 mu^2 ln p))`
    pub success_prob_cp36: f64,
    pub coherence: f64,
    pub spectral_norm_sq: f64,
    pub c_const: f64,
    pub c_const_leq_eighth: bool,
    pub max_subset_size: usize,
    /// trials where some append-column bound failed to bracket the oracle
    pub bound_violations: usize,
    pub note: &'static str,
}

impl TailReport {
    pub fn to_json(&self) -> String {
        let mut obj = JsonObject::new();
        obj.push_usize("p", self.p)
            .push_usize("n", self.n)
            .push_usize("s", self.s)
            .push_usize("trials", self.trials)
            .push_u64("seed", self.seed)
            .push_f64("freq_cp36", self.freq_cp36)
            .push_f64("threshold_cp36", self.threshold_cp36)
            .push_f64("freq_ric", self.freq_ric)
            .push_f64("rho", self.rho)
            .push_f64("freq_cross_tail", self.freq_cross_tail)
            .push_f64("threshold_cross_tail", self.threshold_cross_tail)
            .push_f64("tail_bound", self.tail_bound)
            .push_f64("success_prob_cp36", self.success_prob_cp36)
            .push_f64("coherence", self.coherence)
            .push_f64("spectral_norm_sq", self.spectral_norm_sq)
            .push_f64("c_const", self.c_const)
            .push_bool("c_const_leq_eighth", self.c_const_leq_eighth)
            .push_usize("max_subset_size", self.max_subset_size)
            .push_usize("bound_violations", self.bound_violations)
            .push_str("note", self.note);
        obj.finish()
    }
}

struct TrialOutcome {
    cp36: bool,
    ric: bool,
    cross_tail: bool,
    bound_violation: bool,
}

/// Monte Carlo frequency of the cross-Gram event `||X_Tᵗ X_j||^2 <= 1/(4 ln p)`
/// over uniformly random subsets `T` of size `s` and columns `j` outside `T`,
/// together with the restricted-isometry frequency at `rho`, the exponential
/// tail value, and a hard per-trial check that every append-column bound
/// brackets its oracle.
///
/// Trial `k` samples `s + 1` distinct column indices from
/// `SplitMix64::substream(seed, k)`; the first `s` form `T` and the last is
/// `j`.
pub fn cross_gram_tail(dm: &DesignMatrix, exp: &SubsetExperiment) -> Result<TailReport> {
    if !dm.is_normalized() {
        return Err(Error::input(
            "cross-Gram experiments need a column-normalized design",
        ));
    }
    let p = dm.cols();
    if exp.s + 1 > p {
        return Err(Error::input(format!(
            "subset size {} plus appended column exceeds {p} columns",
            exp.s
        )));
    }
    if p < 3 {
        return Err(Error::input(format!(
            "experiment needs at least 3 columns, got {p}"
        )));
    }

    let mu = dm.coherence()?;
    let xnorm_sq = dm.spectral_norm_sq()?;
    let threshold_cp36 = 1.0 / (4.0 * (p as f64).ln());
    let threshold_cross_tail = exp.s as f64 / p as f64 * xnorm_sq + exp.t;

    let outcomes: Vec<TrialOutcome> = (0..exp.trials)
        .into_par_iter()
        .map(|trial| {
            let mut g = SplitMix64::substream(exp.seed, trial as u64);
            let picks = g.sample_distinct(p, exp.s + 1);
            let (t_set, j) = (&picks[..exp.s], picks[exp.s]);
            let sub = dm.submatrix(t_set);
            let cross = sub
                .transpose_mul_vec(dm.mat.col(j))
                .expect("dimensions match by construction");
            let cross_sq: f64 = cross.iter().map(|c| c * c).sum();
            let deviation = dm.gram_deviation(t_set).expect("validated subset");
            let reports = dm
                .append_column_bounds(t_set, j)
                .expect("validated subset and column");
            let tol = 1e-9
                * (1.0
                    + reports
                        .first()
                        .and_then(|r| r.exact)
                        .map_or(0.0, f64::abs));
            TrialOutcome {
                cp36: cross_sq <= threshold_cp36,
                ric: deviation <= exp.rho,
                cross_tail: cross_sq >= threshold_cross_tail,
                bound_violation: reports.iter().any(|r| !r.brackets_exact(tol)),
            }
        })
        .collect();

    let count = |f: fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| f(o)).count();
    let freq = |c: usize| c as f64 / exp.trials as f64;

    let tail_bound = 2.0
        * (-exp.t * exp.t
            / (2.0 * mu * mu * (exp.s as f64 * xnorm_sq / p as f64 + exp.t / 3.0)))
            .exp();
    let success_prob_cp36 = 1.0 - 2.0 * (-3.0 / (64.0 * mu * mu * (p as f64).ln())).exp();

    Ok(TailReport {
        p,
        n: dm.rows(),
        s: exp.s,
        trials: exp.trials,
        seed: exp.seed,
        freq_cp36: freq(count(|o| o.cp36)),
        threshold_cp36,
        freq_ric: freq(count(|o| o.ric)),
        rho: exp.rho,
        freq_cross_tail: freq(count(|o| o.cross_tail)),
        threshold_cross_tail,
        tail_bound,
        success_prob_cp36,
        coherence: mu,
        spectral_norm_sq: xnorm_sq,
        c_const: exp.c_const,
        c_const_leq_eighth: exp.c_const <= 0.125,
        max_subset_size: dm.max_subset_size(exp.c_const)?,
        bound_violations: count(|o| o.bound_violation),
        note: "exponential tail evaluated as 2*exp(-t^2/(2 mu^2 (s|X|^2/p + t/3))); \
               the positive-exponent variant grows with t and is not usable as a tail bound",
    })
}

/// CSV rendering of a design matrix (rows as lines), for fixture emission.
pub fn design_to_csv(dm: &DesignMatrix) -> String {
    let mut out = String::new();
    for i in 0..dm.rows() {
        let line: Vec<String> = (0..dm.cols()).map(|j| fmt_f64(dm.mat.get(i, j))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SymmetricMatrix;

    fn orthonormal_design(n: usize) -> DesignMatrix {
        let eye = SymmetricMatrix::identity(n);
        let cols = (0..n).map(|j| eye.row(j).to_vec()).collect();
        DesignMatrix::from_mat(Mat::from_columns(cols).unwrap(), true).unwrap()
    }

    #[test]
    fn coherence_of_orthonormal_columns_is_zero() {
        assert_eq!(orthonormal_design(4).coherence().unwrap(), 0.0);
    }

    #[test]
    fn coherence_of_duplicate_columns_is_one() {
        let col = vec![0.6, 0.8];
        let dm =
            DesignMatrix::from_mat(Mat::from_columns(vec![col.clone(), col]).unwrap(), true)
                .unwrap();
        assert!((dm.coherence().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherence_matches_brute_force() {
        let dm = DesignMatrix::generate(20, 40, Ensemble::Gaussian, 7).unwrap();
        let mut brute = 0.0f64;
        for j in 0..40 {
            for k in 0..40 {
                if j != k {
                    let d: f64 = (0..20).map(|i| dm.mat().get(i, j) * dm.mat().get(i, k)).sum();
                    brute = brute.max(d.abs());
                }
            }
        }
        assert!((dm.coherence().unwrap() - brute).abs() < 1e-14);
    }

    #[test]
    fn generated_columns_are_normalized() {
        for ensemble in [Ensemble::Gaussian, Ensemble::Bernoulli] {
            let dm = DesignMatrix::generate(10, 15, ensemble, 3).unwrap();
            for j in 0..15 {
                let norm = dot(dm.mat().col(j), dm.mat().col(j)).sqrt();
                assert!((norm - 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn subset_size_rule_arithmetic() {
        // identity design: ||X||^2 = 1, p = 8 -> floor(8 / ln 8) = 3
        let dm = orthonormal_design(8);
        assert_eq!(dm.max_subset_size(1.0).unwrap(), 3);
        assert_eq!(dm.max_subset_size(1e-9).unwrap(), 0);
        assert!(dm.max_subset_size(0.0).is_err());
    }

    #[test]
    fn gram_deviation_cases() {
        let dm = orthonormal_design(5);
        assert!(dm.gram_deviation(&[0, 2, 4]).unwrap().abs() < 1e-12);
        let gdm = DesignMatrix::generate(12, 20, Ensemble::Gaussian, 11).unwrap();
        assert!(gdm.gram_deviation(&[3]).unwrap().abs() < 1e-10);
        assert!(gdm.gram_deviation(&[]).is_err());
        assert!(gdm.gram_deviation(&[1, 1]).is_err());
        // permutation invariance
        let a = gdm.gram_deviation(&[2, 7, 11]).unwrap();
        let b = gdm.gram_deviation(&[11, 2, 7]).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn append_orthogonal_column_leaves_top_eigenvalue() {
        // X_j orthogonal to the subset and c = 1 <= lambda_1: the exact top
        // eigenvalue is unchanged and the two-sided bound is tight.
        let cols = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let dm = DesignMatrix::from_mat(Mat::from_columns(cols).unwrap(), true).unwrap();
        let before = jacobi_eigen(&dm.submatrix(&[0, 1]).gram()).unwrap().largest();
        let reports = dm.append_column_bounds(&[0, 1], 2).unwrap();
        let exact = reports[0].exact.unwrap();
        assert!((exact - before).abs() < 1e-12);
        for r in &reports {
            assert!(r.brackets_exact(1e-9), "{r:?}");
        }
        let lili = &reports[0];
        assert!((lili.lower.unwrap() - exact).abs() < 1e-12);
        assert!((lili.upper.unwrap() - exact).abs() < 1e-12);
    }

    #[test]
    fn append_duplicate_column_doubles_energy() {
        let dup = vec![0.6, 0.8];
        let other = vec![1.0, 0.0];
        let dm = DesignMatrix::from_mat(
            Mat::from_columns(vec![dup.clone(), other, dup]).unwrap(),
            true,
        )
        .unwrap();
        let reports = dm.append_column_bounds(&[0, 1], 2).unwrap();
        let exact = reports[0].exact.unwrap();
        assert!(exact >= 2.0 - 1e-12, "duplicate column: lambda_1 >= 2");
        for r in &reports {
            assert!(r.brackets_exact(1e-9), "{r:?}");
        }
    }

    #[test]
    fn append_rejects_member_column() {
        let dm = DesignMatrix::generate(8, 12, Ensemble::Gaussian, 5).unwrap();
        assert!(dm.append_column_bounds(&[0, 1, 2], 1).is_err());
    }

    #[test]
    fn orthonormal_design_saturates_cp36() {
        let dm = orthonormal_design(6);
        let exp = SubsetExperiment::new(2, 50, 9, 0.1, 0.25, 0.125).unwrap();
        let report = cross_gram_tail(&dm, &exp).unwrap();
        assert_eq!(report.freq_cp36, 1.0);
        assert_eq!(report.freq_ric, 1.0);
        assert_eq!(report.bound_violations, 0);
    }

    #[test]
    fn single_trial_is_deterministic() {
        let dm = DesignMatrix::generate(10, 16, Ensemble::Gaussian, 21).unwrap();
        let exp = SubsetExperiment::new(3, 1, 4, 0.1, 0.25, 0.125).unwrap();
        let a = cross_gram_tail(&dm, &exp).unwrap();
        let b = cross_gram_tail(&dm, &exp).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn report_is_byte_reproducible() {
        let dm = DesignMatrix::generate(20, 40, Ensemble::Gaussian, 42).unwrap();
        let exp = SubsetExperiment::new(4, 200, 42, 0.1, 0.25, 0.125).unwrap();
        let a = cross_gram_tail(&dm, &exp).unwrap().to_json();
        let b = cross_gram_tail(&dm, &exp).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn scaling_acts_quadratically_on_the_gram() {
        let dm = DesignMatrix::generate(8, 10, Ensemble::Gaussian, 13).unwrap();
        let alpha = 3.0;
        let scaled_cols = (0..10)
            .map(|j| dm.mat().col(j).iter().map(|v| alpha * v).collect())
            .collect();
        let scaled =
            DesignMatrix::from_mat(Mat::from_columns(scaled_cols).unwrap(), false).unwrap();
        let l1 = jacobi_eigen(&dm.submatrix(&[1, 4, 6]).gram()).unwrap().largest();
        let l2 = jacobi_eigen(&scaled.submatrix(&[1, 4, 6]).gram())
            .unwrap()
            .largest();
        assert!((l2 - alpha * alpha * l1).abs() < 1e-9 * (1.0 + l2.abs()));
    }

    #[test]
    fn zero_column_cannot_be_normalized() {
        let cols = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        assert!(DesignMatrix::from_mat(Mat::from_columns(cols).unwrap(), true).is_err());
    }
}
