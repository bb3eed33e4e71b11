//! Pinning controllability of coupled oscillator networks.
//!
//! A network of `N` coupled nodes with graph Laplacian `L`, coupling `sigma`
//! and feedback gain `kappa` applied to a pinned subset `P` is controllable
//! when the smallest relevant eigenvalue of `sigma L + kappa P` clears a
//! threshold built from the dynamics (`f_bound`), and the feedback shaping
//! matrices entering only through the scalars `q_norm = ||Q||` and
//! `qb_min = lambda_min(QB + BᵗQᵗ)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::jacobi::{jacobi_eigen, operator_norm, smallest_nonzero};
use crate::matrix::{Mat, SymmetricMatrix};
use crate::report::JsonObject;

#[derive(Debug, Clone)]
pub struct PinningProblem {
    pub graph: Graph,
    pub pinned: BTreeSet<usize>,
    pub sigma: f64,
    pub kappa: f64,
    pub f_bound: f64,
    pub q_norm: f64,
    pub qb_min: f64,
}

impl PinningProblem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        graph: Graph,
        pinned: impl IntoIterator<Item = usize>,
        sigma: f64,
        kappa: f64,
        f_bound: f64,
        q_norm: f64,
        qb_min: f64,
    ) -> Result<Self> {
        let pinned: BTreeSet<usize> = pinned.into_iter().collect();
        if let Some(&v) = pinned.iter().find(|&&v| v >= graph.vertex_count()) {
            return Err(Error::input(format!(
                "pinned node {v} out of range for {} vertices",
                graph.vertex_count()
            )));
        }
        if !(sigma > 0.0) {
            return Err(Error::input(format!("sigma must be positive (got {sigma})")));
        }
        if f_bound < 0.0 {
            return Err(Error::input(format!(
                "f_bound must be nonnegative (got {f_bound})"
            )));
        }
        if !(q_norm > 0.0) {
            return Err(Error::input(format!("q_norm must be positive (got {q_norm})")));
        }
        if qb_min < 0.0 {
            return Err(Error::input(format!(
                "qb_min must be nonnegative (got {qb_min})"
            )));
        }
        Ok(PinningProblem {
            graph,
            pinned,
            sigma,
            kappa,
            f_bound,
            q_norm,
            qb_min,
        })
    }

    /// `sigma L + kappa P` with `P` the diagonal pin indicator.
    pub fn coupling_matrix(&self) -> SymmetricMatrix {
        let mut m = self.graph.laplacian().scale(self.sigma);
        for &v in &self.pinned {
            m.set(v, v, m.get(v, v) + self.kappa);
        }
        m
    }

    /// Sum of degrees over the pinned nodes.
    pub fn pinned_degree_sum(&self) -> f64 {
        self.pinned.iter().map(|&v| self.graph.degree(v) as f64).sum()
    }

    /// `sigma * lambda_min>0(L)`.
    pub fn sigma_lambda0(&self) -> Result<f64> {
        let eigs = jacobi_eigen(&self.graph.laplacian())?;
        smallest_nonzero(eigs.eigenvalues())
            .map(|l| self.sigma * l)
            .ok_or_else(|| {
                Error::input("graph has no edges, so the Laplacian has no nonzero eigenvalue")
            })
    }

    /// Smallest nonzero eigenvalue of the coupling matrix from the oracle.
    /// With a nonempty pin set on a connected graph the matrix is positive
    /// definite and this is simply the smallest eigenvalue; otherwise the
    /// kernel is skipped at the zero tolerance.
    pub fn coupling_smallest_nonzero(&self) -> Result<f64> {
        let s = jacobi_eigen(&self.coupling_matrix())?;
        if !self.pinned.is_empty() && self.graph.is_connected() {
            return Ok(s.smallest());
        }
        smallest_nonzero(s.eigenvalues())
            .ok_or_else(|| Error::input("coupling matrix has no nonzero eigenvalue"))
    }

    /// Spectral sufficient condition for controllability:
    /// `0.5 * lambda_min(sigma L + kappa P) * qb_min > f_bound * q_norm`,
    /// with the exact smallest eigenvalue from the oracle. Returns the signed
    /// margin alongside the verdict.
    pub fn controllability_condition(&self) -> Result<ControllabilityReport> {
        let s = jacobi_eigen(&self.coupling_matrix())?;
        let lambda_min = s.smallest();
        let margin = 0.5 * lambda_min * self.qb_min - self.f_bound * self.q_norm;
        Ok(ControllabilityReport {
            lambda_min,
            margin,
            satisfied: margin > 0.0,
        })
    }

    /// The iterated one-column lower bound on
    /// `lambda_min>0(sigma L + kappa P)`:
    ///
    /// ```text
    /// sigma l0 - (sum of pinned degrees) / (kappa - sigma l0)
    /// ```
    ///
    /// with `l0 = lambda_min>0(L)`. Returns `None` (unavailable) when
    /// `kappa <= sigma l0` makes the denominator nonpositive; with an empty
    /// degree sum (no pins, or only isolated pins) there is nothing to
    /// subtract and the value is `sigma l0` regardless of `kappa`.
    ///
    /// Note: this drops the `sigma * kappa` scaling of the squared border
    /// norm of each appended column, so for large `kappa` it can exceed the
    /// true smallest nonzero eigenvalue (one pinned node on a cycle already
    /// shows this). See [`Self::iterative_lower_bound_scaled`] for the
    /// conservative form that keeps the scaling.
    pub fn iterative_lower_bound(&self) -> Result<Option<f64>> {
        let sl0 = self.sigma_lambda0()?;
        let deg_sum = self.pinned_degree_sum();
        if deg_sum == 0.0 {
            return Ok(Some(sl0));
        }
        if self.kappa <= sl0 {
            return Ok(None);
        }
        Ok(Some(sl0 - deg_sum / (self.kappa - sl0)))
    }

    /// Conservative variant of [`Self::iterative_lower_bound`] that keeps the
    /// `sigma * kappa` factor on each appended column's squared norm:
    ///
    /// ```text
    /// sigma l0 - sigma * kappa * (sum of pinned degrees) / (kappa - sigma l0)
    /// ```
    ///
    /// This one is a valid lower bound on `lambda_min>0(sigma L + kappa P)`
    /// for every `kappa > sigma l0`.
    pub fn iterative_lower_bound_scaled(&self) -> Result<Option<f64>> {
        let sl0 = self.sigma_lambda0()?;
        let deg_sum = self.pinned_degree_sum();
        if deg_sum == 0.0 {
            return Ok(Some(sl0));
        }
        if self.kappa <= sl0 {
            return Ok(None);
        }
        Ok(Some(
            sl0 - self.sigma * self.kappa * deg_sum / (self.kappa - sl0),
        ))
    }

    /// Feedback-gain threshold: any `kappa` at or above it drives the
    /// iterated lower bound to at least `2 f_bound q_norm / qb_min`.
    /// Requires the strict feasibility condition
    /// `f_bound < sigma l0 qb_min / (2 q_norm)` and `qb_min > 0`; otherwise
    /// the result is infeasible and carries the violated margin.
    pub fn kappa_threshold(&self) -> Result<KappaThreshold> {
        let sl0 = self.sigma_lambda0()?;
        if self.qb_min <= 0.0 {
            return Ok(KappaThreshold::Infeasible {
                margin: -self.f_bound * self.q_norm,
            });
        }
        let margin = sl0 * self.qb_min / (2.0 * self.q_norm) - self.f_bound;
        if margin <= 0.0 {
            return Ok(KappaThreshold::Infeasible { margin });
        }
        let target = 2.0 * self.f_bound * self.q_norm / self.qb_min;
        Ok(KappaThreshold::Feasible(
            self.pinned_degree_sum() / (sl0 - target) + sl0,
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllabilityReport {
    pub lambda_min: f64,
    pub margin: f64,
    pub satisfied: bool,
}

impl ControllabilityReport {
    pub fn to_json(&self) -> String {
        let mut obj = JsonObject::new();
        obj.push_bool("satisfied", self.satisfied)
            .push_f64("margin", self.margin)
            .push_f64("lambda_min", self.lambda_min);
        obj.finish()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KappaThreshold {
    Feasible(f64),
    /// The strict condition `f_bound < sigma l0 qb_min / (2 q_norm)` failed
    /// by `-margin` (or `qb_min` was zero).
    Infeasible { margin: f64 },
}

/// Derive `q_norm` and `qb_min` from explicit shaping matrices: `q` must be
/// symmetric positive definite, `b` square of the same size. Checks
/// `QB + BᵗQᵗ >= 0` at tolerance `-1e-10` and clamps small negative
/// eigenvalues to zero.
pub fn scalars_from_shaping(q: &SymmetricMatrix, b: &Mat) -> Result<(f64, f64)> {
    let n = q.dim();
    if b.rows() != n || b.cols() != n {
        return Err(Error::input(format!(
            "shaping matrix B must be {n} x {n}, got {} x {}",
            b.rows(),
            b.cols()
        )));
    }
    let q_eigs = jacobi_eigen(q)?;
    if q_eigs.smallest() <= 0.0 {
        return Err(Error::input(
            "shaping matrix Q must be positive definite",
        ));
    }
    let q_norm = operator_norm(q)?;
    // S = QB + (QB)ᵗ, assembled symmetrically.
    let mut s = SymmetricMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let qb_ij: f64 = (0..n).map(|k| q.get(i, k) * b.get(k, j)).sum();
            let qb_ji: f64 = (0..n).map(|k| q.get(j, k) * b.get(k, i)).sum();
            s.set(i, j, qb_ij + qb_ji);
        }
    }
    let s_min = jacobi_eigen(&s)?.smallest();
    if s_min < -1e-10 {
        return Err(Error::input(format!(
            "QB + BᵗQᵗ is not positive semidefinite (lambda_min = {s_min:e})"
        )));
    }
    Ok((q_norm, s_min.max(0.0)))
}
