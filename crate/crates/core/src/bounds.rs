//! Closed-form perturbation bounds for bordered and rank-one-updated
//! symmetric matrices, plus drivers that pair each bound with the exact
//! value from the oracle.
//!
//! The central quantity is the correction term
//!
//! ```text
//! corr(eta, w) = 2 w / (eta + sqrt(eta^2 + 4 w))
//! ```
//!
//! with `eta = |c - lambda|` and `w` a squared border norm. The two-sided
//! bound on the largest eigenvalue uses it with `w = <a, V1>^2` (lower) and
//! `w = ||a||^2` (upper); the weaker single-term bounds fall out of it by
//! discarding one of the two terms in the denominator.

use crate::error::{Error, Result};
use crate::jacobi::{
    jacobi_eigen, leading_projection_sq, rank_at_tolerance, zero_tolerance, Spectrum,
};
use crate::matrix::{assemble_bordered, dot, norm2, BorderedSpec};
use crate::report::{BoundReport, JsonObject};
use crate::secular::SecularProblem;

/// `2 w / (eta + sqrt(eta^2 + 4 w))` with the continuity convention that the
/// value is 0 whenever `w = 0`, which covers the 0/0 case at `eta = 0`.
pub fn correction_term(eta: f64, weight_sq: f64) -> f64 {
    if weight_sq <= 0.0 {
        return 0.0;
    }
    2.0 * weight_sq / (eta + (eta * eta + 4.0 * weight_sq).sqrt())
}

fn mathias_available(lambda: f64, c: f64) -> bool {
    (lambda - c).abs() > 1e-12 * (1.0 + lambda.abs() + c.abs())
}

/// Scalar inputs of the two-sided largest-eigenvalue bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LiLiInputs {
    pub lambda1: f64,
    pub c: f64,
    pub a_norm: f64,
    pub a_dot_v1: f64,
}

impl LiLiInputs {
    pub fn new(lambda1: f64, c: f64, a_norm: f64, a_dot_v1: f64) -> Result<Self> {
        if a_norm < 0.0 {
            return Err(Error::input(format!("norm must be nonnegative ({a_norm})")));
        }
        if a_dot_v1.abs() > a_norm + 1e-12 * (1.0 + a_norm) {
            return Err(Error::input(format!(
                "|<a,V1>| = {} exceeds ||a|| = {}",
                a_dot_v1.abs(),
                a_norm
            )));
        }
        Ok(LiLiInputs {
            lambda1,
            c,
            a_norm,
            a_dot_v1,
        })
    }

    /// Derive the scalars from a bordered spec and the spectrum of its block.
    ///
    /// Under multiplicity of the leading eigenvalue the single-eigenvector
    /// product is basis dependent, so the projection norm onto the whole
    /// leading eigenspace is used instead; it strengthens the lower bound and
    /// stays valid by the same secular argument.
    pub fn from_spectrum(spectrum: &Spectrum, a: &[f64], c: f64) -> Result<Self> {
        let proj_sq = leading_projection_sq(spectrum, a);
        LiLiInputs::new(spectrum.largest(), c, norm2(a), proj_sq.sqrt())
    }

    pub fn from_spec(spec: &BorderedSpec) -> Result<Self> {
        let spectrum = jacobi_eigen(&spec.m)?;
        LiLiInputs::from_spectrum(&spectrum, &spec.a, spec.c)
    }

    fn eta(&self) -> f64 {
        (self.c - self.lambda1).abs()
    }
}

/// Two-sided bound on the largest eigenvalue of the bordered matrix:
/// `max(c, l1) + corr(eta, <a,V1>^2) <= lambda_1(A) <= max(c, l1) + corr(eta, ||a||^2)`.
pub fn lili_two_sided(inputs: &LiLiInputs) -> BoundReport {
    let base = inputs.c.max(inputs.lambda1);
    let eta = inputs.eta();
    BoundReport::new("lili")
        .with_lower(base + correction_term(eta, inputs.a_dot_v1 * inputs.a_dot_v1))
        .with_upper(base + correction_term(eta, inputs.a_norm * inputs.a_norm))
}

/// The symmetric deviation radius `corr(eta_1, ||a||^2)` bounding
/// `|lambda_1(A) - max(c, lambda_1)|` from both sides.
pub fn lili_literature_form(lambda1: f64, c: f64, a_norm: f64) -> f64 {
    correction_term((c - lambda1).abs(), a_norm * a_norm)
}

/// `max(c, lambda_1) + ||a||` upper bound on the largest eigenvalue.
pub fn weyl_arrowhead(lambda1: f64, c: f64, a_norm: f64) -> f64 {
    c.max(lambda1) + a_norm
}

/// `max(c, lambda_1) + ||a||^2 / |lambda_1 - c|`, unavailable at `c = lambda_1`
/// where the quotient blows up.
pub fn mathias_arrowhead(lambda1: f64, c: f64, a_norm: f64) -> Option<f64> {
    if !mathias_available(lambda1, c) {
        return None;
    }
    Some(c.max(lambda1) + a_norm * a_norm / (lambda1 - c).abs())
}

/// Rank-one form: `lambda_1(M) + ||x||^2` bounds the largest eigenvalue of
/// `M + x xᵗ`.
pub fn weyl_rank_one(lambda1_m: f64, x_norm_sq: f64) -> f64 {
    lambda1_m + x_norm_sq
}

/// Lower bound on the `(r+1)`-th eigenvalue of the bordered matrix when the
/// block is PSD with rank `r` and smallest nonzero eigenvalue `lambda_r`:
/// `min(c, lambda_r) - corr(|c - lambda_r|, ||a||^2)`.
pub fn smallest_nonzero_lower(lambda_r: f64, c: f64, a_norm: f64) -> Result<f64> {
    if lambda_r <= 0.0 {
        return Err(Error::input(format!(
            "smallest nonzero eigenvalue must be positive (got {lambda_r})"
        )));
    }
    let eta = (c - lambda_r).abs();
    Ok(c.min(lambda_r) - correction_term(eta, a_norm * a_norm))
}

/// The weakened companions of [`smallest_nonzero_lower`]:
/// `min(c, lambda_r) - ||a||` and `min(c, lambda_r) - ||a||^2 / |c - lambda_r|`
/// (the latter unavailable at `c = lambda_r`).
pub fn smallest_nonzero_corollaries(
    lambda_r: f64,
    c: f64,
    a_norm: f64,
) -> Result<(f64, Option<f64>)> {
    if lambda_r <= 0.0 {
        return Err(Error::input(format!(
            "smallest nonzero eigenvalue must be positive (got {lambda_r})"
        )));
    }
    let weyl = c.min(lambda_r) - a_norm;
    let mathias = if mathias_available(lambda_r, c) {
        Some(c.min(lambda_r) - a_norm * a_norm / (c - lambda_r).abs())
    } else {
        None
    };
    Ok((weyl, mathias))
}

/// The three operator-norm bounds on the bordered matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OpNormBounds {
    /// `max(c, ||M||) + ||a||`
    pub b1: f64,
    /// `||M|| + ||a||^2 / (||M|| - c)`, only when `c <= lambda_1(M)` and the
    /// denominator is positive.
    pub b2: Option<f64>,
    /// `||M|| + |c|/2 + (||a||^2 + c^2/8) / ||M||`
    pub b3: f64,
}

pub fn opnorm_bounds(m_norm: f64, c: f64, a_norm: f64, lambda1_m: f64) -> Result<OpNormBounds> {
    if m_norm <= 0.0 {
        return Err(Error::input(format!(
            "block operator norm must be positive (got {m_norm})"
        )));
    }
    let b1 = c.max(m_norm) + a_norm;
    let b2 = if c <= lambda1_m && m_norm - c > 0.0 {
        Some(m_norm + a_norm * a_norm / (m_norm - c))
    } else {
        None
    };
    let b3 = m_norm + c.abs() / 2.0 + (a_norm * a_norm + c * c / 8.0) / m_norm;
    Ok(OpNormBounds { b1, b2, b3 })
}

/// Projection data for the gap-aware rank-one bound on `lambda_1(M + x xᵗ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IpsenNadlerInputs {
    pub lambda1: f64,
    pub lambda2: f64,
    pub x_norm_sq: f64,
    /// squared projection norm onto span(V1, V2)
    pub proj12_sq: f64,
    /// squared projection norm onto span(V2)
    pub proj2_sq: f64,
    /// squared projection norm onto span(V2, ..., Vd)
    pub proj_rest_sq: f64,
}

impl IpsenNadlerInputs {
    pub fn new(
        lambda1: f64,
        lambda2: f64,
        x_norm_sq: f64,
        proj12_sq: f64,
        proj2_sq: f64,
        proj_rest_sq: f64,
    ) -> Result<Self> {
        let slack = 1e-12 * (1.0 + x_norm_sq.abs());
        if lambda1 < lambda2 {
            return Err(Error::input(format!(
                "eigenvalues out of order: {lambda1} < {lambda2}"
            )));
        }
        if proj2_sq < -slack
            || proj2_sq > proj12_sq + slack
            || proj12_sq > x_norm_sq + slack
            || proj_rest_sq < -slack
            || proj_rest_sq > x_norm_sq + slack
        {
            return Err(Error::input(
                "projection norms are inconsistent with the vector norm".to_string(),
            ));
        }
        Ok(IpsenNadlerInputs {
            lambda1,
            lambda2,
            x_norm_sq,
            proj12_sq,
            proj2_sq,
            proj_rest_sq,
        })
    }

    /// Compute the projections from the eigenbasis of `m` (dimension >= 2).
    pub fn from_matrix(m: &crate::matrix::SymmetricMatrix, x: &[f64]) -> Result<Self> {
        if m.dim() < 2 {
            return Err(Error::input(
                "gap-aware bound needs a block of dimension at least 2".to_string(),
            ));
        }
        if x.len() != m.dim() {
            return Err(Error::input(format!(
                "vector length {} does not match dimension {}",
                x.len(),
                m.dim()
            )));
        }
        let s = jacobi_eigen(m)?;
        let coeffs: Vec<f64> = (0..m.dim()).map(|j| dot(x, s.eigenvector(j))).collect();
        let sq = |v: f64| v * v;
        IpsenNadlerInputs::new(
            s.eigenvalues()[0],
            s.eigenvalues()[1],
            dot(x, x),
            sq(coeffs[0]) + sq(coeffs[1]),
            sq(coeffs[1]),
            coeffs[1..].iter().map(|&v| sq(v)).sum(),
        )
    }
}

/// Gap-aware two-sided bound on `lambda_1(M + x xᵗ)`:
/// `lambda_1 + delta_min <= lambda_1(M + x xᵗ) <= lambda_1 + delta_max`.
///
/// Discriminants are analytically nonnegative; roundoff negatives are clamped
/// to zero.
pub fn ipsen_nadler(inputs: &IpsenNadlerInputs) -> BoundReport {
    let gap = inputs.lambda1 - inputs.lambda2;
    let disc_min =
        (gap + inputs.proj12_sq).powi(2) - 4.0 * gap * inputs.proj2_sq;
    let delta_min = 0.5 * (inputs.proj12_sq - gap + disc_min.max(0.0).sqrt());
    let disc_max =
        (gap + inputs.x_norm_sq).powi(2) - 4.0 * gap * inputs.proj_rest_sq;
    let delta_max = 0.5 * (inputs.x_norm_sq - gap + disc_max.max(0.0).sqrt());
    BoundReport::new("ipsen_nadler")
        .with_lower(inputs.lambda1 + delta_min)
        .with_upper(inputs.lambda1 + delta_max)
}

/// Exact extreme values of a bordered matrix computed along both routes.
#[derive(Debug, Clone)]
pub struct ExactExtremes {
    pub lambda_max_oracle: f64,
    pub lambda_max_secular: f64,
    pub lambda_min_oracle: f64,
    pub lambda_min_secular: f64,
    pub opnorm_oracle: f64,
}

impl ExactExtremes {
    pub fn to_json(&self) -> String {
        let mut obj = JsonObject::new();
        obj.push_f64("lambda_max_oracle", self.lambda_max_oracle)
            .push_f64("lambda_max_secular", self.lambda_max_secular)
            .push_f64("lambda_min_oracle", self.lambda_min_oracle)
            .push_f64("lambda_min_secular", self.lambda_min_secular)
            .push_f64("opnorm_oracle", self.opnorm_oracle);
        obj.finish()
    }
}

/// Every applicable bound for one bordered spec, each paired with the exact
/// value it controls.
#[derive(Debug, Clone)]
pub struct BorderedAnalysis {
    pub exact: ExactExtremes,
    pub reports: Vec<BoundReport>,
}

impl BorderedAnalysis {
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self.reports.iter().map(BoundReport::to_json).collect();
        format!(
            "{{\"exact\":{},\"reports\":[{}]}}",
            self.exact.to_json(),
            body.join(",")
        )
    }
}

/// Evaluate all applicable bounds for a bordered spec against the oracle.
///
/// Always emits the two-sided bound, its literature form, and the Weyl bound;
/// the Mathias bound when its denominator is usable; the smallest-nonzero
/// family when the block is PSD with positive rank; the operator-norm family
/// when the block is nonzero.
pub fn analyze_bordered(spec: &BorderedSpec) -> Result<BorderedAnalysis> {
    let spectrum = jacobi_eigen(&spec.m)?;
    let a_norm = norm2(&spec.a);
    let lam1 = spectrum.largest();
    let assembled = assemble_bordered(spec);
    let full = jacobi_eigen(&assembled)?;
    let lam_max = full.largest();
    let lam_min = full.smallest();
    let opnorm = lam_max.abs().max(lam_min.abs());

    let secular = SecularProblem::from_arrowhead(&crate::jacobi::to_arrowhead(spec)?)?;
    let exact = ExactExtremes {
        lambda_max_oracle: lam_max,
        lambda_max_secular: secular.largest_eigenvalue(),
        lambda_min_oracle: lam_min,
        lambda_min_secular: secular.smallest_eigenvalue(),
        opnorm_oracle: opnorm,
    };

    let inputs = LiLiInputs::from_spectrum(&spectrum, &spec.a, spec.c)?;
    let mut reports = vec![lili_two_sided(&inputs).with_exact(lam_max)];

    let base = spec.c.max(lam1);
    let radius = lili_literature_form(lam1, spec.c, a_norm);
    reports.push(
        BoundReport::new("lili_literature")
            .with_lower(base - radius)
            .with_upper(base + radius)
            .with_exact(lam_max),
    );
    reports.push(
        BoundReport::new("weyl")
            .with_upper(weyl_arrowhead(lam1, spec.c, a_norm))
            .with_exact(lam_max),
    );
    if let Some(m) = mathias_arrowhead(lam1, spec.c, a_norm) {
        reports.push(BoundReport::new("mathias").with_upper(m).with_exact(lam_max));
    }

    // Smallest-nonzero family: PSD block with positive rank.
    let eigs = spectrum.eigenvalues();
    let psd = spectrum.smallest() >= -zero_tolerance(eigs);
    let rank = rank_at_tolerance(eigs);
    if psd && rank > 0 {
        let lam_r = eigs[rank - 1];
        let exact_r1 = full.eigenvalues()[rank];
        reports.push(
            BoundReport::new("smallest_nonzero")
                .with_lower(smallest_nonzero_lower(lam_r, spec.c, a_norm)?)
                .with_exact(exact_r1),
        );
        let (weyl_min, mathias_min) = smallest_nonzero_corollaries(lam_r, spec.c, a_norm)?;
        reports.push(
            BoundReport::new("smallest_nonzero_weyl")
                .with_lower(weyl_min)
                .with_exact(exact_r1),
        );
        if let Some(m) = mathias_min {
            reports.push(
                BoundReport::new("smallest_nonzero_mathias")
                    .with_lower(m)
                    .with_exact(exact_r1),
            );
        }
    }

    let m_norm = eigs.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    if m_norm > 0.0 {
        let ob = opnorm_bounds(m_norm, spec.c, a_norm, lam1)?;
        reports.push(
            BoundReport::new("opnorm_b1")
                .with_upper(ob.b1)
                .with_exact(opnorm),
        );
        if let Some(b2) = ob.b2 {
            reports.push(
                BoundReport::new("opnorm_b2")
                    .with_upper(b2)
                    .with_exact(opnorm),
            );
        }
        reports.push(
            BoundReport::new("opnorm_b3")
                .with_upper(ob.b3)
                .with_exact(opnorm),
        );
    } else {
        reports.push(
            BoundReport::new("opnorm_b1")
                .with_upper(spec.c.max(0.0) + a_norm)
                .with_exact(opnorm),
        );
    }

    Ok(BorderedAnalysis { exact, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SymmetricMatrix;
    use crate::rng::SplitMix64;

    #[test]
    fn correction_conventions() {
        assert_eq!(correction_term(0.0, 0.0), 0.0);
        assert_eq!(correction_term(2.0, 0.0), 0.0);
        // eta = 0: corr = sqrt(w)
        assert!((correction_term(0.0, 0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lili_is_tight_on_bordered_identity() {
        let inputs = LiLiInputs::new(1.0, 1.0, 0.5, 0.5).unwrap();
        let r = lili_two_sided(&inputs);
        assert!((r.lower.unwrap() - 1.5).abs() < 1e-15);
        assert!((r.upper.unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn lili_with_zero_border_collapses() {
        let inputs = LiLiInputs::new(2.0, 3.0, 0.0, 0.0).unwrap();
        let r = lili_two_sided(&inputs);
        assert_eq!(r.lower, Some(3.0));
        assert_eq!(r.upper, Some(3.0));
    }

    #[test]
    fn lili_sandwiches_the_exact_value() {
        let mut g = SplitMix64::new(8);
        for _ in 0..25 {
            let m = SymmetricMatrix::from_fn(5, |_, _| g.next_gaussian());
            let a: Vec<f64> = (0..5).map(|_| g.next_gaussian()).collect();
            let spec = BorderedSpec::new(m, a, g.next_gaussian()).unwrap();
            let exact = SecularProblem::from_arrowhead(&crate::jacobi::to_arrowhead(&spec).unwrap())
                .unwrap()
                .largest_eigenvalue();
            let r = lili_two_sided(&LiLiInputs::from_spec(&spec).unwrap());
            let tol = 1e-9 * (1.0 + exact.abs());
            assert!(r.lower.unwrap() <= exact + tol);
            assert!(r.upper.unwrap() >= exact - tol);
        }
    }

    #[test]
    fn weyl_and_mathias_examples() {
        assert!((weyl_arrowhead(1.0, 1.0, 0.5) - 1.5).abs() < 1e-15);
        assert_eq!(weyl_arrowhead(1.0, 3.0, 0.0), 3.0);
        assert!((mathias_arrowhead(2.0, 0.0, 1.0).unwrap() - 2.5).abs() < 1e-15);
        assert!(mathias_arrowhead(1.0, 1.0, 0.5).is_none());
    }

    #[test]
    fn weyl_dominates_lili_upper() {
        let mut g = SplitMix64::new(15);
        for _ in 0..50 {
            let lam1 = g.next_gaussian();
            let c = g.next_gaussian();
            let a_norm = g.next_f64() * 3.0;
            let upper = lili_two_sided(&LiLiInputs::new(lam1, c, a_norm, 0.0).unwrap())
                .upper
                .unwrap();
            assert!(upper <= weyl_arrowhead(lam1, c, a_norm) + 1e-12);
            if let Some(m) = mathias_arrowhead(lam1, c, a_norm) {
                assert!(upper <= m + 1e-12);
            }
        }
    }

    #[test]
    fn rank_one_weyl_examples() {
        assert_eq!(weyl_rank_one(1.0, 0.0), 1.0);
        // zero block: the bound equals the exact rank-one eigenvalue
        let x = vec![1.5, -0.5];
        let m = crate::matrix::rank_one_update(&SymmetricMatrix::zeros(2), &x).unwrap();
        let exact = jacobi_eigen(&m).unwrap().largest();
        assert!((weyl_rank_one(0.0, dot(&x, &x)) - exact).abs() < 1e-12);
    }

    #[test]
    fn smallest_nonzero_examples() {
        // bordered identity: min bound 0.5, attained
        assert!((smallest_nonzero_lower(1.0, 1.0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        // zero border: min(c, lambda_r)
        assert_eq!(smallest_nonzero_lower(2.0, 1.5, 0.0).unwrap(), 1.5);
        assert!(smallest_nonzero_lower(0.0, 1.0, 1.0).is_err());
        let (w, m) = smallest_nonzero_corollaries(1.0, 1.0, 0.5).unwrap();
        assert!((w - 0.5).abs() < 1e-15);
        assert!(m.is_none());
        let (w, m) = smallest_nonzero_corollaries(2.0, 1.0, 1.0).unwrap();
        assert_eq!(w, 0.0);
        assert_eq!(m, Some(0.0));
    }

    #[test]
    fn opnorm_examples() {
        let ob = opnorm_bounds(1.0, 0.0, 0.1, 1.0).unwrap();
        assert!((ob.b1 - 1.1).abs() < 1e-15);
        assert!((ob.b2.unwrap() - 1.01).abs() < 1e-15);
        assert!((ob.b3 - 1.01).abs() < 1e-15);
        // corner above the top of the block spectrum: b2 unavailable
        let ob = opnorm_bounds(1.0, 2.0, 0.1, 1.0).unwrap();
        assert!(ob.b2.is_none());
        assert!(opnorm_bounds(0.0, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn ipsen_nadler_collapses_at_zero_gap() {
        let inputs = IpsenNadlerInputs::new(2.0, 2.0, 0.7, 0.4, 0.2, 0.5).unwrap();
        let r = ipsen_nadler(&inputs);
        assert!((r.upper.unwrap() - (2.0 + 0.7)).abs() < 1e-15);
        assert!((r.lower.unwrap() - (2.0 + 0.4)).abs() < 1e-15);
    }

    #[test]
    fn ipsen_nadler_zero_vector() {
        let inputs = IpsenNadlerInputs::new(2.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let r = ipsen_nadler(&inputs);
        assert_eq!(r.lower, Some(2.0));
        assert_eq!(r.upper, Some(2.0));
    }

    #[test]
    fn ipsen_nadler_brackets_oracle() {
        let mut g = SplitMix64::new(23);
        for _ in 0..25 {
            let m = SymmetricMatrix::from_fn(5, |_, _| g.next_gaussian());
            let x: Vec<f64> = (0..5).map(|_| g.next_gaussian()).collect();
            let inputs = IpsenNadlerInputs::from_matrix(&m, &x).unwrap();
            let updated = crate::matrix::rank_one_update(&m, &x).unwrap();
            let exact = jacobi_eigen(&updated).unwrap().largest();
            let r = ipsen_nadler(&inputs).with_exact(exact);
            assert!(
                r.brackets_exact(1e-9 * (1.0 + exact.abs())),
                "IN bound failed: {:?}",
                r
            );
        }
    }

    #[test]
    fn literature_form_examples() {
        assert!((lili_literature_form(1.0, 1.0, 1.0) - 1.0).abs() < 1e-15);
        assert_eq!(lili_literature_form(2.0, 0.5, 0.0), 0.0);
    }

    #[test]
    fn analyze_reports_are_consistent() {
        let mut g = SplitMix64::new(40);
        for _ in 0..10 {
            let m = SymmetricMatrix::from_fn(4, |_, _| g.next_gaussian());
            let a: Vec<f64> = (0..4).map(|_| g.next_gaussian()).collect();
            let spec = BorderedSpec::new(m, a, g.next_gaussian()).unwrap();
            let analysis = analyze_bordered(&spec).unwrap();
            let lam_max = analysis.exact.lambda_max_oracle;
            let scale = 1e-9 * (1.0 + lam_max.abs());
            assert!((lam_max - analysis.exact.lambda_max_secular).abs() < scale);
            for r in &analysis.reports {
                match r.method.as_str() {
                    // The corner enters b1 and b2 unsigned-unaware, so on
                    // indefinite blocks these control only the top
                    // eigenvalue, not the full operator norm.
                    "opnorm_b1" | "opnorm_b2" => {
                        assert!(r.upper.unwrap() >= lam_max - scale, "{r:?}");
                    }
                    _ => assert!(r.brackets_exact(scale), "report out of bracket: {r:?}"),
                }
            }
        }
    }
}
