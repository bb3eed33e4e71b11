//! Exact extreme eigenvalues of arrowhead matrices via the secular equation.
//!
//! For an arrowhead matrix with diagonal poles `d_1 >= ... >= d_n`, border
//! weights `w_j = b_j^2` and corner `c`, the eigenvalues away from the poles
//! are the roots of
//!
//! ```text
//! f(x) = c - x + sum_j w_j / (x - d_j)
//! ```
//!
//! `f` is strictly decreasing between consecutive poles and on the outer
//! intervals, so the largest eigenvalue is the unique root right of the
//! largest live pole. This solver brackets that root and bisects, then
//! polishes with safeguarded Newton steps. It never consults the Jacobi
//! oracle, which keeps the two computation routes independent.

use crate::error::{Error, Result};
use crate::matrix::ensure_finite;

/// Poles (descending), nonnegative weights (squared border entries) and the
/// corner scalar of an arrowhead eigenproblem.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularProblem {
    poles: Vec<f64>,
    weights: Vec<f64>,
    c: f64,
}

/// Relative deflation threshold: weights below `1e-14 * l1(weights)` are
/// treated as exactly zero. Zero-weight poles decouple and stay eigenvalues.
const DEFLATION_REL: f64 = 1e-14;

impl SecularProblem {
    pub fn new(poles: Vec<f64>, weights: Vec<f64>, c: f64) -> Result<Self> {
        if poles.len() != weights.len() {
            return Err(Error::input(format!(
                "{} poles but {} weights",
                poles.len(),
                weights.len()
            )));
        }
        ensure_finite(&poles, "poles")?;
        ensure_finite(&weights, "weights")?;
        if !c.is_finite() {
            return Err(Error::input(format!("corner scalar is not finite ({c})")));
        }
        if poles.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::input("poles must be sorted descending"));
        }
        if let Some(w) = weights.iter().find(|&&w| w < 0.0) {
            return Err(Error::input(format!("weights must be nonnegative (got {w})")));
        }
        Ok(SecularProblem { poles, weights, c })
    }

    pub fn from_arrowhead(arrow: &crate::jacobi::Arrowhead) -> Result<Self> {
        SecularProblem::new(
            arrow.poles.clone(),
            arrow.border.iter().map(|b| b * b).collect(),
            arrow.corner,
        )
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn corner(&self) -> f64 {
        self.c
    }

    /// Mirror problem whose largest eigenvalue is minus this problem's
    /// smallest: poles negated and reversed, corner negated.
    pub fn negated(&self) -> SecularProblem {
        SecularProblem {
            poles: self.poles.iter().rev().map(|p| -p).collect(),
            weights: self.weights.iter().rev().copied().collect(),
            c: -self.c,
        }
    }

    /// Evaluate the secular function at `x`. Errors if `x` sits on a pole
    /// with nonzero weight (within relative distance 1e-14); zero-weight
    /// poles do not restrict the domain.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let mut acc = self.c - x;
        for (&p, &w) in self.poles.iter().zip(&self.weights) {
            if w == 0.0 {
                continue;
            }
            if (x - p).abs() <= 1e-14 * (1.0 + p.abs()) {
                return Err(Error::domain(format!(
                    "secular function evaluated at live pole {p}"
                )));
            }
            acc += w / (x - p);
        }
        Ok(acc)
    }

    /// Live poles after deflation, duplicates merged by summing weights.
    /// Sorted descending, every weight strictly positive.
    fn deflated(&self) -> Vec<(f64, f64)> {
        let threshold = DEFLATION_REL * self.weights.iter().map(|w| w.abs()).sum::<f64>();
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (&p, &w) in self.poles.iter().zip(&self.weights) {
            if w <= threshold {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 += w,
                _ => out.push((p, w)),
            }
        }
        out
    }

    /// Largest eigenvalue of the arrowhead matrix.
    ///
    /// With all weights zero this is `max(c, d_1)` directly. Otherwise the
    /// root of `f` right of the largest live pole is solved to within
    /// `1e-12 * (1 + |d_1| + l1(weights))`, and any zero-weight pole that
    /// decouples above the root is taken into account.
    pub fn largest_eigenvalue(&self) -> f64 {
        let Some(&lead_pole) = self.poles.first() else {
            return self.c; // 1x1 matrix [c]
        };
        let live = self.deflated();
        if live.is_empty() {
            return self.c.max(lead_pole);
        }

        let p1 = live[0].0;
        let wsum: f64 = live.iter().map(|&(_, w)| w).sum();
        let scale = 1.0 + lead_pole.abs() + self.weights.iter().sum::<f64>();
        let tol = 1e-12 * scale;

        let f = |x: f64| -> f64 {
            let mut acc = self.c - x;
            for &(p, w) in &live {
                acc += w / (x - p);
            }
            acc
        };
        let fprime = |x: f64| -> f64 {
            let mut acc = -1.0;
            for &(p, w) in &live {
                acc -= w / ((x - p) * (x - p));
            }
            acc
        };

        // Left end: just right of the pole, where f blows up to +infinity.
        let mut delta = 1e-13 * scale;
        let mut lo = p1 + delta;
        while f(lo) <= 0.0 && delta > f64::MIN_POSITIVE {
            delta *= 0.5;
            lo = p1 + delta;
        }

        // Right end: the closed-form root of the single-pole majorant
        //   g(x) = c - x + ||w||_1 / (x - p1),
        // which upper-bounds f on (p1, inf), so f(hi) <= 0 there.
        let mut hi = 0.5 * (self.c + p1) + 0.5 * ((self.c - p1).powi(2) + 4.0 * wsum).sqrt();
        if hi <= lo {
            hi = lo + tol;
        }
        let mut step = tol.max(1e-12 * (1.0 + hi.abs()));
        while f(hi) > 0.0 {
            hi += step;
            step *= 2.0;
        }

        let (lo0, hi0) = (lo, hi);
        let mut iters = 0;
        while hi - lo > tol && iters < 200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            iters += 1;
        }

        // Safeguarded Newton polish; steps that leave the original bracket
        // are rejected and the bisection value stands.
        let mut x = 0.5 * (lo + hi);
        for _ in 0..4 {
            let fx = f(x);
            let dfx = fprime(x);
            if dfx == 0.0 {
                break;
            }
            let next = x - fx / dfx;
            if !(lo0..=hi0).contains(&next) {
                break;
            }
            x = next;
        }

        // Zero-weight poles above the live leading pole stay eigenvalues.
        x.max(lead_pole)
    }

    /// Smallest eigenvalue, via the negation mirror of `largest_eigenvalue`.
    pub fn smallest_eigenvalue(&self) -> f64 {
        -self.negated().largest_eigenvalue()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::jacobi_eigen;
    use crate::matrix::{assemble_bordered, BorderedSpec, SymmetricMatrix};
    use crate::rng::SplitMix64;

    #[test]
    fn eval_without_weights_is_affine() {
        let p = SecularProblem::new(vec![1.0], vec![0.0], 0.0).unwrap();
        assert_eq!(p.eval(2.0).unwrap(), -2.0);
    }

    #[test]
    fn eval_single_pole() {
        let p = SecularProblem::new(vec![0.0], vec![1.0], 0.0).unwrap();
        assert_eq!(p.eval(1.0).unwrap(), 0.0);
    }

    #[test]
    fn eval_at_live_pole_is_domain_error() {
        let p = SecularProblem::new(vec![1.0], vec![0.5], 0.0).unwrap();
        assert!(matches!(p.eval(1.0), Err(Error::Domain(_))));
        // dead pole: fine
        let q = SecularProblem::new(vec![1.0, 0.0], vec![0.0, 0.5], 0.0).unwrap();
        assert!(q.eval(1.0).is_ok());
    }

    #[test]
    fn bordered_identity_reaches_the_closed_form() {
        // poles all 1, total weight 0.25 split arbitrarily, corner 1:
        // the largest eigenvalue is 1 + sqrt(0.25) = 1.5.
        let p = SecularProblem::new(vec![1.0, 1.0, 1.0], vec![0.1, 0.05, 0.1], 1.0).unwrap();
        assert!((p.largest_eigenvalue() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn zero_weights_take_the_spectral_max() {
        let p = SecularProblem::new(vec![1.0, 0.0], vec![0.0, 0.0], 3.0).unwrap();
        assert_eq!(p.largest_eigenvalue(), 3.0);
        let q = SecularProblem::new(vec![1.0, 0.0], vec![0.0, 0.0], -2.0).unwrap();
        assert_eq!(q.largest_eigenvalue(), 1.0);
        assert_eq!(q.smallest_eigenvalue(), -2.0);
        assert_eq!(p.smallest_eigenvalue(), 0.0);
    }

    #[test]
    fn smallest_of_bordered_identity() {
        // 3x3 bordered identity with ||b|| = 0.5: eigenvalues {1.5, 1, 0.5}.
        let p = SecularProblem::new(vec![1.0, 1.0], vec![0.25, 0.0], 1.0).unwrap();
        let direct = jacobi_eigen(&assemble_bordered(
            &BorderedSpec::new(SymmetricMatrix::identity(2), vec![0.5, 0.0], 1.0).unwrap(),
        ))
        .unwrap();
        assert!((p.smallest_eigenvalue() - 0.5).abs() < 1e-12);
        assert!((direct.smallest() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn matches_oracle_on_random_problems() {
        let mut g = SplitMix64::new(101);
        for _ in 0..50 {
            let d = 2 + (g.next_u64() % 5) as usize;
            let mut poles: Vec<f64> = (0..d).map(|_| g.next_gaussian()).collect();
            poles.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let weights: Vec<f64> = (0..d)
                .map(|_| {
                    let b = g.next_gaussian();
                    b * b
                })
                .collect();
            let c = g.next_gaussian();
            let p = SecularProblem::new(poles.clone(), weights.clone(), c).unwrap();
            let spec = BorderedSpec::new(
                SymmetricMatrix::diagonal(&poles),
                weights.iter().map(|w| w.sqrt()).collect(),
                c,
            )
            .unwrap();
            let oracle = jacobi_eigen(&assemble_bordered(&spec)).unwrap();
            let scale = 1.0 + oracle.largest().abs();
            assert!(
                (p.largest_eigenvalue() - oracle.largest()).abs() <= 1e-9 * scale,
                "largest mismatch: secular {} vs oracle {}",
                p.largest_eigenvalue(),
                oracle.largest()
            );
            let scale_min = 1.0 + oracle.smallest().abs();
            assert!(
                (p.smallest_eigenvalue() - oracle.smallest()).abs() <= 1e-9 * scale_min,
                "smallest mismatch: secular {} vs oracle {}",
                p.smallest_eigenvalue(),
                oracle.smallest()
            );
        }
    }

    #[test]
    fn negation_symmetry_is_exact() {
        let mut g = SplitMix64::new(77);
        for _ in 0..20 {
            let mut poles: Vec<f64> = (0..4).map(|_| g.next_gaussian()).collect();
            poles.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let weights: Vec<f64> = (0..4).map(|_| g.next_f64()).collect();
            let p = SecularProblem::new(poles, weights, g.next_gaussian()).unwrap();
            let neg = p.negated();
            assert_eq!(p.largest_eigenvalue(), -neg.smallest_eigenvalue());
        }
    }

    #[test]
    fn root_exceeds_leading_pole_when_weighted() {
        let p = SecularProblem::new(vec![2.0, 1.0], vec![1e-6, 1.0], 0.0).unwrap();
        assert!(p.largest_eigenvalue() > 2.0);
    }

    #[test]
    fn deflated_leading_pole_still_counts() {
        // weight on the leading pole is zero, so it stays an eigenvalue; the
        // live root sits below it.
        let p = SecularProblem::new(vec![5.0, 0.0], vec![0.0, 0.01], -1.0).unwrap();
        assert_eq!(p.largest_eigenvalue(), 5.0);
    }

    #[test]
    fn repeated_poles_merge() {
        let merged = SecularProblem::new(vec![1.0, 1.0], vec![0.125, 0.125], 1.0).unwrap();
        let single = SecularProblem::new(vec![1.0], vec![0.25], 1.0).unwrap();
        assert!((merged.largest_eigenvalue() - single.largest_eigenvalue()).abs() < 1e-14);
    }
}
