//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! This is the verification oracle for the whole crate, so it favours
//! determinism and simplicity over speed: sweeps run in a fixed
//! row-by-row order, convergence is an absolute criterion on the
//! off-diagonal Frobenius norm, and eigenvector signs follow a fixed
//! convention so downstream quantities are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::matrix::{dot, BorderedSpec, SymmetricMatrix};

/// Default sweep budget; dense desk-scale matrices converge in well under ten.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector paired with `eigenvalues()[k]`.
    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

pub fn jacobi_eigen(m: &SymmetricMatrix) -> Result<Spectrum> {
    jacobi_eigen_with(m, MAX_SWEEPS)
}

pub fn jacobi_eigen_with(m: &SymmetricMatrix, max_sweeps: usize) -> Result<Spectrum> {
    let n = m.dim();
    let mut a: Vec<f64> = m.flat().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    // Convergence: off-diagonal Frobenius norm below 1e-12 * (1 + ||input||_F).
    let threshold = 1e-12 * (1.0 + m.frobenius_norm());

    let mut converged = n <= 1 || off_diagonal_norm(&a, n) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == max_sweeps {
            return Err(Error::numerical(format!(
                "jacobi did not converge after {max_sweeps} sweeps \
                 (off-diagonal residual {:e}, threshold {:e})",
                off_diagonal_norm(&a, n),
                threshold
            )));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = akp - s * (akq + tau * akp);
                    let new_kq = akq + s * (akp - tau * akq);
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp - s * (vkq + tau * vkp);
                    v[k * n + q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a, n) <= threshold;
    }

    // Sort descending; ties keep the lower original index first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j * n + j]
            .partial_cmp(&a[i * n + i])
            .expect("finite eigenvalues")
            .then(i.cmp(&j))
    });

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Vec::with_capacity(n);
    for &col in &order {
        let mut vec_col: Vec<f64> = (0..n).map(|k| v[k * n + col]).collect();
        // Sign convention: the entry of largest magnitude is positive; ties
        // break at the lowest index.
        let mut idx = 0;
        for k in 1..n {
            if vec_col[k].abs() > vec_col[idx].abs() {
                idx = k;
            }
        }
        if vec_col[idx] < 0.0 {
            for x in vec_col.iter_mut() {
                *x = -*x;
            }
        }
        vectors.push(vec_col);
    }

    Ok(Spectrum {
        eigenvalues,
        vectors,
    })
}

/// Spectral norm `max_i |lambda_i|`.
pub fn operator_norm(m: &SymmetricMatrix) -> Result<f64> {
    let s = jacobi_eigen(m)?;
    Ok(s.eigenvalues()
        .iter()
        .fold(0.0f64, |acc, &l| acc.max(l.abs())))
}

/// Arrowhead reduction of a bordered matrix: diagonal of eigenvalues of the
/// block, border rotated into the eigenbasis, corner unchanged. Has the same
/// spectrum as the assembled bordered matrix.
#[derive(Debug, Clone)]
pub struct Arrowhead {
    pub poles: Vec<f64>,
    pub border: Vec<f64>,
    pub corner: f64,
}

impl Arrowhead {
    /// The arrowhead as an ordinary bordered spec over a diagonal block.
    pub fn to_bordered(&self) -> BorderedSpec {
        BorderedSpec::new(
            SymmetricMatrix::diagonal(&self.poles),
            self.border.clone(),
            self.corner,
        )
        .expect("arrowhead dimensions are consistent by construction")
    }
}

/// Rotate a bordered spec into the eigenbasis of its block: poles are the
/// block eigenvalues (descending), border entries are `<a, V_j>`.
pub fn to_arrowhead(spec: &BorderedSpec) -> Result<Arrowhead> {
    let s = jacobi_eigen(&spec.m)?;
    let border = (0..spec.dim())
        .map(|j| dot(&spec.a, s.eigenvector(j)))
        .collect();
    Ok(Arrowhead {
        poles: s.eigenvalues().to_vec(),
        border,
        corner: spec.c,
    })
}

/// Threshold below which eigenvalues of a PSD matrix count as zero.
pub fn zero_tolerance(eigs_desc: &[f64]) -> f64 {
    1e-9 * (1.0 + eigs_desc.first().map_or(0.0, |l| l.abs()))
}

/// Number of eigenvalues above the zero threshold (PSD rank detection).
pub fn rank_at_tolerance(eigs_desc: &[f64]) -> usize {
    let tol = zero_tolerance(eigs_desc);
    eigs_desc.iter().filter(|&&l| l > tol).count()
}

/// Smallest eigenvalue above the zero threshold, if any.
pub fn smallest_nonzero(eigs_desc: &[f64]) -> Option<f64> {
    let tol = zero_tolerance(eigs_desc);
    eigs_desc.iter().rev().find(|&&l| l > tol).copied()
}

/// Squared norm of the projection of `x` onto the leading eigenspace.
/// Eigenvalues within relative tolerance 1e-10 of the largest count as part
/// of that eigenspace, which keeps the value basis independent under
/// multiplicity.
pub fn leading_projection_sq(spectrum: &Spectrum, x: &[f64]) -> f64 {
    let lam1 = spectrum.largest();
    let tol = 1e-10 * (1.0 + lam1.abs());
    spectrum
        .eigenvalues()
        .iter()
        .enumerate()
        .take_while(|&(_, &l)| lam1 - l <= tol)
        .map(|(j, _)| {
            let d = dot(x, spectrum.eigenvector(j));
            d * d
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::assemble_bordered;
    use crate::rng::SplitMix64;

    fn random_symmetric(dim: usize, g: &mut SplitMix64) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(dim, |_, _| g.next_gaussian())
    }

    #[test]
    fn identity_spectrum() {
        let s = jacobi_eigen(&SymmetricMatrix::identity(3)).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_by_two_exchange() {
        let m = SymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = jacobi_eigen(&m).unwrap();
        assert!((s.eigenvalues()[0] - 1.0).abs() < 1e-12);
        assert!((s.eigenvalues()[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_matches_eigenvalue_sum() {
        let mut g = SplitMix64::new(2);
        let m = random_symmetric(6, &mut g);
        let s = jacobi_eigen(&m).unwrap();
        let sum: f64 = s.eigenvalues().iter().sum();
        assert!((sum - m.trace()).abs() <= 1e-10 * (1.0 + m.trace().abs()));
    }

    #[test]
    fn frobenius_norm_preserved() {
        let mut g = SplitMix64::new(9);
        let m = random_symmetric(5, &mut g);
        let s = jacobi_eigen(&m).unwrap();
        let from_eigs = s.eigenvalues().iter().map(|l| l * l).sum::<f64>().sqrt();
        assert!((from_eigs - m.frobenius_norm()).abs() <= 1e-10 * (1.0 + m.frobenius_norm()));
    }

    #[test]
    fn spectrum_invariants_hold() {
        let mut g = SplitMix64::new(4);
        let m = random_symmetric(6, &mut g);
        let s = jacobi_eigen(&m).unwrap();
        let n = m.dim();
        // descending order
        for k in 1..n {
            assert!(s.eigenvalues()[k - 1] >= s.eigenvalues()[k]);
        }
        // orthonormality to 1e-10, max-abs entrywise
        for i in 0..n {
            for j in 0..n {
                let d = dot(s.eigenvector(i), s.eigenvector(j));
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((d - expected).abs() < 1e-10, "VtV[{i}][{j}] = {d}");
            }
        }
        // residual per column
        let scale = 1e-9 * (1.0 + s.largest().abs());
        for k in 0..n {
            let mv = m.matvec(s.eigenvector(k)).unwrap();
            for (i, &x) in s.eigenvector(k).iter().enumerate() {
                assert!((mv[i] - s.eigenvalues()[k] * x).abs() < scale);
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let mut g = SplitMix64::new(13);
        let m = random_symmetric(5, &mut g);
        let s1 = jacobi_eigen(&m).unwrap();
        let s2 = jacobi_eigen(&m).unwrap();
        assert_eq!(s1.eigenvalues(), s2.eigenvalues());
        for k in 0..5 {
            assert_eq!(s1.eigenvector(k), s2.eigenvector(k));
        }
    }

    #[test]
    fn nonconvergence_is_reported() {
        let mut g = SplitMix64::new(3);
        let m = random_symmetric(6, &mut g);
        let err = jacobi_eigen_with(&m, 0).unwrap_err();
        assert!(err.to_string().contains("residual"));
    }

    #[test]
    fn arrowhead_of_diagonal_block_permutes_border() {
        let m = SymmetricMatrix::diagonal(&[3.0, 1.0, 2.0]);
        let a = vec![0.5, -0.25, 0.125];
        let spec = BorderedSpec::new(m, a, 0.0).unwrap();
        let arrow = to_arrowhead(&spec).unwrap();
        assert_eq!(arrow.poles, vec![3.0, 2.0, 1.0]);
        // Diagonal blocks have signed canonical eigenvectors; the sign
        // convention makes them exactly the canonical basis vectors, so the
        // border is the permutation of `a` that sorts the diagonal.
        assert_eq!(arrow.border, vec![0.5, 0.125, -0.25]);
    }

    #[test]
    fn border_aligned_with_leading_eigenvector() {
        let mut g = SplitMix64::new(21);
        let m = random_symmetric(4, &mut g);
        let s = jacobi_eigen(&m).unwrap();
        let a = s.eigenvector(0).to_vec();
        let arrow = to_arrowhead(&BorderedSpec::new(m, a, 0.0).unwrap()).unwrap();
        assert!((arrow.border[0].abs() - 1.0).abs() < 1e-10);
        for k in 1..4 {
            assert!(arrow.border[k].abs() < 1e-10);
        }
    }

    #[test]
    fn arrowhead_spectrum_matches_bordered_spectrum() {
        let mut g = SplitMix64::new(33);
        let m = random_symmetric(5, &mut g);
        let a: Vec<f64> = (0..5).map(|_| g.next_gaussian()).collect();
        let spec = BorderedSpec::new(m, a, g.next_gaussian()).unwrap();
        let direct = jacobi_eigen(&assemble_bordered(&spec)).unwrap();
        let arrow = to_arrowhead(&spec).unwrap();
        let reduced = jacobi_eigen(&assemble_bordered(&arrow.to_bordered())).unwrap();
        let scale = 1e-9 * (1.0 + direct.largest().abs());
        for (x, y) in direct.eigenvalues().iter().zip(reduced.eigenvalues()) {
            assert!((x - y).abs() < scale);
        }
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let m = SymmetricMatrix::diagonal(&[3.0, -5.0]);
        assert!((operator_norm(&m).unwrap() - 5.0).abs() < 1e-12);
        assert!((operator_norm(&SymmetricMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-12);
    }
}
