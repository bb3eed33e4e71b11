//! Dense matrix and vector primitives.
//!
//! Everything here is desk scale (dimensions in the low tens), stored dense,
//! and immutable after construction. [`SymmetricMatrix`] stores its entries
//! exactly symmetrized: `get(i, j) == get(j, i)` bit for bit.

use crate::error::{Error, Result};

pub(crate) fn ensure_finite(values: &[f64], what: &str) -> Result<()> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::input(format!("{what} contains a non-finite entry ({v})")));
    }
    Ok(())
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// General dense rectangular matrix, column-major.
///
/// Used for incidence matrices, design matrices and rectangular factors;
/// square symmetric data lives in [`SymmetricMatrix`] instead.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows * cols);
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::input(format!(
                    "column {j} has length {} but expected {rows}",
                    col.len()
                )));
            }
            ensure_finite(&col, "matrix column")?;
            data.extend(col);
        }
        Ok(Mat { rows, cols, data })
    }

    /// Build from row-major nested rows (as parsed from CSV).
    pub fn from_rows(rows_in: &[Vec<f64>]) -> Result<Self> {
        let rows = rows_in.len();
        let cols = rows_in.first().map_or(0, Vec::len);
        let mut m = Mat::zeros(rows, cols);
        for (i, row) in rows_in.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::input(format!(
                    "row {i} has length {} but expected {cols}",
                    row.len()
                )));
            }
            ensure_finite(row, "matrix row")?;
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    /// `Mᵗ x` for a vector of length `rows`.
    pub fn transpose_mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.rows {
            return Err(Error::input(format!(
                "vector length {} does not match row count {}",
                x.len(),
                self.rows
            )));
        }
        Ok((0..self.cols).map(|j| dot(self.col(j), x)).collect())
    }

    /// Gram matrix `MᵗM` (cols x cols). Exactly symmetric by construction.
    pub fn gram(&self) -> SymmetricMatrix {
        let mut g = SymmetricMatrix::zeros(self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                g.set(i, j, dot(self.col(i), self.col(j)));
            }
        }
        g
    }

    /// Outer Gram matrix `MMᵗ` (rows x rows).
    pub fn outer_gram(&self) -> SymmetricMatrix {
        let mut g = SymmetricMatrix::zeros(self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let s = (0..self.cols)
                    .map(|k| self.get(i, k) * self.get(j, k))
                    .sum();
                g.set(i, j, s);
            }
        }
        g
    }
}

/// Dense real symmetric matrix with exactly symmetrized storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>, // row-major
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymmetricMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SymmetricMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = SymmetricMatrix::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Build from nested rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let (m, asym) = SymmetricMatrix::from_rows_symmetrized(rows)?;
        if asym != 0.0 {
            return Err(Error::input(format!(
                "matrix is not symmetric (max |m[i][j] - m[j][i]| = {asym:e})"
            )));
        }
        Ok(m)
    }

    /// Build from nested rows, enforcing symmetry by averaging `(m + mᵗ)/2`.
    /// Returns the matrix together with the maximum absolute asymmetry of the
    /// input so callers can warn when it exceeds their tolerance.
    pub fn from_rows_symmetrized(rows: &[Vec<f64>]) -> Result<(Self, f64)> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::input("matrix must have at least one row"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::input(format!(
                    "row {i} has length {} but the matrix has {dim} rows",
                    row.len()
                )));
            }
            ensure_finite(row, "matrix row")?;
        }
        let mut m = SymmetricMatrix::zeros(dim);
        let mut max_asym = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                max_asym = max_asym.max((rows[i][j] - rows[j][i]).abs());
                m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
            }
        }
        Ok((m, max_asym))
    }

    /// Fill from a function of the index pair; `f` is consulted once per
    /// unordered pair `(i, j)` with `i <= j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymmetricMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)` so storage stays exactly symmetric.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn flat(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::input(format!(
                "vector length {} does not match dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok((0..self.dim).map(|i| dot(self.row(i), x)).collect())
    }

    /// `m + s * m2`, entrywise.
    pub fn add_scaled(&self, s: f64, m2: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        if self.dim != m2.dim {
            return Err(Error::input(format!(
                "dimension mismatch: {} vs {}",
                self.dim, m2.dim
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&m2.data) {
            *a += s * b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> SymmetricMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }
}

/// The defining data of a bordered matrix: a symmetric block `m`, a border
/// column `a` and a corner scalar `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderedSpec {
    pub m: SymmetricMatrix,
    pub a: Vec<f64>,
    pub c: f64,
}

impl BorderedSpec {
    pub fn new(m: SymmetricMatrix, a: Vec<f64>, c: f64) -> Result<Self> {
        if a.len() != m.dim() {
            return Err(Error::input(format!(
                "border vector length {} does not match block dimension {}",
                a.len(),
                m.dim()
            )));
        }
        ensure_finite(&a, "border vector")?;
        if !c.is_finite() {
            return Err(Error::input(format!("corner scalar is not finite ({c})")));
        }
        Ok(BorderedSpec { m, a, c })
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }
}

/// Assemble the `(d+1) x (d+1)` bordered matrix: corner `c`, first row/column
/// `a`, trailing block `m`.
pub fn assemble_bordered(spec: &BorderedSpec) -> SymmetricMatrix {
    let d = spec.dim();
    let mut out = SymmetricMatrix::zeros(d + 1);
    out.set(0, 0, spec.c);
    for j in 0..d {
        out.set(0, j + 1, spec.a[j]);
    }
    for i in 0..d {
        for j in i..d {
            out.set(i + 1, j + 1, spec.m.get(i, j));
        }
    }
    out
}

/// `m + x xᵗ`.
pub fn rank_one_update(m: &SymmetricMatrix, x: &[f64]) -> Result<SymmetricMatrix> {
    if x.len() != m.dim() {
        return Err(Error::input(format!(
            "vector length {} does not match dimension {}",
            x.len(),
            m.dim()
        )));
    }
    ensure_finite(x, "update vector")?;
    let mut out = m.clone();
    for i in 0..x.len() {
        for j in i..x.len() {
            out.set(i, j, m.get(i, j) + x[i] * x[j]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn assemble_block_diagonal() {
        let spec = BorderedSpec::new(SymmetricMatrix::diagonal(&[1.0]), vec![0.0], 2.0).unwrap();
        let a = assemble_bordered(&spec);
        assert_eq!(a.to_rows(), vec![vec![2.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn assemble_direct_placement() {
        let spec = BorderedSpec::new(SymmetricMatrix::identity(2), vec![1.0, 0.0], 1.0).unwrap();
        let a = assemble_bordered(&spec);
        assert_eq!(
            a.to_rows(),
            vec![
                vec![1.0, 1.0, 0.0],
                vec![1.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0]
            ]
        );
    }

    #[test]
    fn assemble_matches_stacked_gram() {
        // With m = XᵗX, a = Xᵗx, c = xᵗx the bordered matrix must equal the
        // Gram matrix of the column-appended factor (x, X), entry for entry.
        let mut g = SplitMix64::new(17);
        let x: Vec<f64> = (0..3).map(|_| g.next_gaussian()).collect();
        let cols: Vec<Vec<f64>> = (0..2)
            .map(|_| (0..3).map(|_| g.next_gaussian()).collect())
            .collect();
        let xmat = Mat::from_columns(cols.clone()).unwrap();
        let spec = BorderedSpec::new(
            xmat.gram(),
            xmat.transpose_mul_vec(&x).unwrap(),
            dot(&x, &x),
        )
        .unwrap();
        let a = assemble_bordered(&spec);

        let mut stacked = vec![x.clone()];
        stacked.extend(cols);
        let full = Mat::from_columns(stacked).unwrap().gram();
        for i in 0..3 {
            for j in 0..3 {
                assert!((a.get(i, j) - full.get(i, j)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rank_one_update_of_zero_is_outer_product() {
        let x = vec![1.0, -2.0, 3.0];
        let m = rank_one_update(&SymmetricMatrix::zeros(3), &x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), x[i] * x[j]);
            }
        }
    }

    #[test]
    fn rank_one_update_of_identity() {
        let m = rank_one_update(&SymmetricMatrix::identity(2), &[1.0, 0.0]).unwrap();
        assert_eq!(m.to_rows(), vec![vec![2.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        assert!(rank_one_update(&SymmetricMatrix::identity(2), &[1.0]).is_err());
        assert!(BorderedSpec::new(SymmetricMatrix::identity(2), vec![1.0], 0.0).is_err());
    }

    #[test]
    fn symmetrization_reports_asymmetry() {
        let rows = vec![vec![1.0, 2.0], vec![2.5, 3.0]];
        let (m, asym) = SymmetricMatrix::from_rows_symmetrized(&rows).unwrap();
        assert!((asym - 0.5).abs() < 1e-15);
        assert_eq!(m.get(0, 1), 2.25);
        assert_eq!(m.get(1, 0), 2.25);
    }

    #[test]
    fn non_finite_entries_rejected() {
        let rows = vec![vec![1.0, f64::NAN], vec![f64::NAN, 3.0]];
        assert!(SymmetricMatrix::from_rows_symmetrized(&rows).is_err());
    }
}
