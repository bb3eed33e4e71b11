//! File ingestion: CSV and JSON matrices and vectors, edge-list graphs, and
//! pinning problem files.
//!
//! Formats are chosen by extension: `.json` parses as JSON, anything else as
//! plain text (CSV rows of comma-separated decimals; graphs as `n m` followed
//! by `m` lines `u v`). Symmetric matrices are symmetrized on load by
//! averaging with their transpose; callers receive the input's maximum
//! asymmetry so they can warn when it exceeds their tolerance.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{Mat, SymmetricMatrix};
use crate::pinning::{scalars_from_shaping, PinningProblem};

/// Asymmetry above which loaders suggest a warning.
pub const ASYMMETRY_WARN_THRESHOLD: f64 = 1e-8;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::input(format!("cannot read {}: {e}", path.display()))
    })
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn parse_csv_rows(text: &str, what: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<f64>> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::input(format!(
                        "{what}: line {}: cannot parse '{}' as a number",
                        lineno + 1,
                        tok.trim()
                    ))
                })
            })
            .collect();
        rows.push(row?);
    }
    if rows.is_empty() {
        return Err(Error::input(format!("{what}: no data rows")));
    }
    Ok(rows)
}

#[derive(Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<f64>>,
}

fn matrix_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    if is_json(path) {
        let parsed: MatrixJson = serde_json::from_str(&read(path)?)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        if parsed.entries.len() != parsed.dim
            || parsed.entries.iter().any(|r| r.len() != parsed.dim)
        {
            return Err(Error::input(format!(
                "{}: entries are not a {0} x {0} array",
                parsed.dim
            )));
        }
        Ok(parsed.entries)
    } else {
        parse_csv_rows(&read(path)?, &path.display().to_string())
    }
}

/// Load a symmetric matrix, symmetrizing via `(m + mᵗ)/2`. Returns the
/// matrix and the maximum absolute asymmetry of the raw input.
pub fn load_symmetric_matrix(path: &Path) -> Result<(SymmetricMatrix, f64)> {
    SymmetricMatrix::from_rows_symmetrized(&matrix_rows(path)?)
}

/// Load a general rectangular matrix (CSV rows, or the JSON matrix object).
pub fn load_rect_matrix(path: &Path) -> Result<Mat> {
    if is_json(path) {
        let parsed: MatrixJson = serde_json::from_str(&read(path)?)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        Mat::from_rows(&parsed.entries)
    } else {
        Mat::from_rows(&parse_csv_rows(&read(path)?, &path.display().to_string())?)
    }
}

/// Load a vector: a JSON array, or CSV as either a single row or a single
/// column.
pub fn load_vector(path: &Path) -> Result<Vec<f64>> {
    if is_json(path) {
        let v: Vec<f64> = serde_json::from_str(&read(path)?)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        crate::matrix::ensure_finite(&v, "vector")?;
        return Ok(v);
    }
    let rows = parse_csv_rows(&read(path)?, &path.display().to_string())?;
    let v = if rows.len() == 1 {
        rows.into_iter().next().unwrap()
    } else if rows.iter().all(|r| r.len() == 1) {
        rows.into_iter().map(|r| r[0]).collect()
    } else {
        return Err(Error::input(format!(
            "{}: vector file must be one row or one column",
            path.display()
        )));
    };
    crate::matrix::ensure_finite(&v, "vector")?;
    Ok(v)
}

#[derive(Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Load a graph from an edge-list file (`n m` header then `u v` lines) or
/// the JSON object `{"n": .., "edges": [[u, v], ..]}`.
pub fn load_graph(path: &Path) -> Result<Graph> {
    if is_json(path) {
        let parsed: GraphJson = serde_json::from_str(&read(path)?)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        return Graph::new(parsed.n, &parsed.edges);
    }
    let text = read(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::input(format!("{}: empty graph file", path.display())))?;
    let mut it = header.split_whitespace();
    let parse_usize = |tok: Option<&str>, what: &str| -> Result<usize> {
        tok.ok_or_else(|| Error::input(format!("{}: missing {what}", path.display())))?
            .parse::<usize>()
            .map_err(|_| Error::input(format!("{}: bad {what}", path.display())))
    };
    let n = parse_usize(it.next(), "vertex count")?;
    let m = parse_usize(it.next(), "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::input(format!("{}: fewer than {m} edge lines", path.display())))?;
        let mut it = line.split_whitespace();
        let u = parse_usize(it.next(), "edge endpoint")?;
        let v = parse_usize(it.next(), "edge endpoint")?;
        edges.push((u, v));
    }
    Graph::new(n, &edges)
}

#[derive(Deserialize)]
struct PinningJson {
    graph: GraphJson,
    pinned: Vec<usize>,
    sigma: f64,
    f_bound: f64,
    #[serde(default)]
    kappa: Option<f64>,
    #[serde(default)]
    q_norm: Option<f64>,
    #[serde(default)]
    qb_min: Option<f64>,
    #[serde(default, rename = "Q")]
    q: Option<Vec<Vec<f64>>>,
    #[serde(default, rename = "B")]
    b: Option<Vec<Vec<f64>>>,
}

/// A pinning problem file with the gain possibly left open (for sweeps).
#[derive(Debug, Clone)]
pub struct PinningInput {
    pub graph: Graph,
    pub pinned: Vec<usize>,
    pub sigma: f64,
    pub f_bound: f64,
    pub q_norm: f64,
    pub qb_min: f64,
    pub kappa: Option<f64>,
}

impl PinningInput {
    pub fn problem(&self, kappa: f64) -> Result<PinningProblem> {
        PinningProblem::new(
            self.graph.clone(),
            self.pinned.iter().copied(),
            self.sigma,
            kappa,
            self.f_bound,
            self.q_norm,
            self.qb_min,
        )
    }
}

/// Load a pinning problem. The shaping scalars come either directly
/// (`q_norm`, `qb_min`) or from full `Q`, `B` matrices, in which case
/// `||Q||` and `lambda_min(QB + BᵗQᵗ)` are computed by the oracle with the
/// semidefiniteness check.
pub fn load_pinning_input(path: &Path) -> Result<PinningInput> {
    let parsed: PinningJson = serde_json::from_str(&read(path)?)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    let graph = Graph::new(parsed.graph.n, &parsed.graph.edges)?;
    let (q_norm, qb_min) = match (parsed.q_norm, parsed.qb_min, parsed.q, parsed.b) {
        (Some(qn), Some(qb), _, _) => (qn, qb),
        (_, _, Some(q_rows), Some(b_rows)) => {
            let q = SymmetricMatrix::from_rows(&q_rows)?;
            let b = Mat::from_rows(&b_rows)?;
            scalars_from_shaping(&q, &b)?
        }
        _ => {
            return Err(Error::input(format!(
                "{}: need either q_norm and qb_min, or full Q and B matrices",
                path.display()
            )))
        }
    };
    Ok(PinningInput {
        graph,
        pinned: parsed.pinned,
        sigma: parsed.sigma,
        f_bound: parsed.f_bound,
        q_norm,
        qb_min,
        kappa: parsed.kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> std::path::PathBuf {
        let path = dir.path().join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    #[test]
    fn csv_matrix_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(&dir, "m.csv", "1.0, 2.0\n2.0, 3.0\n");
        let (m, asym) = load_symmetric_matrix(&path).unwrap();
        assert_eq!(asym, 0.0);
        assert_eq!(m.get(0, 1), 2.0);
    }

    #[test]
    fn json_matrix_parses() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(&dir, "m.json", r#"{"dim":2,"entries":[[1.0,0.5],[0.5,2.0]]}"#);
        let (m, _) = load_symmetric_matrix(&path).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(1, 1), 2.0);
    }

    #[test]
    fn asymmetric_input_is_averaged() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(&dir, "m.csv", "1.0, 2.0\n2.5, 3.0\n");
        let (m, asym) = load_symmetric_matrix(&path).unwrap();
        assert!((asym - 0.5).abs() < 1e-15);
        assert!(asym > ASYMMETRY_WARN_THRESHOLD);
        assert_eq!(m.get(0, 1), 2.25);
    }

    #[test]
    fn vector_row_and_column_forms() {
        let dir = tempfile::tempdir().unwrap();
        let row = write_temp(&dir, "row.csv", "1.0, 2.0, 3.0\n");
        let col = write_temp(&dir, "col.csv", "1.0\n2.0\n3.0\n");
        assert_eq!(load_vector(&row).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(load_vector(&col).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn edge_list_graph() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(&dir, "p3.txt", "3 2\n0 1\n1 2\n");
        let g = load_graph(&path).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn json_graph() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(&dir, "g.json", r#"{"n":4,"edges":[[0,1],[2,3]]}"#);
        let g = load_graph(&path).unwrap();
        assert_eq!(g.connected_components(), 2);
    }

    #[test]
    fn pinning_file_with_scalars() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(
            &dir,
            "p.json",
            r#"{"graph":{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]},
                "pinned":[0],"sigma":1.0,"f_bound":0.2,
                "q_norm":1.0,"qb_min":2.0,"kappa":3.0}"#,
        );
        let input = load_pinning_input(&path).unwrap();
        assert_eq!(input.kappa, Some(3.0));
        let problem = input.problem(3.0).unwrap();
        assert_eq!(problem.pinned.len(), 1);
    }

    #[test]
    fn pinning_file_with_shaping_matrices() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(
            &dir,
            "p.json",
            r#"{"graph":{"n":3,"edges":[[0,1],[1,2]]},
                "pinned":[0],"sigma":1.0,"f_bound":0.0,
                "Q":[[1.0,0.0],[0.0,1.0]],"B":[[2.0,0.0],[0.0,1.0]]}"#,
        );
        let input = load_pinning_input(&path).unwrap();
        assert!((input.q_norm - 1.0).abs() < 1e-12);
        assert!((input.qb_min - 2.0).abs() < 1e-10);
    }

    #[test]
    fn malformed_files_are_input_errors() {
        let dir = tempfile::tempdir().unwrap();
        let bad = write_temp(&dir, "bad.csv", "1.0, nope\n");
        assert!(matches!(
            load_symmetric_matrix(&bad),
            Err(crate::error::Error::Input(_))
        ));
        let missing = dir.path().join("absent.csv");
        assert!(load_vector(&missing).is_err());
    }
}
