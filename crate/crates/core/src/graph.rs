//! Simple undirected graphs, their Laplacians, and the edge-deletion bound on
//! algebraic connectivity via the complement graph.
//!
//! Orientation convention: every edge is stored as `(u, v)` with `u < v`, and
//! the incidence column for it carries `+1` at `u`, `-1` at `v`. The
//! Laplacian does not depend on that choice; fixing it makes incidence
//! matrices and border vectors reproducible.

use std::collections::BTreeSet;

use crate::bounds::{correction_term};
use crate::error::{Error, Result};
use crate::jacobi::jacobi_eigen;
use crate::matrix::{Mat, SymmetricMatrix};
use crate::report::BoundReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Build a simple graph; rejects self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for &(u, v) in edge_list {
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !edges.insert(e) {
                return Err(Error::input(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.insert((u, v));
            }
        }
        Graph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::input(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: BTreeSet<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.insert((0, n - 1));
        Ok(Graph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// The signed indicator of an (oriented) edge: `+1` at the lower
    /// endpoint, `-1` at the higher one, zero elsewhere.
    pub fn edge_vector(&self, u: usize, v: usize) -> Result<Vec<f64>> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::input(format!(
                "invalid edge ({u}, {v}) on {} vertices",
                self.n
            )));
        }
        let mut x = vec![0.0; self.n];
        x[u.min(v)] = 1.0;
        x[u.max(v)] = -1.0;
        Ok(x)
    }

    /// Vertex-by-edge incidence matrix with the canonical orientation;
    /// columns follow the sorted edge order.
    pub fn incidence(&self) -> Mat {
        let mut m = Mat::zeros(self.n, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            m.set(u, j, 1.0);
            m.set(v, j, -1.0);
        }
        m
    }

    /// Degree matrix minus adjacency matrix.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let mut l = SymmetricMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            l.set(u, u, l.get(u, u) + 1.0);
            l.set(v, v, l.get(v, v) + 1.0);
            l.set(u, v, -1.0);
        }
        l
    }

    pub fn complement(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.edges.contains(&(u, v)) {
                    edges.insert((u, v));
                }
            }
        }
        Graph { n: self.n, edges }
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let e = (u.min(v), u.max(v));
        if !self.edges.contains(&e) {
            return Err(Error::input(format!("edge ({u}, {v}) is not in the graph")));
        }
        let mut edges = self.edges.clone();
        edges.remove(&e);
        Ok(Graph { n: self.n, edges })
    }

    /// Number of connected components by union-find; independent of any
    /// spectral computation.
    pub fn connected_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru != rv {
                parent[ru] = rv;
            }
        }
        (0..self.n)
            .filter(|&v| find(&mut parent, v) == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components() == 1
    }

    /// Second-smallest Laplacian eigenvalue; zero exactly when disconnected.
    pub fn algebraic_connectivity(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::input(format!(
                "algebraic connectivity needs at least 2 vertices, got {}",
                self.n
            )));
        }
        let s = jacobi_eigen(&self.laplacian())?;
        Ok(s.eigenvalues()[self.n - 2])
    }

    /// `n - lambda_1(L(complement))`, a lower bound on the algebraic
    /// connectivity.
    pub fn connectivity_lower_from_complement(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::input(format!(
                "complement bound needs at least 2 vertices, got {}",
                self.n
            )));
        }
        let comp = self.complement();
        let lam1 = jacobi_eigen(&comp.laplacian())?.largest();
        Ok(self.n as f64 - lam1)
    }

    /// Bound the connectivity of `G - e` without eigensolving the perturbed
    /// complement: deleting `e` from the graph appends it to the complement,
    /// whose Laplacian gains the column `i_e` in its incidence factorization.
    /// That bordered form has corner `2` and border `incidence(Gᶜ)ᵗ i_e`, so
    /// the upper bound on its top eigenvalue yields
    /// `a(G - e) >= n - bound`. The exact connectivity of `G - e` is filled in
    /// from the oracle for comparison.
    pub fn edge_append_bound(&self, u: usize, v: usize) -> Result<BoundReport> {
        let deleted = self.remove_edge(u, v)?; // errors when e is absent
        let comp = self.complement();
        let lam1 = jacobi_eigen(&comp.laplacian())?.largest();
        let ie = self.edge_vector(u, v)?;
        let border = comp.incidence().transpose_mul_vec(&ie)?;
        let border_sq: f64 = border.iter().map(|b| b * b).sum();
        let corner = 2.0;
        let eta = (corner - lam1).abs();
        let upper_on_complement = corner.max(lam1) + correction_term(eta, border_sq);
        let lower = self.n as f64 - upper_on_complement;
        let exact = deleted.algebraic_connectivity()?;
        Ok(BoundReport::new("edge_delete_connectivity")
            .with_lower(lower)
            .with_exact(exact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{rank_at_tolerance, zero_tolerance};
    use crate::rng::SplitMix64;

    fn random_graph(n: usize, p: f64, g: &mut SplitMix64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if g.next_f64() < p {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn incidence_single_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let inc = g.incidence();
        assert_eq!(inc.col(0), &[1.0, -1.0]);
    }

    #[test]
    fn incidence_empty_graph() {
        let g = Graph::new(3, &[]).unwrap();
        assert_eq!(g.incidence().cols(), 0);
        assert_eq!(g.laplacian(), SymmetricMatrix::zeros(3));
    }

    #[test]
    fn laplacian_factorization_exact() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..10 {
            let g = random_graph(6, 0.5, &mut rng);
            let inc = g.incidence();
            assert_eq!(inc.outer_gram(), g.laplacian());
        }
    }

    #[test]
    fn laplacian_of_k2_and_p3() {
        let k2 = Graph::complete(2);
        assert_eq!(
            k2.laplacian().to_rows(),
            vec![vec![1.0, -1.0], vec![-1.0, 1.0]]
        );
        let p3 = Graph::path(3);
        let s = jacobi_eigen(&p3.laplacian()).unwrap();
        let expected = [3.0, 1.0, 0.0];
        for (l, e) in s.eigenvalues().iter().zip(expected) {
            assert!((l - e).abs() < 1e-10);
        }
    }

    #[test]
    fn connectivity_examples() {
        assert!((Graph::complete(4).algebraic_connectivity().unwrap() - 4.0).abs() < 1e-10);
        assert!((Graph::path(3).algebraic_connectivity().unwrap() - 1.0).abs() < 1e-10);
        let disconnected = Graph::new(4, &[(0, 1)]).unwrap();
        assert!(disconnected.algebraic_connectivity().unwrap().abs() < 1e-10);
        assert!(!disconnected.is_connected());
        assert!(Graph::new(1, &[]).unwrap().algebraic_connectivity().is_err());
    }

    #[test]
    fn complement_bound_examples() {
        // complete graph: complement empty, bound is n exactly
        let k4 = Graph::complete(4);
        assert!((k4.connectivity_lower_from_complement().unwrap() - 4.0).abs() < 1e-10);
        // path on 3 vertices: complement is a single edge, bound 3 - 2 = 1, tight
        let p3 = Graph::path(3);
        let bound = p3.connectivity_lower_from_complement().unwrap();
        assert!((bound - 1.0).abs() < 1e-9);
        assert!(bound <= p3.algebraic_connectivity().unwrap() + 1e-9);
    }

    #[test]
    fn complement_bound_below_connectivity_on_random_graphs() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..20 {
            let g = random_graph(7, 0.4, &mut rng);
            let bound = g.connectivity_lower_from_complement().unwrap();
            let exact = g.algebraic_connectivity().unwrap();
            assert!(bound <= exact + 1e-9, "bound {bound} > exact {exact}");
        }
    }

    #[test]
    fn zero_multiplicity_matches_component_count() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..20 {
            let g = random_graph(6, 0.3, &mut rng);
            let eigs = jacobi_eigen(&g.laplacian()).unwrap();
            let zeros = 6 - rank_at_tolerance(eigs.eigenvalues());
            assert_eq!(zeros, g.connected_components());
            let tol = zero_tolerance(eigs.eigenvalues());
            assert!(eigs.smallest() >= -tol, "laplacian must be PSD");
        }
    }

    #[test]
    fn delete_only_edge_of_k2() {
        let k2 = Graph::complete(2);
        let r = k2.edge_append_bound(0, 1).unwrap();
        assert!(r.exact.unwrap().abs() < 1e-10);
        assert!(r.lower.unwrap() <= 1e-10);
    }

    #[test]
    fn cycle_minus_edge_bound_is_tight() {
        // c4 minus an edge is the path p4 with connectivity 2 - sqrt(2); the
        // complement construction reproduces it exactly here.
        let c4 = Graph::cycle(4).unwrap();
        let r = c4.edge_append_bound(0, 1).unwrap();
        let expected = 2.0 - 2.0f64.sqrt();
        assert!((r.exact.unwrap() - expected).abs() < 1e-10);
        assert!(r.lower.unwrap() <= r.exact.unwrap() + 1e-9);
        assert!((r.lower.unwrap() - expected).abs() < 1e-9);
    }

    #[test]
    fn edge_append_bound_requires_membership() {
        let p3 = Graph::path(3);
        assert!(p3.edge_append_bound(0, 2).is_err());
    }

    #[test]
    fn random_edge_deletion_bounds_hold() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let g = random_graph(8, 0.5, &mut rng);
            if g.edge_count() == 0 {
                continue;
            }
            let pick = (rng.next_u64() % g.edge_count() as u64) as usize;
            let (u, v) = g.edges().nth(pick).unwrap();
            let r = g.edge_append_bound(u, v).unwrap();
            assert!(
                r.lower.unwrap() <= r.exact.unwrap() + 1e-9,
                "bound {} > exact {}",
                r.lower.unwrap(),
                r.exact.unwrap()
            );
        }
    }

    #[test]
    fn complement_involution() {
        let mut rng = SplitMix64::new(123);
        for _ in 0..10 {
            let g = random_graph(6, 0.5, &mut rng);
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(Graph::new(3, &[(0, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 3)]).is_err());
        assert!(Graph::new(3, &[(0, 1), (1, 0)]).is_err());
    }
}
