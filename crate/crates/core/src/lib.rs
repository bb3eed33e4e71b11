//! Extreme eigenvalues of symmetric matrices bordered by a column.
//!
//! A bordered matrix appends a row/column pair `(c, a)` to a symmetric block
//! `M`; equivalently it describes a rank-one update of a Gram matrix. This
//! crate computes the exact extreme eigenvalues of such matrices two
//! independent ways (a cyclic Jacobi oracle and a secular-equation solver),
//! evaluates the closed-form perturbation bounds that control them, and
//! applies those bounds to graph algebraic connectivity, network pinning
//! control, and compressed-sensing column-subset experiments.
//!
//! Everything is deterministic: the eigensolver uses a fixed sweep order and
//! sign convention, and all randomness flows from explicit seeds through the
//! generator in [`rng`].

pub mod bounds;
pub mod cs;
pub mod error;
pub mod graph;
pub mod io;
pub mod jacobi;
pub mod matrix;
pub mod pinning;
pub mod report;
pub mod rng;
pub mod secular;
pub mod verify;

pub use error::{Error, Result};
pub use jacobi::{jacobi_eigen, operator_norm, to_arrowhead, Arrowhead, Spectrum};
pub use matrix::{assemble_bordered, rank_one_update, BorderedSpec, Mat, SymmetricMatrix};
pub use report::BoundReport;
pub use secular::SecularProblem;
