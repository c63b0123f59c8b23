//! Dense exact linear algebra and the subspace lattice.

mod echelon;
mod matrix;
mod subspace;
mod text;

pub use echelon::{column_space, kernel, rref, rref_with_pivots};
pub use matrix::{commutator, q_commutator, Matrix};
pub use subspace::{subspace_equal, subspace_intersect, subspace_sum, Decomposition, FlagDirection, Subspace};
pub use text::{parse_matrix, parse_matrix_lines};

use crate::scalars::Scalar;

/// Splits the space into eigenspaces of `x` for the given eigenvalues.
/// Returns `None` unless every eigenspace is nonzero and together they
/// span the space, i.e. `x` is diagonalizable with exactly these eigenvalues.
pub fn eigen_decomposition(x: &Matrix, eigenvalues: &[Scalar]) -> Option<Decomposition> {
    let parts: Vec<Subspace> = eigenvalues.iter().map(|l| kernel(&x.shift(&-l))).collect();
    Decomposition::new(parts).ok()
}

/// Vectors in `w` whose image under `x` must lie in `target`.
pub fn maps_into(x: &Matrix, w: &Subspace, target: &Subspace) -> bool {
    w.image(x).and_then(|img| target.contains(&img)).unwrap_or(false)
}
