use crate::linalg::{kernel, Matrix, Subspace};
use crate::scalars::Scalar;

/// Smallest subspace containing `start` and invariant under every map in `ops`.
fn close_under(start: Subspace, ops: &[&Matrix]) -> Subspace {
    let mut w = start;
    loop {
        let mut next = w.clone();
        for op in ops {
            let img = w.image(op).expect("square operators");
            next = next.sum(&img).expect("same ambient");
        }
        if next.dim() == w.dim() {
            return w;
        }
        w = next;
    }
}

/// Searches for a proper nonzero subspace invariant under both `a` and
/// `astar`, seeded by eigenvectors of `a` for the given eigenvalues.
///
/// Any invariant subspace is invariant under `a`, so when `a` is
/// diagonalizable with simple spectrum it contains some eigenvector of `a`
/// and the search is exhaustive.
pub fn find_invariant_subspace(a: &Matrix, astar: &Matrix, eigenvalues: &[Scalar]) -> Option<Subspace> {
    let n = a.rows();
    for th in eigenvalues {
        for v in kernel(&a.shift(&-th)).vectors() {
            let w = close_under(Subspace::span(n, &[v]), &[a, astar]);
            if !w.is_full() {
                return Some(w);
            }
        }
    }
    None
}

/// True iff the algebra generated by `a` and `astar` is all of `End(V)`.
///
/// By Burnside's theorem this is equivalent to the pair having no proper
/// nonzero invariant subspace over any extension field, so the test needs
/// no eigenvalues.
pub fn check_irreducible(a: &Matrix, astar: &Matrix) -> bool {
    if !a.is_square() || a.shape() != astar.shape() {
        return false;
    }
    let n = a.rows();
    let flatten = |m: &Matrix| m.entries().to_vec();
    let mut span = Subspace::span(n * n, &[flatten(&Matrix::identity(n))]);
    let mut frontier = vec![Matrix::identity(n)];
    while !frontier.is_empty() && span.dim() < n * n {
        let mut next = Vec::new();
        for w in &frontier {
            for g in [a, astar] {
                let word = g * w;
                let grown = span
                    .sum(&Subspace::span(n * n, &[flatten(&word)]))
                    .expect("same ambient");
                if grown.dim() > span.dim() {
                    span = grown;
                    next.push(word);
                }
            }
        }
        frontier = next;
    }
    span.dim() == n * n
}
