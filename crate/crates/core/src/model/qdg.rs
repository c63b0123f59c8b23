use crate::error::{Error, Result};
use crate::linalg::{commutator, q_commutator, Matrix};
use crate::report::Report;
use crate::scalars::Scalar;

/// `[X, [X, [X, Y]_q]_{q^-1}] - (q^2 - q^-2)^2 [Y, X]`.
fn dg_residual(x: &Matrix, y: &Matrix, q: &Scalar) -> Result<Matrix> {
    let qi = q.inv().ok_or_else(|| Error::Unsupported("q = 0".into()))?;
    let inner = q_commutator(x, y, q)?;
    let mid = q_commutator(x, &inner, &qi)?;
    let lhs = commutator(x, &mid)?;
    let c = (q.pow(2) - q.pow(-2)).square();
    lhs.checked_sub(&commutator(y, x)?.scale(&c))
}

/// Residuals of both q-Dolan/Grady relations, `(relation in A, relation in A*)`.
pub fn qdg_residuals(a: &Matrix, astar: &Matrix, q: &Scalar) -> Result<(Matrix, Matrix)> {
    if !a.is_square() || a.shape() != astar.shape() {
        return Err(Error::Shape {
            op: "qdg",
            left: a.shape(),
            right: astar.shape(),
        });
    }
    Ok((dg_residual(a, astar, q)?, dg_residual(astar, a, q)?))
}

pub fn check_qdg(a: &Matrix, astar: &Matrix, q: &Scalar) -> Result<Report> {
    let (r1, r2) = qdg_residuals(a, astar, q)?;
    let mut rep = Report::new();
    rep.zero("qdg.relation_a", "[A,[A,[A,A*]_q]_q^-1] = (q^2-q^-2)^2 [A*,A]", r1);
    rep.zero(
        "qdg.relation_astar",
        "[A*,[A*,[A*,A]_q]_q^-1] = (q^2-q^-2)^2 [A,A*]",
        r2,
    );
    Ok(rep)
}
