use crate::linalg::{Matrix, Subspace};
use crate::scalars::Scalar;

/// Reduced row-echelon form and the pivot columns, pivoting on the first
/// nonzero entry of each column.
pub fn rref_with_pivots(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].inv().expect("pivot is nonzero");
        for j in c..cols {
            let x = &a[(r, j)] * &inv;
            a[(r, j)] = x;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let x = &a[(i, j)] - &f * &a[(r, j)];
                a[(i, j)] = x;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rref(m: &Matrix) -> Matrix {
    rref_with_pivots(m).0
}

/// Null space `{x : M x = 0}` as a subspace of the column space dimension.
pub fn kernel(m: &Matrix) -> Subspace {
    let (red, pivots) = rref_with_pivots(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&red[(row, f)];
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors)
}

/// Span of the columns of `m`.
pub fn column_space(m: &Matrix) -> Subspace {
    Subspace::from_rows(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rref_basic() {
        let m = Matrix::from_ints(&[&[0, 2, 4], &[1, 1, 1], &[1, 2, 3]]);
        let (r, p) = rref_with_pivots(&m);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, Matrix::from_ints(&[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]]));
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = kernel(&Matrix::zeros(2, 2));
        assert_eq!(k.dim(), 2);
        assert_eq!(k, Subspace::full(2));
    }

    #[test]
    fn dual_eigenspace_at_golden_parameters() {
        // A* - th*_0 with phi = 1 and th*_1 - th*_0 = -36/5
        let m = Matrix::from_ratios(&[&[(0, 1), (1, 1)], &[(0, 1), (-36, 5)]]);
        assert_eq!(kernel(&m), Subspace::span(2, &[ints(&[1, 0])]));
    }

    #[test]
    fn eigenspace_of_a_at_golden_parameters() {
        let m = Matrix::from_ints(&[&[0, 0], &[1, -4]]);
        assert_eq!(kernel(&m), Subspace::span(2, &[ints(&[4, 1])]));
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        assert_eq!(kernel(&m).dim() + m.rank(), 4);
        assert_eq!(column_space(&m).dim(), m.rank());
        assert_eq!(column_space(&m).ambient(), 3);
    }
}
