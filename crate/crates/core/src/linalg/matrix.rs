use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Dense row-major matrix of exact rationals.
///
/// The arithmetic operators panic on shape mismatch; the `checked_*`
/// methods report it as an [`Error::Shape`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::Shape {
                op: "from_rows",
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and constants: rational entries as `(num, den)`.
    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| Scalar::ratio(n, d)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    /// Convenience for tests and constants: integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    /// Matrix whose columns are the given vectors, each of length `n`.
    pub fn from_columns(n: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    /// `self + c I`.
    pub fn shift(&self, c: &Scalar) -> Matrix {
        assert!(self.is_square(), "shift of a non-square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] += c;
        }
        m
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape("add", other)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape("sub", other)?;
        Ok(self.zip(other, |x, y| x - y))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &self[(i, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = &other[(k, j)];
                    if !y.is_zero() {
                        out[(i, j)] += x * y;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Matrix {
        assert!(self.is_square());
        (0..n).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }

    /// Gauss-Jordan inverse. Singular input reports its rank.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape {
                op: "inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (red, pivots) = super::rref_with_pivots(&aug);
        let rank = pivots.iter().take_while(|&&p| p < n).count();
        if rank < n {
            return Err(Error::Singular { rank, dim: n });
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        super::rref_with_pivots(self).1.len()
    }

    fn same_shape(&self, op: &'static str, other: &Matrix) -> Result<()> {
        if self.shape() != other.shape() {
            Err(Error::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        } else {
            Ok(())
        }
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(x, y)| f(x, y)).collect(),
        }
    }

    /// Renders in the text format: `"rows cols"` then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! matrix_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Matrix> for &Matrix {
            type Output = Matrix;
            fn $m(self, rhs: &Matrix) -> Matrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Matrix> for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Matrix> for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: &Matrix) -> Matrix {
                (&self).$m(rhs)
            }
        }
        impl $tr<Matrix> for &Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix {
                self.$m(&rhs)
            }
        }
    };
}

matrix_binop!(Add, add, checked_add);
matrix_binop!(Sub, sub, checked_sub);
matrix_binop!(Mul, mul, checked_mul);

impl Mul<&Matrix> for &Scalar {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        rhs.scale(self)
    }
}

impl Mul<Matrix> for &Scalar {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        rhs.scale(self)
    }
}

impl Mul<Matrix> for Scalar {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        rhs.scale(&self)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}

/// `[X, Y] = XY - YX`.
pub fn commutator(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    let xy = x.checked_mul(y)?;
    let yx = y.checked_mul(x)?;
    xy.checked_sub(&yx)
}

/// `[X, Y]_q = q XY - q^{-1} YX`.
pub fn q_commutator(x: &Matrix, y: &Matrix, q: &Scalar) -> Result<Matrix> {
    let xy = x.checked_mul(y)?;
    let yx = y.checked_mul(x)?;
    let qi = q.inv().ok_or_else(|| Error::Unsupported("q = 0".into()))?;
    xy.scale(q).checked_sub(&yx.scale(&qi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q_int;
    use proptest::prelude::*;

    #[test]
    fn diagonal_inverse() {
        let m = Matrix::from_ratios(&[&[(2, 1), (0, 1)], &[(0, 1), (1, 2)]]);
        let expect = Matrix::from_ratios(&[&[(1, 2), (0, 1)], &[(0, 1), (2, 1)]]);
        assert_eq!(m.inverse().unwrap(), expect);
    }

    #[test]
    fn lower_triangular_inverse() {
        let m = Matrix::from_ints(&[&[1, 0], &[-2, 9]]);
        let expect = Matrix::from_ratios(&[&[(1, 1), (0, 1)], &[(2, 9), (1, 9)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, expect);
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn singular_reports_rank() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert!(matches!(m.inverse(), Err(Error::Singular { rank: 2, dim: 3 })));
    }

    #[test]
    fn shape_mismatch() {
        let a = Matrix::zeros(2, 3);
        let b = Matrix::zeros(2, 3);
        assert!(matches!(a.checked_mul(&b), Err(Error::Shape { op: "mul", .. })));
        assert!(a.checked_add(&Matrix::zeros(3, 2)).is_err());
        assert!(commutator(&a, &b).is_err());
    }

    #[test]
    fn identity_law_and_commutators() {
        let x = Matrix::from_ratios(&[&[(1, 2), (3, 1)], &[(-1, 3), (7, 5)]]);
        assert_eq!(&x * &Matrix::identity(2), x);
        assert!(commutator(&x, &x).unwrap().is_zero());
        let q = Scalar::from_int(2);
        let qc = q_commutator(&Matrix::identity(2), &x, &q).unwrap();
        assert_eq!(qc, x.scale(&(&q - q.pow(-1))));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-9i64..10, 1i64..5), n * n).prop_map(move |v| {
            Matrix::from_vec(n, n, v.into_iter().map(|(a, b)| Scalar::ratio(a, b)).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // [X,[X,[X,Y]_q]_{q^-1}] = X^3Y - [3]_q X^2YX + [3]_q XYX^2 - YX^3
        #[test]
        fn nested_q_commutator_expansion(x in arb_matrix(3), y in arb_matrix(3)) {
            let q = Scalar::from_int(2);
            let qi = q.pow(-1);
            let nested = commutator(
                &x,
                &q_commutator(&x, &q_commutator(&x, &y, &q).unwrap(), &qi).unwrap(),
            )
            .unwrap();
            let c3 = q_int(3, &q).unwrap();
            let x2 = &x * &x;
            let x3 = &x2 * &x;
            let expanded = &x3 * &y - (&x2 * &y * &x).scale(&c3) + (&x * &y * &x2).scale(&c3)
                - &y * &x3;
            prop_assert_eq!(nested, expanded);
        }

        #[test]
        fn inverse_is_two_sided(x in arb_matrix(3)) {
            if let Ok(inv) = x.inverse() {
                prop_assert!((&x * &inv).is_identity());
                prop_assert!((&inv * &x).is_identity());
            } else {
                prop_assert!(x.rank() < 3);
            }
        }
    }
}
