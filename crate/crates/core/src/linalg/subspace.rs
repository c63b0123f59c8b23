use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{rref_with_pivots, Matrix};
use crate::scalars::Scalar;

/// A subspace of `F^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. The representation is canonical, so derived equality
/// is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let (red, pivots) = rref_with_pivots(m);
        let rank = pivots.len();
        let data = red.entries()[..rank * m.cols()].to_vec();
        Subspace {
            ambient: m.cols(),
            basis: Matrix::from_vec(rank, m.cols(), data).expect("rank rows"),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors.to_vec();
        if rows.is_empty() {
            return Subspace::zero(ambient);
        }
        assert!(rows.iter().all(|v| v.len() == ambient), "vector length");
        Subspace::from_rows(&Matrix::from_rows(rows).expect("uniform rows"))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::Ambient(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.vectors();
        rows.extend(other.vectors());
        Ok(Subspace::span(self.ambient, &rows))
    }

    /// Zassenhaus: reduce `[[S, S], [T, 0]]`; the rows whose left half
    /// vanishes carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut block = Matrix::zeros(self.dim() + other.dim(), 2 * n);
        for i in 0..self.dim() {
            for j in 0..n {
                block[(i, j)] = self.basis[(i, j)].clone();
                block[(i, n + j)] = self.basis[(i, j)].clone();
            }
        }
        for i in 0..other.dim() {
            for j in 0..n {
                block[(self.dim() + i, j)] = other.basis[(i, j)].clone();
            }
        }
        let (red, pivots) = rref_with_pivots(&block);
        let rows: Vec<Vec<Scalar>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| red.row(r)[n..].to_vec())
            .collect();
        Ok(Subspace::span(n, &rows))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.contains(&Subspace::span(self.ambient, &[v.to_vec()]))
            .expect("ambient checked by span")
    }

    /// `M S` for a square `M` acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::Shape {
                op: "image",
                left: m.shape(),
                right: (self.ambient, self.dim()),
            });
        }
        let imgs: Vec<Vec<Scalar>> = self.vectors().iter().map(|v| m.apply(v)).collect();
        Ok(Subspace::span(m.rows(), &imgs))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.basis)
    }
}

pub fn subspace_sum(s: &Subspace, t: &Subspace) -> Result<Subspace> {
    s.sum(t)
}

pub fn subspace_intersect(s: &Subspace, t: &Subspace) -> Result<Subspace> {
    s.intersect(t)
}

pub fn subspace_equal(s: &Subspace, t: &Subspace) -> Result<bool> {
    s.check_ambient(t)?;
    Ok(s == t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlagDirection {
    /// `W_0 + ... + W_i`
    Ascending,
    /// `W_d + ... + W_{d-i}`
    Descending,
}

/// An ordered direct-sum decomposition `W_0 + ... + W_d` of the ambient space
/// into nonzero parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    parts: Vec<Subspace>,
}

impl Decomposition {
    pub fn new(parts: Vec<Subspace>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Decomposition("no parts".into()));
        };
        let n = first.ambient();
        let mut acc = Subspace::zero(n);
        let mut total = 0;
        for (i, p) in parts.iter().enumerate() {
            if p.ambient() != n {
                return Err(Error::Ambient(n, p.ambient()));
            }
            if p.is_zero() {
                return Err(Error::Decomposition(format!("part {i} is zero")));
            }
            total += p.dim();
            acc = acc.sum(p)?;
            if acc.dim() != total {
                return Err(Error::Decomposition(format!(
                    "part {i} meets the sum of the earlier parts"
                )));
            }
        }
        if total != n {
            return Err(Error::Decomposition(format!("parts span dimension {total} of {n}")));
        }
        Ok(Decomposition { parts })
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Subspace {
        &self.parts[i]
    }

    /// Index of the last part.
    pub fn d(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn ambient(&self) -> usize {
        self.parts[0].ambient()
    }

    /// The same parts in reverse order.
    pub fn inverted(&self) -> Decomposition {
        Decomposition {
            parts: self.parts.iter().rev().cloned().collect(),
        }
    }

    pub fn flag(&self, i: usize, direction: FlagDirection) -> Result<Subspace> {
        let d = self.d();
        if i > d {
            return Err(Error::Index { index: i, max: d });
        }
        let range: Vec<usize> = match direction {
            FlagDirection::Ascending => (0..=i).collect(),
            FlagDirection::Descending => (d - i..=d).collect(),
        };
        let mut acc = Subspace::zero(self.ambient());
        for k in range {
            acc = acc.sum(&self.parts[k])?;
        }
        Ok(acc)
    }

    /// Matrix whose columns run through the bases of `W_0, ..., W_d` in order,
    /// together with the part index of each column.
    pub fn adapted_basis(&self) -> (Matrix, Vec<usize>) {
        let mut cols = Vec::new();
        let mut owner = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            for v in p.vectors() {
                cols.push(v);
                owner.push(i);
            }
        }
        (Matrix::from_columns(self.ambient(), &cols), owner)
    }

    /// The operator acting as `values[i]` on `W_i`.
    pub fn operator_with_values(&self, values: &[Scalar]) -> Matrix {
        assert_eq!(values.len(), self.parts.len());
        let (p, owner) = self.adapted_basis();
        let diag: Vec<Scalar> = owner.iter().map(|&i| values[i].clone()).collect();
        let pinv = p.inverse().expect("adapted basis is invertible");
        &(&p * &Matrix::diagonal(&diag)) * &pinv
    }

    /// Projector onto `W_i` along the other parts.
    pub fn projector(&self, i: usize) -> Matrix {
        let values: Vec<Scalar> = (0..self.parts.len())
            .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
            .collect();
        self.operator_with_values(&values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> Vec<Scalar> {
        x.iter().map(|&a| Scalar::from_int(a)).collect()
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let s = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let t = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(s.intersect(&t).unwrap(), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(s.sum(&s).unwrap(), s);
        assert!(subspace_equal(&s, &Subspace::span(3, &[v(&[1, 1, 0]), v(&[1, -1, 0])])).unwrap());
    }

    #[test]
    fn golden_eigenlines_span_the_plane() {
        let vs0 = Subspace::span(2, &[v(&[1, 0])]);
        let v0 = Subspace::span(2, &[v(&[4, 1])]);
        assert!(vs0.sum(&v0).unwrap().is_full());
        assert!(vs0.intersect(&v0).unwrap().is_zero());
    }

    #[test]
    fn ambient_mismatch() {
        let s = Subspace::full(2);
        let t = Subspace::full(3);
        assert!(matches!(s.sum(&t), Err(Error::Ambient(2, 3))));
        assert!(s.intersect(&t).is_err());
        assert!(subspace_equal(&s, &t).is_err());
    }

    #[test]
    fn flags() {
        let dec = Decomposition::new(vec![Subspace::span(2, &[v(&[4, 1])]), Subspace::span(2, &[v(&[0, 1])])]).unwrap();
        assert_eq!(
            dec.flag(0, FlagDirection::Ascending).unwrap(),
            Subspace::span(2, &[v(&[4, 1])])
        );
        assert!(dec.flag(1, FlagDirection::Ascending).unwrap().is_full());
        assert_eq!(
            dec.flag(0, FlagDirection::Descending).unwrap(),
            Subspace::span(2, &[v(&[0, 1])])
        );
        assert!(matches!(
            dec.flag(2, FlagDirection::Ascending),
            Err(Error::Index { index: 2, max: 1 })
        ));
    }

    #[test]
    fn rejects_non_direct_sums() {
        let a = Subspace::span(2, &[v(&[1, 0])]);
        assert!(Decomposition::new(vec![a.clone(), a.clone()]).is_err());
        assert!(Decomposition::new(vec![a.clone(), Subspace::zero(2)]).is_err());
        assert!(Decomposition::new(vec![a]).is_err());
    }

    #[test]
    fn operator_and_projectors() {
        let dec = Decomposition::new(vec![Subspace::span(2, &[v(&[1, 0])]), Subspace::span(2, &[v(&[4, 1])])]).unwrap();
        let m = dec.operator_with_values(&[Scalar::from_int(2), Scalar::ratio(1, 2)]);
        assert_eq!(m, Matrix::from_ratios(&[&[(2, 1), (-6, 1)], &[(0, 1), (1, 2)]]));
        let p0 = dec.projector(0);
        let p1 = dec.projector(1);
        assert!((&p0 + &p1).is_identity());
        assert!((&p0 * &p1).is_zero());
        assert_eq!(&p0 * &p0, p0);
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(-3i64..4, n), 0..=n).prop_map(move |rows| {
            let vs: Vec<Vec<Scalar>> = rows.iter().map(|r| v(r)).collect();
            Subspace::span(n, &vs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dimension_formula(s in arb_subspace(4), t in arb_subspace(4)) {
            let sum = s.sum(&t).unwrap();
            let cap = s.intersect(&t).unwrap();
            prop_assert_eq!(s.dim() + t.dim(), sum.dim() + cap.dim());
            prop_assert!(s.contains(&cap).unwrap() && t.contains(&cap).unwrap());
            prop_assert!(sum.contains(&s).unwrap() && sum.contains(&t).unwrap());
        }

        // S <= U implies S + (T & U) = (S + T) & U
        #[test]
        fn modular_law(s in arb_subspace(4), t in arb_subspace(4), u in arb_subspace(4)) {
            let u = u.sum(&s).unwrap();
            let lhs = s.sum(&t.intersect(&u).unwrap()).unwrap();
            let rhs = s.sum(&t).unwrap().intersect(&u).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
