use crate::error::ParamError;
use crate::scalars::Scalar;

/// Diameter, base and the two eigenvalue parameters of a q-Racah module.
///
/// Construction enforces: `d >= 1`, `q` outside `{0, 1, -1}`, `a, b != 0`,
/// and neither `a^2` nor `b^2` equal to any of `q^{2d-2}, q^{2d-4}, ...,
/// q^{2-2d}`. Under these conditions both eigenvalue sequences are
/// pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectralParams {
    d: usize,
    q: Scalar,
    a: Scalar,
    b: Scalar,
}

impl SpectralParams {
    pub fn new(d: usize, q: Scalar, a: Scalar, b: Scalar) -> Result<Self, ParamError> {
        if d < 1 {
            return Err(ParamError::Diameter(d));
        }
        if q.is_zero() || q.abs().is_one() {
            return Err(ParamError::ForbiddenQ(q));
        }
        for (name, x) in [("a", &a), ("b", &b)] {
            if x.is_zero() {
                return Err(ParamError::ZeroScalar { name });
            }
            let sq = x.square();
            let d = d as i64;
            if let Some(exponent) = (1 - d..d).map(|j| 2 * j).find(|&e| sq == q.pow(e)) {
                return Err(ParamError::Collision { name, exponent });
            }
        }
        Ok(SpectralParams { d, q, a, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.d + 1
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }
}

/// [`SpectralParams`] together with the split sequence `phi_1, ..., phi_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamSet {
    spectral: SpectralParams,
    phi: Vec<Scalar>,
}

impl ParamSet {
    pub fn new(d: usize, q: Scalar, a: Scalar, b: Scalar, phi: Vec<Scalar>) -> Result<Self, ParamError> {
        Self::from_spectral(SpectralParams::new(d, q, a, b)?, phi)
    }

    pub fn from_spectral(spectral: SpectralParams, phi: Vec<Scalar>) -> Result<Self, ParamError> {
        if phi.len() != spectral.d {
            return Err(ParamError::PhiLength {
                expected: spectral.d,
                got: phi.len(),
            });
        }
        if let Some(i) = phi.iter().position(Scalar::is_zero) {
            return Err(ParamError::PhiZero { index: i + 1 });
        }
        Ok(ParamSet { spectral, phi })
    }

    pub fn spectral(&self) -> &SpectralParams {
        &self.spectral
    }

    pub fn phi(&self) -> &[Scalar] {
        &self.phi
    }

    pub fn d(&self) -> usize {
        self.spectral.d
    }

    pub fn q(&self) -> &Scalar {
        &self.spectral.q
    }

    pub fn a(&self) -> &Scalar {
        &self.spectral.a
    }

    pub fn b(&self) -> &Scalar {
        &self.spectral.b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(SpectralParams::new(0, s(2), s(3), s(5)), Err(ParamError::Diameter(0)));
        for q in [0, 1, -1] {
            assert!(matches!(
                SpectralParams::new(1, s(q), s(3), s(5)),
                Err(ParamError::ForbiddenQ(_))
            ));
        }
        assert_eq!(
            SpectralParams::new(1, s(2), s(0), s(5)),
            Err(ParamError::ZeroScalar { name: "a" })
        );
        // d = 2: a^2 must avoid q^2, q^0, q^-2
        assert_eq!(
            SpectralParams::new(2, s(2), s(2), s(5)),
            Err(ParamError::Collision { name: "a", exponent: 2 })
        );
        assert_eq!(
            SpectralParams::new(2, s(2), s(3), Scalar::ratio(-1, 2)),
            Err(ParamError::Collision {
                name: "b",
                exponent: -2
            })
        );
        assert!(SpectralParams::new(2, s(2), s(1), s(5)).is_err());
        // q^4 is allowed at d = 2
        assert!(SpectralParams::new(2, s(2), s(4), s(5)).is_ok());
    }

    #[test]
    fn phi_validation() {
        let sp = SpectralParams::new(2, s(2), s(3), s(5)).unwrap();
        assert_eq!(
            ParamSet::from_spectral(sp.clone(), vec![s(1)]),
            Err(ParamError::PhiLength { expected: 2, got: 1 })
        );
        assert_eq!(
            ParamSet::from_spectral(sp.clone(), vec![s(1), s(0)]),
            Err(ParamError::PhiZero { index: 2 })
        );
        assert!(ParamSet::from_spectral(sp, vec![s(1), s(-4)]).is_ok());
    }
}
