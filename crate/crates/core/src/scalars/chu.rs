//! Terminating q-Chu/Vandermonde sums for the ratios `t_s / t_r`.

use crate::error::Result;
use crate::scalars::{q_poch, t_all, thetas, Scalar, SpectralParams};

/// The four summation identities, each relating a finite sum to a ratio of
/// t-coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChuIdentity {
    /// `t_s/t_r = sum a^i q^{i(d-2r)} prod_k (th_s - th_{r+k}) / (q^2;q^2)_i`
    Forward,
    /// `t_r/t_s = sum a^-i q^{i(2r-d)} prod_k (th_s - th_{r+k}) / (q^-2;q^-2)_i`
    ForwardInverse,
    /// `t_r/t_s = sum a^-i q^{i(2s-d)} prod_k (th_r - th_{s-k}) / (q^2;q^2)_i`
    Reversed,
    /// `t_s/t_r = sum a^i q^{i(d-2s)} prod_k (th_r - th_{s-k}) / (q^-2;q^-2)_i`
    ReversedInverse,
}

impl ChuIdentity {
    pub const ALL: [ChuIdentity; 4] = [
        ChuIdentity::Forward,
        ChuIdentity::ForwardInverse,
        ChuIdentity::Reversed,
        ChuIdentity::ReversedInverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChuIdentity::Forward => "chu.forward",
            ChuIdentity::ForwardInverse => "chu.forward_inverse",
            ChuIdentity::Reversed => "chu.reversed",
            ChuIdentity::ReversedInverse => "chu.reversed_inverse",
        }
    }
}

/// Evaluates the sum side of `id` for the pair `r <= s`.
pub fn chu_sum(id: ChuIdentity, r: usize, s: usize, p: &SpectralParams) -> Scalar {
    assert!(r <= s && s <= p.d());
    let th = thetas(p);
    let (a, q) = (p.a(), p.q());
    let (d, ri, si) = (p.d() as i64, r as i64, s as i64);
    let q2 = q.pow(2);
    let q2i = q.pow(-2);
    (0..=s - r)
        .map(|i| {
            let ii = i as i64;
            let (coef, base, prod) = match id {
                ChuIdentity::Forward => (
                    a.pow(ii) * q.pow(ii * (d - 2 * ri)),
                    &q2,
                    (0..i).map(|k| &th[s] - &th[r + k]).product::<Scalar>(),
                ),
                ChuIdentity::ForwardInverse => (
                    a.pow(-ii) * q.pow(ii * (2 * ri - d)),
                    &q2i,
                    (0..i).map(|k| &th[s] - &th[r + k]).product(),
                ),
                ChuIdentity::Reversed => (
                    a.pow(-ii) * q.pow(ii * (2 * si - d)),
                    &q2,
                    (0..i).map(|k| &th[r] - &th[s - k]).product(),
                ),
                ChuIdentity::ReversedInverse => (
                    a.pow(ii) * q.pow(ii * (d - 2 * si)),
                    &q2i,
                    (0..i).map(|k| &th[r] - &th[s - k]).product(),
                ),
            };
            coef * prod / q_poch(base, base, i)
        })
        .sum()
}

/// The ratio side of `id`.
pub fn chu_target(id: ChuIdentity, r: usize, s: usize, t: &[Scalar]) -> Scalar {
    match id {
        ChuIdentity::Forward | ChuIdentity::ReversedInverse => &t[s] / &t[r],
        ChuIdentity::ForwardInverse | ChuIdentity::Reversed => &t[r] / &t[s],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChuViolation {
    pub identity: ChuIdentity,
    pub r: usize,
    pub s: usize,
    pub sum: Scalar,
    pub expected: Scalar,
}

/// Outcome of checking all four identities over `0 <= r <= s <= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChuReport {
    pub evaluated: usize,
    pub first_violation: Option<ChuViolation>,
}

impl ChuReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn check_chu_vandermonde(p: &SpectralParams) -> Result<ChuReport> {
    let t = t_all(p)?;
    let mut evaluated = 0;
    for r in 0..=p.d() {
        for s in r..=p.d() {
            for id in ChuIdentity::ALL {
                evaluated += 1;
                let sum = chu_sum(id, r, s, p);
                let expected = chu_target(id, r, s, &t);
                if sum != expected {
                    return Ok(ChuReport {
                        evaluated,
                        first_violation: Some(ChuViolation {
                            identity: id,
                            r,
                            s,
                            sum,
                            expected,
                        }),
                    });
                }
            }
        }
    }
    Ok(ChuReport {
        evaluated,
        first_violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: usize, q: Scalar, a: i64) -> SpectralParams {
        SpectralParams::new(d, q, Scalar::from_int(a), Scalar::from_int(5)).unwrap()
    }

    #[test]
    fn single_term_sums() {
        let p = params(2, Scalar::from_int(2), 3);
        for r in 0..=2 {
            for id in ChuIdentity::ALL {
                assert!(chu_sum(id, r, r, &p).is_one());
            }
        }
    }

    #[test]
    fn two_term_sum_at_golden_parameters() {
        let p = params(1, Scalar::from_int(2), 3);
        assert_eq!(chu_sum(ChuIdentity::Forward, 0, 1, &p), Scalar::from_int(9));
        assert_eq!(chu_sum(ChuIdentity::ForwardInverse, 0, 1, &p), Scalar::ratio(1, 9));
    }

    #[test]
    fn full_grid_d3() {
        let p = params(3, Scalar::ratio(3, 2), 5);
        let rep = check_chu_vandermonde(&p).unwrap();
        assert!(rep.passed(), "{rep:?}");
        // 10 pairs (r, s) times four identities
        assert_eq!(rep.evaluated, 40);
    }
}
