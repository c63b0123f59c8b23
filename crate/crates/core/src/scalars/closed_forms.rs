//! Closed-form scalar quantities: q-integers, q-Pochhammer symbols, the
//! eigenvalue sequences, the adjacency polynomial and the t-coefficients.

use crate::error::{Error, ParamError, Result};
use crate::scalars::{Scalar, SpectralParams};

fn check_q(q: &Scalar) -> Result<(), ParamError> {
    if q.is_zero() || q.abs().is_one() {
        Err(ParamError::ForbiddenQ(q.clone()))
    } else {
        Ok(())
    }
}

fn check_index(i: usize, d: usize) -> Result<()> {
    if i > d {
        Err(Error::Index { index: i, max: d })
    } else {
        Ok(())
    }
}

/// `[n]_q = (q^n - q^-n) / (q - q^-1)`.
pub fn q_int(n: i64, q: &Scalar) -> Result<Scalar, ParamError> {
    check_q(q)?;
    let qi = q.pow(-1);
    Ok((q.pow(n) - q.pow(-n)) / (q - &qi))
}

/// `(z; t)_n = (1 - z)(1 - zt)...(1 - z t^{n-1})`.
pub fn q_poch(z: &Scalar, t: &Scalar, n: usize) -> Scalar {
    let one = Scalar::one();
    let mut acc = Scalar::one();
    let mut zt = z.clone();
    for _ in 0..n {
        acc *= &(&one - &zt);
        zt *= t;
    }
    acc
}

/// `x q^{d-2i} + x^{-1} q^{2i-d}`, the common shape of both eigenvalue sequences.
fn racah_eigenvalue(x: &Scalar, q: &Scalar, d: usize, i: usize) -> Scalar {
    let e = d as i64 - 2 * i as i64;
    x * q.pow(e) + x.pow(-1) * q.pow(-e)
}

/// Eigenvalue `theta_i = a q^{d-2i} + a^{-1} q^{2i-d}` of `A`.
pub fn theta(i: usize, p: &SpectralParams) -> Result<Scalar> {
    check_index(i, p.d())?;
    Ok(racah_eigenvalue(p.a(), p.q(), p.d(), i))
}

/// Eigenvalue `theta*_i = b q^{d-2i} + b^{-1} q^{2i-d}` of `A*`.
pub fn theta_star(i: usize, p: &SpectralParams) -> Result<Scalar> {
    check_index(i, p.d())?;
    Ok(racah_eigenvalue(p.b(), p.q(), p.d(), i))
}

pub fn thetas(p: &SpectralParams) -> Vec<Scalar> {
    (0..=p.d()).map(|i| racah_eigenvalue(p.a(), p.q(), p.d(), i)).collect()
}

pub fn theta_stars(p: &SpectralParams) -> Vec<Scalar> {
    (0..=p.d()).map(|i| racah_eigenvalue(p.b(), p.q(), p.d(), i)).collect()
}

/// Adjacency polynomial
/// `P(l, m) = l^2 - (q^2 + q^-2) l m + m^2 + (q^2 - q^-2)^2`.
pub fn p_poly(lam: &Scalar, mu: &Scalar, q: &Scalar) -> Result<Scalar, ParamError> {
    check_q(q)?;
    let q2 = q.pow(2);
    let q2i = q.pow(-2);
    let gap = &q2 - &q2i;
    Ok(lam.square() - (&q2 + &q2i) * lam * mu + mu.square() + gap.square())
}

/// `t_ij = 1 + (th_i - th_j)(q th_i - q^-1 th_j) / ((q - q^-1)(q^2 - q^-2))`.
pub fn t_coeff(i: usize, j: usize, p: &SpectralParams) -> Result<Scalar> {
    let ti = theta(i, p)?;
    let tj = theta(j, p)?;
    let q = p.q();
    let qi = q.pow(-1);
    let denom = (q - &qi) * (q.pow(2) - q.pow(-2));
    Ok(Scalar::one() + (&ti - &tj) * (q * &ti - &qi * &tj) / denom)
}

/// `t_i = t_01 t_12 ... t_{i-1,i}`, cross-checked against `a^{2i} q^{2i(d-i)}`.
pub fn t_seq(i: usize, p: &SpectralParams) -> Result<Scalar> {
    check_index(i, p.d())?;
    let product = (1..=i)
        .map(|k| t_coeff(k - 1, k, p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .product::<Scalar>();
    let closed = t_closed_form(i, p);
    if product != closed {
        return Err(Error::Internal(format!(
            "t_{i}: product {product} disagrees with closed form {closed}"
        )));
    }
    Ok(product)
}

/// `a^{2i} q^{2i(d-i)}`.
pub fn t_closed_form(i: usize, p: &SpectralParams) -> Scalar {
    let (i, d) = (i as i64, p.d() as i64);
    p.a().pow(2 * i) * p.q().pow(2 * i * (d - i))
}

pub fn t_all(p: &SpectralParams) -> Result<Vec<Scalar>> {
    (0..=p.d()).map(|i| t_seq(i, p)).collect()
}
