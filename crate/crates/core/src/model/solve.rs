//! Finding split sequences `phi` that make the split-form pair satisfy both
//! q-Dolan/Grady relations.
//!
//! The relation in `A` is linear in the entries of `A*`, so with the
//! diagonals fixed it cuts out an affine family of `phi`. Points of that
//! family are then tried in order of small height until enough pass the
//! relation in `A*` (cubic in `A*`) and irreducibility.

use crate::error::{Error, Result};
use crate::linalg::{commutator, q_commutator, rref_with_pivots, Matrix};
use crate::model::{build_model, split_form_matrices};
use crate::scalars::{ParamSet, Scalar, SpectralParams};

const MAX_D: usize = 4;
const DEFAULT_LIMIT: usize = 3;
const MAX_TRIALS: usize = 4000;

/// `[A, [A, [A, X]_q]_{q^-1}] - (q^2 - q^-2)^2 [X, A]`, linear in `X`.
fn relation_a(a: &Matrix, x: &Matrix, q: &Scalar) -> Matrix {
    let qi = q.pow(-1);
    let inner = q_commutator(a, x, q).expect("square");
    let mid = q_commutator(a, &inner, &qi).expect("square");
    let c = (q.pow(2) - q.pow(-2)).square();
    commutator(a, &mid).expect("square") - commutator(x, a).expect("square").scale(&c)
}

/// Small rationals ordered roughly by height: 1, 2, -1, 1/2, -2, 3, ...
fn trial_values() -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for h in 1..=6i64 {
        for num in 1..=h {
            for den in [h / num, 1] {
                for (n, d) in [(num, den.max(1)), (den.max(1), num)] {
                    for sign in [1, -1] {
                        let v = Scalar::ratio(sign * n, d);
                        if !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
        }
    }
    out
}

/// All index tuples of length `k` with entries summing to `total`.
fn tuples_with_sum(k: usize, total: usize, limit: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(k: usize, total: usize, limit: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 0..=total.min(limit - 1) {
            cur.push(first);
            rec(k - 1, total - first, limit, cur, out);
            cur.pop();
        }
    }
    rec(k, total, limit, &mut Vec::new(), out);
}

/// Affine solution set `p + span(null)` of the relation in `A`, or `None`
/// when it is empty.
fn affine_family(sp: &SpectralParams) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let d = sp.d();
    let n = sp.dim();
    let zero_phi = ParamSet::from_spectral(sp.clone(), vec![Scalar::one(); d]).expect("valid");
    let (a, mut dstar) = split_form_matrices(&zero_phi);
    for i in 1..n {
        dstar[(i - 1, i)] = Scalar::zero();
    }
    let base = relation_a(&a, &dstar, sp.q());
    let columns: Vec<Matrix> = (0..d)
        .map(|k| {
            let mut s = Matrix::zeros(n, n);
            s[(k, k + 1)] = Scalar::one();
            relation_a(&a, &s, sp.q())
        })
        .collect();
    let mut rows = Vec::with_capacity(n * n);
    for e in 0..n * n {
        let mut row: Vec<Scalar> = columns.iter().map(|c| c.entries()[e].clone()).collect();
        row.push(-&base.entries()[e]);
        rows.push(row);
    }
    let aug = Matrix::from_rows(rows).expect("rectangular");
    let (r, pivots) = rref_with_pivots(&aug);
    if pivots.contains(&d) {
        return None;
    }
    let mut particular = vec![Scalar::zero(); d];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = r[(row, d)].clone();
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); d];
            v[f] = Scalar::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -&r[(row, f)];
            }
            v
        })
        .collect();
    Some((particular, null))
}

/// Up to three split sequences realizing an irreducible pair for the given
/// spectral data, in order of increasing height of the free parameters.
pub fn solve_phi(d: usize, q: &Scalar, a: &Scalar, b: &Scalar) -> Result<Vec<Vec<Scalar>>> {
    solve_phi_with_limit(d, q, a, b, DEFAULT_LIMIT)
}

pub fn solve_phi_with_limit(d: usize, q: &Scalar, a: &Scalar, b: &Scalar, limit: usize) -> Result<Vec<Vec<Scalar>>> {
    let sp = SpectralParams::new(d, q.clone(), a.clone(), b.clone())?;
    if d > MAX_D {
        return Err(Error::Unsupported(format!(
            "solving for phi is limited to d <= {MAX_D}, got {d}"
        )));
    }
    let Some((particular, null)) = affine_family(&sp) else {
        return Ok(Vec::new());
    };
    let values = trial_values();
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    let consider = |phi: Vec<Scalar>, found: &mut Vec<Vec<Scalar>>| {
        if phi.iter().any(Scalar::is_zero) || found.contains(&phi) {
            return;
        }
        let Ok(p) = ParamSet::from_spectral(sp.clone(), phi.clone()) else {
            return;
        };
        if build_model(&p).is_ok() {
            found.push(phi);
        }
    };
    if null.is_empty() {
        consider(particular, &mut found);
        return Ok(found);
    }
    let k = null.len();
    let mut trials = 0;
    'outer: for total in 0..k * values.len() {
        let mut tuples = Vec::new();
        tuples_with_sum(k, total, values.len(), &mut tuples);
        for t in tuples {
            let mut phi = particular.clone();
            for (idx, dir) in t.iter().zip(&null) {
                for (p, v) in phi.iter_mut().zip(dir) {
                    *p += &(&values[*idx] * v);
                }
            }
            consider(phi, &mut found);
            trials += 1;
            if found.len() >= limit || trials >= MAX_TRIALS {
                break 'outer;
            }
        }
    }
    Ok(found)
}
