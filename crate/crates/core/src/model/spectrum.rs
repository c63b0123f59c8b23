use crate::error::{Error, Result};
use crate::scalars::{p_poly, Scalar};

/// Shape of the graph on a set of eigenvalues in which `l` and `m` are
/// adjacent when `P(l, m) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumGraph {
    /// A Hamiltonian path, in path order. The walk starts at whichever
    /// endpoint comes first in the input.
    Path(Vec<Scalar>),
    Cycle,
    Disconnected,
    Branching,
}

pub fn spectrum_graph(eigenvalues: &[Scalar], q: &Scalar) -> Result<SpectrumGraph> {
    let n = eigenvalues.len();
    if n < 2 {
        return Err(Error::TooFewEigenvalues);
    }
    for i in 0..n {
        if eigenvalues[..i].contains(&eigenvalues[i]) {
            return Err(Error::DuplicateEigenvalue(eigenvalues[i].clone()));
        }
    }
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if p_poly(&eigenvalues[i], &eigenvalues[j], q)?.is_zero() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    if adj.iter().any(|nb| nb.len() > 2) {
        return Ok(SpectrumGraph::Branching);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.contains(&false) {
        return Ok(SpectrumGraph::Disconnected);
    }
    let Some(start) = adj.iter().position(|nb| nb.len() == 1) else {
        return Ok(SpectrumGraph::Cycle);
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    Ok(SpectrumGraph::Path(
        order.into_iter().map(|i| eigenvalues[i].clone()).collect(),
    ))
}

/// Recovers `a` from `theta_0`, `theta_1` assuming
/// `theta_i = a q^{d-2i} + a^-1 q^{2i-d}`.
pub fn recover_a(theta0: &Scalar, theta1: &Scalar, d: usize, q: &Scalar) -> Result<Scalar> {
    let gap = q.pow(2) - q.pow(-2);
    if gap.is_zero() {
        return Err(Error::Spectrum(format!("q = {q} gives q^2 = q^-2")));
    }
    let u = (q.pow(2) * theta0 - theta1) / gap;
    let v = theta0 - &u;
    if !(&u * &v).is_one() {
        return Err(Error::Spectrum(format!(
            "{theta0}, {theta1} are not the first two terms of a q-Racah sequence for q = {q}"
        )));
    }
    Ok(u * q.pow(-(d as i64)))
}

/// Like [`recover_a`], but also checks every later eigenvalue.
pub fn recover_a_from_spectrum(eigenvalues: &[Scalar], q: &Scalar) -> Result<Scalar> {
    if eigenvalues.len() < 2 {
        return Err(Error::TooFewEigenvalues);
    }
    let d = eigenvalues.len() - 1;
    let a = recover_a(&eigenvalues[0], &eigenvalues[1], d, q)?;
    let ai = a.pow(-1);
    for (i, th) in eigenvalues.iter().enumerate() {
        let e = d as i64 - 2 * i as i64;
        let expect = &a * q.pow(e) + &ai * q.pow(-e);
        if &expect != th {
            return Err(Error::Spectrum(format!("eigenvalue {i} is {th}, expected {expect}")));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, m: i64) -> Scalar {
        Scalar::ratio(n, m)
    }

    #[test]
    fn golden_path() {
        let q = Scalar::from_int(2);
        let g = spectrum_graph(&[r(37, 6), r(13, 6)], &q).unwrap();
        assert_eq!(g, SpectrumGraph::Path(vec![r(37, 6), r(13, 6)]));
    }

    #[test]
    fn shuffled_spectrum_recovers_path_order() {
        let q = Scalar::from_int(2);
        let a = Scalar::from_int(3);
        let th: Vec<Scalar> = (0..4)
            .map(|i| {
                let e = 3 - 2 * i;
                &a * q.pow(e) + a.pow(-1) * q.pow(-e)
            })
            .collect();
        let shuffled = vec![th[2].clone(), th[0].clone(), th[3].clone(), th[1].clone()];
        match spectrum_graph(&shuffled, &q).unwrap() {
            SpectrumGraph::Path(p) => assert_eq!(p, th),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disconnected_and_errors() {
        let q = Scalar::from_int(2);
        let g = spectrum_graph(&[r(37, 6), r(13, 6), r(100, 1)], &q).unwrap();
        assert_eq!(g, SpectrumGraph::Disconnected);
        assert!(matches!(
            spectrum_graph(&[r(1, 1), r(1, 1)], &q),
            Err(Error::DuplicateEigenvalue(_))
        ));
        assert!(matches!(spectrum_graph(&[r(1, 1)], &q), Err(Error::TooFewEigenvalues)));
    }

    #[test]
    fn recover_golden() {
        let q = Scalar::from_int(2);
        assert_eq!(recover_a(&r(37, 6), &r(13, 6), 1, &q).unwrap(), r(3, 1));
        assert_eq!(recover_a(&r(101, 10), &r(29, 10), 1, &q).unwrap(), r(5, 1));
        assert!(recover_a(&r(37, 6), &r(37, 6), 1, &q).is_err());
    }

    #[test]
    fn recover_round_trip_through_theta() {
        let p = crate::scalars::SpectralParams::new(2, r(3, 2), r(1, 7), r(2, 9)).unwrap();
        let th = crate::scalars::thetas(&p);
        assert_eq!(recover_a(&th[0], &th[1], 2, &r(3, 2)).unwrap(), r(1, 7));
        assert_eq!(recover_a_from_spectrum(&th, &r(3, 2)).unwrap(), r(1, 7));
    }

    #[test]
    fn recover_rejects_bad_tail() {
        let q = Scalar::from_int(2);
        assert!(recover_a_from_spectrum(&[r(37, 6), r(13, 6)], &q).is_ok());
        let a = Scalar::from_int(3);
        let mut th: Vec<Scalar> = (0..3)
            .map(|i| {
                let e = 2 - 2 * i;
                &a * q.pow(e) + a.pow(-1) * q.pow(-e)
            })
            .collect();
        assert_eq!(recover_a_from_spectrum(&th, &q).unwrap(), a);
        th[2] = th[2].clone() + Scalar::one();
        assert!(recover_a_from_spectrum(&th, &q).is_err());
    }
}
