//! Matrix realizations of irreducible q-Onsager modules of q-Racah type and
//! the checks on the defining relations.

mod irreducible;
mod qdg;
mod solve;
mod spectrum;

pub use irreducible::{check_irreducible, find_invariant_subspace};
pub use qdg::{check_qdg, qdg_residuals};
pub use solve::{solve_phi, solve_phi_with_limit};
pub use spectrum::{recover_a, recover_a_from_spectrum, spectrum_graph, SpectrumGraph};

use crate::error::{Error, Result};
use crate::linalg::{eigen_decomposition, maps_into, Decomposition, Matrix};
use crate::report::{Report, Witness};
use crate::scalars::{theta_stars, thetas, ParamSet, Scalar, SpectralParams};

/// A Leonard pair `A`, `A*` of q-Racah type with its spectra and primitive
/// idempotents.
///
/// Generated models live in the split basis: `A` is lower bidiagonal with
/// `theta_i` on the diagonal and ones below it, and `A*` is upper bidiagonal
/// with `theta*_i` on the diagonal and `phi_1, ..., phi_d` above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDModel {
    params: SpectralParams,
    phi: Option<Vec<Scalar>>,
    a: Matrix,
    astar: Matrix,
    theta: Vec<Scalar>,
    theta_star: Vec<Scalar>,
    proj_a: Vec<Matrix>,
    proj_astar: Vec<Matrix>,
}

/// `E_i = prod_{j != i} (X - th_j I) / (th_i - th_j)`.
pub fn lagrange_projectors(x: &Matrix, eigenvalues: &[Scalar]) -> Vec<Matrix> {
    let n = x.rows();
    (0..eigenvalues.len())
        .map(|i| {
            let mut e = Matrix::identity(n);
            for (j, th) in eigenvalues.iter().enumerate() {
                if j != i {
                    let denom = (&eigenvalues[i] - th).inv().expect("distinct eigenvalues");
                    e = (&e * &x.shift(&-th)).scale(&denom);
                }
            }
            e
        })
        .collect()
}

/// The split-basis pair for `p`, without any checks beyond `ParamSet`'s.
pub fn split_form_matrices(p: &ParamSet) -> (Matrix, Matrix) {
    let n = p.d() + 1;
    let th = thetas(p.spectral());
    let ths = theta_stars(p.spectral());
    let mut a = Matrix::diagonal(&th);
    let mut astar = Matrix::diagonal(&ths);
    for i in 1..n {
        a[(i, i - 1)] = Scalar::one();
        astar[(i - 1, i)] = p.phi()[i - 1].clone();
    }
    (a, astar)
}

/// Builds the split-form model for `p` and checks the q-Dolan/Grady relations
/// and irreducibility.
pub fn build_model(p: &ParamSet) -> Result<TDModel> {
    let (a, astar) = split_form_matrices(p);
    let model = TDModel::from_matrices(p.spectral().clone(), a, astar, Some(p.phi().to_vec()))?;
    let (r1, r2) = qdg_residuals(&model.a, &model.astar, p.q())?;
    if !r1.is_zero() {
        return Err(Error::Qdg {
            relation: 1,
            residual: r1,
        });
    }
    if !r2.is_zero() {
        return Err(Error::Qdg {
            relation: 2,
            residual: r2,
        });
    }
    if let Some(w) = find_invariant_subspace(&model.a, &model.astar, &model.theta) {
        return Err(Error::Reducible { witness: Some(w) });
    }
    Ok(model)
}

impl TDModel {
    /// Wraps an arbitrary pair whose spectra are the q-Racah sequences of
    /// `params`. Both matrices must be diagonalizable with exactly those
    /// eigenvalues; the defining relations are not checked here.
    pub fn from_matrices(
        params: SpectralParams,
        a: Matrix,
        astar: Matrix,
        phi: Option<Vec<Scalar>>,
    ) -> Result<TDModel> {
        let n = params.dim();
        for (name, m) in [("A", &a), ("A*", &astar)] {
            if m.shape() != (n, n) {
                return Err(Error::Shape {
                    op: "model",
                    left: (n, n),
                    right: m.shape(),
                });
            }
            let _ = name;
        }
        let theta = thetas(&params);
        let theta_star = theta_stars(&params);
        let proj_a = lagrange_projectors(&a, &theta);
        let proj_astar = lagrange_projectors(&astar, &theta_star);
        for (name, m, th, proj) in [("A", &a, &theta, &proj_a), ("A*", &astar, &theta_star, &proj_astar)] {
            for (i, e) in proj.iter().enumerate() {
                if e.is_zero() || m * e != e.scale(&th[i]) {
                    return Err(Error::NotDiagonalizable(format!(
                        "{name} is not diagonalizable with eigenvalue sequence {th:?} (fails at index {i})"
                    )));
                }
            }
        }
        Ok(TDModel {
            params,
            phi,
            a,
            astar,
            theta,
            theta_star,
            proj_a,
            proj_astar,
        })
    }

    pub fn params(&self) -> &SpectralParams {
        &self.params
    }

    pub fn phi(&self) -> Option<&[Scalar]> {
        self.phi.as_deref()
    }

    pub fn d(&self) -> usize {
        self.params.d()
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    pub fn q(&self) -> &Scalar {
        self.params.q()
    }

    pub fn a_scalar(&self) -> &Scalar {
        self.params.a()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn astar(&self) -> &Matrix {
        &self.astar
    }

    pub fn theta(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn theta_star(&self) -> &[Scalar] {
        &self.theta_star
    }

    /// Primitive idempotents `E_0, ..., E_d` of `A`.
    pub fn projectors_a(&self) -> &[Matrix] {
        &self.proj_a
    }

    /// Primitive idempotents `E*_0, ..., E*_d` of `A*`.
    pub fn projectors_astar(&self) -> &[Matrix] {
        &self.proj_astar
    }

    /// Eigenspaces `V_0, ..., V_d` of `A`.
    pub fn eigenspaces(&self) -> Decomposition {
        eigen_decomposition(&self.a, &self.theta).expect("validated on construction")
    }

    /// Eigenspaces `V*_0, ..., V*_d` of `A*`.
    pub fn dual_eigenspaces(&self) -> Decomposition {
        eigen_decomposition(&self.astar, &self.theta_star).expect("validated on construction")
    }

    /// Projector onto `V_i + ... + V_j`.
    pub fn range_projector(&self, lo: usize, hi: usize) -> Matrix {
        (lo..=hi).fold(Matrix::zeros(self.dim(), self.dim()), |acc, i| &acc + &self.proj_a[i])
    }
}

/// `E_i A* E_j = 0` and `E*_i A E*_j = 0` whenever `|i - j| > 1`.
pub fn check_tridiagonal_action(model: &TDModel) -> Report {
    tridiagonal_action_report(model.a(), model.astar(), model.projectors_a(), model.projectors_astar())
}

pub fn tridiagonal_action_report(a: &Matrix, astar: &Matrix, proj_a: &[Matrix], proj_astar: &[Matrix]) -> Report {
    let mut rep = Report::new();
    let n = proj_a.len();
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > 1 {
                rep.zero(
                    format!("tridiagonal.astar_on_v.{i}.{j}"),
                    format!("E_{i} A* E_{j} = 0"),
                    &(&proj_a[i] * astar) * &proj_a[j],
                );
                rep.zero(
                    format!("tridiagonal.a_on_vstar.{i}.{j}"),
                    format!("E*_{i} A E*_{j} = 0"),
                    &(&proj_astar[i] * a) * &proj_astar[j],
                );
            }
        }
    }
    rep
}

/// Structural properties of a model: idempotent relations, spectra, the
/// three-term action on eigenspaces, and the recovered `a`.
pub fn check_model_structure(model: &TDModel) -> Report {
    let mut rep = Report::new();
    let n = model.dim();
    for (label, x, th, proj) in [
        ("a", model.a(), model.theta(), model.projectors_a()),
        ("astar", model.astar(), model.theta_star(), model.projectors_astar()),
    ] {
        let sum = proj.iter().fold(Matrix::zeros(n, n), |acc, e| &acc + e);
        rep.condition(
            format!("projectors.{label}.resolution"),
            "sum_i E_i = I",
            sum.is_identity(),
            || Witness::Matrix(sum.clone()),
        );
        for i in 0..proj.len() {
            rep.equal(
                format!("projectors.{label}.eigen.{i}"),
                format!("X E_{i} = th_{i} E_{i}"),
                &(x * &proj[i]),
                &proj[i].scale(&th[i]),
            );
            rep.condition(
                format!("projectors.{label}.rank.{i}"),
                format!("rank E_{i} = 1"),
                proj[i].rank() == 1,
                || Witness::Note(format!("rank {}", proj[i].rank())),
            );
            for j in 0..proj.len() {
                let prod = &proj[i] * &proj[j];
                let expect = if i == j { proj[i].clone() } else { Matrix::zeros(n, n) };
                rep.equal(
                    format!("projectors.{label}.orthogonal.{i}.{j}"),
                    format!("E_{i} E_{j} = delta E_{i}"),
                    &prod,
                    &expect,
                );
            }
        }
    }
    let v = model.eigenspaces();
    let vs = model.dual_eigenspaces();
    for (label, x, dec) in [("astar_on_v", model.astar(), &v), ("a_on_vstar", model.a(), &vs)] {
        for i in 0..=model.d() {
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(model.d());
            let mut band = dec.part(lo).clone();
            for k in lo + 1..=hi {
                band = band.sum(dec.part(k)).expect("same ambient");
            }
            rep.condition(
                format!("three_term.{label}.{i}"),
                format!("X W_{i} in W_{{{i}-1}} + W_{i} + W_{{{i}+1}}"),
                maps_into(x, dec.part(i), &band),
                || Witness::Subspace(dec.part(i).clone()),
            );
        }
    }
    match recover_a_from_spectrum(model.theta(), model.q()) {
        Ok(a) => rep.equal_scalar(
            "spectrum.recover_a",
            "a recovered from th_0, th_1",
            &a,
            model.a_scalar(),
        ),
        Err(e) => rep.fail(
            "spectrum.recover_a",
            "a recovered from th_0, th_1",
            Witness::Note(e.to_string()),
        ),
    }
    match recover_a_from_spectrum(model.theta_star(), model.q()) {
        Ok(b) => rep.equal_scalar(
            "spectrum.recover_b",
            "b recovered from th*_0, th*_1",
            &b,
            model.params().b(),
        ),
        Err(e) => rep.fail(
            "spectrum.recover_b",
            "b recovered from th*_0, th*_1",
            Witness::Note(e.to_string()),
        ),
    }
    for (label, eigs) in [("a", model.theta()), ("astar", model.theta_star())] {
        let ok = matches!(
            spectrum_graph(eigs, model.q()),
            Ok(SpectrumGraph::Path(ref order)) if order.as_slice() == eigs || order.iter().rev().eq(eigs.iter())
        );
        rep.condition(
            format!("spectrum.path.{label}"),
            "adjacency graph of the spectrum is the path th_0 - ... - th_d",
            ok,
            || Witness::Note(format!("{:?}", spectrum_graph(eigs, model.q()))),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    pub(crate) fn golden_params() -> ParamSet {
        ParamSet::new(1, s(2), s(3), s(5), vec![s(1)]).unwrap()
    }

    #[test]
    fn golden_matrices() {
        let m = build_model(&golden_params()).unwrap();
        assert_eq!(m.a(), &Matrix::from_ratios(&[&[(37, 6), (0, 1)], &[(1, 1), (13, 6)]]));
        assert_eq!(
            m.astar(),
            &Matrix::from_ratios(&[&[(101, 10), (1, 1)], &[(0, 1), (29, 10)]])
        );
        assert_eq!(
            m.projectors_a()[1],
            Matrix::from_ratios(&[&[(0, 1), (0, 1)], &[(-1, 4), (1, 1)]])
        );
        assert_eq!(
            m.projectors_a()[0],
            Matrix::from_ratios(&[&[(1, 1), (0, 1)], &[(1, 4), (0, 1)]])
        );
    }

    #[test]
    fn golden_structure_and_tridiagonality() {
        let m = build_model(&golden_params()).unwrap();
        let rep = check_tridiagonal_action(&m);
        assert!(rep.is_empty() && rep.passed());
        let rep = check_model_structure(&m);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn d2_model_from_solver() {
        let phis = solve_phi(2, &s(2), &s(3), &s(5)).unwrap();
        assert!(!phis.is_empty());
        let p = ParamSet::new(2, s(2), s(3), s(5), phis[0].clone()).unwrap();
        let m = build_model(&p).unwrap();
        assert!(check_qdg(m.a(), m.astar(), m.q()).unwrap().passed());
        assert!(check_tridiagonal_action(&m).passed());
        assert!(check_model_structure(&m).passed());
    }

    #[test]
    fn dense_astar_breaks_tridiagonality() {
        let phis = solve_phi(2, &s(2), &s(3), &s(5)).unwrap();
        let p = ParamSet::new(2, s(2), s(3), s(5), phis[0].clone()).unwrap();
        let m = build_model(&p).unwrap();
        let dense = Matrix::from_ratios(&[
            &[(1, 1), (2, 3), (-1, 1)],
            &[(5, 2), (0, 1), (3, 1)],
            &[(7, 1), (-2, 1), (1, 4)],
        ]);
        let rep = tridiagonal_action_report(m.a(), &dense, m.projectors_a(), m.projectors_astar());
        assert!(!rep.passed());
        assert!(rep.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn from_matrices_rejects_wrong_spectrum() {
        let p = golden_params();
        let (a, _) = split_form_matrices(&p);
        let err = TDModel::from_matrices(p.spectral().clone(), a, Matrix::identity(2), None);
        assert!(matches!(err, Err(Error::NotDiagonalizable(_))));
    }
}
