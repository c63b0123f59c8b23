//! The operator `H = sum_i t_i E_i` that realizes the Lusztig automorphism
//! `L` of the q-Onsager algebra on a module, and its polynomial expansions in `A`.

use crate::error::{Error, Result};
use crate::linalg::{commutator, eigen_decomposition, q_commutator, Decomposition, Matrix};
use crate::model::{check_qdg, TDModel};
use crate::report::{Report, Witness};
use crate::scalars::{q_poch, t_all, t_closed_form, t_coeff, Scalar};

/// `H`, its inverse, the images `L^{+-1}(A*)` and the eigenspaces
/// `V+_i = H^-1 V*_i`, `V-_i = H V*_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LusztigData {
    pub t: Vec<Scalar>,
    pub h: Matrix,
    pub h_inv: Matrix,
    /// `H^-1 A* H`
    pub l_astar: Matrix,
    /// `H A* H^-1`
    pub linv_astar: Matrix,
    pub v_plus: Vec<crate::linalg::Subspace>,
    pub v_minus: Vec<crate::linalg::Subspace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `L`
    Plus,
    /// `L^-1`
    Minus,
}

/// Which eigenvalue of `A` an expansion of `H` is anchored at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expansion {
    /// Anchored at `theta_r`; valid on `V_r + ... + V_d`.
    Ascending,
    /// Anchored at `theta_s`; valid on `V_0 + ... + V_s`.
    Descending,
}

pub fn build_h(model: &TDModel) -> Result<LusztigData> {
    let t = t_all(model.params())?;
    let n = model.dim();
    let mut h = Matrix::zeros(n, n);
    let mut h_inv = Matrix::zeros(n, n);
    for (ti, e) in t.iter().zip(model.projectors_a()) {
        h = &h + &e.scale(ti);
        h_inv = &h_inv + &e.scale(&ti.inv().expect("t_i is nonzero"));
    }
    if !(&h * &h_inv).is_identity() {
        return Err(Error::Internal("sum t_i^-1 E_i is not the inverse of H".into()));
    }
    LusztigData::assemble(model, t, h, h_inv)
}

impl LusztigData {
    /// `H = sum t_i E_i` for an arbitrary nonzero sequence `t`, e.g. a
    /// perturbed one.
    pub fn from_t(model: &TDModel, t: Vec<Scalar>) -> Result<LusztigData> {
        if t.len() != model.dim() {
            return Err(Error::Index {
                index: t.len(),
                max: model.dim(),
            });
        }
        let n = model.dim();
        let mut h = Matrix::zeros(n, n);
        for (ti, e) in t.iter().zip(model.projectors_a()) {
            h = &h + &e.scale(ti);
        }
        let h_inv = h.inverse()?;
        LusztigData::assemble(model, t, h, h_inv)
    }

    /// Builds the data from an arbitrary invertible `h`, e.g. a deliberately
    /// wrong one. `t` is left as the true sequence for the model.
    pub fn from_h(model: &TDModel, h: Matrix) -> Result<LusztigData> {
        let h_inv = h.inverse()?;
        let t = t_all(model.params())?;
        LusztigData::assemble(model, t, h, h_inv)
    }

    fn assemble(model: &TDModel, t: Vec<Scalar>, h: Matrix, h_inv: Matrix) -> Result<LusztigData> {
        let l_astar = &(&h_inv * model.astar()) * &h;
        let linv_astar = &(&h * model.astar()) * &h_inv;
        let vstar = model.dual_eigenspaces();
        let v_plus = vstar
            .parts()
            .iter()
            .map(|w| w.image(&h_inv))
            .collect::<Result<Vec<_>>>()?;
        let v_minus = vstar.parts().iter().map(|w| w.image(&h)).collect::<Result<Vec<_>>>()?;
        Ok(LusztigData {
            t,
            h,
            h_inv,
            l_astar,
            linv_astar,
            v_plus,
            v_minus,
        })
    }

    pub fn v_plus_decomposition(&self) -> Result<Decomposition> {
        Decomposition::new(self.v_plus.clone())
    }

    pub fn v_minus_decomposition(&self) -> Result<Decomposition> {
        Decomposition::new(self.v_minus.clone())
    }
}

/// `L^{+-1}(A*) = A* + [A, [A, A*]_{q^{+-1}}] / ((q - q^-1)(q^2 - q^-2))`,
/// computed from the commutator formula rather than by conjugation.
pub fn lusztig_image(model: &TDModel, direction: Direction) -> Matrix {
    let q = model.q();
    let qe = match direction {
        Direction::Plus => q.clone(),
        Direction::Minus => q.pow(-1),
    };
    let denom = (q - q.pow(-1)) * (q.pow(2) - q.pow(-2));
    let inner = q_commutator(model.a(), model.astar(), &qe).expect("square");
    let outer = commutator(model.a(), &inner).expect("square");
    model.astar() + &outer.scale(&denom.inv().expect("q^4 != 1"))
}

pub fn check_l_conjugation(model: &TDModel, lus: &LusztigData) -> Report {
    let mut rep = Report::new();
    rep.condition(
        "lusztig.h_inverse",
        "H H^-1 = I",
        (&lus.h * &lus.h_inv).is_identity(),
        || Witness::Matrix(&lus.h * &lus.h_inv),
    );
    rep.equal(
        "lusztig.fixes_a",
        "H^-1 A H = A",
        &(&(&lus.h_inv * model.a()) * &lus.h),
        model.a(),
    );
    rep.equal(
        "lusztig.l_astar",
        "H^-1 A* H = A* + [A,[A,A*]_q] / ((q-q^-1)(q^2-q^-2))",
        &lus.l_astar,
        &lusztig_image(model, Direction::Plus),
    );
    rep.equal(
        "lusztig.linv_astar",
        "H A* H^-1 = A* + [A,[A,A*]_q^-1] / ((q-q^-1)(q^2-q^-2))",
        &lus.linv_astar,
        &lusztig_image(model, Direction::Minus),
    );
    rep.equal(
        "lusztig.l_linv",
        "L(L^-1(A*)) = A*",
        &(&(&lus.h_inv * &lus.linv_astar) * &lus.h),
        model.astar(),
    );
    rep
}

/// Checks `H` against its defining data: `H E_i = t_i E_i`, the product and
/// closed forms of `t_i`, and `H^-1 = sum t_i^-1 E_i`.
pub fn check_h_structure(model: &TDModel, lus: &LusztigData) -> Report {
    let mut rep = Report::new();
    for (i, e) in model.projectors_a().iter().enumerate() {
        rep.equal(
            format!("lusztig.h_on_v.{i}"),
            format!("H E_{i} = t_{i} E_{i}"),
            &(&lus.h * e),
            &e.scale(&lus.t[i]),
        );
        rep.equal(
            format!("lusztig.h_inv_on_v.{i}"),
            format!("H^-1 E_{i} = t_{i}^-1 E_{i}"),
            &(&lus.h_inv * e),
            &e.scale(&lus.t[i].inv().expect("nonzero")),
        );
        rep.equal_scalar(
            format!("lusztig.t_closed_form.{i}"),
            format!("t_{i} = a^{{2i}} q^{{2i(d-i)}}"),
            &lus.t[i],
            &t_closed_form(i, model.params()),
        );
    }
    match lus.h.inverse() {
        Ok(inv) => rep.equal(
            "lusztig.h_inverse_gauss",
            "(sum t_i E_i)^-1 = sum t_i^-1 E_i",
            &inv,
            &lus.h_inv,
        ),
        Err(e) => rep.fail(
            "lusztig.h_inverse_gauss",
            "(sum t_i E_i)^-1 = sum t_i^-1 E_i",
            Witness::Note(e.to_string()),
        ),
    }
    rep
}

/// `E_i L(A*) E_j = t_ij E_i A* E_j` for `|i - j| <= 1`, and both sides
/// vanish for `|i - j| > 1`.
pub fn check_l_blocks(model: &TDModel, lus: &LusztigData) -> Report {
    let mut rep = Report::new();
    let e = model.projectors_a();
    for i in 0..=model.d() {
        for j in 0..=model.d() {
            let lhs = &(&e[i] * &lus.l_astar) * &e[j];
            let base = &(&e[i] * model.astar()) * &e[j];
            if i.abs_diff(j) > 1 {
                rep.zero(format!("lusztig.block.{i}.{j}"), format!("E_{i} L(A*) E_{j} = 0"), lhs);
                continue;
            }
            match t_coeff(i, j, model.params()) {
                Ok(t) => rep.equal(
                    format!("lusztig.block.{i}.{j}"),
                    format!("E_{i} L(A*) E_{j} = t_{i}{j} E_{i} A* E_{j}"),
                    &lhs,
                    &base.scale(&t),
                ),
                Err(err) => rep.fail(format!("lusztig.block.{i}.{j}"), "t_ij", Witness::Note(err.to_string())),
            }
        }
    }
    rep
}

/// The eigenspaces of `L(A*)` and `L^-1(A*)` are `V+_i` and `V-_i`, for the
/// eigenvalues `theta*_i`, and both twisted pairs satisfy the q-Dolan/Grady
/// relations.
pub fn check_l_eigenstructure(model: &TDModel, lus: &LusztigData) -> Report {
    let mut rep = Report::new();
    for (label, img, expect) in [
        ("plus", &lus.l_astar, &lus.v_plus),
        ("minus", &lus.linv_astar, &lus.v_minus),
    ] {
        match eigen_decomposition(img, model.theta_star()) {
            Some(dec) => {
                for (i, want) in expect.iter().enumerate() {
                    rep.equal_subspace(
                        format!("lusztig.eigenspace.{label}.{i}"),
                        format!("ker(L^{{+-1}}(A*) - th*_{i}) = H^{{-+1}} V*_{i}"),
                        dec.part(i),
                        want,
                    );
                }
            }
            None => rep.fail(
                format!("lusztig.eigenspace.{label}"),
                "L^{+-1}(A*) is diagonalizable with eigenvalues th*_0..th*_d",
                Witness::Matrix(img.clone()),
            ),
        }
        match check_qdg(model.a(), img, model.q()) {
            Ok(r) => {
                for c in r.checks {
                    rep.condition(
                        format!("lusztig.twisted_{}.{label}", c.name),
                        c.identity,
                        c.passed,
                        || c.witness.unwrap_or(Witness::Note(String::new())),
                    );
                }
            }
            Err(e) => rep.fail(
                format!("lusztig.twisted_qdg.{label}"),
                "q-Dolan/Grady for (A, L(A*))",
                Witness::Note(e.to_string()),
            ),
        }
    }
    rep
}

/// Polynomial in `A` that agrees with `H` (or `H^-1` when `inverse`) on
/// `V_r + ... + V_d` for [`Expansion::Ascending`] and on `V_0 + ... + V_r`
/// for [`Expansion::Descending`].
pub fn expand_h(model: &TDModel, r: usize, kind: Expansion, inverse: bool) -> Result<Matrix> {
    let d = model.d();
    if r > d {
        return Err(Error::Index { index: r, max: d });
    }
    let q = model.q();
    let a = model.a_scalar();
    let th = model.theta();
    let n = model.dim();
    let (q2, q2i) = (q.pow(2), q.pow(-2));
    let (dd, ri) = (d as i64, r as i64);
    let t_r = t_closed_form(r, model.params());
    // per-step factor c (so the i-th term carries c^i) and the number of terms
    let (step, terms) = match (kind, inverse) {
        (Expansion::Ascending, false) => (a * q.pow(dd - 2 * ri), d - r),
        (Expansion::Ascending, true) => (a.pow(-1) * q.pow(2 * ri - dd), d - r),
        (Expansion::Descending, false) => (a.pow(-1) * q.pow(2 * ri - dd), r),
        (Expansion::Descending, true) => (a * q.pow(dd - 2 * ri), r),
    };
    let base = if inverse { &q2i } else { &q2 };
    let mut sum = Matrix::zeros(n, n);
    let mut prod = Matrix::identity(n);
    for i in 0..=terms {
        let coeff = step.pow(i as i64) / q_poch(base, base, i);
        sum = &sum + &prod.scale(&coeff);
        let k = match kind {
            Expansion::Ascending => r + i,
            Expansion::Descending => r.wrapping_sub(i),
        };
        if i < terms {
            prod = &prod * &model.a().shift(&-&th[k]);
        }
    }
    let lead = if inverse { t_r.inv().expect("nonzero") } else { t_r };
    Ok(sum.scale(&lead))
}

/// Each expansion agrees with `H` or `H^-1` on its range of eigenspaces,
/// for every anchor `r`.
pub fn check_expansions(model: &TDModel, lus: &LusztigData) -> Report {
    let mut rep = Report::new();
    let d = model.d();
    for r in 0..=d {
        for (kind, label, lo, hi) in [
            (Expansion::Ascending, "ascending", r, d),
            (Expansion::Descending, "descending", 0, r),
        ] {
            let proj = model.range_projector(lo, hi);
            for (inverse, target, tname) in [(false, &lus.h, "H"), (true, &lus.h_inv, "H^-1")] {
                let name = format!("expansion.{label}.{}.{r}", if inverse { "h_inv" } else { "h" });
                let identity = format!("{label} expansion of {tname} at th_{r} holds on V_{lo}+...+V_{hi}");
                match expand_h(model, r, kind, inverse) {
                    Ok(e) => rep.zero(name, identity, &(&e - target) * &proj),
                    Err(err) => rep.fail(name, identity, Witness::Note(err.to_string())),
                }
            }
        }
    }
    rep
}
