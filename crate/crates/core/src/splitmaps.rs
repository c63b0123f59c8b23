//! Split decompositions of a Leonard pair and the maps `K`, `B`, `K↓`, `B↓`
//! acting as `q^{d-2i}` on the i-th piece, with the derived maps `M`, `N`.

use crate::error::{Error, Result};
use crate::linalg::{eigen_decomposition, Decomposition, FlagDirection, Matrix, Subspace};
use crate::lusztig::LusztigData;
use crate::model::TDModel;
use crate::report::{Report, Witness};
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Forward,
    Reversed,
}

/// Which of the four split maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitKind {
    K,
    B,
    KDown,
    BDown,
}

impl SplitKind {
    pub const ALL: [SplitKind; 4] = [SplitKind::K, SplitKind::B, SplitKind::KDown, SplitKind::BDown];

    /// Orders of the `A*` and `A` eigenspaces defining the decomposition.
    pub fn orders(self) -> (Order, Order) {
        match self {
            SplitKind::K => (Order::Forward, Order::Forward),
            SplitKind::B => (Order::Forward, Order::Reversed),
            SplitKind::KDown => (Order::Reversed, Order::Forward),
            SplitKind::BDown => (Order::Reversed, Order::Reversed),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SplitKind::K => "K",
            SplitKind::B => "B",
            SplitKind::KDown => "K↓",
            SplitKind::BDown => "B↓",
        }
    }

    /// `true` for `K`, `K↓`, whose relations carry `a` where `B`, `B↓` carry `a^-1`.
    fn is_k(self) -> bool {
        matches!(self, SplitKind::K | SplitKind::KDown)
    }
}

fn ordered(dec: &Decomposition, order: Order) -> Decomposition {
    match order {
        Order::Forward => dec.clone(),
        Order::Reversed => dec.inverted(),
    }
}

/// `U_i = (W*_0 + ... + W*_i) ∩ (W_i + ... + W_d)` where `W*`, `W` are the
/// `A*` and `A` eigenspaces taken in the given orders.
pub fn split_decomposition(
    v: &Decomposition,
    vstar: &Decomposition,
    star_order: Order,
    a_order: Order,
) -> Result<Decomposition> {
    let ws = ordered(vstar, star_order);
    let w = ordered(v, a_order);
    let d = w.d();
    let parts = (0..=d)
        .map(|i| {
            ws.flag(i, FlagDirection::Ascending)?
                .intersect(&w.flag(d - i, FlagDirection::Descending)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Decomposition::new(parts)
}

/// `q^{d-2i}` for `i = 0..=d`.
pub fn split_values(d: usize, q: &Scalar) -> Vec<Scalar> {
    (0..=d).map(|i| q.pow(d as i64 - 2 * i as i64)).collect()
}

/// The map acting as `q^{d-2i}` on the i-th part.
pub fn map_from_decomposition(dec: &Decomposition, q: &Scalar) -> Matrix {
    dec.operator_with_values(&split_values(dec.d(), q))
}

pub fn split_decompositions(model: &TDModel) -> Result<[Decomposition; 4]> {
    let v = model.eigenspaces();
    let vs = model.dual_eigenspaces();
    let build = |k: SplitKind| {
        let (so, ao) = k.orders();
        split_decomposition(&v, &vs, so, ao)
    };
    Ok([
        build(SplitKind::K)?,
        build(SplitKind::B)?,
        build(SplitKind::KDown)?,
        build(SplitKind::BDown)?,
    ])
}

/// The four split maps, their inverses, and
/// `M = (aK - a^-1 B)/(a - a^-1)`, `N = (a^-1 K^-1 - a B^-1)/(a^-1 - a)`
/// with `M↓`, `N↓` defined the same way from `K↓`, `B↓`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMaps {
    pub k: Matrix,
    pub b: Matrix,
    pub k_down: Matrix,
    pub b_down: Matrix,
    pub k_inv: Matrix,
    pub b_inv: Matrix,
    pub k_down_inv: Matrix,
    pub b_down_inv: Matrix,
    pub m: Matrix,
    pub n: Matrix,
    pub m_down: Matrix,
    pub n_down: Matrix,
    /// Decompositions for `K`, `B`, `K↓`, `B↓` in that order; `None` when
    /// the maps were supplied directly.
    pub decompositions: Option<[Decomposition; 4]>,
}

impl SplitMaps {
    pub fn build(model: &TDModel) -> Result<SplitMaps> {
        let decs = split_decompositions(model)?;
        let [k, b, kd, bd] = decs.clone().map(|d| map_from_decomposition(&d, model.q()));
        let mut s = SplitMaps::from_maps(model.a_scalar(), k, b, kd, bd)?;
        s.decompositions = Some(decs);
        Ok(s)
    }

    /// Assembles the derived maps from given `K`, `B`, `K↓`, `B↓`; used for
    /// deliberately wrong inputs as well.
    pub fn from_maps(a: &Scalar, k: Matrix, b: Matrix, k_down: Matrix, b_down: Matrix) -> Result<SplitMaps> {
        let ai = a.inv().expect("a is nonzero");
        let diff = a - &ai;
        let diff_inv = diff
            .inv()
            .ok_or_else(|| Error::Unsupported("a = a^-1 leaves M and N undefined".into()))?;
        let k_inv = k.inverse()?;
        let b_inv = b.inverse()?;
        let k_down_inv = k_down.inverse()?;
        let b_down_inv = b_down.inverse()?;
        let m_of = |k: &Matrix, b: &Matrix| (&k.scale(a) - &b.scale(&ai)).scale(&diff_inv);
        // (a^-1 K^-1 - a B^-1) / (a^-1 - a)
        let n_of = |ki: &Matrix, bi: &Matrix| (&bi.scale(a) - &ki.scale(&ai)).scale(&diff_inv);
        Ok(SplitMaps {
            m: m_of(&k, &b),
            n: n_of(&k_inv, &b_inv),
            m_down: m_of(&k_down, &b_down),
            n_down: n_of(&k_down_inv, &b_down_inv),
            k,
            b,
            k_down,
            b_down,
            k_inv,
            b_inv,
            k_down_inv,
            b_down_inv,
            decompositions: None,
        })
    }

    pub fn map(&self, kind: SplitKind) -> &Matrix {
        match kind {
            SplitKind::K => &self.k,
            SplitKind::B => &self.b,
            SplitKind::KDown => &self.k_down,
            SplitKind::BDown => &self.b_down,
        }
    }

    pub fn inverse(&self, kind: SplitKind) -> &Matrix {
        match kind {
            SplitKind::K => &self.k_inv,
            SplitKind::B => &self.b_inv,
            SplitKind::KDown => &self.k_down_inv,
            SplitKind::BDown => &self.b_down_inv,
        }
    }
}

/// `(q X Y - q^-1 Y X) / (q - q^-1)`.
fn q_bracket(x: &Matrix, y: &Matrix, q: &Scalar) -> Matrix {
    let qi = q.pow(-1);
    (&(x * y).scale(q) - &(y * x).scale(&qi)).scale(&(q - &qi).inv().expect("q != +-1"))
}

/// Relations of each split map with `A`, the quadratic relations tying the
/// pairs `(K, B)` and `(K↓, B↓)` together, and the inverse pairs built from them.
pub fn check_ka_relations(model: &TDModel, s: &SplitMaps) -> Report {
    let mut rep = Report::new();
    let q = model.q();
    let a = model.a_scalar();
    let ai = a.pow(-1);
    let qi = q.pow(-1);
    let n = model.dim();
    let id = Matrix::identity(n);
    let qq = q - &qi;
    for kind in SplitKind::ALL {
        let (x, xi) = (s.map(kind), s.inverse(kind));
        let name = kind.name();
        // K pairs a with the square, B pairs a^-1
        let (sq, cst) = if kind.is_k() { (a, &ai) } else { (&ai, a) };
        rep.equal(
            format!("split.{name}.with_a"),
            format!("(q {name} A - q^-1 A {name})/(q-q^-1) = c {name}^2 + c^-1 I"),
            &q_bracket(x, model.a(), q),
            &(&(x * x).scale(sq) + &id.scale(cst)),
        );
        rep.equal(
            format!("split.{name}.inverse_with_a"),
            format!("(q A {name}^-1 - q^-1 {name}^-1 A)/(q-q^-1) = c^-1 {name}^-2 + c I"),
            &q_bracket(model.a(), xi, q),
            &(&(xi * xi).scale(cst) + &id.scale(sq)),
        );
    }
    let c1 = (&ai * q - a * &qi) / &qq;
    let c2 = (a * q - &ai * &qi) / &qq;
    let inv_diff = (&ai - a).inv().expect("a^2 != 1");
    for (label, k, b, ki, bi) in [
        ("up", &s.k, &s.b, &s.k_inv, &s.b_inv),
        ("down", &s.k_down, &s.b_down, &s.k_down_inv, &s.b_down_inv),
    ] {
        let quad = &(&(&(k * k).scale(a) - &(k * b).scale(&c1)) - &(b * k).scale(&c2)) + &(b * b).scale(&ai);
        rep.zero(
            format!("split.quadratic.{label}"),
            "a K^2 - c1 K B - c2 B K + a^-1 B^2 = 0",
            quad,
        );
        let quad_inv =
            &(&(&(ki * ki).scale(&ai) - &(ki * bi).scale(&c1)) - &(bi * ki).scale(&c2)) + &(bi * bi).scale(a);
        rep.zero(
            format!("split.quadratic_inverse.{label}"),
            "a^-1 K^-2 - c1 K^-1 B^-1 - c2 B^-1 K^-1 + a B^-2 = 0",
            quad_inv,
        );
        // c = a^-1 - a; the two factors below are mutually inverse
        let x1 = &(ki * b).scale(&(&ai * &qq * &inv_diff)) - &id.scale(&((&ai * q - a * &qi) * &inv_diff));
        let y1 = &(b * ki).scale(&(-(&ai * &qq * &inv_diff))) + &id.scale(&((a * q - &ai * &qi) * &inv_diff));
        rep.condition(
            format!("split.inverse_pair_kb.{label}"),
            "[a^-1(q-q^-1)/(a^-1-a)] K^-1 B - [(a^-1 q - a q^-1)/(a^-1-a)] I and [a^-1(q-q^-1)/(a-a^-1)] B K^-1 - [(a q - a^-1 q^-1)/(a-a^-1)] I are inverse",
            (&x1 * &y1).is_identity(),
            || Witness::Matrix(&x1 * &y1),
        );
        let x2 = &(bi * k).scale(&(-(a * &qq * &inv_diff))) + &id.scale(&((a * q - &ai * &qi) * &inv_diff));
        let y2 = &(k * bi).scale(&(a * &qq * &inv_diff)) - &id.scale(&((&ai * q - a * &qi) * &inv_diff));
        rep.condition(
            format!("split.inverse_pair_bk.{label}"),
            "[a(q-q^-1)/(a-a^-1)] B^-1 K - [(a q - a^-1 q^-1)/(a-a^-1)] I and [a(q-q^-1)/(a^-1-a)] K B^-1 - [(a^-1 q - a q^-1)/(a^-1-a)] I are inverse",
            (&x2 * &y2).is_identity(),
            || Witness::Matrix(&x2 * &y2),
        );
    }
    rep
}

/// The ascending flags of each split decomposition are the `A*` flags and the
/// descending ones the `A` flags, in the orders defining it.
pub fn check_split_flags(model: &TDModel) -> Report {
    let mut rep = Report::new();
    let decs = match split_decompositions(model) {
        Ok(d) => d,
        Err(e) => {
            rep.fail(
                "split.decomposition",
                "split decompositions exist",
                Witness::Note(e.to_string()),
            );
            return rep;
        }
    };
    let v = model.eigenspaces();
    let vs = model.dual_eigenspaces();
    for (kind, dec) in SplitKind::ALL.iter().zip(&decs) {
        let (so, ao) = kind.orders();
        let ws = ordered(&vs, so);
        let w = ordered(&v, ao);
        for i in 0..=model.d() {
            let check = |rep: &mut Report, label: &str, lhs: Result<Subspace>, rhs: Result<Subspace>| {
                let name = format!("split.flag.{}.{label}.{i}", kind.name());
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => {
                        rep.equal_subspace(name, format!("{label} flag {i} of the split decomposition"), &l, &r)
                    }
                    _ => rep.fail(name, "flag", Witness::Note("flag out of range".into())),
                }
            };
            check(
                &mut rep,
                "star",
                dec.flag(i, FlagDirection::Ascending),
                ws.flag(i, FlagDirection::Ascending),
            );
            check(
                &mut rep,
                "a",
                dec.flag(i, FlagDirection::Descending),
                w.flag(i, FlagDirection::Descending),
            );
        }
    }
    rep
}

/// `H^-1 X H` and `H X^-1 H^-1` for each split map `X`.
pub fn check_h_conjugation_of_splits(model: &TDModel, lus: &LusztigData, s: &SplitMaps) -> Report {
    let mut rep = Report::new();
    let a = model.a_scalar();
    let ai = a.pow(-1);
    let (a2, a2i) = (a.square(), ai.square());
    for kind in SplitKind::ALL {
        let (x, xi) = (s.map(kind), s.inverse(kind));
        let name = kind.name();
        // for K: H^-1 K H = a^-1 A - a^-2 K^-1 and H K^-1 H^-1 = a A - a^2 K;
        // B swaps a and a^-1
        let (c, c2, ci, c2i) = if kind.is_k() {
            (&ai, &a2i, a, &a2)
        } else {
            (a, &a2, &ai, &a2i)
        };
        rep.equal(
            format!("conjugation.{name}"),
            format!("H^-1 {name} H = c A - c^2 {name}^-1"),
            &(&(&lus.h_inv * x) * &lus.h),
            &(&model.a().scale(c) - &xi.scale(c2)),
        );
        rep.equal(
            format!("conjugation.{name}_inverse"),
            format!("H {name}^-1 H^-1 = c^-1 A - c^-2 {name}"),
            &(&(&lus.h * xi) * &lus.h_inv),
            &(&model.a().scale(ci) - &x.scale(c2i)),
        );
    }
    rep
}

/// `R = A - cX - c^-1 X^-1` (with `c = a` for `K`, `K↓` and `a^-1` for
/// `B`, `B↓`) raises the split decomposition of `X` by one step.
pub fn check_r_ladder(model: &TDModel, s: &SplitMaps) -> Report {
    let mut rep = Report::new();
    let decs = match split_decompositions(model) {
        Ok(d) => d,
        Err(e) => {
            rep.fail(
                "ladder.decomposition",
                "split decompositions exist",
                Witness::Note(e.to_string()),
            );
            return rep;
        }
    };
    let a = model.a_scalar();
    let ai = a.pow(-1);
    let q2 = model.q().square();
    let d = model.d();
    for (kind, dec) in SplitKind::ALL.iter().zip(&decs) {
        let name = kind.name();
        let (x, xi) = (s.map(*kind), s.inverse(*kind));
        let (c, ci) = if kind.is_k() { (a, &ai) } else { (&ai, a) };
        let sum = &x.scale(c) + &xi.scale(ci);
        let r = model.a() - &sum;
        for i in 0..=d {
            // K, K↓ reproduce theta_i on U_i; B, B↓ theta_{d-i}
            let j = if kind.is_k() { i } else { d - i };
            let residual = &sum.shift(&-&model.theta()[j]) * &dec.projector(i);
            rep.zero(
                format!("ladder.{name}.eigenvalue.{i}"),
                format!("c{name} + c^-1 {name}^-1 = th_{j} on U_{i}"),
                residual,
            );
            let target = if i < d {
                dec.part(i + 1).clone()
            } else {
                Subspace::zero(model.dim())
            };
            let img = dec.part(i).image(&r).expect("same ambient");
            let ok = target.contains(&img).unwrap_or(false);
            rep.condition(
                format!("ladder.{name}.{i}"),
                format!("R U_{i} in U_{{{i}+1}} (R = A - c{name} - c^-1 {name}^-1)"),
                ok,
                || Witness::Subspace(img.clone()),
            );
        }
        rep.zero(
            format!("ladder.{name}.nilpotent"),
            format!("R^{{d+1}} = 0 for {name}"),
            r.pow(d as u32 + 1),
        );
        rep.equal(
            format!("ladder.{name}.commutation"),
            format!("R {name} = q^2 {name} R"),
            &(&r * x),
            &(x * &r).scale(&q2),
        );
    }
    rep
}

/// `H^-1 M H = N`, `H^-1 M↓ H = N↓`, and each of `M`, `N`, `M↓`, `N↓` is
/// diagonalizable with eigenvalues `q^{d-2i}`.
pub fn check_mn(model: &TDModel, lus: &LusztigData, s: &SplitMaps) -> Report {
    let mut rep = Report::new();
    rep.equal("mn.conjugation", "H^-1 M H = N", &(&(&lus.h_inv * &s.m) * &lus.h), &s.n);
    rep.equal(
        "mn.conjugation_down",
        "H^-1 M↓ H = N↓",
        &(&(&lus.h_inv * &s.m_down) * &lus.h),
        &s.n_down,
    );
    let values = split_values(model.d(), model.q());
    for (name, x) in [("M", &s.m), ("N", &s.n), ("M↓", &s.m_down), ("N↓", &s.n_down)] {
        rep.condition(
            format!("mn.diagonalizable.{name}"),
            format!("{name} is diagonalizable with eigenvalues q^{{d-2i}}"),
            eigen_decomposition(x, &values).is_some(),
            || Witness::Matrix(x.clone()),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lusztig::build_h;
    use crate::model::{build_model, solve_phi};
    use crate::scalars::ParamSet;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn golden() -> TDModel {
        build_model(&ParamSet::new(1, s(2), s(3), s(5), vec![s(1)]).unwrap()).unwrap()
    }

    fn model(d: usize, q: Scalar, a: Scalar, b: Scalar) -> TDModel {
        let phi = solve_phi(d, &q, &a, &b).unwrap().remove(0);
        build_model(&ParamSet::new(d, q, a, b, phi).unwrap()).unwrap()
    }

    fn all_reports(m: &TDModel) -> Vec<Report> {
        let lus = build_h(m).unwrap();
        let sm = SplitMaps::build(m).unwrap();
        vec![
            check_ka_relations(m, &sm),
            check_split_flags(m),
            check_h_conjugation_of_splits(m, &lus, &sm),
            check_r_ladder(m, &sm),
            check_mn(m, &lus, &sm),
        ]
    }

    #[test]
    fn golden_maps() {
        let m = golden();
        let sm = SplitMaps::build(&m).unwrap();
        assert_eq!(sm.k, Matrix::diagonal(&[s(2), Scalar::ratio(1, 2)]));
        assert_eq!(sm.b, Matrix::from_ratios(&[&[(2, 1), (-6, 1)], &[(0, 1), (1, 2)]]));
        assert_eq!(sm.m, Matrix::from_ratios(&[&[(2, 1), (3, 4)], &[(0, 1), (1, 2)]]));
        assert_eq!(sm.n, Matrix::from_ratios(&[&[(1, 2), (27, 4)], &[(0, 1), (2, 1)]]));
        let lus = build_h(&m).unwrap();
        assert_eq!(
            &(&lus.h_inv * &sm.k) * &lus.h,
            Matrix::from_ratios(&[&[(2, 1), (0, 1)], &[(1, 3), (1, 2)]])
        );
        let r = &(m.a() - &sm.k.scale(&s(3))) - &sm.k_inv.scale(&Scalar::ratio(1, 3));
        assert_eq!(r, Matrix::from_ints(&[&[0, 0], &[1, 0]]));
        assert!(r.pow(2).is_zero());
        assert_eq!(&r * &sm.k, Matrix::from_ints(&[&[0, 0], &[2, 0]]));
        assert_eq!(
            &lus.h * &(&sm.k_inv * &lus.h_inv),
            &m.a().scale(&s(3)) - &sm.k.scale(&s(9))
        );
    }

    #[test]
    fn golden_reports_pass() {
        for rep in all_reports(&golden()) {
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn grid_reports_pass() {
        for d in 2..=3 {
            for q in [s(2), Scalar::ratio(3, 2), s(-2)] {
                for (a, b) in [(s(3), s(5)), (Scalar::ratio(1, 7), Scalar::ratio(2, 9))] {
                    let m = model(d, q.clone(), a, b);
                    for rep in all_reports(&m) {
                        assert!(rep.passed(), "d={d} q={q}\n{rep}");
                    }
                }
            }
        }
    }

    #[test]
    fn swapped_k_and_b_fail() {
        let m = model(2, s(2), s(3), s(5));
        let sm = SplitMaps::build(&m).unwrap();
        let swapped = SplitMaps::from_maps(
            m.a_scalar(),
            sm.b.clone(),
            sm.k.clone(),
            sm.k_down.clone(),
            sm.b_down.clone(),
        )
        .unwrap();
        let rep = check_ka_relations(&m, &swapped);
        assert!(!rep.get("split.K.with_a").unwrap().passed);
        assert!(!rep.get("split.B.with_a").unwrap().passed);
        assert!(rep.get("split.K↓.with_a").unwrap().passed);
    }

    #[test]
    fn golden_decompositions() {
        let m = golden();
        let e0 = vec![s(1), s(0)];
        let e1 = vec![s(0), s(1)];
        let [k, b, _, bd] = split_decompositions(&m).unwrap();
        assert_eq!(k.part(0), &Subspace::span(2, std::slice::from_ref(&e0)));
        assert_eq!(k.part(1), &Subspace::span(2, std::slice::from_ref(&e1)));
        assert_eq!(b.part(0), &Subspace::span(2, std::slice::from_ref(&e0)));
        assert_eq!(b.part(1), &Subspace::span(2, &[vec![s(4), s(1)]]));
        // reversed star order starts from V*_1
        assert_eq!(bd.part(0), &m.dual_eigenspaces().part(1).clone());
    }

    #[test]
    fn inverted_decomposition_gives_inverse_map() {
        let m = model(2, Scalar::ratio(3, 2), s(3), s(5));
        for dec in split_decompositions(&m).unwrap() {
            let x = map_from_decomposition(&dec, m.q());
            let y = map_from_decomposition(&dec.inverted(), m.q());
            assert!((&x * &y).is_identity());
        }
    }

    #[test]
    fn k_inverse_in_place_of_k_fails() {
        let m = golden();
        let sm = SplitMaps::build(&m).unwrap();
        let bad = SplitMaps::from_maps(
            m.a_scalar(),
            sm.k_inv.clone(),
            sm.b.clone(),
            sm.k_down.clone(),
            sm.b_down.clone(),
        )
        .unwrap();
        let c = check_ka_relations(&m, &bad);
        assert!(!c.get("split.K.with_a").unwrap().passed);
        let lus = build_h(&m).unwrap();
        assert!(!check_h_conjugation_of_splits(&m, &lus, &bad).passed());
        assert!(!check_r_ladder(&m, &bad).passed());
    }

    #[test]
    fn identity_h_fails_split_conjugation() {
        let m = golden();
        let sm = SplitMaps::build(&m).unwrap();
        let lus = crate::lusztig::LusztigData::from_h(&m, Matrix::identity(2)).unwrap();
        let rep = check_h_conjugation_of_splits(&m, &lus, &sm);
        let c = rep.get("conjugation.K").unwrap();
        assert!(!c.passed && c.witness.is_some());
        assert!(!check_mn(&m, &lus, &sm).get("mn.conjugation").unwrap().passed);
    }

    #[test]
    fn a_equal_to_its_inverse_is_rejected() {
        let i = Matrix::identity(2);
        let err = SplitMaps::from_maps(&s(1), i.clone(), i.clone(), i.clone(), i);
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn split_decomposition_dimensions() {
        let m = model(3, Scalar::ratio(3, 2), s(5), s(3));
        for dec in split_decompositions(&m).unwrap() {
            assert!(dec.parts().iter().all(|p| p.dim() == 1));
        }
    }
}
