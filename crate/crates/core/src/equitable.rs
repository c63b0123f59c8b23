//! Equitable triples built from the split maps, the q-Weyl relation, and the
//! flag coincidences between the eigenspaces of `M`, `N` and the eigenspaces
//! of `A*`, `L(A*)`, `L^-1(A*)`.

use crate::error::{Error, Result};
use crate::linalg::{eigen_decomposition, Decomposition, FlagDirection, Matrix, Subspace};
use crate::lusztig::LusztigData;
use crate::model::TDModel;
use crate::report::{Report, Witness};
use crate::scalars::Scalar;
use crate::splitmaps::{split_values, SplitMaps};

/// `(q X Y - q^-1 Y X) / (q - q^-1) = I`.
pub fn check_qweyl(x: &Matrix, y: &Matrix, q: &Scalar) -> Result<bool> {
    Ok(qweyl_residual(x, y, q)?.is_zero())
}

fn qweyl_residual(x: &Matrix, y: &Matrix, q: &Scalar) -> Result<Matrix> {
    if !x.is_square() || x.shape() != y.shape() {
        return Err(Error::Shape {
            op: "q-Weyl",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let qi = q.pow(-1);
    let denom = (q - &qi).inv().ok_or_else(|| Error::Unsupported(format!("q = {q}")))?;
    let bracket = (&(x * y).scale(q) - &(y * x).scale(&qi)).scale(&denom);
    bracket.checked_sub(&Matrix::identity(x.rows()))
}

/// The q-Weyl relation for `(X, Y)`, `(Y, Z)` and `(Z, X)`. All three
/// must be invertible.
pub fn check_equitable_triple(x: &Matrix, y: &Matrix, z: &Matrix, q: &Scalar) -> Result<Report> {
    for m in [x, y, z] {
        m.inverse()?;
    }
    let mut rep = Report::new();
    for (name, l, r) in [("xy", x, y), ("yz", y, z), ("zx", z, x)] {
        rep.zero(
            format!("qweyl.{name}"),
            "(q X Y - q^-1 Y X)/(q - q^-1) = I",
            qweyl_residual(l, r, q)?,
        );
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleRow {
    /// 1-based row number.
    pub index: usize,
    pub labels: [&'static str; 3],
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
}

impl TripleRow {
    pub fn members(&self) -> [&Matrix; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// Eight equitable triples: rows 1-4 built from `K`, `B`, `K↓`, `B↓` and
/// `M`, `M↓`; rows 5-8 their conjugates by `H^-1`, built from the inverses and `N`, `N↓`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTable {
    pub rows: Vec<TripleRow>,
}

pub fn build_triple_table(model: &TDModel, s: &SplitMaps) -> Result<TripleTable> {
    let a = model.a_scalar();
    let ai = a.pow(-1);
    let (a2, a2i) = (a.square(), ai.square());
    let big_a = model.a();
    let lin = |c: &Scalar, c2: &Scalar, x: &Matrix| &big_a.scale(c) - &x.scale(c2);
    let m_inv = s.m.inverse()?;
    let md_inv = s.m_down.inverse()?;
    let n_inv = s.n.inverse()?;
    let nd_inv = s.n_down.inverse()?;
    let row = |index, labels, x, y, z| TripleRow { index, labels, x, y, z };
    Ok(TripleTable {
        rows: vec![
            row(
                1,
                ["aA - a^2 K", "M^-1", "K"],
                lin(a, &a2, &s.k),
                m_inv.clone(),
                s.k.clone(),
            ),
            row(
                2,
                ["a^-1 A - a^-2 B", "M^-1", "B"],
                lin(&ai, &a2i, &s.b),
                m_inv,
                s.b.clone(),
            ),
            row(
                3,
                ["aA - a^2 K↓", "M↓^-1", "K↓"],
                lin(a, &a2, &s.k_down),
                md_inv.clone(),
                s.k_down.clone(),
            ),
            row(
                4,
                ["a^-1 A - a^-2 B↓", "M↓^-1", "B↓"],
                lin(&ai, &a2i, &s.b_down),
                md_inv,
                s.b_down.clone(),
            ),
            row(
                5,
                ["K^-1", "N^-1", "a^-1 A - a^-2 K^-1"],
                s.k_inv.clone(),
                n_inv.clone(),
                lin(&ai, &a2i, &s.k_inv),
            ),
            row(
                6,
                ["B^-1", "N^-1", "aA - a^2 B^-1"],
                s.b_inv.clone(),
                n_inv,
                lin(a, &a2, &s.b_inv),
            ),
            row(
                7,
                ["K↓^-1", "N↓^-1", "a^-1 A - a^-2 K↓^-1"],
                s.k_down_inv.clone(),
                nd_inv.clone(),
                lin(&ai, &a2i, &s.k_down_inv),
            ),
            row(
                8,
                ["B↓^-1", "N↓^-1", "aA - a^2 B↓^-1"],
                s.b_down_inv.clone(),
                nd_inv,
                lin(a, &a2, &s.b_down_inv),
            ),
        ],
    })
}

/// Every row is an equitable triple whose members are diagonalizable with
/// eigenvalues `q^{d-2i}`, and rows 5-8 are the `H^-1` conjugates of rows 1-4.
pub fn verify_triple_table(model: &TDModel, lus: &LusztigData, table: &TripleTable) -> Report {
    let mut rep = Report::new();
    let q = model.q();
    let values = split_values(model.d(), q);
    for row in &table.rows {
        let r = row.index;
        match check_equitable_triple(&row.x, &row.y, &row.z, q) {
            Ok(sub) => {
                for c in sub.checks {
                    let [x, y, z] = row.labels;
                    let tag = c.name.strip_prefix("qweyl.").unwrap_or(&c.name).to_string();
                    let pair = match tag.as_str() {
                        "xy" => (x, y),
                        "yz" => (y, z),
                        _ => (z, x),
                    };
                    rep.condition(
                        format!("triple.{r}.{tag}"),
                        format!("(q XY - q^-1 YX)/(q-q^-1) = I for X = {}, Y = {}", pair.0, pair.1),
                        c.passed,
                        || c.witness.unwrap_or(Witness::Note(String::new())),
                    );
                }
            }
            Err(e) => rep.fail(format!("triple.{r}"), "equitable triple", Witness::Note(e.to_string())),
        }
        for (label, m) in row.labels.iter().zip(row.members()) {
            rep.condition(
                format!("triple.{r}.diagonalizable.{label}"),
                format!("{label} is diagonalizable with eigenvalues q^{{d-2i}}"),
                eigen_decomposition(m, &values).is_some(),
                || Witness::Matrix(m.clone()),
            );
        }
    }
    for (lo, hi) in table.rows.iter().take(4).zip(table.rows.iter().skip(4)) {
        for ((l, h), name) in lo.members().iter().zip(hi.members()).zip(["x", "y", "z"]) {
            rep.equal(
                format!("triple.{}.conjugate_of_{}.{name}", hi.index, lo.index),
                format!("row {} is H^-1 (row {}) H", hi.index, lo.index),
                &(&(&lus.h_inv * *l) * &lus.h),
                h,
            );
        }
    }
    rep
}

/// For a q-Weyl pair `(X, Y)` with `X`, `Y` diagonalizable with eigenvalues
/// `q^{d-2i}` (eigenspaces `X_i`, `Y_i`): for `u` in `X_i`,
/// `(Y - q^{2i-d}) u` lies in `X_{i+1}` (zero when `i = d`), and
/// `Y_0 + ... + Y_i = X_{d-i} + ... + X_d`.
pub fn check_qweyl_ladder(x: &Matrix, y: &Matrix, q: &Scalar, d: usize) -> Report {
    let mut rep = Report::new();
    let values = split_values(d, q);
    let (Some(xd), Some(yd)) = (eigen_decomposition(x, &values), eigen_decomposition(y, &values)) else {
        rep.fail(
            "ladder.qweyl.eigenspaces",
            "X and Y are diagonalizable with eigenvalues q^{d-2i}",
            Witness::Note("eigenspace decomposition failed".into()),
        );
        return rep;
    };
    let n = x.rows();
    for (i, v) in values.iter().enumerate().take(d + 1) {
        let shift = y.shift(&-&v.inv().expect("nonzero"));
        let target = if i < d {
            xd.part(i + 1).clone()
        } else {
            Subspace::zero(n)
        };
        let img = xd.part(i).image(&shift).expect("same ambient");
        rep.condition(
            format!("ladder.qweyl.raise.{i}"),
            format!("(Y - q^{{2i-d}}) X_{i} in X_{{{i}+1}}"),
            target.contains(&img).unwrap_or(false),
            || Witness::Subspace(img.clone()),
        );
        let (yf, xf) = (
            yd.flag(i, FlagDirection::Ascending).expect("in range"),
            xd.flag(i, FlagDirection::Descending).expect("in range"),
        );
        rep.equal_subspace(
            format!("ladder.qweyl.flags.{i}"),
            format!("Y_0 + ... + Y_{i} = X_{{d-{i}}} + ... + X_d"),
            &yf,
            &xf,
        );
    }
    rep
}

/// Runs [`check_qweyl_ladder`] on all 24 ordered pairs of the triple table.
pub fn check_table_ladders(model: &TDModel, table: &TripleTable) -> Report {
    let mut rep = Report::new();
    for row in &table.rows {
        let [x, y, z] = row.members();
        for (tag, l, r) in [("xy", x, y), ("yz", y, z), ("zx", z, x)] {
            for mut c in check_qweyl_ladder(l, r, model.q(), model.d()).checks {
                c.name = format!("triple.{}.{tag}.{}", row.index, c.name);
                rep.push(c);
            }
        }
    }
    rep
}

fn flag_sum(parts: &[Subspace], idx: impl Iterator<Item = usize>) -> Subspace {
    idx.fold(Subspace::zero(parts[0].ambient()), |acc, k| {
        acc.sum(&parts[k]).expect("same ambient")
    })
}

/// Flag coincidences for `M`, `N`, `M↓`, `N↓`, and the split maps of the
/// twisted pairs `(A, L(A*))` and `(A, L^-1(A*))`.
pub fn verify_diagrams(model: &TDModel, lus: &LusztigData, s: &SplitMaps) -> Report {
    let mut rep = Report::new();
    let d = model.d();
    let values = split_values(d, model.q());
    let vstar = model.dual_eigenspaces();
    let vs = vstar.parts();
    let vp = &lus.v_plus;
    let vm = &lus.v_minus;
    let asc = |i: usize| 0..=i;
    let desc = move |i: usize| (d - i)..=d;
    // (name, map, ascending-flag partner, descending-flag partner)
    type Flags<'a> = (&'a [Subspace], bool);
    let cases: [(&str, &Matrix, Flags, Flags); 4] = [
        ("N", &s.n, (vp, false), (vs, false)),
        ("N↓", &s.n_down, (vp, true), (vs, true)),
        ("M", &s.m, (vs, false), (vm, false)),
        ("M↓", &s.m_down, (vs, true), (vm, true)),
    ];
    for (name, x, (up, up_rev), (down, down_rev)) in cases {
        let Some(dec) = eigen_decomposition(x, &values) else {
            rep.fail(
                format!("diagram.{name}"),
                format!("{name} is diagonalizable with eigenvalues q^{{d-2i}}"),
                Witness::Matrix(x.clone()),
            );
            continue;
        };
        let pick = |parts: &[Subspace], rev: bool, i: usize| {
            if rev {
                flag_sum(parts, desc(i))
            } else {
                flag_sum(parts, asc(i))
            }
        };
        for i in 0..=d {
            rep.equal_subspace(
                format!("diagram.{name}.ascending.{i}"),
                format!("{name}_0 + ... + {name}_{i} matches the eigenspace flag"),
                &flag_sum(dec.parts(), asc(i)),
                &pick(up, up_rev, i),
            );
            rep.equal_subspace(
                format!("diagram.{name}.descending.{i}"),
                format!("{name}_d + ... + {name}_{{d-{i}}} matches the eigenspace flag"),
                &flag_sum(dec.parts(), desc(i)),
                &pick(down, down_rev, i),
            );
        }
    }
    check_twisted_splits(model, lus, s, &mut rep);
    rep
}

fn check_twisted_splits(model: &TDModel, lus: &LusztigData, s: &SplitMaps, rep: &mut Report) {
    let a = model.a_scalar();
    let ai = a.pow(-1);
    let (a2, a2i) = (a.square(), ai.square());
    let lin = |c: &Scalar, c2: &Scalar, x: &Matrix| &model.a().scale(c) - &x.scale(c2);
    let twisted = |astar: &Matrix| {
        TDModel::from_matrices(model.params().clone(), model.a().clone(), astar.clone(), None)
            .and_then(|m| SplitMaps::build(&m).map(|t| (m, t)))
    };
    match twisted(&lus.l_astar) {
        Ok((m, t)) => {
            let vp = Decomposition::new(lus.v_plus.clone());
            rep.condition(
                "diagram.twisted_plus.eigenspaces",
                "eigenspaces of L(A*) are V+_0, ..., V+_d",
                vp.as_ref().map(|v| v == &m.dual_eigenspaces()).unwrap_or(false),
                || Witness::Note("eigenspaces differ".into()),
            );
            for (name, got, want) in [
                ("K", &t.k, lin(&ai, &a2i, &s.k_inv)),
                ("B", &t.b, lin(a, &a2, &s.b_inv)),
                ("K↓", &t.k_down, lin(&ai, &a2i, &s.k_down_inv)),
                ("B↓", &t.b_down, lin(a, &a2, &s.b_down_inv)),
            ] {
                rep.equal(
                    format!("diagram.twisted_plus.{name}"),
                    format!("{name} for (A, L(A*)) is built from A and {name}^-1"),
                    got,
                    &want,
                );
            }
        }
        Err(e) => rep.fail(
            "diagram.twisted_plus",
            "split maps of (A, L(A*))",
            Witness::Note(e.to_string()),
        ),
    }
    match twisted(&lus.linv_astar) {
        Ok((m, t)) => {
            let vm = Decomposition::new(lus.v_minus.clone());
            rep.condition(
                "diagram.twisted_minus.eigenspaces",
                "eigenspaces of L^-1(A*) are V-_0, ..., V-_d",
                vm.as_ref().map(|v| v == &m.dual_eigenspaces()).unwrap_or(false),
                || Witness::Note("eigenspaces differ".into()),
            );
            for (name, got, want) in [
                ("K", &t.k_inv, lin(a, &a2, &s.k)),
                ("B", &t.b_inv, lin(&ai, &a2i, &s.b)),
                ("K↓", &t.k_down_inv, lin(a, &a2, &s.k_down)),
                ("B↓", &t.b_down_inv, lin(&ai, &a2i, &s.b_down)),
            ] {
                rep.equal(
                    format!("diagram.twisted_minus.{name}"),
                    format!("{name}^-1 for (A, L^-1(A*)) is built from A and {name}"),
                    got,
                    &want,
                );
            }
        }
        Err(e) => rep.fail(
            "diagram.twisted_minus",
            "split maps of (A, L^-1(A*))",
            Witness::Note(e.to_string()),
        ),
    }
}
