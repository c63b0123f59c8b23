//! Named groups of checks run against one model.

use std::fmt;
use std::str::FromStr;

use crate::equitable::{build_triple_table, check_table_ladders, verify_diagrams, verify_triple_table};
use crate::lusztig::{
    build_h, check_expansions, check_h_structure, check_l_blocks, check_l_conjugation, check_l_eigenstructure,
    LusztigData,
};
use crate::model::{
    check_irreducible, check_model_structure, check_qdg, check_tridiagonal_action, find_invariant_subspace, TDModel,
};
use crate::report::{Report, Witness};
use crate::scalars::{chu_sum, chu_target, p_poly, t_all, ChuIdentity, SpectralParams};
use crate::splitmaps::{
    check_h_conjugation_of_splits, check_ka_relations, check_mn, check_r_ladder, check_split_flags, SplitMaps,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Scalars,
    Model,
    Lusztig,
    SplitMaps,
    Equitable,
    Diagrams,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Scalars,
        Suite::Model,
        Suite::Lusztig,
        Suite::SplitMaps,
        Suite::Equitable,
        Suite::Diagrams,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Scalars => "scalars",
            Suite::Model => "model",
            Suite::Lusztig => "lusztig",
            Suite::SplitMaps => "splitmaps",
            Suite::Equitable => "equitable",
            Suite::Diagrams => "diagrams",
        }
    }

    /// Parses a list of suite names, expanding `all`, removing duplicates and
    /// sorting into the canonical order.
    pub fn parse_list<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>, String> {
        let mut out = Vec::new();
        for n in names {
            match n.as_ref() {
                "all" => out.extend(Suite::ALL),
                other => out.push(other.parse()?),
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Chu/Vandermonde sums for every `r <= s` and the adjacency of consecutive
/// eigenvalues.
pub fn check_scalars(p: &SpectralParams) -> Report {
    let mut rep = Report::new();
    let t = match t_all(p) {
        Ok(t) => t,
        Err(e) => {
            rep.fail(
                "scalars.t",
                "t_i = t_01 ... t_{i-1,i} = a^{2i} q^{2i(d-i)}",
                Witness::Note(e.to_string()),
            );
            return rep;
        }
    };
    for r in 0..=p.d() {
        for s in r..=p.d() {
            for id in ChuIdentity::ALL {
                rep.equal_scalar(
                    format!("scalars.{}.{r}.{s}", id.name()),
                    format!("{} sum for r = {r}, s = {s}", id.name()),
                    &chu_sum(id, r, s, p),
                    &chu_target(id, r, s, &t),
                );
            }
        }
    }
    for (label, seq) in [
        ("theta", crate::scalars::thetas(p)),
        ("theta_star", crate::scalars::theta_stars(p)),
    ] {
        for i in 0..p.d() {
            match p_poly(&seq[i], &seq[i + 1], p.q()) {
                Ok(v) => rep.condition(
                    format!("scalars.adjacent.{label}.{i}"),
                    format!("P({label}_{i}, {label}_{}) = 0", i + 1),
                    v.is_zero(),
                    || Witness::Scalar(v.clone()),
                ),
                Err(e) => rep.fail(
                    format!("scalars.adjacent.{label}.{i}"),
                    "P",
                    Witness::Note(e.to_string()),
                ),
            }
        }
    }
    rep
}

/// Defining relations, projectors and irreducibility.
pub fn check_model(model: &TDModel) -> Report {
    let mut rep = Report::new();
    match check_qdg(model.a(), model.astar(), model.q()) {
        Ok(r) => rep.extend(r),
        Err(e) => rep.fail("qdg", "q-Dolan/Grady relations", Witness::Note(e.to_string())),
    }
    rep.extend(check_tridiagonal_action(model));
    rep.extend(check_model_structure(model));
    let irreducible = check_irreducible(model.a(), model.astar());
    rep.condition(
        "irreducible.algebra",
        "A and A* generate all of End(V)",
        irreducible,
        || Witness::Note("the generated algebra is proper".into()),
    );
    let witness = find_invariant_subspace(model.a(), model.astar(), model.theta());
    rep.condition(
        "irreducible.eigenvector_closure",
        "no A-eigenvector generates a proper invariant subspace",
        witness.is_none(),
        || Witness::Subspace(witness.clone().expect("failed")),
    );
    rep
}

/// Runs the requested suites. Structures needed by later suites are built
/// once; if one cannot be built the dependent suites record a single failure.
pub fn verify_model(model: &TDModel, suites: &[Suite]) -> Report {
    let mut rep = Report::new();
    let needs = |s: &[Suite]| suites.iter().any(|x| s.contains(x));
    let lus: Option<std::result::Result<LusztigData, String>> =
        needs(&[Suite::Lusztig, Suite::SplitMaps, Suite::Equitable, Suite::Diagrams])
            .then(|| build_h(model).map_err(|e| e.to_string()));
    let split: Option<std::result::Result<SplitMaps, String>> =
        needs(&[Suite::SplitMaps, Suite::Equitable, Suite::Diagrams])
            .then(|| SplitMaps::build(model).map_err(|e| e.to_string()));
    for suite in suites {
        match suite {
            Suite::Scalars => rep.extend(check_scalars(model.params())),
            Suite::Model => rep.extend(check_model(model)),
            Suite::Lusztig => match lus.as_ref().expect("built") {
                Ok(l) => {
                    rep.extend(check_l_conjugation(model, l));
                    rep.extend(check_h_structure(model, l));
                    rep.extend(check_l_blocks(model, l));
                    rep.extend(check_l_eigenstructure(model, l));
                    rep.extend(check_expansions(model, l));
                }
                Err(e) => rep.fail("lusztig.build", "H = sum t_i E_i", Witness::Note(e.clone())),
            },
            Suite::SplitMaps | Suite::Equitable | Suite::Diagrams => {
                let (l, s) = match (lus.as_ref().expect("built"), split.as_ref().expect("built")) {
                    (Ok(l), Ok(s)) => (l, s),
                    (Err(e), _) | (_, Err(e)) => {
                        rep.fail(
                            format!("{suite}.build"),
                            "split maps and H exist",
                            Witness::Note(e.clone()),
                        );
                        continue;
                    }
                };
                match suite {
                    Suite::SplitMaps => {
                        rep.extend(check_ka_relations(model, s));
                        rep.extend(check_split_flags(model));
                        rep.extend(check_h_conjugation_of_splits(model, l, s));
                        rep.extend(check_r_ladder(model, s));
                        rep.extend(check_mn(model, l, s));
                    }
                    Suite::Equitable => match build_triple_table(model, s) {
                        Ok(t) => {
                            rep.extend(verify_triple_table(model, l, &t));
                            rep.extend(check_table_ladders(model, &t));
                        }
                        Err(e) => rep.fail(
                            "equitable.build",
                            "M, N, M↓, N↓ are invertible",
                            Witness::Note(e.to_string()),
                        ),
                    },
                    _ => rep.extend(verify_diagrams(model, l, s)),
                }
            }
        }
    }
    rep
}
