//! Exact construction and verification of finite-dimensional modules for the
//! q-Onsager algebra.
//!
//! A module of diameter `d` is realized by two `(d+1) x (d+1)` rational
//! matrices `A`, `A*` forming a Leonard pair of q-Racah type. On top of that
//! pair the crate builds the conjugating operator `H` of the Lusztig
//! automorphism, the split maps `K`, `B`, `K↓`, `B↓`, the derived maps
//! `M`, `N`, `M↓`, `N↓`, and the eight equitable triples, and checks every
//! identity relating them with exact (zero-residual) arithmetic.
//!
//! ```
//! use onsager_core::prelude::*;
//!
//! let params = ParamSet::new(
//!     1,
//!     Scalar::from_int(2),
//!     Scalar::from_int(3),
//!     Scalar::from_int(5),
//!     vec![Scalar::one()],
//! )
//! .unwrap();
//! let model = build_model(&params).unwrap();
//! let lus = build_h(&model).unwrap();
//! assert!(check_l_conjugation(&model, &lus).passed());
//! ```

pub mod equitable;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lusztig;
pub mod model;
pub mod report;
pub mod scalars;
pub mod splitmaps;
pub mod verify;

pub use error::{Error, ParamError, ParseError, Result};
pub use linalg::{Decomposition, FlagDirection, Matrix, Subspace};
pub use model::TDModel;
pub use report::{Check, Report, Witness};
pub use scalars::{ParamSet, Scalar, SpectralParams};

pub mod prelude {
    pub use crate::equitable::{
        build_triple_table, check_equitable_triple, check_qweyl, check_qweyl_ladder, check_table_ladders,
        verify_diagrams, verify_triple_table, TripleTable,
    };
    pub use crate::io::{export_model, import_model, parse_model, ModelSource};
    pub use crate::linalg::{Decomposition, FlagDirection, Matrix, Subspace};
    pub use crate::lusztig::{
        build_h, check_expansions, check_h_structure, check_l_blocks, check_l_conjugation, check_l_eigenstructure,
        expand_h, lusztig_image, Direction, Expansion, LusztigData,
    };
    pub use crate::model::{build_model, check_irreducible, check_qdg, check_tridiagonal_action, solve_phi, TDModel};
    pub use crate::report::Report;
    pub use crate::scalars::{ParamSet, Scalar, SpectralParams};
    pub use crate::splitmaps::{
        check_h_conjugation_of_splits, check_ka_relations, check_mn, check_r_ladder, check_split_flags, SplitKind,
        SplitMaps,
    };
    pub use crate::verify::{verify_model, Suite};
}
