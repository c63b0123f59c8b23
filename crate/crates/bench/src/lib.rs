//! Fixtures shared by the benchmarks in `benches/`.

use onsager_core::model::{build_model, solve_phi};
use onsager_core::{ParamSet, Scalar, TDModel};

/// Parameters used throughout: `q = 2, a = 3, b = 5`.
pub fn params(d: usize) -> ParamSet {
    let (q, a, b) = (Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(5));
    let phi = solve_phi(d, &q, &a, &b)
        .expect("valid parameters")
        .into_iter()
        .next()
        .expect("a rational split sequence exists");
    ParamSet::new(d, q, a, b, phi).expect("valid parameters")
}

pub fn model(d: usize) -> TDModel {
    build_model(&params(d)).expect("fixture builds")
}
