//! Exact rationals and the closed-form scalar quantities of a q-Racah module.

mod chu;
mod closed_forms;
mod params;
mod rational;

pub use chu::{check_chu_vandermonde, chu_sum, chu_target, ChuIdentity, ChuReport, ChuViolation};
pub use closed_forms::{
    p_poly, q_int, q_poch, t_all, t_closed_form, t_coeff, t_seq, theta, theta_star, theta_stars, thetas,
};
pub use params::{ParamSet, SpectralParams};
pub use rational::Scalar;
