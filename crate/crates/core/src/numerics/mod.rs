//! Controlled-precision evaluation of Jacobi theta functions and the
//! transcendental change-of-variable maps t(τ) and s(τ).
//!
//! Everything here is a pure function of its inputs; values are immutable
//! after construction and safe to share across threads.

mod real;
mod theta;

pub use real::{exp_neg, pi, Precision, PrecisionReal};
pub use theta::{
    cmp_inv_sqrt2, h_eval, h_eval_real, h_eval_unchecked, s_of_tau, t_of_tau, theta2, theta3,
    theta3_upper_bound, theta4, within_margin_of_inv_sqrt2, ThetaArgument,
};
