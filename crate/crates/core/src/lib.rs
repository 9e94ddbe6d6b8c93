//! Theta series, theta-series ratios, flatness factors, and smoothing
//! parameters of unimodular and Construction A lattices built from binary
//! self-dual codes, together with exact verification of U-shapedness and the
//! sufficient/necessary conditions on the rational h(t)-basis decomposition
//! of the theta-series ratio.

pub mod codes;
pub mod criteria;
pub mod ensemble;
pub mod error;
pub mod numerics;
pub(crate) mod poly;
pub mod ratio;
pub mod secrecy;
pub mod util;

pub use error::{Error, Result};
