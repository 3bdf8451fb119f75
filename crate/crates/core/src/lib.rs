//! A five-parameter family of size distributions that interpolates between
//! power laws (p = 0) and power laws with an exponential cut-off (p = ∞).
//!
//! The density is
//!
//! ```text
//! f(x) = sign(b) q b / c · ((x-x0)/c)^(b-1) · G^(-q-1) · e_p(G^(-q)),
//! G = (p+1)^(-1/q) + ((x-x0)/c)^b,   e_p(x) = (1 - x/(p+1))^p
//! ```
//!
//! on x ≥ x0. Negative b gives the inverse family.
//!
//! ```
//! use interfam::{Distribution, ExtendedP, IFParams};
//!
//! let weibull = IFParams::new(ExtendedP::Infinite, -1.0, 2.0, 1.5, 0.0);
//! let d = Distribution::new(weibull).unwrap();
//! let x = d.quantile(0.9).unwrap();
//! assert!((d.cdf(x).unwrap() - 0.9).abs() < 1e-14);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod dist;
pub mod error;
pub mod modes;
pub mod moments;
pub mod numeric;
pub mod params;
pub mod verify;

pub use catalog::{named, resolve, tabulated_mean, CatalogEntry};
pub use dist::{g_big, p_exponential, Distribution};
pub use error::{Error, Result};
pub use modes::{
    boundary_behavior, mode, mode_general, mode_grid, solve_mode_equation, Axis, BoundaryBehavior, ModeGrid, ModeResult,
};
pub use moments::{mean, moment_exists, raw_moment, variance, Existence, MomentResult, Provenance};
pub use params::{ExtendedP, IFParams, ParamName, Subfamily};
