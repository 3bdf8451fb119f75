//! Numeric substrate: special functions, quadrature, root finding, scalar
//! maximization and a seedable uniform stream.
//!
//! Everything here is generic over closures and knows nothing about the
//! distribution family, so the same routines double as independent oracles
//! in tests.

mod optimize;
mod quad;
mod rng;
mod root;
mod special;

pub use optimize::maximize_scalar;
pub use quad::{integrate, Quadrature, QuadratureResult};
pub use rng::{chunk_seed, splitmix64, UniformStream};
pub use root::{find_root, Bracket};
pub use special::{beta, gamma, ln_beta, ln_gamma, log1mexp, softplus};

/// Default bracket width for root refinement.
pub const ROOT_TOL: f64 = 1e-10;
/// Default absolute tolerance for integrals.
pub const QUAD_TOL: f64 = 1e-8;
