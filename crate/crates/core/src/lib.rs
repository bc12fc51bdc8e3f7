//! Hyperbolic metric of the sphere punctured at 0 and 1 with a cone point of
//! angle 2πα at infinity, built from generalized elliptic integrals.
//!
//! The user-facing parameter is α in [0, 1); internally the signature
//! parameter a = (1 - α)/2 is used, and every quantity is invariant under
//! a -> 1 - a.

// NaN must fail these range checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distance;
pub mod elliptic;
pub mod error;
pub mod gamma;
pub mod hypergeom;
pub mod metric;
pub mod oracle;
pub mod verify;

pub use distance::{axis_distance, geodesic_distance, phi, radial_lower_bound, AxisPoint};
pub use elliptic::{e_a, e_a_star, elliott_residual, k_a, k_a_deriv, k_a_half, k_a_star, SignatureParam};
pub use error::{Error, Result};
pub use hypergeom::{hyp2f1, hyp2f1_cut, hyp2f1_series, CutPoint, EvalResult, HypParams, Method, Side};
pub use metric::{
    asymptotic_constants, domain_lower_bound, f_a, f_a_deriv, pushforward_density, rho, rho_at, rho_eval,
    rho_half, AsymptoticConstants, ConeDensityQuery, DensityEval, InfinityBehavior,
};
pub use num_complex::Complex64;
