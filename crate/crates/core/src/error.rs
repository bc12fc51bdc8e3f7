use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    /// Parameters so close to a degenerate configuration that the
    /// connection coefficients are not trustworthy.
    #[error("ill-conditioned parameters: {0}")]
    Conditioning(String),

    #[error("{method} did not converge after {terms} terms (estimated relative error {est_rel_err:e})")]
    NoConvergence {
        method: &'static str,
        terms: usize,
        est_rel_err: f64,
    },

    #[error("z = {re} lies on the branch cut (1, inf); a side (plus or minus) is required")]
    CutSideMissing { re: f64 },

    #[error("divergence: {0}")]
    Divergence(String),

    #[error("singular point z={}", fmt_point(.0))]
    SingularPoint(Complex64),

    #[error("degenerate boundary: {0}")]
    DegenerateBoundary(String),
}

fn fmt_point(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
