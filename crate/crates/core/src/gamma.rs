//! Gamma-family functions of a real positive argument.
//!
//! Every gamma argument appearing in the connection formulas of this crate
//! is a real number in a small positive range, so a fixed-coefficient Lanczos
//! scheme is sufficient. The coefficients (g = 7, nine terms) are regenerated
//! by `scripts/lanczos_coefficients.py`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A finite, strictly positive real number.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::Domain(format!(
                "expected a finite positive argument, got {value}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Lanczos sum A(z) for Gamma(z + 1) = sqrt(2 pi) t^(z + 1/2) e^(-t) A(z).
fn lanczos_sum(z: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (k, &c)| acc + c / (z + (k + 1) as f64))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma_unchecked(1.0 - x))
    } else {
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
    }
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI.ln() - (PI * x).sin().ln() - log_gamma_unchecked(1.0 - x)
    } else {
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
    }
}

pub(crate) fn digamma_unchecked(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 6.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli tail: sum B_2k / (2k x^2k), k = 1..8.
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2
                                                * (691.0 / 32_760.0
                                                    - inv2 * (1.0 / 12.0 - inv2 * 3_617.0 / 8_160.0)))))));
    shift + x.ln() - 0.5 / x - tail
}

/// Gamma function on the positive reals.
pub fn gamma(x: f64) -> Result<f64> {
    let x = PositiveReal::new(x)?;
    Ok(gamma_unchecked(x.get()))
}

/// Natural logarithm of the gamma function on the positive reals.
pub fn log_gamma(x: f64) -> Result<f64> {
    let x = PositiveReal::new(x)?;
    Ok(log_gamma_unchecked(x.get()))
}

/// Digamma function psi = Gamma'/Gamma on the positive reals.
pub fn digamma(x: f64) -> Result<f64> {
    let x = PositiveReal::new(x)?;
    Ok(digamma_unchecked(x.get()))
}

/// Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), evaluated in
/// log space.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    let a = PositiveReal::new(a)?.get();
    let b = PositiveReal::new(b)?.get();
    Ok((log_gamma_unchecked(a) + log_gamma_unchecked(b) - log_gamma_unchecked(a + b)).exp())
}

/// 1/Gamma(x) for real x that is not a non-positive integer.
///
/// Arguments below 1/2 are lifted by the recurrence so that the parameter
/// `a - 1` of the second-kind integral can be handled.
pub(crate) fn recip_gamma(x: f64) -> f64 {
    if x >= 0.5 {
        1.0 / gamma_unchecked(x)
    } else if x > 0.0 {
        (PI * x).sin() * gamma_unchecked(1.0 - x) / PI
    } else {
        x * recip_gamma(x + 1.0)
    }
}
