//! Density of the hyperbolic metric on the sphere punctured at 0 and 1 with a
//! cone point of angle 2πα at infinity:
//!
//! ρ_α(z) = π cos(πα/2) / (8 |z(1-z)| Re(K_a(z) K_a(1 - conj z))).
//!
//! On the rays (-inf, 0) and (1, inf) one factor sits on the cut of K_a. The
//! real part of the product is the same for both side limits, so both are
//! evaluated and averaged.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::elliptic::{k_at, k_star_at, SignatureParam};
use crate::error::{Error, Result};
use crate::gamma::{gamma_unchecked, log_gamma_unchecked};
use crate::hypergeom::{Method, Side};

const SIDE_AGREEMENT: f64 = 1e-11;
const SCAN_TOL: f64 = 1e-12;

/// A density query: signature plus a point other than 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeDensityQuery {
    s: SignatureParam,
    z: Complex64,
}

impl ConeDensityQuery {
    pub fn new(s: SignatureParam, z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite point {z}")));
        }
        if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
            return Err(Error::SingularPoint(z));
        }
        Ok(Self { s, z })
    }

    pub fn signature(&self) -> SignatureParam {
        self.s
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }
}

/// Density value with the methods used for K_a(z) and K_a(1 - conj z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityEval {
    pub value: f64,
    pub method: Method,
    pub method_star: Method,
    pub est_rel_err: f64,
}

fn on_ray(z: Complex64) -> bool {
    z.im == 0.0 && (z.re < 0.0 || z.re > 1.0)
}

/// Re(K_a(z) K_a(1 - conj z)) with `side` the side tag of z.
fn product(s: &SignatureParam, z: Complex64, side: Side) -> Result<(f64, Method, Method, f64)> {
    let k = k_at(s, z, side)?;
    // conj z carries the mirrored side tag
    let ks = k_star_at(s, z.conj(), side.flipped())?;
    let re = (k.value * ks.value).re;
    let magnitude = k.value.norm() * ks.value.norm();
    let err = (k.est_rel_err + ks.est_rel_err) * magnitude / re.abs();
    Ok((re, k.method, ks.method, err))
}

pub fn rho_eval(q: &ConeDensityQuery) -> Result<DensityEval> {
    let (s, z) = (q.s, q.z);
    let (denom, method, method_star, err) = if on_ray(z) {
        let plus = product(&s, z, Side::Plus)?;
        let minus = product(&s, z, Side::Minus)?;
        debug_assert!(
            (plus.0 - minus.0).abs() <= SIDE_AGREEMENT * plus.0.abs().max(minus.0.abs()),
            "side limits disagree at {z}: {} vs {}",
            plus.0,
            minus.0
        );
        (0.5 * (plus.0 + minus.0), plus.1, plus.2, plus.3.max(minus.3))
    } else {
        product(&s, z, Side::Interior)?
    };
    if !(denom > 0.0) || !denom.is_finite() {
        return Err(Error::Divergence(format!("density denominator {denom} at z = {z}")));
    }
    let modulus = (z * (Complex64::new(1.0, 0.0) - z)).norm();
    let value = PI * (PI * s.alpha() / 2.0).cos() / (8.0 * modulus * denom);
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::Divergence(format!("density {value} at z = {z}")));
    }
    Ok(DensityEval { value, method, method_star, est_rel_err: err + 4.0 * f64::EPSILON })
}

pub fn rho(q: &ConeDensityQuery) -> Result<f64> {
    rho_eval(q).map(|r| r.value)
}

/// Shorthand for `rho` at a point.
pub fn rho_at(s: &SignatureParam, z: Complex64) -> Result<f64> {
    rho(&ConeDensityQuery::new(*s, z)?)
}

/// Closed form ρ_α(1/2) = 8π² / (Γ((1+α)/4)² Γ((1-α)/4)² cos(πα/2)).
pub fn rho_half(s: &SignatureParam) -> f64 {
    let alpha = s.alpha();
    let g = gamma_unchecked((1.0 + alpha) / 4.0) * gamma_unchecked((1.0 - alpha) / 4.0);
    8.0 * PI * PI / (g * g * (PI * alpha / 2.0).cos())
}

fn upper_point(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.im < 0.0 {
        return Err(Error::Domain(format!("expected a point of the closed upper half plane, got {z}")));
    }
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
        return Err(Error::SingularPoint(z));
    }
    Ok(z)
}

/// Triangle map f_a(z) = i K_a(1-z) / K_a(z) on the closed upper half plane;
/// real points use the limit from above.
pub fn f_a(s: &SignatureParam, z: Complex64) -> Result<Complex64> {
    let z = upper_point(z)?;
    let k = k_at(s, z, Side::Plus)?.value;
    let ks = k_star_at(s, z, Side::Plus)?.value;
    Ok(Complex64::i() * ks / k)
}

/// f_a'(z) = -iπ sin(πa) / (4 z (1-z) K_a(z)²).
pub fn f_a_deriv(s: &SignatureParam, z: Complex64) -> Result<Complex64> {
    let z = upper_point(z)?;
    let k = k_at(s, z, Side::Plus)?.value;
    let num = Complex64::new(0.0, -PI * (PI * s.a()).sin());
    Ok(num / (z * (Complex64::new(1.0, 0.0) - z) * k * k * 4.0))
}

/// Behaviour of the metric at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InfinityBehavior {
    /// log ρ(z) = exponent · log|z| + c_inf + o(1).
    Cone { c_inf: f64, exponent: f64 },
    /// alpha = 0: a puncture, with a log-log correction.
    Cusp,
}

/// Constant terms of the expansions of log ρ_α at 0, 1 and infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub c0: f64,
    pub c1: f64,
    pub at_infinity: InfinityBehavior,
}

pub fn asymptotic_constants(s: &SignatureParam) -> AsymptoticConstants {
    let alpha = s.alpha();
    let at_infinity = if alpha == 0.0 {
        InfinityBehavior::Cusp
    } else {
        let lg = log_gamma_unchecked;
        let c_inf = 2.0 * lg((1.0 + alpha) / 2.0) + lg(1.0 - alpha) - 2.0 * lg((1.0 - alpha) / 2.0) - lg(alpha);
        InfinityBehavior::Cone { c_inf, exponent: -(1.0 + alpha) }
    };
    AsymptoticConstants { c0: -LN_2, c1: -LN_2, at_infinity }
}

/// Density ρ_α(1/z)/|z|² of the metric with the cone point moved to 0.
pub fn pushforward_density(s: &SignatureParam, z: Complex64) -> Result<f64> {
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
        return Err(Error::SingularPoint(z));
    }
    Ok(rho_at(s, z.inv())? / z.norm_sqr())
}

/// Largest of ρ_α((z - w0)/(w1 - w0)) / |w1 - w0| over ordered pairs of
/// distinct boundary samples.
pub fn domain_lower_bound(boundary: &[Complex64], s: &SignatureParam, z: Complex64) -> Result<f64> {
    let mut points: Vec<Complex64> = Vec::with_capacity(boundary.len());
    for &w in boundary {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite boundary point {w}")));
        }
        if !points.contains(&w) {
            points.push(w);
        }
    }
    if points.len() < 2 {
        return Err(Error::DegenerateBoundary(format!(
            "need at least two distinct boundary points, got {}",
            points.len()
        )));
    }
    if points.contains(&z) {
        return Err(Error::Domain(format!("z = {z} lies on the sampled boundary")));
    }
    let mut best = 0.0f64;
    for &w0 in &points {
        for &w1 in &points {
            if w0 == w1 {
                continue;
            }
            let d = w1 - w0;
            let v = rho_at(s, (z - w0) / d)? / d.norm();
            best = best.max(v);
        }
    }
    Ok(best)
}

fn non_increasing(values: &[f64]) -> bool {
    let scale = values.iter().copied().fold(0.0f64, f64::max);
    values.windows(2).all(|w| w[1] <= w[0] + SCAN_TOL * scale)
}

/// Checks that θ -> ρ_α(r e^{iθ}) is non-increasing on θ_k = kπ/(n+1),
/// k = 1..=n.
pub fn scan_theta_monotonicity(s: &SignatureParam, r: f64, n: usize) -> Result<bool> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    if n < 3 {
        return Err(Error::Domain(format!("need at least 3 angles, got {n}")));
    }
    let values = (1..=n)
        .map(|k| {
            let theta = k as f64 * PI / (n + 1) as f64;
            rho_at(s, Complex64::from_polar(r, theta))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(non_increasing(&values))
}

/// Checks that α -> ρ_α(z) is non-increasing along a non-decreasing list of
/// cone parameters.
pub fn scan_alpha_monotonicity(z: Complex64, alphas: &[f64]) -> Result<bool> {
    if alphas.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("alpha list must be ascending".into()));
    }
    let values = alphas
        .iter()
        .map(|&alpha| rho_at(&SignatureParam::from_alpha(alpha)?, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(non_increasing(&values))
}
