//! Slow reference evaluators.
//!
//! Nothing here touches the hypergeometric machinery: K_a and E_a are
//! integrated from their Euler integrals by tanh-sinh quadrature, and axis
//! lengths are integrated from the density by adaptive Gauss-Kronrod.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::SignatureParam;
use crate::error::{Error, Result};
use crate::metric::rho_at;

const TS_MAX_LEVEL: usize = 12;
const TS_WINDOW: f64 = 6.0;
const TS_TOL: f64 = 1e-11;
const GK_TOL: f64 = 1e-10;
const GK_MAX_INTERVALS: usize = 4_000;

/// A quadrature value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evaluations: usize,
}

/// Tanh-sinh rule on [0, 1]. The integrand receives `t` and `1 - t`
/// separately so that endpoint singularities in `1 - t` keep full precision.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> f64, tol: f64) -> Result<QuadResult> {
    let node = |s: f64| -> f64 {
        let q = PI / 2.0 * s.sinh();
        let e = (-2.0 * q.abs()).exp();
        let (t, u) = if q >= 0.0 { (1.0 / (1.0 + e), e / (1.0 + e)) } else { (e / (1.0 + e), 1.0 / (1.0 + e)) };
        let w = PI * t * u * s.cosh();
        if w == 0.0 || t == 0.0 || u == 0.0 {
            0.0
        } else {
            w * f(t, u)
        }
    };
    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut evaluations = 1;
    let mut k = 1;
    while k as f64 * h <= TS_WINDOW {
        sum += node(k as f64 * h) + node(-(k as f64) * h);
        evaluations += 2;
        k += 1;
    }
    let mut estimate = sum * h;
    let mut err = f64::INFINITY;
    for _ in 1..=TS_MAX_LEVEL {
        h /= 2.0;
        let mut k = 1;
        while k as f64 * h <= TS_WINDOW {
            sum += node(k as f64 * h) + node(-(k as f64) * h);
            evaluations += 2;
            k += 2;
        }
        let next = sum * h;
        err = (next - estimate).abs();
        estimate = next;
        if err <= tol {
            break;
        }
    }
    if !estimate.is_finite() || err > tol {
        return Err(Error::NoConvergence { method: "tanh_sinh", terms: evaluations, est_rel_err: err / estimate.abs() });
    }
    Ok(QuadResult { value: estimate, abs_err: err, evaluations })
}

/// K_a(x) = sin(πa) ∫_0^1 t^(1-2a) (1-t²)^(a-1) (1-xt²)^(-a) dt for real x < 1.
pub fn quad_k(s: &SignatureParam, x: f64) -> Result<QuadResult> {
    if !(x < 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("quadrature of K_a needs real x < 1, got {x}")));
    }
    let a = s.a();
    let r = tanh_sinh(
        |t, u| {
            let one_minus_t2 = u * (1.0 + t);
            let one_minus_xt2 = one_minus_t2 + (1.0 - x) * t * t;
            t.powf(1.0 - 2.0 * a) * one_minus_t2.powf(a - 1.0) * one_minus_xt2.powf(-a)
        },
        TS_TOL,
    )?;
    let scale = (PI * a).sin();
    Ok(QuadResult { value: r.value * scale, abs_err: r.abs_err * scale, evaluations: r.evaluations })
}

/// E_a(x) = sin(πa) ∫_0^1 ((1-xt²)/(1-t²))^(1-a) t^(1-2a) dt for real x <= 1.
pub fn quad_e(s: &SignatureParam, x: f64) -> Result<QuadResult> {
    if !(x <= 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("quadrature of E_a needs real x <= 1, got {x}")));
    }
    let a = s.a();
    let r = tanh_sinh(
        |t, u| {
            let one_minus_t2 = u * (1.0 + t);
            let one_minus_xt2 = one_minus_t2 + (1.0 - x) * t * t;
            (one_minus_xt2 / one_minus_t2).powf(1.0 - a) * t.powf(1.0 - 2.0 * a)
        },
        TS_TOL,
    )?;
    let scale = (PI * a).sin();
    Ok(QuadResult { value: r.value * scale, abs_err: r.abs_err * scale, evaluations: r.evaluations })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15(f: &impl Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let centre = f(mid)?;
    let mut kronrod = WGK[7] * centre;
    let mut gauss = WG[3] * centre;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(mid - dx)? + f(mid + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [lo, hi].
pub fn gauss_kronrod(f: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, tol: f64) -> Result<QuadResult> {
    let mut pieces = vec![(lo, hi, kronrod15(&f, lo, hi)?)];
    let mut evaluations = 15;
    loop {
        let (value, err) = pieces.iter().fold((0.0, 0.0), |(v, e), p| (v + p.2 .0, e + p.2 .1));
        if err <= tol {
            return Ok(QuadResult { value, abs_err: err, evaluations });
        }
        if pieces.len() >= GK_MAX_INTERVALS {
            return Err(Error::NoConvergence { method: "gauss_kronrod", terms: evaluations, est_rel_err: err / value.abs() });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .map(|(i, _)| i)
            .expect("at least one interval");
        let (a, b, _) = pieces.swap_remove(worst);
        let m = 0.5 * (a + b);
        pieces.push((a, m, kronrod15(&f, a, m)?));
        pieces.push((m, b, kronrod15(&f, m, b)?));
        evaluations += 30;
    }
}

/// ∫_x^y ρ_α(-t) dt, integrated in log t.
pub fn quad_axis_distance(s: &SignatureParam, x: f64, y: f64) -> Result<QuadResult> {
    if !(x > 0.0 && x <= y && y.is_finite()) {
        return Err(Error::Domain(format!("need 0 < x <= y < inf, got x = {x}, y = {y}")));
    }
    if x == y {
        return Ok(QuadResult { value: 0.0, abs_err: 0.0, evaluations: 0 });
    }
    gauss_kronrod(
        |v| {
            let t = v.exp();
            Ok(rho_at(s, Complex64::new(-t, 0.0))? * t)
        },
        x.ln(),
        y.ln(),
        GK_TOL,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn sig(a: f64) -> SignatureParam {
        SignatureParam::from_a(a).unwrap()
    }

    #[test]
    fn tanh_sinh_polynomial_and_singular() {
        let r = tanh_sinh(|t, _| t * t, 1e-14).unwrap();
        assert_relative_eq!(r.value, 1.0 / 3.0, max_relative = 1e-14);
        // ∫ (1-t)^(-1/2) = 2
        let r = tanh_sinh(|_, u| u.powf(-0.5), 1e-13).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-13);
    }

    #[test]
    fn quad_k_values() {
        assert_relative_eq!(quad_k(&sig(0.5), 0.0).unwrap().value, FRAC_PI_2, max_relative = 1e-12);
        assert_relative_eq!(quad_k(&sig(0.5), 0.5).unwrap().value, 1.854_074_677_301_372, max_relative = 1e-11);
        // 30-digit reference: (π/2) 2F1(1/4, 3/4; 1; -2)
        assert_relative_eq!(quad_k(&sig(0.25), -2.0).unwrap().value, 1.265_414_252_697_934_2, max_relative = 1e-11);
        assert!(quad_k(&sig(0.5), 1.0).is_err());
    }

    #[test]
    fn quad_e_values() {
        assert_relative_eq!(quad_e(&sig(0.5), 1.0).unwrap().value, 1.0, max_relative = 1e-11);
        assert_relative_eq!(quad_e(&sig(0.3), 0.0).unwrap().value, FRAC_PI_2, max_relative = 1e-11);
        assert!(quad_e(&sig(0.3), 1.5).is_err());
    }

    #[test]
    fn gauss_kronrod_basics() {
        let r = gauss_kronrod(|x| Ok(x.exp()), 0.0, 1.0, 1e-13).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::E - 1.0, max_relative = 1e-14);
        let r = gauss_kronrod(|x| Ok(x.sqrt()), 0.0, 1.0, 1e-12).unwrap();
        assert_relative_eq!(r.value, 2.0 / 3.0, max_relative = 1e-11);
    }

    #[test]
    fn axis_quadrature_additive() {
        let s = sig(0.25);
        assert_eq!(quad_axis_distance(&s, 3.0, 3.0).unwrap().value, 0.0);
        let whole = quad_axis_distance(&s, 0.5, 4.0).unwrap().value;
        let split = quad_axis_distance(&s, 0.5, 1.5).unwrap().value + quad_axis_distance(&s, 1.5, 4.0).unwrap().value;
        assert!((whole - split).abs() < 1e-9);
        assert!(quad_axis_distance(&s, 4.0, 0.5).is_err());
    }
}
