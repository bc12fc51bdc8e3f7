//! Generalized complete elliptic integrals of signature 1/a.
//!
//! K_a(z) = (π/2) F(a, 1-a; 1; z) and E_a(z) = (π/2) F(a-1, 1-a; 1; z), with
//! the argument `z` used directly (not the squared modulus). Both are
//! analytic on C \ [1, inf); on the cut they are defined by side limits.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::gamma_unchecked;
use crate::hypergeom::{hyp2f1, hyp2f1_one_minus, hyp2f1_series, CutPoint, EvalResult, HypParams, Side};

const MIN_GAP: f64 = 1e-8;

/// The signature parameter `a` in (0, 1) together with the cone angle
/// parameter alpha = |1 - 2a|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignatureParam {
    a: f64,
    alpha: f64,
}

impl SignatureParam {
    pub fn from_a(a: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 || a >= 1.0 {
            return Err(Error::Domain(format!("signature parameter a = {a} is outside (0, 1)")));
        }
        if !(MIN_GAP..=1.0 - MIN_GAP).contains(&a) {
            return Err(Error::Conditioning(format!("a = {a} is within {MIN_GAP:e} of 0 or 1")));
        }
        Ok(Self { a, alpha: (1.0 - 2.0 * a).abs() })
    }

    /// Representative a = (1 - alpha)/2 in (0, 1/2].
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(Error::Domain(format!("cone parameter alpha = {alpha} is outside [0, 1)")));
        }
        Self::from_a((1.0 - alpha) / 2.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The other representative 1 - a of the same alpha.
    pub fn complement(&self) -> Self {
        Self { a: 1.0 - self.a, alpha: self.alpha }
    }

    fn first_kind(&self) -> HypParams {
        HypParams::new(self.a, 1.0 - self.a, 1.0).expect("c = 1 is admissible")
    }

    fn second_kind(&self) -> HypParams {
        HypParams::new(self.a - 1.0, 1.0 - self.a, 1.0).expect("c = 1 is admissible")
    }
}

fn half_pi(r: EvalResult) -> EvalResult {
    r.scaled(Complex64::new(FRAC_PI_2, 0.0))
}

pub fn k_a(s: &SignatureParam, pt: &CutPoint) -> Result<EvalResult> {
    hyp2f1(&s.first_kind(), pt).map(half_pi)
}

pub fn e_a(s: &SignatureParam, pt: &CutPoint) -> Result<EvalResult> {
    hyp2f1(&s.second_kind(), pt).map(half_pi)
}

/// K_a(1 - z). The side tag of `pt` refers to `z`; it is mirrored for 1 - z.
pub fn k_a_star(s: &SignatureParam, pt: &CutPoint) -> Result<EvalResult> {
    hyp2f1_one_minus(&s.first_kind(), pt.z(), pt.side().flipped()).map(half_pi)
}

/// E_a(1 - z), with the same side convention as [`k_a_star`].
pub fn e_a_star(s: &SignatureParam, pt: &CutPoint) -> Result<EvalResult> {
    hyp2f1_one_minus(&s.second_kind(), pt.z(), pt.side().flipped()).map(half_pi)
}

/// K_a'(z) = (1-a) [E_a(z) - (1-z) K_a(z)] / (z (1-z)).
///
/// Inside |z| < 1/2 the equivalent series (π/2) a(1-a) F(a+1, 2-a; 2; z) is
/// summed instead, since the bracket cancels to O(z) there.
pub fn k_a_deriv(s: &SignatureParam, pt: &CutPoint) -> Result<EvalResult> {
    let z = pt.z();
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) || z == one {
        return Err(Error::SingularPoint(z));
    }
    let a = s.a;
    if z.norm() < 0.5 {
        let p = HypParams::new(a + 1.0, 2.0 - a, 2.0)?;
        return hyp2f1_series(&p, z).map(|r| r.scaled(Complex64::new(FRAC_PI_2 * a * (1.0 - a), 0.0)));
    }
    let k = k_a(s, pt)?;
    let e = e_a(s, pt)?;
    let bracket = e.value - (one - z) * k.value;
    let value = bracket * (1.0 - a) / (z * (one - z));
    let cancel = (e.value.norm() + ((one - z) * k.value).norm()) / bracket.norm();
    Ok(EvalResult {
        value,
        terms_used: k.terms_used + e.terms_used,
        est_rel_err: (k.est_rel_err + e.est_rel_err) * cancel + 4.0 * f64::EPSILON,
        method: k.method,
    })
}

/// The three products K*E, E*K and K*K entering Elliott's relation, in that
/// order.
pub fn elliott_terms(s: &SignatureParam, pt: &CutPoint) -> Result<[Complex64; 3]> {
    let z = pt.z();
    if z.im == 0.0 && (z.re <= 0.0 || z.re >= 1.0) {
        return Err(Error::Domain(format!(
            "Elliott relation is checked off (-inf, 0] and [1, inf), got z = {}",
            z.re
        )));
    }
    let k = k_a(s, pt)?.value;
    let e = e_a(s, pt)?.value;
    let ks = k_a_star(s, pt)?.value;
    let es = e_a_star(s, pt)?.value;
    Ok([ks * e, es * k, ks * k])
}

/// Right-hand side π sin(πa) / (4 (1 - a)) of Elliott's relation.
pub fn elliott_constant(s: &SignatureParam) -> f64 {
    PI * (PI * s.a).sin() / (4.0 * (1.0 - s.a))
}

/// |K*E + E*K - K*K - C| / C with C the Elliott constant.
pub fn elliott_residual(s: &SignatureParam, pt: &CutPoint) -> Result<f64> {
    let [t1, t2, t3] = elliott_terms(s, pt)?;
    let rhs = elliott_constant(s);
    Ok((t1 + t2 - t3 - rhs).norm() / rhs)
}

/// Closed form K_a(1/2) = Γ((1-a)/2) Γ(a/2) sin(πa) / (4 √π).
pub fn k_a_half(s: &SignatureParam) -> f64 {
    let a = s.a;
    gamma_unchecked((1.0 - a) / 2.0) * gamma_unchecked(a / 2.0) * (PI * a).sin() / (4.0 * PI.sqrt())
}

/// Evaluate K_a at `z` approached from `side` when `z` is real.
pub(crate) fn k_at(s: &SignatureParam, z: Complex64, side: Side) -> Result<EvalResult> {
    k_a(s, &CutPoint::approaching(z, side)?)
}

/// K_a(1 - z) with `side` the side tag of `z`.
pub(crate) fn k_star_at(s: &SignatureParam, z: Complex64, side: Side) -> Result<EvalResult> {
    k_a_star(s, &CutPoint::approaching(z, side)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use crate::hypergeom::Method;
    use approx::assert_relative_eq;

    fn sig(a: f64) -> SignatureParam {
        SignatureParam::from_a(a).unwrap()
    }

    fn pt(re: f64, im: f64) -> CutPoint {
        CutPoint::interior(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn signature_param_bounds() {
        assert!(matches!(SignatureParam::from_a(0.0), Err(Error::Domain(_))));
        assert!(matches!(SignatureParam::from_a(1e-9), Err(Error::Conditioning(_))));
        assert!(SignatureParam::from_alpha(1.0).is_err());
        let s = SignatureParam::from_alpha(0.5).unwrap();
        assert_eq!(s.a(), 0.25);
        assert_eq!(s.complement().a(), 0.75);
        assert_eq!(s.complement().alpha(), 0.5);
        assert_eq!(sig(0.8).alpha(), (1.0f64 - 1.6).abs());
    }

    #[test]
    fn values_at_origin() {
        for a in [0.1, 0.5, 0.9] {
            assert_relative_eq!(k_a(&sig(a), &pt(0.0, 0.0)).unwrap().value.re, FRAC_PI_2);
            assert_relative_eq!(e_a(&sig(a), &pt(0.0, 0.0)).unwrap().value.re, FRAC_PI_2);
        }
    }

    #[test]
    fn half_point_closed_forms() {
        let classical = gamma(0.25).unwrap().powi(2) / (4.0 * PI.sqrt());
        assert_relative_eq!(classical, 1.854_074_677_301_372, max_relative = 1e-14);
        assert_relative_eq!(k_a(&sig(0.5), &pt(0.5, 0.0)).unwrap().value.re, classical, max_relative = 1e-13);
        assert_relative_eq!(k_a_half(&sig(0.5)), classical, max_relative = 1e-13);
        // Γ(3/8) Γ(1/8) sin(π/4) / (4 √π) from mpmath
        assert_relative_eq!(k_a_half(&sig(0.25)), 1.781_150_396_113_31, max_relative = 1e-13);
        assert_relative_eq!(k_a(&sig(0.25), &pt(0.5, 0.0)).unwrap().value.re, 1.781_150_396_113_31, max_relative = 1e-13);
    }

    #[test]
    fn second_kind_at_one() {
        let e = e_a(&sig(0.5), &pt(1.0, 0.0)).unwrap();
        assert_eq!(e.method, Method::GaussValue);
        assert_relative_eq!(e.value.re, 1.0, max_relative = 1e-14);
        let a = 0.25;
        let expected = FRAC_PI_2 / (gamma(2.0 - a).unwrap() * gamma(a).unwrap());
        assert_relative_eq!(e_a(&sig(a), &pt(1.0, 0.0)).unwrap().value.re, expected, max_relative = 1e-14);
    }

    #[test]
    fn complements() {
        let s = sig(0.3);
        let k = k_a(&s, &pt(0.5, 0.0)).unwrap().value;
        assert_relative_eq!(k_a_star(&s, &pt(0.5, 0.0)).unwrap().value.re, k.re, max_relative = 1e-14);
        assert!(matches!(k_a_star(&s, &pt(0.0, 0.0)), Err(Error::Divergence(_))));
        assert_relative_eq!(e_a_star(&s, &pt(1.0, 0.0)).unwrap().value.re, FRAC_PI_2);
        // K*(z) on the negative axis needs a side, and the sides are conjugate
        assert!(k_a_star(&s, &pt(-2.0, 0.0)).is_err());
        let plus = k_a_star(&s, &CutPoint::on_cut(-2.0, Side::Plus).unwrap()).unwrap().value;
        let minus = k_a_star(&s, &CutPoint::on_cut(-2.0, Side::Minus).unwrap()).unwrap().value;
        assert!((plus - minus.conj()).norm() < 1e-14);
        // z + i0 maps to 1 - z - i0
        let below = k_a(&s, &pt(3.0, -1e-10)).unwrap().value;
        assert!((plus - below).norm() < 1e-8);
    }

    #[test]
    fn second_kind_has_a_jump_on_the_cut() {
        let s = sig(0.25);
        let plus = e_a(&s, &CutPoint::on_cut(3.0, Side::Plus).unwrap()).unwrap().value;
        let minus = e_a(&s, &CutPoint::on_cut(3.0, Side::Minus).unwrap()).unwrap().value;
        assert!((plus - minus.conj()).norm() < 1e-13);
        assert!((plus - minus).norm() > 0.1);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let s = sig(0.5);
        let h = 1e-6;
        let k = |x: f64| k_a(&s, &pt(x, 0.0)).unwrap().value.re;
        let fd = (k(0.5 + h) - k(0.5 - h)) / (2.0 * h);
        let d = k_a_deriv(&s, &pt(0.5, 0.0)).unwrap().value.re;
        assert_relative_eq!(d, fd, max_relative = 1e-8);
    }

    #[test]
    fn derivative_near_origin() {
        let a = 0.25;
        let s = sig(a);
        let d = k_a_deriv(&s, &pt(1e-12, 0.0)).unwrap().value.re;
        assert_relative_eq!(d, FRAC_PI_2 * a * (1.0 - a), max_relative = 1e-10);
        assert!(matches!(k_a_deriv(&s, &pt(0.0, 0.0)), Err(Error::SingularPoint(_))));
        assert!(matches!(k_a_deriv(&s, &pt(1.0, 0.0)), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn derivative_conjugate_symmetry() {
        let s = sig(1.0 / 3.0);
        let d = k_a_deriv(&s, &pt(0.3, 0.4)).unwrap().value;
        let dc = k_a_deriv(&s, &pt(0.3, -0.4)).unwrap().value;
        assert!((d - dc.conj()).norm() < 1e-14 * d.norm());
        // the identity branch agrees with the series branch where both apply
        let far = k_a_deriv(&s, &pt(0.6, 0.4)).unwrap().value;
        let h = 1e-6;
        let k = |z: Complex64| k_a(&s, &CutPoint::interior(z).unwrap()).unwrap().value;
        let z = Complex64::new(0.6, 0.4);
        let fd = (k(z + h) - k(z - h)) / (2.0 * h);
        assert!((far - fd).norm() < 1e-8 * far.norm());
    }

    #[test]
    fn elliott_examples() {
        assert!(elliott_residual(&sig(0.5), &pt(0.5, 0.0)).unwrap() <= 1e-11);
        assert_relative_eq!(elliott_constant(&sig(0.5)), FRAC_PI_2, max_relative = 1e-15);
        assert!(elliott_residual(&sig(0.25), &pt(0.2, 0.5)).unwrap() <= 1e-11);
        assert!(elliott_residual(&sig(0.7), &pt(0.9, 0.0)).unwrap() <= 1e-10);
        assert!(matches!(elliott_residual(&sig(0.3), &pt(-0.5, 0.0)), Err(Error::Domain(_))));
        assert!(elliott_residual(&sig(0.3), &pt(-0.5, 1e-3)).unwrap() <= 1e-10);
    }

    #[test]
    fn representative_symmetry() {
        let z = pt(-2.0, 1.5);
        let k1 = k_a(&sig(0.3), &z).unwrap().value;
        let k2 = k_a(&sig(0.7), &z).unwrap().value;
        assert!((k1 - k2).norm() <= 1e-12 * k1.norm());
    }
}
