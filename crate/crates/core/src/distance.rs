//! Geodesic distance of the cone metric.
//!
//! Along the negative real axis the distance has the closed antiderivative
//! Φ_a. For general points the triangle map is an isometric embedding of the
//! closed upper half plane into the hyperbolic plane, so the distance is the
//! hyperbolic distance between images.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::elliptic::SignatureParam;
use crate::error::{Error, Result};
use crate::hypergeom::cut_pieces;
use crate::metric::f_a;

const GOLDEN_ITERATIONS: usize = 80;
const ANGLE_TOL: f64 = 1e-12;

/// A point -x of the negative real axis, or its end at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisPoint {
    Finite(f64),
    Infinity,
}

impl AxisPoint {
    pub fn finite(x: f64) -> Result<Self> {
        if x > 0.0 && x.is_finite() {
            Ok(AxisPoint::Finite(x))
        } else {
            Err(Error::Domain(format!("axis coordinate must be positive and finite, got {x}")))
        }
    }
}

/// Φ_a(x) = -½ log(G(a) F(a,a;2a;1/(1+x)) / F(a,a;1;x/(1+x)) - cos πa),
/// G(a) = Γ(a)/(Γ(2a)Γ(1-a)). The limit at infinity is -½ log|cos πa|.
pub fn phi(s: &SignatureParam, p: AxisPoint) -> Result<f64> {
    let a = s.a();
    match p {
        AxisPoint::Infinity => {
            if s.alpha() == 0.0 {
                return Err(Error::Divergence("Φ grows without bound at infinity when a = 1/2".into()));
            }
            Ok(-0.5 * (PI * a).cos().abs().ln())
        }
        AxisPoint::Finite(x) => {
            if !(x > 0.0) || !x.is_finite() {
                return Err(Error::Domain(format!("axis coordinate must be positive, got {x}")));
            }
            let pieces = cut_pieces(a, x)?;
            let u = pieces.p / pieces.q - (PI * a).cos();
            Ok(-0.5 * u.ln())
        }
    }
}

/// Length of the negative axis between -x and -y, 0 < x <= y.
pub fn axis_distance(s: &SignatureParam, x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && x <= y && y.is_finite()) {
        return Err(Error::Domain(format!("need 0 < x <= y < inf, got x = {x}, y = {y}")));
    }
    if x == y {
        return Ok(0.0);
    }
    Ok(phi(s, AxisPoint::Finite(y))? - phi(s, AxisPoint::Finite(x))?)
}

/// Hyperbolic distance in the upper half plane (curvature -4 normalisation):
/// arctanh |(w2 - w1)/(w2 - conj w1)|.
fn half_plane_distance(w1: Complex64, w2: Complex64) -> f64 {
    let n = (w2 - w1).norm();
    let d = (w2 - w1.conj()).norm();
    if n == 0.0 {
        return 0.0;
    }
    let r = n / d;
    // |D|^2 - |N|^2 = 4 Im w1 Im w2
    let one_minus_r = 4.0 * w1.im * w2.im / (d * (d + n));
    0.5 * (r.ln_1p() - one_minus_r.ln())
}

fn check_point(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite point {z}")));
    }
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
        return Err(Error::SingularPoint(z));
    }
    Ok(())
}

fn golden_min(lo: f64, hi: f64, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if hi - lo < ANGLE_TOL {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(f1.min(f2))
}

/// Geodesic distance d_α(z1, z2) between points of C \ {0, 1}.
///
/// Points in opposite open half planes are joined through the real axis; the
/// crossing point t = tan φ is optimised separately on each of the arcs
/// (-inf, 0), (0, 1) and (1, inf).
pub fn geodesic_distance(s: &SignatureParam, z1: Complex64, z2: Complex64) -> Result<f64> {
    check_point(z1)?;
    check_point(z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    if z1.im >= 0.0 && z2.im >= 0.0 {
        return Ok(half_plane_distance(f_a(s, z1)?, f_a(s, z2)?));
    }
    if z1.im <= 0.0 && z2.im <= 0.0 {
        return Ok(half_plane_distance(f_a(s, z1.conj())?, f_a(s, z2.conj())?));
    }
    let (upper, lower) = if z1.im > 0.0 { (z1, z2) } else { (z2, z1) };
    let w1 = f_a(s, upper)?;
    let w2 = f_a(s, lower.conj())?;
    let through = |phi: f64| -> Result<f64> {
        let w = f_a(s, Complex64::new(phi.tan(), 0.0))?;
        Ok(half_plane_distance(w1, w) + half_plane_distance(w, w2))
    };
    let arcs = [(-FRAC_PI_2, 0.0), (0.0, FRAC_PI_4), (FRAC_PI_4, FRAC_PI_2)];
    let mut best = f64::INFINITY;
    for (lo, hi) in arcs {
        // keep clear of the punctures and of the poles of tan
        let pad = 1e-9;
        best = best.min(golden_min(lo + pad, hi - pad, through)?);
    }
    Ok(best)
}

/// Lower bound d_α(z1, z2) >= d_α(-|z1|, -|z2|).
pub fn radial_lower_bound(s: &SignatureParam, z1: Complex64, z2: Complex64) -> Result<f64> {
    check_point(z1)?;
    check_point(z2)?;
    let (r1, r2) = (z1.norm(), z2.norm());
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    axis_distance(s, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sig(a: f64) -> SignatureParam {
        SignatureParam::from_a(a).unwrap()
    }

    fn cz(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phi_at_infinity() {
        let v = phi(&sig(0.25), AxisPoint::Infinity).unwrap();
        assert_relative_eq!(v, -0.5 * (PI / 4.0).cos().ln(), max_relative = 1e-15);
        assert_relative_eq!(v, 0.173_286_795_139_986_3, max_relative = 1e-14);
        assert!(matches!(phi(&sig(0.5), AxisPoint::Infinity), Err(Error::Divergence(_))));
        let far = phi(&sig(0.25), AxisPoint::Finite(1e12)).unwrap();
        assert!((far - v).abs() < 1e-6);
    }

    #[test]
    fn phi_rejects_non_positive() {
        assert!(AxisPoint::finite(0.0).is_err());
        assert!(matches!(phi(&sig(0.3), AxisPoint::Finite(-1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_increases() {
        let s = sig(0.5);
        let mut prev = f64::NEG_INFINITY;
        for x in [0.01, 0.1, 1.0, 10.0, 1e3] {
            let v = phi(&s, AxisPoint::Finite(x)).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn representatives_agree() {
        for x in [0.2, 3.0] {
            assert_relative_eq!(
                phi(&sig(0.3), AxisPoint::Finite(x)).unwrap(),
                phi(&sig(0.7), AxisPoint::Finite(x)).unwrap(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn axis_distance_basics() {
        let s = sig(0.25);
        assert_eq!(axis_distance(&s, 2.0, 2.0).unwrap(), 0.0);
        let (a, b, c) = (
            axis_distance(&s, 1.0, 2.0).unwrap(),
            axis_distance(&s, 2.0, 7.0).unwrap(),
            axis_distance(&s, 1.0, 7.0).unwrap(),
        );
        assert!((a + b - c).abs() < 1e-15);
        assert!(axis_distance(&s, 2.0, 1.0).is_err());
    }

    #[test]
    fn geodesic_on_axis_matches_axis_distance() {
        let s = sig(0.25);
        let d = geodesic_distance(&s, cz(-1.0, 0.0), cz(-2.0, 0.0)).unwrap();
        assert_relative_eq!(d, axis_distance(&s, 1.0, 2.0).unwrap(), max_relative = 1e-10);
        assert_eq!(geodesic_distance(&s, cz(0.3, 0.2), cz(0.3, 0.2)).unwrap(), 0.0);
        let bound = radial_lower_bound(&s, cz(-1.0, 0.0), cz(-3.0, 0.0)).unwrap();
        let d = geodesic_distance(&s, cz(-1.0, 0.0), cz(-3.0, 0.0)).unwrap();
        assert_relative_eq!(d, bound, max_relative = 1e-10);
    }

    #[test]
    fn radial_bound_below_distance() {
        let s = sig(0.25);
        let bound = radial_lower_bound(&s, cz(0.0, 1.0), cz(0.0, 2.0)).unwrap();
        assert_relative_eq!(bound, axis_distance(&s, 1.0, 2.0).unwrap());
        assert!(geodesic_distance(&s, cz(0.0, 1.0), cz(0.0, 2.0)).unwrap() >= bound);
        assert_eq!(radial_lower_bound(&s, cz(0.0, 2.0), cz(2.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn opposite_half_planes() {
        let s = sig(0.3);
        let z1 = cz(0.4, 0.5);
        let z2 = cz(0.6, -0.7);
        let d = geodesic_distance(&s, z1, z2).unwrap();
        assert_relative_eq!(d, geodesic_distance(&s, z2, z1).unwrap(), max_relative = 1e-12);
        // never longer than any particular path through the axis
        let via = geodesic_distance(&s, z1, cz(0.5, 0.0)).unwrap() + geodesic_distance(&s, cz(0.5, 0.0), z2).unwrap();
        assert!(d <= via + 1e-12);
        // mirror pair: crossing at the symmetric point
        let m = geodesic_distance(&s, cz(0.5, 0.3), cz(0.5, -0.3)).unwrap();
        let half = geodesic_distance(&s, cz(0.5, 0.3), cz(0.5, 0.0)).unwrap();
        assert_relative_eq!(m, 2.0 * half, max_relative = 1e-9);
        // conjugation and reflection invariance
        assert_relative_eq!(geodesic_distance(&s, z1.conj(), z2.conj()).unwrap(), d, max_relative = 1e-10);
        let one = cz(1.0, 0.0);
        assert_relative_eq!(geodesic_distance(&s, one - z1, one - z2).unwrap(), d, max_relative = 1e-10);
    }

    #[test]
    fn singular_inputs() {
        let s = sig(0.3);
        assert!(matches!(geodesic_distance(&s, cz(0.0, 0.0), cz(1.0, 1.0)), Err(Error::SingularPoint(_))));
        assert!(matches!(radial_lower_bound(&s, cz(1.0, 0.0), cz(1.0, 1.0)), Err(Error::SingularPoint(_))));
    }
}
