//! The triangle map pulls the hyperbolic plane back to the cone metric: the
//! closed-form distance must equal the ρ-length of the preimage of the
//! hyperbolic geodesic.

use conemetric::{f_a, f_a_deriv, geodesic_distance, rho_at, Complex64, SignatureParam};

fn invert(s: &SignatureParam, w: Complex64, guess: Complex64) -> Complex64 {
    let mut z = guess;
    for _ in 0..50 {
        let step = (f_a(s, z).unwrap() - w) / f_a_deriv(s, z).unwrap();
        z -= step;
        if step.norm() < 1e-15 * z.norm() {
            break;
        }
    }
    z
}

/// Points along the hyperbolic geodesic from w1 to w2 in the upper half plane.
fn geodesic(w1: Complex64, w2: Complex64, n: usize) -> Vec<Complex64> {
    if (w1.re - w2.re).abs() < 1e-14 {
        let (l1, l2) = (w1.im.ln(), w2.im.ln());
        return (0..=n).map(|k| Complex64::new(w1.re, (l1 + (l2 - l1) * k as f64 / n as f64).exp())).collect();
    }
    let centre = (w2.norm_sqr() - w1.norm_sqr()) / (2.0 * (w2.re - w1.re));
    let radius = (w1 - centre).norm();
    let (t1, t2) = ((w1 - centre).arg(), (w2 - centre).arg());
    (0..=n)
        .map(|k| centre + Complex64::from_polar(radius, t1 + (t2 - t1) * k as f64 / n as f64))
        .collect()
}

fn pulled_back_length(s: &SignatureParam, z1: Complex64, z2: Complex64, n: usize) -> f64 {
    let ws = geodesic(f_a(s, z1).unwrap(), f_a(s, z2).unwrap(), n);
    let mut zs = Vec::with_capacity(ws.len());
    let mut guess = z1;
    for &w in &ws {
        guess = invert(s, w, guess);
        zs.push(guess);
    }
    zs.windows(2)
        .map(|p| rho_at(s, (p[0] + p[1]) * 0.5).unwrap() * (p[1] - p[0]).norm())
        .sum()
}

#[test]
fn closed_form_matches_line_integral() {
    let cases = [
        (0.3, Complex64::new(0.3, 0.5), Complex64::new(0.6, 0.8)),
        (0.0, Complex64::new(-0.5, 0.4), Complex64::new(0.2, 1.1)),
        (0.7, Complex64::new(1.5, 0.3), Complex64::new(2.0, 1.0)),
        (0.5, Complex64::new(0.5, 0.2), Complex64::new(0.5, 1.5)),
    ];
    for (alpha, z1, z2) in cases {
        let s = SignatureParam::from_alpha(alpha).unwrap();
        let closed = geodesic_distance(&s, z1, z2).unwrap();
        let integral = pulled_back_length(&s, z1, z2, 4000);
        assert!((closed - integral).abs() < 1e-6, "alpha={alpha}: {closed} vs {integral}");
    }
}

#[test]
fn map_inverse_round_trips() {
    let s = SignatureParam::from_alpha(0.4).unwrap();
    let z = Complex64::new(0.8, 0.6);
    let w = f_a(&s, z).unwrap();
    let back = invert(&s, w, z + Complex64::new(0.05, -0.05));
    assert!((back - z).norm() < 1e-12);
}
