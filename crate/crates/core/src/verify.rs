//! Self-checks of the numerical identities the metric rests on.
//!
//! Each check evaluates one identity over a fixed, seeded sample and reports
//! the worst deviation against its tolerance. `Level::Full` uses the grids
//! of the acceptance suite; `Level::Quick` uses thinned versions of them.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distance::{axis_distance, geodesic_distance, phi, radial_lower_bound, AxisPoint};
use crate::elliptic::{e_a, elliott_constant, elliott_terms, k_a, k_a_half, SignatureParam};
use crate::error::Result;
use crate::hypergeom::{new_identity_residual, CutPoint};
use crate::metric::{f_a, rho_at, rho_half, scan_alpha_monotonicity, scan_theta_monotonicity};
use crate::oracle::{quad_axis_distance, quad_e, quad_k};

const SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Deliberate defects used to confirm that the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    None,
    /// Flip the sign of the E*K term in Elliott's relation.
    ElliottSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub samples: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub elapsed: Duration,
    /// Set when an evaluation failed outright.
    pub error: Option<String>,
}

struct Tally {
    samples: usize,
    worst: f64,
    failed: bool,
}

impl Tally {
    fn new() -> Self {
        Self { samples: 0, worst: 0.0, failed: false }
    }

    /// Records a deviation; NaN counts as a failure.
    fn record(&mut self, deviation: f64) {
        self.samples += 1;
        if deviation.is_nan() {
            self.failed = true;
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(deviation);
        }
    }

    fn require(&mut self, ok: bool) {
        self.samples += 1;
        if !ok {
            self.failed = true;
        }
    }
}

fn run_check(name: &'static str, tolerance: f64, body: impl FnOnce(&mut Tally) -> Result<()>) -> CheckOutcome {
    let start = Instant::now();
    let mut tally = Tally::new();
    let error = body(&mut tally).err().map(|e| e.to_string());
    let passed = error.is_none() && !tally.failed && tally.worst <= tolerance;
    CheckOutcome {
        name,
        samples: tally.samples,
        worst: tally.worst,
        tolerance,
        passed,
        elapsed: start.elapsed(),
        error,
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn sig(a: f64) -> Result<SignatureParam> {
    SignatureParam::from_a(a)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

pub fn check_special_values(_level: Level) -> CheckOutcome {
    run_check("special values at z = 1/2", 1e-11, |t| {
        for k in 1..=9 {
            let s = sig(k as f64 / 10.0)?;
            let v = k_a(&s, &CutPoint::real(0.5)?)?.value.re;
            t.record(rel(v, k_a_half(&s)));
        }
        for alpha in [0.0, 0.25, 0.5, 0.75, 0.9] {
            let s = SignatureParam::from_alpha(alpha)?;
            t.record(rel(rho_at(&s, Complex64::new(0.5, 0.0))?, rho_half(&s)));
        }
        Ok(())
    })
}

pub fn check_elliott(level: Level, fault: Fault) -> CheckOutcome {
    let n = if level == Level::Full { 20 } else { 6 };
    run_check("Elliott relation", 1e-10, |t| {
        for a in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let s = sig(a)?;
            let rhs = elliott_constant(&s);
            for x in linspace(-0.8, 0.9, n) {
                for y in linspace(-0.9, 0.9, n) {
                    if y == 0.0 && (x <= 0.0 || x >= 1.0) {
                        continue;
                    }
                    let [ks_e, es_k, ks_k] = elliott_terms(&s, &CutPoint::interior(Complex64::new(x, y))?)?;
                    let lhs = match fault {
                        Fault::None => ks_e + es_k - ks_k,
                        Fault::ElliottSign => ks_e - es_k - ks_k,
                    };
                    t.record((lhs - rhs).norm() / rhs);
                }
            }
        }
        Ok(())
    })
}

pub fn check_new_identity(level: Level) -> CheckOutcome {
    let n = if level == Level::Full { 50 } else { 10 };
    run_check("quadratic hypergeometric identity", 1e-10, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..n {
            let a = rng.gen_range(0.02..0.98);
            let x = rng.gen_range(0.01..0.99);
            t.record(new_identity_residual(a, x)?.abs());
        }
        Ok(())
    })
}

/// Whether `w` lies in the closed triangle 0 <= Re w <= sin πa,
/// |2 w sin πa - 1| >= 1, up to `slack`.
pub fn in_triangle(a: f64, w: Complex64, slack: f64) -> bool {
    let s = (PI * a).sin();
    w.im > 0.0 && w.re >= -slack && w.re <= s + slack && (w * (2.0 * s) - 1.0).norm() >= 1.0 - slack
}

pub fn check_triangle_map(level: Level) -> CheckOutcome {
    let (n, m) = if level == Level::Full { (500, 20) } else { (60, 5) };
    run_check("triangle map geometry", 1e-10, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
        let params = [0.2, 0.35, 0.5];
        for k in 0..n {
            let a = params[k % params.len()];
            let z = Complex64::new(rng.gen_range(-4.0..5.0), 10f64.powf(rng.gen_range(-3.0..0.7)));
            t.require(in_triangle(a, f_a(&sig(a)?, z)?, 1e-12));
        }
        for a in [0.2, 0.25, 0.4] {
            let s = sig(a)?;
            for x in (0..m).map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / (m - 1).max(1) as f64)) {
                t.record((f_a(&s, Complex64::new(-x, 0.0))?.re - (PI * a).sin()).abs());
            }
        }
        Ok(())
    })
}

/// Five-point Laplacian of log ρ, accumulated as logs of density ratios so
/// that the large common part of log ρ cancels exactly.
pub fn log_density_laplacian(s: &SignatureParam, z: Complex64, h: f64) -> Result<f64> {
    let centre = rho_at(s, z)?;
    let mut sum = 0.0;
    for dz in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
        sum += ((rho_at(s, z + dz)? - centre) / centre).ln_1p();
    }
    Ok(sum / (h * h))
}

pub fn check_curvature(level: Level) -> CheckOutcome {
    let n = if level == Level::Full { 100 } else { 20 };
    let h = 1e-3;
    run_check("curvature equation", 1e-4, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
        let mut taken = 0;
        while taken < n {
            let z = Complex64::new(rng.gen_range(-2.5..3.5), rng.gen_range(-2.5..2.5));
            // stencil truncation at h = 1e-3 grows past 1e-4 closer to the
            // punctures and for alpha above about 0.6
            if z.norm() < 0.75 || (z - 1.0).norm() < 0.75 {
                continue;
            }
            let s = SignatureParam::from_alpha(rng.gen_range(0.0..=0.5))?;
            let lap = log_density_laplacian(&s, z, h)?;
            let r = rho_at(&s, z)?;
            t.record(rel(lap, 4.0 * r * r));
            taken += 1;
        }
        Ok(())
    })
}

pub fn check_axis_distance(level: Level) -> CheckOutcome {
    let pairs = if level == Level::Full { 10 } else { 3 };
    run_check("axis distance against quadrature", 1e-9, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
        for a in [0.25, 0.5, 0.75] {
            let s = sig(a)?;
            for _ in 0..pairs {
                let x = 10f64.powf(rng.gen_range(-2.0..1.0));
                let y = x * 10f64.powf(rng.gen_range(0.0..2.0));
                let closed = axis_distance(&s, x, y)?;
                let quad = quad_axis_distance(&s, x, y)?.value;
                t.record((closed - quad).abs());
            }
        }
        for a in [0.1, 0.25, 0.4] {
            let s = sig(a)?;
            let limit = phi(&s, AxisPoint::Infinity)?;
            t.record((limit + 0.5 * (PI * a).cos().ln()).abs());
            t.record((phi(&s, AxisPoint::Finite(1e100))? - limit).abs());
        }
        Ok(())
    })
}

pub fn check_monotonicity(level: Level) -> CheckOutcome {
    let pairs = if level == Level::Full { 200 } else { 30 };
    run_check("monotonicity and radial bound", 1e-10, |t| {
        let radii: &[f64] = if level == Level::Full { &[0.3, 0.7, 1.5, 2.0, 5.0] } else { &[0.7, 2.0] };
        for &alpha in &[0.0, 0.3, 0.6, 0.9] {
            let s = SignatureParam::from_alpha(alpha)?;
            for &r in radii {
                t.require(scan_theta_monotonicity(&s, r, 50)?);
            }
        }
        let alphas: Vec<f64> = (0..10).map(|k| k as f64 * 0.099).collect();
        for z in [Complex64::new(0.5, 0.0), Complex64::new(-3.0, 0.0), Complex64::new(0.3, 1.2), Complex64::new(4.0, -0.5)] {
            t.require(scan_alpha_monotonicity(z, &alphas)?);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
        let point = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-3.0..4.0), rng.gen_range(-3.0..3.0));
        for _ in 0..pairs {
            let s = SignatureParam::from_alpha(rng.gen_range(0.0..0.9))?;
            let (z1, z2) = (point(&mut rng), point(&mut rng));
            let excess = radial_lower_bound(&s, z1, z2)? - geodesic_distance(&s, z1, z2)?;
            t.record(excess.max(0.0));
        }
        Ok(())
    })
}

pub fn check_oracles(level: Level) -> CheckOutcome {
    let n = if level == Level::Full { 100 } else { 15 };
    run_check("fast paths against quadrature", 1e-9, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
        let params = [0.2, 0.5, 0.8];
        for k in 0..n {
            let s = sig(params[k % params.len()])?;
            let x = rng.gen_range(-5.0..0.95);
            let pt = CutPoint::real(x)?;
            t.record(rel(k_a(&s, &pt)?.value.re, quad_k(&s, x)?.value));
            t.record(rel(e_a(&s, &pt)?.value.re, quad_e(&s, x)?.value));
        }
        Ok(())
    })
}

/// Runs every check in a fixed order.
pub fn run_all(level: Level, fault: Fault) -> Vec<CheckOutcome> {
    vec![
        check_special_values(level),
        check_elliott(level, fault),
        check_new_identity(level),
        check_triangle_map(level),
        check_curvature(level),
        check_axis_distance(level),
        check_monotonicity(level),
        check_oracles(level),
    ]
}
