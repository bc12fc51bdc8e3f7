//! Gauss hypergeometric function F(a, b; c; z) on the cut plane C \ [1, inf).
//!
//! Evaluation picks one of five routes depending on where `z` sits:
//!
//! | region                                   | method            |
//! |------------------------------------------|-------------------|
//! | Re z <= 1/2, \|z\| <= 0.75               | direct series     |
//! | Re z <= 1/2, \|z/(z-1)\| <= 0.75         | Pfaff + series    |
//! | Re z > 1/2, \|1-z\| <= 0.75, c-a-b in Z  | log connection    |
//! | z = 1 + x on the cut, (a, 1-a; 1)        | cut formula       |
//! | anything else                            | ODE continuation  |
//!
//! The continuation route integrates the hypergeometric equation by Taylor
//! re-expansion along a straight path, stepping half the distance to the
//! nearest singular point each time. Side limits on the cut are obtained by
//! approaching from the corresponding half plane.
//!
//! Non-integer powers and `log(1 - z)` use the principal branch.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{digamma_unchecked, gamma_unchecked, recip_gamma};

pub type ComplexValue = Complex64;

const SERIES_RADIUS: f64 = 0.75;
const TERM_TOL: f64 = 1e-17;
const SMALL_RUN: usize = 3;
const MAX_TERMS: usize = 10_000;
const MAX_TAYLOR_TERMS: usize = 1_000;
const MAX_STEPS: usize = 4_000;
const STEP_FRACTION: f64 = 0.5;
const ACCEPT_ERR: f64 = 1e-12;
const INTEGER_TOL: f64 = 1e-12;
const CONDITIONING_TOL: f64 = 1e-8;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Parameters (a, b, c) of F(a, b; c; z); `c` is never zero or a negative
/// integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    a: f64,
    b: f64,
    c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Parameter(format!("non-finite parameters ({a}, {b}; {c})")));
        }
        if c <= 0.0 {
            let nearest = c.round();
            if c == nearest {
                return Err(Error::Parameter(format!("c = {c} is a non-positive integer")));
            }
            if (c - nearest).abs() < CONDITIONING_TOL {
                return Err(Error::Conditioning(format!(
                    "c = {c} is within {CONDITIONING_TOL:e} of a non-positive integer"
                )));
            }
        } else if c < CONDITIONING_TOL {
            return Err(Error::Conditioning(format!("c = {c} is too close to 0")));
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Parameters with `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, c: self.c }
    }

    /// `c - a - b` when it is an integer.
    fn integer_excess(&self) -> Option<i64> {
        let s = self.c - self.a - self.b;
        let k = s.round();
        ((s - k).abs() < INTEGER_TOL).then_some(k as i64)
    }

    /// True for (a, 1 - a; 1), the first-kind family with a closed cut formula.
    fn is_first_kind(&self) -> bool {
        (self.c - 1.0).abs() < INTEGER_TOL && (self.a + self.b - 1.0).abs() < INTEGER_TOL
    }
}

/// Which one-sided limit is taken at a point of the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Interior,
    /// Limit from the upper half plane, f(x + i0).
    Plus,
    /// Limit from the lower half plane, f(x - i0).
    Minus,
}

impl Side {
    /// Side seen after the map z -> 1 - z (or any map reversing the real axis).
    pub fn flipped(self) -> Self {
        match self {
            Side::Interior => Side::Interior,
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// A point of the cut plane, or a point of the cut (1, inf) together with the
/// side from which it is approached.
///
/// Side tags are also accepted at other real points, where they are
/// irrelevant to analytic functions of the cut plane; this lets callers carry
/// a one-sided limit through maps like z -> 1 - z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPoint {
    z: Complex64,
    side: Side,
}

impl CutPoint {
    pub fn new(z: Complex64, side: Side) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite argument {z}")));
        }
        let on_cut = z.im == 0.0 && z.re > 1.0;
        match side {
            Side::Interior if on_cut => Err(Error::CutSideMissing { re: z.re }),
            Side::Plus | Side::Minus if z.im != 0.0 => Err(Error::Domain(format!(
                "side tags only apply to real points, got {z}"
            ))),
            _ => Ok(Self { z, side }),
        }
    }

    pub fn interior(z: Complex64) -> Result<Self> {
        Self::new(z, Side::Interior)
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(c(x, 0.0), Side::Interior)
    }

    pub fn on_cut(x: f64, side: Side) -> Result<Self> {
        Self::new(c(x, 0.0), side)
    }

    /// `z` itself off the real axis; the `side` limit on the real axis.
    pub fn approaching(z: Complex64, side: Side) -> Result<Self> {
        if z.im == 0.0 {
            Self::new(z, side)
        } else {
            Self::new(z, Side::Interior)
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_on_cut(&self) -> bool {
        self.z.im == 0.0 && self.z.re > 1.0
    }

    /// The point 1 - z with the side tag mirrored.
    pub fn reflected(&self) -> Result<Self> {
        Self::new(c(1.0, 0.0) - self.z, self.side.flipped())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DirectSeries,
    Pfaff,
    LogConnection,
    CutFormula,
    Continuation,
    GaussValue,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::DirectSeries => "direct_series",
            Method::Pfaff => "pfaff",
            Method::LogConnection => "log_connection",
            Method::CutFormula => "cut_formula",
            Method::Continuation => "continuation",
            Method::GaussValue => "gauss_value",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A function value with its convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub terms_used: usize,
    pub est_rel_err: f64,
    pub method: Method,
}

impl EvalResult {
    fn checked(self) -> Result<Self> {
        if !(self.value.re.is_finite() && self.value.im.is_finite()) {
            return Err(Error::Divergence(format!(
                "{} produced a non-finite value",
                self.method
            )));
        }
        if !(self.est_rel_err < 1.0) {
            return Err(Error::NoConvergence {
                method: self.method.as_str(),
                terms: self.terms_used,
                est_rel_err: self.est_rel_err,
            });
        }
        Ok(self)
    }

    /// Multiply the value by a constant, keeping the diagnostics.
    pub fn scaled(mut self, factor: Complex64) -> Self {
        self.value *= factor;
        self
    }
}

struct Partial {
    value: Complex64,
    deriv: Complex64,
    terms: usize,
    est_rel_err: f64,
}

/// Power series about 0, optionally with the derivative.
fn power_series(p: &HypParams, z: Complex64, with_deriv: bool) -> Result<Partial> {
    let (a, b, cc) = (p.a, p.b, p.c);
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut dsum = c(0.0, 0.0);
    let mut abs_sum = 1.0;
    let mut run = 0;
    let mut n = 0usize;
    while n < MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((cc + nf) * (nf + 1.0));
        let dterm = term * (ratio * (nf + 1.0));
        if with_deriv {
            dsum += dterm;
        }
        term = term * ratio * z;
        n += 1;
        sum += term;
        abs_sum += term.norm();
        if term == c(0.0, 0.0) {
            break;
        }
        if !(term.norm().is_finite()) {
            return Err(Error::NoConvergence {
                method: Method::DirectSeries.as_str(),
                terms: n,
                est_rel_err: f64::INFINITY,
            });
        }
        let small = term.norm() <= TERM_TOL * sum.norm()
            && (!with_deriv || dterm.norm() <= TERM_TOL * dsum.norm());
        run = if small { run + 1 } else { 0 };
        if run >= SMALL_RUN {
            break;
        }
    }
    let scale = sum.norm();
    let est = f64::EPSILON * abs_sum / scale + term.norm() / scale;
    if n >= MAX_TERMS && !(est <= ACCEPT_ERR) {
        return Err(Error::NoConvergence {
            method: Method::DirectSeries.as_str(),
            terms: n,
            est_rel_err: est,
        });
    }
    Ok(Partial { value: sum, deriv: dsum, terms: n + 1, est_rel_err: est })
}

/// Direct power series of F(a, b; c; z).
///
/// Intended for |z| <= 0.75; terms are summed until three consecutive terms
/// fall below 1e-17 of the partial sum, with a cap of 10000 terms.
pub fn hyp2f1_series(p: &HypParams, z: ComplexValue) -> Result<EvalResult> {
    let s = power_series(p, z, false)?;
    EvalResult {
        value: s.value,
        terms_used: s.terms,
        est_rel_err: s.est_rel_err,
        method: Method::DirectSeries,
    }
    .checked()
}

/// Logarithmic connection formula for F(a, b; a + b + m; z), m >= 0, written
/// in powers of `w = 1 - z`. `ln_w` fixes the branch of log(1 - z).
fn log_connection_core(a: f64, b: f64, m: usize, w: Complex64, ln_w: Complex64) -> Result<Partial> {
    let mf = m as f64;
    let cc = a + b + mf;
    if a + mf <= 0.0 || b + mf <= 0.0 || cc <= 0.0 {
        return Err(Error::Parameter(format!(
            "log connection needs a+m, b+m, c > 0, got a={a}, b={b}, m={m}"
        )));
    }
    let gamma_c = gamma_unchecked(cc);

    let mut finite = c(0.0, 0.0);
    if m > 0 {
        let pref = gamma_unchecked(mf) * gamma_c / (gamma_unchecked(a + mf) * gamma_unchecked(b + mf));
        let mut t = c(1.0, 0.0);
        let mut s = t;
        for n in 0..m - 1 {
            let nf = n as f64;
            t = t * ((a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf))) * w;
            s += t;
        }
        finite = s * pref;
    }

    let pref = gamma_c * recip_gamma(a) * recip_gamma(b);
    let harmonic_m: f64 = (1..=m).map(|k| 1.0 / k as f64).sum();
    let factorial_m: f64 = (1..=m).map(|k| k as f64).product();
    let mut psi_n1 = -EULER_GAMMA;
    let mut psi_nm1 = -EULER_GAMMA + harmonic_m;
    let mut psi_a = digamma_unchecked(a + mf);
    let mut psi_b = digamma_unchecked(b + mf);
    let mut cw = c(1.0 / factorial_m, 0.0);
    let mut sum = c(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut last = c(0.0, 0.0);
    let mut run = 0;
    let mut n = 0usize;
    while n < MAX_TERMS {
        let nf = n as f64;
        last = cw * (ln_w - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += last;
        abs_sum += last.norm();
        let small = last.norm() <= TERM_TOL * sum.norm();
        run = if small { run + 1 } else { 0 };
        if run >= SMALL_RUN || cw == c(0.0, 0.0) {
            n += 1;
            break;
        }
        cw = cw * ((a + mf + nf) * (b + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0))) * w;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_a += 1.0 / (a + mf + nf);
        psi_b += 1.0 / (b + mf + nf);
        n += 1;
    }
    let sign_w = if m.is_multiple_of(2) { w.powi(m as i32) } else { -w.powi(m as i32) };
    let log_part = sign_w * pref * sum;
    let value = finite - log_part;
    let scale = value.norm();
    let est = f64::EPSILON * (finite.norm() + (sign_w * pref).norm() * abs_sum) / scale
        + (sign_w * pref * last).norm() / scale;
    if n >= MAX_TERMS && !(est <= ACCEPT_ERR) {
        return Err(Error::NoConvergence {
            method: Method::LogConnection.as_str(),
            terms: n,
            est_rel_err: est,
        });
    }
    Ok(Partial { value, deriv: c(0.0, 0.0), terms: n + m, est_rel_err: est })
}

/// F(a, b; c; 1 - w) for integer c - a - b, via the logarithmic connection
/// (Euler's transformation first when c - a - b is negative).
fn log_branch(p: &HypParams, m: i64, w: Complex64, ln_w: Complex64) -> Result<EvalResult> {
    let s = if m >= 0 {
        log_connection_core(p.a, p.b, m as usize, w, ln_w)?
    } else {
        let mut s = log_connection_core(p.c - p.a, p.c - p.b, (-m) as usize, w, ln_w)?;
        s.value *= w.powi(m as i32);
        s
    };
    EvalResult {
        value: s.value,
        terms_used: s.terms,
        est_rel_err: s.est_rel_err,
        method: Method::LogConnection,
    }
    .checked()
}

/// F(a, b; a + b; z) by the logarithmic connection expansion in powers of
/// 1 - z, principal branch of log(1 - z).
///
/// Requires |1 - z| <= 0.75 and z off [1, inf).
pub fn hyp2f1_log_connection(a: f64, b: f64, z: ComplexValue) -> Result<EvalResult> {
    let w = c(1.0, 0.0) - z;
    if w.norm() > SERIES_RADIUS {
        return Err(Error::Domain(format!("log connection needs |1 - z| <= 0.75, got z = {z}")));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("z = {z} lies on [1, inf)")));
    }
    let p = HypParams::new(a, b, a + b)?;
    log_branch(&p, 0, w, w.ln())
}

/// Pfaff transformation F(a, b; c; z) = (1 - z)^(-a) F(a, c - b; c; z / (z - 1)).
fn pfaff(p: &HypParams, z: Complex64) -> Result<EvalResult> {
    let w = z / (z - 1.0);
    let q = HypParams { a: p.a, b: p.c - p.b, c: p.c };
    let s = power_series(&q, w, false)?;
    let factor = ((c(1.0, 0.0) - z).ln() * (-p.a)).exp();
    EvalResult {
        value: s.value * factor,
        terms_used: s.terms,
        est_rel_err: s.est_rel_err + 2.0 * f64::EPSILON,
        method: Method::Pfaff,
    }
    .checked()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PathStart {
    Upper,
    Lower,
    RealAxis,
}

/// 1/z without forming |z|^2, which overflows for |z| above 1e154.
fn recip(z: Complex64) -> Complex64 {
    let m = z.norm();
    z.conj() / m / m
}

/// One Taylor step of the hypergeometric ODE from `center` to `center + h`.
fn taylor_step(
    p: &HypParams,
    center: Complex64,
    f0: Complex64,
    df0: Complex64,
    h: Complex64,
) -> Result<Partial> {
    let (a, b, cc) = (p.a, p.b, p.c);
    let inv_q = recip(center * (c(1.0, 0.0) - center));
    let inv_h = recip(h);
    let lin = c(1.0, 0.0) - center * 2.0;
    let shift = c(cc, 0.0) - center * (a + b + 1.0);

    // d_n = c_n h^n keeps the terms representable when |center| is large.
    let h2 = h * h;
    let mut dn = f0;
    let mut dn1 = df0 * h;
    let mut value = dn + dn1;
    let mut deriv = df0;
    let mut abs_sum = dn.norm() + dn1.norm();
    let mut last = c(0.0, 0.0);
    let mut run = 0;
    let mut n = 0usize;
    while n < MAX_TAYLOR_TERMS {
        let nf = n as f64;
        let dn2 = (dn * h2 * ((nf + a) * (nf + b)) - dn1 * h * (nf + 1.0) * (lin * nf + shift))
            * inv_q
            / ((nf + 1.0) * (nf + 2.0));
        let dterm = dn2 * inv_h * (nf + 2.0);
        last = dn2;
        value += last;
        deriv += dterm;
        abs_sum += last.norm();
        let small = last.norm() <= TERM_TOL * value.norm() && dterm.norm() <= TERM_TOL * deriv.norm();
        run = if small { run + 1 } else { 0 };
        dn = dn1;
        dn1 = dn2;
        n += 1;
        if run >= SMALL_RUN {
            break;
        }
    }
    let est = f64::EPSILON * abs_sum / value.norm() + last.norm() / value.norm();
    if n >= MAX_TAYLOR_TERMS && !(est <= ACCEPT_ERR) {
        return Err(Error::NoConvergence {
            method: Method::Continuation.as_str(),
            terms: n,
            est_rel_err: est,
        });
    }
    Ok(Partial { value, deriv, terms: n + 2, est_rel_err: est })
}

/// Continue (F, F') from a start point in the series disk to `target` along a
/// straight path.
fn continuation(p: &HypParams, target: Complex64, start: PathStart) -> Result<EvalResult> {
    let origin = match start {
        PathStart::Upper => c(0.0, 0.6),
        PathStart::Lower => c(0.0, -0.6),
        PathStart::RealAxis if target.re < 0.0 => c(-0.5, 0.0),
        PathStart::RealAxis => c(0.5, 0.0),
    };
    let s = power_series(p, origin, true)?;
    let (mut f, mut df) = (s.value, s.deriv);
    let mut terms = s.terms;
    let mut err = s.est_rel_err;
    let mut here = origin;
    let mut steps = 0;
    while here != target {
        if steps >= MAX_STEPS {
            return Err(Error::NoConvergence {
                method: Method::Continuation.as_str(),
                terms,
                est_rel_err: err,
            });
        }
        let remaining = target - here;
        let radius = here.norm().min((c(1.0, 0.0) - here).norm());
        let reach = STEP_FRACTION * radius;
        let next = if remaining.norm() <= reach {
            target
        } else {
            here + remaining * (reach / remaining.norm())
        };
        let step = taylor_step(p, here, f, df, next - here)?;
        f = step.value;
        df = step.deriv;
        terms += step.terms;
        err += step.est_rel_err + f64::EPSILON;
        here = next;
        steps += 1;
    }
    EvalResult { value: f, terms_used: terms, est_rel_err: err, method: Method::Continuation }.checked()
}

fn gauss_value(p: &HypParams) -> Result<EvalResult> {
    let excess = p.c - p.a - p.b;
    if excess <= 0.0 {
        return Err(Error::Divergence(format!(
            "F({}, {}; {}; z) is unbounded as z -> 1 (c - a - b = {excess})",
            p.a, p.b, p.c
        )));
    }
    let value = gamma_unchecked(p.c) * gamma_unchecked(excess) * recip_gamma(p.c - p.a) * recip_gamma(p.c - p.b);
    EvalResult { value: c(value, 0.0), terms_used: 0, est_rel_err: 4.0 * f64::EPSILON, method: Method::GaussValue }
        .checked()
}

fn interior(p: &HypParams, z: Complex64) -> Result<EvalResult> {
    if z == c(0.0, 0.0) {
        return Ok(EvalResult { value: c(1.0, 0.0), terms_used: 0, est_rel_err: 0.0, method: Method::DirectSeries });
    }
    if z == c(1.0, 0.0) {
        return gauss_value(p);
    }
    let one_minus = c(1.0, 0.0) - z;
    if z.re <= 0.5 {
        if z.norm() <= SERIES_RADIUS {
            return hyp2f1_series(p, z);
        }
        if (z / (z - 1.0)).norm() <= SERIES_RADIUS {
            return pfaff(p, z);
        }
    } else if one_minus.norm() <= SERIES_RADIUS {
        if let Some(m) = p.integer_excess() {
            return log_branch(p, m, one_minus, one_minus.ln());
        }
    }
    if z.norm() <= SERIES_RADIUS {
        return hyp2f1_series(p, z);
    }
    let start = if z.im > 0.0 {
        PathStart::Upper
    } else if z.im < 0.0 {
        PathStart::Lower
    } else {
        PathStart::RealAxis
    };
    continuation(p, z, start)
}

/// Side limit at x > 1 for parameter families without a closed cut formula.
fn boundary_value(p: &HypParams, x: f64, side: Side) -> Result<EvalResult> {
    let w = c(1.0 - x, 0.0);
    if x - 1.0 <= SERIES_RADIUS {
        if let Some(m) = p.integer_excess() {
            let ln_w = match side {
                Side::Minus => c((x - 1.0).ln(), PI),
                _ => c((x - 1.0).ln(), -PI),
            };
            return log_branch(p, m, w, ln_w);
        }
    }
    let start = if side == Side::Minus { PathStart::Lower } else { PathStart::Upper };
    continuation(p, c(x, 0.0), start)
}

/// Evaluate F(a, b; c; z) at a point of the cut plane, or the requested side
/// limit on the cut (1, inf).
pub fn hyp2f1(p: &HypParams, pt: &CutPoint) -> Result<EvalResult> {
    if pt.is_on_cut() {
        let x = pt.z.re;
        if p.is_first_kind() {
            return hyp2f1_cut(p, x - 1.0, pt.side);
        }
        return boundary_value(p, x, pt.side);
    }
    interior(p, pt.z)
}

/// F(a, b; c; 1 - u), keeping `u` exact when the logarithmic connection is
/// used near z = 1.
pub(crate) fn hyp2f1_one_minus(p: &HypParams, u: Complex64, side: Side) -> Result<EvalResult> {
    let z = c(1.0, 0.0) - u;
    let on_cut = u.im == 0.0 && u.re < 0.0;
    if u.norm() <= SERIES_RADIUS && z.re > 0.5 && u != c(0.0, 0.0) && !(on_cut && p.is_first_kind()) {
        if let Some(m) = p.integer_excess() {
            let ln_u = if on_cut {
                match side {
                    Side::Plus => c((-u.re).ln(), -PI),
                    Side::Minus => c((-u.re).ln(), PI),
                    Side::Interior => return Err(Error::CutSideMissing { re: z.re }),
                }
            } else {
                u.ln()
            };
            return log_branch(p, m, u, ln_u);
        }
    }
    hyp2f1(p, &CutPoint::approaching(z, side)?)
}

/// F(a, a; 2a; 1/(1 + x)) for x > 0, with 1 - 1/(1 + x) = x/(1 + x) kept exact.
fn upper_solution(a: f64, x: f64) -> Result<EvalResult> {
    let p = HypParams::new(a, a, 2.0 * a)?;
    let s = 1.0 / (1.0 + x);
    if s <= 0.5 {
        hyp2f1_series(&p, c(s, 0.0))
    } else {
        let w = x / (1.0 + x);
        log_branch(&p, 0, c(w, 0.0), c(w.ln(), 0.0))
    }
}

/// The real pieces P(x), Q(x) of the cut formula:
///
/// F±(a, 1-a; 1; 1+x) = P(x) - e^(∓πai) Q(x),
/// P(x) = (1+x)^(-a) Γ(a)/(Γ(2a)Γ(1-a)) F(a, a; 2a; 1/(1+x)),
/// Q(x) = F(a, 1-a; 1; -x) = (1+x)^(-a) F(a, a; 1; x/(1+x)).
pub(crate) struct CutPieces {
    pub p: f64,
    pub q: f64,
    pub terms: usize,
    pub est_rel_err: f64,
}

pub(crate) fn cut_pieces(a: f64, x: f64) -> Result<CutPieces> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("cut formula needs finite x > 0, got {x}")));
    }
    let connection = gamma_unchecked(a) / (gamma_unchecked(2.0 * a) * gamma_unchecked(1.0 - a));
    let upper = upper_solution(a, x)?;
    let first = HypParams::new(a, 1.0 - a, 1.0)?;
    let lower = interior(&first, c(-x, 0.0))?;
    Ok(CutPieces {
        p: (1.0 + x).powf(-a) * connection * upper.value.re,
        q: lower.value.re,
        terms: upper.terms_used + lower.terms_used,
        est_rel_err: upper.est_rel_err + lower.est_rel_err,
    })
}

/// Boundary value of F(a, 1 - a; 1; z) at z = 1 + x on the cut, from the
/// requested side.
pub fn hyp2f1_cut(p: &HypParams, x: f64, side: Side) -> Result<EvalResult> {
    if !p.is_first_kind() {
        return Err(Error::Parameter(format!(
            "cut formula is for (a, 1 - a; 1), got ({}, {}; {})",
            p.a, p.b, p.c
        )));
    }
    let sign = match side {
        Side::Plus => -1.0,
        Side::Minus => 1.0,
        Side::Interior => return Err(Error::CutSideMissing { re: 1.0 + x }),
    };
    let a = p.a;
    let pieces = cut_pieces(a, x)?;
    let phase = c(0.0, sign * PI * a).exp();
    let value = c(pieces.p, 0.0) - phase * pieces.q;
    let magnitude = pieces.p.abs() + pieces.q.abs();
    EvalResult {
        value,
        terms_used: pieces.terms,
        est_rel_err: pieces.est_rel_err * magnitude / value.norm() + 4.0 * f64::EPSILON,
        method: Method::CutFormula,
    }
    .checked()
}

/// Normalised residual of the quadratic identity
///
/// G(a) F(a,a;2a;1-x) F(1-a,1-a;1;x) - G(1-a) F(1-a,1-a;2-2a;1-x) F(a,a;1;x)
///     - 2 cos(πa) F(a,a;1;x) F(1-a,1-a;1;x) = 0,
///
/// with G(a) = Γ(a)/(Γ(2a)Γ(1-a)), for 0 < a < 1 and 0 < x < 1. The
/// residual is divided by the largest of the three term magnitudes.
pub fn new_identity_residual(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("need 0 < a < 1, got {a}")));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("need 0 < x < 1, got {x}")));
    }
    let b = 1.0 - a;
    let g = |s: f64| gamma_unchecked(s) / (gamma_unchecked(2.0 * s) * gamma_unchecked(1.0 - s));
    let complement_log = |s: f64| -> Result<f64> {
        let p = HypParams::new(s, s, 2.0 * s)?;
        let v = if x >= 0.5 {
            hyp2f1_series(&p, c(1.0 - x, 0.0))?
        } else {
            log_branch(&p, 0, c(x, 0.0), c(x.ln(), 0.0))?
        };
        Ok(v.value.re)
    };
    let at_x = |s: f64| -> Result<f64> {
        let p = HypParams::new(s, s, 1.0)?;
        Ok(interior(&p, c(x, 0.0))?.value.re)
    };
    let fa_2a = complement_log(a)?;
    let fb_2b = complement_log(b)?;
    let fa_1 = at_x(a)?;
    let fb_1 = at_x(b)?;
    let t1 = g(a) * fa_2a * fb_1;
    let t2 = g(b) * fb_2b * fa_1;
    let t3 = 2.0 * (PI * a).cos() * fa_1 * fb_1;
    let scale = t1.abs().max(t2.abs()).max(t3.abs());
    Ok((t1 - t2 - t3) / scale)
}
