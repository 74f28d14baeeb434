//! One-dimensional quadrature tolerant of algebraic endpoint singularities
//! and strong oscillation.
//!
//! * [`integrate_adaptive`] — globally adaptive Gauss–Kronrod (21/10).
//! * [`integrate_endpoint_singular`] — tanh-sinh end panels for weights
//!   `(t − a)^α (b − t)^β`, adaptive elsewhere.
//! * [`integrate_oscillatory`] — `∫ e^{iλφ(θ)} A(θ) dθ` on panels over which
//!   `λφ` moves by at most `oscillation_panel_phase`.

mod adaptive;
mod gauss_kronrod;
mod tanh_sinh;

use std::f64::consts::FRAC_PI_2;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use adaptive::Weighted;

/// Largest `λ` accepted by the oscillatory integrator.
pub const MAX_LAMBDA: f64 = 1e6;
const MAX_OSC_PANELS: usize = 4_000_000;

/// Tolerances and budgets shared by all integrators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Bisections allowed beyond the initial panel set.
    pub max_subdivisions: usize,
    /// Largest change of `λ·phase` allowed across one oscillatory panel.
    pub oscillation_panel_phase: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            oscillation_panel_phase: FRAC_PI_2,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec { abs_tol: tol, rel_tol: tol, ..Default::default() }
    }

    /// Same spec with both tolerances divided by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        QuadratureSpec { abs_tol: self.abs_tol / factor, rel_tol: self.rel_tol / factor, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.abs_tol) || !ok(self.rel_tol) || !ok(self.oscillation_panel_phase) || self.max_subdivisions < 1 {
            return Err(Error::domain(format!("invalid quadrature spec {self:?}")));
        }
        Ok(())
    }
}

/// Scalar types the integrators can accumulate: `f64` and `Complex64`.
pub trait QuadScalar:
    Copy + Debug + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
    /// Real part, used when reporting a failed integral through [`Error`].
    fn real(&self) -> f64;
}

impl QuadScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn real(&self) -> f64 {
        *self
    }
}

impl QuadScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn real(&self) -> f64 {
        self.re
    }
}

/// Result of an integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadValue<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: QuadScalar> QuadValue<T> {
    fn zero() -> Self {
        QuadValue { value: T::zero(), error_estimate: 0.0, evaluations: 0, converged: true }
    }

    /// Turns an unconverged result into [`Error::NonConvergence`].
    pub fn require(self, context: &str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                value: self.value.real(),
                error_estimate: self.error_estimate,
                context: context.to_string(),
            })
        }
    }

    /// Adds another result (value, error and work all accumulate).
    pub fn combine(self, other: QuadValue<T>) -> Self {
        QuadValue {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
    }
    Ok(())
}

/// Sorted break list `a = t₀ < … < t_n = b` from arbitrary interior points.
fn normalize_breaks(a: f64, b: f64, interior: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = Vec::with_capacity(interior.len() + 2);
    v.push(a);
    v.extend(interior.iter().copied().filter(|t| t.is_finite() && *t > a && *t < b));
    v.push(b);
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// `∫_a^b f` by adaptive Gauss–Kronrod bisection.
pub fn integrate_adaptive<T, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadValue<T>>
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    integrate_adaptive_with_breaks(f, a, b, &[], spec)
}

/// [`integrate_adaptive`] starting from panels split at `breaks`.
pub fn integrate_adaptive_with_breaks<T, F>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadValue<T>>
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    check_interval(a, b)?;
    if a == b {
        return Ok(QuadValue::zero());
    }
    let w = Weighted { g: &f, a, b, left: None, right: None };
    Ok(adaptive::run(&w, &normalize_breaks(a, b, breaks), spec))
}

/// `∫_a^b g(t)(t − a)^α (b − t)^β dt` for a bounded `g`.
///
/// The weight is applied internally, from endpoint distances that the
/// transform computes exactly, so `g` must be the *regular* factor only.
/// Exponents must exceed −1.
pub fn integrate_endpoint_singular<T, F>(
    g: F,
    a: f64,
    b: f64,
    left_exponent: f64,
    right_exponent: f64,
    spec: &QuadratureSpec,
) -> Result<QuadValue<T>>
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    integrate_weighted(g, a, b, Some(left_exponent), Some(right_exponent), &[], spec)
}

/// General form: `None` leaves an end unweighted and regular, `Some(α)`
/// puts a tanh-sinh panel there with weight exponent `α`. `breaks` seeds the
/// initial panels.
pub fn integrate_weighted<T, F>(
    g: F,
    a: f64,
    b: f64,
    left_exponent: Option<f64>,
    right_exponent: Option<f64>,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadValue<T>>
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    check_interval(a, b)?;
    for e in [left_exponent, right_exponent].into_iter().flatten() {
        if !(e > -1.0) || !e.is_finite() {
            return Err(Error::domain(format!("endpoint exponent {e} ≤ −1: the integral diverges")));
        }
    }
    if a == b {
        return Ok(QuadValue::zero());
    }
    let w = Weighted { g: &g, a, b, left: left_exponent, right: right_exponent };
    Ok(adaptive::run(&w, &normalize_breaks(a, b, breaks), spec))
}

/// `∫_a^b e^{iλ·phase(θ)} amplitude(θ) dθ`.
pub fn integrate_oscillatory<P, A>(
    phase: P,
    amplitude: A,
    lambda: f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadValue<Complex64>>
where
    P: Fn(f64) -> f64,
    A: Fn(f64) -> f64,
{
    integrate_oscillatory_weighted(phase, amplitude, lambda, a, b, None, None, spec)
}

/// Oscillatory integral whose amplitude is `A(θ)(θ − a)^α(b − θ)^β` with
/// the weight handled as in [`integrate_weighted`].
#[allow(clippy::too_many_arguments)]
pub fn integrate_oscillatory_weighted<P, A>(
    phase: P,
    amplitude: A,
    lambda: f64,
    a: f64,
    b: f64,
    left_exponent: Option<f64>,
    right_exponent: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<QuadValue<Complex64>>
where
    P: Fn(f64) -> f64,
    A: Fn(f64) -> f64,
{
    spec.validate()?;
    check_interval(a, b)?;
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::domain(format!("λ must be finite and ≥ 0, got {lambda}")));
    }
    if lambda > MAX_LAMBDA {
        return Err(Error::Resource(format!("λ = {lambda:e} exceeds the supported maximum {MAX_LAMBDA:e}")));
    }
    let breaks = if lambda == 0.0 {
        Vec::new()
    } else {
        phase_partition(&phase, lambda, a, b, spec.oscillation_panel_phase)?
    };
    let g = |t: f64| {
        let (s, c) = (lambda * phase(t)).sin_cos();
        Complex64::new(c, s) * amplitude(t)
    };
    integrate_weighted(g, a, b, left_exponent, right_exponent, &breaks, spec)
}

/// Interior break points such that `λ·(max − min)` of the phase, sampled at
/// nine points per panel, stays below `max_step`.
pub fn phase_partition<P: Fn(f64) -> f64>(phase: &P, lambda: f64, a: f64, b: f64, max_step: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let mut mn = f64::INFINITY;
        let mut mx = f64::NEG_INFINITY;
        for i in 0..=8 {
            let v = phase(lo + (hi - lo) * i as f64 / 8.0);
            mn = mn.min(v);
            mx = mx.max(v);
        }
        let mid = 0.5 * (lo + hi);
        if lambda * (mx - mn) > max_step && depth < 60 && mid > lo && mid < hi {
            // Right half first so the left half is processed next: output stays sorted.
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        } else if hi < b {
            out.push(hi);
            if out.len() > MAX_OSC_PANELS {
                return Err(Error::Resource(format!("oscillatory partition exceeds {MAX_OSC_PANELS} panels")));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn plain_examples() {
        let r = integrate_adaptive(|_| 1.0, 0.0, 1.0, &spec()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12 && r.converged);
        let r = integrate_adaptive(f64::cos, 0.0, FRAC_PI_2, &spec()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10 && r.converged);
        let r = integrate_endpoint_singular(|_| 1.0, 0.0, 1.0, -0.5, 0.0, &spec()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8 && r.converged);
    }

    #[test]
    fn beta_integrals() {
        let r = integrate_endpoint_singular(|_| 1.0, 0.0, 1.0, 0.5, 0.5, &spec()).unwrap();
        assert!((r.value - PI / 8.0).abs() < 1e-10, "{}", r.value);
        let r = integrate_endpoint_singular(|_| 1.0, 0.0, 1.0, -0.5, -0.5, &spec()).unwrap();
        assert!((r.value - PI).abs() < 1e-10, "{}", r.value);
        let r = integrate_endpoint_singular(|_| 1.0, 0.0, 1.0, 0.0, 0.0, &spec()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(matches!(
            integrate_endpoint_singular(|_| 1.0, 0.0, 1.0, -1.0, 0.0, &spec()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn oscillatory_examples() {
        let amp = |_: f64| 1.0 / TAU;
        let r = integrate_oscillatory(f64::sin, amp, 0.0, 0.0, TAU, &spec()).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let r = integrate_oscillatory(f64::sin, amp, 5.0, 0.0, TAU, &spec()).unwrap();
        assert!((r.value.re + 0.177_596_771_314_338_3).abs() < 1e-10, "{}", r.value);
        assert!(r.value.im.abs() < 1e-10);
        let r = integrate_oscillatory(|t| t, |_| 1.0, 10.0, 0.0, PI, &spec()).unwrap();
        assert!(r.value.norm() < 1e-10, "{}", r.value);
        assert!(matches!(
            integrate_oscillatory(|t| t, |_| 1.0, 2e6, 0.0, PI, &spec()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn large_lambda_fresnel_type() {
        // ∫₀¹ e^{iλt} dt = (e^{iλ} − 1)/(iλ)
        let lam = 5000.0;
        let r = integrate_oscillatory(|t| t, |_| 1.0, lam, 0.0, 1.0, &spec()).unwrap();
        let exact = (Complex64::new(0.0, lam).exp() - 1.0) / Complex64::new(0.0, lam);
        assert!((r.value - exact).norm() < 1e-10);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = QuadratureSpec { max_subdivisions: 1, ..spec() };
        let r = integrate_adaptive(|t: f64| (1.0 / (t + 1e-9)).sin(), 0.0, 1.0, &tight).unwrap();
        assert!(!r.converged);
        assert!(r.require("test").is_err());
    }

    #[test]
    fn partition_respects_step() {
        let br = phase_partition(&|t: f64| t * t, 100.0, 0.0, 2.0, 0.5).unwrap();
        let mut prev = 0.0;
        for &t in br.iter().chain(std::iter::once(&2.0)) {
            assert!(t > prev);
            assert!(100.0 * (t * t - prev * prev) <= 0.5 + 1e-12);
            prev = t;
        }
    }
}
