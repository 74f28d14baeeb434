//! Lattice points inside the p-circle, the error term `P_p(r)`, the Riesz-mean
//! pair `D_β^[p]`, `𝒟_β^[p]` and the series identity linking their difference
//! to `J_{β+1}^[p]`.
//!
//! Counting is strict throughout: `m` is inside when `|m₁|^p + |m₂|^p < s`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gbessel::{j_omega_fast, BesselOrder};
use crate::pnorm::{ln_gamma, p_norm, PExponent, Vec2};
use crate::quadrature::{integrate_weighted, QuadValue, QuadratureSpec};

/// Rows longer than this are refused.
const MAX_ROW_EXTENT: f64 = 1e7;
/// Point sums over more than this many lattice points are refused.
const MAX_SUM_POINTS: f64 = 5e8;
/// Safety factor applied to the fitted envelope constant in tail bounds.
pub const ENVELOPE_INFLATION: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeCount {
    pub count: u64,
    pub s: f64,
    pub strict: bool,
}

/// `|m|^p` exactly as used by every counting routine (and by brute-force
/// checks), so that all of them agree on borderline points.
#[inline]
pub fn lattice_pow(m: i64, p: f64) -> f64 {
    (m.unsigned_abs() as f64).powf(p)
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::domain(format!("s must be positive and finite, got {s}")));
    }
    Ok(())
}

fn row_extent(p: &PExponent, s: f64) -> Result<i64> {
    let r = s.powf(1.0 / p.p);
    if r > MAX_ROW_EXTENT {
        return Err(Error::Resource(format!("s = {s} needs rows of length {r:e}")));
    }
    Ok(r.ceil() as i64 + 1)
}

/// Largest `k ≥ 0` with `k^p < t` (or `≤ t` when `closed`), `None` if even
/// `k = 0` fails.
fn row_bound(t: f64, p: f64, closed: bool) -> Option<i64> {
    let ok = |k: i64| if closed { lattice_pow(k, p) <= t } else { lattice_pow(k, p) < t };
    if !ok(0) {
        return None;
    }
    let mut k = if t > 0.0 { t.powf(1.0 / p).floor() as i64 } else { 0 };
    while k > 0 && !ok(k) {
        k -= 1;
    }
    while ok(k + 1) {
        k += 1;
    }
    Some(k)
}

fn count_impl(p: &PExponent, s: f64, closed: bool) -> Result<LatticeCount> {
    check_s(s)?;
    let m = row_extent(p, s)?;
    let pp = p.p;
    let count: u64 = (-m..=m)
        .into_par_iter()
        .map(|m1| {
            let a = lattice_pow(m1, pp);
            // The row predicate is a + |m₂|^p < s; search on that exact sum.
            let ok = |k: i64| {
                let v = a + lattice_pow(k, pp);
                if closed {
                    v <= s
                } else {
                    v < s
                }
            };
            if !ok(0) {
                return 0;
            }
            let mut k = row_bound(s - a, pp, closed).unwrap_or(0);
            while k > 0 && !ok(k) {
                k -= 1;
            }
            while ok(k + 1) {
                k += 1;
            }
            2 * k as u64 + 1
        })
        .sum();
    Ok(LatticeCount { count, s, strict: !closed })
}

/// `#{m ∈ ℤ² : |m₁|^p + |m₂|^p < s}`.
pub fn count_lattice(p: &PExponent, s: f64) -> Result<LatticeCount> {
    count_impl(p, s, false)
}

/// Closed count `#{|m|_p^p ≤ s}`, for comparison with classical tables.
pub fn count_lattice_closed(p: &PExponent, s: f64) -> Result<LatticeCount> {
    count_impl(p, s, true)
}

/// Area of the p-ball of radius `r`: `(2/p)·Γ²(1/p)/Γ(2/p)·r²`.
pub fn area_main_term(p: &PExponent, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("r must be positive and finite, got {r}")));
    }
    Ok(p.unit_ball_area() * r * r)
}

/// `P_p(r) = #{|m|_p^p < r^p} − area`.
pub fn p_error(p: &PExponent, r: f64) -> Result<f64> {
    let area = area_main_term(p, r)?;
    Ok(count_lattice(p, r.powf(p.p))?.count as f64 - area)
}

/// One row of an error-term sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorSweepRow {
    pub r: f64,
    #[serde(rename = "R_p")]
    pub count: u64,
    pub main_term: f64,
    #[serde(rename = "P_p")]
    pub error: f64,
}

/// `P_p(r)` over a list of radii; `closed` switches to the `≤` count.
pub fn error_sweep(p: &PExponent, radii: &[f64], closed: bool) -> Result<Vec<ErrorSweepRow>> {
    radii
        .iter()
        .map(|&r| {
            let main_term = area_main_term(p, r)?;
            let count = count_impl(p, r.powf(p.p), closed)?.count;
            Ok(ErrorSweepRow { r, count, main_term, error: count as f64 - main_term })
        })
        .collect()
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::domain(format!("β must exceed −1, got {beta}")));
    }
    Ok(())
}

/// Visits every `m` with `|m|_p^p < s`, passing `(m, s − |m|_p^p)`.
fn lattice_terms<T, F>(p: &PExponent, s: f64, beta: f64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(i64, i64, f64) -> T + Sync,
{
    check_s(s)?;
    check_beta(beta)?;
    if p.unit_ball_area() * s.powf(p.two_over_p) > MAX_SUM_POINTS {
        return Err(Error::Resource(format!("lattice sum at s = {s} has too many points")));
    }
    let m = row_extent(p, s)?;
    let pp = p.p;
    let rows: Vec<Result<Vec<T>>> = (-m..=m)
        .into_par_iter()
        .map(|m1| {
            let a = lattice_pow(m1, pp);
            let mut out = Vec::new();
            let mut k = 0i64;
            loop {
                let v = a + lattice_pow(k, pp);
                if v == s && beta < 0.0 {
                    return Err(Error::domain(format!("lattice point ({m1}, ±{k}) lies on |m|_p^p = s; β < 0 is undefined there")));
                }
                if v >= s {
                    break;
                }
                out.push(f(m1, k, s - v));
                if k != 0 {
                    out.push(f(m1, -k, s - v));
                }
                k += 1;
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in rows {
        all.extend(r?);
    }
    Ok(all)
}

/// `D_β^[p](s:x) = Γ(β+1)^{−1} Σ_{|m|_p^p<s} (s − |m|_p^p)^β cos(2π x·m)`.
pub fn d_beta(p: &PExponent, beta: f64, s: f64, x: Vec2) -> Result<f64> {
    let terms = lattice_terms(p, s, beta, |m1, m2, gap| {
        let w = if beta == 0.0 { 1.0 } else { gap.powf(beta) };
        w * (TAU * (x.x1 * m1 as f64 + x.x2 * m2 as f64)).cos()
    })?;
    let sum: f64 = terms.iter().sum();
    Ok(sum / ln_gamma(beta + 1.0)?.exp())
}

/// The same sum with `e^{2πi x·m}`; its imaginary part cancels over the
/// symmetric index set.
pub fn d_beta_complex(p: &PExponent, beta: f64, s: f64, x: Vec2) -> Result<Complex64> {
    let terms = lattice_terms(p, s, beta, |m1, m2, gap| {
        let w = if beta == 0.0 { 1.0 } else { gap.powf(beta) };
        Complex64::from_polar(w, TAU * (x.x1 * m1 as f64 + x.x2 * m2 as f64))
    })?;
    let sum: Complex64 = terms.iter().sum();
    Ok(sum / ln_gamma(beta + 1.0)?.exp())
}

/// `(1 − u^p)/(1 − u)` from `w = 1 − u`, tending to `p` at `w = 0`.
fn one_minus_pow_ratio(w: f64, p: f64) -> f64 {
    if w == 0.0 {
        p
    } else {
        -(p * (-w).ln_1p()).exp_m1() / w
    }
}

/// `∫₀¹ cos(κu)(1 − u^p)^e du`, the weight split as `(1 − u)^e` times a
/// regular ratio.
fn profile_integral(kappa: f64, p: f64, e: f64, spec: &QuadratureSpec) -> Result<QuadValue> {
    let g = |u: f64| (kappa * u).cos() * one_minus_pow_ratio(1.0 - u, p).powf(e);
    let breaks = oscillation_breaks(kappa);
    integrate_weighted(g, 0.0, 1.0, Some(0.0), Some(e), &breaks, spec)
}

fn oscillation_breaks(kappa: f64) -> Vec<f64> {
    let n = (kappa.abs() / PI).ceil() as usize;
    (1..n).map(|k| k as f64 / n as f64).collect()
}

/// `𝒟_β^[p](s:x) = Γ(β+1)^{−1} ∫_{|ξ|_p^p<s} (s − |ξ|_p^p)^β cos(2π x·ξ) dξ`
/// as an iterated integral over the first quadrant (the domain is symmetric
/// in each coordinate, so the cosine factorizes):
///
/// `4R s^{1/p+β} ∫₀¹ cos(2πx₁Rv)(1 − v^p)^{1/p+β} G(R(1 − v^p)^{1/p}) dv`,
/// `G(h) = ∫₀¹ cos(2πx₂hu)(1 − u^p)^β du`, `R = s^{1/p}`.
pub fn script_d_beta(p: &PExponent, beta: f64, s: f64, x: Vec2, spec: &QuadratureSpec) -> Result<QuadValue> {
    check_s(s)?;
    check_beta(beta)?;
    let pp = p.p;
    let r = s.powf(1.0 / pp);
    let inner_spec = spec.tightened(100.0);
    let failure = std::cell::RefCell::new(None);
    let inner_err = std::cell::Cell::new(0.0f64);
    let e_out = 1.0 / pp + beta;
    let g = |v: f64| {
        if failure.borrow().is_some() {
            return 0.0;
        }
        let w = 1.0 - v;
        let ratio = one_minus_pow_ratio(w, pp);
        // h = R(1 − v^p)^{1/p}
        let h = r * (ratio * w).powf(1.0 / pp);
        match profile_integral(TAU * x.x2 * h, pp, beta, &inner_spec) {
            Ok(q) => {
                inner_err.set(inner_err.get().max(q.error_estimate));
                (TAU * x.x1 * r * v).cos() * ratio.powf(e_out) * q.value
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let breaks = oscillation_breaks(TAU * x.x1.abs().max(x.x2.abs()) * r);
    let outer = integrate_weighted(g, 0.0, 1.0, Some(0.0), Some(e_out), &breaks, spec)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer.require("outer integral of 𝒟_β")?;
    let scale = 4.0 * r * (e_out * s.ln() - ln_gamma(beta + 1.0)?).exp();
    Ok(QuadValue {
        value: outer.value * scale,
        error_estimate: (outer.error_estimate + inner_err.get()) * scale,
        evaluations: outer.evaluations,
        converged: true,
    })
}

/// [`script_d_beta`] in generalized polar coordinates
/// `ξ = (ρ cos^{2/p}θ, ρ sin^{2/p}θ)`, Jacobian `(2/p)ρ(cos θ sin θ)^{2/p−1}`;
/// an independent cross-check.
pub fn script_d_beta_polar(p: &PExponent, beta: f64, s: f64, x: Vec2, spec: &QuadratureSpec) -> Result<QuadValue> {
    check_s(s)?;
    check_beta(beta)?;
    let pp = p.p;
    let n = p.two_over_p;
    let r = s.powf(1.0 / pp);
    let inner_spec = spec.tightened(100.0);
    let failure = std::cell::RefCell::new(None);
    let inner_err = std::cell::Cell::new(0.0f64);
    // Inner: ∫₀¹ w(1 − w^p)^β cos(2πx₁Rwc^N) cos(2πx₂Rws^N) dw.
    let g = |theta: f64| {
        if failure.borrow().is_some() {
            return 0.0;
        }
        let (sn, cs) = theta.sin_cos();
        let (k1, k2) = (TAU * x.x1 * r * cs.powf(n), TAU * x.x2 * r * sn.powf(n));
        let f = |w: f64| w * (k1 * w).cos() * (k2 * w).cos() * one_minus_pow_ratio(1.0 - w, pp).powf(beta);
        let breaks = oscillation_breaks(k1.abs() + k2.abs());
        match integrate_weighted(f, 0.0, 1.0, None, Some(beta), &breaks, &inner_spec).and_then(|q| q.require("radial integral of 𝒟_β")) {
            Ok(q) => {
                inner_err.set(inner_err.get().max(q.error_estimate));
                (cs * sn).powf(n - 1.0) * q.value
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let breaks = oscillation_breaks(TAU * (x.x1.abs() + x.x2.abs()) * r);
    let breaks: Vec<f64> = breaks.iter().map(|t| t * FRAC_PI_2).collect();
    let outer = integrate_weighted(g, 0.0, FRAC_PI_2, Some(0.0), Some(0.0), &breaks, spec)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer.require("angular integral of 𝒟_β")?;
    let scale = 4.0 * n * r * r * (beta * s.ln() - ln_gamma(beta + 1.0)?).exp();
    Ok(QuadValue {
        value: outer.value * scale,
        error_estimate: (outer.error_estimate + inner_err.get() * FRAC_PI_2) * scale,
        evaluations: outer.evaluations,
        converged: true,
    })
}

/// Decay exponent `q̂` of `J^[p]` used in the tail bound: `1/2` at `p = 2`,
/// `p/2` when `2/p ≥ 3` is an integer.
pub fn tail_exponent(p: &PExponent) -> Result<f64> {
    if p.is_circle() {
        return Ok(0.5);
    }
    match p.two_over_p_int() {
        Some(n) if n >= 3 => Ok(p.p / 2.0),
        _ => Err(Error::domain(format!("the series identity is implemented for p = 2 and 2/p ∈ {{3, 4, …}}, got p = {}", p.p))),
    }
}

fn check_series_pre(p: &PExponent, beta: f64, x: Vec2) -> Result<f64> {
    let q = tail_exponent(p)?;
    if !(beta > 1.0 - q) || !beta.is_finite() {
        return Err(Error::domain(format!("the series needs β > {} for p = {}, got {beta}", 1.0 - q, p.p)));
    }
    for c in [x.x1, x.x2] {
        if !(c > -0.5 && c <= 0.5) {
            return Err(Error::domain(format!("x must lie in (−1/2, 1/2]², got ({}, {})", x.x1, x.x2)));
        }
    }
    Ok(q)
}

/// Truncated right-hand side of the series identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesRhs {
    pub partial_sum: f64,
    pub tail_bound: f64,
    /// Accumulated quadrature error of the summed terms.
    pub quad_error: f64,
    /// Fitted `C` in `|J_{β+1}^[p](η)| ≤ C|η|_p^{−q̂}`, before inflation.
    pub envelope_constant: f64,
    pub envelope_inflation: f64,
    pub terms: usize,
}

fn sym_key(v: Vec2) -> (u64, u64) {
    let (a, b) = (v.x1.abs(), v.x2.abs());
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    (a.to_bits(), b.to_bits())
}

/// `s^{β+2/p} p^{β+1} Γ²(1/p) Σ_{0<|n|_∞≤N} J_{β+1}^[p](2πs^{1/p}(x−n)) / (2πs^{1/p}|x−n|_p)^{β+1}`
/// together with a bound on the omitted shells.
pub fn series_rhs(p: &PExponent, beta: f64, s: f64, x: Vec2, cutoff: u32, spec: &QuadratureSpec) -> Result<SeriesRhs> {
    check_s(s)?;
    let q = check_series_pre(p, beta, x)?;
    let omega = BesselOrder::new(beta + 1.0)?;
    let scale = TAU * s.powf(1.0 / p.p);
    let n = cutoff as i64;
    // Shells used to fit the envelope constant (shell 1 when the sum is empty).
    let env_lo = ((n + 1) / 2).max(1);
    let env_hi = n.max(1);

    let mut points: Vec<(i64, i64)> = Vec::new();
    for n1 in -env_hi..=env_hi {
        for n2 in -env_hi..=env_hi {
            if (n1, n2) != (0, 0) {
                points.push((n1, n2));
            }
        }
    }
    let mut unique: HashMap<(u64, u64), Vec2> = HashMap::new();
    for &(n1, n2) in &points {
        let v = x - Vec2::new(n1 as f64, n2 as f64);
        unique.entry(sym_key(v)).or_insert(v);
    }
    let mut keys: Vec<((u64, u64), Vec2)> = unique.into_iter().collect();
    keys.sort_by_key(|(k, _)| *k);
    let values: Vec<((u64, u64), (f64, QuadValue))> = keys
        .par_iter()
        .map(|&(k, v)| {
            let rho = scale * p_norm(v, p);
            let j = j_omega_fast(p, omega, v.scale(scale), spec).map_err(|e| term_error(e, v))?;
            Ok((k, (rho, j)))
        })
        .collect::<Result<Vec<_>>>()?;
    let table: HashMap<(u64, u64), (f64, QuadValue)> = values.into_iter().collect();

    let mut partial = 0.0;
    let mut quad_error = 0.0;
    let mut c_env: f64 = 0.0;
    let mut terms = 0;
    for &(n1, n2) in &points {
        let shell = n1.abs().max(n2.abs());
        let v = x - Vec2::new(n1 as f64, n2 as f64);
        let (rho, j) = table[&sym_key(v)];
        if shell >= env_lo {
            c_env = c_env.max(j.value.abs() * rho.powf(q));
        }
        if shell <= n {
            let d = rho.powf(beta + 1.0);
            partial += j.value / d;
            quad_error += j.error_estimate / d;
            terms += 1;
        }
    }
    let pref = ((beta + p.two_over_p) * s.ln() + (beta + 1.0) * p.p.ln() + 2.0 * ln_gamma(1.0 / p.p)?).exp();
    let c = ENVELOPE_INFLATION * c_env;
    let tail = c * shell_tail_sum(scale, q + beta + 1.0, n);
    Ok(SeriesRhs {
        partial_sum: pref * partial,
        tail_bound: pref * tail,
        quad_error: pref * quad_error,
        envelope_constant: c_env,
        envelope_inflation: ENVELOPE_INFLATION,
        terms,
    })
}

fn term_error(e: Error, v: Vec2) -> Error {
    let at = format!("series term at x − n = ({}, {})", v.x1, v.x2);
    match e {
        Error::NonConvergence { value, error_estimate, context } => {
            Error::NonConvergence { value, error_estimate, context: format!("{context}; {at}") }
        }
        Error::Resource(m) => Error::Resource(format!("{m}; {at}")),
        other => other,
    }
}

/// `Σ_{k>N} 8k·(scale·(k − ½))^{−e}`: shell `k` has `8k` points, each with
/// `|x − n|_p ≥ |x − n|_∞ ≥ k − ½`. Summed explicitly for a while, then
/// bounded by `16∫_K^∞ (t − ½)^{1−e} dt`.
fn shell_tail_sum(scale: f64, e: f64, n: i64) -> f64 {
    const EXPLICIT: i64 = 20_000;
    let mut sum = 0.0;
    for k in (n + 1)..=(n + EXPLICIT) {
        let kf = k as f64;
        sum += 8.0 * kf * (kf - 0.5).powf(-e);
    }
    let big_k = (n + EXPLICIT) as f64;
    sum += 16.0 * (big_k - 0.5).powf(2.0 - e) / (e - 2.0);
    sum * scale.powf(-e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub p: f64,
    pub beta: f64,
    pub s: f64,
    pub x: Vec2,
    pub lhs: f64,
    pub rhs_partial: f64,
    pub cutoff: u32,
    pub tail_bound: f64,
    pub abs_gap: f64,
    /// Combined quadrature error of `𝒟_β` and the summed terms.
    pub quad_error: f64,
    pub envelope_constant: f64,
    pub envelope_inflation: f64,
    pub pass: bool,
}

/// Checks `D_β − 𝒟_β` against the truncated series; passes when
/// `|lhs − rhs| ≤ tail_bound + 10·quad_error`. A failing verdict is a
/// result, not an error.
pub fn verify_identity(p: &PExponent, beta: f64, s: f64, x: Vec2, cutoff: u32, spec: &QuadratureSpec) -> Result<IdentityReport> {
    if p.is_circle() && !(beta > 0.5) {
        return Err(Error::domain(format!("p = 2 needs β > 1/2, got {beta}")));
    }
    if !p.is_circle() && !(beta > 1.0 - p.p / 2.0) {
        return Err(Error::domain(format!("p = {} needs β > {}, got {beta}", p.p, 1.0 - p.p / 2.0)));
    }
    if cutoff == 0 {
        return Err(Error::domain("cutoff must be positive"));
    }
    let rhs = series_rhs(p, beta, s, x, cutoff, spec)?;
    let d = d_beta(p, beta, s, x)?;
    let sd = script_d_beta(p, beta, s, x, spec)?;
    let lhs = d - sd.value;
    let abs_gap = (lhs - rhs.partial_sum).abs();
    let quad_error = sd.error_estimate + rhs.quad_error;
    Ok(IdentityReport {
        p: p.p,
        beta,
        s,
        x,
        lhs,
        rhs_partial: rhs.partial_sum,
        cutoff,
        tail_bound: rhs.tail_bound,
        abs_gap,
        quad_error,
        envelope_constant: rhs.envelope_constant,
        envelope_inflation: rhs.envelope_inflation,
        pass: abs_gap <= rhs.tail_bound + 10.0 * quad_error,
    })
}
