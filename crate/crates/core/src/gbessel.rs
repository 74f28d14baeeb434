//! The generalized Bessel functions `J_ω^[p]`.
//!
//! `J_0^[p](η) = (2/p)²/Γ²(1/p) ∫₀¹ cos(η₁t^{1/p}) cos(η₂(1−t)^{1/p}) t^{1/p−1}(1−t)^{1/p−1} dt`
//! and, for `ω > 0`,
//! `J_ω^[p](η) = |η|_p^ω/(p^{ω−1}Γ(ω)) ∫₀¹ J_0^[p](τη) τ(1−τ^p)^{ω−1} dτ`.
//!
//! Four independent evaluation routes are provided (direct, oscillatory,
//! odd-order oscillatory, power series) so they can be checked against each
//! other.

use std::cell::{Cell, RefCell};
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::classical::bessel_j;
use crate::error::{Error, Result};
use crate::pnorm::{ln_gamma, p_norm, PExponent, Vec2};
use crate::quadrature::{integrate_oscillatory_weighted, integrate_weighted, QuadValue, QuadratureSpec};

/// Largest imaginary part tolerated before the real part is taken.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-8;

/// The order `ω ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselOrder {
    pub omega: f64,
}

impl BesselOrder {
    pub const ZERO: BesselOrder = BesselOrder { omega: 0.0 };

    pub fn new(omega: f64) -> Result<Self> {
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::domain(format!("order ω must be finite and ≥ 0, got {omega}")));
        }
        Ok(BesselOrder { omega })
    }
}

/// Truncation control for [`j_omega_series`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSpec {
    pub max_k: usize,
    pub term_tol: f64,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        SeriesSpec { max_k: 200, term_tol: 1e-14 }
    }
}

/// Evaluation route, as named in scan tables and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Direct,
    Oscillatory,
    Odd,
    Series,
    /// Classical `J_ω(|η|)`, valid only at `p = 2`.
    Classical,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Direct => "direct",
            Representation::Oscillatory => "oscillatory",
            Representation::Odd => "odd",
            Representation::Series => "series",
            Representation::Classical => "classical",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "direct" => Representation::Direct,
            "oscillatory" => Representation::Oscillatory,
            "odd" => Representation::Odd,
            "series" => Representation::Series,
            "classical" => Representation::Classical,
            _ => return Err(Error::domain(format!("unknown representation {s:?}"))),
        })
    }
}

fn check_eta(eta: Vec2) -> Result<()> {
    if !eta.x1.is_finite() || !eta.x2.is_finite() {
        return Err(Error::domain(format!("η must be finite, got ({}, {})", eta.x1, eta.x2)));
    }
    Ok(())
}

/// `sin x / x`, continuous at 0.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `|J_0^[p]| ≤ (2/p)²/Γ(2/p)`; a violation means the quadrature lied.
fn check_bound(p: &PExponent, q: &QuadValue, what: &str) -> Result<()> {
    let bound = p.origin_value();
    if q.value.abs() > bound * (1.0 + 1e-12) + 10.0 * q.error_estimate {
        return Err(Error::Consistency(format!(
            "{what}: |J_0| = {} exceeds the global bound {bound}",
            q.value.abs()
        )));
    }
    Ok(())
}

fn scaled(q: QuadValue, k: f64) -> QuadValue {
    QuadValue { value: q.value * k, error_estimate: q.error_estimate * k.abs(), ..q }
}

/// Break points in `t` at quarter periods of both cosine factors.
fn direct_breaks(p: &PExponent, eta: Vec2) -> Vec<f64> {
    let mut br = Vec::new();
    for (e, mirrored) in [(eta.x1.abs(), false), (eta.x2.abs(), true)] {
        if e == 0.0 {
            continue;
        }
        let mut k = 1.0;
        loop {
            let t = (k * FRAC_PI_2 / e).powf(p.p);
            if t >= 1.0 {
                break;
            }
            br.push(if mirrored { 1.0 - t } else { t });
            k += 1.0;
        }
    }
    br
}

/// `J_0^[p](η)` from its defining integral.
pub fn j0_direct(p: &PExponent, eta: Vec2, spec: &QuadratureSpec) -> Result<f64> {
    Ok(j0_direct_estimate(p, eta, spec)?.value)
}

/// [`j0_direct`] with its error estimate.
pub fn j0_direct_estimate(p: &PExponent, eta: Vec2, spec: &QuadratureSpec) -> Result<QuadValue> {
    check_eta(eta)?;
    let inv_p = 1.0 / p.p;
    let (e1, e2) = (eta.x1, eta.x2);
    let g = |t: f64| (e1 * t.powf(inv_p)).cos() * (e2 * (1.0 - t).powf(inv_p)).cos();
    let exp = inv_p - 1.0;
    let q = integrate_weighted(g, 0.0, 1.0, Some(exp), Some(exp), &direct_breaks(p, eta), spec)?
        .require("direct representation of J_0")?;
    let q = scaled(q, p.two_over_p * p.two_over_p / (p.gamma_1p * p.gamma_1p));
    check_bound(p, &q, "direct representation")?;
    Ok(q)
}

/// `cos^N θ` and `sin^N θ` on `[0, π/2]`, with integer powers when possible.
#[derive(Clone, Copy)]
struct Powers {
    n: f64,
    int: Option<i32>,
}

impl Powers {
    fn new(p: &PExponent) -> Self {
        Powers { n: p.two_over_p, int: p.two_over_p_int().map(|k| k as i32) }
    }
    fn pow(&self, x: f64) -> f64 {
        match self.int {
            Some(k) => x.powi(k),
            None => x.abs().powf(self.n),
        }
    }
}

/// `∫₀^{π/2} e^{i·phase} ψ(θ) dθ`, `ψ = (cos θ sin θ)^{2/p−1}`, with `phase`
/// given unscaled (the routine divides by `ρ` internally).
fn psi_integral<P: Fn(f64) -> f64>(p: &PExponent, phase: P, rho: f64, spec: &QuadratureSpec) -> Result<QuadValue<Complex64>> {
    let pw = Powers::new(p);
    let lam = rho;
    let scale = if rho > 0.0 { 1.0 / rho } else { 0.0 };
    let ph = move |t: f64| phase(t) * scale;
    let alpha = p.two_over_p - 1.0;
    match pw.int {
        Some(k) => {
            let amp = move |t: f64| (t.cos() * t.sin()).powi(k - 1);
            integrate_oscillatory_weighted(ph, amp, lam, 0.0, FRAC_PI_2, None, None, spec)
        }
        None => {
            // Regular factor of ψ once θ^α(π/2 − θ)^α is pulled out.
            let amp = move |t: f64| (sinc(t) * sinc(FRAC_PI_2 - t)).powf(alpha);
            integrate_oscillatory_weighted(ph, amp, lam, 0.0, FRAC_PI_2, Some(alpha), Some(alpha), spec)
        }
    }
}

/// `J_0^[p](η)` from the four-term oscillatory representation over
/// `θ ∈ [0, π/2]`. Supports `0 < p < 4`.
pub fn j0_oscillatory(p: &PExponent, eta: Vec2, spec: &QuadratureSpec) -> Result<f64> {
    Ok(j0_oscillatory_estimate(p, eta, spec)?.value)
}

/// [`j0_oscillatory`] with its error estimate.
pub fn j0_oscillatory_estimate(p: &PExponent, eta: Vec2, spec: &QuadratureSpec) -> Result<QuadValue> {
    check_eta(eta)?;
    if p.p >= 4.0 {
        return Err(Error::domain(format!(
            "oscillatory representation needs p < 4 (amplitude exponent 2/p − 1 > −1), got p = {}",
            p.p
        )));
    }
    let pw = Powers::new(p);
    let (e1, e2) = (eta.x1, eta.x2);
    let rho = p_norm(eta, p);
    let f = move |t: f64| e1 * pw.pow(t.cos()) + e2 * pw.pow(t.sin());
    let g = move |t: f64| e1 * pw.pow(t.sin()) - e2 * pw.pow(t.cos());
    let mut total = QuadValue { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, evaluations: 0, converged: true };
    for sign in [1.0, -1.0] {
        total = total.combine(psi_integral(p, move |t| sign * f(t), rho, spec)?);
        total = total.combine(psi_integral(p, move |t| sign * g(t), rho, spec)?);
    }
    let total = total.require("oscillatory representation of J_0")?;
    let pref = 2.0 / (p.p * p.gamma_1p).powi(2);
    finish_complex(p, total, pref, "oscillatory representation")
}

fn finish_complex(p: &PExponent, total: QuadValue<Complex64>, pref: f64, what: &str) -> Result<QuadValue> {
    let im = total.value.im * pref;
    if im.abs() > IMAGINARY_RESIDUE_TOL {
        return Err(Error::Consistency(format!("{what}: imaginary residue {im:e} exceeds {IMAGINARY_RESIDUE_TOL:e}")));
    }
    let q = QuadValue {
        value: total.value.re * pref,
        error_estimate: total.error_estimate * pref,
        evaluations: total.evaluations,
        converged: true,
    };
    check_bound(p, &q, what)?;
    Ok(q)
}

/// `J_0^[p](η)` from the single integral over `[0, 2π]`, valid when `2/p` is
/// an odd integer.
pub fn j0_odd(p: &PExponent, eta: Vec2, spec: &QuadratureSpec) -> Result<f64> {
    Ok(j0_odd_estimate(p, eta, spec)?.value)
}

/// [`j0_odd`] with its error estimate.
pub fn j0_odd_estimate(p: &PExponent, eta: Vec2, spec: &QuadratureSpec) -> Result<QuadValue> {
    check_eta(eta)?;
    let n = match p.two_over_p_int() {
        Some(n) if p.two_over_p_is_odd_integer => n as i32,
        _ => return Err(Error::domain(format!("odd-order representation needs 2/p odd, got 2/p = {}", p.two_over_p))),
    };
    let (e1, e2) = (eta.x1, eta.x2);
    let rho = p_norm(eta, p);
    let scale = if rho > 0.0 { 1.0 / rho } else { 0.0 };
    let phase = move |t: f64| (e1 * t.sin().powi(n) + e2 * t.cos().powi(n)) * scale;
    let amp = move |t: f64| (t.cos() * t.sin()).powi(n - 1);
    let q = integrate_oscillatory_weighted(phase, amp, rho, 0.0, TAU, None, None, spec)?
        .require("odd-order representation of J_0")?;
    let pref = 2.0 / (p.p * p.gamma_1p).powi(2);
    finish_complex(p, q, pref, "odd-order representation")
}

/// `J_ω^[p](η)` for `ω > 0` by nested quadrature (inner [`j0_direct`] with
/// a tolerance 100× tighter than the outer one).
pub fn j_omega(p: &PExponent, omega: BesselOrder, eta: Vec2, spec: &QuadratureSpec) -> Result<f64> {
    Ok(j_omega_estimate(p, omega, eta, spec)?.value)
}

/// [`j_omega`] with its error estimate (outer error plus propagated inner error).
pub fn j_omega_estimate(p: &PExponent, omega: BesselOrder, eta: Vec2, spec: &QuadratureSpec) -> Result<QuadValue> {
    check_eta(eta)?;
    let w = omega.omega;
    if w == 0.0 {
        return j0_direct_estimate(p, eta, spec);
    }
    if eta.is_zero() {
        return Ok(QuadValue { value: 0.0, error_estimate: 0.0, evaluations: 0, converged: true });
    }
    let rho = p_norm(eta, p);
    let inner_spec = spec.tightened(100.0);
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_err = Cell::new(0.0f64);
    let inner_evals = Cell::new(0usize);
    let pp = p.p;
    let g = |tau: f64| {
        if failure.borrow().is_some() {
            return 0.0;
        }
        // ((1 − τ^p)/(1 − τ))^{ω−1}, continuous at τ = 1 where it tends to p^{ω−1}.
        let one_minus = 1.0 - tau;
        let ratio = if one_minus == 0.0 { pp } else { -(pp * tau.ln()).exp_m1() / one_minus };
        let weight = tau * ratio.powf(w - 1.0);
        match j0_direct_estimate(p, eta.scale(tau), &inner_spec) {
            Ok(q) => {
                inner_err.set(inner_err.get().max(q.error_estimate));
                inner_evals.set(inner_evals.get() + q.evaluations);
                q.value * weight
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let panels = ((eta.x1.abs() + eta.x2.abs()) / FRAC_PI_2).ceil() as usize + 1;
    let breaks: Vec<f64> = (1..panels).map(|k| k as f64 / panels as f64).collect();
    let outer = integrate_weighted(g, 0.0, 1.0, None, Some(w - 1.0), &breaks, spec)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer.require("outer integral of J_ω")?;
    // ∫₀¹ τ(1 − τ^p)^{ω−1} dτ = B(2/p, ω)/p bounds how inner errors propagate.
    let weight_mass = (ln_gamma(p.two_over_p)? + ln_gamma(w)? - ln_gamma(p.two_over_p + w)?).exp() / p.p;
    let pref = (w * rho.ln() - (w - 1.0) * p.p.ln() - ln_gamma(w)?).exp();
    Ok(QuadValue {
        value: outer.value * pref,
        error_estimate: (outer.error_estimate + inner_err.get() * weight_mass) * pref,
        evaluations: outer.evaluations + inner_evals.get(),
        converged: true,
    })
}

/// `J_ω^[p](x)` from the power series in `x`. Refuses (with
/// [`Error::Truncation`]) when the terms have not died out by `max_k` or
/// when cancellation would destroy more than six digits.
pub fn j_omega_series(p: &PExponent, omega: BesselOrder, x: Vec2, spec: &SeriesSpec) -> Result<f64> {
    check_eta(x)?;
    if spec.max_k < 1 || !(spec.term_tol > 0.0) {
        return Err(Error::domain("series spec needs max_k ≥ 1 and term_tol > 0"));
    }
    let w = omega.omega;
    let inv_p = 1.0 / p.p;
    let (l1, l2) = (x.x1.abs().ln(), x.x2.abs().ln());
    // ln Γ((2m+1)/p) − ln (2m)!  for m = 0..=max_k
    let mut coeff = Vec::with_capacity(spec.max_k + 1);
    for m in 0..=spec.max_k {
        coeff.push(ln_gamma((2 * m + 1) as f64 * inv_p)? - ln_gamma((2 * m + 1) as f64)?);
    }
    let log_term = |m: usize, lx: f64| -> Option<f64> {
        if m == 0 {
            Some(coeff[0])
        } else if lx == f64::NEG_INFINITY {
            None
        } else {
            Some(coeff[m] + 2.0 * m as f64 * lx)
        }
    };
    let mut sum = 0.0;
    let mut max_term: f64 = 0.0;
    let mut quiet_blocks = 0;
    for k in 0..=spec.max_k {
        let lg = ln_gamma(2.0 * (k + 1) as f64 * inv_p + w)?;
        let mut block = 0.0;
        for m1 in 0..=k {
            let (Some(a), Some(b)) = (log_term(m1, l1), log_term(k - m1, l2)) else {
                continue;
            };
            block += (a + b - lg).exp();
        }
        if k % 2 == 1 {
            block = -block;
        }
        sum += block;
        max_term = max_term.max(block.abs());
        if block.abs() <= spec.term_tol * sum.abs().max(f64::MIN_POSITIVE) {
            quiet_blocks += 1;
            if quiet_blocks >= 3 {
                let cancellation = max_term * f64::EPSILON * (k + 1) as f64;
                if cancellation > 1e-6 * sum.abs().max(1e-300) {
                    return Err(Error::Truncation {
                        partial_sum: sum,
                        last_k: k,
                        reason: format!("cancellation: largest term {max_term:e} against sum {sum:e}"),
                    });
                }
                let rho = p_norm(x, p);
                let pref = 4.0 / (p.p.powf(w + 2.0) * p.gamma_1p * p.gamma_1p);
                let radial = if w == 0.0 { 1.0 } else { rho.powf(w) };
                return Ok(radial * pref * sum);
            }
        } else {
            quiet_blocks = 0;
        }
    }
    Err(Error::Truncation {
        partial_sum: sum,
        last_k: spec.max_k,
        reason: "terms did not decay below term_tol before max_k".into(),
    })
}

/// `lim_{x→0} J_ω^[p](x)/|x|_p^ω = (2/p)²/(p^ω Γ(ω + 2/p))`.
pub fn j_ratio_at_origin(p: &PExponent, omega: BesselOrder) -> f64 {
    let w = omega.omega;
    let lg = ln_gamma(w + p.two_over_p).expect("ω + 2/p > 0");
    p.two_over_p * p.two_over_p * (-(w * p.p.ln()) - lg).exp()
}

/// `J_ω^[p](η)` by the cheapest route that is valid for `(p, ω)`: the
/// classical function at `p = 2`, otherwise the direct integral (`ω = 0`) or
/// nested quadrature.
pub fn j_omega_fast(p: &PExponent, omega: BesselOrder, eta: Vec2, spec: &QuadratureSpec) -> Result<QuadValue> {
    if p.is_circle() {
        let r = p_norm(eta, p);
        return Ok(QuadValue { value: bessel_j(omega.omega, r)?, error_estimate: 1e-13, evaluations: 1, converged: true });
    }
    j_omega_estimate(p, omega, eta, spec)
}

/// Evaluates `J_0^[p]` (or `J_ω^[p]` for the series/classical routes) with a
/// named representation.
pub fn evaluate(p: &PExponent, omega: BesselOrder, eta: Vec2, rep: Representation, spec: &QuadratureSpec) -> Result<QuadValue> {
    let zero_only = |r: Representation| -> Result<()> {
        if omega.omega != 0.0 {
            return Err(Error::domain(format!("the {r} representation only covers ω = 0")));
        }
        Ok(())
    };
    match rep {
        Representation::Direct => j_omega_estimate(p, omega, eta, spec),
        Representation::Oscillatory => {
            zero_only(rep)?;
            j0_oscillatory_estimate(p, eta, spec)
        }
        Representation::Odd => {
            zero_only(rep)?;
            j0_odd_estimate(p, eta, spec)
        }
        Representation::Series => {
            let v = j_omega_series(p, omega, eta, &SeriesSpec::default())?;
            Ok(QuadValue { value: v, error_estimate: 1e-12 * v.abs().max(1.0), evaluations: 0, converged: true })
        }
        Representation::Classical => {
            if !p.is_circle() {
                return Err(Error::domain("the classical representation needs p = 2"));
            }
            j_omega_fast(p, omega, eta, spec)
        }
    }
}

/// `J_0^[2](ρ, 0) − √(2/(πρ)) cos(ρ − π/4)`, the leading Hankel remainder.
pub fn hankel_remainder(rho: f64) -> Result<f64> {
    Ok(bessel_j(0.0, rho)? - (2.0 / (PI * rho)).sqrt() * (rho - PI / 4.0).cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pnorm::{polar_to_cartesian, PPolar};
    use std::f64::consts::FRAC_PI_4;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }
    fn pr(num: u64, den: u64) -> PExponent {
        PExponent::from_ratio(num, den).unwrap()
    }
    fn at(p: &PExponent, rho: f64, phi: f64) -> Vec2 {
        polar_to_cartesian(PPolar::new(rho, phi).unwrap(), p)
    }

    const J0_5: f64 = -0.177_596_771_314_338_3;
    const J1_5: f64 = -0.327_579_137_591_465_2;

    #[test]
    fn direct_examples() {
        assert!((j0_direct(&pr(2, 1), Vec2::ZERO, &spec()).unwrap() - 1.0).abs() < 1e-10);
        assert!((j0_direct(&pr(2, 3), Vec2::ZERO, &spec()).unwrap() - 4.5).abs() < 1e-9);
        assert!((j0_direct(&pr(2, 1), Vec2::new(5.0, 0.0), &spec()).unwrap() - J0_5).abs() < 1e-9);
    }

    #[test]
    fn oscillatory_examples() {
        let a = pr(2, 3);
        assert!((j0_oscillatory(&pr(2, 1), Vec2::new(5.0, 0.0), &spec()).unwrap() - J0_5).abs() < 1e-9);
        assert!((j0_oscillatory(&a, Vec2::ZERO, &spec()).unwrap() - 4.5).abs() < 1e-9);
        let eta = at(&a, 5.0, FRAC_PI_4);
        let d = j0_direct(&a, eta, &spec()).unwrap();
        let o = j0_oscillatory(&a, eta, &spec()).unwrap();
        assert!((d - o).abs() < 1e-8, "{d} vs {o}");
        assert!(matches!(j0_oscillatory(&pr(5, 1), eta, &spec()), Err(Error::Domain(_))));
    }

    #[test]
    fn non_integer_two_over_p() {
        for p in [pr(4, 5), pr(3, 1), pr(3, 10)] {
            for (rho, phi) in [(0.0, 0.0), (3.0, 0.4), (17.0, 1.1)] {
                let eta = at(&p, rho, phi);
                let d = j0_direct(&p, eta, &spec()).unwrap();
                let o = j0_oscillatory(&p, eta, &spec()).unwrap();
                assert!((d - o).abs() < 1e-8, "p = {}, ρ = {rho}: {d} vs {o}", p.p);
            }
        }
    }

    #[test]
    fn odd_examples() {
        let a = pr(2, 3);
        assert!((j0_odd(&a, Vec2::ZERO, &spec()).unwrap() - 4.5).abs() < 1e-9);
        let eta = at(&a, 20.0, FRAC_PI_4);
        let od = j0_odd(&a, eta, &spec()).unwrap();
        let os = j0_oscillatory(&a, eta, &spec()).unwrap();
        assert!((od - os).abs() < 1e-8);
        let b = pr(2, 5);
        let eta = at(&b, 10.0, 3.0 * FRAC_PI_4);
        let od = j0_odd(&b, eta, &spec()).unwrap();
        let d = j0_direct(&b, eta, &spec()).unwrap();
        assert!((od - d).abs() < 1e-8, "{od} vs {d}");
        assert!(matches!(j0_odd(&pr(1, 2), eta, &spec()), Err(Error::Domain(_))));
    }

    #[test]
    fn omega_examples() {
        let one = BesselOrder::new(1.0).unwrap();
        assert_eq!(j_omega(&pr(2, 3), one, Vec2::ZERO, &spec()).unwrap(), 0.0);
        let v = j_omega(&pr(2, 1), one, Vec2::new(5.0, 0.0), &spec()).unwrap();
        assert!((v - J1_5).abs() < 1e-9, "{v}");
        let a = pr(2, 3);
        let eta = at(&a, 2.0, FRAC_PI_4);
        let i = j_omega(&a, one, eta, &spec()).unwrap();
        let s = j_omega_series(&a, one, eta, &SeriesSpec::default()).unwrap();
        assert!((i - s).abs() < 1e-7, "{i} vs {s}");
    }

    #[test]
    fn series_examples() {
        let two = pr(2, 1);
        let z = BesselOrder::ZERO;
        assert!((j_omega_series(&two, z, Vec2::ZERO, &SeriesSpec::default()).unwrap() - 1.0).abs() < 1e-15);
        let v = j_omega_series(&two, z, Vec2::new(1.0, 0.0), &SeriesSpec::default()).unwrap();
        assert!((v - 0.765_197_686_557_966_6).abs() < 1e-14);
        let a = pr(2, 3);
        let w2 = BesselOrder::new(2.0).unwrap();
        let x = Vec2::new(0.5, 0.5);
        let s = j_omega_series(&a, w2, x, &SeriesSpec::default()).unwrap();
        let i = j_omega(&a, w2, x, &spec()).unwrap();
        assert!((s - i).abs() < 1e-7, "{s} vs {i}");
    }

    #[test]
    fn series_refuses_huge_arguments() {
        let r = j_omega_series(&pr(2, 1), BesselOrder::ZERO, Vec2::new(80.0, 0.0), &SeriesSpec::default());
        assert!(matches!(r, Err(Error::Truncation { .. })), "{r:?}");
        let r = j_omega_series(&pr(2, 1), BesselOrder::ZERO, Vec2::new(10.0, 0.0), &SeriesSpec { max_k: 3, term_tol: 1e-14 });
        assert!(matches!(r, Err(Error::Truncation { .. })));
    }

    #[test]
    fn ratio_at_origin() {
        assert!((j_ratio_at_origin(&pr(2, 1), BesselOrder::ZERO) - 1.0).abs() < 1e-15);
        assert!((j_ratio_at_origin(&pr(2, 1), BesselOrder::new(1.0).unwrap()) - 0.5).abs() < 1e-15);
        assert!((j_ratio_at_origin(&pr(2, 3), BesselOrder::ZERO) - 4.5).abs() < 1e-13);
    }

    #[test]
    fn continuity_at_origin() {
        for p in [pr(2, 1), pr(2, 3), pr(1, 2)] {
            for w in [0.5, 1.0, 2.5] {
                let om = BesselOrder::new(w).unwrap();
                let u = at(&p, 1.0, 0.6);
                let eps = 1e-3;
                let v = j_omega(&p, om, u.scale(eps), &spec()).unwrap() / eps.powf(w);
                let lim = j_ratio_at_origin(&p, om);
                assert!((v - lim).abs() < 1e-4 * lim.max(1.0), "p = {}, ω = {w}: {v} vs {lim}", p.p);
            }
        }
    }

    #[test]
    fn representation_names_round_trip() {
        for r in [
            Representation::Direct,
            Representation::Oscillatory,
            Representation::Odd,
            Representation::Series,
            Representation::Classical,
        ] {
            assert_eq!(r.name().parse::<Representation>().unwrap(), r);
        }
        assert!("bogus".parse::<Representation>().is_err());
    }
}
