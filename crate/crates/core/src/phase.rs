//! Phase functions of the oscillatory representation, their stationary
//! points, and exact derivatives.
//!
//! Every phase used here has the form `A cos^N θ + B sin^N θ` on
//! `[0, π/2]` with `N = 2/p`:
//!
//! | kind      | A                     | B                    |
//! |-----------|-----------------------|----------------------|
//! | `FAxis`   | `δ`                   | `1`                  |
//! | `GAxis`   | `−1`                  | `δ`                  |
//! | `FCompact`| `sgn(cos φ)|cos φ|^N` | `sgn(sin φ)|sin φ|^N`|
//! | `GCompact`| `−sgn(sin φ)|sin φ|^N`| `sgn(cos φ)|cos φ|^N`|
//!
//! so that `phase′ = −(N/2) sin 2θ · U` with
//! `U = A cos^{N−2}θ − B sin^{N−2}θ` (this is `u_{1,δ}` for `FAxis`).
//! Higher derivatives follow from the Leibniz rule on `sin 2θ · U` and the
//! closed recurrence `B_k″ = c_k(−c_k B_k + (c_k − 1) B_{k+1})` for the
//! family `B_k = α cos^{c_k}θ + β sin^{c_k}θ`, `c_k = N − 2k`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{fit_power_law, DecayFit};
use crate::pnorm::{canonical_angle, PExponent};

/// Tolerance for a stationary point: `|phase′(θ)| ≤ STATIONARY_TOL`.
pub const STATIONARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhaseKind {
    /// `f_{p,φ}`, parameter `φ`.
    FCompact,
    /// `g_{p,φ}`, parameter `φ`.
    GCompact,
    /// `F_{p,δ} = δ cos^N θ + sin^N θ`, parameter `δ`.
    FAxis,
    /// `G_{p,δ} = δ sin^N θ − cos^N θ`, parameter `δ`.
    GAxis,
}

impl PhaseKind {
    pub fn is_axis(self) -> bool {
        matches!(self, PhaseKind::FAxis | PhaseKind::GAxis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseFamily {
    pub kind: PhaseKind,
    pub p: PExponent,
    pub parameter: f64,
}

impl PhaseFamily {
    pub fn new(kind: PhaseKind, p: PExponent, parameter: f64) -> Result<Self> {
        if !parameter.is_finite() {
            return Err(Error::domain("phase parameter must be finite"));
        }
        let parameter = if kind.is_axis() {
            if parameter < 0.0 {
                return Err(Error::domain(format!("δ must be ≥ 0, got {parameter}")));
            }
            parameter
        } else {
            canonical_angle(parameter)
        };
        Ok(PhaseFamily { kind, p, parameter })
    }

    pub fn f_axis(p: PExponent, delta: f64) -> Result<Self> {
        Self::new(PhaseKind::FAxis, p, delta)
    }
    pub fn g_axis(p: PExponent, delta: f64) -> Result<Self> {
        Self::new(PhaseKind::GAxis, p, delta)
    }
    pub fn f_compact(p: PExponent, phi: f64) -> Result<Self> {
        Self::new(PhaseKind::FCompact, p, phi)
    }
    pub fn g_compact(p: PExponent, phi: f64) -> Result<Self> {
        Self::new(PhaseKind::GCompact, p, phi)
    }

    /// `(A, B)` with `phase = A cos^N θ + B sin^N θ`.
    pub fn coefficients(&self) -> (f64, f64) {
        let n = self.p.two_over_p;
        let signed_pow = |x: f64| if x == 0.0 { 0.0 } else { x.signum() * x.abs().powf(n) };
        match self.kind {
            PhaseKind::FAxis => (self.parameter, 1.0),
            PhaseKind::GAxis => (-1.0, self.parameter),
            PhaseKind::FCompact => {
                let (s, c) = self.parameter.sin_cos();
                (signed_pow(c), signed_pow(s))
            }
            PhaseKind::GCompact => {
                let (s, c) = self.parameter.sin_cos();
                (-signed_pow(s), signed_pow(c))
            }
        }
    }

    fn powers(&self) -> Pow {
        Pow { n: self.p.two_over_p, int: self.p.two_over_p_int().map(|k| k as i32) }
    }
}

/// `x^c`, with integer powers (and hence analytic continuation past the
/// interval ends) when the exponent is integral.
#[derive(Debug, Clone, Copy)]
struct Pow {
    n: f64,
    int: Option<i32>,
}

impl Pow {
    fn pow(&self, x: f64, shift: i32) -> f64 {
        match self.int {
            Some(k) => x.powi(k + shift),
            None => x.powf(self.n + shift as f64),
        }
    }
}

/// `A cos^N θ + B sin^N θ`. `θ` should lie in `[0, π/2]`; for integral `N`
/// values outside continue analytically.
pub fn phase_value(fam: &PhaseFamily, theta: f64) -> f64 {
    let (a, b) = fam.coefficients();
    let pw = fam.powers();
    let (s, c) = theta.sin_cos();
    a * pw.pow(c, 0) + b * pw.pow(s, 0)
}

fn first_derivative(fam: &PhaseFamily, theta: f64) -> f64 {
    let (a, b) = fam.coefficients();
    let pw = fam.powers();
    let n = pw.n;
    let (s, c) = theta.sin_cos();
    let term_a = if a == 0.0 { 0.0 } else { -n * a * pw.pow(c, -1) * s };
    let term_b = if b == 0.0 { 0.0 } else { n * b * pw.pow(s, -1) * c };
    term_a + term_b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMode {
    Exact,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeValue {
    pub value: f64,
    pub mode: DerivativeMode,
    /// Zero in exact mode; a step-halving estimate otherwise.
    pub error_estimate: f64,
}

/// True when the `n`-th derivative is produced by the exact recurrence.
pub fn exact_mode_available(p: &PExponent, n: u32) -> bool {
    matches!(p.two_over_p_int(), Some(k) if n <= k)
}

/// `n`-th derivative of the phase at `θ` (`n ≥ 1`).
pub fn phase_derivative(fam: &PhaseFamily, theta: f64, n: u32) -> Result<DerivativeValue> {
    if n == 0 {
        return Err(Error::domain("derivative order must be ≥ 1"));
    }
    if !theta.is_finite() {
        return Err(Error::domain("θ must be finite"));
    }
    if exact_mode_available(&fam.p, n) {
        let value = if n == 1 { first_derivative(fam, theta) } else { exact_derivative(fam, theta, n) };
        return Ok(DerivativeValue { value, mode: DerivativeMode::Exact, error_estimate: 0.0 });
    }
    finite_difference(fam, theta, n)
}

/// Linear combination `Σ a_k B_k + Σ b_k B_k′` (index `k ≥ 1`).
#[derive(Debug, Clone, Default)]
struct UExpr {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl UExpr {
    fn base() -> Self {
        UExpr { a: vec![0.0, 1.0], b: vec![0.0, 0.0] }
    }

    fn derivative(&self, n: f64) -> Self {
        let len = self.a.len().max(self.b.len()) + 1;
        let mut out = UExpr { a: vec![0.0; len], b: vec![0.0; len] };
        for (k, &ak) in self.a.iter().enumerate() {
            if ak != 0.0 {
                out.b[k] += ak;
            }
        }
        for (k, &bk) in self.b.iter().enumerate() {
            if bk == 0.0 {
                continue;
            }
            let c = n - 2.0 * k as f64;
            out.a[k] += -c * c * bk;
            let up = c * (c - 1.0);
            if up != 0.0 {
                out.a[k + 1] += up * bk;
            }
        }
        out
    }
}

/// Values of `B_k` and `B_k′` at one angle.
struct Basis {
    alpha: f64,
    beta: f64,
    n: f64,
    int: bool,
    s: f64,
    c: f64,
}

impl Basis {
    fn pow(&self, x: f64, e: f64) -> f64 {
        if self.int {
            x.powi(e.round() as i32)
        } else {
            x.powf(e)
        }
    }
    fn b(&self, k: usize) -> f64 {
        let e = self.n - 2.0 * k as f64;
        let mut v = 0.0;
        if self.alpha != 0.0 {
            v += self.alpha * self.pow(self.c, e);
        }
        if self.beta != 0.0 {
            v += self.beta * self.pow(self.s, e);
        }
        v
    }
    fn db(&self, k: usize) -> f64 {
        let e = self.n - 2.0 * k as f64;
        if e == 0.0 {
            return 0.0;
        }
        let mut v = 0.0;
        if self.alpha != 0.0 {
            v -= self.alpha * self.pow(self.c, e - 1.0) * self.s;
        }
        if self.beta != 0.0 {
            v += self.beta * self.pow(self.s, e - 1.0) * self.c;
        }
        e * v
    }
    fn eval(&self, u: &UExpr) -> f64 {
        let mut v = 0.0;
        for (k, &ak) in u.a.iter().enumerate() {
            if ak != 0.0 {
                v += ak * self.b(k);
            }
        }
        for (k, &bk) in u.b.iter().enumerate() {
            if bk != 0.0 {
                v += bk * self.db(k);
            }
        }
        v
    }
}

/// Coefficients `(a_j, b_j)` with
/// `phase^{(n)} = −(N/2) Σ_j (a_j cos 2θ + b_j sin 2θ) U^{(j)}`.
/// Generated by repeated differentiation, starting from `sin 2θ · U`.
pub fn leibniz_coefficients(n: u32) -> Vec<(f64, f64)> {
    let mut coef = vec![(0.0, 1.0)];
    for _ in 1..n {
        let mut next = vec![(0.0, 0.0); coef.len() + 1];
        for (j, &(a, b)) in coef.iter().enumerate() {
            // d/dθ[cos 2θ U^{(j)}] = −2 sin 2θ U^{(j)} + cos 2θ U^{(j+1)}
            // d/dθ[sin 2θ U^{(j)}] =  2 cos 2θ U^{(j)} + sin 2θ U^{(j+1)}
            next[j].0 += 2.0 * b;
            next[j].1 += -2.0 * a;
            next[j + 1].0 += a;
            next[j + 1].1 += b;
        }
        coef = next;
    }
    coef
}

fn exact_derivative(fam: &PhaseFamily, theta: f64, n: u32) -> f64 {
    let (a, b) = fam.coefficients();
    // Exact integer N so the recurrence terminates (c_k(c_k − 1) hits 0 exactly).
    let nn = fam.p.two_over_p_int().map_or(fam.p.two_over_p, f64::from);
    let (s, c) = theta.sin_cos();
    let basis = Basis { alpha: a, beta: -b, n: nn, int: fam.p.two_over_p_is_integer, s, c };
    let (s2, c2) = (2.0 * theta).sin_cos();
    let coef = leibniz_coefficients(n);
    let mut u = UExpr::base();
    let mut total = 0.0;
    for (j, &(aj, bj)) in coef.iter().enumerate() {
        if j > 0 {
            u = u.derivative(nn);
        }
        if aj == 0.0 && bj == 0.0 {
            continue;
        }
        total += (aj * c2 + bj * s2) * basis.eval(&u);
    }
    -0.5 * nn * total
}

/// Fornberg weights for the `m`-th derivative at 0 on the given offsets.
pub fn fornberg_weights(offsets: &[f64], m: usize) -> Vec<f64> {
    let n = offsets.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Order-4 finite difference of `f^{(n)}` at `x` with step `h`, using a
/// central stencil shifted into `[lo, hi]` when needed.
pub fn fd_order4<F: Fn(f64) -> f64>(f: &F, x: f64, n: u32, h: f64, lo: f64, hi: f64) -> f64 {
    let half = ((n as usize).div_ceil(2) + 1) as i64;
    let mut offs: Vec<i64> = (-half..=half).collect();
    let mut shift = 0i64;
    while x + (offs[0] + shift) as f64 * h < lo {
        shift += 1;
    }
    while x + (*offs.last().unwrap() + shift) as f64 * h > hi {
        shift -= 1;
    }
    if shift != 0 {
        // One-sided stencils need one more point for the same order.
        offs.push(offs.last().unwrap() + 1);
        if shift < 0 {
            for o in offs.iter_mut() {
                *o -= 1;
            }
        }
    }
    let nodes: Vec<f64> = offs.iter().map(|&o| (o + shift) as f64).collect();
    let w = fornberg_weights(&nodes, n as usize);
    let mut acc = 0.0;
    for (xi, wi) in nodes.iter().zip(&w) {
        acc += wi * f(x + xi * h);
    }
    acc / h.powi(n as i32)
}

fn finite_difference(fam: &PhaseFamily, theta: f64, n: u32) -> Result<DerivativeValue> {
    let f = |t: f64| phase_value(fam, t);
    // Roughly balances truncation h⁴ against rounding ε/hⁿ.
    let h = f64::EPSILON.powf(1.0 / (n as f64 + 4.0)) * 0.5;
    let (lo, hi) = if fam.p.two_over_p_is_integer { (f64::NEG_INFINITY, f64::INFINITY) } else { (0.0, FRAC_PI_2) };
    let d1 = fd_order4(&f, theta, n, h, lo, hi);
    let d2 = fd_order4(&f, theta, n, 2.0 * h, lo, hi);
    if !d1.is_finite() {
        return Err(Error::domain(format!("finite difference undefined at θ = {theta}")));
    }
    Ok(DerivativeValue { value: d1, mode: DerivativeMode::FiniteDifference, error_estimate: (d1 - d2).abs() })
}

/// `u_{k,δ}(θ) = δ cos^{N−2k}θ − sin^{N−2k}θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UFunction {
    pub k: u32,
    pub p: PExponent,
    pub delta: f64,
}

impl UFunction {
    pub fn value(&self, theta: f64) -> f64 {
        let e = self.p.two_over_p - 2.0 * self.k as f64;
        let (s, c) = theta.sin_cos();
        self.delta * c.powf(e) - s.powf(e)
    }
}

/// `v_δ(θ) = δ sin^{N−2}θ + cos^{N−2}θ`, the factor in `G′_{p,δ}`.
pub fn v_delta(p: &PExponent, delta: f64, theta: f64) -> f64 {
    let e = p.two_over_p - 2.0;
    let (s, c) = theta.sin_cos();
    delta * s.powf(e) + c.powf(e)
}

/// `φ₀` with `tan φ₀ = tan^{1/(1−p)} φ`; the interior stationary point of
/// `f_{p,φ}` is `π/2 − φ₀`.
pub fn stationary_phi0(p: &PExponent, phi: f64) -> Result<f64> {
    if !(p.p > 0.0 && p.p < 1.0) {
        return Err(Error::domain(format!("φ₀ is defined for 0 < p < 1, got p = {}", p.p)));
    }
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(Error::domain(format!("φ = {phi} must lie strictly inside (0, π/2)")));
    }
    let q = 1.0 / (1.0 - p.p);
    Ok((q * phi.tan().ln()).exp().atan())
}

/// `θ_δ` for `p = 2` (`tan θ_δ = δ`) or `0 < p < 1`
/// (`tan θ_δ = δ^{−p/(2(1−p))}`); the stationary point of `F_{p,δ}` is
/// `π/2 − θ_δ`.
pub fn stationary_theta_delta(p: &PExponent, delta: f64) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::domain(format!("δ must be positive, got {delta}")));
    }
    if p.is_circle() {
        return Ok(delta.atan());
    }
    if !(p.p > 0.0 && p.p < 1.0) {
        return Err(Error::domain(format!("θ_δ is defined for p = 2 or 0 < p < 1, got p = {}", p.p)));
    }
    let e = -p.p / (2.0 * (1.0 - p.p));
    Ok((e * delta.ln()).exp().atan())
}

/// `π/2 − θ_δ` computed without cancellation.
fn interior_axis_point(p: &PExponent, delta: f64) -> Result<f64> {
    if p.is_circle() {
        return Ok((1.0 / delta).atan());
    }
    let e = p.p / (2.0 * (1.0 - p.p));
    let _ = stationary_theta_delta(p, delta)?;
    Ok((e * delta.ln()).exp().atan())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryPointSet {
    pub points: Vec<f64>,
    pub endpoint_flags: Vec<bool>,
    /// True for points that move with `δ` (or `φ`).
    pub delta_dependent: Vec<bool>,
}

impl StationaryPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Refines a root of `phase′` near `guess` by bisection to width 1e−14.
fn refine(fam: &PhaseFamily, guess: f64) -> f64 {
    let d = |t: f64| first_derivative(fam, t);
    let d0 = d(guess);
    if d0 == 0.0 {
        return guess;
    }
    let mut w = 1e-13_f64.max(guess.abs() * 1e-12);
    let (mut lo, mut hi) = (guess, guess);
    let mut found = false;
    while w < 0.5 {
        lo = (guess - w).max(0.0);
        hi = (guess + w).min(FRAC_PI_2);
        if d(lo).signum() != d(hi).signum() {
            found = true;
            break;
        }
        w *= 4.0;
    }
    if !found {
        return guess;
    }
    let mut dlo = d(lo);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        let dm = d(mid);
        if dm == 0.0 {
            return mid;
        }
        if dm.signum() == dlo.signum() {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    [lo, mid, hi].into_iter().min_by(|a, b| d(*a).abs().total_cmp(&d(*b).abs())).unwrap()
}

/// The stationary points of the phase on `[0, π/2]`.
///
/// Supported: axis kinds for `p = 2` or `2/p ∈ ℕ, 2/p ≥ 3`; compact kinds
/// for `0 < p < 1` or `p = 2`. The case `p = 1` is excluded.
pub fn stationary_points(fam: &PhaseFamily) -> Result<StationaryPointSet> {
    let p = &fam.p;
    let supported = if fam.kind.is_axis() {
        p.is_circle() || matches!(p.two_over_p_int(), Some(k) if k >= 3)
    } else {
        p.is_circle() || (p.p > 0.0 && p.p < 1.0)
    };
    if !supported {
        return Err(Error::domain(format!("stationary points of {:?} are not supported at p = {}", fam.kind, p.p)));
    }
    let (a, b) = fam.coefficients();
    let mut pts: Vec<(f64, bool, bool)> = Vec::new();
    if p.is_circle() {
        // phase′ = −A sin θ + B cos θ
        if b == 0.0 {
            pts.push((0.0, true, false));
        }
        if a == 0.0 {
            pts.push((FRAC_PI_2, true, false));
        }
        if a != 0.0 && b != 0.0 && a.signum() == b.signum() {
            let guess = if fam.kind == PhaseKind::FAxis { interior_axis_point(p, fam.parameter)? } else { (b / a).atan() };
            pts.push((refine(fam, guess), false, true));
        }
    } else {
        // N > 2: sin 2θ factor pins both ends; interior root of
        // A cos^{N−2} = B sin^{N−2} when A, B share a sign.
        pts.push((0.0, true, false));
        pts.push((FRAC_PI_2, true, false));
        if a != 0.0 && b != 0.0 && a.signum() == b.signum() {
            let guess = match fam.kind {
                PhaseKind::FAxis => interior_axis_point(p, fam.parameter)?,
                PhaseKind::FCompact if fam.parameter > 0.0 && fam.parameter < FRAC_PI_2 => {
                    FRAC_PI_2 - stationary_phi0(p, fam.parameter)?
                }
                _ => ((a / b).ln() / (p.two_over_p - 2.0)).exp().atan(),
            };
            pts.push((refine(fam, guess), false, true));
        }
    }
    pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    for &(t, _, _) in &pts {
        let d = first_derivative(fam, t);
        if d.abs() > STATIONARY_TOL {
            return Err(Error::Consistency(format!("stationary point θ = {t} has |phase′| = {:e}", d.abs())));
        }
    }
    Ok(StationaryPointSet {
        points: pts.iter().map(|x| x.0).collect(),
        endpoint_flags: pts.iter().map(|x| x.1).collect(),
        delta_dependent: pts.iter().map(|x| x.2).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop25Regime {
    /// `n = 1`: identically zero.
    Zero,
    /// `1 < n < 2/p`: power law in `δ`.
    PowerLaw,
    /// `n = 2/p`: bounded above and away from zero.
    Band,
}

/// Behaviour of `F^{(n)}_{p,δ}(π/2 − θ_δ)` as `δ → 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop25Report {
    pub p: f64,
    pub n: u32,
    pub regime: Prop25Regime,
    /// `(N − n)/(N(1 − p))` for the power-law regime, 0 for the band.
    pub predicted_slope: Option<f64>,
    pub fit: Option<DecayFit>,
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
    pub min_abs: f64,
    pub max_abs: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Slope tolerance used for the exponent ledger.
pub const PROP25_SLOPE_TOL: f64 = 0.05;

/// Evaluates the exponent ledger of `F^{(n)}_{p,δ}` at its moving stationary
/// point over `delta_grid` and checks it against the predicted regime.
pub fn verify_prop25(p: &PExponent, n: u32, delta_grid: &[f64]) -> Result<Prop25Report> {
    let nn = match p.two_over_p_int() {
        Some(k) if k >= 3 => k,
        _ => return Err(Error::domain(format!("exponent ledger needs 2/p ∈ ℕ \\ {{1, 2}}, got 2/p = {}", p.two_over_p))),
    };
    if n < 1 || n > nn {
        return Err(Error::domain(format!("n must lie in [1, {nn}], got {n}")));
    }
    if delta_grid.iter().any(|d| !(*d > 0.0 && *d <= 0.1)) {
        return Err(Error::domain("δ grid values must lie in (0, 0.1]"));
    }
    let lo = delta_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = delta_grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if delta_grid.len() < 2 || (hi / lo).log10() < 2.0 - 1e-9 {
        return Err(Error::domain("δ grid must span at least two decades"));
    }
    let mut values = Vec::with_capacity(delta_grid.len());
    for &d in delta_grid {
        let fam = PhaseFamily::f_axis(*p, d)?;
        let t = refine(&fam, interior_axis_point(p, d)?);
        values.push(phase_derivative(&fam, t, n)?.value);
    }
    let min_abs = values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    let max_abs = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let nf = nn as f64;
    let (regime, predicted, fit, pass) = if n == 1 {
        (Prop25Regime::Zero, None, None, max_abs <= STATIONARY_TOL)
    } else {
        let fit = fit_power_law(delta_grid, &values, false)?;
        if n < nn {
            let q = (nf - n as f64) / (nf * (1.0 - p.p));
            (Prop25Regime::PowerLaw, Some(q), Some(fit), (fit.slope - q).abs() <= PROP25_SLOPE_TOL)
        } else {
            let ok = min_abs > 0.0 && max_abs.is_finite() && fit.slope.abs() <= PROP25_SLOPE_TOL;
            (Prop25Regime::Band, Some(0.0), Some(fit), ok)
        }
    };
    Ok(Prop25Report {
        p: p.p,
        n,
        regime,
        predicted_slope: predicted,
        fit,
        deltas: delta_grid.to_vec(),
        values,
        min_abs,
        max_abs,
        tolerance: PROP25_SLOPE_TOL,
        pass,
    })
}
