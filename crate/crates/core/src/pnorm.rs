//! p-norm geometry on ℝ², the `(|η|_p, φ)` parametrization and Gamma
//! function utilities.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

const INTEGRALITY_TOL: f64 = 1e-12;

/// The exponent `p > 0` together with the derived quantities every other
/// module needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PExponent {
    pub p: f64,
    pub two_over_p: f64,
    pub gamma_1p: f64,
    pub gamma_2p: f64,
    pub two_over_p_is_integer: bool,
    pub two_over_p_is_odd_integer: bool,
}

impl PExponent {
    /// Builds the exponent from a float. Integrality of `2/p` is decided with
    /// an absolute tolerance of `1e-12`.
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 {
            return Err(Error::domain(format!("p must be positive and finite, got {p}")));
        }
        let two_over_p = 2.0 / p;
        let nearest = two_over_p.round();
        let is_int = (two_over_p - nearest).abs() < INTEGRALITY_TOL;
        let is_odd = is_int && (nearest as i64).rem_euclid(2) == 1;
        Self::assemble(p, is_int, is_odd)
    }

    /// Builds `p = num/den` and decides integrality of `2/p = 2·den/num`
    /// on the rational, so `p = 2/3` gets `2/p = 3` exactly.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::domain(format!("p = {num}/{den} must be positive")));
        }
        let p = num as f64 / den as f64;
        let twice = 2 * den as u128;
        let is_int = twice.is_multiple_of(num as u128);
        let is_odd = is_int && (twice / num as u128) % 2 == 1;
        Self::assemble(p, is_int, is_odd)
    }

    fn assemble(p: f64, is_int: bool, is_odd: bool) -> Result<Self> {
        let two_over_p = 2.0 / p;
        let gamma_1p = gamma_fn(1.0 / p)?;
        let gamma_2p = gamma_fn(two_over_p)?;
        if !gamma_1p.is_finite() || !gamma_2p.is_finite() {
            return Err(Error::domain(format!("Γ(1/p) overflows for p = {p}")));
        }
        Ok(PExponent {
            p,
            two_over_p,
            gamma_1p,
            gamma_2p,
            two_over_p_is_integer: is_int,
            two_over_p_is_odd_integer: is_odd,
        })
    }

    /// `2/p` as an integer, when it is one.
    pub fn two_over_p_int(&self) -> Option<u32> {
        self.two_over_p_is_integer.then(|| self.two_over_p.round() as u32)
    }

    /// True when `p` is (numerically) exactly 2.
    pub fn is_circle(&self) -> bool {
        self.two_over_p_int() == Some(1)
    }

    /// `(2/p)² / Γ(2/p)`: the value of `J_0^[p]` at the origin and its global bound.
    pub fn origin_value(&self) -> f64 {
        self.two_over_p * self.two_over_p / self.gamma_2p
    }

    /// `(2/p)·Γ²(1/p)/Γ(2/p)`, the area of the unit p-ball.
    pub fn unit_ball_area(&self) -> f64 {
        self.two_over_p * self.gamma_1p * self.gamma_1p / self.gamma_2p
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// Accepts either a decimal (`"0.4"`) or a ratio (`"2/5"`). Ratios of
/// integers are handled by [`PExponent::from_ratio`].
impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u64 = num
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad numerator in p = {s:?}")))?;
            let den: u64 = den
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad denominator in p = {s:?}")))?;
            return PExponent::from_ratio(num, den);
        }
        if let Ok(n) = s.parse::<u64>() {
            return PExponent::from_ratio(n, 1);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::domain(format!("cannot parse p from {s:?}")))?;
        PExponent::new(p)
    }
}

/// A point of ℝ² (η, x, ξ or a lattice point).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    pub fn new(x1: f64, x2: f64) -> Self {
        Vec2 { x1, x2 }
    }

    pub fn scale(self, k: f64) -> Self {
        Vec2::new(self.x1 * k, self.x2 * k)
    }

    pub fn is_zero(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

/// `(ρ, φ)` with `ρ = |η|_p` and `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PPolar {
    pub rho: f64,
    pub phi: f64,
}

impl PPolar {
    /// Canonicalizes `phi` into `[0, 2π)`.
    pub fn new(rho: f64, phi: f64) -> Result<Self> {
        if !(rho >= 0.0) || !rho.is_finite() || !phi.is_finite() {
            return Err(Error::domain(format!("invalid polar pair ({rho}, {phi})")));
        }
        Ok(PPolar { rho, phi: canonical_angle(phi) })
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn canonical_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `(|v₁|^p + |v₂|^p)^{1/p}`.
pub fn p_norm(v: Vec2, p: &PExponent) -> f64 {
    let (a, b) = (v.x1.abs(), v.x2.abs());
    if a == 0.0 && b == 0.0 {
        return 0.0;
    }
    // Factor out the larger component to avoid overflow for tiny p.
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    big * (1.0 + (small / big).powf(p.p)).powf(1.0 / p.p)
}

/// `|v|_p^p`, the quantity the lattice sets are cut by.
pub fn p_norm_pow(v: Vec2, p: &PExponent) -> f64 {
    v.x1.abs().powf(p.p) + v.x2.abs().powf(p.p)
}

/// `η₁ = sgn(cos φ)ρ|cos φ|^{2/p}`, `η₂ = sgn(sin φ)ρ|sin φ|^{2/p}`.
pub fn polar_to_cartesian(pol: PPolar, p: &PExponent) -> Vec2 {
    let (s, c) = pol.phi.sin_cos();
    Vec2::new(
        c.signum() * pol.rho * c.abs().powf(p.two_over_p),
        s.signum() * pol.rho * s.abs().powf(p.two_over_p),
    )
}

/// Inverse of [`polar_to_cartesian`].
pub fn cartesian_to_polar(v: Vec2, p: &PExponent) -> Result<PPolar> {
    if v.is_zero() {
        return Err(Error::domain("the origin has no angle"));
    }
    if !v.x1.is_finite() || !v.x2.is_finite() {
        return Err(Error::domain("non-finite point"));
    }
    let rho = p_norm(v, p);
    let half_p = p.p / 2.0;
    let c = v.x1.signum() * (v.x1.abs() / rho).powf(half_p);
    let s = v.x2.signum() * (v.x2.abs() / rho).powf(half_p);
    let c = if v.x1 == 0.0 { 0.0 } else { c };
    let s = if v.x2 == 0.0 { 0.0 } else { s };
    Ok(PPolar { rho, phi: canonical_angle(s.atan2(c)) })
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    // z here is the shifted argument (Γ(z+1) form).
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// Γ(z) for real `z > 0`.
pub fn gamma_fn(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("gamma_fn needs z > 0, got {z}")));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: f64) -> f64 {
    if z < 0.5 {
        return PI / ((PI * z).sin() * gamma_unchecked(1.0 - z));
    }
    if z == z.floor() && z <= 23.0 {
        // Exact factorials for small integers.
        return (1..z as u64).map(|k| k as f64).product();
    }
    if z > 171.7 {
        return f64::INFINITY;
    }
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    // Split t^{x+1/2} so large arguments don't overflow before e^{−t} applies.
    let half_pow = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half_pow * ((-t).exp() * half_pow) * lanczos_sum(x)
}

/// ln Γ(z) for `z > 0`; stays finite where Γ overflows.
pub fn ln_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("ln_gamma needs z > 0, got {z}")));
    }
    if z < 0.5 {
        return Ok((PI / (PI * z).sin()).ln() - ln_gamma(1.0 - z)?);
    }
    if z < 20.0 {
        return Ok(gamma_unchecked(z).ln());
    }
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln())
}
