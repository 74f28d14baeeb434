//! Classical Bessel functions `J_ν(x)` of real order `ν ≥ 0` and argument
//! `x ≥ 0`; the `p = 2` member of the generalized family.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::pnorm::ln_gamma;
use crate::quadrature::{integrate_adaptive, integrate_oscillatory, QuadratureSpec};

/// `J_ν(x)`, absolute accuracy around 1e−13.
///
/// Small arguments use the power series, larger ones Schläfli's integral
/// `J_ν(x) = (1/π)∫₀^π cos(νθ − x sin θ)dθ − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt} dt`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() || !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("bessel_j needs ν ≥ 0, x ≥ 0 finite; got ({nu}, {x})")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x <= 8.0 || x * x / 4.0 < 2.0 * (nu + 1.0) {
        return Ok(power_series(nu, x));
    }
    schlaefli(nu, x)
}

fn power_series(nu: f64, x: f64) -> f64 {
    let q = -x * x / 4.0;
    let lead = (nu * (x / 2.0).ln() - ln_gamma(nu + 1.0).expect("ν + 1 > 0")).exp();
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while k < 500.0 {
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && k > 2.0 {
            break;
        }
        k += 1.0;
    }
    lead * sum
}

fn schlaefli(nu: f64, x: f64) -> Result<f64> {
    let spec = QuadratureSpec::with_tol(5e-14);
    let main = integrate_oscillatory(|t| nu * t / x - t.sin(), |_| 1.0 / PI, x, 0.0, PI, &spec)?
        .require("Schläfli integral, oscillatory part")?;
    let s = (nu * PI).sin();
    if s == 0.0 || nu.fract() == 0.0 {
        return Ok(main.value.re);
    }
    // e^{−x sinh t} < 1e−300 beyond this point.
    let t_max = (700.0 / x).asinh();
    let tail = integrate_adaptive(|t: f64| (-x * t.sinh() - nu * t).exp(), 0.0, t_max, &spec)?
        .require("Schläfli integral, exponential part")?;
    Ok(main.value.re - s / PI * tail.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // Abramowitz & Stegun tables.
        let cases = [
            (0.0, 1.0, 0.765_197_686_557_966_6),
            (0.0, 5.0, -0.177_596_771_314_338_3),
            (1.0, 5.0, -0.327_579_137_591_465_2),
            (0.0, 10.0, -0.245_935_764_451_348_3),
            (1.0, 10.0, 0.043_472_746_168_861_44),
            (0.0, 50.0, 0.055_812_327_669_251_86),
            (2.0, 20.0, -0.160_341_351_922_998_15),
            (0.5, 3.0, 0.065_008_182_877_375_8),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j(nu, x).unwrap();
            assert!((got - want).abs() < 1e-12, "J_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn half_integer_closed_form() {
        // J_{1/2}(x) = √(2/(πx)) sin x, J_{3/2}(x) = √(2/(πx))(sin x/x − cos x)
        for x in [0.3, 4.0, 9.5, 33.0, 120.0] {
            let c = (2.0 / (PI * x)).sqrt();
            let j12 = bessel_j(0.5, x).unwrap();
            assert!((j12 - c * x.sin()).abs() < 1e-12, "x = {x}");
            let j32 = bessel_j(1.5, x).unwrap();
            assert!((j32 - c * (x.sin() / x - x.cos())).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn recurrence_across_branches() {
        // J_{ν−1} + J_{ν+1} = (2ν/x) J_ν, with orders straddling the series/integral switch.
        for (nu, x) in [(1.3, 7.9), (1.3, 8.1), (2.8, 15.0), (3.5, 60.0)] {
            let l = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
            let r = 2.0 * nu / x * bessel_j(nu, x).unwrap();
            assert!((l - r).abs() < 1e-12, "ν = {nu}, x = {x}");
        }
    }
}
