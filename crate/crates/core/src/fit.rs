//! Ordinary least-squares power-law fits on log-log data.

use serde::Serialize;

use crate::error::{Error, Result};

/// Minimum number of points and decades a fit must cover.
pub const MIN_POINTS: usize = 8;
pub const MIN_DECADES: f64 = 1.5;

/// `log|y| ≈ intercept + slope·log x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_se: f64,
    pub rho_range: (f64, f64),
    pub n_points: usize,
    /// Set when `y` is a supremum over a set of directions.
    pub sup_mode: bool,
}

impl DecayFit {
    /// Fitted value at `x`.
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Fits `|y| ~ C·x^slope`. Requires at least [`MIN_POINTS`] points spanning
/// [`MIN_DECADES`] decades, all with `x > 0` and `y ≠ 0`.
pub fn fit_power_law(x: &[f64], y: &[f64], sup_mode: bool) -> Result<DecayFit> {
    if x.len() != y.len() {
        return Err(Error::domain("fit: x and y differ in length"));
    }
    if x.len() < MIN_POINTS {
        return Err(Error::domain(format!("fit: need ≥ {MIN_POINTS} points, got {}", x.len())));
    }
    if x.iter().any(|v| !(*v > 0.0) || !v.is_finite()) || y.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::domain("fit: x must be positive and y nonzero, both finite"));
    }
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if (hi / lo).log10() < MIN_DECADES - 1e-12 {
        return Err(Error::domain(format!("fit: x spans {:.3} decades, need ≥ {MIN_DECADES}", (hi / lo).log10())));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    let (slope, intercept, residual_se) = ols(&lx, &ly);
    Ok(DecayFit { slope, intercept, residual_se, rho_range: (lo, hi), n_points: x.len(), sup_mode })
}

/// Plain OLS line `y = a + b·x`; returns `(b, a, residual standard error)`.
pub fn ols(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let dof = (x.len() as f64 - 2.0).max(1.0);
    (slope, intercept, (ssr / dof).sqrt())
}

/// `n` points geometrically spaced from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo * (r * i as f64).exp() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_power_law() {
        let x = geometric_grid(20.0, 2000.0, 12);
        let y: Vec<f64> = x.iter().map(|r| 3.0 * r.powf(-0.5)).collect();
        let f = fit_power_law(&x, &y, false).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-11);
        assert!(f.residual_se < 1e-12);
        assert!((f.predict(100.0) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn rejects_short_or_narrow_data() {
        let x = geometric_grid(1.0, 10.0, 12);
        let y = vec![1.0; 12];
        assert!(fit_power_law(&x, &y, false).is_err());
        let x = geometric_grid(1.0, 1000.0, 5);
        assert!(fit_power_law(&x, &[1.0; 5], false).is_err());
    }

    proptest! {
        #[test]
        fn recovers_any_exponent(q in -3.0f64..3.0, c in 0.01f64..100.0, lo in 0.1f64..10.0) {
            let x = geometric_grid(lo, lo * 1000.0, 10);
            let y: Vec<f64> = x.iter().map(|r| c * r.powf(q)).collect();
            let f = fit_power_law(&x, &y, false).unwrap();
            prop_assert!((f.slope - q).abs() < 1e-12);
        }
    }
}
