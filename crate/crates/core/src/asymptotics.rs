//! Decay-rate scans of `J_0^[p]` along radius grids, on compact direction
//! sets and uniformly over all directions.
//!
//! `|J_0^[p]|` oscillates in `ρ`, so each grid radius `ρ_k` is replaced by
//! the supremum over a window `[ρ_k, ρ_k + W)` that covers one oscillation
//! period (plus one parabolic-vertex refinement). The fit then uses the pairs
//! `(ρ*, |J(ρ*)|)` at the maximizer, which removes the bias of pairing a
//! window maximum with its left edge.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{fit_power_law, DecayFit};
use crate::gbessel::{hankel_remainder, j0_direct_estimate, j0_oscillatory_estimate, Representation};
use crate::phase::{phase_value, stationary_phi0, PhaseFamily};
use crate::pnorm::{canonical_angle, polar_to_cartesian, PExponent, PPolar, Vec2};
use crate::quadrature::QuadratureSpec;

/// Representations must agree to this before a point may enter a fit.
pub const EQUIVALENCE_TOL: f64 = 1e-8;
/// Smallest distance of a compact direction set from the axes.
pub const MIN_AXIS_MARGIN: f64 = 0.05;

/// Radii and directions of a scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanGrid {
    pub rho_values: Vec<f64>,
    pub phi_values: Vec<f64>,
    pub per_point_tolerance: f64,
}

impl ScanGrid {
    pub fn new(rho_values: Vec<f64>, phi_values: Vec<f64>, per_point_tolerance: f64) -> Result<Self> {
        if rho_values.is_empty() || rho_values.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::domain("scan radii must be positive and finite"));
        }
        if rho_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("scan radii must be strictly increasing"));
        }
        if phi_values.is_empty() || phi_values.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("scan needs at least one finite direction"));
        }
        if !(per_point_tolerance > 0.0) {
            return Err(Error::domain("per-point tolerance must be positive"));
        }
        Ok(ScanGrid { rho_values, phi_values, per_point_tolerance })
    }

    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec::with_tol(self.per_point_tolerance)
    }
}

/// One evaluated point; the row format of scan tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanSample {
    pub p: f64,
    pub rho: f64,
    pub phi: f64,
    pub value: f64,
    pub representation: Representation,
    pub error_estimate: f64,
}

/// Result of a decay scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayScan {
    pub fit: DecayFit,
    /// The maximizing sample for each grid radius.
    pub sup_points: Vec<ScanSample>,
    /// Every evaluated sample.
    pub samples: Vec<ScanSample>,
    /// Exponent `q` of the boundedness ratio `sup|J|·ρ^q`.
    pub boundedness_exponent: f64,
    /// Largest `sup|J|·ρ^q` over the grid.
    pub boundedness_ratio: f64,
    /// Log-log slope of `sup|J|·ρ^q` against `ρ` (≤ 0 means no growth).
    pub ratio_trend_slope: f64,
    /// Window length `W` used for the supremum.
    pub window: f64,
}

fn eta_at(p: &PExponent, rho: f64, phi: f64) -> Result<Vec2> {
    Ok(polar_to_cartesian(PPolar::new(rho, phi)?, p))
}

/// Representative of `φ` in `[0, π/4]` under the symmetries
/// `J(η₁, η₂) = J(±η₁, ±η₂) = J(η₂, η₁)`.
pub fn octant_representative(phi: f64) -> f64 {
    let r = canonical_angle(phi) % FRAC_PI_2;
    if r > FRAC_PI_4 {
        FRAC_PI_2 - r
    } else {
        r
    }
}

/// Full-angle direction grid: 64 angles per quadrant (axes included), plus
/// near-axis angles at offsets `{1e−3, 1e−2, 1e−1}` and at the angles
/// corresponding to `δ ∈ {1e−3, 1e−2, 1e−1}` in `η = (δλ, λ)`.
pub fn uniform_phi_grid(p: &PExponent) -> Vec<f64> {
    let mut v: Vec<f64> = (0..256).map(|k| k as f64 * TAU / 256.0).collect();
    for axis in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
        for off in [1e-3, 1e-2, 1e-1] {
            v.push(canonical_angle(axis + off));
            v.push(canonical_angle(axis - off));
        }
        for delta in [1e-3f64, 1e-2, 1e-1] {
            let off = delta.powf(p.p / 2.0).atan();
            v.push(canonical_angle(axis + off));
            v.push(canonical_angle(axis - off));
        }
    }
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Window length for a compact direction set: one period `2π/f*` of the
/// leading stationary-point term, where `f*` is the phase value at the
/// interior stationary point (the frequency of `J` in `ρ`).
fn compact_window(p: &PExponent, phis: &[f64]) -> Result<f64> {
    if p.is_circle() {
        return Ok(TAU);
    }
    let mut fmin = f64::INFINITY;
    for &phi in phis {
        let r = octant_representative(phi);
        let r = if r == 0.0 { MIN_AXIS_MARGIN } else { r };
        let fam = PhaseFamily::f_compact(*p, r)?;
        let fstar = phase_value(&fam, FRAC_PI_2 - stationary_phi0(p, r)?);
        fmin = fmin.min(fstar.abs());
    }
    Ok((TAU / fmin).clamp(TAU, 200.0))
}

struct Evaluated {
    rho_index: usize,
    sample_index: usize,
    sample: ScanSample,
}

fn eval_point(p: &PExponent, rho: f64, phi: f64, spec: &QuadratureSpec) -> Result<ScanSample> {
    let eta = eta_at(p, rho, octant_representative(phi))?;
    let q = j0_oscillatory_estimate(p, eta, spec).map_err(|e| annotate(e, rho, phi))?;
    Ok(ScanSample { p: p.p, rho, phi, value: q.value, representation: Representation::Oscillatory, error_estimate: q.error_estimate })
}

fn annotate(e: Error, rho: f64, phi: f64) -> Error {
    match e {
        Error::NonConvergence { value, error_estimate, context } => Error::NonConvergence {
            value,
            error_estimate,
            context: format!("{context} at ρ = {rho}, φ = {phi}"),
        },
        other => other,
    }
}

/// Windowed sup over `phis` for every grid radius, fitted in log-log.
fn windowed_scan(
    p: &PExponent,
    phis: &[f64],
    grid: &ScanGrid,
    window: f64,
    samples_per_window: usize,
    sup_mode: bool,
    q_ratio: f64,
) -> Result<DecayScan> {
    let spec = grid.spec();
    // Evaluate each symmetry class once.
    let mut reps: Vec<f64> = phis.iter().map(|&f| octant_representative(f)).collect();
    reps.sort_by(f64::total_cmp);
    reps.dedup();
    let m = samples_per_window;
    let tasks: Vec<(usize, usize, f64, f64)> = grid
        .rho_values
        .iter()
        .enumerate()
        .flat_map(|(k, &r0)| {
            let reps = &reps;
            (0..m).flat_map(move |i| reps.iter().map(move |&phi| (k, i, r0 + window * i as f64 / m as f64, phi)))
        })
        .collect();
    let evaluated: Vec<Evaluated> = tasks
        .par_iter()
        .map(|&(k, i, rho, phi)| {
            Ok(Evaluated { rho_index: k, sample_index: i, sample: eval_point(p, rho, phi, &spec)? })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sup_points = Vec::with_capacity(grid.rho_values.len());
    for k in 0..grid.rho_values.len() {
        let block: Vec<&Evaluated> = evaluated.iter().filter(|e| e.rho_index == k).collect();
        let best = block
            .iter()
            .max_by(|a, b| a.sample.value.abs().total_cmp(&b.sample.value.abs()))
            .expect("window has samples");
        let mut top = best.sample;
        // Parabolic vertex through the neighbours in ρ at the same direction.
        let i = best.sample_index;
        if i > 0 && i + 1 < m {
            let at = |j: usize| {
                block
                    .iter()
                    .find(|e| e.sample_index == j && e.sample.phi == top.phi)
                    .map(|e| e.sample.value.abs())
            };
            if let (Some(y0), Some(y1), Some(y2)) = (at(i - 1), at(i), at(i + 1)) {
                let h = window / m as f64;
                let denom = y0 - 2.0 * y1 + y2;
                if denom < 0.0 {
                    let shift = 0.5 * h * (y0 - y2) / denom;
                    if shift.abs() < h {
                        let v = eval_point(p, top.rho + shift, top.phi, &spec)?;
                        if v.value.abs() > top.value.abs() {
                            top = v;
                        }
                    }
                }
            }
        }
        check_equivalence(p, &top, &spec)?;
        sup_points.push(top);
    }
    let xs: Vec<f64> = sup_points.iter().map(|s| s.rho).collect();
    let ys: Vec<f64> = sup_points.iter().map(|s| s.value.abs()).collect();
    let fit = fit_power_law(&xs, &ys, sup_mode)?;
    let ratios: Vec<f64> = xs.iter().zip(&ys).map(|(r, y)| y * r.powf(q_ratio)).collect();
    let boundedness_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let ratio_trend_slope = fit_power_law(&xs, &ratios, sup_mode)?.slope;
    Ok(DecayScan {
        fit,
        sup_points,
        samples: evaluated.into_iter().map(|e| e.sample).collect(),
        boundedness_exponent: q_ratio,
        boundedness_ratio,
        ratio_trend_slope,
        window,
    })
}

/// Direct and oscillatory values must agree before a point is fitted.
fn check_equivalence(p: &PExponent, s: &ScanSample, spec: &QuadratureSpec) -> Result<()> {
    let eta = eta_at(p, s.rho, octant_representative(s.phi))?;
    let d = j0_direct_estimate(p, eta, spec).map_err(|e| annotate(e, s.rho, s.phi))?;
    if (d.value - s.value).abs() > EQUIVALENCE_TOL {
        return Err(Error::Consistency(format!(
            "representations disagree at ρ = {}, φ = {}: direct {} vs oscillatory {}",
            s.rho, s.phi, d.value, s.value
        )));
    }
    Ok(())
}

/// Samples per window used by the scans.
pub const SAMPLES_PER_WINDOW: usize = 12;

/// Compact-set decay scan: sup over `phi_set` (bounded away from the axes
/// by at least 0.05) of `|J_0^[p]|`, fitted against `ρ`. Expected slope
/// ≈ −1/2. Supports `0 < p < 1` and `p = 2`.
pub fn decay_scan_compact(p: &PExponent, phi_set: &[f64], grid: &ScanGrid) -> Result<DecayScan> {
    if !(p.is_circle() || (p.p > 0.0 && p.p < 1.0)) {
        return Err(Error::domain(format!("compact-set scans need 0 < p < 1 or p = 2, got p = {}", p.p)));
    }
    if phi_set.is_empty() {
        return Err(Error::domain("empty direction set"));
    }
    for &phi in phi_set {
        let r = canonical_angle(phi) % FRAC_PI_2;
        if r.min(FRAC_PI_2 - r) < MIN_AXIS_MARGIN - 1e-15 {
            return Err(Error::domain(format!("φ = {phi} is closer than {MIN_AXIS_MARGIN} to an axis")));
        }
    }
    let window = compact_window(p, phi_set)?;
    windowed_scan(p, phi_set, grid, window, SAMPLES_PER_WINDOW, phi_set.len() > 1, 0.5)
}

/// Uniform decay scan over a full-angle grid (see [`uniform_phi_grid`]).
/// `2/p` must be a natural number. The boundedness ratio uses `ρ^{p/2}`
/// (`ρ^{1/2}` at `p = 2`).
pub fn decay_scan_uniform(p: &PExponent, grid: &ScanGrid) -> Result<DecayScan> {
    let n = p.two_over_p_int().ok_or_else(|| Error::domain(format!("uniform scans need 2/p ∈ ℕ, got 2/p = {}", p.two_over_p)))?;
    if n == 2 {
        return Err(Error::domain("p = 1 is not covered by the uniform estimate"));
    }
    let has_axis = grid.phi_values.iter().any(|&f| octant_representative(f) == 0.0);
    let near_axis = grid.phi_values.iter().any(|&f| {
        let r = octant_representative(f);
        r > 0.0 && r <= 1.5e-3
    });
    if !has_axis || !near_axis {
        return Err(Error::domain("uniform scans need axis directions and near-axis offsets down to 1e−3"));
    }
    let q = if p.is_circle() { 0.5 } else { p.p / 2.0 };
    windowed_scan(p, &grid.phi_values, grid, TAU, 8, true, q)
}

/// Exploratory on-axis slice (`φ = π/2`): windowed sup of `|J_0^[p](0, ρ)|`.
pub fn on_axis_decay(p: &PExponent, grid: &ScanGrid) -> Result<DecayScan> {
    let q = if p.is_circle() { 0.5 } else { p.p / 2.0 };
    windowed_scan(p, &[FRAC_PI_2], grid, TAU, SAMPLES_PER_WINDOW, false, q)
}

/// `max_ρ |J_0^[2](ρ, 0) − √(2/(πρ)) cos(ρ − π/4)|·ρ` over the grid.
pub fn hankel_envelope_check(rho_grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (rho, d) in hankel_deviations(rho_grid)? {
        worst = worst.max(d * rho);
    }
    Ok(worst)
}

/// `(ρ, |J_0^[2](ρ, 0) − √(2/(πρ)) cos(ρ − π/4)|)` with `J_0^[2]` from the
/// oscillatory representation.
pub fn hankel_deviations(rho_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let p = PExponent::from_ratio(2, 1)?;
    let spec = QuadratureSpec::with_tol(1e-12);
    rho_grid
        .iter()
        .map(|&rho| {
            if !(rho >= 10.0) {
                return Err(Error::domain(format!("Hankel check needs ρ ≥ 10, got {rho}")));
            }
            let j = j0_oscillatory_estimate(&p, Vec2::new(rho, 0.0), &spec)?.value;
            Ok((rho, (j - (2.0 / (PI * rho)).sqrt() * (rho - FRAC_PI_4).cos()).abs()))
        })
        .collect()
}

/// Windowed envelope of `|remainder|·ρ` (window `2π`, classical `J_0`),
/// fitted against `ρ`; a non-positive slope means the remainder is `O(ρ^{−1})`
/// or better.
pub fn hankel_envelope_trend(rho_grid: &[f64]) -> Result<DecayFit> {
    let m = 24;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &r0 in rho_grid {
        let mut best = (r0, 0.0f64);
        for i in 0..m {
            let r = r0 + TAU * i as f64 / m as f64;
            let d = hankel_remainder(r)?.abs() * r;
            if d > best.1 {
                best = (r, d);
            }
        }
        xs.push(best.0);
        ys.push(best.1);
    }
    fit_power_law(&xs, &ys, false)
}
