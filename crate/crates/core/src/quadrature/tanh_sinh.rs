//! Double-exponential (tanh-sinh) rule for panels touching an algebraic
//! endpoint singularity.
//!
//! The integrand is called as `f(t, t − lo, hi − t)` with both distances
//! computed from the transform itself, so weights like `(hi − t)^α` stay
//! accurate down to distances far below `ε·|t|`.

use std::f64::consts::FRAC_PI_2;

use super::gauss_kronrod::PanelEstimate;
use super::QuadScalar;

/// `u` beyond which `e^{−π sinh u}` drops under ~1e−260.
const U_MAX: f64 = 5.945;
const MAX_LEVEL: u32 = 6;
const MIN_LEVEL: u32 = 3;

/// Integrates `f` over `[lo, hi]`. `left_exp`/`right_exp` are the algebraic
/// exponents at the ends (0 for a regular end); they only enter the analytic
/// correction for the sliver between the outermost node and the endpoint.
pub(crate) fn tanh_sinh_panel<T: QuadScalar>(
    f: &mut dyn FnMut(f64, f64, f64) -> T,
    lo: f64,
    hi: f64,
    left_exp: f64,
    right_exp: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> PanelEstimate<T> {
    let len = hi - lo;
    let mut evaluations = 0usize;
    let mut sum = T::zero();
    let mut abs_sum = 0.0;
    // Largest |u| seen so far on each side; the tail correction follows it.
    let mut outer_left = -1.0;
    let mut outer_right = -1.0;
    let mut tail_left = T::zero();
    let mut tail_right = T::zero();

    let mut eval_pair = |u: f64,
                         sum: &mut T,
                         abs_sum: &mut f64,
                         tail_l: &mut T,
                         tail_r: &mut T,
                         outer_l: &mut f64,
                         outer_r: &mut f64|
     -> usize {
        let s = FRAC_PI_2 * u.sinh();
        let q = (-2.0 * s).exp();
        let near = len * q / (1.0 + q);
        let far = len / (1.0 + q);
        let w = 0.5 * len * FRAC_PI_2 * u.cosh() * 4.0 * q / ((1.0 + q) * (1.0 + q));
        if u == 0.0 {
            let v = f(lo + 0.5 * len, 0.5 * len, 0.5 * len);
            *sum += v * w;
            *abs_sum += v.magnitude() * w;
            return 1;
        }
        let vr = f(hi - near, far, near);
        let vl = f(lo + near, near, far);
        *sum += (vr + vl) * w;
        *abs_sum += (vr.magnitude() + vl.magnitude()) * w;
        if u > *outer_r {
            *outer_r = u;
            *tail_r = vr * (near / (right_exp + 1.0));
        }
        if u > *outer_l {
            *outer_l = u;
            *tail_l = vl * (near / (left_exp + 1.0));
        }
        2
    };

    // Level 0: integer nodes.
    let mut k = 0i64;
    while (k as f64) <= U_MAX {
        evaluations += eval_pair(
            k as f64,
            &mut sum,
            &mut abs_sum,
            &mut tail_left,
            &mut tail_right,
            &mut outer_left,
            &mut outer_right,
        );
        k += 1;
    }
    let mut h = 1.0;
    let mut prev = sum * h + tail_left + tail_right;
    let mut error = f64::INFINITY;
    let mut level = 0;
    while level < MAX_LEVEL {
        level += 1;
        h *= 0.5;
        let mut u = h;
        while u <= U_MAX {
            evaluations += eval_pair(
                u,
                &mut sum,
                &mut abs_sum,
                &mut tail_left,
                &mut tail_right,
                &mut outer_left,
                &mut outer_right,
            );
            u += 2.0 * h;
        }
        let current = sum * h + tail_left + tail_right;
        let floor = 20.0 * f64::EPSILON * abs_sum * h;
        error = (current - prev).magnitude().max(floor);
        prev = current;
        if level >= MIN_LEVEL && error <= 0.5 * abs_tol.max(rel_tol * current.magnitude()) {
            break;
        }
    }
    PanelEstimate { value: prev, error, evaluations }
}
