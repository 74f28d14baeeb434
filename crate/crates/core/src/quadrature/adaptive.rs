//! Globally adaptive bisection over a list of panels.
//!
//! Interior panels use the Gauss–Kronrod pair; panels touching a weighted
//! endpoint use the tanh-sinh rule. The panel with the largest error estimate
//! is bisected until the summed estimate meets the tolerance or the
//! subdivision budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::gauss_kronrod::{gk21, PanelEstimate};
use super::tanh_sinh::tanh_sinh_panel;
use super::{QuadScalar, QuadValue, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Interior,
    Left,
    Right,
    Both,
}

/// `g(t)·(t − a)^α·(b − t)^β` on `[a, b]`. An end with `Some(exponent)` gets
/// a tanh-sinh panel; `None` means the end is regular and unweighted.
pub(crate) struct Weighted<'a, T> {
    pub g: &'a dyn Fn(f64) -> T,
    pub a: f64,
    pub b: f64,
    pub left: Option<f64>,
    pub right: Option<f64>,
}

impl<T: QuadScalar> Weighted<'_, T> {
    fn weight(&self, da: f64, db: f64) -> f64 {
        let mut w = 1.0;
        if let Some(al) = self.left {
            if al != 0.0 {
                w *= da.powf(al);
            }
        }
        if let Some(ar) = self.right {
            if ar != 0.0 {
                w *= db.powf(ar);
            }
        }
        w
    }

    fn eval_with(&self, t: f64, da: f64, db: f64) -> T {
        let w = self.weight(da, db);
        if w == 0.0 {
            return T::zero();
        }
        (self.g)(t) * w
    }

    fn estimate(&self, lo: f64, hi: f64, kind: Kind, spec: &QuadratureSpec) -> PanelEstimate<T> {
        match kind {
            Kind::Interior => {
                let mut f = |t: f64| self.eval_with(t, t - self.a, self.b - t);
                gk21(&mut f, lo, hi)
            }
            Kind::Left | Kind::Right | Kind::Both => {
                let mut f = |t: f64, dl: f64, dr: f64| {
                    let da = if kind == Kind::Right { t - self.a } else { dl };
                    let db = if kind == Kind::Left { self.b - t } else { dr };
                    self.eval_with(t, da, db)
                };
                let le = if kind != Kind::Right { self.left.unwrap_or(0.0) } else { 0.0 };
                let re = if kind != Kind::Left { self.right.unwrap_or(0.0) } else { 0.0 };
                tanh_sinh_panel(&mut f, lo, hi, le, re, spec.abs_tol, spec.rel_tol)
            }
        }
    }
}

struct Panel<T> {
    lo: f64,
    hi: f64,
    kind: Kind,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Runs the engine over the panels delimited by `breaks` (sorted, covering
/// `[w.a, w.b]`).
pub(crate) fn run<T: QuadScalar>(w: &Weighted<'_, T>, breaks: &[f64], spec: &QuadratureSpec) -> QuadValue<T> {
    let n = breaks.len() - 1;
    let mut heap = BinaryHeap::with_capacity(n + 16);
    let mut evaluations = 0usize;
    let weighted_left = w.left.is_some();
    let weighted_right = w.right.is_some();
    for i in 0..n {
        let kind = match (i == 0 && weighted_left, i == n - 1 && weighted_right) {
            (true, true) => Kind::Both,
            (true, false) => Kind::Left,
            (false, true) => Kind::Right,
            (false, false) => Kind::Interior,
        };
        let (lo, hi) = (breaks[i], breaks[i + 1]);
        let est = w.estimate(lo, hi, kind, spec);
        evaluations += est.evaluations;
        heap.push(Panel { lo, hi, kind, value: est.value, error: est.error });
    }

    let mut frozen_value = T::zero();
    let mut frozen_error = 0.0;
    let mut subdivisions = 0usize;
    loop {
        let (mut value, mut error) = (frozen_value, frozen_error);
        for p in heap.iter() {
            value += p.value;
            error += p.error;
        }
        let tol = spec.abs_tol.max(spec.rel_tol * value.magnitude());
        let finite = value.is_finite_value() && error.is_finite();
        if finite && error <= tol {
            return QuadValue { value, error_estimate: error, evaluations, converged: true };
        }
        let worst = match heap.peek() {
            Some(p) if subdivisions < spec.max_subdivisions && (finite || p.error.is_nan() || p.error.is_infinite()) => {
                heap.pop().unwrap()
            }
            _ => {
                let error = if finite { error } else { f64::INFINITY };
                return QuadValue { value, error_estimate: error, evaluations, converged: false };
            }
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) || worst.hi - worst.lo <= 4.0 * f64::EPSILON * worst.lo.abs().max(worst.hi.abs()) {
            // Panel can no longer be split in floating point.
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        let (k1, k2) = match worst.kind {
            Kind::Interior => (Kind::Interior, Kind::Interior),
            Kind::Left => (Kind::Left, Kind::Interior),
            Kind::Right => (Kind::Interior, Kind::Right),
            Kind::Both => (Kind::Left, Kind::Right),
        };
        for (lo, hi, kind) in [(worst.lo, mid, k1), (mid, worst.hi, k2)] {
            let est = w.estimate(lo, hi, kind, spec);
            evaluations += est.evaluations;
            heap.push(Panel { lo, hi, kind, value: est.value, error: est.error });
        }
        subdivisions += 1;
    }
}
