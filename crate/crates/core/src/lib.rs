//! Generalized Bessel functions `J_ω^[p]` attached to the lattice point
//! problem of the p-circle `|x₁|^p + |x₂|^p = r^p`.
//!
//! The crate provides
//!
//! * p-norm geometry and the `(|η|_p, φ)` parametrization ([`pnorm`]),
//! * singularity- and oscillation-aware 1D quadrature ([`quadrature`]),
//! * `J_ω^[p]` in its direct, oscillatory, odd-order and power-series
//!   representations ([`gbessel`]),
//! * phase functions, stationary points and exact derivative recurrences
//!   ([`phase`]),
//! * decay-rate scans and log-log fits ([`asymptotics`], [`fit`]),
//! * lattice counts, Riesz-type lattice sums and the Bessel-series identity
//!   ([`lattice`]),
//! * a scriptable command runner emitting CSV/JSON ([`cli`]).
//!
//! Runnable walk-throughs of every capability live in the `examples/`
//! directory of this crate.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod classical;
pub mod cli;
pub mod error;
pub mod fit;
pub mod gbessel;
pub mod lattice;
pub mod output;
pub mod phase;
pub mod pnorm;
pub mod quadrature;

pub use error::{Error, Result};
pub use pnorm::{PExponent, PPolar, Vec2};
pub use quadrature::{QuadValue, QuadratureSpec};
