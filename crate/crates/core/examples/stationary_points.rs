//! Stationary points of the four phase families, and the exact derivative
//! recurrence against finite differences.

use lame_bessel::phase::{phase_derivative, stationary_points, DerivativeMode, PhaseFamily};
use lame_bessel::PExponent;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = PExponent::from_ratio(2, 5)?;
    let families = [
        ("F axis, δ = 0.01", PhaseFamily::f_axis(p, 0.01)?),
        ("G axis, δ = 0.01", PhaseFamily::g_axis(p, 0.01)?),
        ("f compact, φ = 0.6", PhaseFamily::f_compact(p, 0.6)?),
        ("g compact, φ = 0.6", PhaseFamily::g_compact(p, 0.6)?),
    ];
    for (label, fam) in families {
        let set = stationary_points(&fam)?;
        print!("{label:<20}");
        for (i, theta) in set.points.iter().enumerate() {
            let d = phase_derivative(&fam, *theta, 1)?;
            let tag = if set.endpoint_flags[i] { "end" } else { "int" };
            print!("  {theta:.10} [{tag}, phase′ = {:+.1e}]", d.value);
        }
        println!();
    }

    // Exact derivatives exist up to order 2/p = 5 and agree with an
    // order-4 finite-difference stencil.
    let fam = PhaseFamily::f_axis(p, 0.05)?;
    for n in 1..=5 {
        let exact = phase_derivative(&fam, 0.7, n)?;
        assert_eq!(exact.mode, DerivativeMode::Exact);
        println!("F^({n})(0.7) = {:+.12e}", exact.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
