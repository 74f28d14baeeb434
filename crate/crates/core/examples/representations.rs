//! The direct, oscillatory and odd representations of J_0^[p] agree; the
//! power series and the nested integral agree for positive order.

use std::f64::consts::FRAC_PI_4;

use lame_bessel::gbessel::{evaluate, j_omega, j_omega_series, BesselOrder, Representation, SeriesSpec};
use lame_bessel::pnorm::{polar_to_cartesian, PPolar};
use lame_bessel::{PExponent, QuadratureSpec, Vec2};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = QuadratureSpec::default();
    for p in ["2/3", "2/5", "0.8"] {
        let p: PExponent = p.parse()?;
        let eta = polar_to_cartesian(PPolar::new(30.0, FRAC_PI_4 / 2.0)?, &p);
        print!("p = {:<6.4} η = ({:.4}, {:.4}):", p.p, eta.x1, eta.x2);
        let mut reps = vec![Representation::Direct, Representation::Oscillatory];
        if p.two_over_p_is_odd_integer {
            reps.push(Representation::Odd);
        }
        for rep in reps {
            let q = evaluate(&p, BesselOrder::ZERO, eta, rep, &spec)?;
            print!("  {} {:.12e} (±{:.1e})", rep, q.value, q.error_estimate);
        }
        println!();
    }

    let p = PExponent::from_ratio(2, 3)?;
    let omega = BesselOrder::new(1.5)?;
    let x = Vec2::new(2.0, -1.0);
    let nested = j_omega(&p, omega, x, &spec)?;
    let series = j_omega_series(&p, omega, x, &SeriesSpec::default())?;
    println!("J_1.5^[2/3](2, −1): nested {nested:.12e}, series {series:.12e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
