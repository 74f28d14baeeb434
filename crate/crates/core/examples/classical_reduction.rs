//! At p = 2 the generalized function is the classical Bessel function:
//! J_0^[2](r, 0) = J_0(r) and J_ω^[2](η) = J_ω(|η|).

use lame_bessel::classical::bessel_j;
use lame_bessel::gbessel::{j0_direct, j0_oscillatory, j_omega, BesselOrder};
use lame_bessel::{PExponent, QuadratureSpec, Vec2};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = PExponent::from_ratio(2, 1)?;
    let spec = QuadratureSpec::default();
    println!("{:>8} {:>22} {:>22} {:>22}", "r", "J_0(r)", "direct", "oscillatory");
    for r in [0.5, 1.0, 2.404825557695773, 5.0, 10.0, 50.0] {
        let eta = Vec2::new(r, 0.0);
        let classical = bessel_j(0.0, r)?;
        let d = j0_direct(&p, eta, &spec)?;
        let o = j0_oscillatory(&p, eta, &spec)?;
        println!("{r:>8.4} {classical:>22.15e} {d:>22.15e} {o:>22.15e}");
        assert!((d - classical).abs() < 1e-8 && (o - classical).abs() < 1e-8);
    }
    let eta = Vec2::new(3.0, 4.0);
    let j1 = j_omega(&p, BesselOrder::new(1.0)?, eta, &spec)?;
    println!("J_1^[2](3, 4) = {j1:.15e}, J_1(5) = {:.15e}", bessel_j(1.0, 5.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
