//! D_β − 𝒟_β against the truncated J_{β+1}-series, with a tail bound.

use lame_bessel::lattice::{d_beta, script_d_beta, verify_identity};
use lame_bessel::{PExponent, QuadratureSpec, Vec2};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = PExponent::from_ratio(2, 1)?;
    let spec = QuadratureSpec::default();
    let x = Vec2::new(0.3, -0.2);
    println!("D_1(2.5:x) = {:.12}", d_beta(&p, 1.0, 2.5, x)?);
    println!("𝒟_1(2.5:x) = {:.12}", script_d_beta(&p, 1.0, 2.5, x, &spec)?.value);
    for cutoff in [6, 12, 24] {
        let r = verify_identity(&p, 1.0, 2.5, x, cutoff, &spec)?;
        println!(
            "cutoff {cutoff:>2}: lhs {:+.10} rhs {:+.10} gap {:.2e} tail ≤ {:.2e} pass = {}",
            r.lhs, r.rhs_partial, r.abs_gap, r.tail_bound, r.pass
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
