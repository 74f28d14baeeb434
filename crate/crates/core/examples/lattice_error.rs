//! Lattice points inside p-circles and the error term P_p(r).

use lame_bessel::lattice::{area_main_term, count_lattice, count_lattice_closed, error_sweep};
use lame_bessel::output::to_csv_string;
use lame_bessel::PExponent;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let circle = PExponent::from_ratio(2, 1)?;
    println!("strict count at s = 25: {}", count_lattice(&circle, 25.0)?.count);
    println!("closed count at s = 25: {}", count_lattice_closed(&circle, 25.0)?.count);

    let astroid = PExponent::from_ratio(2, 3)?;
    println!("astroid area at r = 1: {:.10}", area_main_term(&astroid, 1.0)?);
    let radii: Vec<f64> = (1..=8).map(|k| 25.0 * k as f64).collect();
    print!("{}", to_csv_string(&error_sweep(&astroid, &radii, false)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
