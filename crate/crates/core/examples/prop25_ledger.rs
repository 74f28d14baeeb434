//! How the n-th phase derivative at the moving stationary point scales with
//! δ → 0: identically zero, a power law, or a bounded band.

use lame_bessel::fit::geometric_grid;
use lame_bessel::phase::verify_prop25;
use lame_bessel::PExponent;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let deltas = geometric_grid(1e-4, 1e-2, 25);
    for (p, orders) in [("2/5", 1..=5), ("2/3", 1..=3)] {
        let p: PExponent = p.parse()?;
        for n in orders {
            let r = verify_prop25(&p, n, &deltas)?;
            let slope = r.fit.map(|f| format!("{:+.4}", f.slope)).unwrap_or_else(|| "  —   ".into());
            let predicted = r.predicted_slope.map(|s| format!("{s:+.4}")).unwrap_or_else(|| "  —   ".into());
            println!(
                "p = {:.4} n = {n}: {:?}, slope {slope} (predicted {predicted}), |value| ∈ [{:.3e}, {:.3e}], pass = {}",
                p.p, r.regime, r.min_abs, r.max_abs, r.pass
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
