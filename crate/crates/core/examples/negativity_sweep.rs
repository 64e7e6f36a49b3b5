// Negativity volume versus absorption, and the absorption at which each
// subtracted state becomes classical.
//
// ```text
// cargo run --release --example negativity_sweep
// ```

use twinbeam::phasespace::{self, CLASSICALITY_THRESHOLD};
use twinbeam::StateSpec;

pub fn run_example() -> twinbeam::Result<()> {
    let eta = 0.98;
    let gammas: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    for m in 0..=3 {
        let spec = StateSpec::subtracted(m, 0.01);
        let grid = phasespace::negativity_grid(&spec, 201)?;
        let sweep = phasespace::negativity_sweep(&spec, eta, &gammas, grid)?;
        let deltas: Vec<String> = sweep.iter().map(|p| format!("{:.3}", p.delta)).collect();
        let threshold = phasespace::classicality_threshold(&spec, eta, CLASSICALITY_THRESHOLD, grid, 0.02, 1e-3)?;
        println!(
            "m={m}: δ(γ=0..1) = [{}]  classical beyond γ ≈ {}",
            deltas.join(", "),
            threshold.map_or("n/a".into(), |g| format!("{g:.3}"))
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("negativity example");
}
