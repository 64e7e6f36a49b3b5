// Wigner functions of subtracted states on a phase-space grid, written as
// CSV plus a raw f64 dump.
//
// ```text
// cargo run --release --example wigner_fields -- out/
// ```

use std::path::PathBuf;

use twinbeam::phasespace::{self, negativity_volume, GridSpec};
use twinbeam::states::{self, DEFAULT_TRUNCATION_TOL};
use twinbeam::{ChannelParams, StateSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    let tau = ChannelParams::new(0.0, 0.98)?.tau();
    for m in 0..=3 {
        let spec = StateSpec::subtracted(m, 0.01);
        let grid = GridSpec::for_mean_photons_with(states::mean_photons(&spec)?, 201);
        let field = phasespace::wigner_field(&spec, tau, grid, DEFAULT_TRUNCATION_TOL)?;
        println!(
            "m={m}: W(0,0) = {:+.4}  min W = {:+.4}  ∬W = {:.10}  δ = {:.4}",
            field.value_at_origin(),
            field.min_value(),
            field.normalization(),
            negativity_volume(&field)
        );
        if let Some(dir) = &out {
            std::fs::create_dir_all(dir)?;
            field.write_csv(std::fs::File::create(dir.join(format!("wigner_m{m}.csv")))?)?;
            field.write_binary(std::fs::File::create(dir.join(format!("wigner_m{m}.bin")))?)?;
        }
    }

    // Pointwise evaluation needs no grid.
    let w = phasespace::wigner_fock_lossy(1, 0.5, 0.0, 0.0)?;
    println!("|1⟩ at τ = 1/2, origin: {w:.3e}");
    Ok(())
}

fn main() {
    run_example().expect("wigner example");
}
