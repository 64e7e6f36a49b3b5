// Photon-number distribution of subtracted twin-beam signals and how it
// approaches a Fock state as the squeezing vanishes.
//
// ```text
// cargo run --example photon_statistics
// ```

use twinbeam::states::{self, photon_number_distribution, subtracted_state_norm, DEFAULT_TRUNCATION_TOL};
use twinbeam::StateSpec;

pub fn run_example() -> twinbeam::Result<()> {
    for lambda in [0.01, 0.5] {
        println!("λ = {lambda}");
        for m in 0..=3 {
            let spec = StateSpec::subtracted(m, lambda);
            let rho = photon_number_distribution(&spec, DEFAULT_TRUNCATION_TOL)?;
            let head: Vec<String> = (0..6).map(|n| format!("{:.4}", rho.prob(n))).collect();
            println!(
                "  m={m}: P(0..5) = [{}]  ⟨n⟩ = {:.4} (closed form {:.4})  Var = {:.4}  dim = {}",
                head.join(", "),
                rho.mean(),
                states::mean_photons(&spec)?,
                rho.variance(),
                rho.dim()
            );
        }
    }
    // Heralding amplitude; grows as λ shrinks because subtraction becomes rare.
    for m in 1..=3 {
        println!("N^{m}(λ=0.01) = {:.3e}", subtracted_state_norm(m, 0.01)?);
    }
    Ok(())
}

fn main() {
    run_example().expect("photon statistics example");
}
