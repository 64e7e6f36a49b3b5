// Absorption and detection losses combine into one transmittance that thins
// the photon-number distribution binomially.
//
// ```text
// cargo run --example loss_channel
// ```

use twinbeam::states::{photon_number_distribution, DEFAULT_TRUNCATION_TOL};
use twinbeam::{apply_loss, equivalent_transmittance, ChannelParams, FockDensity, StateSpec};

pub fn run_example() -> twinbeam::Result<()> {
    let channel = ChannelParams::new(0.3, 0.98)?;
    let tau = equivalent_transmittance(&channel);
    println!("γ = {}, η = {} → τ = {tau}", channel.gamma(), channel.eta());

    let fock = apply_loss(&FockDensity::fock(3), tau)?;
    println!(
        "|3⟩ after loss: {:?}",
        fock.probs().iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>()
    );

    let rho = photon_number_distribution(&StateSpec::subtracted(2, 0.1), DEFAULT_TRUNCATION_TOL)?;
    let lossy = apply_loss(&rho, tau)?;
    println!(
        "m=2, λ=0.1: ⟨n⟩ {:.4} → {:.4} (τ·⟨n⟩ = {:.4}), P(0) {:.4} → {:.4}",
        rho.mean(),
        lossy.mean(),
        tau * rho.mean(),
        rho.prob(0),
        lossy.prob(0)
    );

    // Two channels in sequence act like one with the product transmittance.
    let staged = apply_loss(&apply_loss(&rho, 0.7)?, 0.98)?;
    println!(
        "staged vs combined total variation: {:.1e}",
        staged.total_variation(&lossy)
    );
    Ok(())
}

fn main() {
    run_example().expect("loss channel example");
}
