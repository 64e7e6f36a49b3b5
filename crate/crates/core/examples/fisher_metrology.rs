// Fisher information about the absorption from the q-quadrature marginal,
// compared with the coherent and Fock baselines.
//
// ```text
// cargo run --release --example fisher_metrology
// ```

use twinbeam::metrology::{self, fisher_auto};
use twinbeam::oracle::exact_fock_loss_fisher;

pub fn run_example() -> twinbeam::Result<()> {
    let (eta, lambda) = (0.98, 0.01);
    for gamma in [0.1, 0.5, 0.9] {
        println!("γ = {gamma}");
        for spec in metrology::gamma_sweep_states(&[1, 2, 3], lambda) {
            let est = fisher_auto(&spec, gamma, eta, 201)?;
            println!(
                "  {:<18} F = {:>9.4}  Δγ = {:.4}  step {:.1e}  Richardson Δ {:.1e}",
                format!("{}({})", spec.kind, spec.index()),
                est.fisher,
                est.delta_gamma,
                est.dgamma_step,
                est.richardson_rel_change
            );
        }
        println!(
            "  photon counting on |3⟩: F = {:.4}; coherent closed form for μ = λ: {:.4}",
            exact_fock_loss_fisher(3, gamma, eta)?,
            metrology::coherent_fisher(lambda, gamma, eta)
        );
    }

    let cross = metrology::coherent_crossover(1, eta, 0.01, 0.01, 5.0, 201)?;
    println!(
        "coherent probe overtakes m=1 beyond λ ≈ {}",
        cross.map_or("n/a".into(), |l| format!("{l:.3}"))
    );
    Ok(())
}

fn main() {
    run_example().expect("fisher example");
}
