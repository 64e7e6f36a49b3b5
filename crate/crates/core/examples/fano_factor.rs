// Fano factor versus λ by the exact and phase-space routes, and the λ below
// which each subtracted state is sub-Poissonian.
//
// ```text
// cargo run --release --example fano_factor
// ```

use twinbeam::statistics::{fano_vs_lambda, sub_poissonian_threshold, FanoSweepOptions};

pub fn run_example() -> twinbeam::Result<()> {
    let eta = 0.98;
    let lambdas = [0.01, 0.1, 0.5, 1.0, 2.0];
    let opts = FanoSweepOptions {
        with_wigner: true,
        n_points: 201,
    };
    for m in 0..=3 {
        for row in fano_vs_lambda(m, eta, &lambdas, opts)? {
            println!(
                "m={m} λ={:<4} F_exact = {:.6}  F_wigner = {:.6}",
                row.lambda,
                row.fano_exact,
                row.fano_wigner.unwrap_or(f64::NAN)
            );
        }
        if let Some(star) = sub_poissonian_threshold(m, eta)? {
            println!(
                "m={m}: sub-Poissonian for λ < {star:.6} (√(m/(m+1)) = {:.6})",
                (m as f64 / (m as f64 + 1.0)).sqrt()
            );
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("fano example");
}
