// Cross-checks the series Wigner evaluator against a jet-derivative closed
// form and a two-mode construction traced over the idler.
//
// ```text
// cargo run --release --example oracle_verification
// ```

use twinbeam::oracle::{self, OracleLattice};
use twinbeam::phasespace::wigner_diagonal_lossy;
use twinbeam::states::{photon_number_distribution, DEFAULT_TRUNCATION_TOL};
use twinbeam::StateSpec;

pub fn run_example() -> twinbeam::Result<()> {
    let (m, lambda, tau, q, p) = (3, 0.01, 0.49, 1.0, 0.0);
    let rho = photon_number_distribution(&StateSpec::subtracted(m, lambda), DEFAULT_TRUNCATION_TOL)?;
    println!("series     {:+.15e}", wigner_diagonal_lossy(&rho, tau, q, p)?);
    println!(
        "derivative {:+.15e}",
        oracle::derivative_route_wigner(m, lambda, tau, q, p)?
    );
    println!(
        "two-mode   {:+.15e}",
        oracle::two_mode_route_wigner(m, lambda, tau, q, p)?
    );

    let report = oracle::run_verification(&OracleLattice::default())?;
    for c in &report.checks {
        println!(
            "{:<5} {} ({:.2e} ≤ {:.0e})",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.max_error,
            c.tolerance
        );
    }
    assert!(report.passed());
    Ok(())
}

fn main() {
    run_example().expect("oracle example");
}
