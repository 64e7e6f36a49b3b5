macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(photon_statistics, "photon_statistics.rs");
example!(loss_channel, "loss_channel.rs");
example!(wigner_fields, "wigner_fields.rs");
example!(negativity_sweep, "negativity_sweep.rs");
example!(fano_factor, "fano_factor.rs");
example!(fisher_metrology, "fisher_metrology.rs");
example!(oracle_verification, "oracle_verification.rs");

#[test]
fn photon_statistics_runs() {
    photon_statistics::run_example().unwrap();
}

#[test]
fn loss_channel_runs() {
    loss_channel::run_example().unwrap();
}

#[test]
fn wigner_fields_runs() {
    wigner_fields::run_example().unwrap();
}

#[test]
fn negativity_sweep_runs() {
    negativity_sweep::run_example().unwrap();
}

#[test]
fn fano_factor_runs() {
    fano_factor::run_example().unwrap();
}

#[test]
fn fisher_metrology_runs() {
    fisher_metrology::run_example().unwrap();
}

#[test]
fn oracle_verification_runs() {
    oracle_verification::run_example().unwrap();
}
