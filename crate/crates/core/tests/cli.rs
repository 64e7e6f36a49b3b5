use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use twinbeam::phasespace::{Convention, GridSpec, WignerField};
use twinbeam::StateSpec;

fn twinbeam(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinbeam"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn files_with_ext(dir: &Path, ext: &str) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

fn sidecar(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&fs::read(path.with_extension("json")).unwrap()).unwrap()
}

#[test]
fn fig2_writes_four_fields_with_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let out = twinbeam(dir.path(), &["--preset", "fig2", "--grid-points", "101"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csvs = files_with_ext(dir.path(), "csv");
    assert_eq!(csvs.len(), 4);
    for csv in &csvs {
        let meta = sidecar(csv);
        assert_eq!(meta["config"]["preset"], "fig2");
        assert_eq!(meta["config"]["eta"], 0.98);
        assert_eq!(meta["config"]["tolerances"]["truncation"], 1e-12);
        let grid: GridSpec = serde_json::from_value(meta["grid"].clone()).unwrap();
        assert_eq!(grid.n_points, 101);

        let text = fs::read_to_string(csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("q,p,w"));
        assert_eq!(lines.count(), 101 * 101);

        let bin = fs::read(csv.with_extension("bin")).unwrap();
        assert_eq!(bin.len(), 101 * 101 * 8);
        let field = WignerField::from_binary(grid, Convention::FockRoute, &bin).unwrap();
        assert!((field.normalization() - 1.0).abs() < 1e-8);
        assert!((meta["normalization"].as_f64().unwrap() - field.normalization()).abs() < 1e-14);
    }
}

#[test]
fn fig3_uses_paired_absorptions() {
    let dir = tempfile::tempdir().unwrap();
    let out = twinbeam(dir.path(), &["wigner", "--preset", "fig3", "--grid-points", "101"]);
    assert!(out.status.success());
    let names: Vec<String> = files_with_ext(dir.path(), "csv")
        .iter()
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(
        names,
        [
            "fig3_m0_lambda0.01_gamma1",
            "fig3_m1_lambda0.01_gamma0.5",
            "fig3_m2_lambda0.01_gamma0.47",
            "fig3_m3_lambda0.01_gamma0.44"
        ]
    );
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["fisher", "--m", "1,2", "--gamma", "0.1,0.5", "--grid-points", "201"];
    assert!(twinbeam(a.path(), &args).status.success());
    assert!(twinbeam(b.path(), &args).status.success());
    let fa = files_with_ext(a.path(), "csv");
    assert_eq!(fa.len(), 1);
    let fb = b.path().join(fa[0].file_name().unwrap());
    assert_eq!(fs::read(&fa[0]).unwrap(), fs::read(fb).unwrap());
}

#[test]
fn fisher_csv_columns_and_baselines() {
    let dir = tempfile::tempdir().unwrap();
    let out = twinbeam(
        dir.path(),
        &["fisher", "--m", "0,1", "--gamma", "0.2", "--grid-points", "201"],
    );
    assert!(out.status.success());
    let csv = &files_with_ext(dir.path(), "csv")[0];
    let mut rdr = csv::Reader::from_path(csv).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        [
            "state_kind",
            "m_or_j",
            "lambda_or_mu",
            "gamma",
            "eta",
            "fisher",
            "delta_gamma",
            "dgamma_step"
        ]
    );
    let kinds: Vec<String> = rdr.records().map(|r| r.unwrap()[0].to_string()).collect();
    assert_eq!(kinds, ["SubtractedTBS", "SubtractedTBS", "Fock", "Coherent"]);
}

#[test]
fn fano_and_negativity_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = twinbeam(
        dir.path(),
        &["fano", "--m", "1", "--lambda", "0.1,1", "--grid-points", "201"],
    );
    assert!(out.status.success());
    let csv = dir.path().join("fano.csv");
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("m,lambda,eta,fano_exact,fano_wigner\n"));
    let threshold = &sidecar(&csv)["thresholds"][0]["sub_poissonian_below_lambda"];
    assert!((threshold.as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-9);

    let out = twinbeam(
        dir.path(),
        &[
            "negativity",
            "--m",
            "0,1",
            "--gamma",
            "0,0.3,0.6",
            "--grid-points",
            "201",
        ],
    );
    assert!(out.status.success());
    let csv = dir.path().join("negativity_lambda0.01.csv");
    let meta = sidecar(&csv);
    let crossings = meta["crossings"].as_array().unwrap();
    assert_eq!(crossings.len(), 3);
    assert!(crossings[0]["classicality_gamma"].is_null());
    assert_eq!(crossings[1]["first_sampled_gamma_below_threshold"], 0.6);
    let g = crossings[1]["classicality_gamma"].as_f64().unwrap();
    assert!((g - 0.5).abs() < 0.05);
}

#[test]
fn verify_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = twinbeam(dir.path(), &["verify"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[PASS]"));
    assert!(!stdout.contains("[FAIL]"));
}

#[test]
fn invalid_input_exits_nonzero_without_output() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["wigner", "--eta", "1.5"][..],
        &["fisher", "--gamma", "0"],
        &["wigner", "--grid-points", "100"],
        &["--preset", "fig4", "fano"],
        &["wigner", "--m", "x"],
    ] {
        let out = twinbeam(dir.path(), args);
        assert!(!out.status.success(), "{args:?}");
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn state_spec_key_value_form() {
    let spec = StateSpec::from_kv("kind=subtracted,m=2,lambda=0.01").unwrap();
    assert_eq!(spec, StateSpec::subtracted(2, 0.01));
    assert_eq!(StateSpec::from_kv(&spec.to_kv()).unwrap(), spec);
    assert!(StateSpec::from_kv("kind=subtracted,m=two").is_err());
}
