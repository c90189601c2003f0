use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use nongauss_core::sweep::{variance_scan, SweepResult};
use nongauss_core::{ExperimentConfig, Scheme};
use serde_json::Value;

fn nongauss(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nongauss"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn variance_scan_contract() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["scan", "--kind", "variance", "--scheme", "single", "--lambda", "0:0.9:91", "--T", "0.9", "--out", "v.csv"];
    let out = nongauss(&args, dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("v.csv")).unwrap();
    assert!(text.starts_with("lambda,value_ng,value_ref,gain_db\n"));
    assert_eq!(text.lines().count(), 92);
    assert!(!text.contains('\r'));

    // parses back to exactly the library values
    let parsed = SweepResult::read_csv(text.as_bytes()).unwrap();
    let template = ExperimentConfig::practical_defaults(0.0, Scheme::SingleMode).unwrap();
    let direct = variance_scan(&template, &parsed.grid, 0.0).unwrap();
    assert_eq!(parsed.value_ng, direct.value_ng);
    assert_eq!(parsed.value_ref, direct.value_ref);
    assert_eq!(parsed.derived, direct.derived);

    // byte-identical on a second run
    let again = nongauss(&[&args[..9], &["--out", "v2.csv"]].concat(), dir.path());
    assert_eq!(code(&again), 0);
    assert_eq!(fs::read(dir.path().join("v2.csv")).unwrap(), text.as_bytes());
}

#[test]
fn json_matches_csv() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["scan", "--kind", "mi", "--alpha", "1.5", "--TL", "0.75", "--eta", "0.6", "--nu", "1e-3", "--lambda", "0.1:0.9:9"];
    assert_eq!(code(&nongauss(&[&base[..], &["--out", "m.csv"]].concat(), dir.path())), 0);
    assert_eq!(code(&nongauss(&[&base[..], &["--out", "m.json", "--format", "json"]].concat(), dir.path())), 0);
    let csv = SweepResult::read_csv(fs::File::open(dir.path().join("m.csv")).unwrap()).unwrap();
    let json = SweepResult::from_json_str(&fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    assert_eq!(csv.header(), ["lambda", "value_ng", "value_ref", "gain_bits"]);
    assert_eq!(json.value_ng, csv.value_ng);
    assert_eq!(json.value_ref, csv.value_ref);
    let meta = &json.metadata;
    assert_eq!(meta["alpha"], 1.5);
    assert_eq!(meta["config"]["scheme"], "two-mode");
    assert!(meta["engine_version"].is_string());
    assert!(meta.get("timestamp_unix").is_none());

    let stamped = nongauss(&[&base[..], &["--format", "json", "--stamp"]].concat(), dir.path());
    let v: Value = serde_json::from_slice(&stamped.stdout).unwrap();
    assert!(v["metadata"]["timestamp_unix"].is_u64());
}

#[test]
fn argument_errors_exit_2_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["scan", "--kind", "variance", "--lambda", "0:1.2:10", "--out", "x.csv"][..],
        &["scan", "--kind", "variance", "--T", "1.5", "--out", "x.csv"],
        &["scan", "--kind", "variance", "--ideal", "--TL", "0.5", "--out", "x.csv"],
        &["scan", "--kind", "mi", "--scheme", "single", "--out", "x.csv"],
        &["scan", "--kind", "mean-photon", "--scheme", "two", "--out", "x.csv"],
        &["scan", "--kind", "entropy", "--out", "x.csv"],
        &["wigner", "--lambda", "0.4", "--grid", "4:-4:10", "--out", "x.csv"],
        &["wigner", "--lambda", "0.4", "--scheme", "two", "--out", "x.csv"],
        &["wigner", "--lambda", "0.1:0.4:3", "--out", "x.csv"],
        &["oracle-check", "--lambda", "0.9", "--cutoff", "10"],
        &["oracle-check", "--lambda", "0.5", "--cutoff", "4"],
        &["repro", "--figure", "fig99"],
        &[],
    ] {
        let out = nongauss(args, dir.path());
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    assert_eq!(code(&nongauss(&["--help"], dir.path())), 0);
}

#[test]
fn io_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = nongauss(&["scan", "--kind", "pdet", "--out", "missing/dir/p.csv"], dir.path());
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    let out = nongauss(&["scan", "--kind", "pdet", "--config", "nope.conf"], dir.path());
    assert_eq!(code(&out), 1);
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.conf"), "# tap\nT = 0.8\nideal = true\nlambda = 0.3:0.5:3\n").unwrap();
    let out = nongauss(&["scan", "--kind", "variance", "--config", "run.conf", "--T", "0.95", "--format", "json"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let sweep = SweepResult::from_json_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(sweep.grid, [0.3, 0.4, 0.5]);
    let cfg: ExperimentConfig = serde_json::from_value(sweep.metadata["config"].clone()).unwrap();
    assert_eq!(cfg.setup.tap_transmittance(), 0.95);
    assert!(cfg.is_ideal());

    fs::write(dir.path().join("bad.conf"), "colour = blue\n").unwrap();
    assert_eq!(code(&nongauss(&["scan", "--kind", "pdet", "--config", "bad.conf"], dir.path())), 2);
}

#[test]
fn wigner_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = nongauss(&["wigner", "--lambda", "0.8", "--T", "0.9", "--grid", "-4:4:161", "--out", "w.csv"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("w.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,p,w"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 161 * 161);
    assert_eq!(rows[0][..2], [-4.0, -4.0]);
    assert_eq!(rows[1][..2], [-4.0, -3.95]);
    assert_eq!(rows[161][..2], [-3.95, -4.0]);

    let out = nongauss(&["wigner", "--lambda", "0.4", "--ideal", "--grid", "-8:8:321", "--verify"], dir.path());
    assert_eq!(code(&out), 0);
    let err = stderr(&out);
    let deviation: f64 = err.trim().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(deviation.abs() < 1e-6, "{err}");

    let out = nongauss(&["wigner", "--lambda", "0", "--ideal", "--out", "w0.csv"], dir.path());
    assert_eq!(code(&out), 4);
    assert!(!dir.path().join("w0.csv").exists());
}

#[test]
fn pdet_and_mean_photon_scans() {
    let dir = tempfile::tempdir().unwrap();
    let out = nongauss(&["scan", "--kind", "pdet", "--ideal", "--lambda", "0:0.5:6"], dir.path());
    assert_eq!(code(&out), 0);
    let s = SweepResult::read_csv(&out.stdout[..]).unwrap();
    assert_eq!(s.header(), ["lambda", "value_ng"]);
    assert_eq!(s.value_ng[0], 0.0);
    let out = nongauss(&["scan", "--kind", "mean-photon", "--ideal", "--lambda", "0.05:0.8:16"], dir.path());
    let s = SweepResult::read_csv(&out.stdout[..]).unwrap();
    let reference = s.value_ref.as_ref().unwrap();
    assert!(s.value_ng.iter().zip(reference).all(|(n, r)| n > r));
}

#[test]
fn oracle_check_reports() {
    let dir = tempfile::tempdir().unwrap();
    let keys = [
        "pdet_rel_err",
        "pdf_max_abs_err",
        "variance_abs_err",
        "wigner_max_abs_err",
        "bell_pdf_max_abs_err",
        "channel_matrix_max_abs_err",
        "mode_b_vacuum_overlap",
        "dakna_trace_distance",
    ];
    for (args, want) in [
        (&["--lambda", "0.4", "--T", "0.9", "--ideal", "--cutoff", "24"][..], 0),
        (&["--lambda", "0.4", "--TL", "0.75", "--eta", "0.6", "--nu", "1e-3", "--cutoff", "24"], 0),
        // pointwise truncation error near 1e-5 at this cutoff
        (&["--lambda", "0.6", "--ideal", "--cutoff", "24"], 3),
    ] {
        let out = nongauss(&[&["oracle-check", "--out", "r.json"][..], args].concat(), dir.path());
        assert_eq!(code(&out), want, "{args:?}: {}", stderr(&out));
        let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
        let obj = report.as_object().unwrap();
        assert_eq!(obj.len(), keys.len());
        for k in keys {
            assert!(obj[k].is_f64(), "{k}");
        }
        if want == 0 {
            assert!(obj["pdf_max_abs_err"].as_f64().unwrap() < 1e-6);
        }
    }
}

#[test]
fn repro_writes_every_figure() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["fig2", "fig3", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13", "fig14", "fig15", "fig16", "fig17"] {
        let out = nongauss(&["repro", "--figure", id, "--outdir", "data"], dir.path());
        assert_eq!(code(&out), 0, "{id}: {}", stderr(&out));
        let text = fs::read_to_string(dir.path().join("data").join(format!("{id}.csv"))).unwrap();
        let header = text.lines().next().unwrap();
        assert!(
            ["x,value_ng,value_ref", "lambda,value_ng,value_ref,gain_db", "x,p,w", "lambda,value_ng,value_ref", "lambda,value_ng,value_ref,gain_bits"]
                .contains(&header),
            "{id}: {header}"
        );
    }
    let out = nongauss(&["repro", "--figure", "fig3", "--outdir", "json", "--format", "json"], dir.path());
    assert_eq!(code(&out), 0);
    let s = SweepResult::from_json_str(&fs::read_to_string(dir.path().join("json/fig3.json")).unwrap()).unwrap();
    assert_eq!(s.metadata["figure"], "fig3");
}
