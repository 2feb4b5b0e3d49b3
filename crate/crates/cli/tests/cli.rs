use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic-prop")).args(args).output().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const SMALL: &str = "beta = 1\nphi0 = 0.3\nphiN = -0.2\n[coeff]\na = const:0.05\nb = const:0.5\nc = const:1\n\
[oracle]\nN_list = 2, 3, 16\nsamples = 20000\n";

#[test]
fn reference_config_reproduces_golden_files() {
    let out = tempfile::tempdir().unwrap();
    let cfg = repo().join("configs/reference.cfg");
    let o = run(&["--config", cfg.to_str().unwrap(), "--out", out.path().to_str().unwrap(), "propagator"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["breakdown.csv", "solution.csv"] {
        let got = std::fs::read(out.path().join(f)).unwrap();
        let want = std::fs::read(repo().join("configs/golden").join(f)).unwrap();
        assert!(got == want, "{f} differs from the golden file");
    }
    assert!(String::from_utf8_lossy(&o.stdout).contains("truncation_estimate"));
}

#[test]
fn free_config_has_single_effective_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "free.cfg", &SMALL.replace("const:0.05", "const:0"));
    let o = run(&["--config", &cfg, "--out", dir.path().to_str().unwrap(), "propagator"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("breakdown.csv")).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let totals: Vec<&str> = rows.iter().map(|r| r.rsplit(',').next().unwrap()).collect();
    assert!(totals.iter().all(|t| *t == totals[0]));
    assert!(rows[1..].iter().all(|r| r.split(',').nth(2) == Some("0.0000000000000000e0")));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cfg = write_config(dir.path(), "nobeta.cfg", &SMALL.replace("beta = 1\n", ""));
    let o = run(&["--config", &cfg, "--out", d, "propagator"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta"));

    let cfg = write_config(dir.path(), "bad.cfg", &SMALL.replace("phi0 = 0.3", "phi0 = x"));
    let o = run(&["--config", &cfg, "--out", d, "propagator"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));

    let cfg = write_config(dir.path(), "neg.cfg", &SMALL.replace("c = const:1", "c = poly:1, -2"));
    let o = run(&["--config", &cfg, "--out", d, "propagator"]);
    assert_eq!(o.status.code(), Some(3));

    assert_eq!(run(&["--out", d, "table", "pcf", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--out", d, "table", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--out", d, "propagator"]).status.code(), Some(2));
}

#[test]
fn seed_only_moves_montecarlo_rows() {
    let dir = tempfile::tempdir().unwrap();
    let read = |seed: u64| {
        let sub = dir.path().join(format!("s{seed}"));
        let cfg = write_config(dir.path(), &format!("s{seed}.cfg"), &format!("{SMALL}seed = {seed}\n"));
        let o = run(&["--config", &cfg, "--out", sub.to_str().unwrap(), "compare", "--workers", "2"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(sub.join("compare.csv")).unwrap()
    };
    let (a, b) = (read(1), read(2));
    for (ra, rb) in a.lines().zip(b.lines()) {
        let method = ra.split(',').next().unwrap();
        match method {
            "montecarlo" | "extrapolated" | "analytic" => {}
            _ => assert_eq!(ra, rb),
        }
        if method == "montecarlo" {
            assert_ne!(ra, rb);
        }
        if method == "analytic" {
            assert_eq!(ra.split(',').nth(4), rb.split(',').nth(4));
        }
    }
}

#[test]
fn tables_have_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["--out", d, "table", "pcf", "--nu", "-0.5", "--from", "0", "--to", "4", "--steps", "9"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("table_pcf.csv")).unwrap();
    let col: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(col.len(), 9);
    assert!(col.iter().all(|v| *v > 0.0) && col.windows(2).all(|w| w[1] < w[0]));

    assert!(run(&["--out", d, "table", "i1", "--from", "0.5", "--to", "2", "--steps", "4"]).status.success());
    let text = std::fs::read_to_string(dir.path().join("table_i1.csv")).unwrap();
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').skip(1).map(|s| s.parse().unwrap()).collect();
        assert!((v[1] - v[0]).abs() < 1e-8 * v[0] && (v[2] - v[0]).abs() < 1e-8 * v[0]);
    }
    for kind in ["hermite", "incomplete-hermite", "a-coeff"] {
        assert!(run(&["--out", d, "table", kind]).status.success(), "{kind}");
    }
    let o = run(&["i1", "--a", "1", "--b", "1", "--c", "1", "--method", "all"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 4);
}
