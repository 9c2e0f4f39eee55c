//! End-to-end runs of the `dyncp` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const ATOMS: &str = r#"
[[atoms]]
position = [3.0, 0.0, 0.0]
k_trans = 1.5
mu2 = 1.0
role = "ground"

[[atoms]]
position = [0.5, 2.9, 0.0]
k_trans = 2.0
mu2 = 1.0
role = "ground"

[[atoms]]
position = [0.0, 0.0, 0.0]
k_trans = 1.0
mu2 = 1.2
role = "excited"
"#;

fn write_config(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn dyncp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyncp")).args(args).output().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn sweep_config(quantities: &str, time: (f64, f64, usize)) -> String {
    format!(
        "quantities = {quantities}\n{ATOMS}\n[sweep.time]\nt_min = {:?}\nt_max = {:?}\nsteps = {}\n",
        time.0, time.1, time.2
    )
}

/// Parsed CSV: header and rows keyed by column name.
struct Table {
    head: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn read(path: &Path) -> Table {
        let text = std::fs::read_to_string(path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# schema=dyncp-sweep/1"));
        let body: String = lines.map(|l| format!("{l}\n")).collect();
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let head = r.headers().unwrap().iter().map(String::from).collect();
        let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
        Table { head, rows }
    }

    fn col(&self, name: &str) -> Vec<&str> {
        let i = self.head.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].as_str()).collect()
    }

    fn num(&self, name: &str) -> Vec<f64> {
        self.col(name).iter().map(|s| s.parse().unwrap()).collect()
    }
}

#[test]
fn all_spacelike_rows_have_zero_three_body_energy() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "s.toml", &sweep_config(r#"["sym", "sym_parts", "pair_parts"]"#, (0.0, 2.5, 6)));
    let out = dir.path().join("out.csv");
    let o = dyncp(&["--config", path_str(&cfg), "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = Table::read(&out);
    assert!(t.col("region").iter().all(|r| *r == "all-spacelike"));
    for c in ["sym", "sym_i", "sym_ii", "sym_r", "pair_r"] {
        assert!(t.num(c).iter().all(|v| *v == 0.0), "{c}: {:?}", t.col(c));
    }
    // the nonlocal pair part switches on once ct > |beta - gamma| ~ 0.77
    let nr = t.num("pair_nr");
    assert_eq!(nr[..2], [0.0, 0.0]);
    assert!(nr[2..].iter().all(|v| *v != 0.0), "{nr:?}");
}

#[test]
fn resonant_part_waits_for_the_signal() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "s.toml", &sweep_config(r#"["pair_parts", "regions"]"#, (0.05, 8.05, 9)));
    let out = dir.path().join("out.csv");
    let o = dyncp(&["--config", path_str(&cfg), "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let t = Table::read(&out);
    let (ts, nr, r) = (t.num("t"), t.num("pair_nr"), t.num("pair_r"));
    // C reaches A at ct = 3 and B at ct ~ 2.94
    let first_r = r.iter().position(|v| *v != 0.0).unwrap();
    let first_nr = nr.iter().position(|v| *v != 0.0).unwrap();
    assert!(ts[first_r] > 3.0 && ts[first_r - 1] < 2.94, "{ts:?} {r:?}");
    assert!(first_nr < first_r);
    assert!(r[first_r..].iter().all(|v| *v == r[first_r]));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("all-spacelike -> C-sees-both"), "{stdout}");
    assert!(stdout.contains("errors: none"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let mut body = sweep_config(r#"["corr", "pair", "sym"]"#, (0.5, 6.5, 4));
    body += "\n[sweep.geometry]\nparameter = \"scale\"\nvalues = [0.8, 1.0]\n";
    let cfg = write_config(&dir, "s.toml", &body);
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert_eq!(code(&dyncp(&["--config", path_str(&cfg), "--out", path_str(&a), "--threads", "1"])), 0);
    assert_eq!(code(&dyncp(&["--config", path_str(&cfg), "--out", path_str(&b), "--threads", "3"])), 0);
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    let t = Table::read(&dir.path().join("a.csv"));
    assert_eq!(t.rows.len(), 8);
    assert_eq!(t.num("scale")[..4], [0.8; 4]);
}

#[test]
fn usage_and_config_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&dyncp(&["--help"])), 0);
    assert_eq!(code(&dyncp(&["--version"])), 0);
    assert_eq!(code(&dyncp(&[])), 1);

    let missing = dir.path().join("missing.toml");
    assert_eq!(code(&dyncp(&["--config", path_str(&missing), "--out", "x.csv"])), 1);

    let typo = sweep_config(r#"["pair"]"#, (0.0, 1.0, 2)).replace("k_trans = 1.5", "k_tras = 1.5");
    let cfg = write_config(&dir, "typo.toml", &typo);
    let o = dyncp(&["--config", path_str(&cfg), "--out", "x.csv"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("k_tras") && err.contains("line"), "{err}");

    let good = write_config(&dir, "good.toml", &sweep_config(r#"["pair"]"#, (0.0, 1.0, 2)));
    for bad in [&["--seed", "1,2"][..], &["--seed", "0,0,0"], &["--tol", "0"], &["--threads", "0"], &["--mode", "fit"]] {
        let mut args = vec!["--config", path_str(&good), "--out", "x.csv"];
        args.extend_from_slice(bad);
        assert_eq!(code(&dyncp(&args)), 1, "{bad:?}");
    }
    // no output path anywhere
    assert_eq!(code(&dyncp(&["--config", path_str(&good)])), 1);
}

#[test]
fn evaluation_errors_exit_with_two_and_keep_the_row() {
    let dir = TempDir::new().unwrap();
    // a ground atom resonant with the source
    let body = sweep_config(r#"["pair"]"#, (0.5, 1.5, 2)).replace("k_trans = 1.5", "k_trans = 1.0");
    let cfg = write_config(&dir, "s.toml", &body);
    let out = dir.path().join("out.csv");
    let o = dyncp(&["--config", path_str(&cfg), "--out", path_str(&out)]);
    assert_eq!(code(&o), 2);
    let t = Table::read(&out);
    assert_eq!(t.rows.len(), 2);
    assert!(t.col("error").iter().all(|e| !e.is_empty()));
    assert!(t.col("pair").iter().all(|v| v.is_empty()));
}

fn validate_config(atoms: &str, time: &str, validate: &str) -> String {
    format!("quantities = [\"pair\"]\n{atoms}\n[sweep.time]\n{time}\n\n[validate]\n{validate}\n")
}

#[test]
fn validation_passes_on_a_converged_box() {
    let dir = TempDir::new().unwrap();
    let body = validate_config(
        ATOMS,
        "t_min = 0.5\nt_max = 6.5\nsteps = 3",
        "box_sides = [15.0, 20.0]\nk_max = 16.0\nt = 3.5",
    );
    let cfg = write_config(&dir, "v.toml", &body);
    let report = dir.path().join("report.csv");
    let o = dyncp(&["--config", path_str(&cfg), "--mode", "validate", "--out", path_str(&report), "--seed", "0.3,0.5,0.8"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{stdout}");
    assert!(stdout.contains("PASS    correlation vs box"), "{stdout}");
    assert!(stdout.contains("SKIP    space-like pair form"), "{stdout}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn validation_failures_exit_with_three() {
    let dir = TempDir::new().unwrap();
    // A and B close together, C far from both: the space-like form applies
    let atoms = ATOMS.replace("[0.5, 2.9, 0.0]", "[3.0, 1.0, 0.0]");
    let body = validate_config(&atoms, "t_min = 1.5\nt_max = 2.5\nsteps = 3", "box_sides = [10.0]\nk_max = 4.0\nt = 2.5");
    let cfg = write_config(&dir, "v.toml", &body);
    let o = dyncp(&["--config", path_str(&cfg), "--mode", "validate"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 3, "{stdout}");
    assert!(stdout.contains("FAIL    space-like pair form: 3 times"), "{stdout}");

    // a box far beyond the mode budget gives a partial report
    let body = validate_config(ATOMS, "t_min = 0.5\nt_max = 1.5\nsteps = 2", "box_sides = [400.0]\nk_max = 16.0\nt = 3.5");
    let cfg = write_config(&dir, "p.toml", &body);
    let o = dyncp(&["--config", path_str(&cfg), "--mode", "validate"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 3);
    assert!(stdout.contains("PARTIAL correlation vs box: stopped at L=400"), "{stdout}");
}
