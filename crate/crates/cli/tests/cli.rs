use std::fs;
use std::path::Path;
use std::process::Command;

fn cvcomb(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cvcomb")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn dir_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

#[test]
fn lattice_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = cvcomb(&["lattice", "--M", "6", "--output-dir", &dir_arg(dir.path())]);
    assert_eq!(code, 0);
    assert!(stdout.contains("orthogonal=true bicolorable=true degree=4"));
    let report = fs::read_to_string(dir.path().join("lattice_M6.report")).unwrap();
    assert_eq!(report, stdout);
    let triplets = fs::read_to_string(dir.path().join("lattice_M6.triplets")).unwrap();
    assert!(triplets.starts_with("n=144 denom=4\n"));
    assert!(dir.path().join("lattice_M6.dot").exists());
}

#[test]
fn formats_filter_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    let (code, _, _) = cvcomb(&["ring", "--n-macro", "4", "--formats", "report", "--output-dir", &d]);
    assert_eq!(code, 0);
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(names, vec!["ring_n4.report".to_string()]);
}

#[test]
fn pump_file_has_fifteen_lines() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = cvcomb(&["pump", "--M", "6", "--output-dir", &dir_arg(dir.path())]);
    assert_eq!(code, 0);
    let pump = fs::read_to_string(dir.path().join("pump_M6.pump")).unwrap();
    let mut lines = pump.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("n_qumodes=144 block_side=2 sign_convention="));
    assert_eq!(lines.filter(|l| l.starts_with("d=")).count(), 15);
    assert!(dir.path().join("pump_M6.shorthand").exists());
}

#[test]
fn pump_absolute_frequencies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    let (code, stdout, _) = cvcomb(&[
        "pump",
        "--M",
        "6",
        "--base-freq",
        "100",
        "--fsr",
        "2",
        "--output-dir",
        &d,
    ]);
    assert_eq!(code, 0);
    // d=5: 2*100 + 5*2
    assert!(stdout.contains("d=5 pump_frequency=2.10000000000e2"));
    let (code, _, stderr) = cvcomb(&["pump", "--M", "6", "--fsr", "2", "--output-dir", &d]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error code=2 module=cli"));
}

#[test]
fn scaling_table() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = cvcomb(&["scaling", "--M", "6,8,10", "--output-dir", &dir_arg(dir.path())]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<usize>> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let m = row[0];
        assert_eq!(row[5], 15);
        assert_eq!(row[4], 32 * m * m);
    }
}

#[test]
fn config_errors_are_single_lines() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    let cases: [(&[&str], &str); 5] = [
        (&["lattice", "--M", "5"], "cause=TorusSize"),
        (&["pump", "--M", "4"], "cause=RenumberSize"),
        (&["verify", "--M", "5"], "cause=TorusSize"),
        (&["simulate", "--M", "6", "--r", "-1"], "cause=BadSqueeze"),
        (&["reduce", "--M", "6", "--r", "1", "--keep-layer", "4"], "cause=Layer"),
    ];
    for (args, cause) in cases {
        let mut full = args.to_vec();
        full.extend(["--output-dir", &d]);
        let (code, stdout, stderr) = cvcomb(&full);
        assert_eq!(code, 2, "{args:?}");
        assert!(stdout.is_empty());
        assert_eq!(stderr.lines().count(), 1, "{stderr}");
        assert!(stderr.starts_with("error code=2 module="), "{stderr}");
        assert!(stderr.contains(cause), "{stderr}");
    }
    let (_, _, stderr) = cvcomb(&["pump", "--M", "4", "--output-dir", &d]);
    assert!(stderr.contains("t = M^2-4M-3 = -3 < 0"));
    // nothing is written when the config is rejected
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn unknown_command_is_a_config_error() {
    let (code, _, stderr) = cvcomb(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(stderr.lines().count(), 1);
    assert!(stderr.contains("module=cli"));
}

#[test]
fn help_mentions_every_command() {
    let (code, stdout, _) = cvcomb(&["--help"]);
    assert_eq!(code, 0);
    for c in ["lattice", "ring", "pump", "simulate", "reduce", "scaling", "verify"] {
        assert!(stdout.contains(c));
    }
}

#[test]
fn simulate_and_reduce_are_byte_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let d = dir_arg(dir.path());
        assert_eq!(
            cvcomb(&["simulate", "--M", "6", "--r", "0.5,1", "--output-dir", &d]).0,
            0
        );
        assert_eq!(cvcomb(&["reduce", "--M", "6", "--r", "1,2", "--output-dir", &d]).0, 0);
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() >= 10);
    for name in names {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }
    let summary = fs::read_to_string(a.path().join("reduce_M6.summary")).unwrap();
    assert!(summary.contains("nodes=24 edges=38 components=1 max_degree=4"));
    let report = fs::read_to_string(a.path().join("simulate_M6_r1.report")).unwrap();
    assert!(report.contains("r=1.00000000000e0"));
}

#[test]
fn verify_prints_one_line_per_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = cvcomb(&["verify", "--output-dir", &dir_arg(dir.path())]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines[..9]
        .iter()
        .all(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")));
    let failed = lines[..9].iter().any(|l| l.starts_with("FAIL "));
    assert_eq!(code, if failed { 3 } else { 0 });
}
