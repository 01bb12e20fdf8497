//! End-to-end checks of the nazeta binary: exit codes, schema stability,
//! and byte-identical reruns.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nazeta"))
}

#[test]
fn eval_rank2_at_two() {
    let out = bin()
        .args(["eval", "--kind", "rank2", "--field", "Q", "--s", "2,0", "--digits", "30"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"schema\": 1"));
    // xi_{Q,2}(2) = xi(4) - xi(3)/2 = 0.014005622115422510...
    assert!(stdout.contains("1.400562211542251"), "{stdout}");
}

#[test]
fn eval_no_pole_at_half_but_pole_at_one() {
    let ok = bin()
        .args(["eval", "--kind", "rank2", "--field", "Q", "--s", "0.5,0", "--digits", "30"])
        .output()
        .unwrap();
    assert!(ok.status.success());

    let pole = bin()
        .args(["eval", "--kind", "rank2", "--field", "Q", "--s", "1,0", "--digits", "30"])
        .output()
        .unwrap();
    assert_eq!(pole.status.code(), Some(3));
    assert!(String::from_utf8(pole.stderr).unwrap().contains("pole"));
}

#[test]
fn eval_env_var_digits_default() {
    let out = bin()
        .args(["eval", "--kind", "zeta", "--field", "Q", "--s", "2,0"])
        .env("NAZETA_DIGITS", "21")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"digits\": 21"));
}

#[test]
fn certify_small_box_and_csv() {
    let dir = std::env::temp_dir().join("nazeta-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("zeros.csv");
    let out = bin()
        .args([
            "certify",
            "--field",
            "Q",
            "--tmax",
            "12",
            "--digits",
            "25",
            "--out",
            csv_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"certified\": true"), "{stdout}");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,width"));
    // first zero of xi_{Q,2} sits near t = 7.769
    assert!(csv.contains("7.769080111"), "{csv}");
}

#[test]
fn lattice_stable_boundary_and_h0() {
    let out = bin()
        .args(["lattice", "stable", "--field", "Q", "--tau", "0,1", "--digits", "25"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"semistable_distance\": true"));
    assert!(stdout.contains("\"semistable_direct\": true"));

    let unstable = bin()
        .args(["lattice", "stable", "--field", "Q", "--tau", "0,2", "--digits", "25"])
        .output()
        .unwrap();
    let s = String::from_utf8(unstable.stdout).unwrap();
    assert!(s.contains("\"semistable_distance\": false"));

    let h0 = bin()
        .args(["lattice", "h0", "--field", "Q", "--tau", "0,1", "--digits", "25"])
        .output()
        .unwrap();
    let s = String::from_utf8(h0.stdout).unwrap();
    // log(theta3(e^-pi)^2) = 0.1658030...
    assert!(s.contains("1.65803"), "{s}");
}

#[test]
fn verify_deterministic_rerun() {
    let run = || {
        bin()
            .args(["verify", "--suite", "lattice", "--digits", "25", "--seed", "9"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "verify output must be byte-identical");
}

#[test]
fn bad_flags_exit_two() {
    let out = bin()
        .args(["eval", "--kind", "nope", "--field", "Q", "--s", "2,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out2 = bin()
        .args(["eval", "--kind", "zeta", "--field", "Q", "--s", "whatever"])
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(2));
}
