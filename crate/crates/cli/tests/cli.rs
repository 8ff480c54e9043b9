use std::process::Command;

use caustics_cli::manifest::{sha256_hex, RunManifest};
use caustics_cli::{dispatch, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("caustics").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn beta_json_first_entry() {
    let (code, out, _) = run(&["coeffs", "beta", "--jmax", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["j"], 1);
    assert_eq!(v["l"], 1);
    assert_eq!(v["value"], "1/8");
    assert!(out.starts_with(r#"{"j":1,"l":1,"value":"1/8""#));
}

#[test]
fn beta_tsv_rows() {
    let (code, out, _) = run(&["coeffs", "beta", "--jmax", "3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "j\tl\tvalue\tdecimal");
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines.contains(&"3\t1\t83/2048\t4.0527343750000000e-2"));
}

#[test]
fn xi_table_contains_known_values() {
    let (code, out, _) = run(&["coeffs", "xi", "--jmax", "3", "--kmax", "5"]);
    assert_eq!(code, EXIT_OK);
    let has = |j: i64, l: i64, k: u64, v: &str| {
        out.lines()
            .any(|line| line.starts_with(&format!("{j}\t{l}\t{k}\t{v}\t")))
    };
    assert!(has(2, 1, 1, "1/32"));
    assert!(has(3, -1, 3, "-15/256"));
    assert!(has(3, 3, 5, "35/4096"));
    assert!(has(2, -2, 1, "0"));
}

#[test]
fn primes_table_row_three() {
    let (code, out, _) = run(&["primes", "table", "--q0", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "q0\tM4\tM2\tM1_odd\tM5\tM3\tM1_even\tM1\tn\tm\n3\t7\t5\t7\t-\t-\t-\t7\t7\t98\n"
    );
}

#[test]
fn long_rows_need_flag() {
    let (code, _, err) = run(&["primes", "table", "--q0", "499"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--allow-long"));
    let (code, _, _) = run(&["rigidity", "certify", "--q0", "9"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn prime_check_record() {
    let (code, out, _) = run(&[
        "primes", "check", "--q0", "5", "--q", "11", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["a_good"], true);
    assert_eq!(v["b_good"], true);
    assert_eq!(
        run(&["primes", "check", "--q0", "5", "--q", "12"]).0,
        EXIT_USAGE
    );
}

#[test]
fn identities_alternating() {
    let (code, out, err) = run(&["identities", "--alternating", "--jmax", "40"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 41);
    assert!(out.lines().skip(1).all(|l| l.ends_with("\ttrue")));
}

#[test]
fn identities_chebyshev_small() {
    let (code, out, _) = run(&[
        "identities",
        "--chebyshev",
        "--kmax",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(r#"{"identity":"shared_kernel","index":"k=7,p=5","holds":true}"#));
}

#[test]
fn rigidity_certificate_json() {
    let (code, out, _) = run(&[
        "rigidity", "certify", "--q0", "3", "--mode", "odd", "--m", "2", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h_final"], 3);
    assert_eq!(v["mode"], "odd");
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    assert_eq!(v["witness"]["second_pass_nonzero"], true);
}

#[test]
fn truncated_rigidity_run_fails_with_index() {
    let (code, out, err) = run(&["rigidity", "certify", "--q0", "5", "--hmax", "4"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("4\t2\t4\t2\tfalse\t-"));
    assert!(err.contains("kernel still nonzero at h=4"), "{err}");
}

#[test]
fn rigidity_argument_errors() {
    assert_eq!(
        run(&["rigidity", "certify", "--q0", "5", "--mode", "both"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["rigidity", "certify", "--q0", "5", "--hmax", "99"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&["rigidity", "certify", "--q0", "4"]).0, EXIT_USAGE);
}

#[test]
fn billiard_checks_pass() {
    let (code, out, err) = run(&["billiard", "verify", "--e", "0.3", "--steps", "1000"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().skip(1).all(|l| l.ends_with("\ttrue")));
    assert_eq!(run(&["billiard", "verify", "--e", "1.5"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["billiard", "verify", "--lambda", "2.0"]).0,
        EXIT_USAGE
    );
}

#[test]
fn worked_examples() {
    let (code, out, _) = run(&["examples", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["nondegenerate"], true);
    assert_eq!(v["doubling_chain_mod5"], serde_json::json!([2, 4, 3, 1]));
    assert_eq!(v["doubling_chain_mod7"], serde_json::json!([2, 4, 1]));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["coeffs", "beta", "--frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Usage"));
    assert_eq!(run(&["nonsense"]).0, EXIT_USAGE);
    assert_eq!(run(&["coeffs", "beta", "--jmax", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "coeffs", "xi", "--jmax", "2", "--kmax", "4", "--format", "json",
    ];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["identities", "--format", "json", "--jmax", "10"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn out_flag_writes_manifest() {
    let dir = std::env::temp_dir().join(format!("caustics-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("beta.tsv");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["coeffs", "beta", "--jmax", "2", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let body = std::fs::read(&path).unwrap();
    let m: RunManifest =
        serde_json::from_str(&std::fs::read_to_string(RunManifest::path_for(&path)).unwrap())
            .unwrap();
    assert_eq!(m.subcommand, "coeffs beta");
    assert_eq!(m.parameters, ["--jmax", "2", "--out", p]);
    assert_eq!(m.outputs[0].sha256, sha256_hex(&body));
    assert_eq!(m.outputs[0].bytes, body.len());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_caustics");
    let ok = Command::new(bin)
        .args(["primes", "table", "--q0", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("5\t13\t10\t13\t11\t19\t22\t22\t22\t308"));
    let bad = Command::new(bin)
        .args(["primes", "tabel"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
