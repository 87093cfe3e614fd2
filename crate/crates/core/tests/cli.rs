use std::process::Command;

use spinorkit::cli::run;

fn cli(args: &[&str]) -> spinorkit::cli::Outcome {
    run(std::iter::once("spinorkit").chain(args.iter().copied()))
}

#[test]
fn classify_three_one() {
    let o = cli(&["classify", "--r", "3", "--s", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let row = o.stdout.lines().nth(1).unwrap();
    assert!(row.starts_with("(3,1)"));
    assert!(row.contains("H(2)"));
    assert!(row.trim_end().ends_with("ok"));
}

#[test]
fn classify_range_json() {
    let o = cli(&["classify", "--range", "4", "--json"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), (1..=4).map(|d| d + 1).sum::<usize>());
    assert!(rows.iter().all(|r| r["checked"] == true));
    let r31 = rows.iter().find(|r| r["r"] == 3 && r["s"] == 1).unwrap();
    assert_eq!(r31["full"], "H(2)");
}

#[test]
fn eval_contraction() {
    let o = cli(&["eval", "G^a G_a", "--dim", "4"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "-4·Id\n"));
    let o = cli(&["eval", "G^a G_a", "--dim", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["result"], "-6·Id");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify"][..],
        &["classify", "--r", "3"],
        &["verify", "--dim", "4"],
        &["verify", "--id", "gamma2", "--all", "--dim", "4"],
        &["gamma"],
        &["frobnicate"],
        &["lemmas", "--coframe", "diagonal"],
    ] {
        let o = cli(args);
        assert_eq!(o.code, 2, "{:?}", args);
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_two() {
    for args in [
        &["verify", "--id", "nope", "--dim", "4"][..],
        &["verify", "--id", "d4-gamma3", "--dim", "5"],
        &["eval", "G^a G^a", "--dim", "4"],
        &["conjugation", "--dim", "5", "--eta", "-1"],
        &["classify", "--range", "0"],
    ] {
        let o = cli(args);
        assert_eq!(o.code, 2, "{:?}", args);
        assert!(o.stderr.starts_with("error: "), "{:?}: {}", args, o.stderr);
    }
}

#[test]
fn help_exits_zero() {
    let o = cli(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("verify"));
}

#[test]
fn verify_single_identity() {
    let o = cli(&["verify", "--id", "gamma2", "--dim", "4"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("gamma2"));
    let o = cli(&["verify", "--id", "id:gamma3", "--dim", "7", "--json"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v[0]["id"], "gamma3");
    assert_eq!(v[0]["displayed_holds"], true);
}

#[test]
fn strict_mode_keys_on_displayed_reading() {
    let loose = cli(&["verify", "--id", "contraction-s", "--dim", "4"]);
    let strict = cli(&["verify", "--id", "contraction-s", "--dim", "4", "--strict"]);
    assert_eq!(loose.code, 0);
    assert_eq!(strict.code, 1);
    assert!(strict.stdout.contains("FAIL"));
}

#[test]
fn verify_all_four_reports_the_fierz_lemma() {
    let o = cli(&["verify", "--all", "--dim", "4", "--json"]);
    assert_eq!(o.code, 1);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let failing: Vec<&str> = v.as_array().unwrap().iter().filter(|r| r["pass"] == false).map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(failing, ["lemma-fierz"]);
}

#[test]
fn verify_all_six_passes() {
    let o = cli(&["verify", "--all", "--dim", "6"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
}

#[test]
fn outputs_are_deterministic() {
    for args in [&["gamma", "--dim", "5", "--json"][..], &["conjugation", "--dim", "4", "--eta", "-1", "--json"], &["verify", "--all", "--dim", "3"]] {
        assert_eq!(cli(args).stdout, cli(args).stdout);
    }
}

#[test]
fn gamma_json_schema() {
    let o = cli(&["gamma", "--dim", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["eta"], serde_json::json!([-1, 1, 1, 1]));
    let m = v["matrices"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    assert_eq!(m[0].as_array().unwrap().len(), 4);
    assert_eq!(m[0][0][0], serde_json::json!(["0", "0"]));
}

#[test]
fn conjugation_json() {
    let o = cli(&["conjugation", "--dim", "4", "--eta", "-1", "--json"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["invariant_failures"], serde_json::json!([]));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("spinorkit-cli-{}.json", std::process::id()));
    let o = cli(&["gamma", "--dim", "2", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text, cli(&["gamma", "--dim", "2", "--json"]).stdout);
}

#[test]
fn binary_exit_codes_and_format_env() {
    let bin = env!("CARGO_BIN_EXE_spinorkit");
    let st = Command::new(bin).args(["eval", "G^a G_a", "--dim", "4"]).env_remove("SPINORKIT_FORMAT").output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert_eq!(String::from_utf8(st.stdout).unwrap(), "-4·Id\n");
    let st = Command::new(bin).args(["eval", "G^a G_a", "--dim", "4"]).env("SPINORKIT_FORMAT", "json").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(v["result"], "-4·Id");
    let st = Command::new(bin).args(["eval", "Id", "--dim", "4"]).env("SPINORKIT_FORMAT", "yaml").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin).arg("classify").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin).args(["verify", "--id", "contraction-s", "--dim", "4", "--strict"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
}

#[test]
fn lemmas_table() {
    let o = cli(&["lemmas", "--coframe", "random", "--seed", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let rows = v["lemmas"].as_array().unwrap();
    for r in rows {
        let ok = r["id"] != "volume-identity";
        assert_eq!(r["pass"], ok, "{}", r);
    }
    assert_eq!(o.code, 1);
}
