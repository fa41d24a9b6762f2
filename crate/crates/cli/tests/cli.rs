use std::process::{Command, Output};

use picalc_cli::bench::BenchRecord;

fn picalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picalc")).args(args).env_remove("PI_GUARD_BITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_agrees_across_algorithms() {
    let runs = [
        picalc(&["compute", "--constant", "pi", "--algo", "machin", "--formula", "machin", "--digits", "15"]),
        picalc(&["compute", "--constant", "pi", "--algo", "legendre", "--k", "0.6", "--digits", "15"]),
        picalc(&["compute", "--digits", "15"]),
        picalc(&["compute", "--algo", "machin", "--formula", "atan(1/2) + atan(1/3)", "--digits", "15", "--mul", "schoolbook"]),
    ];
    for o in &runs {
        assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
        assert_eq!(stdout(o), "3.141592653589793\n");
    }
}

#[test]
fn invalid_formula_is_a_usage_error() {
    let o = picalc(&["compute", "--constant", "pi", "--algo", "machin", "--formula", "4*atan(1/5) - 1*atan(1/238)", "--digits", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("invalid formula"), "{err}");
    assert_eq!(err.lines().count(), 1);
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "--digits", "10", "--algo", "legendre", "--k", "1.5"][..],
        &["compute", "--digits", "10", "--k", "0.5"],
        &["compute", "--digits", "10", "--formula", "machin"],
        &["compute", "--constant", "e_pi", "--algo", "agm", "--digits", "10"],
        &["compute", "--constant", "tau", "--digits", "10"],
        &["compute", "--digits", "0"],
        &["compute", "--digits", "10", "--mul", "fft"],
        &["compute"],
        &["verify", "--digits", "10", "--algos", "agm,bogus"],
        &["bench", "--digits-list", "10", "--repeat", "0"],
        &["frobnicate"],
    ] {
        let o = picalc(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn named_constants() {
    let cases = [
        ("e_pi", "20", "23.14069263277926900572"),
        ("pi_over_e", "20", "1.15572734979092171791"),
        ("ln2", "20", "0.69314718055994530941"),
        ("pi", "20", "3.14159265358979323846"),
    ];
    for (name, digits, want) in cases {
        let o = picalc(&["compute", "--constant", name, "--digits", digits]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim_end(), want, "{name}");
    }
}

#[test]
fn out_file_gets_the_digits() {
    let path = std::env::temp_dir().join(format!("picalc-out-{}.txt", std::process::id()));
    let o = picalc(&["compute", "--digits", "30", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "3.141592653589793238462643383279\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_passes_and_catches_faults() {
    let o = picalc(&["verify", "--digits", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = picalc(&["verify", "--digits", "1000", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));

    let o = picalc(&["verify", "--digits", "1000", "--inject-fault", "legendre@0.6"]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    assert!(report.contains("first difference between"), "{report}");
    assert!(report.contains('['));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn bench_csv_round_trips() {
    let o = picalc(&["bench", "--digits-list", "100,300", "--mul-list", "schoolbook,ntt", "--repeat", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("algorithm,digits,mul_policy,wall_time_s,iterations_or_terms,agreement_prefix\n"));
    let rows: Vec<BenchRecord> = csv::Reader::from_reader(text.as_bytes()).deserialize().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.agreement_prefix >= r.digits));
    assert!(stderr(&o).contains("agm/machin="));
}

#[test]
fn bench_json_is_a_flat_array_of_six_fields() {
    let o = picalc(&["bench", "--digits-list", "50", "--mul-list", "auto", "--repeat", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    for rec in arr {
        let obj = rec.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["agreement_prefix", "algorithm", "digits", "iterations_or_terms", "mul_policy", "wall_time_s"]);
        assert!(obj.values().all(|v| !v.is_object() && !v.is_array()));
    }
}

#[test]
fn trace_csv() {
    let o = picalc(&["trace", "--digits", "100", "--value-digits", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("iteration,a_n,b_n,c_n_sq,correct_digits"));
    let first: Vec<_> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[..3], ["0", "1.0000000000", "0.7071067811"]);
    let last: u64 = text.lines().last().unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!(last >= 100);
}

#[test]
fn guard_bits_env() {
    let run = |g: &str| {
        Command::new(env!("CARGO_BIN_EXE_picalc"))
            .args(["compute", "--digits", "40", "--algo", "machin"])
            .env("PI_GUARD_BITS", g)
            .output()
            .unwrap()
    };
    let o = run("80");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "3.1415926535897932384626433832795028841971");
    assert_eq!(run("8").status.code(), Some(2));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = picalc(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
    assert!(!stdout(&o).contains("inject"));
}
