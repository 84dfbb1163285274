use std::path::PathBuf;
use std::process::{Command, Output};

use multmono::arith::TabulatedFunction;
use multmono::toeplitz::DeterminantSequence;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multmono")).args(args).output().expect("spawn multmono")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("multmono-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn derive_witness_row() {
    let out = stdout(&["derive", "--set", "multiples:2,3", "--n", "10"]);
    assert!(out.starts_with("# multmono derive set=multiples:2,3 n=10"));
    assert!(out.lines().any(|l| l == "6,-1"));
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["det", "--kernel", "nope:", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));

    for args in [
        &["det", "--kernel", "identity", "--n", "4", "--frobnicate"][..],
        &["det", "--kernel", "identity", "--n", "0"],
        &["det", "--kernel", "identity", "--n", "4", "--precision", "40"],
        &["derive", "--set", "multiples:2,3"],
        &["derive", "--set", "cubes", "--n", "5"],
        &["derive", "--set", "all", "--function", "omega", "--n", "5"],
        &["product", "--kernel", "identity", "--n", "5"],
        &["density", "--A", "squares", "--xgrid", "1e4,-3"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn runtime_errors_exit_1() {
    let o = run(&["det", "--kernel", "additive:coeffs=1,1", "--n", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("toeplitz:"));
    let o = run(&["szego", "--coeffs", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("szego:"));
    let o = run(&["alpha", "--function", "ln", "--set", "all"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_lists_grammars() {
    let out = stdout(&["--help"]);
    for needle in ["hilberdink:sigma=cm,s=S", "dfactor:A=SET,q=Q", "multiples:a,b,...", "min-omega:k"] {
        assert!(out.contains(needle), "{needle}");
    }
}

#[test]
fn det_config_and_round_trip() {
    let out = stdout(&["det", "--kernel", "hilberdink:sigma=recip", "--n", "64", "--precision", "128"]);
    assert!(out.starts_with("# multmono det kernel=hilberdink:sigma=recip n=64 precision=128\n"));
    let seq = DeterminantSequence::read_csv(out.as_bytes()).unwrap();
    assert_eq!(seq.len(), 64);
    assert_eq!(seq.precision_bits, 128);
    assert!((seq.ln_d[3] - 0.5f64.ln()).abs() < 1e-15);
}

#[test]
fn derive_round_trip_and_integral() {
    let out = stdout(&["derive", "--function", "id", "--n", "12"]);
    let df = TabulatedFunction::read_csv(out.as_bytes(), "cli").unwrap();
    assert_eq!(df.get_f64(6).unwrap(), 2.0);

    let path = scratch("phi.csv");
    std::fs::write(&path, out.as_bytes()).unwrap();
    let back = stdout(&["derive", "--table", path.to_str().unwrap(), "--integral"]);
    let f = TabulatedFunction::read_csv(back.as_bytes(), "cli").unwrap();
    assert_eq!(f.to_f64_vec(), (1..=12).map(|n| n as f64).collect::<Vec<_>>());
}

#[test]
fn deterministic_output_and_out_file() {
    let args = ["product", "--kernel", "hilberdink:sigma=cm,s=3/2", "--n", "40", "--precision", "128", "--compare"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let seq = stdout(&[&args[..], &["--sequential"]].concat());
    // exec mode shows up in the header only
    assert_eq!(a.lines().skip(1).collect::<Vec<_>>(), seq.lines().skip(1).collect::<Vec<_>>());

    let path = scratch("product.json");
    let o = run(&[&args[..], &["--format", "json", "--out", path.to_str().unwrap()]].concat());
    assert!(o.status.success() && o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["kernel"], "hilberdink:sigma=cm,s=3/2");
    assert_eq!(v["result"]["ln_d"].as_array().unwrap().len(), 40);
    assert!(v["result"]["limit"]["interval"].is_object());
}

#[test]
fn density_squarefree() {
    let out = stdout(&["density", "--A", "squares", "--xgrid", "1e4,1e6"]);
    let last: Vec<f64> =
        out.lines().last().unwrap().split(',').take(4).map(|s| s.parse().unwrap()).collect();
    assert_eq!(last[0], 1e6);
    assert!(last[1] >= last[2] - 1e-3 && last[1] <= last[3] + 1e-3);
}

#[test]
fn alpha_and_monotone() {
    let out = stdout(&["alpha", "--set", "multiples:2,3", "--ygrid", "2,3,5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["config"]["ygrid"], "2.0,3.0,5.0");
    let ys = v["result"]["alpha_y"].as_array().unwrap();
    assert_eq!(ys.len(), 3);
    assert_eq!(v["result"]["alpha_y_nondecreasing"], true);

    let o = run(&["alpha", "--set", "list:2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not multiplicatively monotone"));

    let out = stdout(&["monotone", "--set", "list:2", "--n", "10"]);
    assert_eq!(out.lines().nth(2).unwrap().split(',').take(5).collect::<Vec<_>>(), ["10", "increasing", "false", "2", "4"]);
    let out = stdout(&["monotone", "--function", "divisors", "--n", "1e3"]);
    assert!(out.lines().nth(2).unwrap().starts_with("1000,increasing,true,"));
}

#[test]
fn toeplitz_reports() {
    let out = stdout(&["prop29", "--kernel", "identity", "--n", "100", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["alpha_proxy"], 0.0);
    assert_eq!(v["result"]["bound_holds"], true);

    let out = stdout(&["prop30", "--kernel", "dfactor:A=powers:2,q=1/2", "--n", "64"]);
    assert!(out.lines().nth(2).unwrap().ends_with(",true"));

    let out = stdout(&["szego", "--coeffs", "2,1/2", "--n", "16"]);
    let row: Vec<&str> = out.lines().last().unwrap().split(',').collect();
    assert_eq!(row[0], "16");
    assert!((row[3].parse::<f64>().unwrap() - (2.0 + 3f64.sqrt()) / 2.0).abs() < 1e-12);

    let out = stdout(&["szego", "--coeffs", "2,1", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["symbol"]["limit_applicable"], false);
    assert_eq!(v["result"]["symbol"]["coefficients"], serde_json::json!(["2", "1"]));
}
