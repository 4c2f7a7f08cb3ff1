use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invmetric")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn doc(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn dist_on_the_disc() {
    let o = run(&["dist", "--domain", r#"{"kind":"disc"}"#, "--kind", "carath", "--z", "0+0i", "--w", "0.5+0i"]);
    assert_eq!(code(&o), 0);
    let v = doc(&o);
    assert_eq!(v["schema"], 1);
    assert!((v["lo"].as_f64().unwrap() - 0.5f64.atanh()).abs() < 1e-12);
    assert_eq!(v["d_z"], 1.0);
    assert_eq!(v["d_w"], 0.5);
}

#[test]
fn bergman_is_root_two_times_poincare() {
    let o = run(&["dist", "--kind", "bergman", "--domain", r#"{"kind":"disc"}"#, "--z", "0+0i", "--w", "0.5+0i"]);
    assert_eq!(code(&o), 0);
    let lo = doc(&o)["lo"].as_f64().unwrap();
    assert!((lo - 2f64.sqrt() * 0.5f64.atanh()).abs() < 1e-9, "{lo}");
}

#[test]
fn equal_points_on_the_annulus() {
    let o = run(&["dist", "--domain", r#"{"kind":"annulus","r":2}"#, "--kind", "lempert", "--z", "1+0i", "--w", "1+0i"]);
    assert_eq!(code(&o), 0);
    assert_eq!(doc(&o)["hi"], 0.0);
}

#[test]
fn vector_points_on_the_ball() {
    let o = run(&[
        "dist",
        "--domain",
        r#"{"kind":"ball","dim":2}"#,
        "--z",
        r#"["0+0i", [0, 0]]"#,
        "--w",
        r#"["0.5+0i", "0-0.0i"]"#,
    ]);
    assert_eq!(code(&o), 0);
    assert!((doc(&o)["lo"].as_f64().unwrap() - 0.5f64.atanh()).abs() < 1e-12);
}

#[test]
fn bad_input_exits_2() {
    let cases: [&[&str]; 5] = [
        &["dist", "--domain", r#"{"kind":"disc","extra":1}"#, "--z", "0+0i", "--w", "0.5+0i"],
        &["dist", "--domain", r#"{"kind":"disc"}"#, "--z", "0.5", "--w", "0+0i"],
        &["dist", "--domain", r#"{"kind":"disc"}"#, "--kind", "nope", "--z", "0+0i", "--w", "0.5+0i"],
        &["verify", "--suite", "no-such-suite"],
        &["verify", "--suite", "disc-identities", "--tol", "-1"],
    ];
    for args in cases {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn unsupported_requests_exit_3() {
    assert_eq!(code(&run(&["fit", "--suite", "hull-upper"])), 3);
    assert_eq!(code(&run(&["verify", "--suite", "disc-identities", "--domain", r#"{"kind":"disc"}"#])), 3);
    let o = run(&["dist", "--domain", r#"{"kind":"annulus","r":2}"#, "--kind", "carath", "--z", "1+0i", "--w", "1.5+0i"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--suite", "support-lower", "--samples", "200", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = doc(&a);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["seed"], 7);
}

#[test]
fn sector_suite_reaches_the_limit() {
    let o = run(&["verify", "--suite", "sector-ratio"]);
    assert_eq!(code(&o), 0);
    let r = doc(&o)["fitted"][0]["value"].as_f64().unwrap();
    assert!((r - std::f64::consts::FRAC_PI_4).abs() < 0.02, "{r}");
}

#[test]
fn fit_on_the_disc() {
    let o = run(&["fit", "--suite", "sandwich", "--domain", r#"{"kind":"disc"}"#, "--samples", "50"]);
    assert_eq!(code(&o), 0);
    let v = doc(&o);
    assert_eq!(v["passed"], true);
    assert!(v["fitted"].as_array().unwrap().iter().all(|f| f["value"].as_f64().unwrap().is_finite()));
}

#[test]
fn sweep_tables_have_fixed_headers() {
    let o = run(&["sweep", "--experiment", "slit-coefficient", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,c,minus_log_d,quotient,exact,koebe_lower"));
    for l in lines {
        let q: f64 = l.split(',').nth(3).unwrap().parse().unwrap();
        assert!((q - 0.25).abs() < 1e-6, "{l}");
    }
    let o = run(&["sweep", "--experiment", "boundary-slope", "--format", "csv"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("d,minus_log_d,s\n"));
}

#[test]
fn output_goes_to_the_file() {
    let path = std::env::temp_dir().join(format!("invmetric-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&["verify", "--suite", "slit-coefficient", "--format", "csv", "--out", p]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("case,z,w,lhs,rhs,margin,tol\n"), "{text}");
}
