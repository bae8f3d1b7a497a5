use branchcov::plcov::{analyze, BranchReport};
use branchcov::report::{fixture, BezoutReport, FixtureInput, ReportEnvelope};
use branchcov_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("branchcov").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn envelope(args: &[&str]) -> ReportEnvelope {
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn notbranched_witness() {
    let env = envelope(&[
        "plcov",
        "check",
        "fixtures:notbranched-i",
        "--expect",
        "is_branched=false",
    ]);
    let w = &env.payload["branch_witness"];
    assert_eq!(w["point"], serde_json::json!(["0", "3/2"]));
    assert_eq!(
        (w["left"].as_u64(), w["right"].as_u64()),
        (Some(1), Some(2))
    );
    assert_eq!(env.seed, None);
    assert_eq!(env.timing_ms, None);
}

#[test]
fn reports_round_trip() {
    let env = envelope(&["plcov", "check", "fixtures:notbranched-ii-pl"]);
    let back: BranchReport = serde_json::from_value(env.payload).unwrap();
    let FixtureInput::Plcov(cov) = fixture("notbranched-ii-pl").input else {
        panic!()
    };
    assert_eq!(back, analyze(&cov));
    let env = envelope(&["bezout", "analyze", "--point", "0,-2"]);
    let back: BezoutReport = serde_json::from_value(env.payload.clone()).unwrap();
    assert_eq!(serde_json::to_value(&back).unwrap(), env.payload);
}

#[test]
fn bezout_example() {
    let env = envelope(&["bezout", "analyze", "--n", "3", "--point", "4,5,2"]);
    assert_eq!(env.payload["d"], 3);
    assert_eq!(env.payload["index"], 2);
    assert_eq!(env.payload["collapse"], false);
}

#[test]
fn fuzz_empty_and_seeded() {
    let env = envelope(&["fintop", "fuzz", "--seed", "42", "--trials", "0"]);
    assert_eq!(env.seed, Some(42));
    assert_eq!(env.payload["instances"], 0);
    assert_eq!(env.payload["failures"], serde_json::json!([]));
    let a = invoke(&["fintop", "fuzz", "--seed", "7", "--trials", "50"]);
    let b = invoke(&["fintop", "fuzz", "--seed", "7", "--trials", "50"]);
    assert_eq!(a, b);
}

#[test]
fn timing_is_opt_in() {
    let env = envelope(&["--timing", "fixtures", "list"]);
    assert!(env.timing_ms.is_some());
}

#[test]
fn expect_mismatch_exits_one() {
    let (code, out, err) = invoke(&[
        "plcov",
        "check",
        "fixtures:x-cross",
        "--expect",
        "is_branched=false",
    ]);
    assert_eq!(code, 1);
    assert!(!out.is_empty());
    assert!(err.contains("is_branched"), "{err}");
    let (code, _, _) = invoke(&["plcov", "check", "fixtures:x-cross", "--expect", "b.0.1=2"]);
    assert_eq!(code, 0);
}

#[test]
fn input_errors_exit_two() {
    let cases: &[(&[&str], &str)] = &[
        (&["bezout", "analyze", "--point", "1,1/0"], "--point[1]"),
        (
            &["bezout", "analyze", "--n", "2", "--point", "1,2,3"],
            "--point",
        ),
        (&["bezout", "mu", "--point", "0,-2", "--f", "x1"], "--width"),
        (&["bezout", "mu", "--point", "0,-1", "--f", "x3"], "--f"),
        (&["plcov", "check", "fixtures:missing"], "unknown fixture"),
        (&["plcov", "check", "fixtures:finite-x"], "wrong kind"),
        (&["plcov", "check", "/nonexistent/input.json"], "input"),
        (
            &[
                "fintop",
                "check",
                "--lemma",
                "nope",
                "--instance",
                "fixtures:finite-x",
            ],
            "--lemma",
        ),
        (
            &[
                "fintop",
                "fuzz",
                "--seed",
                "1",
                "--trials",
                "1",
                "--max-points",
                "40",
            ],
            "--max-points",
        ),
        (
            &["plcov", "check", "fixtures:x-cross", "--expect", "novalue"],
            "--expect",
        ),
        (&["nosuchcommand"], "nosuchcommand"),
    ];
    for (args, needle) in cases {
        let (code, out, err) = invoke(args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn malformed_json_names_field() {
    let dir = std::env::temp_dir().join(format!("branchcov-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"base":["-1","1"],"segments":[{"x":["-1","1"],"slope":"1/x","intercept":"0"}]}"#,
    )
    .unwrap();
    let (code, _, err) = invoke(&["plcov", "check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("segments[0].slope"), "{err}");
    std::fs::write(
        &bad,
        r#"{"domain":[[1,0],[0,1]],"codomain":[[1]],"map":[0,3]}"#,
    )
    .unwrap();
    let (code, _, err) = invoke(&["fintop", "analyze", "--instance", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("--instance"), "{err}");
    let (code, _, err) = invoke(&[
        "plcov",
        "check",
        "fixtures:x-cross",
        "--svg",
        dir.join("no/such/dir.svg").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("--svg"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fixture_dir_override() {
    let dir = std::env::temp_dir().join(format!("branchcov-fx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("flat.json"),
        r#"{"name":"flat","description":"one sheet","kind":"plcov","input":{"base":["0","1"],"segments":[{"x":["0","1"],"slope":"0","intercept":"0"}]},"expect":{"d":1}}"#,
    )
    .unwrap();
    std::env::set_var("BRANCHCOV_FIXTURES", &dir);
    let env = envelope(&["plcov", "check", "fixtures:flat", "--expect", "d=1"]);
    std::env::remove_var("BRANCHCOV_FIXTURES");
    assert_eq!(env.payload["is_branched"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}
