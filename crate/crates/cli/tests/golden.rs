use std::path::PathBuf;

use branchcov_cli::run;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

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

/// Compares against the stored file; `BLESS=1` rewrites it instead.
fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        expected == actual,
        "output differs from {}:\n{actual}",
        path.display()
    );
}

fn golden(name: &str, args: &[&str]) {
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "{err}");
    check_golden(name, &out);
}

#[test]
fn plcov_fixtures() {
    golden(
        "plcov-notbranched-i.json",
        &["plcov", "check", "fixtures:notbranched-i"],
    );
    golden(
        "plcov-notbranched-ii-pl.json",
        &["plcov", "check", "fixtures:notbranched-ii-pl"],
    );
    golden(
        "plcov-x-cross.json",
        &["plcov", "check", "fixtures:x-cross"],
    );
    golden(
        "plcov-x-cross-left.json",
        &[
            "plcov",
            "restrict",
            "fixtures:x-cross",
            "--lo",
            "-1",
            "--hi",
            "0",
        ],
    );
}

#[test]
fn bezout_reports() {
    golden(
        "bezout-analyze-4-5-2.json",
        &["bezout", "analyze", "--n", "3", "--point", "4,5,2"],
    );
    golden(
        "bezout-analyze-0-neg2.json",
        &["bezout", "analyze", "--point", "0,-2"],
    );
    golden(
        "bezout-analyze-nonhyperbolic.json",
        &["bezout", "analyze", "--point", "0,1"],
    );
    golden(
        "bezout-mu.json",
        &["bezout", "mu", "--point", "4,5,2", "--f", "x1*x2 + 3"],
    );
    golden(
        "bezout-integral.json",
        &["bezout", "integral", "--point", "3,2", "--f", "x1^2 - x2"],
    );
    golden(
        "bezout-section.json",
        &["bezout", "section", "--point", "4,5,2", "--gamma", "3,1,2"],
    );
    golden(
        "bezout-resultant-2.json",
        &["bezout", "resultant", "--n", "2", "--point", "3,2"],
    );
}

#[test]
fn fintop_reports() {
    golden(
        "fintop-finite-x.json",
        &["fintop", "analyze", "--instance", "fixtures:finite-x"],
    );
    golden(
        "fintop-check-genbranch.json",
        &[
            "fintop",
            "check",
            "--lemma",
            "genbranch",
            "--instance",
            "fixtures:finite-x",
        ],
    );
    golden(
        "fintop-fuzz-empty.json",
        &["fintop", "fuzz", "--seed", "42", "--trials", "0"],
    );
    golden(
        "fintop-fuzz-42.json",
        &[
            "fintop",
            "fuzz",
            "--seed",
            "42",
            "--trials",
            "200",
            "--max-points",
            "5",
        ],
    );
}

#[test]
fn fixture_registry() {
    golden("fixtures-list.json", &["fixtures", "list"]);
    golden(
        "fixtures-show-finite-x.json",
        &["fixtures", "show", "finite-x"],
    );
}

#[test]
fn svg_and_csv() {
    let dir = std::env::temp_dir().join(format!("branchcov-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["notbranched-i", "x-cross"] {
        let svg = dir.join(format!("{name}.svg"));
        let csv = dir.join(format!("{name}.csv"));
        let src = format!("fixtures:{name}");
        let (code, _, err) = invoke(&[
            "plcov",
            "check",
            &src,
            "--svg",
            svg.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        check_golden(
            &format!("{name}.svg"),
            &std::fs::read_to_string(&svg).unwrap(),
        );
        check_golden(
            &format!("{name}.csv"),
            &std::fs::read_to_string(&csv).unwrap(),
        );
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
