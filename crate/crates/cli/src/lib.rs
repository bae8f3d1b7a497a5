//! Command-line front end: parses arguments, runs one analysis and writes a
//! JSON report envelope to standard output.
//!
//! Exit codes: 0 on success, 1 when an `--expect` assertion fails, 2 on
//! input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use branchcov::bezoutian::{
    integral_poly, mu_eval, real_part_resultant, section, section_gamma, sigma_map, symfun_eval,
    validate_permutation, BezError, EvalMode, SigmaPoint,
};
use branchcov::finitetop::{
    check_all_verdicts, check_lemma, fuzz, lemma_ids, sweep, FinMap, SIZE_CAP,
};
use branchcov::plcov::{analyze, PLCovering};
use branchcov::polycore::{isolate_real_roots, parse_poly, AlgebraicReal};
use branchcov::report::{
    bezout_report, check_expect, fiber_csv, fintop_report, fixture_names, input_report,
    load_fixture, parse_expect, render_svg, Coord, FixtureInput, Mismatch, ReportEnvelope,
};
use branchcov::Rat;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value as Json};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(
    name = "branchcov",
    version,
    about = "Construct and verify branched coverings exactly"
)]
struct Cli {
    /// Include wall-clock timing in the envelope.
    #[arg(long, global = true)]
    timing: bool,
    /// Assert a report field, as `key=value` with a dotted key path.
    #[arg(long = "expect", global = true, value_name = "KEY=VALUE")]
    expect: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The covering of coefficient space by elementary symmetric functions.
    #[command(subcommand)]
    Bezout(BezoutCmd),
    /// Piecewise-linear coverings of an interval.
    #[command(subcommand)]
    Plcov(PlcovCmd),
    /// Finite topological spaces.
    #[command(subcommand)]
    Fintop(FintopCmd),
    /// The shipped fixture registry.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Expected dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated rational coordinates.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
}

#[derive(Args, Debug)]
struct FunctionArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Polynomial in x1..xn.
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    /// Enclosure width; selects certified interval evaluation.
    #[arg(long)]
    width: Option<String>,
}

#[derive(Subcommand, Debug)]
enum BezoutCmd {
    /// Hyperbolicity, fiber, index and collapse at a point.
    Analyze(PointArgs),
    /// Fiber average of a polynomial function.
    Mu(FunctionArgs),
    /// Elementary symmetric function of the fiber values.
    Symfun {
        #[command(flatten)]
        args: FunctionArgs,
        #[arg(long)]
        k: usize,
    },
    /// Monic polynomial annihilating every fiber value.
    Integral(FunctionArgs),
    /// The ascending section, optionally permuted.
    Section {
        #[command(flatten)]
        point: PointArgs,
        /// Comma-separated 1-based permutation.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// The real-part resultant, optionally specialized at a point.
    Resultant {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Coefficient point of a tuple.
    Sigma {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Subcommand, Debug)]
enum PlcovCmd {
    /// Quasi-covering and branched-covering verdicts with witnesses.
    Check {
        /// A JSON file or `fixtures:<name>`.
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Analysis of the restriction over `[lo, hi]`.
    Restrict {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
    },
}

#[derive(Subcommand, Debug)]
enum FintopCmd {
    /// Seeded random quasi-coverings against the lemma registry.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 5)]
        max_points: usize,
    },
    /// Every labeled quasi-covering up to the given sizes.
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
        #[arg(long, default_value_t = 3)]
        max_codomain: usize,
    },
    /// One lemma, or `all`, on one instance.
    Check {
        #[arg(long)]
        lemma: String,
        /// A JSON file or `fixtures:<name>`.
        #[arg(long)]
        instance: String,
    },
    /// Covering analysis of one instance.
    Analyze {
        #[arg(long)]
        instance: String,
    },
    /// Registered lemma ids.
    Lemmas,
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    List,
    Show { name: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{field}: {msg}")]
    Input { field: String, msg: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn input(field: impl Into<String>, msg: impl ToString) -> CliError {
        CliError::Input {
            field: field.into(),
            msg: msg.to_string(),
        }
    }
}

type Res<T> = Result<T, CliError>;

struct Outcome {
    payload: Json,
    seed: Option<u64>,
}

fn payload(v: impl serde::Serialize) -> Outcome {
    Outcome {
        payload: serde_json::to_value(v).expect("reports serialize"),
        seed: None,
    }
}

fn parse_rat(field: &str, s: &str) -> Res<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| CliError::input(field, format!("invalid rational {s:?}: {e}")))
}

fn parse_rats(field: &str, s: &str) -> Res<Vec<Rat>> {
    s.split(',')
        .enumerate()
        .map(|(i, c)| parse_rat(&format!("{field}[{i}]"), c))
        .collect()
}

fn sigma_point(p: &PointArgs) -> Res<SigmaPoint> {
    let coords = parse_rats("--point", &p.point)?;
    if let Some(n) = p.n {
        if n != coords.len() {
            return Err(CliError::input(
                "--point",
                format!("expected {n} coordinates, got {}", coords.len()),
            ));
        }
    }
    SigmaPoint::new(coords).map_err(|e| CliError::input("--point", e))
}

fn eval_mode(width: &Option<String>) -> Res<EvalMode> {
    Ok(match width {
        None => EvalMode::Exact,
        Some(w) => EvalMode::Interval {
            width: parse_rat("--width", w)?,
        },
    })
}

fn function(a: &FunctionArgs) -> Res<(SigmaPoint, branchcov::polycore::MPoly, EvalMode)> {
    let p = sigma_point(&a.point)?;
    let f = parse_poly(&a.f, p.n()).map_err(|e| CliError::input("--f", e))?;
    Ok((p, f, eval_mode(&a.width)?))
}

fn coord(r: &AlgebraicReal) -> Coord {
    match r.exact() {
        Some(v) => Coord::Exact(v.clone()),
        None => Coord::Interval(r.lo().clone(), r.hi().clone()),
    }
}

/// Deserializes with the failing field path in the diagnostic.
fn from_json<T: DeserializeOwned>(field: &str, src: &str) -> Res<T> {
    let de = &mut serde_json::Deserializer::from_str(src);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let at = if path == "." {
            field.to_string()
        } else {
            format!("{field}: {path}")
        };
        CliError::input(at, e.into_inner())
    })
}

/// Reads a JSON file or a `fixtures:<name>` reference.
fn read_input<T: DeserializeOwned>(
    field: &str,
    src: &str,
    pick: fn(FixtureInput) -> Option<T>,
) -> Res<T> {
    if let Some(name) = src.strip_prefix("fixtures:") {
        let fx = load_fixture(name).map_err(|e| CliError::input(field, e))?;
        return pick(fx.input)
            .ok_or_else(|| CliError::input(field, format!("fixture {name:?} has the wrong kind")));
    }
    let text =
        std::fs::read_to_string(src).map_err(|e| CliError::input(field, format!("{src}: {e}")))?;
    from_json(field, &text)
}

fn plcov_input(src: &str) -> Res<PLCovering> {
    read_input("input", src, |i| match i {
        FixtureInput::Plcov(c) => Some(c),
        _ => None,
    })
}

fn fintop_input(src: &str) -> Res<FinMap> {
    read_input("--instance", src, |i| match i {
        FixtureInput::Fintop(f) => Some(f),
        _ => None,
    })
}

fn write_file(field: &str, path: &Path, contents: &str) -> Res<()> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::input(field, format!("{}: {e}", path.display())))
}

fn bezout(cmd: &BezoutCmd) -> Res<Outcome> {
    let bez = |field: &str, e: BezError| match e {
        BezError::UseIntervalMode => CliError::input(
            "--width",
            "irrational fiber values; pass --width for a certified enclosure",
        ),
        e => CliError::input(field, e),
    };
    Ok(match cmd {
        BezoutCmd::Analyze(p) => {
            payload(bezout_report(&sigma_point(p)?).map_err(|e| bez("--point", e))?)
        }
        BezoutCmd::Mu(a) => {
            let (p, f, mode) = function(a)?;
            payload(json!({"mu": mu_eval(&p, &f, &mode).map_err(|e| bez("--point", e))?}))
        }
        BezoutCmd::Symfun { args, k } => {
            let (p, f, mode) = function(args)?;
            payload(
                json!({"k": k, "value": symfun_eval(&p, &f, *k, &mode).map_err(|e| bez("--k", e))?}),
            )
        }
        BezoutCmd::Integral(a) => {
            let (p, f, mode) = function(a)?;
            let poly = integral_poly(&p, &f, &mode).map_err(|e| bez("--width", e))?;
            payload(json!({"degree": poly.degree(), "coefficients": poly}))
        }
        BezoutCmd::Section { point, gamma } => {
            let p = sigma_point(point)?;
            let s = match gamma {
                None => section(&p),
                Some(g) => {
                    let g: Vec<usize> = g
                        .split(',')
                        .map(|c| {
                            c.trim().parse().map_err(|_| {
                                CliError::input("--gamma", format!("invalid index {c:?}"))
                            })
                        })
                        .collect::<Res<_>>()?;
                    validate_permutation(&g, p.n()).map_err(|e| bez("--gamma", e))?;
                    section_gamma(&p, &g)
                }
            }
            .map_err(|e| bez("--point", e))?;
            payload(json!({"section": s.iter().map(coord).collect::<Vec<_>>()}))
        }
        BezoutCmd::Resultant { n, point } => {
            let r = real_part_resultant(*n).map_err(|e| bez("--n", e))?;
            let mut names: Vec<String> = (1..=*n).map(|j| format!("u{j}")).collect();
            names.push("x".to_string());
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut out =
                json!({"n": n, "variables": names, "resultant": r.poly.display_with(&refs)});
            if let Some(pt) = point {
                let a =
                    SigmaPoint::new(parse_rats("--point", pt)?).map_err(|e| bez("--point", e))?;
                if a.n() != *n {
                    return Err(CliError::input(
                        "--point",
                        format!("expected {n} coordinates, got {}", a.n()),
                    ));
                }
                let roots = isolate_real_roots(&branchcov::bezoutian::vieta_poly(&a))
                    .map_err(|e| CliError::input("--point", e))?;
                let checks: Vec<Json> = roots
                    .roots
                    .iter()
                    .map(|(z, _)| json!({"root": coord(z), "vanishes": r.vanishes_at(&a, z)}))
                    .collect();
                out["at_point"] = json!(r.at_point(&a));
                out["roots"] = Json::Array(checks);
            }
            payload(out)
        }
        BezoutCmd::Sigma { x } => payload(
            json!({"point": sigma_map(&parse_rats("--x", x)?).map_err(|e| bez("--x", e))?.coords()}),
        ),
    })
}

fn plcov(cmd: &PlcovCmd) -> Res<Outcome> {
    Ok(match cmd {
        PlcovCmd::Check { input, svg, csv } => {
            let cov = plcov_input(input)?;
            let report = analyze(&cov);
            if let Some(path) = svg {
                write_file("--svg", path, &render_svg(&cov, &report))?;
            }
            if let Some(path) = csv {
                write_file("--csv", path, &fiber_csv(&report))?;
            }
            payload(report)
        }
        PlcovCmd::Restrict { input, lo, hi } => {
            let cov = plcov_input(input)?;
            let (lo, hi) = (parse_rat("--lo", lo)?, parse_rat("--hi", hi)?);
            let sub = cov
                .restrict(&lo, &hi)
                .map_err(|e| CliError::input("--lo", e))?;
            payload(json!({"covering": sub, "report": analyze(&sub)}))
        }
    })
}

fn fintop(cmd: &FintopCmd) -> Res<Outcome> {
    let top = |field: &str, e: branchcov::finitetop::TopError| CliError::input(field, e);
    Ok(match cmd {
        FintopCmd::Fuzz {
            seed,
            trials,
            max_points,
        } => {
            if *max_points == 0 || *max_points > SIZE_CAP {
                return Err(CliError::input(
                    "--max-points",
                    format!("must be in 1..={SIZE_CAP}"),
                ));
            }
            let mut o =
                payload(fuzz(*seed, *trials, *max_points).map_err(|e| top("--max-points", e))?);
            o.seed = Some(*seed);
            o
        }
        FintopCmd::Sweep {
            max_points,
            max_codomain,
        } => payload(sweep(*max_points, *max_codomain).map_err(|e| top("--max-points", e))?),
        FintopCmd::Check { lemma, instance } => {
            let f = fintop_input(instance)?;
            if lemma == "all" {
                payload(check_all_verdicts(&f).map_err(|e| top("--instance", e))?)
            } else {
                payload(check_lemma(lemma, &f).map_err(|e| top("--lemma", e))?)
            }
        }
        FintopCmd::Analyze { instance } => {
            payload(fintop_report(&fintop_input(instance)?).map_err(|e| top("--instance", e))?)
        }
        FintopCmd::Lemmas => payload(lemma_ids()),
    })
}

fn fixtures(cmd: &FixturesCmd) -> Res<Outcome> {
    Ok(match cmd {
        FixturesCmd::List => {
            let list: Res<Vec<Json>> = fixture_names()
                .into_iter()
                .map(|n| {
                    let f = load_fixture(&n).map_err(|e| CliError::input("fixture", e))?;
                    let kind =
                        serde_json::to_value(&f.input).expect("fixtures serialize")["kind"].clone();
                    Ok(json!({"name": f.name, "kind": kind, "description": f.description}))
                })
                .collect();
            payload(list?)
        }
        FixturesCmd::Show { name } => {
            let f = load_fixture(name).map_err(|e| CliError::input("name", e))?;
            let report = input_report(&f.input).map_err(|e| CliError::input("input", e))?;
            payload(json!({"fixture": f, "report": report}))
        }
    })
}

fn dispatch(cmd: &Command) -> Res<Outcome> {
    match cmd {
        Command::Bezout(c) => bezout(c),
        Command::Plcov(c) => plcov(c),
        Command::Fintop(c) => fintop(c),
        Command::Fixtures(c) => fixtures(c),
    }
}

fn expectations(raw: &[String]) -> Res<Map<String, Json>> {
    raw.iter()
        .map(|s| {
            parse_expect(s).ok_or_else(|| {
                CliError::input("--expect", format!("expected KEY=VALUE, got {s:?}"))
            })
        })
        .collect()
}

fn execute(cli: &Cli, argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> Res<i32> {
    let expect = expectations(&cli.expect)?;
    let start = Instant::now();
    let outcome = dispatch(&cli.command)?;
    let mut env = ReportEnvelope::new(argv, outcome.payload);
    env.seed = outcome.seed;
    if cli.timing {
        env.timing_ms = Some(format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
    }
    let text = serde_json::to_string_pretty(&env).expect("envelope serializes");
    writeln!(out, "{text}").map_err(|e| CliError::Usage(e.to_string()))?;
    let mismatches: Vec<Mismatch> = check_expect(&env.payload, &expect);
    for m in &mismatches {
        let actual = m
            .actual
            .as_ref()
            .map_or("missing".to_string(), Json::to_string);
        let _ = writeln!(
            err,
            "expectation failed: {} expected {} got {actual}",
            m.key, m.expected
        );
    }
    Ok(if mismatches.is_empty() { 0 } else { 1 })
}

/// Runs the tool on `argv` (including the program name), writing the report
/// to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, echo, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
