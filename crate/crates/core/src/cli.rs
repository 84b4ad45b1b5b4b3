//! Command-line front end. Every command prints a JSON envelope
//! `{command, config, status, result}` with all defaults spelled out.
//!
//! Exit codes: 0 success, 1 no certificate or witness by this method,
//! 2 usage or input error, 3 search bound or resource limit.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::appendix::{self, k4, laurent::LaurentSeries, norm, ResidueField};
use crate::arith;
use crate::certificate::Certificate;
use crate::elliptic::{self, CurveModel};
use crate::error::Error;
use crate::field::FiniteField;
use crate::global::{self, GenusPlan, SplitPrimeWitness, TorsionPairBounds, TorsionPairWitness, TorsorPrimeWitness};
use crate::local::{self, DiagonalForm, LocalWitness, SearchConfig, SearchMode};
use crate::poly::IntPoly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

const NO_CERTIFICATE: &str = "no certificate by this method";

#[derive(Parser, Debug)]
#[command(name = "abelian-points", version, about = "Certificates and searches for varieties without abelian points")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify that a diagonal cubic aX^3 + bY^3 + cZ^3 has no abelian points.
    CertifyCubic(CubicArgs),
    /// Certify the degree-ell staircase form sum p^i X_i^ell.
    CertifyCy(CyArgs),
    /// Try every prime dividing a coefficient of a diagonal form.
    Scan(ScanArgs),
    /// Look for a Hensel-liftable point of a diagonal form over Q_p.
    SolveLocal(SolveLocalArgs),
    /// Pick an admissible order N over F_q and a prime ell | N prime to q(q-1).
    FindEll(FindEllArgs),
    /// Supersingular prime for an index-ell torsor of y^2 = x^3 - 1555200.
    ThmEll(ThmEllArgs),
    /// (ell, p) pair and an F_p-curve with an ell-torsion point for a number field.
    Thm3(Thm3Args),
    /// Split prime p = 2 mod 3 for a number field.
    Cor2(Cor2Args),
    /// Genus g curve plan as a double cover of a genus one curve.
    GenusPlan(GenusArgs),
    /// Norm-equation certificate over Q((t))^ab.
    NormCert(NormArgs),
    /// Tame symbol of two Laurent series.
    TameSymbol(TameArgs),
    /// Certify a symmetric Galois group from Frobenius cycle types.
    SnCert(SnArgs),
    /// Stabilizers of S4 acting on the complete graph K4.
    K4(K4Args),
    /// Solutions of |2^s - 3^t| = 1 in a box.
    Catalan(CatalanArgs),
    /// Re-verify a JSON certificate or witness produced by another command.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct CubicArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    #[arg(long, allow_hyphen_values = true)]
    c: i64,
    /// Prime to certify at; without it every prime dividing a coefficient is tried.
    #[arg(long)]
    p: Option<u64>,
    /// Build a X^3 + b p Y^3 + c p^2 Z^3 instead of using the coefficients as written.
    #[arg(long, requires = "p")]
    staircase: bool,
    /// Certify only over extensions with this ramification index.
    #[arg(long)]
    ramification: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct CyArgs {
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    p: u64,
}

#[derive(Args, Debug, Serialize)]
struct ScanArgs {
    /// Diagonal form, e.g. "2x^3 + 4y^3 + 5z^3".
    #[arg(long)]
    form: String,
    #[arg(long, default_value_t = 1000)]
    p_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ModeArg {
    Auto,
    Exhaustive,
    Cascade,
}

#[derive(Args, Debug, Serialize)]
struct SolveLocalArgs {
    #[arg(long)]
    form: String,
    #[arg(long)]
    p: u64,
    /// Highest precision tried; the ladder is 1, 3, 5.
    #[arg(long, default_value_t = 5)]
    max_m: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, default_value_t = SearchConfig::default().budget)]
    budget: u64,
}

#[derive(Args, Debug, Serialize)]
struct FindEllArgs {
    #[arg(long)]
    q: u64,
    /// Also find an explicit curve over F_q with exactly N points.
    #[arg(long)]
    with_curve: bool,
}

#[derive(Args, Debug, Serialize)]
struct ThmEllArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long, default_value_t = global::DEFAULT_P_MAX)]
    p_max: u64,
}

#[derive(Args, Debug, Serialize)]
struct Thm3Args {
    /// Defining polynomial of the number field.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, default_value_t = global::DEFAULT_P_MAX)]
    p_max: u64,
    #[arg(long, default_value_t = global::DEFAULT_ELL_MAX)]
    ell_max: u64,
}

#[derive(Args, Debug, Serialize)]
struct Cor2Args {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, default_value_t = global::DEFAULT_P_MAX)]
    p_max: u64,
}

#[derive(Args, Debug, Serialize)]
struct GenusArgs {
    #[arg(long)]
    g: u64,
}

#[derive(Args, Debug, Serialize)]
struct NormArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Valuation of the right-hand side t in the uniformizer t^(1/2).
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    m: i64,
    #[arg(long, default_value_t = norm::DEFAULT_NORM_SCAN_BOUND)]
    scan_bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ResidueArg {
    Q,
    Qab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum TameExample {
    /// sqrt(2) over Q(sqrt 2) against the uniformizer t^(1/2).
    Sqrt2,
}

#[derive(Args, Debug, Serialize)]
struct TameArgs {
    /// Laurent series over Q in t, e.g. "t^-1 + 2 + O(t^5)".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "example")]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "example")]
    b: Option<String>,
    #[arg(long, value_enum, default_value_t = ResidueArg::Q)]
    residue: ResidueArg,
    #[arg(long, value_enum, conflicts_with_all = ["a", "b"])]
    example: Option<TameExample>,
}

#[derive(Args, Debug, Serialize)]
struct SnArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, default_value_t = 1000)]
    bound: u64,
}

#[derive(Args, Debug, Serialize)]
struct K4Args {}

#[derive(Args, Debug, Serialize)]
struct CatalanArgs {
    #[arg(long, default_value_t = 60)]
    s_max: u32,
    #[arg(long, default_value_t = 40)]
    t_max: u32,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// JSON file written by another command, or "-" for standard input.
    #[arg(long)]
    file: PathBuf,
}

/// Exit code and text produced by one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

enum Status {
    Ok(Value, String),
    None(Value, String),
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded(_) | Error::ResourceLimit(_) => EXIT_LIMIT,
        Error::NotFound(_) => EXIT_NONE,
        _ => EXIT_USAGE,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse<T: std::str::FromStr<Err = Error>>(flag: &str, text: &str) -> Result<T, Error> {
    text.parse()
        .map_err(|e: Error| Error::InvalidInput(format!("--{flag}: {e}")))
}

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome {
                code,
                output: e.to_string(),
            };
        }
    };
    let (name, config) = describe(&cli.command);
    let (code, status, result, summary) = match execute(&cli.command) {
        Ok(Status::Ok(v, s)) => (EXIT_OK, "ok", v, s),
        Ok(Status::None(v, s)) => (EXIT_NONE, "none", v, s),
        Err(e) => {
            let code = exit_code(&e);
            let status = if code == EXIT_LIMIT { "limit" } else if code == EXIT_NONE { "none" } else { "error" };
            (code, status, json!({ "error": e.to_string() }), e.to_string())
        }
    };
    let envelope = json!({
        "command": name,
        "config": config,
        "status": status,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&envelope).expect("serializable");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            return Outcome {
                code: EXIT_USAGE,
                output: format!("cannot write {}: {e}", path.display()),
            };
        }
    }
    let output = match cli.format {
        Format::Json => text,
        Format::Human => format!("{name}: {summary}"),
    };
    Outcome { code, output }
}

fn describe(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::CertifyCubic(a) => ("certify-cubic", to_value(a)),
        Command::CertifyCy(a) => ("certify-cy", to_value(a)),
        Command::Scan(a) => ("scan", to_value(a)),
        Command::SolveLocal(a) => ("solve-local", to_value(a)),
        Command::FindEll(a) => ("find-ell", to_value(a)),
        Command::ThmEll(a) => ("thm-ell", to_value(a)),
        Command::Thm3(a) => ("thm3", to_value(a)),
        Command::Cor2(a) => ("cor2", to_value(a)),
        Command::GenusPlan(a) => ("genus-plan", to_value(a)),
        Command::NormCert(a) => ("norm-cert", to_value(a)),
        Command::TameSymbol(a) => {
            let mut v = to_value(a);
            v["truncation"] = json!(appendix::DEFAULT_TRUNCATION);
            ("tame-symbol", v)
        }
        Command::SnCert(a) => ("sn-cert", to_value(a)),
        Command::K4(a) => ("k4", to_value(a)),
        Command::Catalan(a) => ("catalan", to_value(a)),
        Command::Verify(a) => ("verify", to_value(a)),
    }
}

fn certificate_status(cert: Option<Certificate>) -> Status {
    match cert {
        Some(c) => {
            let summary = format!("{:?} certificate for {}", c.kind, subject(&c));
            Status::Ok(to_value(&c), summary)
        }
        None => Status::None(json!({ "message": NO_CERTIFICATE }), NO_CERTIFICATE.into()),
    }
}

fn subject(c: &Certificate) -> String {
    match (&c.form, &c.polynomial, c.prime) {
        (Some(f), _, Some(p)) => format!("{f} at p = {p}"),
        (_, Some(f), _) => f.to_string(),
        _ => String::new(),
    }
}

fn execute(cmd: &Command) -> Result<Status, Error> {
    match cmd {
        Command::CertifyCubic(a) => {
            let form = if a.staircase {
                local::staircase_cubic_form(a.a, a.b, a.c, a.p.unwrap_or(0))?
            } else {
                DiagonalForm::from_i64(3, &[a.a, a.b, a.c])?
            };
            let cert = match (a.p, a.ramification) {
                (Some(p), Some(e)) => local::certify_staircase_local(&form, p, e)?,
                (Some(p), None) => local::certify_no_abelian_points(&form, p)?,
                (None, Some(_)) => {
                    return Err(Error::InvalidInput("--ramification needs --p".into()))
                }
                (None, None) => local::scan_primes_for_certificate(&form, u64::MAX)?
                    .into_iter()
                    .next(),
            };
            Ok(certificate_status(cert))
        }
        Command::CertifyCy(a) => {
            let form = local::build_cy_form(a.ell, a.p)?;
            Ok(certificate_status(local::certify_no_abelian_points(&form, a.p)?))
        }
        Command::Scan(a) => {
            let form: DiagonalForm = parse("form", &a.form)?;
            let certs = local::scan_primes_for_certificate(&form, a.p_max)?;
            let primes: Vec<u64> = certs.iter().filter_map(|c| c.prime).collect();
            if certs.is_empty() {
                Ok(Status::None(
                    json!({ "message": NO_CERTIFICATE, "certificates": [] }),
                    NO_CERTIFICATE.into(),
                ))
            } else {
                Ok(Status::Ok(
                    json!({ "certificates": certs }),
                    format!("{form}: certified at primes {primes:?}"),
                ))
            }
        }
        Command::SolveLocal(a) => {
            let form: DiagonalForm = parse("form", &a.form)?;
            let config = SearchConfig {
                mode: match a.mode {
                    ModeArg::Auto => SearchMode::Auto,
                    ModeArg::Exhaustive => SearchMode::Exhaustive,
                    ModeArg::Cascade => SearchMode::Cascade,
                },
                budget: a.budget,
            };
            match local::local_solve_escalating(&form, a.p, a.max_m, &config)? {
                Some(w) => {
                    let summary = format!(
                        "{form} has the Hensel-liftable point {:?} mod {}^{}",
                        w.point, w.prime, w.precision
                    );
                    Ok(Status::Ok(to_value(&w), summary))
                }
                None => {
                    let msg = format!("no Hensel witness found up to precision {}", a.max_m);
                    Ok(Status::None(json!({ "message": msg }), msg))
                }
            }
        }
        Command::FindEll(a) => {
            let c = elliptic::find_ell(a.q)?;
            let mut v = json!({ "q": c.q, "N": c.n, "ell": c.ell });
            if a.with_curve {
                let field = FiniteField::of_order(a.q)?;
                let (curve, n) = elliptic::search_curve_with_order(&field, |n| n == c.n)?;
                v["curve"] = to_value(&curve);
                v["curve_order"] = json!(n);
            }
            Ok(Status::Ok(v, format!("q = {}: N = {}, ell = {}", c.q, c.n, c.ell)))
        }
        Command::ThmEll(a) => {
            let w = global::torsor_prime_search_with(a.ell, a.p_max)?;
            let s = format!("ell = {}: p = {}, E(F_p) = {}", w.ell, w.prime, w.structure);
            Ok(Status::Ok(to_value(&w), s))
        }
        Command::Thm3(a) => {
            let f: IntPoly = parse("poly", &a.poly)?;
            let bounds = TorsionPairBounds {
                p_max: a.p_max,
                ell_max: a.ell_max,
            };
            let w = global::torsion_pair_search(&f, bounds)?;
            let s = format!(
                "{f}: ell = {}, p = {}, curve {} with {} points",
                w.ell, w.prime, w.curve, w.curve_order
            );
            Ok(Status::Ok(to_value(&w), s))
        }
        Command::Cor2(a) => {
            let f: IntPoly = parse("poly", &a.poly)?;
            let w = global::split_prime_witness(&f, a.p_max)?;
            let s = format!("{f}: p = {}", w.prime);
            Ok(Status::Ok(to_value(&w), s))
        }
        Command::GenusPlan(a) => {
            let plan = global::genus_construction_plan(a.g)?;
            let s = format!(
                "g = {} = {}*{} + 1, {} branch points",
                plan.genus, plan.k, plan.ell, plan.branch_points
            );
            Ok(Status::Ok(to_value(&plan), s))
        }
        Command::NormCert(a) => {
            let f: IntPoly = parse("poly", &a.poly)?;
            Ok(certificate_status(norm::norm_equation_certificate(&f, a.m, a.scan_bound)?))
        }
        Command::TameSymbol(a) => {
            let report = match a.example {
                Some(TameExample::Sqrt2) => norm::sqrt2_quaternion_example()?,
                None => {
                    let x: LaurentSeries = parse("a", a.a.as_deref().unwrap_or_default())?;
                    let y: LaurentSeries = parse("b", a.b.as_deref().unwrap_or_default())?;
                    let residue = match a.residue {
                        ResidueArg::Q => ResidueField::Rationals,
                        ResidueArg::Qab => ResidueField::AbelianClosure,
                    };
                    norm::tame_symbol(&x, &y, residue)?
                }
            };
            let s = format!(
                "representative {}, {}",
                report.representative,
                if report.nontrivial { "nontrivial" } else { "trivial" }
            );
            Ok(Status::Ok(to_value(&report), s))
        }
        Command::SnCert(a) => {
            let f: IntPoly = parse("poly", &a.poly)?;
            let v = appendix::sn_certificate(&f, a.bound)?;
            let s = format!("{f}: {:?}", v.verdict);
            if v.verdict == appendix::Verdict::CertifiedSymmetric {
                Ok(Status::Ok(to_value(&v), s))
            } else {
                Ok(Status::None(to_value(&v), s))
            }
        }
        Command::K4(_) => {
            let r = k4::k4_s4_report();
            let s = format!(
                "{} subgroups; vertex {}, edge {}, overgroups {}",
                r.subgroup_count, r.vertex_stabilizers_ok, r.edge_stabilizers_ok, r.overgroups_ok
            );
            if r.passed {
                Ok(Status::Ok(to_value(&r), s))
            } else {
                Err(Error::InternalContradiction(s))
            }
        }
        Command::Catalan(a) => {
            let sols: Vec<[u32; 2]> = arith::catalan_solutions(a.s_max, a.t_max)
                .into_iter()
                .map(|(s, t)| [s, t])
                .collect();
            let s = format!("{sols:?}");
            Ok(Status::Ok(json!({ "solutions": sols }), s))
        }
        Command::Verify(a) => {
            let text = if a.file.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(&a.file)
            }
            .map_err(|e| Error::InvalidInput(format!("--file: {e}")))?;
            let summary = verify_json(&text)?;
            Ok(Status::Ok(json!({ "verified": true, "summary": summary }), summary))
        }
    }
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, Error> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

/// Re-verifies a certificate, witness or envelope produced by [`run`].
pub fn verify_json(text: &str) -> Result<String, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let v = match v.get("result") {
        Some(r) if v.get("command").is_some() => {
            if v.get("status") != Some(&json!("ok")) {
                return Err(Error::Verification("the envelope records no success".into()));
            }
            r.clone()
        }
        _ => v,
    };
    verify_value(v)
}

fn verify_value(v: Value) -> Result<String, Error> {
    if let Some(list) = v.get("certificates").and_then(Value::as_array) {
        for c in list {
            verify_value(c.clone())?;
        }
        return Ok(format!("{} certificates verified", list.len()));
    }
    if let Some(kind) = v.get("kind").and_then(Value::as_str) {
        let kind = kind.to_string();
        match kind.as_str() {
            "torsor_prime" => from_value::<TorsorPrimeWitness>(v)?.verify()?,
            "torsion_pair" => from_value::<TorsionPairWitness>(v)?.verify()?,
            "genus_plan" => from_value::<GenusPlan>(v)?.verify()?,
            "split_prime" => from_value::<SplitPrimeWitness>(v)?.verify()?,
            _ => from_value::<Certificate>(v)?.verify()?,
        }
        return Ok(format!("{kind} verified"));
    }
    if v.get("verdict").is_some() {
        from_value::<appendix::GaloisVerdict>(v)?.verify()?;
        return Ok("Galois verdict verified".into());
    }
    if v.get("point").is_some() {
        from_value::<LocalWitness>(v)?.verify()?;
        return Ok("local witness verified".into());
    }
    if let (Some(q), Some(n), Some(ell)) = (v.get("q"), v.get("N"), v.get("ell")) {
        let choice = elliptic::EllChoice {
            q: from_value(q.clone())?,
            n: from_value(n.clone())?,
            ell: from_value(ell.clone())?,
        };
        elliptic::verify_ell_choice(&choice)?;
        if let Some(curve) = v.get("curve") {
            let curve: CurveModel = from_value(curve.clone())?;
            if curve.field().order() != choice.q || curve.count_points()? != choice.n {
                return Err(Error::Verification("curve does not have N points".into()));
            }
        }
        return Ok("ell choice verified".into());
    }
    Err(Error::Unsupported("nothing verifiable in this JSON".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("abelian-points").chain(args.iter().copied()))
    }

    fn result(o: &Outcome) -> Value {
        serde_json::from_str::<Value>(&o.output).unwrap()["result"].clone()
    }

    #[test]
    fn certify_cubic_as_written() {
        let o = run_args(&["certify-cubic", "--a", "2", "--b", "4", "--c", "5", "--p", "2"]);
        assert_eq!(o.code, 0, "{}", o.output);
        assert_eq!(result(&o)["kind"], "NoAbelianPoints");
        assert_eq!(verify_json(&o.output).unwrap(), "NoAbelianPoints verified");
    }

    #[test]
    fn selmer_cubic_has_no_certificate() {
        let o = run_args(&["certify-cubic", "--a", "3", "--b", "4", "--c", "5"]);
        assert_eq!(o.code, 1);
        assert!(o.output.contains(NO_CERTIFICATE));
        for p in [2, 3, 5, 7] {
            let p = p.to_string();
            let o = run_args(&["certify-cubic", "--a", "3", "--b", "4", "--c", "5", "--p", &p]);
            assert_eq!(o.code, 1);
        }
    }

    #[test]
    fn find_ell_output() {
        let o = run_args(&["find-ell", "--q", "8"]);
        assert_eq!(o.code, 0);
        let r = result(&o);
        assert_eq!((r["N"].as_u64(), r["ell"].as_u64()), (Some(10), Some(5)));
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let o = run_args(&["certify-cubic", "--a", "1"]);
        assert_eq!(o.code, 2);
        assert!(o.output.contains("--b"));
        let o = run_args(&["sn-cert", "--poly", "x^^2"]);
        assert_eq!(o.code, 2);
        assert!(o.output.contains("--poly"));
    }

    #[test]
    fn limits_exit_three() {
        let o = run_args(&["thm3", "--poly", "x", "--p-max", "50"]);
        assert_eq!(o.code, 3);
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let o = run_args(&["certify-cy", "--ell", "5", "--p", "2"]);
        assert_eq!(o.code, 0, "{}", o.output);
        let tampered = o.output.replace("\"prime\": 2", "\"prime\": 3");
        assert_ne!(tampered, o.output);
        assert!(verify_json(&tampered).is_err());
    }
}
