//! `totneg`: certify TN / TNP of order k for matrices, interval hulls and LCP
//! instances, and emit re-checkable reports.
//!
//! Exit codes: 0 holds, 1 fails (with witness), 2 usage or parse error,
//! 3 resource cap, 4 internal disagreement between methods.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{HullReport, LcpReport, MethodReport, Report, WitnessReport};
use totneg::criteria::{
    check_by_contiguous_minors, check_by_minor_definition, check_tn_snr_single_vector,
    check_tn_vd_single_vector_order, check_tnp_snr, check_tnp_vd_order, verify_lcp_variant_witness,
    verify_violation, AlphaChoice, ClassQuery, SignClass, TnpSnrMode, TnpVdMode, Verdict, Violation,
};
use totneg::genlab::{self, CorpusSpec, Target};
use totneg::hull::IntervalHull;
use totneg::lcp::{lcp_single_vector_check, solve_lcp, tnp_lcp_sufficient_check, LcpInstance, TnpLcpMode, TnpLcpOutcome};
use totneg::signs::EndSignReference;
use totneg::text::{digest_hex, parse_hull, parse_lcp, parse_matrix, parse_rational};
use totneg::{Error, ExactMatrix, Rational};

#[derive(Parser)]
#[command(name = "totneg", version, about = "Certify totally negative / totally non-positive matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide TN or TNP of order k for a matrix file.
    Check(CheckArgs),
    /// Decide TN or TNP of order k for every member of an interval hull.
    Hull(HullArgs),
    /// Enumerate an LCP or run the single-vector LCP test.
    Lcp(LcpArgs),
    /// Write oracle-verified instances.
    Generate(GenerateArgs),
    /// Re-check every witness in a JSON report against its input.
    VerifyWitness(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Tn,
    Tnp,
}

impl ClassArg {
    fn class(self) -> SignClass {
        match self {
            ClassArg::Tn => SignClass::TotallyNegative,
            ClassArg::Tnp => SignClass::TotallyNonPositive,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Minors,
    Contiguous,
    Snr,
    Vd,
    Lcp,
    All,
}

#[derive(Args)]
struct CheckArgs {
    path: PathBuf,
    #[arg(long, value_enum)]
    class: ClassArg,
    /// Defaults to min(m, n).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
    /// Signed alternating coefficients for snr / vd, e.g. "1,-2,1/3".
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HullArgs {
    path: PathBuf,
    #[arg(long, value_enum)]
    class: ClassArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["enumerate", "single_vector"])))]
struct LcpArgs {
    /// An LCP file, or a plain matrix file with `--single-vector`.
    path: PathBuf,
    #[arg(long)]
    enumerate: bool,
    #[arg(long)]
    single_vector: bool,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenClass {
    Tn,
    Tnp,
    NearMiss,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    class: GenClass,
    /// `MxN`, e.g. `3x3`.
    #[arg(long, value_parser = parse_shape)]
    shape: (usize, usize),
    /// Required except for `random`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    report: PathBuf,
    /// The input file the report was produced from.
    input: PathBuf,
}

fn parse_shape(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s.split_once(['x', 'X']).ok_or("expected MxN")?;
    let m: usize = m.trim().parse().map_err(|_| format!("invalid row count `{m}`"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("invalid column count `{n}`"))?;
    if m == 0 || n == 0 {
        return Err("shape must be positive".into());
    }
    Ok((m, n))
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => 3,
            Error::Disagreement(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn argv() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn order_or(order: Option<u64>, a: &ExactMatrix) -> usize {
    order.map_or(a.rows().min(a.cols()), |k| k as usize)
}

fn method_report(name: &str, v: &Verdict<Rational>, elapsed_ms: u64) -> MethodReport {
    run_report(name, v.holds, v.witness.as_ref(), elapsed_ms)
}

fn run_report(name: &str, holds: bool, witness: Option<&Violation<Rational>>, elapsed_ms: u64) -> MethodReport {
    MethodReport {
        name: name.to_string(),
        holds: Some(holds),
        outcome: None,
        witness: witness.map(WitnessReport::from_violation),
        hull: None,
        elapsed_ms,
    }
}

fn exit_code(methods: &[MethodReport]) -> u8 {
    if methods.iter().all(|m| m.holds == Some(true)) {
        0
    } else {
        1
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
        return;
    }
    if let (Some(class), Some(k)) = (&report.class, report.order) {
        println!("{} of order {k}", class.to_uppercase());
    }
    for m in &report.methods {
        let verdict = match m.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "inconclusive",
        };
        let outcome = match (&m.outcome, m.holds) {
            (Some(o), Some(_)) => format!(" ({o})"),
            _ => String::new(),
        };
        println!("{}: {verdict}{outcome}", m.name);
        if let Some(h) = &m.hull {
            println!("  member {} z={} zt={}", h.label, h.z, h.zt);
        }
        if let Some(w) = &m.witness {
            print!("  {} rows {:?} cols {:?}", w.kind, w.rows, w.cols);
            if let Some(d) = &w.detail {
                print!(" value {d}");
            }
            if let Some(v) = &w.vector {
                print!(" vector ({})", v.join(", "));
            }
            println!();
        }
    }
    if let Some(l) = &report.lcp {
        let pts: Vec<String> = l.solutions.iter().map(|s| format!("({})", s.join(", "))).collect();
        println!("{} solution set", l.kind);
        println!("solutions: {{{}}}", pts.join(", "));
        for f in &l.families {
            let verts: Vec<String> = f.vertices.iter().map(|s| format!("({})", s.join(", "))).collect();
            let rays: Vec<String> = f.rays.iter().map(|s| format!("({})", s.join(", "))).collect();
            println!(
                "family on support {:?}: vertices {} rays {}",
                f.support,
                verts.join(" "),
                if rays.is_empty() { "none".to_string() } else { rays.join(" ") }
            );
        }
    }
}

fn parse_alpha(s: &str) -> Result<AlphaChoice<Rational>, Failure> {
    let coeffs: Vec<Rational> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t).ok_or_else(|| usage(format!("invalid alpha coefficient `{t}`"))))
        .collect::<Result<_, _>>()?;
    Ok(AlphaChoice::from_signed(&coeffs)?)
}

fn cmd_check(args: CheckArgs) -> CmdResult {
    let start = Instant::now();
    let text = read(&args.path)?;
    let a = parse_matrix(&text)?;
    let k = order_or(args.order, &a);
    let class = args.class.class();
    let alpha = match &args.alpha {
        Some(s) if !matches!(args.method, MethodArg::Snr | MethodArg::Vd) => {
            return Err(usage(format!("--alpha {s} applies only to --method snr or vd")));
        }
        Some(s) => parse_alpha(s)?,
        None => AlphaChoice::ones(),
    };
    let mut methods = Vec::new();
    let t = Instant::now();
    match (args.method, args.class) {
        (MethodArg::All, _) => {
            let rep = genlab::cross_validate(&a, class, k)?;
            for run in rep.runs {
                let mut m = run_report(run.name, run.holds, run.witness.as_ref(), run.elapsed.as_millis() as u64);
                if run.name == "tnp-lcp" {
                    m.holds = match rep.tnp_lcp {
                        Some("sufficient-condition-holds") => Some(true),
                        Some("violation-found") => Some(false),
                        _ => None,
                    };
                    m.outcome = rep.tnp_lcp.map(String::from);
                }
                methods.push(m);
            }
            // The one-sided LCP check never decides the verdict.
            let verdict = methods[0].holds;
            let code = if verdict == Some(true) { 0 } else { 1 };
            let report = build_report("check", &text, Some(args.class), Some(k), methods, start);
            emit(&report, args.json);
            return Ok(code);
        }
        (MethodArg::Minors, ClassArg::Tn) => {
            methods.push(method_report("minors", &check_by_minor_definition(&a, ClassQuery::tn(k))?, ms(t)))
        }
        (MethodArg::Minors, ClassArg::Tnp) => {
            methods.push(method_report("minors", &check_by_minor_definition(&a, ClassQuery::tnp(k))?, ms(t)))
        }
        (MethodArg::Contiguous, ClassArg::Tn) => {
            methods.push(method_report("contiguous", &check_by_contiguous_minors(&a, ClassQuery::tn(k))?, ms(t)))
        }
        (MethodArg::Contiguous, ClassArg::Tnp) => {
            return Err(usage("contiguous minors do not decide TNP; use --method minors"));
        }
        (MethodArg::Snr, ClassArg::Tn) => {
            methods.push(method_report("snr", &check_tn_snr_single_vector(&a, k, &alpha)?, ms(t)))
        }
        (MethodArg::Snr, ClassArg::Tnp) => {
            let v = check_tnp_snr(&a, k, &TnpSnrMode::SingleVector(alpha))?;
            methods.push(method_report("tnp-snr", &v, ms(t)))
        }
        (MethodArg::Vd, ClassArg::Tn) => {
            let v = check_tn_vd_single_vector_order(&a, k, &alpha, EndSignReference::Nonzero)?;
            methods.push(method_report("vd", &v, ms(t)))
        }
        (MethodArg::Vd, ClassArg::Tnp) => {
            let v = check_tnp_vd_order(&a, k, &TnpVdMode::SingleVector(alpha))?;
            methods.push(method_report("tnp-vd", &v, ms(t)))
        }
        (MethodArg::Lcp, ClassArg::Tn) => {
            methods.push(method_report("lcp", &lcp_single_vector_check(&a, k)?, ms(t)))
        }
        (MethodArg::Lcp, ClassArg::Tnp) => {
            let outcome = tnp_lcp_sufficient_check(&a, k, TnpLcpMode::SingleQ)?;
            let (holds, name, witness) = match &outcome {
                TnpLcpOutcome::SufficientConditionHolds => (Some(true), "sufficient-condition-holds", None),
                TnpLcpOutcome::ViolationFound { positive_minor, .. } => {
                    (Some(false), "violation-found", Some(WitnessReport::from_violation(positive_minor)))
                }
                TnpLcpOutcome::Inconclusive { .. } => (None, "inconclusive", None),
            };
            methods.push(MethodReport {
                name: "tnp-lcp".into(),
                holds,
                outcome: Some(name.into()),
                witness,
                hull: None,
                elapsed_ms: ms(t),
            });
        }
    }
    let code = exit_code(&methods);
    let report = build_report("check", &text, Some(args.class), Some(k), methods, start);
    emit(&report, args.json);
    Ok(code)
}

fn build_report(
    command: &str,
    text: &str,
    class: Option<ClassArg>,
    order: Option<usize>,
    methods: Vec<MethodReport>,
    start: Instant,
) -> Report {
    Report {
        command: command.to_string(),
        argv: argv(),
        input_digest: digest_hex(text),
        class: class.map(|c| c.class().short_name().to_string()),
        order,
        methods,
        seed: None,
        elapsed_ms: ms(start),
        lcp: None,
    }
}

fn cmd_hull(args: HullArgs) -> CmdResult {
    let start = Instant::now();
    let text = read(&args.path)?;
    let (a, b) = parse_hull(&text)?;
    let k = order_or(args.order, &a);
    let hull = IntervalHull::new(a, b)?;
    let t = Instant::now();
    let verdict = match args.class {
        ClassArg::Tn => hull.is_totally_negative(k)?,
        ClassArg::Tnp => hull.is_totally_nonpositive(k)?,
    };
    let method = MethodReport {
        name: "hull".into(),
        holds: Some(verdict.holds),
        outcome: None,
        witness: verdict.failing.as_ref().map(|w| WitnessReport::from_violation(&w.violation)),
        hull: verdict.failing.as_ref().map(HullReport::from_witness),
        elapsed_ms: ms(t),
    };
    let code = exit_code(std::slice::from_ref(&method));
    let report = build_report("hull", &text, Some(args.class), Some(k), vec![method], start);
    emit(&report, args.json);
    Ok(code)
}

fn cmd_lcp(args: LcpArgs) -> CmdResult {
    let start = Instant::now();
    let text = read(&args.path)?;
    if args.enumerate {
        if args.order.is_some() {
            return Err(usage("--order applies only to --single-vector"));
        }
        let (a, q) = parse_lcp(&text)?;
        let t = Instant::now();
        let sols = solve_lcp(&LcpInstance::new(a, q)?)?;
        let method = MethodReport {
            name: "enumerate".into(),
            holds: Some(true),
            outcome: None,
            witness: None,
            hull: None,
            elapsed_ms: ms(t),
        };
        let mut report = build_report("lcp", &text, None, None, vec![method], start);
        report.lcp = Some(LcpReport::from_solutions(&sols));
        emit(&report, args.json);
        return Ok(0);
    }
    let a = match parse_lcp(&text) {
        Ok((a, _)) => a,
        Err(_) => parse_matrix(&text)?,
    };
    let k = order_or(args.order, &a);
    let t = Instant::now();
    let v = lcp_single_vector_check(&a, k)?;
    let methods = vec![method_report("lcp", &v, ms(t))];
    let code = exit_code(&methods);
    let report = build_report("lcp", &text, Some(ClassArg::Tn), Some(k), methods, start);
    emit(&report, args.json);
    Ok(code)
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let target = match (args.class, args.order) {
        (GenClass::Random, _) => Target::Random,
        (_, None) => return Err(usage("--order is required for this class")),
        (GenClass::Tn, Some(k)) => Target::Tn(k as usize),
        (GenClass::Tnp, Some(k)) => Target::Tnp(k as usize),
        (GenClass::NearMiss, Some(k)) => Target::NearMiss(k as usize),
    };
    let spec = CorpusSpec::new(args.shape, target, args.count as usize, args.seed)?;
    let stem = match args.class {
        GenClass::Tn => "tn",
        GenClass::Tnp => "tnp",
        GenClass::NearMiss => "near-miss",
        GenClass::Random => "random",
    };
    for i in 0..spec.count() {
        let inst = genlab::generate_instance(&spec, i)?;
        let (m, n) = spec.shape();
        let name = format!("{stem}-{m}x{n}-seed{}", inst.seed);
        let path = genlab::write_instance(&args.out_dir, &name, &inst)?;
        println!("{}", path.display());
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let report: Report =
        serde_json::from_str(&read(&args.report)?).map_err(|e| usage(format!("invalid report: {e}")))?;
    let text = read(&args.input)?;
    if digest_hex(&text) != report.input_digest {
        println!("input digest does not match the report");
        return Ok(1);
    }
    let class = match report.class.as_deref() {
        Some("tnp") => SignClass::TotallyNonPositive,
        _ => SignClass::TotallyNegative,
    };
    let mut all_ok = true;
    let mut checked = 0;
    let mut print = |what: &str, ok: bool| {
        println!("{what}: {}", if ok { "verified" } else { "REJECTED" });
        all_ok &= ok;
        checked += 1;
    };
    match report.command.as_str() {
        "check" | "lcp" if report.lcp.is_none() => {
            let a = match parse_lcp(&text) {
                Ok((a, _)) => a,
                Err(_) => parse_matrix(&text)?,
            };
            for m in &report.methods {
                let Some(w) = &m.witness else { continue };
                let v = w.to_violation(a.shape()).map_err(usage)?;
                let ok = if m.name == "lcp-variant" {
                    verify_lcp_variant_witness(&a, &v, &genlab::cross_validation_weights())?
                } else {
                    verify_violation(&a, class, &v)?
                };
                print(&m.name, ok);
            }
        }
        "hull" => {
            let (a, b) = parse_hull(&text)?;
            let hull = IntervalHull::new(a, b)?;
            for m in &report.methods {
                let (Some(w), Some(h)) = (&m.witness, &m.hull) else { continue };
                let member = h.member().map_err(usage)?;
                let (z, zt) = h.words().map_err(usage)?;
                let v = w.to_violation(member.shape()).map_err(usage)?;
                let ok = hull.contains(&member)
                    && hull.i_matrix(&z, &zt)? == member
                    && verify_violation(&member, class, &v)?;
                print(&m.name, ok);
            }
        }
        "lcp" => {
            let (a, q) = parse_lcp(&text)?;
            let inst = LcpInstance::new(a, q)?;
            let l = report.lcp.as_ref().expect("guarded above");
            let fams = l.families.iter().flat_map(|f| f.vertices.iter());
            for s in l.solutions.iter().chain(fams) {
                let x = report::parse_vector(s).map_err(usage)?;
                print(&format!("solution ({})", s.join(", ")), inst.is_solution(&x));
            }
        }
        other => return Err(usage(format!("report command `{other}` has no witnesses"))),
    }
    if checked == 0 {
        println!("no witnesses to verify");
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Hull(a) => cmd_hull(a),
        Command::Lcp(a) => cmd_lcp(a),
        Command::Generate(a) => cmd_generate(a),
        Command::VerifyWitness(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
