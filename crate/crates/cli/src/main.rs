//! Command-line interface for the exact q-series engine.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical counterexample was
//! found, 2 = usage or parameter error. Text output is deterministic
//! (timings only appear in `--json` reports).

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qpos_core::{
    check_positivity, eval_d, eval_g, scan_conjecture, t_coeff, t_tilde_coeff, verify_all,
    verify_base, verify_identity, Conjecture, ConjectureWindow, DParams, ExactRational, GParams,
    IdentityId, IdentityReport, TransformKind as CoreKind, Verdict, VerifyOptions,
};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qpos",
    version,
    about = "Exact q-series polynomials, identity verification, and conjecture scanning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Even,
    Odd,
}

impl From<KindArg> for CoreKind {
    fn from(k: KindArg) -> CoreKind {
        match k {
            KindArg::Even => CoreKind::Even,
            KindArg::Odd => CoreKind::Odd,
        }
    }
}

#[derive(Args)]
struct GArgs {
    #[arg(long = "N", allow_hyphen_values = true)]
    n: i64,
    #[arg(long = "M", allow_hyphen_values = true)]
    m: i64,
    /// Rational parameter, "p/r" or an integer.
    #[arg(long)]
    alpha: String,
    /// Rational parameter, "p/r" or an integer.
    #[arg(long)]
    beta: String,
    #[arg(long = "K")]
    k: i64,
    /// Emit the polynomial as JSON instead of human-readable text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RangeArgs {
    /// Override the default sweep bound (n, or L for the base identities).
    #[arg(long)]
    n_max: Option<i64>,
    /// Override the default iteration depth for positivity entries.
    #[arg(long)]
    t_max: Option<u32>,
    /// Emit reports as a JSON array.
    #[arg(long)]
    json: bool,
    /// Worker threads for independent checks (1 = sequential).
    #[arg(long, env = "QPOS_THREADS", default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate G(N,M;alpha,beta,K) exactly.
    EvalG(GArgs),
    /// Evaluate D_{K,i}(N,M;alpha,beta) exactly.
    EvalD {
        #[command(flatten)]
        base: GArgs,
        #[arg(long = "i")]
        i: i64,
    },
    /// Verify one catalog identity, or "all".
    Verify {
        /// Identity name (see `verify --help-ids`) or "all".
        id: String,
        #[command(flatten)]
        range: RangeArgs,
        /// List the identity catalog and exit.
        #[arg(long)]
        help_ids: bool,
    },
    /// Verify every catalog identity.
    VerifyAll {
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Sweep one positivity family (pos-cor112 or pos-cor113).
    CheckPos {
        id: String,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Scan a conjecture window for negative coefficients.
    Scan {
        /// conjecture-1.1 or conjecture-1.2.
        #[arg(long)]
        conjecture: String,
        #[arg(long, default_value_t = 12)]
        n_max: i64,
        #[arg(long, default_value_t = 12)]
        m_max: i64,
        #[arg(long)]
        k_max: Option<i64>,
        #[arg(long)]
        json: bool,
        #[arg(long, env = "QPOS_THREADS", default_value_t = 1)]
        threads: usize,
    },
    /// Print transform kernel coefficients; optionally verify the base identity.
    Transform {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long = "L")]
        l: i64,
        /// Also check the base identity for every j in support.
        #[arg(long)]
        verify_base: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_rational(label: &str, s: &str) -> Result<ExactRational, String> {
    ExactRational::from_str(s).map_err(|e| format!("--{label}: {e}"))
}

fn print_report_text(report: &IdentityReport) {
    match report.verdict {
        Verdict::Pass => println!("PASS {}  {}", report.id, report.params),
        Verdict::Fail => {
            let ce = report
                .counterexample
                .as_ref()
                .expect("failing report carries a counterexample");
            println!("FAIL {}  at {}", report.id, ce.point);
            println!("  lhs = {}", ce.lhs);
            if let Some(rhs) = &ce.rhs {
                println!("  rhs = {rhs}");
            }
        }
    }
}

fn finish_reports(reports: &[IdentityReport], json: bool) -> ExitCode {
    if json {
        println!(
            "{}",
            serde_json::to_string(reports).expect("report serialization cannot fail")
        );
    } else {
        for report in reports {
            print_report_text(report);
        }
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn run_eval_g(args: &GArgs) -> Result<ExitCode, String> {
    let alpha = parse_rational("alpha", &args.alpha)?;
    let beta = parse_rational("beta", &args.beta)?;
    let params =
        GParams::new(args.n, args.m, alpha, beta, args.k).map_err(|e| e.to_string())?;
    let poly = eval_g(&params).map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", serde_json::to_string(&poly).expect("polynomial serialization"));
    } else {
        println!("{poly}");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_eval_d(args: &GArgs, i: i64) -> Result<ExitCode, String> {
    let alpha = parse_rational("alpha", &args.alpha)?;
    let beta = parse_rational("beta", &args.beta)?;
    let params =
        DParams::new(args.n, args.m, args.k, i, alpha, beta).map_err(|e| e.to_string())?;
    let poly = eval_d(&params).map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", serde_json::to_string(&poly).expect("polynomial serialization"));
    } else {
        println!("{poly}");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(id: &str, range: &RangeArgs) -> ExitCode {
    let opts = VerifyOptions { n_max: range.n_max, t_max: range.t_max };
    let reports = if id == "all" {
        match verify_all(&opts, range.threads) {
            Ok(r) => r,
            Err(e) => return usage_error(e),
        }
    } else {
        let id = match IdentityId::from_str(id) {
            Ok(id) => id,
            Err(e) => return usage_error(e),
        };
        match verify_identity(id, &opts) {
            Ok(r) => vec![r],
            Err(e) => return usage_error(e),
        }
    };
    finish_reports(&reports, range.json)
}

fn run_check_pos(id: &str, range: &RangeArgs) -> ExitCode {
    let id = match IdentityId::from_str(id) {
        Ok(id) => id,
        Err(e) => return usage_error(e),
    };
    let t_max = range.t_max.unwrap_or_else(|| id.default_t_max());
    let n_max = range.n_max.unwrap_or_else(|| id.default_n_max());
    match check_positivity(id, t_max, n_max) {
        Ok(report) => finish_reports(&[report], range.json),
        Err(e) => usage_error(e),
    }
}

fn run_scan(
    conjecture: &str,
    n_max: i64,
    m_max: i64,
    k_max: Option<i64>,
    json: bool,
    threads: usize,
) -> ExitCode {
    let which = match Conjecture::from_str(conjecture) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let k_max = k_max.unwrap_or(match which {
        Conjecture::Conj11 => 4,
        Conjecture::Conj12 => 5,
    });
    let window = ConjectureWindow { which, n_max, m_max, k_max };
    let summary = match scan_conjecture(&window, threads) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let mut reports = vec![summary.summary_report()];
    reports.extend(summary.violations.iter().cloned());
    if json {
        println!("{}", serde_json::to_string(&reports).expect("report serialization"));
    } else {
        println!(
            "{}: tested {} admissible points, {} violation(s)",
            window,
            summary.tested,
            summary.violations.len()
        );
        for v in &summary.violations {
            print_report_text(v);
        }
    }
    if summary.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    }
}

fn run_transform(kind: KindArg, l: i64, do_verify: bool, json: bool) -> ExitCode {
    if l < 1 {
        return usage_error(format!("--L must be >= 1, got {l}"));
    }
    let core_kind: CoreKind = kind.into();
    let mut coeff_rows = Vec::new();
    for r in core_kind.valid_r(l) {
        let coeff = match core_kind {
            CoreKind::Even => t_coeff(l, r),
            CoreKind::Odd => t_tilde_coeff(l, r),
        };
        match coeff {
            Ok(c) => coeff_rows.push((r, c)),
            Err(e) => return usage_error(e),
        }
    }
    let mut base_ok = true;
    let mut first_failure = None;
    if do_verify {
        for j in -(l + 1)..=(l + 1) {
            match verify_base(core_kind, l, j) {
                Ok(c) if c.holds => {}
                Ok(c) => {
                    base_ok = false;
                    first_failure = Some((j, c));
                    break;
                }
                Err(e) => return usage_error(e),
            }
        }
    }
    if json {
        let label = match core_kind {
            CoreKind::Even => "T",
            CoreKind::Odd => "T~",
        };
        let payload = json!({
            "kind": core_kind.name(),
            "L": l,
            "label": label,
            "coefficients": coeff_rows
                .iter()
                .map(|(r, c)| json!({ "r": r, "poly": c }))
                .collect::<Vec<_>>(),
            "base_identity": if do_verify {
                json!({ "verdict": if base_ok { "pass" } else { "fail" } })
            } else {
                serde_json::Value::Null
            },
        });
        println!("{payload}");
    } else {
        let label = match core_kind {
            CoreKind::Even => "T",
            CoreKind::Odd => "T~",
        };
        for (r, c) in &coeff_rows {
            println!("{label}[{l},{r}] = {c}");
        }
        if do_verify {
            if base_ok {
                println!(
                    "base identity {} L={l}: PASS (j=-{}..{})",
                    core_kind.name(),
                    l + 1,
                    l + 1
                );
            } else if let Some((j, c)) = &first_failure {
                println!("base identity {} L={l}: FAIL at j={j}", core_kind.name());
                println!("  lhs = {}", c.lhs);
                println!("  rhs = {}", c.rhs);
            }
        }
    }
    if base_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    }
}

fn print_identity_catalog() {
    for id in IdentityId::ALL {
        println!("{id}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::EvalG(args) => run_eval_g(&args).unwrap_or_else(usage_error),
        Command::EvalD { base, i } => run_eval_d(&base, i).unwrap_or_else(usage_error),
        Command::Verify { id, range, help_ids } => {
            if help_ids {
                print_identity_catalog();
                return ExitCode::SUCCESS;
            }
            run_verify(&id, &range)
        }
        Command::VerifyAll { range } => run_verify("all", &range),
        Command::CheckPos { id, range } => run_check_pos(&id, &range),
        Command::Scan { conjecture, n_max, m_max, k_max, json, threads } => {
            run_scan(&conjecture, n_max, m_max, k_max, json, threads)
        }
        Command::Transform { kind, l, verify_base, json } => {
            run_transform(kind, l, verify_base, json)
        }
    }
}
