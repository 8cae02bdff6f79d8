//! `anomaly`: verify anomaly cancellation identities, print series
//! expansions, evaluate characteristic numbers.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use anomaly_core::algebra::{GradedPoly, Rational};
use anomaly_core::case::{CaseKind, CaseSpec, Route};
use anomaly_core::forms::ahat_form;
use anomaly_core::lambda::{theta_series, ThetaKind, VirtualBundle};
use anomaly_core::qseries::{eisenstein_basis, QHalfSeries};
use anomaly_core::theta::{jacobi_identity_residual, theta_quotient, QuotientKind, TwoVarSeries};
use anomaly_core::verifier::{assemble_q, evaluate_indices, moduli_table, run_cases, ManifoldData};
use anomaly_core::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_EMPTY_FILTER: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "anomaly", version, about = "Modular characteristic forms and anomaly cancellation identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CaseFilter {
    Spin,
    Spinv,
    SpinvLine,
    Spinc,
}

impl CaseFilter {
    fn label(self) -> &'static str {
        match self {
            CaseFilter::Spin => "spin",
            CaseFilter::Spinv => "spinv",
            CaseFilter::SpinvLine => "spinv-line",
            CaseFilter::Spinc => "spinc",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Bundle,
    Theta,
    Both,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Bundle => Route::Bundle,
            RouteArg::Theta => Route::Theta,
            RouteArg::Both => Route::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    E4,
    E6,
    E8,
    E10,
    Theta1,
    Theta2,
    Theta3,
    A,
    B1,
    B2,
    B3,
    L,
    Ahat,
    Q,
    Jacobi,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the identity catalog for the selected cases.
    Verify {
        #[arg(long, value_enum)]
        case: Option<CaseFilter>,
        #[arg(long)]
        dim: Option<u32>,
        /// q-cap: coefficients are kept through q^ORDER.
        #[arg(long, env = "ANOMALY_QCAP", default_value_t = 3)]
        order: u32,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a series expansion.
    Expand {
        #[arg(long, value_enum)]
        series: SeriesName,
        #[arg(long, env = "ANOMALY_QCAP", default_value_t = 3)]
        order: u32,
        /// Manifold dimension for ch(Θ), Â and Q; t-order for theta quotients.
        #[arg(long, default_value_t = 8)]
        dim: u32,
        /// Case for `--series q`.
        #[arg(long, value_enum, default_value_t = CaseFilter::Spin)]
        case: CaseFilter,
    },
    /// Evaluate indices and divisibility checks from characteristic numbers.
    Evaluate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the divisibility moduli of every corollary.
    Moduli {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn all_cases() -> Vec<CaseSpec> {
    let mut cases = CaseSpec::catalog();
    for dim in [8, 12, 16, 20] {
        cases.push(CaseSpec::spinv_line(dim).expect("valid dimension"));
    }
    cases
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(s: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush());
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RouteDisagreement { .. } => EXIT_INTERNAL,
        Error::Parse(_)
        | Error::MissingMonomial(_)
        | Error::DegreeMismatch { .. }
        | Error::UnknownGenerator(_)
        | Error::UnknownFamily(_) => EXIT_INPUT,
        Error::CaseDimension { .. } | Error::UnsupportedWeight(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(&e))
}

fn verify(case: Option<CaseFilter>, dim: Option<u32>, order: u32, route: RouteArg, format: Format) -> ExitCode {
    let cases: Vec<CaseSpec> = all_cases()
        .into_iter()
        .filter(|c| case.is_none_or(|f| f.label() == c.label()))
        .filter(|c| dim.is_none_or(|d| d == c.dim))
        .map(|c| c.with_cap(order).with_route(route.into()))
        .collect();
    if cases.is_empty() {
        eprintln!("error: no case matches the filter");
        return ExitCode::from(EXIT_EMPTY_FILTER);
    }
    let mut reports = Vec::new();
    for r in run_cases(&cases) {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return fail(e),
        }
    }
    match format {
        Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&reports).expect("serializable"))),
        Format::Text => {
            let texts: Vec<String> = reports.iter().map(|r| r.to_text()).collect();
            emit(&texts.join("\n"));
        }
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn q_label(e: u32) -> String {
    match e {
        0 => "q^0".into(),
        e if e % 2 == 0 => format!("q^{}", e / 2),
        e => format!("q^({e}/2)"),
    }
}

fn poly_series_lines(s: &QHalfSeries<GradedPoly>) -> String {
    if s.is_zero() {
        return "0\n".into();
    }
    s.terms().map(|(e, c)| format!("{}: {c}\n", q_label(e))).collect()
}

fn t_series(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (a, c) in coeffs.iter().enumerate() {
        if num::Zero::is_zero(c) {
            continue;
        }
        let mag = num::Signed::abs(c);
        let unit = num::One::is_one(&mag);
        let body = match a {
            0 => mag.to_string(),
            1 if unit => "t".to_string(),
            1 => format!("{mag}*t"),
            _ if unit => format!("t^{a}"),
            _ => format!("{mag}*t^{a}"),
        };
        let neg = num::Signed::is_negative(c);
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn two_var_lines(s: &TwoVarSeries) -> String {
    (0..=s.q_cap2())
        .map(|e| format!("{}: {}\n", q_label(e), t_series(&s.q_slice(e))))
        .collect()
}

fn expand(series: SeriesName, order: u32, dim: u32, case: CaseFilter) -> Result<String, Error> {
    let quotient = |k| two_var_lines(&theta_quotient(k, dim, order));
    Ok(match series {
        SeriesName::E4 => eisenstein_basis(4, order)?.pretty(),
        SeriesName::E6 => eisenstein_basis(6, order)?.pretty(),
        SeriesName::E8 => eisenstein_basis(8, order)?.pretty(),
        SeriesName::E10 => eisenstein_basis(10, order)?.pretty(),
        SeriesName::Jacobi => jacobi_identity_residual(order).pretty(),
        SeriesName::Theta1 | SeriesName::Theta2 | SeriesName::Theta3 => {
            let kind = match series {
                SeriesName::Theta1 => ThetaKind::Theta1,
                SeriesName::Theta2 => ThetaKind::Theta2,
                _ => ThetaKind::Theta3,
            };
            let t = VirtualBundle::reduced_complexified(anomaly_core::algebra::Family::X, dim);
            poly_series_lines(&theta_series(kind, &t, None, order)?.ch())
        }
        SeriesName::A => quotient(QuotientKind::A),
        SeriesName::B1 => quotient(QuotientKind::B1),
        SeriesName::B2 => quotient(QuotientKind::B2),
        SeriesName::B3 => quotient(QuotientKind::B3),
        SeriesName::L => quotient(QuotientKind::L),
        SeriesName::Ahat => ahat_form(dim, dim)?.to_string(),
        SeriesName::Q => {
            let spec = match case {
                CaseFilter::Spin => CaseSpec::new(CaseKind::Spin, dim)?,
                CaseFilter::Spinv => CaseSpec::new(CaseKind::SpinV, dim)?,
                CaseFilter::SpinvLine => CaseSpec::spinv_line(dim)?,
                CaseFilter::Spinc => CaseSpec::new(CaseKind::SpincL, dim)?,
            };
            poly_series_lines(&assemble_q(&spec.with_cap(order))?)
        }
    }
    .trim_end()
    .to_string())
}

fn evaluate(input: &PathBuf, format: Format) -> ExitCode {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let eval = match ManifoldData::from_json(&text).and_then(|d| evaluate_indices(&d)) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    match format {
        Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&eval).expect("serializable"))),
        Format::Text => {
            let mut head = Vec::new();
            if let Some(i) = &eval.dirac_spinor_index {
                head.push(format!("ind(D⊗Δ) = {i}"));
            }
            head.push(format!("Â-genus = {}", eval.ahat_genus));
            if let Some(i) = &eval.spinc_index {
                head.push(format!("ind(D^c) = {i}"));
            }
            emit(&format!("{}\n", head.join("; ")));
            for c in &eval.checks {
                let verdict = if c.divisible { "ok" } else { "NOT divisible" };
                emit(&format!(
                    "{}: ind({}⊗({})) = {} ≡ 0 mod {}: {verdict} (relation value {})\n",
                    c.corollary, c.operator, c.bundle, c.index, c.modulus, c.relation_value
                ));
            }
            for s in &eval.skipped {
                emit(&format!("skipped {s}\n"));
            }
        }
    }
    // a violated congruence only counts when the identity's hypotheses hold
    let violated = eval.checks.iter().any(|c| !c.divisible && c.relation_value == "0");
    if violated {
        ExitCode::from(EXIT_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}

fn moduli(format: Format) -> ExitCode {
    let table = match moduli_table() {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    match format {
        Format::Json => {
            let map: std::collections::BTreeMap<&str, u64> = table.iter().map(|(c, m)| (c.label, *m)).collect();
            emit(&format!("{}\n", serde_json::to_string_pretty(&map).expect("serializable")));
        }
        Format::Text => {
            for (c, m) in &table {
                emit(&format!("{:<14} from {:<14} index ≡ 0 mod {m}\n", c.label, c.identity));
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            case,
            dim,
            order,
            route,
            format,
        } => verify(case, dim, order, route, format),
        Command::Expand {
            series,
            order,
            dim,
            case,
        } => match expand(series, order, dim, case) {
            Ok(s) => {
                emit(&format!("{s}\n"));
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Evaluate { input, format } => evaluate(&input, format),
        Command::Moduli { format } => moduli(format),
    }
}
