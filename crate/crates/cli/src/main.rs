//! `meixner`: run verification suites and print tables of recurrence data.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use meixner::cumulants::moments_to_cumulants;
use meixner::jacobi::{gauss_quadrature, moments, mu_jacobi, nu_jacobi, support_estimate};
use meixner::poly::ops_from_jacobi;
use meixner::series::{cumulant_series, generating_function, psi, psi_inv, raising_symbol_from_psi_inv};
use meixner::verify::{default_grid, run_grid, Suite, VerificationReport, DEFAULT_TOLERANCE};
use meixner::{Framework, JacobiCoeffs, MeixnerParams, Rational, DEFAULT_ORDER};

mod number;

use meixner::scalar::parse_rational;
use number::format_float;

#[derive(Parser)]
#[command(name = "meixner", version, about = "Classical and free Meixner polynomials: identity checks and tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites on one parameter set or the five-case grid.
    Verify(VerifyArgs),
    /// Print a CSV table.
    Table {
        #[command(subcommand)]
        table: Table,
    },
    /// Gauss quadrature nodes and weights.
    Quad(QuadArgs),
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// classical or free; omitted means both
    #[arg(long, value_enum)]
    framework: Option<FrameworkArg>,
    /// lambda as an integer, p/q or terminating decimal
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    lambda: Option<Rational>,
    /// eta >= 0
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    eta: Option<Rational>,
    /// time parameter t > 0
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    t: Option<Rational>,
}

impl ParamArgs {
    fn explicit(&self) -> bool {
        self.framework.is_some() || self.lambda.is_some() || self.eta.is_some() || self.t.is_some()
    }

    /// Parameter sets named on the command line; missing values default to
    /// lambda = eta = 0, t = 1, both frameworks.
    fn resolve(&self) -> Result<Vec<MeixnerParams>, String> {
        let frameworks = match self.framework {
            Some(f) => vec![f.into()],
            None => Framework::ALL.to_vec(),
        };
        frameworks
            .into_iter()
            .map(|fw| {
                MeixnerParams::new(
                    fw,
                    self.lambda.clone().unwrap_or_default(),
                    self.eta.clone().unwrap_or_default(),
                    self.t.clone().unwrap_or_else(|| Rational::from_integer(1.into())),
                )
                .map_err(|e| e.to_string())
            })
            .collect()
    }

    fn single(&self) -> Result<MeixnerParams, String> {
        let mut all = self.resolve()?;
        Ok(all.swap_remove(0))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameworkArg {
    Classical,
    Free,
}

impl From<FrameworkArg> for Framework {
    fn from(f: FrameworkArg) -> Self {
        match f {
            FrameworkArg::Classical => Framework::Classical,
            FrameworkArg::Free => Framework::Free,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Mu,
    Nu,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Psi,
    PsiInv,
    Cumulant,
    Gf,
    RaisingA,
    RaisingB,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// truncation order N
    #[arg(short = 'n', long, env = "MEIXNER_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// lowering, raising, series, cumulants, decomposition or all
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// tolerance for floating-point paths
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// number of rows (poly) or highest index (moments, cumulants, jacobi, series)
    #[arg(short = 'n', long, env = "MEIXNER_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Measure::Mu)]
    measure: Measure,
}

#[derive(Subcommand)]
enum Table {
    /// Monomial coefficients of P_0, ..., P_{n-1}.
    Poly(TableArgs),
    /// Moments m(0), ..., m(n).
    Moments(TableArgs),
    /// Cumulants 1..=n in the chosen framework.
    Cumulants(TableArgs),
    /// Jacobi coefficients b_k, a_k for k = 0..=n.
    Jacobi(TableArgs),
    /// Coefficients 0..=n of a truncated series.
    Series {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = Which::PsiInv)]
        which: Which,
        /// evaluation point for the generating function
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational, default_value = "0")]
        x0: Rational,
    },
}

#[derive(Args)]
struct QuadArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Measure::Mu)]
    measure: Measure,
    /// number of nodes
    #[arg(short = 'm', default_value_t = 10)]
    points: usize,
    /// print the interval spanned by the nodes instead of the rule
    #[arg(long)]
    support: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<meixner::Error> for Failure {
    fn from(e: meixner::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Table { table } => table_cmd(table).map(|_| true),
        Command::Quad(args) => quad(args).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<bool, Failure> {
    let points = if args.params.explicit() {
        args.params.resolve().map_err(Failure::Usage)?
    } else {
        default_grid()
    };
    let suites = Suite::parse_selection(&args.suite).map_err(Failure::Usage)?;
    let reports = run_grid(&points, &suites, args.order, args.tolerance);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Json => {
            for r in &reports {
                serde_json::to_writer(&mut out, r).map_err(|e| Failure::Runtime(e.to_string()))?;
                writeln!(out)?;
            }
        }
        Format::Csv => write_report_csv(&mut out, &reports)?,
        Format::Table => write_report_table(&mut out, &reports)?,
    }
    Ok(reports.iter().all(VerificationReport::passed))
}

fn write_report_csv(out: impl Write, reports: &[VerificationReport]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["suite", "framework", "lambda", "eta", "t", "order", "status", "max_abs_error", "detail"])?;
    for r in reports {
        w.write_record([
            r.suite.clone(),
            r.framework.to_string(),
            r.lambda.clone(),
            r.eta.clone(),
            r.t.clone(),
            r.order.to_string(),
            r.status.to_string(),
            r.max_abs_error.to_string(),
            r.detail.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_report_table(mut out: impl Write, reports: &[VerificationReport]) -> Result<(), Failure> {
    writeln!(
        out,
        "{:<14} {:<10} {:>8} {:>8} {:>6} {:>5}  {:<6} {:>14} {:>8}",
        "suite", "framework", "lambda", "eta", "t", "N", "status", "max_abs_error", "ms"
    )?;
    for r in reports {
        writeln!(
            out,
            "{:<14} {:<10} {:>8} {:>8} {:>6} {:>5}  {:<6} {:>14} {:>8}",
            r.suite,
            r.framework.to_string(),
            r.lambda,
            r.eta,
            r.t,
            r.order,
            r.status.to_string(),
            r.max_abs_error.to_string(),
            r.elapsed_ms
        )?;
        if let Some(detail) = &r.detail {
            writeln!(out, "    {detail}")?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{} reports, {} failed", reports.len(), failed)?;
    Ok(())
}

fn jacobi_for(p: &MeixnerParams, measure: Measure, len: usize) -> JacobiCoeffs {
    match measure {
        Measure::Mu => mu_jacobi(p, len),
        Measure::Nu => nu_jacobi(p, len),
    }
}

fn table_cmd(table: Table) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    match table {
        Table::Poly(a) => {
            let p = a.params.single().map_err(Failure::Usage)?;
            let rows = a.order.max(1);
            let basis = ops_from_jacobi(&jacobi_for(&p, a.measure, rows), rows - 1)?;
            let mut header = vec!["n".to_string()];
            header.extend((0..rows).map(|k| format!("x^{k}")));
            w.write_record(&header)?;
            for n in 0..rows {
                let poly = basis.get(n);
                let mut row = vec![n.to_string()];
                row.extend((0..rows).map(|k| poly.coeff(k).to_string()));
                w.write_record(&row)?;
            }
        }
        Table::Moments(a) => {
            let p = a.params.single().map_err(Failure::Usage)?;
            let m = moments(&jacobi_for(&p, a.measure, a.order + 1), a.order)?;
            w.write_record(["n", "moment"])?;
            for (n, v) in m.as_slice().iter().enumerate() {
                w.write_record([n.to_string(), v.to_string()])?;
            }
        }
        Table::Cumulants(a) => {
            let p = a.params.single().map_err(Failure::Usage)?;
            let m = moments(&jacobi_for(&p, a.measure, a.order + 1), a.order)?;
            let c = moments_to_cumulants(p.framework(), &m, a.order)?;
            w.write_record(["n", "cumulant"])?;
            for n in 1..=a.order {
                w.write_record([n.to_string(), c.get(n).to_string()])?;
            }
        }
        Table::Jacobi(a) => {
            let p = a.params.single().map_err(Failure::Usage)?;
            let j = jacobi_for(&p, a.measure, a.order + 1);
            w.write_record(["n", "b", "a"])?;
            for n in 0..=a.order {
                let an = if n == 0 { String::new() } else { j.a(n)?.to_string() };
                w.write_record([n.to_string(), j.b(n)?.to_string(), an])?;
            }
        }
        Table::Series { table: a, which, x0 } => {
            let p = a.params.single().map_err(Failure::Usage)?;
            let n = a.order;
            let s = match which {
                Which::Psi => psi(&p, n)?,
                Which::PsiInv => psi_inv(&p, n)?,
                Which::Cumulant => cumulant_series(&p, n)?,
                Which::Gf => generating_function(&p, &x0, n)?,
                Which::RaisingA => raising_symbol_from_psi_inv(&p, n)?.0,
                Which::RaisingB => raising_symbol_from_psi_inv(&p, n)?.1,
            };
            w.write_record(["k", "coefficient"])?;
            for (k, c) in s.coeffs().iter().enumerate() {
                w.write_record([k.to_string(), c.to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn quad(args: QuadArgs) -> Result<(), Failure> {
    let p = args.params.single().map_err(Failure::Usage)?;
    let m = args.points;
    let j = jacobi_for(&p, args.measure, m.max(1));
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    if args.support {
        let (lo, hi) = support_estimate(&j, m)?;
        w.write_record(["lower", "upper"])?;
        w.write_record([format_float(lo), format_float(hi)])?;
    } else {
        let rule = gauss_quadrature(&j, m)?;
        w.write_record(["i", "node", "weight"])?;
        for (i, (x, wt)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            w.write_record([i.to_string(), format_float(*x), format_float(*wt)])?;
        }
    }
    w.flush()?;
    Ok(())
}
