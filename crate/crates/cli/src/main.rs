//! Command-line front end: parse operator description files, run the
//! decision pipeline, and emit human-readable and machine-readable
//! reports.
//!
//! Exit codes: 0 success (the verdict itself is data, never an exit
//! code); 2 document/parse errors; 3 insufficient precision; 4
//! unsupported combinations; 5 oracle disagreement; 6 cost guard.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use liouville_core::document::{GeneratorDocument, OperatorDocument};
use liouville_core::report::{
    assumptions, verdict_doc, GroupSummary, Report, ToolInfo, VerificationDoc,
};
use liouville_core::subgroup::closure;
use liouville_core::verify::{check_annihilator, density_oracle, zero_set_scan, OracleConfig};
use liouville_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "liouville",
    version,
    about = "Exact Liouville decisions and period groups for Lévy-form operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the Liouville property for an operator document.
    Decide {
        path: PathBuf,
        /// Run the floating-point symbol checks as well.
        #[arg(long)]
        verify: bool,
        /// Write the machine-readable report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the period group, c_mu, and the effective drift.
    PeriodGroup {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose the closure of a generator file into V + lattice.
    Closure {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the explicit counterexample solution when Liouville fails.
    Counterexample {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the symbol on the period group's dual family.
    SymbolCheck {
        path: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force density oracle against the exact closure (or an
    /// explicit prediction embedded in the file).
    Oracle {
        path: PathBuf,
        #[arg(long = "oracle-N", default_value_t = 10_000)]
        oracle_n: i64,
        #[arg(long = "oracle-eps", default_value_t = 0.05)]
        oracle_eps: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NonSquarefreeRadicand(_)
        | Error::DependentRadicands(_)
        | Error::DuplicateSymbol(_)
        | Error::BadEnclosure(_, _)
        | Error::SyntaxError { .. }
        | Error::UnknownToken(_)
        | Error::DivisionByZeroScalar
        | Error::FieldMismatch
        | Error::DimensionMismatch(_)
        | Error::InvalidDocument(_)
        | Error::InvalidOperator(_) => 2,
        Error::InsufficientPrecision(_) => 3,
        Error::UnsupportedComponent(_) | Error::UsageError(_) | Error::QuadratureFailure(_) => 4,
        Error::CostGuardExceeded(_) => 6,
    }
}

fn read_doc(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidDocument(format!("{}: {e}", path.display())))
}

fn emit(report: &Report, out: Option<&Path>) -> Result<()> {
    print!("{}", report.to_text());
    if let Some(path) = out {
        std::fs::write(path, report.to_json())
            .map_err(|e| Error::InvalidDocument(format!("writing {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decide { path, verify, out, seed } => {
            let doc = OperatorDocument::from_json(&read_doc(&path)?)?;
            let (field, op) = doc.build()?;
            let verdict = op.decide()?;
            let verification = if verify {
                let residual = match &verdict.counterexample {
                    Some(ce) => Some(check_annihilator(&op, &ce.xi)?),
                    None => None,
                };
                let zero_set = zero_set_scan(&op, &verdict.period_group, 200, seed)?;
                Some(VerificationDoc { annihilator_residual: residual, zero_set: Some(zero_set) })
            } else {
                None
            };
            let report = Report {
                tool: ToolInfo::current(),
                command: "decide".into(),
                seed: verify.then_some(seed),
                verdict: Some(verdict_doc(&verdict)),
                group: None,
                verification,
                oracle: None,
                assumptions: assumptions(
                    &field,
                    liouville_core::document::has_atoms(&op),
                    verdict.degenerate,
                ),
                operator_echo: Some(OperatorDocument::from_operator(&verdict.canonical_operator)),
            };
            emit(&report, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PeriodGroup { path, out } => {
            let doc = OperatorDocument::from_json(&read_doc(&path)?)?;
            let (field, op) = doc.build()?;
            let verdict = op.decide()?;
            let report = Report {
                tool: ToolInfo::current(),
                command: "period-group".into(),
                seed: None,
                verdict: Some(verdict_doc(&verdict)),
                group: Some(GroupSummary::new(&verdict.period_group)),
                verification: None,
                oracle: None,
                assumptions: assumptions(
                    &field,
                    liouville_core::document::has_atoms(&op),
                    verdict.degenerate,
                ),
                operator_echo: Some(OperatorDocument::from_operator(&verdict.canonical_operator)),
            };
            emit(&report, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Closure { path, out } => {
            let doc = GeneratorDocument::from_json(&read_doc(&path)?)?;
            let (field, gen, _) = doc.build()?;
            let group = closure(&gen)?;
            let report = Report {
                tool: ToolInfo::current(),
                command: "closure".into(),
                seed: None,
                verdict: None,
                group: Some(GroupSummary::new(&group)),
                verification: None,
                oracle: None,
                assumptions: assumptions(&field, false, false),
                operator_echo: None,
            };
            emit(&report, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Counterexample { path, out } => {
            let doc = OperatorDocument::from_json(&read_doc(&path)?)?;
            let (field, op) = doc.build()?;
            let verdict = op.decide()?;
            if verdict.liouville {
                println!(
                    "Liouville property holds: every bounded solution is constant, so no \
                     counterexample exists."
                );
            }
            let report = Report {
                tool: ToolInfo::current(),
                command: "counterexample".into(),
                seed: None,
                verdict: Some(verdict_doc(&verdict)),
                group: None,
                verification: None,
                oracle: None,
                assumptions: assumptions(
                    &field,
                    liouville_core::document::has_atoms(&op),
                    verdict.degenerate,
                ),
                operator_echo: Some(OperatorDocument::from_operator(&verdict.canonical_operator)),
            };
            emit(&report, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SymbolCheck { path, seed, out } => {
            let doc = OperatorDocument::from_json(&read_doc(&path)?)?;
            let (field, op) = doc.build()?;
            let verdict = op.decide()?;
            let residual = match &verdict.counterexample {
                Some(ce) => Some(check_annihilator(&op, &ce.xi)?),
                None => None,
            };
            let zero_set = zero_set_scan(&op, &verdict.period_group, 200, seed)?;
            let report = Report {
                tool: ToolInfo::current(),
                command: "symbol-check".into(),
                seed: Some(seed),
                verdict: Some(verdict_doc(&verdict)),
                group: None,
                verification: Some(VerificationDoc {
                    annihilator_residual: residual,
                    zero_set: Some(zero_set),
                }),
                oracle: None,
                assumptions: assumptions(
                    &field,
                    liouville_core::document::has_atoms(&op),
                    verdict.degenerate,
                ),
                operator_echo: Some(OperatorDocument::from_operator(&verdict.canonical_operator)),
            };
            emit(&report, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { path, oracle_n, oracle_eps, seed, out } => {
            let doc = GeneratorDocument::from_json(&read_doc(&path)?)?;
            let (field, gen, explicit) = doc.build()?;
            if !gen.lines.is_empty() {
                return Err(Error::UsageError(
                    "the density oracle enumerates integer combinations of atoms; line \
                     generators are not supported here"
                        .into(),
                ));
            }
            let exact = closure(&gen)?;
            let predicted = explicit.unwrap_or_else(|| exact.clone());
            let generators: Vec<Vec<f64>> = gen
                .atoms
                .iter()
                .map(|a| a.iter().map(|s| s.approx_f64()).collect::<Result<Vec<f64>>>())
                .collect::<Result<_>>()?;
            let cfg = OracleConfig { n_max: oracle_n, eps: oracle_eps, targets: 200, seed };
            let oracle = density_oracle(&generators, &predicted, &cfg)?;
            let disagreement = !oracle.confined || oracle.covered_fraction < 0.95;
            let mut report = Report {
                tool: ToolInfo::current(),
                command: "oracle".into(),
                seed: Some(seed),
                verdict: None,
                group: Some(GroupSummary::new(&predicted)),
                verification: None,
                oracle: Some(oracle),
                assumptions: assumptions(&field, false, false),
                operator_echo: None,
            };
            if disagreement {
                report.assumptions.push(
                    "ORACLE DISAGREEMENT: the prediction is inconsistent with the enumerated \
                     combinations"
                        .into(),
                );
            }
            emit(&report, out.as_deref())?;
            Ok(if disagreement { ExitCode::from(5) } else { ExitCode::SUCCESS })
        }
    }
}
