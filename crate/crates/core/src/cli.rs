//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage, parse and validation errors,
//! 1 for internal failures. Output is assembled in full before anything is
//! written, so a failing run leaves standard output empty.

use std::fs::File;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::anova::AnovaSummary;
use crate::boundary::{Domain, NbValue};
use crate::correlation::CorrelationValue;
use crate::error::NbError;
use crate::io::{parse_groups_csv, parse_pairs_csv, parse_table_csv};
use crate::report::{self, ClassifyReport, Metric};
use crate::simulation::{run_estimator_sim, PopulationTable2x2};

#[derive(Debug, Parser)]
#[command(
    name = "nbf",
    version,
    about = "Neutrality boundary robustness metrics"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Risk Quotient nb for a contingency table (headerless CSV of counts).
    Table {
        #[command(flatten)]
        input: InputArg,
        /// Use the generalized r x c formula even for 2x2 tables.
        #[arg(long)]
        force_rxc: bool,
    },
    /// Partial eta squared nb for a one-way ANOVA.
    Anova {
        /// Long-format CSV with header `group,value`, or `-` for stdin.
        #[arg(long, required_unless_present = "summary", conflicts_with = "summary")]
        input: Option<PathBuf>,
        /// Summary statistics `dfb,dfw,F` instead of raw data.
        #[arg(long)]
        summary: Option<String>,
        /// Report f/(1+f) with Cohen's f as the primary value.
        #[arg(long)]
        cohens_f: bool,
    },
    /// Distance-to-independence nb for a Pearson correlation.
    Correlation {
        /// CSV with header `x,y`, or `-` for stdin.
        #[arg(long, required_unless_present = "r", conflicts_with = "r")]
        input: Option<PathBuf>,
        /// Correlation coefficient in (-1, 1).
        #[arg(long, allow_negative_numbers = true)]
        r: Option<f64>,
    },
    /// Robustness band for an nb value.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        value: f64,
    },
    /// Monte-Carlo study of the fourfold nb estimator.
    Simulate {
        /// Cell probabilities `p11,p12,p21,p22`.
        #[arg(long, value_delimiter = ',', required = true)]
        pop: Vec<f64>,
        /// Sample sizes.
        #[arg(long, value_delimiter = ',', default_value = "50,200,800,3200")]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct InputArg {
    /// CSV file, or `-` for stdin.
    #[arg(long)]
    input: PathBuf,
}

fn parse_summary(s: &str) -> Result<AnovaSummary, Failure> {
    let bad = |msg: String| Failure::Input(format!("--summary: {msg}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [dfb, dfw, f] = parts[..] else {
        return Err(bad(format!("expected dfb,dfw,F, got '{s}'")));
    };
    let dfb = dfb
        .parse::<u64>()
        .map_err(|_| bad(format!("df_between '{dfb}' is not a nonnegative integer")))?;
    let dfw = dfw
        .parse::<u64>()
        .map_err(|_| bad(format!("df_within '{dfw}' is not a nonnegative integer")))?;
    let f = f
        .parse::<f64>()
        .map_err(|_| bad(format!("F '{f}' is not a number")))?;
    Ok(AnovaSummary::new(dfb, dfw, f)?)
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<NbError> for Failure {
    fn from(e: NbError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    let res = if path.as_os_str() == "-" {
        stdin.read_to_end(&mut buf)
    } else {
        File::open(path).and_then(|mut f| f.read_to_end(&mut buf))
    };
    res.map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(buf)
}

fn render<T: serde::Serialize>(
    format: Format,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(text()),
        Format::Json => serde_json::to_string(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Table { input, force_rxc } => {
            let table = parse_table_csv(read_input(&input.input, stdin)?.as_slice())?;
            let report = report::table_report(table, force_rxc)?;
            render(format, &report, || report.to_text())
        }
        Command::Anova {
            input,
            summary,
            cohens_f,
        } => {
            let primary = if cohens_f {
                Metric::CohensFNb
            } else {
                Metric::PartialEtaSq
            };
            let report = match (input, summary) {
                (_, Some(summary)) => {
                    report::anova_summary_report(parse_summary(&summary)?, primary)?
                }
                (Some(path), None) => {
                    let groups = parse_groups_csv(read_input(&path, stdin)?.as_slice())?;
                    report::anova_raw_report(groups, primary)?
                }
                (None, None) => unreachable!("clap requires --input or --summary"),
            };
            render(format, &report, || report.to_text())
        }
        Command::Correlation { input, r } => {
            let report = match (input, r) {
                (_, Some(r)) => report::correlation_report(CorrelationValue::new(r)?)?,
                (Some(path), None) => {
                    let pairs = parse_pairs_csv(read_input(&path, stdin)?.as_slice())?;
                    report::pairs_report(pairs)?
                }
                (None, None) => unreachable!("clap requires --input or --r"),
            };
            render(format, &report, || report.to_text())
        }
        Command::Classify { value } => {
            let nb = NbValue::new(value, Domain::General, "nb")?;
            let report = ClassifyReport::new(&nb);
            render(format, &report, || report.to_text())
        }
        Command::Simulate {
            pop,
            sizes,
            reps,
            seed,
        } => {
            let [p11, p12, p21, p22] = pop[..] else {
                return Err(Failure::Input(format!(
                    "--pop needs 4 probabilities, got {}",
                    pop.len()
                )));
            };
            let pop = PopulationTable2x2::new(p11, p12, p21, p22)?;
            let result = run_estimator_sim(&pop, &sizes, reps, seed)?;
            render(format, &result, || report::simulation_text(&result))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };

    match execute(cli, stdin) {
        Ok(out) => match stdout
            .write_all(out.as_bytes())
            .and_then(|()| stdout.flush())
        {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                1
            }
        },
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {}", msg.replace('\n', " "));
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(stderr, "internal error: {}", msg.replace('\n', " "));
            1
        }
    }
}
