//! Command-line front end.
//!
//! Exit codes: 0 success (or cover-free), 1 not cover-free, 2 invalid input,
//! 3 materialization budget exceeded, 4 internal consistency failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use cfcode_core::{
    best_k, materialize_with_budget, witness_row, BigNat, CodeError, CodeParams, KSubset,
    ParamError, RowLabel, WitnessError, DEFAULT_BIT_BUDGET,
};
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::matrix_file::{provenance_comments, read_matrix, write_matrix, FormatError};
use crate::parallel::verify_parallel;
use crate::parse::{parse_row_label, parse_set, parse_set_list, ParseError};
use crate::report::{ParamsReport, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "cfcode", version, about = "Cover-free (s,l)-codes from subset containment")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Ground set size
    n: u64,
    /// Column subset size
    k: u64,
    /// Cover-free strength
    s: u64,
    /// Number of subsets per row label
    l: u64,
}

impl ParamArgs {
    fn validate(&self) -> Result<CodeParams, ParamError> {
        CodeParams::new(self.n, self.k, self.s, self.l)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report N, t, column weight, rate and asymptotic estimates.
    Params {
        #[command(flatten)]
        params: ParamArgs,
        /// Replace k by the admissible value maximizing t.
        #[arg(long)]
        best_k: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write the full matrix in cfcode v1 format.
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest allowed N * t.
        #[arg(long, default_value_t = DEFAULT_BIT_BUDGET)]
        max_bits: u64,
        /// Largest allowed N.
        #[arg(long, default_value_t = u64::MAX)]
        max_rows: u64,
    },
    /// Check the cover-free (s,l) property of a matrix file.
    Verify {
        file: PathBuf,
        #[arg(long = "s")]
        s: u64,
        #[arg(long = "l")]
        l: u64,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
        /// Scan every pair and report the smallest witness multiplicity.
        #[arg(long)]
        count_witnesses: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print one entry of the code.
    Entry {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_rank, conflicts_with = "row", required_unless_present = "row")]
        row_rank: Option<BigNat>,
        /// Row label such as "{1,2},{4,5}".
        #[arg(long)]
        row: Option<String>,
        #[arg(long, value_parser = parse_rank, conflicts_with = "col", required_unless_present = "col")]
        col_rank: Option<BigNat>,
        /// Column set such as "{1,2,3}".
        #[arg(long)]
        col: Option<String>,
    },
    /// Build a row that is 0 on the --neg columns and 1 on the --pos columns.
    Witness {
        #[command(flatten)]
        params: ParamArgs,
        /// s column sets, e.g. "{1,2,3};{1,2,4}".
        #[arg(long)]
        neg: String,
        /// l column sets.
        #[arg(long)]
        pos: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Verify(#[from] cfcode_core::VerifyError),
    #[error("budget exceeded: {0}")]
    Budget(CodeError),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 3,
            CliError::Inconsistent(_) => 4,
            _ => 2,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        // A closed pipe (`cfcode gen ... | head`) is not an error.
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Params {
            params,
            best_k: pick_k,
            json,
        } => {
            let p = if pick_k {
                let best = best_k(params.n, params.s, params.l)?;
                CodeParams::new(params.n, best.k, params.s, params.l)?
            } else {
                params.validate()?
            };
            warn(&p, err);
            let report = ParamsReport::new(&p, pick_k);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
            } else {
                out.write_all(report.to_text().as_bytes())?;
            }
            Ok(0)
        }
        Command::Gen {
            params,
            out: path,
            max_bits,
            max_rows,
        } => {
            let p = params.validate()?;
            warn(&p, err);
            let matrix = materialize_with_budget(&p, max_rows, max_bits).map_err(|e| match e {
                CodeError::TooManyRows { .. }
                | CodeError::BudgetExceeded { .. }
                | CodeError::IndexOverflow(_) => CliError::Budget(e),
                other => CliError::Code(other),
            })?;
            let comments = provenance_comments(&p);
            match path {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(&path)?);
                    write_matrix(&mut w, &matrix, &comments)?;
                    w.flush()?;
                    writeln!(
                        err,
                        "wrote {}: {} rows, {} columns",
                        path.display(),
                        matrix.num_rows(),
                        matrix.num_cols()
                    )?;
                }
                None => write_matrix(out, &matrix, &comments)?,
            }
            Ok(0)
        }
        Command::Verify {
            file,
            s,
            l,
            threads,
            count_witnesses,
            json,
        } => {
            let parsed = File::open(&file)
                .map_err(FormatError::from)
                .and_then(read_matrix)
                .map_err(|source| CliError::Format {
                    path: file.display().to_string(),
                    source,
                })?;
            let m = &parsed.matrix;
            let threads = threads.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, usize::from)
            });
            let verdict = verify_parallel(m, s, l, threads, count_witnesses)?;
            let report = VerifyReport::new(m.num_rows(), m.num_cols(), s, l, &verdict);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
            } else {
                out.write_all(report.to_text().as_bytes())?;
            }
            Ok(if verdict.holds { 0 } else { 1 })
        }
        Command::Entry {
            params,
            row_rank,
            row,
            col_rank,
            col,
        } => {
            let p = params.validate()?;
            let label = match (row_rank, row) {
                (Some(r), _) => p.row_label_from_rank(&r)?,
                (None, Some(text)) => RowLabel::new(parse_row_label(&text, p.n())?, p.s(), p.n())?,
                (None, None) => return Err(CliError::Usage("--row or --row-rank is required".into())),
            };
            let column = match (col_rank, col) {
                (Some(c), _) => p.column_from_rank(&c)?,
                (None, Some(text)) => parse_set(&text, p.n())?,
                (None, None) => return Err(CliError::Usage("--col or --col-rank is required".into())),
            };
            let bit = p.entry(&label, &column)?;
            writeln!(out, "{}", u8::from(bit))?;
            writeln!(out, "row {label} (rank {})", p.row_rank_from_label(&label)?)?;
            writeln!(out, "col {column} (rank {})", p.column_rank(&column)?)?;
            Ok(0)
        }
        Command::Witness { params, neg, pos } => {
            let p = params.validate()?;
            let neg = parse_set_list(&neg, p.n())?;
            let pos = parse_set_list(&pos, p.n())?;
            let label = witness_row(&p, &neg, &pos).map_err(|e| match e {
                WitnessError::NoWitness { .. } => CliError::Inconsistent(e.to_string()),
                WitnessError::Code(c) => CliError::Code(c),
                other => CliError::Usage(other.to_string()),
            })?;
            confirm_witness(&p, &label, &neg, &pos)?;
            writeln!(out, "{label}")?;
            writeln!(out, "rank {}", p.row_rank_from_label(&label)?)?;
            writeln!(
                out,
                "confirmed: 0 on {} negative columns, 1 on {} positive columns",
                neg.len(),
                pos.len()
            )?;
            Ok(0)
        }
    }
}

fn confirm_witness(
    p: &CodeParams,
    label: &RowLabel,
    neg: &[KSubset],
    pos: &[KSubset],
) -> Result<(), CliError> {
    for c in neg {
        if p.entry(label, c)? {
            return Err(CliError::Inconsistent(format!("witness {label} has a 1 in column {c}")));
        }
    }
    for c in pos {
        if !p.entry(label, c)? {
            return Err(CliError::Inconsistent(format!("witness {label} has a 0 in column {c}")));
        }
    }
    Ok(())
}

fn parse_rank(text: &str) -> Result<BigNat, String> {
    text.parse()
        .map_err(|_| format!("{text:?} is not a nonnegative decimal integer"))
}

fn warn(p: &CodeParams, err: &mut dyn Write) {
    for w in p.warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
}
