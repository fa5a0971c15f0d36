use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use alpha_traversal::alpha::{self, build_table_from, certified_digits, format_digit_file, parse_digit_file};
use alpha_traversal::analysis::max_self_overlap;
use alpha_traversal::lazy;
use alpha_traversal::suite::{run_suite, Suite, SuiteConfig};
use alpha_traversal::text::parse_tree;
use alpha_traversal::traversal::traverse_fetch;
use alpha_traversal::Error;

/// Checkpoint file name used inside `ALPHA_CHECKPOINT_DIR`.
const CHECKPOINT_FILE: &str = "rp_m2.ckpt";

#[derive(Parser)]
#[command(
    name = "alpha-traversal",
    version,
    about = "Fetch-and-discard traversal tables and certified digits of alpha"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify decimal digits of alpha from the table up to level N.
    Alpha {
        /// The level N (> 1); bounds come from alpha_(N-1).
        #[arg(long = "levels", value_name = "N")]
        levels: u64,
        /// Write the digit file here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Prefix the digit file with a `# alpha N=.. certified=..` line.
        #[arg(long)]
        annotated: bool,
        /// Use brute-force simulation instead of the lazy engine (small N only).
        #[arg(long)]
        oracle_only: bool,
        /// Checkpoint file for rp(M_h^[2]) values.
        #[arg(long, value_name = "CHECKPOINT")]
        resume: Option<PathBuf>,
    },
    /// Print h, rp(M_h^[2]), rp(M_h^[1]) and tsl(M_h) for h = 0..=h_max.
    RpTable {
        #[arg(long)]
        h_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Checkpoint file for rp(M_h^[2]) values.
        #[arg(long, value_name = "CHECKPOINT")]
        resume: Option<PathBuf>,
    },
    /// Run property suites and print a JSON report.
    Check {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 48)]
        max_nodes: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Maximum self-overlap of the fraction digits in a digit file.
    Period { file: PathBuf },
    /// Traversal statistics for a tree in text form.
    Tsl {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    /// A checked property does not hold.
    Property(String),
    /// Bad input, I/O trouble or an internal error.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundViolation(_) => Failure::Property(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Alpha { levels, output, annotated, oracle_only, resume } => {
            cmd_alpha(levels, output.as_deref(), annotated, oracle_only, resume)
        }
        Command::RpTable { h_max, format, output, resume } => cmd_rp_table(h_max, format, output.as_deref(), resume),
        Command::Check { suite, seed, cases, max_nodes, output } => {
            cmd_check(suite, seed, cases, max_nodes, output.as_deref())
        }
        Command::Period { file } => cmd_period(&file),
        Command::Tsl { file, format } => cmd_tsl(&file, format),
    }
}

fn checkpoint_path(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os("ALPHA_CHECKPOINT_DIR").map(|d| Path::new(&d).join(CHECKPOINT_FILE)))
}

/// `rp(M_h^[2])` for `h = 0..count`, through the checkpoint when one is set.
fn rp2_values(count: usize, checkpoint: Option<PathBuf>) -> Result<Vec<u64>, Failure> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let h_max = u32::try_from(count - 1).map_err(|_| Failure::Usage("height out of range".into()))?;
    Ok(match checkpoint {
        Some(path) => lazy::rp_m2_table_resumable(h_max, &path)?,
        None => lazy::rp_m2_table(h_max),
    })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_alpha(
    n: u64,
    output: Option<&Path>,
    annotated: bool,
    oracle_only: bool,
    resume: Option<PathBuf>,
) -> Result<(), Failure> {
    if n <= 1 {
        return Err(Error::InvalidLevel(n).into());
    }
    let count = (n - 1) as usize;
    let rp2 = if oracle_only {
        alpha::Rp2Source::rp2_values(&alpha::BruteForce, count)?
    } else {
        rp2_values(count, checkpoint_path(resume))?
    };
    let digits = certified_digits(n, &rp2)?;
    let summary = format!("# alpha N={} certified={}\n", digits.level, digits.certified_count);
    match output {
        Some(path) => {
            fs::write(path, format_digit_file(&digits, annotated))?;
            print!("{summary}");
        }
        None => print!("{}", format_digit_file(&digits, true)),
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    h: usize,
    rp2: u64,
    rp1: u64,
    tsl: String,
}

fn cmd_rp_table(h_max: u32, format: Format, output: Option<&Path>, resume: Option<PathBuf>) -> Result<(), Failure> {
    let rp2 = rp2_values(h_max as usize + 1, checkpoint_path(resume))?;
    let table = build_table_from(h_max as usize, rp2)?;
    let rows: Vec<TableRow> = (0..=h_max as usize)
        .map(|h| TableRow { h, rp2: table.rp2[h], rp1: table.rp1[h], tsl: table.tsl[h].to_string() })
        .collect();
    let text = match format {
        Format::Text => {
            let mut s = String::from("h rp2 rp1 tsl\n");
            for r in &rows {
                s.push_str(&format!("{} {} {} {}\n", r.h, r.rp2, r.rp1, r.tsl));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).map_err(|e| Failure::Usage(e.to_string()))? + "\n",
        Format::Csv => to_csv(&rows)?,
    };
    emit(output, &text)
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_check(suite: Suite, seed: u64, cases: usize, max_nodes: usize, output: Option<&Path>) -> Result<(), Failure> {
    let cfg = SuiteConfig { seed, cases, max_nodes: max_nodes.max(1), ..SuiteConfig::default() };
    let report = run_suite(suite, &cfg);
    let json = serde_json::to_string_pretty(&report.records).map_err(|e| Failure::Usage(e.to_string()))? + "\n";
    emit(output, &json)?;
    let failures: Vec<_> = report.failures().collect();
    if failures.is_empty() {
        eprintln!("suite {suite}: {} checks passed", report.records.len());
        return Ok(());
    }
    for f in &failures {
        let at = f.h.map(|h| format!("h={h}")).or(f.case_id.map(|c| format!("case={c}"))).unwrap_or_default();
        eprintln!("FAIL {} {at}: {}", f.check, f.details);
    }
    Err(Failure::Property(format!("suite {suite}: {} of {} checks failed", failures.len(), report.records.len())))
}

fn cmd_period(file: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(file)?;
    let block = parse_digit_file(&text)?;
    println!("{}", max_self_overlap(&block.fraction));
    Ok(())
}

fn cmd_tsl(file: &Path, format: Format) -> Result<(), Failure> {
    let text = fs::read_to_string(file)?;
    let tree = parse_tree(&text)?;
    let record = traverse_fetch(&tree).to_record();
    let out = match format {
        Format::Text => format!(
            "size={} tsl={} cost={} rp={} irp={}\n",
            record.size, record.tsl, record.cost, record.rp, record.irp
        ),
        Format::Json => serde_json::to_string(&record).map_err(|e| Failure::Usage(e.to_string()))? + "\n",
        Format::Csv => to_csv(std::slice::from_ref(&record))?,
    };
    emit(None, &out)
}
