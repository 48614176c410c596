//! Command-line frontend: `encode`, `relate` and `scan`.

use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::alphabet::{load_alphabet, AlphabetError, LetterValueTable};
use crate::corpus::{encoding_for_label, tokenize_reader, CorpusError, Policy};
use crate::numerics::{encode, relation, EncodeError, SeedPair};
use crate::scan::{
    NoProgress, ProgressEvent, ProgressSink, RelationRecord, ScanConfig, ScanError, Scanner,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_ENCODING: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?} (expected text|json|csv)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "abjad", version, about = "Abjad-numeral word relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the digit series of a word
    Encode {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Print the seed relation between two words
    Relate {
        x: String,
        y: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Score every corpus token against a seed pair
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct AlphabetArg {
    /// `english` or a path to an alphabet JSON file
    #[arg(long, default_value = "english")]
    pub alphabet: String,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub x: String,
    pub y: String,
    /// Corpus file, `-` for standard input
    #[arg(long, default_value = "-")]
    pub corpus: PathBuf,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub alphabet: AlphabetArg,
    #[arg(long = "min-score", default_value_t = 1)]
    pub min_score: u128,
    #[arg(long = "top-k")]
    pub top_k: Option<NonZeroUsize>,
    #[arg(long)]
    pub dedup: bool,
    #[arg(long, default_value = "skip")]
    pub policy: Policy,
    /// Text encoding of the corpus
    #[arg(long, default_value = "utf-8")]
    pub encoding: String,
    /// Report progress on standard error
    #[arg(long)]
    pub progress: bool,
    /// Worker threads for scoring
    #[arg(long, default_value = "1")]
    pub workers: NonZeroUsize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Alphabet(#[from] AlphabetError),
    #[error("{0}")]
    Encode(#[from] EncodeError),
    #[error("{0}")]
    Corpus(CorpusError),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Output(_) => EXIT_IO,
            CliError::Corpus(CorpusError::Io(_)) => EXIT_IO,
            CliError::Corpus(CorpusError::UnknownEncoding(_)) => EXIT_USAGE,
            CliError::Alphabet(_) | CliError::Encode(_) | CliError::Corpus(_) => EXIT_ENCODING,
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Seed(e) => CliError::Encode(e),
            ScanError::Corpus(e) => CliError::Corpus(e),
            ScanError::Workers(m) => CliError::Usage(m),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn output_err(e: impl fmt::Display) -> CliError {
    CliError::Output(e.to_string())
}

/// `['<x>', '<y>'] is related to <word> per = <percent>%`
pub fn format_text_line(seed_words: (&str, &str), record: &RelationRecord) -> String {
    format!(
        "['{}', '{}'] is related to {} per = {}%",
        seed_words.0, seed_words.1, record.word, record.percent
    )
}

pub fn resolve_alphabet(choice: &str) -> Result<LetterValueTable, CliError> {
    if choice == "english" {
        return Ok(LetterValueTable::builtin_english());
    }
    let path = Path::new(choice);
    let source = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(load_alphabet(&source)?)
}

#[derive(Serialize)]
struct JsonSeed<'a> {
    words: [&'a str; 2],
    dot_sum: u64,
    padded_len: u64,
    fraction: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    seed: JsonSeed<'a>,
    records: &'a [RelationRecord],
}

/// Writes records in the requested format.
pub fn write_records<W: Write>(
    out: W,
    format: OutputFormat,
    seed: &SeedPair,
    records: &[RelationRecord],
) -> Result<(), CliError> {
    match format {
        OutputFormat::Text => {
            let mut out = out;
            for r in records {
                writeln!(out, "{}", format_text_line((&seed.word_x, &seed.word_y), r))
                    .map_err(output_err)?;
            }
            out.flush().map_err(output_err)
        }
        OutputFormat::Json => {
            let report = JsonReport {
                seed: JsonSeed {
                    words: [&seed.word_x, &seed.word_y],
                    dot_sum: seed.seed.dot_sum,
                    padded_len: seed.seed.padded_len,
                    fraction: seed.seed.to_string(),
                },
                records,
            };
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &report).map_err(output_err)?;
            writeln!(out).map_err(output_err)?;
            out.flush().map_err(output_err)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["word", "percent", "position"])
                .map_err(output_err)?;
            for r in records {
                w.write_record([
                    r.word.clone(),
                    r.percent.to_string(),
                    r.position.to_string(),
                ])
                .map_err(output_err)?;
            }
            w.flush().map_err(output_err)
        }
    }
}

/// Progress line on standard error, rewritten in place.
struct StderrProgress {
    last_len: usize,
}

impl ProgressSink for StderrProgress {
    fn progress(&mut self, e: ProgressEvent) {
        let msg = format!(
            "Processing word {} of {} ({:.2}%)",
            e.current, e.total, e.percent_done
        );
        self.last_len = msg.len();
        let mut err = io::stderr().lock();
        let _ = write!(err, "{msg}\r");
        let _ = err.flush();
    }
}

impl Drop for StderrProgress {
    fn drop(&mut self) {
        if self.last_len > 0 {
            let _ = write!(io::stderr(), "{}\r", " ".repeat(self.last_len));
        }
    }
}

fn run_encode(word: &str, alphabet: &AlphabetArg, out: &mut dyn Write) -> Result<(), CliError> {
    let table = resolve_alphabet(&alphabet.alphabet)?;
    let series = encode(&table, word)?;
    writeln!(out, "{series}").map_err(output_err)
}

fn run_relate(
    x: &str,
    y: &str,
    alphabet: &AlphabetArg,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let table = resolve_alphabet(&alphabet.alphabet)?;
    let rel = relation(&table, x, y)?;
    writeln!(out, "{rel} ≈ {:.6}", rel.approx()).map_err(output_err)
}

fn run_scan(args: &ScanArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let table = resolve_alphabet(&args.alphabet.alphabet)?;
    let encoding = encoding_for_label(&args.encoding).map_err(CliError::Corpus)?;

    let config = ScanConfig {
        seed_x: args.x.clone(),
        seed_y: args.y.clone(),
        min_percent: args.min_score,
        top_k: args.top_k,
        dedup: args.dedup,
        policy: args.policy,
    };
    let scanner = Scanner::new(&table, config)?;

    let reader: Box<dyn Read> = if args.corpus.as_os_str() == "-" {
        Box::new(io::stdin().lock())
    } else {
        Box::new(File::open(&args.corpus).map_err(io_err(&args.corpus))?)
    };
    let tokens = tokenize_reader(io::BufReader::new(reader), encoding).map_err(|e| match e {
        CorpusError::Io(source) => io_err(&args.corpus)(source),
        other => CliError::Corpus(other),
    })?;

    let report = {
        let mut sink: Box<dyn ProgressSink> = if args.progress {
            Box::new(StderrProgress { last_len: 0 })
        } else {
            Box::new(NoProgress)
        };
        if args.workers.get() > 1 {
            scanner.scan_parallel(&tokens, args.workers, sink.as_mut())?
        } else {
            scanner.scan(&tokens, sink.as_mut())?
        }
    };
    if report.skipped > 0 {
        eprintln!("skipped {} unencodable token(s)", report.skipped);
    }

    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(io_err(path))?;
            write_records(
                BufWriter::new(file),
                args.format,
                &report.seed,
                &report.records,
            )
        }
        None => write_records(stdout, args.format, &report.seed, &report.records),
    }
}

/// Runs one parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Encode { word, alphabet } => run_encode(word, alphabet, out),
        Command::Relate { x, y, alphabet } => run_relate(x, y, alphabet, out),
        Command::Scan(args) => run_scan(args, out),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
