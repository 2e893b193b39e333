use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weil_cli::report::AnalyzeRecord;
use weil_cli::{
    cmd_analyze, cmd_batch, cmd_oracle_check, cmd_validate, BatchFormat, CliError, Input,
    LabelConvention,
};
use weil_core::eigensystem::DEFAULT_PRECISION_CAP;
use weil_core::tate::AnalysisOptions;

#[derive(Parser)]
#[command(name = "weil", version, about = "Relations among Frobenius eigenvalues and exotic Tate classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Coefficients, highest degree first, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "label", required_unless_present = "label")]
    coeffs: Option<String>,
    /// Isogeny-class label `g.q.tokens`.
    #[arg(long)]
    label: Option<String>,
    /// Field size (`p^a` or an integer); `implied` with a label.
    #[arg(long)]
    q: Option<String>,
    #[command(flatten)]
    convention: ConventionArg,
}

#[derive(Args)]
struct ConventionArg {
    /// Sign convention of label coefficients: lmfdb or negated.
    #[arg(long = "label-convention", default_value = "lmfdb")]
    label_convention: LabelConvention,
}

#[derive(Args)]
struct PipelineArgs {
    /// Relation search weight (default 2 (2g)^2).
    #[arg(long)]
    weight_bound: Option<u64>,
    /// Report the minimal exotic power only up to this value.
    #[arg(long)]
    max_power: Option<u64>,
    /// Cap on the initial root isolation precision, in bits.
    #[arg(long, env = "WEIL_PRECISION_CAP", default_value_t = DEFAULT_PRECISION_CAP)]
    precision_cap: u32,
    /// Also report the Hilbert basis of the relations over the base field.
    #[arg(long)]
    base_field_basis: bool,
}

impl PipelineArgs {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            weight_bound: self.weight_bound,
            max_power: self.max_power,
            precision_cap: self.precision_cap,
            base_field_basis: self.base_field_basis,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that a polynomial is a Weil polynomial and print its slopes.
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run the full analysis on one polynomial.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Print the JSON report instead of a summary.
        #[arg(long)]
        json: bool,
    },
    /// Analyze every record of a JSONL or CSV file, one JSON line each.
    Batch {
        file: PathBuf,
        /// Input format; inferred from the extension when omitted.
        #[arg(long)]
        format: Option<BatchFormat>,
        /// Worker threads.
        #[arg(long, default_value_t = default_parallelism())]
        parallel: usize,
        /// Output file (standard output when omitted).
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[command(flatten)]
        convention: ConventionArg,
    },
    /// Tabulate Tate and image dimensions over a grid of (n, d).
    OracleCheck {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_d: usize,
        #[arg(long, env = "WEIL_PRECISION_CAP", default_value_t = DEFAULT_PRECISION_CAP)]
        precision_cap: u32,
    },
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn input_of(args: &InputArgs) -> Result<Input, CliError> {
    match (&args.coeffs, &args.label) {
        (Some(c), None) => {
            let q = args.q.as_deref().ok_or_else(|| CliError::Usage("--coeffs needs --q".into()))?;
            Input::from_coeff_list(c, q)
        }
        (None, Some(l)) => Ok(Input::Label { label: l.clone(), q: args.q.clone() }),
        _ => Err(CliError::Usage("give exactly one of --coeffs and --label".into())),
    }
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).expect("records serialize");
    writeln!(out)?;
    Ok(())
}

fn summary(r: &AnalyzeRecord) -> String {
    let witness = r.minimal_reduced.as_ref().map_or("none".to_string(), |w| {
        format!("{:?} (degree {}, over the degree-{} extension)", w.e, w.degree, w.base_change)
    });
    let verdict = match r.neat_bound {
        Some(w) => format!("{} (W = {w})", r.neat),
        None => r.neat.to_string(),
    };
    let opt = |x: Option<u64>| x.map_or("none".to_string(), |v| v.to_string());
    let lines = [
        format!("polynomial     {} over q = {}", r.coeffs.join(","), r.q),
        format!("label          {}", r.label),
        format!("base change    {} (m = {}, r = {})", r.base_change, r.m, r.r),
        format!("gamma rank     {}", r.gamma_rank),
        format!("witness        {witness}"),
        format!("exotic power   {}", opt(r.minimal_exotic_power)),
        format!("power bound    {}", opt(r.power_bound)),
        format!("Hilbert basis  {:?} (H = {})", r.hilbert_basis, r.h),
    ];
    let base = match (&r.base_field_hilbert_basis, r.base_field_h) {
        (Some(b), Some(h)) => vec![format!("  base field   {b:?} (H = {h})")],
        _ => Vec::new(),
    };
    lines.into_iter().chain(base).chain([format!("verdict        {verdict}")]).collect::<Vec<_>>().join("\n")
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Validate { input } => {
            let (rec, code) = cmd_validate(&input_of(&input)?, input.convention.label_convention)?;
            print_json(&rec)?;
            Ok(code)
        }
        Command::Analyze { input, pipeline, json } => {
            let rec = cmd_analyze(&input_of(&input)?, input.convention.label_convention, &pipeline.options())?;
            if json {
                print_json(&rec)?;
            } else {
                println!("{}", summary(&rec));
            }
            Ok(0)
        }
        Command::Batch { file, format, parallel, output, pipeline, convention } => {
            let format = match format {
                Some(f) => f,
                None if file.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => BatchFormat::Csv,
                None => BatchFormat::Jsonl,
            };
            let reader = BufReader::new(File::open(&file)?);
            let opts = pipeline.options();
            let conv = convention.label_convention;
            let s = match output {
                Some(path) => cmd_batch(reader, format, parallel, conv, &opts, BufWriter::new(File::create(path)?))?,
                None => cmd_batch(reader, format, parallel, conv, &opts, BufWriter::new(io::stdout().lock()))?,
            };
            eprintln!("{} records, {} errors", s.records, s.errors);
            Ok(0)
        }
        Command::OracleCheck { input, max_n, max_d, precision_cap } => {
            let rows = cmd_oracle_check(&input_of(&input)?, input.convention.label_convention, max_n, max_d, precision_cap)?;
            print_json(&rows)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
