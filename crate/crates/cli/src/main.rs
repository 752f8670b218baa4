mod output;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use splitmine::config::PipelineConfig;
use splitmine::corpus::{compute_stats, partition, read_tsv, write_tsv};
use splitmine::eval::{
    evaluate, read_benchmark, read_predictions, run_baseline, Baseline, BenchmarkFormat,
};
use splitmine::pipeline::{mine_dump, MineRun, Stage};

use output::{HashingReader, Manifest, OutputSet};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] splitmine::Error),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    fn record(&self) -> Value {
        let mut record = json!({ "status": "error", "message": self.to_string() });
        let kind = match self {
            CliError::Core(e) => {
                match e {
                    splitmine::Error::Format { line, .. } => record["line"] = json!(line),
                    splitmine::Error::Xml { offset, path, .. } => {
                        record["offset"] = json!(offset);
                        record["element"] = json!(path);
                    }
                    _ => {}
                }
                e.kind()
            }
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
        };
        record["kind"] = json!(kind);
        record
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.kind() == "config" => 2,
            _ => 1,
        }
    }
}

/// Mine split-and-rephrase examples from Wikipedia revision histories.
#[derive(Parser)]
#[command(name = "splitmine", version)]
struct Cli {
    /// key=value settings applied before command-line flags.
    #[arg(long, global = true, env = "SPLITMINE_CONFIG")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine a revision dump into a TSV corpus.
    Mine(MineArgs),
    /// Print count/unique statistics of a TSV corpus.
    Stats(StatsArgs),
    /// Score a predictions file or a baseline against a benchmark.
    Eval(EvalArgs),
    /// Split a TSV corpus into train, tune, validation and test files.
    Partition(PartitionArgs),
}

#[derive(Args)]
struct MineArgs {
    /// Revision dump; `-` for standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Corpus TSV; standard output when omitted or `-`.
    #[arg(long)]
    output: Option<PathBuf>,
    /// mediawiki-xml or jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Minimum BLEU between the complex sentence and each simple one.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Namespace to mine, or `all`.
    #[arg(long)]
    namespace: Option<String>,
    /// One abbreviation per line; replaces the built-in English list.
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    /// One word per line; examples containing any of them are dropped.
    #[arg(long)]
    profanity: Option<PathBuf>,
    /// select-then-threshold or threshold-then-select.
    #[arg(long)]
    selection: Option<String>,
    /// `candidates` writes every mined candidate before filtering.
    #[arg(long, default_value = "corpus")]
    stage: Stage,
    /// Defaults to `<output>.manifest.json`.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// No progress lines on standard error.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// Corpus TSV; `-` for standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("system").required(true).args(["predictions", "baseline"]))]
struct EvalArgs {
    /// Benchmark file.
    #[arg(long)]
    input: PathBuf,
    /// wikisplit-tsv or websplit-multiref.
    #[arg(long, default_value = "wikisplit-tsv")]
    format: BenchmarkFormat,
    /// One prediction per line, sentences separated by the delimiter.
    #[arg(long)]
    predictions: Option<PathBuf>,
    /// source or split-half.
    #[arg(long)]
    baseline: Option<Baseline>,
    /// none, add1-from-order-2 or skip-missing-orders.
    #[arg(long)]
    smoothing: Option<String>,
    /// Print the report as one JSON line.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    /// Corpus TSV.
    #[arg(long)]
    input: PathBuf,
    /// Directory for train.tsv, tune.tsv, validation.tsv, test.tsv and
    /// manifest.json.
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tune_size: Option<usize>,
    #[arg(long)]
    validation_size: Option<usize>,
    #[arg(long)]
    test_size: Option<usize>,
}

fn load_config(
    path: Option<&Path>,
    overrides: &[(&str, Option<String>)],
) -> Result<PipelineConfig, CliError> {
    let mut cfg = match path {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    for (key, value) in overrides {
        if let Some(value) = value {
            cfg.set(key, value)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn path_string(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

fn config_echo(cfg: &PipelineConfig) -> serde_json::Map<String, Value> {
    cfg.entries()
        .into_iter()
        .map(|(k, v)| (k.to_owned(), Value::String(v)))
        .collect()
}

fn is_stdio(path: Option<&Path>) -> bool {
    path.is_none_or(|p| p == Path::new("-"))
}

fn write_stdout(data: &[u8]) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(data)
        .and_then(|()| out.flush())
        .map_err(|e| CliError::io("<stdout>", e))
}

fn cmd_mine(args: MineArgs, config: Option<&Path>) -> Result<(), CliError> {
    let cfg = load_config(
        config,
        &[
            ("input", path_string(&args.input)),
            ("output", path_string(&args.output)),
            ("format", args.format),
            ("delta", args.delta.map(|d| d.to_string())),
            ("workers", args.workers.map(|w| w.to_string())),
            ("namespace", args.namespace),
            ("abbreviations", path_string(&args.abbreviations)),
            ("profanity", path_string(&args.profanity)),
            ("selection", args.selection),
        ],
    )?;
    let normalizer = cfg.normalizer()?;
    let miner = cfg.miner()?;

    let reader = HashingReader::open(cfg.input.as_deref())?;
    let mut buffered = reader.buffered();
    let quiet = args.quiet;
    let job = MineRun {
        format: cfg.format,
        ingest: cfg.ingest_options(),
        normalizer: &normalizer,
        miner: &miner,
        stage: args.stage,
        workers: cfg.workers,
    };
    let mined = mine_dump(&mut buffered, &job, |pages| {
        if !quiet {
            eprintln!("splitmine: {pages} pages");
        }
    })?;
    let input = buffered.into_inner().finish()?;

    let mut tsv = Vec::new();
    write_tsv(&mined.examples, &mut tsv, &miner.delimiter)?;

    let ingest = &mined.ingest;
    for warning in &ingest.warnings {
        eprintln!("splitmine: warning: {warning}");
    }
    if !quiet {
        eprintln!(
            "splitmine: {} pages, {} revisions, {} candidates, {} examples",
            ingest.pages,
            ingest.revisions,
            mined.counts.mined,
            mined.examples.len()
        );
    }

    let mut files = OutputSet::default();
    let to_stdout = is_stdio(cfg.output.as_deref());
    if !to_stdout {
        files.add(cfg.output.clone().expect("checked above"), tsv.clone());
    }
    let manifest_path = args.manifest.or_else(|| {
        (!to_stdout).then(|| {
            let mut p = cfg.output.clone().expect("checked above").into_os_string();
            p.push(".manifest.json");
            PathBuf::from(p)
        })
    });
    if let Some(path) = manifest_path {
        let mut outputs = files.digests();
        if to_stdout {
            outputs.push(output::digest_bytes(Path::new("-"), &tsv));
        }
        let manifest = Manifest {
            tool: "splitmine",
            version: env!("CARGO_PKG_VERSION"),
            command: "mine",
            config: config_echo(&cfg),
            seed: cfg.miner.rng_seed,
            inputs: vec![input],
            outputs,
            counts: json!({
                "stage": args.stage,
                "pages": ingest.pages,
                "pages_skipped_namespace": ingest.pages_skipped_namespace,
                "revisions": ingest.revisions,
                "revisions_skipped": ingest.revisions_skipped,
                "filters": mined.counts,
            }),
        };
        files.add(path, manifest.to_bytes());
    }
    files.commit()?;
    if to_stdout {
        write_stdout(&tsv)?;
    }
    Ok(())
}

fn cmd_stats(args: StatsArgs, config: Option<&Path>) -> Result<(), CliError> {
    let cfg = load_config(config, &[])?;
    let reader = HashingReader::open(args.input.as_deref())?;
    let examples = read_tsv(reader.buffered(), &cfg.miner.delimiter)?;
    let stats = compute_stats(&examples);
    let text = if args.json {
        json!({
            "complex_count": stats.complex_count,
            "complex_unique": stats.complex_unique,
            "simple_count": stats.simple_count,
            "simple_unique": stats.simple_unique,
            "token_count": stats.token_count,
            "token_unique": stats.token_unique,
        })
        .to_string()
            + "\n"
    } else {
        stats.to_string()
    };
    write_stdout(text.as_bytes())
}

fn cmd_eval(args: EvalArgs, config: Option<&Path>) -> Result<(), CliError> {
    let cfg = load_config(config, &[("smoothing", args.smoothing)])?;
    let delimiter = &cfg.miner.delimiter;
    let bench = HashingReader::open(Some(&args.input))?;
    let mut bench_buf = bench.buffered();
    let instances = read_benchmark(&mut bench_buf, args.format, delimiter)?;
    let mut inputs = vec![bench_buf.into_inner().finish()?];

    let predictions = match (&args.predictions, args.baseline) {
        (Some(path), _) => {
            let reader = HashingReader::open(Some(path))?;
            let mut buf = reader.buffered();
            let preds = read_predictions(&mut buf, delimiter)?;
            inputs.push(buf.into_inner().finish()?);
            preds
        }
        (None, Some(baseline)) => run_baseline(baseline, &instances)?,
        (None, None) => return Err(CliError::Usage("give --predictions or --baseline".into())),
    };
    let report = evaluate(&predictions, &instances, &cfg.bleu)?;
    let text = if args.json {
        report.to_json_line() + "\n"
    } else {
        report.to_string()
    };

    if let Some(path) = args.manifest {
        let manifest = Manifest {
            tool: "splitmine",
            version: env!("CARGO_PKG_VERSION"),
            command: "eval",
            config: config_echo(&cfg),
            seed: cfg.miner.rng_seed,
            inputs,
            outputs: Vec::new(),
            counts: json!({
                "format": format!("{:?}", args.format),
                "baseline": args.baseline,
                "report": report,
            }),
        };
        let mut files = OutputSet::default();
        files.add(path, manifest.to_bytes());
        files.commit()?;
    }
    write_stdout(text.as_bytes())
}

fn cmd_partition(args: PartitionArgs, config: Option<&Path>) -> Result<(), CliError> {
    let cfg = load_config(
        config,
        &[
            ("seed", args.seed.map(|s| s.to_string())),
            ("tune_size", args.tune_size.map(|s| s.to_string())),
            (
                "validation_size",
                args.validation_size.map(|s| s.to_string()),
            ),
            ("test_size", args.test_size.map(|s| s.to_string())),
        ],
    )?;
    let reader = HashingReader::open(Some(&args.input))?;
    let mut buffered = reader.buffered();
    let examples = read_tsv(&mut buffered, &cfg.miner.delimiter)?;
    let input = buffered.into_inner().finish()?;
    let total = examples.len();
    let parts = partition(examples, cfg.miner.partition_sizes, cfg.miner.rng_seed)?;

    std::fs::create_dir_all(&args.output).map_err(|e| CliError::io(&args.output, e))?;
    let mut files = OutputSet::default();
    let mut sizes = serde_json::Map::new();
    for (name, part) in parts.named() {
        let mut data = Vec::new();
        write_tsv(part, &mut data, &cfg.miner.delimiter)?;
        files.add(args.output.join(format!("{name}.tsv")), data);
        sizes.insert(name.to_owned(), json!(part.len()));
    }
    let manifest = Manifest {
        tool: "splitmine",
        version: env!("CARGO_PKG_VERSION"),
        command: "partition",
        config: config_echo(&cfg),
        seed: cfg.miner.rng_seed,
        inputs: vec![input],
        outputs: files.digests(),
        counts: json!({ "examples": total, "partitions": sizes }),
    };
    files.add(args.output.join("manifest.json"), manifest.to_bytes());
    files.commit()
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = cli.config.as_deref();
    match cli.command {
        Command::Mine(args) => cmd_mine(args, config),
        Command::Stats(args) => cmd_stats(args, config),
        Command::Eval(args) => cmd_eval(args, config),
        Command::Partition(args) => cmd_partition(args, config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let err = CliError::Usage(e.to_string().lines().next().unwrap_or_default().to_owned());
            eprintln!("{}", err.record());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.record());
            ExitCode::from(err.exit_code())
        }
    }
}
