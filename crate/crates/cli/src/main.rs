//! Command-line frontend: linearize corpora into target strings, parse and
//! validate target strings, score predictions, build hinted sources, and
//! report sentence-boundary statistics.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use relkit::corpus::docred::read_docred;
use relkit::corpus::pubtator::PubtatorReader;
use relkit::corpus::records::document_from_json;
use relkit::corpus::stats::{intersentence_stats, SentenceDefinition};
use relkit::corpus::CorpusError;
use relkit::hierarchy::{filter_hypernyms, Hierarchy};
use relkit::hint::build_hint_for_document;
use relkit::{
    parse_target_string, score, serialize_relations, validate_sequence, AnnotatedDocument,
    MatchCriterion, ParsedRelation, SchemaConfig,
};

/// Documents handed to the worker pool per batch; bounds memory while keeping
/// output order stable.
const CHUNK: usize = 256;

#[derive(Parser)]
#[command(
    name = "relkit",
    version,
    about = "Linearize, parse, score, and analyze document-level relation extraction corpora"
)]
struct Cli {
    /// Schema file (TOML) declaring entity and relation vocabularies.
    #[arg(long, global = true, value_name = "PATH")]
    schema: Option<PathBuf>,

    /// Worker threads for per-document work (1 = sequential).
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,

    /// Write results here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Serialize each document's relations into one target string per line.
    Linearize(CorpusArgs),
    /// Parse target strings (one per line) into structured relations (JSONL).
    Parse(LinesArgs),
    /// Score a predicted target-string file against a line-aligned gold file.
    Score(ScoreArgs),
    /// Prepend each document's entities to its source text, one line per document.
    Hint(CorpusArgs),
    /// Report the fraction of relations that cross sentence boundaries.
    Stats(StatsArgs),
    /// Check that target strings are generable under the decoding grammar.
    Validate(LinesArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file to read.
    input: PathBuf,

    /// Corpus format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct LinesArgs {
    /// File of target strings, one per line.
    input: PathBuf,
}

#[derive(Args)]
struct ScoreArgs {
    /// Predicted target strings, one line per document.
    predicted: PathBuf,

    /// Gold target strings, line-aligned with the predictions.
    gold: PathBuf,

    /// How predicted entities are matched against gold entities.
    #[arg(long, value_enum, default_value_t = Criterion::Strict)]
    criterion: Criterion,

    /// Mention-overlap threshold for relaxed matching, in (0, 1).
    #[arg(long, value_name = "FLOAT")]
    threshold: Option<f64>,

    /// Vocabulary hierarchy file; drops predictions that name an ancestor of
    /// a gold relation's final entity before scoring.
    #[arg(long, value_name = "PATH")]
    hierarchy: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Corpus file to read.
    input: PathBuf,

    /// Corpus format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// What counts as an intra-sentence relation.
    #[arg(long, value_enum, default_value_t = Definition::AnySentence)]
    definition: Definition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pubtator,
    Docred,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Criterion {
    Strict,
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Definition {
    AnySentence,
    AllMentions,
}

impl From<Definition> for SentenceDefinition {
    fn from(definition: Definition) -> Self {
        match definition {
            Definition::AnySentence => SentenceDefinition::AnySentence,
            Definition::AllMentions => SentenceDefinition::AllMentions,
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("error: {error:#}");
        process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Linearize(args) => {
            let schema = load_schema(&cli.schema)?;
            let stream = document_stream(&args.input, args.format)?;
            process_chunked(stream, cli.jobs, &cli.output, |doc: &AnnotatedDocument| {
                serialize_relations(doc, &schema)
                    .map_err(|error| anyhow!("document {}: {error}", doc.doc_id))
            })
        }
        Command::Parse(args) => {
            let schema = load_schema(&cli.schema)?;
            let stream = line_stream(&args.input)?;
            process_chunked(stream, cli.jobs, &cli.output, |line: &String| {
                let relations = parse_target_string(line, &schema);
                serde_json::to_string(&relations).context("serializing parsed relations")
            })
        }
        Command::Score(args) => run_score(&cli, args),
        Command::Hint(args) => {
            let schema = load_schema(&cli.schema)?;
            let stream = document_stream(&args.input, args.format)?;
            process_chunked(stream, cli.jobs, &cli.output, |doc: &AnnotatedDocument| {
                build_hint_for_document(doc, &schema)
                    .map_err(|error| anyhow!("document {}: {error}", doc.doc_id))
            })
        }
        Command::Stats(args) => run_stats(&cli, args),
        Command::Validate(args) => {
            let schema = load_schema(&cli.schema)?;
            let stream = line_stream(&args.input)?;
            process_chunked(stream, cli.jobs, &cli.output, |line: &String| {
                let classes = relkit::classify_tokens(line, &schema);
                Ok(if validate_sequence(&classes, &schema) { "valid" } else { "invalid" }
                    .to_string())
            })
        }
    }
}

fn load_schema(path: &Option<PathBuf>) -> Result<SchemaConfig> {
    let path = path
        .as_ref()
        .ok_or_else(|| anyhow!("this subcommand needs --schema pointing at a schema file"))?;
    SchemaConfig::from_path(path).with_context(|| format!("loading schema {}", path.display()))
}

fn detect_format(path: &Path, explicit: Option<Format>) -> Result<Format> {
    if let Some(format) = explicit {
        return Ok(format);
    }
    let extension =
        path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase());
    match extension.as_deref() {
        Some("pubtator" | "txt") => Ok(Format::Pubtator),
        Some("json") => Ok(Format::Docred),
        Some("jsonl" | "ndjson") => Ok(Format::Records),
        _ => bail!(
            "cannot infer the corpus format of `{}`; pass --format pubtator|docred|records",
            path.display()
        ),
    }
}

/// Opens a corpus as a document iterator. PubTator and JSONL stream document
/// by document; the DocRED JSON array is a single value and is read whole.
fn document_stream(
    path: &Path,
    explicit: Option<Format>,
) -> Result<Box<dyn Iterator<Item = Result<AnnotatedDocument>>>> {
    let format = detect_format(path, explicit)?;
    let file =
        File::open(path).with_context(|| format!("opening corpus {}", path.display()))?;
    let reader = BufReader::new(file);
    Ok(match format {
        Format::Pubtator => {
            Box::new(PubtatorReader::new(reader).map(|doc| doc.map_err(Into::into)))
        }
        Format::Docred => {
            let docs = read_docred(reader).context("reading DocRED-style corpus")?;
            Box::new(docs.into_iter().map(Ok))
        }
        Format::Records => Box::new(reader.lines().enumerate().filter_map(|(index, line)| {
            let line = match line {
                Ok(line) => line,
                Err(error) => return Some(Err(error.into())),
            };
            if line.trim().is_empty() {
                return None;
            }
            Some(document_from_json(&line).map_err(|error| {
                anyhow::Error::from(CorpusError::MalformedLine {
                    line: index + 1,
                    message: error.to_string(),
                })
            }))
        })),
    })
}

fn line_stream(path: &Path) -> Result<Box<dyn Iterator<Item = Result<String>>>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(Box::new(BufReader::new(file).lines().map(|line| line.map_err(Into::into))))
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Maps every stream item to one output line, in input order. Batches of
/// [`CHUNK`] items go through a worker pool when `--jobs` asks for more than
/// one thread.
fn process_chunked<T, F>(
    mut stream: Box<dyn Iterator<Item = Result<T>>>,
    jobs: usize,
    output: &Option<PathBuf>,
    worker: F,
) -> Result<()>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<String> + Sync,
{
    let mut out = open_output(output)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("building worker pool")?;
    loop {
        let mut batch = Vec::with_capacity(CHUNK);
        for item in stream.by_ref().take(CHUNK) {
            batch.push(item?);
        }
        if batch.is_empty() {
            break;
        }
        let lines: Vec<Result<String>> = if jobs > 1 {
            pool.install(|| batch.par_iter().map(&worker).collect())
        } else {
            batch.iter().map(&worker).collect()
        };
        for line in lines {
            writeln!(out, "{}", line?)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Parses a target-string file into per-document relations, keyed by line
/// number so that two line-aligned files share document identities.
fn read_target_file(
    path: &Path,
    schema: &SchemaConfig,
) -> Result<std::collections::BTreeMap<String, Vec<ParsedRelation>>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut by_line = std::collections::BTreeMap::new();
    for (index, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        by_line.insert(format!("line-{:06}", index + 1), parse_target_string(&line, schema));
    }
    Ok(by_line)
}

fn run_score(cli: &Cli, args: &ScoreArgs) -> Result<()> {
    let schema = load_schema(&cli.schema)?;
    let criterion = match args.criterion {
        Criterion::Strict => {
            if args.threshold.is_some() {
                bail!("--threshold only applies to --criterion relaxed");
            }
            MatchCriterion::strict()
        }
        Criterion::Relaxed => match args.threshold {
            Some(threshold) => MatchCriterion::relaxed_with_threshold(threshold)?,
            None => MatchCriterion::relaxed(),
        },
    };

    let predicted = read_target_file(&args.predicted, &schema)?;
    let gold = read_target_file(&args.gold, &schema)?;
    if predicted.len() != gold.len() {
        bail!(
            "predicted file has {} lines but gold file has {}; the files must be line-aligned",
            predicted.len(),
            gold.len()
        );
    }

    let predicted = match &args.hierarchy {
        Some(path) => {
            let hierarchy = Hierarchy::from_path(path)
                .with_context(|| format!("loading hierarchy {}", path.display()))?;
            filter_hypernyms(&predicted, &gold, &hierarchy)
        }
        None => predicted,
    };

    let report = score(&predicted, &gold, &criterion)?;
    println!("{report}");
    if let Some(path) = &cli.output {
        fs::write(path, serde_json::to_string_pretty(&report).context("serializing report")?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run_stats(cli: &Cli, args: &StatsArgs) -> Result<()> {
    let docs: Vec<AnnotatedDocument> =
        document_stream(&args.input, args.format)?.collect::<Result<_>>()?;
    let definition = SentenceDefinition::from(args.definition);
    let stats = intersentence_stats(&docs, definition);
    println!("{:.4}", stats.fraction());
    eprintln!(
        "{} of {} relations cross sentence boundaries under {definition} \
         ({} documents skipped for missing sentence spans)",
        stats.inter, stats.total, stats.skipped_documents
    );
    if let Some(path) = &cli.output {
        let json = serde_json::json!({
            "definition": definition.to_string(),
            "intersentence": stats.inter,
            "total": stats.total,
            "skipped_documents": stats.skipped_documents,
            "fraction": stats.fraction(),
        });
        fs::write(path, serde_json::to_string_pretty(&json).context("serializing stats")?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}
