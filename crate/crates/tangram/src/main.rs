use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tangram::avoidance::{search_k_tangram_free, AvoidanceInstance, SearchOutcome};
use tangram::codec::{decode, deserialize_output, encode, serialize_output, CodecParams};
use tangram::cut::{cut_number, split_number, CutOutcome, NodeBudget, SolverError};
use tangram::gauss::min_gauss_pairs;
use tangram::experiments;
use tangram::generators::{
    dejean_search, pansiot_prefix, ternary_square_free, zimin, zimin_periodic_prefix, RepeatSearch,
};
use tangram::word::{is_tangram, Word};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "tangram", version, about = "Tangram word analysis toolkit")]
struct Cli {
    /// Parse words as comma-separated integers instead of letters/digits
    #[arg(long, global = true)]
    ints: bool,

    /// Emit JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Search node budget
    #[arg(long, global = true, env = "TANGRAM_BUDGET", default_value_t = tangram::cut::DEFAULT_NODE_BUDGET)]
    budget: u64,

    /// RNG seed for randomized experiments
    #[arg(long, global = true, default_value_t = experiments::DEFAULT_SEED)]
    seed: u64,

    /// Worker thread cap (the solvers are sequential; accepted for forward
    /// compatibility)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute tangram status, cut number, Gauss pairs, and split number
    Analyze { word: String },
    /// Emit a word from one of the named constructions
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Search for the longest k-tangram-free word over a given alphabet
    Search {
        /// Alphabet size
        #[arg(short = 'q', long)]
        alphabet: usize,
        /// Cut-number bound
        #[arg(short, long)]
        k: usize,
        /// Stop once a word of this length is found
        #[arg(short, long)]
        target: usize,
    },
    /// Encode or decode via bounded-cut-number suffix removal
    Codec {
        #[command(subcommand)]
        what: Codec,
    },
    /// Run a scripted verification experiment
    Experiment {
        #[command(subcommand)]
        what: Experiment,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// The n-th Zimin word
    Zimin { n: usize },
    /// Prefix of the periodic Zimin word over q letters
    ZiminPeriodic { q: usize, len: usize },
    /// Ternary square-free word of the requested length
    SquareFree { len: usize },
    /// The 28-letter extremal quaternary prefix
    Pansiot,
    /// Backtracking search for an r-repeat-distance word
    Dejean { r: usize, len: usize },
}

#[derive(Args)]
struct CodecParamArgs {
    /// Alphabet size
    #[arg(short = 'q', long)]
    alphabet: usize,
    /// Cut-number bound for removable suffixes
    #[arg(short, long)]
    k: usize,
    /// Minimum removable suffix length (default: ceil(k log2 k))
    #[arg(long)]
    lmin: Option<usize>,
}

#[derive(Subcommand)]
enum Codec {
    /// Encode a word; writes the binary log to the given path
    Encode {
        word: String,
        #[arg(short, long)]
        out: std::path::PathBuf,
        #[command(flatten)]
        params: CodecParamArgs,
    },
    /// Decode a binary log back into the original word
    Decode {
        #[arg(short, long)]
        input: std::path::PathBuf,
    },
    /// Encode then decode, checking the round trip
    Roundtrip {
        word: String,
        #[command(flatten)]
        params: CodecParamArgs,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Run one experiment by id
    Run {
        id: String,
        /// JSON object of experiment parameters
        #[arg(long, default_value = "{}")]
        params: String,
    },
    /// Run every experiment
    All,
    /// List experiment ids
    List,
}

fn codec_params(a: &CodecParamArgs) -> CodecParams {
    match a.lmin {
        Some(l) => CodecParams::new(a.alphabet, a.k, l),
        None => CodecParams::with_default_threshold(a.alphabet, a.k),
    }
}

fn parse_word(text: &str, ints: bool) -> Result<Word, ExitCode> {
    Word::parse_text(text, ints).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_USAGE)
    })
}

fn analyze(word: &str, ints: bool, json_out: bool, budget: u64) -> Result<ExitCode, ExitCode> {
    let w = parse_word(word, ints)?;
    let tangram = is_tangram(&w);
    let mut exhausted = false;
    let mut mu = None;
    let mut cutting = None;
    let mut gauss_pairs = None;
    let mut alpha = None;
    if tangram {
        match cut_number(&w, None, &mut NodeBudget::new(budget)) {
            Ok(CutOutcome::Found { k, cutting: c }) => {
                mu = Some(k);
                cutting = Some(c);
            }
            Ok(_) => {}
            Err(SolverError::BudgetExhausted) => exhausted = true,
            Err(e) => {
                eprintln!("error: {e}");
                return Err(ExitCode::from(EXIT_USAGE));
            }
        }
        match min_gauss_pairs(&w, None, &mut NodeBudget::new(budget)) {
            Ok(s) => gauss_pairs = s.map(|(n, _)| n),
            Err(SolverError::BudgetExhausted) => exhausted = true,
            Err(_) => {}
        }
        match split_number(&w, None, &mut NodeBudget::new(budget)) {
            Ok(Some((a, _))) => alpha = Some(a),
            Ok(None) => {}
            Err(SolverError::BudgetExhausted) => exhausted = true,
            Err(_) => {}
        }
    }
    if json_out {
        println!(
            "{}",
            json!({
                "word": w.to_string(),
                "is_tangram": tangram,
                "cut_number": mu,
                "cutting": cutting.as_ref().map(|c| json!({
                    "cuts": c.cuts, "sigma": c.sigma, "j": c.split,
                })),
                "gauss_pairs": gauss_pairs,
                "split_number": alpha,
                "budget_exhausted": exhausted,
            })
        );
    } else {
        println!("word: {w}");
        println!("tangram: {tangram}");
        if tangram {
            match mu {
                Some(k) => {
                    let c = cutting.as_ref().unwrap();
                    println!("cut number: {k} (cuts {:?}, sigma {:?}, j {})", c.cuts, c.sigma, c.split);
                }
                None => println!("cut number: unknown{}", if exhausted { " (budget exhausted)" } else { "" }),
            }
            if let Some(s) = gauss_pairs {
                println!("min gauss pairs: {s}");
            }
            if let Some(a) = alpha {
                println!("split number: {a}");
            }
        }
    }
    Ok(ExitCode::from(if exhausted { EXIT_INCONCLUSIVE } else { 0 }))
}

fn generate(what: &Generate, json_out: bool, budget: u64) -> Result<ExitCode, ExitCode> {
    let word = match what {
        Generate::Zimin { n } => zimin(*n),
        Generate::ZiminPeriodic { q, len } => zimin_periodic_prefix(*q, *len),
        Generate::SquareFree { len } => Ok(ternary_square_free(*len)),
        Generate::Pansiot => Ok(pansiot_prefix()),
        Generate::Dejean { r, len } => match dejean_search(*r, *len, &mut NodeBudget::new(budget)) {
            Ok(RepeatSearch::Found(w)) => Ok(w),
            Ok(RepeatSearch::Exhausted) => {
                eprintln!("no word of length {len} exists for r = {r}");
                return Ok(ExitCode::from(EXIT_CHECK_FAILED));
            }
            Ok(RepeatSearch::BudgetExhausted) => {
                eprintln!("search budget exhausted");
                return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
            }
            Err(e) => Err(e),
        },
    }
    .map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_USAGE)
    })?;
    if json_out {
        println!("{}", json!({ "word": word.to_string(), "length": word.len() }));
    } else {
        println!("{word}");
    }
    Ok(ExitCode::SUCCESS)
}

fn search(alphabet: usize, k: usize, target: usize, json_out: bool, budget: u64) -> ExitCode {
    let mut inst = AvoidanceInstance::new(alphabet, k, target);
    inst.node_budget = budget;
    let started = std::time::Instant::now();
    let outcome = search_k_tangram_free(&inst);
    let seconds = started.elapsed().as_secs_f64();
    if json_out {
        let nodes = |per: &[u64]| per.iter().sum::<u64>();
        let doc = match &outcome {
            SearchOutcome::Found { word, nodes_per_depth } => json!({
                "status": "found", "word": word, "nodes": nodes(nodes_per_depth), "seconds": seconds,
            }),
            SearchOutcome::MaxLength { max_length, witness, nodes_per_depth } => json!({
                "status": "max_length", "max_length": max_length, "witness": witness,
                "nodes": nodes(nodes_per_depth), "seconds": seconds,
            }),
            SearchOutcome::Inconclusive { reached, witness, nodes_per_depth } => json!({
                "status": "inconclusive", "max_length": reached, "witness": witness,
                "nodes": nodes(nodes_per_depth), "seconds": seconds,
            }),
        };
        println!("{doc}");
    } else {
        match &outcome {
            SearchOutcome::Found { word, .. } => println!("found length {}: {}", target, word),
            SearchOutcome::MaxLength { max_length, witness, .. } => {
                println!("maximum length {max_length}: {witness}")
            }
            SearchOutcome::Inconclusive { reached, witness, .. } => {
                println!("inconclusive; reached length {reached}: {witness}")
            }
        }
    }
    match outcome {
        SearchOutcome::Inconclusive { .. } => ExitCode::from(EXIT_INCONCLUSIVE),
        _ => ExitCode::SUCCESS,
    }
}

fn codec(what: &Codec, ints: bool, json_out: bool, budget: u64) -> Result<ExitCode, ExitCode> {
    let io_err = |e: std::io::Error| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_USAGE)
    };
    let codec_err = |e: tangram::codec::CodecError| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_CHECK_FAILED)
    };
    match what {
        Codec::Encode { word, out, params } => {
            let x = parse_word(word, ints)?;
            let p = codec_params(params);
            let (s, log) = encode(&x, &p, &mut NodeBudget::new(budget)).map_err(codec_err)?;
            let bytes = serialize_output(&s, &log, x.len(), &p);
            std::fs::write(out, &bytes).map_err(io_err)?;
            if json_out {
                println!(
                    "{}",
                    json!({
                        "residual": s.to_string(),
                        "entries": log.entries.len(),
                        "removed": log.total_removed(),
                        "bytes": bytes.len(),
                    })
                );
            } else {
                println!(
                    "residual {} ({} entries, {} letters removed, {} bytes)",
                    s,
                    log.entries.len(),
                    log.total_removed(),
                    bytes.len()
                );
            }
        }
        Codec::Decode { input } => {
            let bytes = std::fs::read(input).map_err(io_err)?;
            let (s, log, n, p) = deserialize_output(&bytes).map_err(codec_err)?;
            let x = decode(&s, &log, n, &p).map_err(codec_err)?;
            if json_out {
                println!("{}", json!({ "word": x.to_string(), "length": x.len() }));
            } else {
                println!("{x}");
            }
        }
        Codec::Roundtrip { word, params } => {
            let x = parse_word(word, ints)?;
            let p = codec_params(params);
            let (s, log) = encode(&x, &p, &mut NodeBudget::new(budget)).map_err(codec_err)?;
            let back = decode(&s, &log, x.len(), &p).map_err(codec_err)?;
            let ok = back.letters() == x.letters();
            if json_out {
                println!(
                    "{}",
                    json!({ "ok": ok, "residual": s.to_string(), "entries": log.entries.len() })
                );
            } else {
                println!("{}", if ok { "round trip ok" } else { "round trip FAILED" });
            }
            if !ok {
                return Ok(ExitCode::from(EXIT_CHECK_FAILED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn report_exit(status: experiments::Status) -> u8 {
    match status {
        experiments::Status::Pass => 0,
        experiments::Status::Fail => EXIT_CHECK_FAILED,
        experiments::Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn experiment(what: &Experiment, json_out: bool, seed: u64, budget: u64) -> Result<ExitCode, ExitCode> {
    match what {
        Experiment::List => {
            for id in experiments::all_ids() {
                println!("{id}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Experiment::Run { id, params } => {
            let params: serde_json::Value = serde_json::from_str(params).map_err(|e| {
                eprintln!("error: bad --params: {e}");
                ExitCode::from(EXIT_USAGE)
            })?;
            let report = experiments::run(id, &params, seed, budget).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            })?;
            print_report(&report, json_out);
            Ok(ExitCode::from(report_exit(report.status)))
        }
        Experiment::All => {
            let mut worst = 0u8;
            for id in experiments::all_ids() {
                let report = experiments::run(id, &json!({}), seed, budget).expect("known id");
                print_report(&report, json_out);
                worst = worst.max(report_exit(report.status));
            }
            Ok(ExitCode::from(worst))
        }
    }
}

fn print_report(r: &experiments::ExperimentReport, json_out: bool) {
    if json_out {
        println!("{}", serde_json::to_string(r).expect("serializable"));
    } else {
        println!("[{:?}] {} ({:.2}s): {}", r.status, r.id, r.seconds, r.claim);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 || cli.budget == 0 {
        eprintln!("error: --threads and --budget must be at least 1");
        return ExitCode::from(EXIT_USAGE);
    }
    let result = match &cli.command {
        Command::Analyze { word } => analyze(word, cli.ints, cli.json, cli.budget),
        Command::Generate { what } => generate(what, cli.json, cli.budget),
        Command::Search { alphabet, k, target } => {
            Ok(search(*alphabet, *k, *target, cli.json, cli.budget))
        }
        Command::Codec { what } => codec(what, cli.ints, cli.json, cli.budget),
        Command::Experiment { what } => experiment(what, cli.json, cli.seed, cli.budget),
    };
    match result {
        Ok(code) => code,
        Err(code) => code,
    }
}
