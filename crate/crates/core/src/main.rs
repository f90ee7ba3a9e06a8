use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use geoperm::decider::{decide_full, decide_tagged_with, DeciderOptions, SearchStats, Verdict};
use geoperm::geometry::oracle_decide_tagged;
use geoperm::harness::records::read_records;
use geoperm::harness::{
    compare_forbidden_list, load_forbidden_size6, mine_minimal_forbidden, run_enumeration,
    threads_from_env, EnumerationConfig, HarnessError, ResultRecord,
};
use geoperm::model::{parse_pattern, Parsed, TaggedPattern, Triple};

#[derive(Parser)]
#[command(name = "geoperm", version, about = "Realizability of triples of geometric permutations in R^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Three digit words, e.g. "012 210 120"
    #[arg(long)]
    triple: Option<String>,
    /// Tagged pattern, e.g. "0 1 z o | z o 0 1 | z o 0 1"
    #[arg(long)]
    tagged: Option<String>,
    /// Three token lines separated by "|", with or without tags
    #[arg(long)]
    tokens: Option<String>,
}

#[derive(Args)]
struct SearchFlags {
    /// Branch on one open comparison at a time
    #[arg(long)]
    incremental: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide realizability of a triple or a tagged pattern
    Decide {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Print a result record with a certificate
    Realize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Re-verify every record of a file
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Decide all normalized triples of one size
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
        /// Try every reversal and tagging even after a realization is found
        #[arg(long)]
        no_short_circuit: bool,
        /// Record running times (output is then no longer reproducible)
        #[arg(long)]
        timing: bool,
        /// Plain candidate loop without pruning or subpattern tables
        #[arg(long)]
        plain: bool,
        /// Append to an existing output, skipping the triples it holds
        #[arg(long)]
        resume: bool,
    },
    /// List minimal forbidden tagged patterns up to a size
    Mine {
        #[arg(long)]
        max_size: usize,
        /// Allow sizes above 4 (hours to weeks of computation)
        #[arg(long)]
        long: bool,
    },
    /// Normal form of a triple
    Normalize {
        #[arg(long, num_args = 3, value_names = ["W1", "W2", "W3"])]
        triple: Vec<String>,
    },
    /// Brute-force decision of a tagged pattern of size at most 3
    Oracle {
        #[arg(long)]
        tagged: String,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Parse(p) => Failure::Usage(p.to_string()),
            HarnessError::Threads(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn internal<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Internal(e.to_string())
}

fn parse_input(input: &Input) -> Result<Parsed, Failure> {
    let usage = |e: geoperm::model::ParseError| Failure::Usage(e.to_string());
    if let Some(t) = &input.triple {
        return Ok(Parsed::Triple(t.parse::<Triple>().map_err(usage)?));
    }
    if let Some(t) = &input.tagged {
        return Ok(Parsed::Tagged(t.parse::<TaggedPattern>().map_err(usage)?));
    }
    parse_pattern(input.tokens.as_deref().unwrap_or_default()).map_err(usage)
}

fn options(search: &SearchFlags) -> DeciderOptions {
    if search.incremental {
        DeciderOptions::incremental()
    } else {
        DeciderOptions::default()
    }
}

fn decide(input: &Parsed, opts: &DeciderOptions) -> Result<Verdict, Failure> {
    match input {
        Parsed::Triple(t) => Ok(decide_full(t, opts).map_err(internal)?.0),
        Parsed::Tagged(p) => {
            decide_tagged_with(p, opts, &mut SearchStats::default()).map_err(internal)
        }
    }
}

fn exit_for(v: &Verdict) -> u8 {
    if v.is_realizable() {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Decide { input, search } => {
            let parsed = parse_input(&input)?;
            let v = decide(&parsed, &options(&search))?;
            match &v {
                Verdict::Realizable(c) => {
                    println!("realizable");
                    println!("reversals: {}", c.reversals);
                    println!("pattern: {}", c.pattern);
                    print!("{}", c.coords);
                }
                Verdict::Unrealizable => println!("unrealizable"),
            }
            Ok(exit_for(&v))
        }
        Command::Realize { input, search } => {
            let parsed = parse_input(&input)?;
            let v = decide(&parsed, &options(&search))?;
            let triple = match &parsed {
                Parsed::Triple(t) => t.clone(),
                Parsed::Tagged(p) => p.untagged(),
            };
            println!("{}", ResultRecord::new(&triple, &v, 0).to_line());
            Ok(exit_for(&v))
        }
        Command::Verify { input } => {
            let text = std::fs::read_to_string(&input).map_err(|e| Failure::Usage(e.to_string()))?;
            let records = read_records(&text)?;
            let mut bad = 0;
            for (k, r) in records.iter().enumerate() {
                if !r.verify()? {
                    bad += 1;
                    eprintln!("record {} rejected: {}", k + 1, r.triple.join(" "));
                }
            }
            println!("{} records, {} rejected", records.len(), bad);
            Ok(if bad == 0 { 0 } else { 1 })
        }
        Command::Enumerate {
            size,
            out,
            no_short_circuit,
            timing,
            plain,
            resume,
        } => {
            let mut cfg = EnumerationConfig::new(size);
            cfg.short_circuit = !no_short_circuit;
            cfg.timing = timing;
            cfg.threads = threads_from_env()?;
            if plain {
                cfg.incremental = false;
                cfg.cache_size = 0;
            }
            let file = if resume && out.exists() {
                let existing = File::open(&out).map_err(internal)?;
                cfg.skip = BufReader::new(existing)
                    .lines()
                    .map_while(Result::ok)
                    .filter(|l| !l.trim().is_empty())
                    .count();
                OpenOptions::new().append(true).open(&out)
            } else {
                File::create(&out)
            }
            .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
            let mut w = BufWriter::new(file);
            let s = run_enumeration(&cfg, &mut w)?;
            w.flush().map_err(internal)?;
            println!(
                "size {size}: {} triples, {} realizable, {} unrealizable, {} tagged instances",
                s.total, s.realizable, s.unrealizable, s.stats.tagged_instances
            );
            if size == 6 {
                let text = std::fs::read_to_string(&out).map_err(internal)?;
                let records = read_records(&text)?;
                let table = load_forbidden_size6()?;
                let diff = compare_forbidden_list(&records, &table);
                if diff.is_empty() {
                    println!("unrealizable set matches the size-6 table ({} entries)", table.len());
                } else {
                    print!("{diff}");
                }
            }
            Ok(0)
        }
        Command::Mine { max_size, long } => {
            if max_size > 4 && !long {
                return Err(Failure::Usage("sizes above 4 need --long".into()));
            }
            let lists = mine_minimal_forbidden(max_size).map_err(internal)?;
            for (k, keys) in lists.iter().enumerate() {
                println!("size {}: {} classes", k + 1, keys.len());
                for p in keys {
                    println!("  {p}");
                }
            }
            Ok(0)
        }
        Command::Normalize { triple } => {
            let t: Triple = triple
                .join(" ")
                .parse()
                .map_err(|e: geoperm::model::ParseError| Failure::Usage(e.to_string()))?;
            println!("{}", t.normalize());
            Ok(0)
        }
        Command::Oracle { tagged } => {
            let p: TaggedPattern = tagged
                .parse()
                .map_err(|e: geoperm::model::ParseError| Failure::Usage(e.to_string()))?;
            match oracle_decide_tagged(&p) {
                Ok(Some(c)) => {
                    println!("realizable");
                    print!("{c}");
                    Ok(0)
                }
                Ok(None) => {
                    println!("unrealizable");
                    Ok(1)
                }
                Err(e) => Err(Failure::Usage(e.to_string())),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
