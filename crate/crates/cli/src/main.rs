use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bacomp::hoa::{parse_ba, parse_ba_over, parse_hoa, print_hoa, DEFAULT_MAX_APS};
use bacomp::oracle::random_ba;
use bacomp::scc::{classify, SccClass};
use bacomp::{complement_with, included, Alphabet, ComplementOptions, Error, NacAlgorithm, NacStrategy, Sgra};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bacomp", version, about = "Büchi automata complementation and language inclusion")]
struct Cli {
    /// Read inputs in the `.ba` format instead of HOA.
    #[arg(long, global = true)]
    from_ba: bool,
    /// Largest number of atomic propositions accepted in HOA input.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_APS)]
    max_aps: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complement a Büchi automaton and print the result as HOA.
    Complement {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = NacArg::Slice)]
        nac_alg: NacArg,
        #[arg(long)]
        no_postprocess: bool,
        /// Cap on the number of macrostates.
        #[arg(long)]
        max_states: Option<usize>,
        /// Print one line of JSON statistics after the automaton.
        #[arg(long)]
        stats: bool,
    },
    /// Decide L(A1) ⊆ L(A2). Exit 0 if it holds, 1 if not.
    Inclusion {
        a1: PathBuf,
        a2: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Decide emptiness. Exit 0 if empty, 1 if not.
    Emptiness { input: PathBuf },
    /// Print the SCC classification as JSON.
    Analyze { input: PathBuf },
    /// Print a random Büchi automaton as HOA.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 1.6)]
        density: f64,
        #[arg(long, default_value_t = 0.3)]
        acc_prob: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NacArg {
    Slice,
    Rank,
    Mono,
}

#[derive(Serialize)]
struct ComplementStats {
    in_states: usize,
    out_states: usize,
    macrostates: usize,
    blocks: Blocks,
    time_ms: u64,
}

#[derive(Serialize)]
struct Blocks {
    iadac: usize,
    iwac: usize,
    dac: usize,
    nac: usize,
}

#[derive(Serialize)]
struct InclusionStats {
    result: &'static str,
    product_states: usize,
    explored_transitions: usize,
    time_ms: u64,
}

#[derive(Serialize)]
struct Analysis {
    sccs: usize,
    classes: Classes,
    elevator: bool,
}

#[derive(Serialize)]
struct Classes {
    nonacc: usize,
    iadac: usize,
    iwac: usize,
    dac: usize,
    nac: usize,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Lib(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("io: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(cli: &Cli, path: &Path) -> Result<Sgra, Failure> {
    let text = read(path)?;
    Ok(if cli.from_ba {
        parse_ba(&text)?
    } else {
        parse_hoa(&text, cli.max_aps)?
    })
}

/// Loads two automata over a common alphabet. `.ba` files name their
/// letters freely, so both are re-read over the union of their labels.
fn load_pair(cli: &Cli, p1: &Path, p2: &Path) -> Result<(Sgra, Sgra), Failure> {
    if !cli.from_ba {
        return Ok((load(cli, p1)?, load(cli, p2)?));
    }
    let (t1, t2) = (read(p1)?, read(p2)?);
    let (a1, a2) = (parse_ba(&t1)?, parse_ba(&t2)?);
    if a1.alphabet().labels() == a2.alphabet().labels() {
        return Ok((a1, a2));
    }
    let mut labels: Vec<String> = a1.alphabet().labels().to_vec();
    labels.extend(a2.alphabet().labels().iter().cloned());
    labels.sort();
    labels.dedup();
    let sigma = Alphabet::from_labels(labels)?;
    Ok((parse_ba_over(&t1, &sigma)?, parse_ba_over(&t2, &sigma)?))
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("statistics serialize")
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Complement {
            input,
            output,
            nac_alg,
            no_postprocess,
            max_states,
            stats,
        } => {
            let ba = load(cli, input)?.to_buchi()?;
            let start = Instant::now();
            let mut options = ComplementOptions {
                postprocess: !no_postprocess,
                ..ComplementOptions::default()
            };
            match nac_alg {
                NacArg::Slice => options.nac = NacAlgorithm::Slice,
                NacArg::Rank => options.nac = NacAlgorithm::Rank,
                NacArg::Mono => options.strategy = NacStrategy::MonoNac,
            }
            if let Some(n) = max_states {
                options.max_macrostates = *n;
            }
            let result = complement_with(&ba, &options)?;
            let time_ms = elapsed_ms(start);
            let text = print_hoa(&result.automaton);
            match output {
                Some(path) => fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            if *stats {
                let b = result.block_counts;
                println!(
                    "{}",
                    json(&ComplementStats {
                        in_states: ba.num_states(),
                        out_states: result.automaton.num_states(),
                        macrostates: result.macrostates,
                        blocks: Blocks {
                            iadac: b.iadac,
                            iwac: b.iwac,
                            dac: b.dac,
                            nac: b.nac,
                        },
                        time_ms,
                    })
                );
            }
            Ok(0)
        }
        Command::Inclusion { a1, a2, stats } => {
            let (a1, a2) = load_pair(cli, a1, a2)?;
            let start = Instant::now();
            let r = included(&a1, &a2)?;
            if *stats {
                println!(
                    "{}",
                    json(&InclusionStats {
                        result: if r.holds { "holds" } else { "violated" },
                        product_states: r.product_states,
                        explored_transitions: r.explored_transitions,
                        time_ms: elapsed_ms(start),
                    })
                );
            }
            Ok(if r.holds { 0 } else { 1 })
        }
        Command::Emptiness { input } => {
            let a = load(cli, input)?;
            let empty = bacomp::emptiness::is_empty_explicit(&a);
            println!("{}", if empty { "empty" } else { "nonempty" });
            Ok(if empty { 0 } else { 1 })
        }
        Command::Analyze { input } => {
            let ba = load(cli, input)?.to_buchi()?.remove_unreachable().normalize_colors();
            let info = classify(&ba)?;
            let analysis = Analysis {
                sccs: info.classes.len(),
                classes: Classes {
                    nonacc: info.count(SccClass::NonAccepting),
                    iadac: info.count(SccClass::Iadac),
                    iwac: info.count(SccClass::Iwac),
                    dac: info.count(SccClass::Dac),
                    nac: info.count(SccClass::Nac),
                },
                elevator: info.is_elevator(),
            };
            println!("{}", json(&analysis));
            Ok(0)
        }
        Command::Gen {
            seed,
            states,
            letters,
            density,
            acc_prob,
        } => {
            if *states == 0 || *letters == 0 || *density <= 0.0 || !(0.0..=1.0).contains(acc_prob) {
                return Err(Error::Contract("gen needs states, letters, density > 0 and acc-prob in [0, 1]".into()).into());
            }
            print!("{}", print_hoa(&random_ba(*seed, *states, *letters, *density, *acc_prob)));
            Ok(0)
        }
    }
}
