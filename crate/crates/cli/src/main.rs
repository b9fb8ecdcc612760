use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use chromatic_core::algebra::parse_type_set;
use chromatic_core::constructions::{
    construct, walecki, walecki_witness, Construction, ConstructionRequest,
};
use chromatic_core::geometry::linear_space_from_colouring;
use chromatic_core::search::{
    default_max_m, enumerate, search, summary_table, SearchOptions, SearchStatus,
};
use chromatic_core::{AtomStructure, EdgeColouring, Level, Quasigroup, Signature};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_NOT_CONSTRUCTIBLE: u8 = 4;

/// Per-cell node budget for `table` when none is given.
const TABLE_DEFAULT_NODES: u64 = 2_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "chromatic",
    version,
    about = "Construct, verify and search for representations of chromatic algebras E_{n+1}^S",
    after_help = "Exit codes:\n  0  success\n  1  usage or input error\n  2  verification failure\n  3  search budget exhausted\n  4  no construction available\n\nEnvironment:\n  CHROMATIC_BUDGET_NODES  default node budget for search, enumerate and table"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an explicit representation.
    Construct {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value = "qualitative")]
        level: Level,
        /// Write the colouring JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a Graphviz rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a colouring file against a signature and level.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Type set; defaults to the one recorded in the file.
        #[arg(long)]
        s: Option<String>,
        /// Colour count; defaults to the one recorded in the file.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "strong")]
        level: Level,
    },
    /// Search for a representation by increasing base size.
    Search {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value = "qualitative")]
        level: Level,
        #[arg(long)]
        min_m: Option<usize>,
        /// Largest base size; defaults to 3(n+1).
        #[arg(long)]
        max_m: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Disable canonical augmentation and colour normalization.
        #[arg(long)]
        no_symmetry_breaking: bool,
        /// Write one JSON line per searched size.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Write a found colouring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List all representations on exactly m points up to isomorphism.
    Enumerate {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value = "qualitative")]
        level: Level,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Witness triangle for a consistent triple in the Walecki colouring.
    Witness {
        #[arg(long)]
        walecki_n: usize,
        /// Colours i,j,k with i < j.
        #[arg(long)]
        triple: String,
    },
    /// Recompute the representability summary table.
    Table {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Convert a colouring file to other formats.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Quasigroup recovered from a {3} representation on n+1 points.
        #[arg(long)]
        cayley: Option<PathBuf>,
        /// Linear space of monochromatic cliques.
        #[arg(long)]
        geometry: Option<PathBuf>,
    },
    /// Print the atom structure of E_{n+1}^S as JSON.
    Atoms {
        #[command(flatten)]
        sig: SigArgs,
        /// Also report the NA axioms and associativity on stderr.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Args)]
struct SigArgs {
    /// Allowed numbers of distinct colours per triangle, e.g. 1,3.
    #[arg(long)]
    s: String,
    /// Number of colours.
    #[arg(long)]
    n: usize,
}

impl SigArgs {
    fn signature(&self) -> Result<Signature, Failure> {
        let s = parse_type_set(&self.s).map_err(Failure::usage)?;
        Signature::new(&s, self.n).map_err(Failure::usage)
    }
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, env = "CHROMATIC_BUDGET_NODES")]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    strict_determinism: bool,
}

impl BudgetArgs {
    fn options(&self) -> Result<SearchOptions, Failure> {
        let mut opts = SearchOptions {
            threads: self.threads,
            strict_determinism: self.strict_determinism,
            ..SearchOptions::default()
        };
        opts.limits.max_nodes = self.budget_nodes;
        if let Some(secs) = self.budget_seconds {
            if !(secs.is_finite() && secs > 0.0) {
                return Err(Failure::usage("--budget-seconds must be positive"));
            }
            opts.limits.max_time = Some(Duration::from_secs_f64(secs));
        }
        Ok(opts)
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }

    fn usage(message: impl ToString) -> Self {
        Failure::new(EXIT_USAGE, message)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn read_colouring(path: &Path) -> Result<(EdgeColouring, Signature), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    EdgeColouring::from_json(&text).map_err(Failure::usage)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct {
            sig,
            level,
            out,
            dot,
        } => {
            let sig = sig.signature()?;
            match construct(ConstructionRequest { sig, level }) {
                Construction::Built(col) => {
                    emit(&col.to_json(sig).map_err(Failure::usage)?, out.as_deref())?;
                    if let Some(path) = dot {
                        write_file(&path, &col.to_dot())?;
                    }
                    Ok(())
                }
                Construction::NotConstructible { reason, settled } => {
                    let kind = if settled { "not representable" } else { "no construction available" };
                    Err(Failure::new(EXIT_NOT_CONSTRUCTIBLE, format!("{sig} at level {level}: {kind}: {reason}")))
                }
                Construction::DelegatedToSearch { reason } => Err(Failure::new(
                    EXIT_NOT_CONSTRUCTIBLE,
                    format!("{sig} at level {level}: no construction ({reason}); use the search command"),
                )),
            }
        }
        Command::Verify { input, s, n, level } => {
            let (col, file_sig) = read_colouring(&input)?;
            let set = match s {
                Some(text) => parse_type_set(&text).map_err(Failure::usage)?,
                None => file_sig.s(),
            };
            let sig = Signature::new(&set, n.unwrap_or(file_sig.n())).map_err(Failure::usage)?;
            let report = col.verify(sig, level).map_err(Failure::usage)?;
            println!("{}", report.to_json());
            if report.passed {
                Ok(())
            } else {
                Err(Failure::new(
                    EXIT_VERIFY,
                    format!("{sig}: verification at level {level} failed"),
                ))
            }
        }
        Command::Search {
            sig,
            level,
            min_m,
            max_m,
            budget,
            no_symmetry_breaking,
            transcript,
            out,
        } => {
            let sig = sig.signature()?;
            let mut opts = budget.options()?;
            opts.symmetry_breaking = !no_symmetry_breaking;
            let lo = min_m.unwrap_or(2);
            let hi = max_m.unwrap_or_else(|| default_max_m(sig.n()));
            if lo > hi {
                return Err(Failure::usage(format!("empty size range {lo}..={hi}")));
            }
            opts = opts.with_range(lo..=hi);
            let outcome = search(sig, level, &opts).map_err(Failure::usage)?;
            if let Some(path) = transcript {
                write_file(&path, &outcome.transcript())?;
            }
            match &outcome.status {
                SearchStatus::Found(col) => {
                    println!("found representation on m={} vertices", col.vertex_count());
                    emit(&col.to_json(sig).map_err(Failure::usage)?, out.as_deref())
                }
                SearchStatus::ExhaustedUpTo(m) => {
                    if outcome.certifies_nonexistence(sig, level) {
                        println!("certified nonexistent up to m={m}");
                    } else {
                        println!("none found up to m={m}");
                    }
                    Ok(())
                }
                SearchStatus::Aborted(reason) => Err(Failure::new(
                    EXIT_BUDGET,
                    format!(
                        "search aborted after {} nodes: {reason}",
                        outcome.nodes_explored
                    ),
                )),
            }
        }
        Command::Enumerate {
            sig,
            level,
            m,
            budget,
        } => {
            let sig = sig.signature()?;
            let result = enumerate(sig, level, m, &budget.options()?).map_err(Failure::usage)?;
            for col in &result.colourings {
                println!("{}", col.to_json(sig).map_err(Failure::usage)?);
            }
            eprintln!("{} colourings on {m} vertices", result.colourings.len());
            if result.partial {
                Err(Failure::new(
                    EXIT_BUDGET,
                    "enumeration incomplete: budget exhausted",
                ))
            } else {
                Ok(())
            }
        }
        Command::Witness { walecki_n, triple } => {
            let parts: Vec<usize> = triple
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::usage(format!("bad --triple {triple:?}: {e}")))?;
            let [i, j, k] = parts[..] else {
                return Err(Failure::usage("--triple needs exactly three colours"));
            };
            let labels = walecki_witness(walecki_n, i, j, k).map_err(Failure::usage)?;
            let col = walecki(walecki_n);
            let [a, b, c] = labels.map(|l| l - 1);
            let colours = [col.colour(a, b), col.colour(a, c), col.colour(b, c)];
            let doc = serde_json::json!({
                "n": walecki_n,
                "triple": [i, j, k],
                "labels": labels,
                "colours": colours,
            });
            println!("{doc}");
            if colours == [i, j, k] {
                Ok(())
            } else {
                Err(Failure::new(
                    EXIT_VERIFY,
                    "witness triangle has the wrong colours",
                ))
            }
        }
        Command::Table {
            max_n,
            json,
            budget,
        } => {
            if max_n == 0 {
                return Err(Failure::usage("--max-n must be at least 1"));
            }
            let mut opts = budget.options()?;
            if opts.limits.max_nodes.is_none() && opts.limits.max_time.is_none() {
                opts.limits.max_nodes = Some(TABLE_DEFAULT_NODES);
            }
            let table = summary_table(max_n, &opts).map_err(Failure::usage)?;
            if json {
                println!("{}", serde_json::to_string(&table).map_err(Failure::usage)?);
            } else {
                print!("{}", table.render());
            }
            Ok(())
        }
        Command::Export {
            input,
            dot,
            cayley,
            geometry,
        } => {
            if dot.is_none() && cayley.is_none() && geometry.is_none() {
                return Err(Failure::usage(
                    "nothing to export; pass --dot, --cayley or --geometry",
                ));
            }
            let (col, _) = read_colouring(&input)?;
            if let Some(path) = dot {
                write_file(&path, &col.to_dot())?;
            }
            if let Some(path) = cayley {
                let q = Quasigroup::from_colouring(&col).map_err(Failure::usage)?;
                write_file(&path, &q.to_json())?;
            }
            if let Some(path) = geometry {
                let g = linear_space_from_colouring(&col).map_err(Failure::usage)?;
                write_file(&path, &g.to_json())?;
            }
            Ok(())
        }
        Command::Atoms { sig, check } => {
            let sig = sig.signature()?;
            let atoms = AtomStructure::chromatic(sig);
            println!("{}", atoms.to_json());
            if check {
                let na = atoms.check_na();
                eprintln!("NA axioms: {}", if na.is_valid() { "hold" } else { "fail" });
                match atoms.is_associative().map_err(Failure::usage)? {
                    chromatic_core::algebra::Associativity::Associative => eprintln!("associative"),
                    chromatic_core::algebra::Associativity::NonAssociative { witness } => {
                        eprintln!("not associative, witness {witness:?}")
                    }
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
