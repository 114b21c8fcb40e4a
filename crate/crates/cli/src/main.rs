use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::{Failure, Report};

/// Hall invariants, cover Betti numbers and subgroup counts of finitely
/// presented groups.
#[derive(Parser, Debug)]
#[command(name = "hallinv", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of partial assignments explored by enumerations.
    #[arg(long, global = true, default_value_t = hallinv::oracle::DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads for character and homomorphism enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Single-threaded run with stable timing, for golden comparisons.
    #[arg(long, global = true)]
    deterministic_profile: bool,

    #[command(subcommand)]
    command: Command,
}

/// Exactly one way of naming the group.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Presentation file, `-` for standard input.
    #[arg(long = "in", value_name = "FILE")]
    pub file: Option<String>,

    /// Built-in group: braid_arrangement, non_fano, deleted_B3, A(31425),
    /// F3, F2xF1, Z3, S2, N3.
    #[arg(long)]
    pub fixture: Option<String>,

    /// Horizontal 2-arrangement with this permutation, e.g. 31425.
    #[arg(long)]
    pub perm: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation and print it in normal form.
    Parse {
        #[command(flatten)]
        input: Input,
    },
    /// First homology of the group.
    Abelianize {
        #[command(flatten)]
        input: Input,
    },
    /// Nonzero entries of the Alexander matrix.
    Alexander {
        #[command(flatten)]
        input: Input,
    },
    /// Distribution of mod-q Betti numbers of index-p normal subgroups.
    Beta {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
        /// Characteristic, 0 for the rationals.
        #[arg(long, default_value_t = 0)]
        q: u64,
        /// Only evaluate one character per Galois orbit.
        #[arg(long)]
        no_galois_check: bool,
    },
    /// Hall invariants for one or more target groups.
    Delta {
        #[command(flatten)]
        input: Input,
        /// Comma-free list such as `S3 A4 Z2+Z4 mpq:3,7 D10`.
        #[arg(long, num_args = 1.., required = true)]
        target: Vec<String>,
        /// Also count epimorphisms by enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// First Betti number of the abelian cover given by generator images.
    Cover {
        #[command(flatten)]
        input: Input,
        /// Orders of the cyclic factors of the quotient, e.g. `3` or `2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<u64>,
        /// Image of each generator: one integer per factor, generators
        /// separated by `;` (or `,` for a cyclic quotient).
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[arg(long, default_value_t = 0)]
        q: u64,
        /// Also compute the cover homology from its permutation representation.
        #[arg(long)]
        oracle: bool,
    },
    /// Counts of index-k subgroups.
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: u64,
        /// Only normal subgroups.
        #[arg(long)]
        normal: bool,
        /// Only normal subgroups with abelian quotient.
        #[arg(long)]
        abelian_quotient: bool,
        /// Only conjugacy classes (prime k).
        #[arg(long)]
        conjugacy: bool,
    },
    /// Emit the presentation of an arrangement group.
    Arr {
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        perm: Option<String>,
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Brute-force counts against a finite group, or homology of a cover.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// s3, a4, s<n>, a<n>, z<n>, Z2+Z4, d<2n>, mpq:p,q or table:FILE.
        #[arg(long, required_unless_present = "cover")]
        target: Option<String>,
        /// Images of the generators in Z_n, comma separated.
        #[arg(long, allow_hyphen_values = true, requires = "order")]
        cover: Option<String>,
        #[arg(long)]
        order: Option<u64>,
    },
    /// Hall invariants of free, product-of-free and surface groups.
    Table1 {
        /// Subset of rows, e.g. F2,F3,S2.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
    },
    /// Hall invariants of horizontal 2-arrangement groups.
    Table2 {
        /// Subset of permutations, e.g. 2134,31425.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let threads = if cli.deterministic_profile { Some(1) } else { cli.threads };
    if let Some(n) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.json).unwrap())
            } else {
                write!(out, "{}", report.text)
            };
            // A closed pipe (`| head`) is not a failure.
            match written {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure { message, code }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let budget = cli.budget;
    match &cli.command {
        Command::Parse { input } => commands::parse(&commands::load(input)?),
        Command::Abelianize { input } => commands::abelianize(&commands::load(input)?),
        Command::Alexander { input } => commands::alexander(&commands::load(input)?),
        Command::Beta {
            input,
            p,
            q,
            no_galois_check,
        } => commands::beta(&commands::load(input)?, *p, *q, !no_galois_check),
        Command::Delta {
            input,
            target,
            oracle,
        } => commands::delta(&commands::load(input)?, target, oracle.then_some(budget)),
        Command::Cover {
            input,
            order,
            images,
            q,
            oracle,
        } => commands::cover(&commands::load(input)?, order, images, *q, *oracle),
        Command::Census {
            input,
            k,
            normal,
            abelian_quotient,
            conjugacy,
        } => {
            let only = commands::CensusFilter {
                normal: *normal,
                abelian_quotient: *abelian_quotient,
                conjugacy: *conjugacy,
            };
            commands::census(&commands::load(input)?, *k, only, budget)
        }
        Command::Arr { perm, fixture } => commands::arr(perm.as_deref(), fixture.as_deref()),
        Command::Oracle {
            input,
            target,
            cover,
            order,
        } => {
            let g = commands::load(input)?;
            match (target, cover) {
                (_, Some(images)) => commands::oracle_cover(&g, images, order.unwrap()),
                (Some(t), None) => commands::oracle_target(&g, t, budget),
                (None, None) => unreachable!("clap requires one of them"),
            }
        }
        Command::Table1 { rows } => commands::table1(rows),
        Command::Table2 { rows } => commands::table2(rows),
    }
}
