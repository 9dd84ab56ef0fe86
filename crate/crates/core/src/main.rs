use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use abelian_algebra::counting::{element_order_profile, hom_count, Counter};
use abelian_algebra::group::{types_up_to, GroupType};
use abelian_algebra::lattice::ConcreteGroup;
use abelian_algebra::output::{write_records, Format, OutputRecord};
use abelian_algebra::symgen::{generates_full_symmetric, parse_transpositions};
use abelian_algebra::{verify, Algebra, Error};

/// Exact computations on finite abelian groups.
///
/// Groups are written as comma-separated moduli: `2,2,4` is Z_2 x Z_2 x Z_4 and
/// `1` is the trivial group. Exit codes: 0 ok, 2 usage, 3 resource bound or
/// computation error, 4 verification mismatch.
#[derive(Parser)]
#[command(name = "abelian", version)]
struct Cli {
    /// Largest group order whose subgroup lattice may be enumerated.
    #[arg(long, global = true, default_value_t = 512)]
    max_lattice_order: u64,

    /// Output format for records: csv, json-lines or aligned.
    #[arg(long, global = true, default_value = "csv")]
    format: String,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function on one group.
    Eval { function: String, group: String },
    /// Evaluate functions on every group type up to an order.
    Table {
        /// Comma-separated function names.
        functions: String,
        max_order: u64,
        /// Overrides --format.
        format: Option<String>,
    },
    /// |Hom(A, B)|.
    Hom { a: String, b: String },
    /// |Mono(A, B)|.
    Mono { a: String, b: String },
    /// |Epi(A, B)|.
    Epi { a: String, b: String },
    /// |Aut B|.
    Aut { b: String },
    /// Number of subgroups of A isomorphic to B.
    Subcount { b: String, a: String },
    /// Element-order and subgroup-order profiles.
    Profile { group: String },
    /// Search for non-isomorphic groups with equal subgroup-order profiles.
    Conjecture { max_order: u64 },
    /// Whether translations plus transpositions `x>y;...` generate Sym(G).
    Symgen { group: String, transpositions: String },
    /// Cross-check formulas against brute force.
    Verify { suite: String, bound: u64 },
}

enum Failure {
    Usage(String),
    Compute(Error),
    Mismatch(String),
    // reader went away, e.g. `| head`
    ClosedPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::UnknownFunction(_)
            | Error::InvalidElement { .. }
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Compute(Error::Internal(e.to_string()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Mismatch(report)) => {
            print!("{report}");
            ExitCode::from(4)
        }
    }
}

fn group(spec: &str) -> Result<GroupType, Failure> {
    Ok(spec.parse::<GroupType>()?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    pool.install(|| dispatch(&cli))
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let algebra = Algebra::new(cli.max_lattice_order);
    let counter = Counter::new(cli.max_lattice_order);
    let format: Format = cli.format.parse()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();

    match &cli.command {
        Command::Eval { function, group: spec } => {
            let f = algebra.builtin(function)?;
            let g = group(spec)?;
            let value = f.eval(&g)?;
            write_records(&mut out, format, &[OutputRecord::new(&g, function, &value)])?;
        }
        Command::Table { functions, max_order, format: positional } => {
            let format = match positional {
                Some(f) => f.parse()?,
                None => format,
            };
            let fs = functions
                .split(',')
                .map(|name| algebra.builtin(name.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let rows: Vec<Vec<OutputRecord>> = types_up_to(*max_order)
                .par_iter()
                .map(|g| {
                    fs.iter()
                        .map(|f| Ok(OutputRecord::new(g, f.name(), &f.eval(g)?)))
                        .collect::<Result<Vec<_>, Error>>()
                })
                .collect::<Result<_, _>>()?;
            let records: Vec<OutputRecord> = rows.into_iter().flatten().collect();
            write_records(&mut out, format, &records)?;
        }
        Command::Hom { a, b } => writeln!(out, "{}", hom_count(&group(a)?, &group(b)?))?,
        Command::Mono { a, b } => writeln!(out, "{}", counter.mono_count(&group(a)?, &group(b)?)?)?,
        Command::Epi { a, b } => writeln!(out, "{}", counter.epi_count(&group(a)?, &group(b)?)?)?,
        Command::Aut { b } => writeln!(out, "{}", counter.aut_count(&group(b)?)?)?,
        Command::Subcount { b, a } => {
            writeln!(out, "{}", counter.sub_count(&group(b)?, &group(a)?)?)?
        }
        Command::Profile { group: spec } => {
            let g = group(spec)?;
            writeln!(out, "group     {g}")?;
            writeln!(out, "elements  {}", element_order_profile(&g))?;
            writeln!(out, "subgroups {}", counter.subgroup_order_profile(&g)?)?;
        }
        Command::Conjecture { max_order } => {
            let found = counter.conjecture_search(*max_order)?;
            if found.is_empty() {
                writeln!(out, "no counterexamples up to order {max_order}")?;
            } else {
                for (a, b) in found {
                    writeln!(out, "{a} ~ {b}")?;
                }
            }
        }
        Command::Symgen { group: spec, transpositions } => {
            let moduli: Vec<u64> = spec
                .split(',')
                .map(|m| m.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("`{spec}` is not a group specification")))?;
            let g = ConcreteGroup::new(&moduli)?;
            let taus = parse_transpositions(&g, transpositions)?;
            writeln!(out, "{}", generates_full_symmetric(&g, &taus)?)?;
        }
        Command::Verify { suite, bound } => {
            let report = verify::run_suite(suite, *bound, &algebra)?;
            if !report.ok() {
                return Err(Failure::Mismatch(report.to_string()));
            }
            writeln!(out, "{report}")?;
        }
    }
    out.flush()?;
    Ok(())
}
