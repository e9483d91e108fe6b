use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::AtomicBool;

use clap::{Args, Parser, Subcommand};
use groupreps::artifact::{Artifact, BlockLength, BuildOptions, RepKind};
use groupreps::block::{time_queries, tradeoff_table, Delta, DEFAULT_MEMORY_LIMIT};
use groupreps::corpus::build_family;
use groupreps::cube::greedy_cube_sequence;
use groupreps::fm::FmLabel;
use groupreps::space::{measure, probe_counted_multiply, probe_range, sample_pairs, Representation, SpaceReport};
use groupreps::special::DEFAULT_MAX_GENERATORS;
use groupreps::verify::{verify, VerifyMode};
use groupreps::{ElementId, Error, Group, GroupTable};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_IO: u8 = 4;

static STRICT: AtomicBool = AtomicBool::new(false);

#[derive(Parser)]
#[command(name = "gtool", version, about = "Build, query and verify compact group multiplication structures")]
struct Cli {
    /// Also check associativity when loading tables (cubic time).
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the Cayley table of a named group.
    Gen {
        /// cyclic N | dihedral N | abelian N.. | quaternion | direct F.. | semidirect M D R |
        /// symmetric K | alternating K | psl27 | file PATH
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a representation from a Cayley table and print its space report.
    Build(BuildArgs),
    /// Multiply two elements with a stored representation.
    Query {
        rep: PathBuf,
        /// Element id, or a comma-separated label with --labels.
        x: String,
        y: String,
        /// Read x and y as labels of an fm representation.
        #[arg(long)]
        labels: bool,
        /// Print the probe ledger of the query.
        #[arg(long)]
        stats: bool,
    },
    /// Compare a stored representation with a Cayley table.
    Verify {
        rep: PathBuf,
        table: PathBuf,
        /// exhaustive or random:N
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep block lengths and emit a space/probe CSV.
    Bench {
        table: PathBuf,
        /// Comma-separated rationals p/q in (0, 1].
        #[arg(long, default_value = "1/10,1/4,1/3,1/2,1")]
        deltas: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the greedy cube generating sequence of a table.
    Cube { table: PathBuf },
}

#[derive(Args)]
struct BuildArgs {
    table: PathBuf,
    /// block | cyclic | zgroup | simple | composite | fm-abelian | fm-hamiltonian | fm-zgroup | fm-semidirect
    #[arg(long)]
    kind: String,
    /// Block-length parameter as p/q (block only).
    #[arg(long, conflicts_with = "l")]
    delta: Option<String>,
    /// Exact block length (block only).
    #[arg(long)]
    l: Option<usize>,
    /// Largest generating set tried for simple groups.
    #[arg(long, default_value_t = DEFAULT_MAX_GENERATORS)]
    max_generators: usize,
    /// Memory ceiling in bytes for block arrays.
    #[arg(long, default_value_t = DEFAULT_MEMORY_LIMIT)]
    memory_limit: u128,
    #[arg(short, long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) => EXIT_USAGE,
        Error::Precondition(_) | Error::InvalidAction(_) | Error::CapacityExceeded { .. } | Error::Validation(_) => {
            EXIT_PRECONDITION
        }
        Error::Parse { .. } | Error::Format(_) | Error::Io(_) => EXIT_IO,
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Lib(Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))))
}

fn load_table(path: &Path) -> Result<GroupTable, Failure> {
    let strict = STRICT.load(std::sync::atomic::Ordering::Relaxed);
    Ok(GroupTable::load(&read_file(path)?, strict)?)
}

fn load_artifact(path: &Path) -> Result<Artifact, Failure> {
    Ok(Artifact::from_bytes(&read_file(path)?)?)
}

fn write_output(out: Option<&Path>, data: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, data)?,
        None => io::stdout().write_all(data)?,
    }
    Ok(())
}

fn report_line(rep: &dyn Representation, seed: u64) -> (SpaceReport, String) {
    let report = measure(rep);
    let pairs = sample_pairs(rep.order(), 4096, seed);
    let row = report.csv_row(rep.kind(), &rep.params(), probe_range(rep, &pairs));
    (report, row)
}

fn cmd_gen(family: &str, params: &[String], out: Option<&Path>) -> Result<(), Failure> {
    let g = build_family(family, params, None)?;
    write_output(out, g.to_text().as_bytes())
}

fn cmd_build(a: &BuildArgs) -> Result<(), Failure> {
    let kind: RepKind = a.kind.parse()?;
    let g = load_table(&a.table)?;
    let block = match (a.l, &a.delta) {
        (Some(l), _) => BlockLength::Exact(l),
        (None, Some(d)) => BlockLength::Delta(d.parse()?),
        (None, None) => BuildOptions::default().block,
    };
    let opts = BuildOptions { block, max_generators: a.max_generators, memory_limit: a.memory_limit };
    let art = Artifact::build(kind, &g, &opts)?;
    fs::write(&a.out, art.to_bytes())?;
    let (_, row) = report_line(art.rep(), a.seed);
    println!("{}", SpaceReport::CSV_HEADER);
    println!("{row}");
    Ok(())
}

fn parse_element(art: &Artifact, s: &str, as_label: bool) -> Result<ElementId, Failure> {
    let n = art.rep().order();
    if as_label {
        let Artifact::Fm(fm) = art else {
            return Err(Error::InvalidParameter("--labels needs an fm representation".into()).into());
        };
        let label: FmLabel = s.parse()?;
        return fm
            .labels
            .element(&label)
            .ok_or_else(|| Failure::Lib(Error::InvalidParameter(format!("label ({label}) is not in the labeling"))));
    }
    let v: u32 = s.parse().map_err(|_| Error::InvalidParameter(format!("{s:?} is not an element id")))?;
    if v == 0 || v as usize > n {
        return Err(Error::InvalidParameter(format!("element id {v} outside 1..={n}")).into());
    }
    Ok(ElementId::new(v))
}

fn cmd_query(rep: &Path, x: &str, y: &str, labels: bool, stats: bool) -> Result<(), Failure> {
    let art = load_artifact(rep)?;
    let (x, y) = (parse_element(&art, x, labels)?, parse_element(&art, y, labels)?);
    let (z, ledger) = probe_counted_multiply(art.rep(), x, y);
    match &art {
        Artifact::Fm(fm) => println!("{z} ({})", fm.labels.label(z)),
        _ => println!("{z}"),
    }
    if stats {
        println!("probes: {ledger} total={}", ledger.total());
    }
    Ok(())
}

fn cmd_verify(rep: &Path, table: &Path, mode: &str, seed: u64) -> Result<(), Failure> {
    let mode: VerifyMode = mode.parse()?;
    let art = load_artifact(rep)?;
    let g = load_table(table)?;
    let outcome = verify(art.rep(), &g, mode, seed)?;
    match outcome.counterexample {
        None => {
            println!("PASS {} checked={}", art.rep().kind(), outcome.checked);
            Ok(())
        }
        Some(c) => Err(Failure::Mismatch(format!("FAIL {} after {} pairs: {c}", art.rep().kind(), outcome.checked))),
    }
}

fn cmd_bench(table: &Path, deltas: &str, out: Option<&Path>, seed: u64) -> Result<(), Failure> {
    let deltas: Vec<Delta> = deltas.split(',').map(|d| d.trim().parse()).collect::<Result<_, _>>()?;
    let g = load_table(table)?;
    let (seq, _) = greedy_cube_sequence(&g);
    let mut csv = String::from("delta,l,m,slots,probes,avg_query_ns\n");
    for row in tradeoff_table(&g, &seq, &deltas, DEFAULT_MEMORY_LIMIT, seed) {
        match row.outcome {
            Ok(p) => {
                csv.push_str(&format!("{},{},{},{},{},{:.1}\n", row.delta, p.l, p.m, p.slots, p.probes, p.avg_query_ns))
            }
            Err(e) => eprintln!("delta {}: {e}", row.delta),
        }
    }
    let pairs = sample_pairs(Group::order(&g), 4096, seed);
    for kind in [RepKind::Cyclic, RepKind::ZGroup, RepKind::Simple] {
        match Artifact::build(kind, &g, &BuildOptions::default()) {
            Ok(art) => {
                let rep = art.rep();
                let (_, hi) = probe_range(rep, &pairs);
                let ns = time_queries(rep, &pairs);
                csv.push_str(&format!("{kind},,,{},{hi},{ns:.1}\n", measure(rep).slots));
            }
            Err(e) => eprintln!("{kind}: not applicable: {e}"),
        }
    }
    write_output(out, csv.as_bytes())
}

fn cmd_cube(table: &Path) -> Result<(), Failure> {
    let g = load_table(table)?;
    let (seq, _) = greedy_cube_sequence(&g);
    write_output(None, seq.to_text().as_bytes())
}

fn run(cli: Cli) -> Result<(), Failure> {
    STRICT.store(cli.strict, std::sync::atomic::Ordering::Relaxed);
    match cli.command {
        Command::Gen { family, params, out } => cmd_gen(&family, &params, out.as_deref()),
        Command::Build(a) => cmd_build(&a),
        Command::Query { rep, x, y, labels, stats } => cmd_query(&rep, &x, &y, labels, stats),
        Command::Verify { rep, table, mode, seed } => cmd_verify(&rep, &table, &mode, seed),
        Command::Bench { table, deltas, out, seed } => cmd_bench(&table, &deltas, out.as_deref(), seed),
        Command::Cube { table } => cmd_cube(&table),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            println!("{msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
