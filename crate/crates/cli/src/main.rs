use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use h0pres::bench::doubling;
use h0pres::collapse::vertex_minimize;
use h0pres::gen::bench_graph;
use h0pres::io::{
    parse_graph, parse_multicritical, write_betti_report, write_graph, write_oracle_tables,
    write_presentation,
};
use h0pres::oracle::{
    koszul_betti_all, koszul_betti_h1, verify_presentation, GradeGrid, PrimeField,
};
use h0pres::{betti_r2, minimal_presentation, one_criticalize, Backend, FilteredGraph, ParseError};

#[derive(Parser)]
#[command(
    name = "h0pres",
    version,
    about = "Minimal presentations and Betti tables of H0 of filtered graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Collapse to a vertex-minimal graph and print it.
    Reduce(Io),
    /// Minimal presentation over any poset.
    Minpres(Io),
    /// Betti tables over R^2 with the lex sweep.
    Betti2d {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = BackendArg::Fast)]
        backend: BackendArg,
    },
    /// Turn a multi-critical graph into a 1-critical one.
    Onecrit {
        #[command(flatten)]
        io: Io,
        /// Print the Betti tables of the result instead of the graph.
        #[arg(long)]
        betti: bool,
        #[arg(long, value_enum, default_value_t = BackendArg::Fast)]
        backend: BackendArg,
    },
    /// Brute-force Betti tables on the grade grid.
    Oracle {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Check the fast algorithms against the oracle; exit 3 on a mismatch.
    Verify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = BackendArg::Fast)]
        backend: BackendArg,
    },
    /// Doubling experiment on random bifiltered graphs.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchOp::Betti2d)]
        op: BenchOp,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Smallest size, as a power of two (edges for betti2d, vertices for minpres).
        #[arg(long, default_value_t = 12)]
        from: u32,
        #[arg(long, default_value_t = 16)]
        to: u32,
        #[arg(long, default_value_t = 3)]
        rounds: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Fast)]
        backend: BackendArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Io {
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Prime field of coefficients: 2, 3 or 5.
    #[arg(long, default_value_t = 2, value_parser = parse_field)]
    field: u32,
    /// Largest number of grid values on one axis.
    #[arg(long, default_value_t = GradeGrid::DEFAULT_CAP)]
    grid_cap: usize,
}

fn parse_field(s: &str) -> std::result::Result<u32, String> {
    match s.parse::<u32>() {
        Ok(p) if PrimeField::new(p).is_ok() => Ok(p),
        _ => Err(format!("`{s}` is not one of 2, 3, 5")),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Fast,
    Naive,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Fast => Backend::Fast,
            BackendArg::Naive => Backend::Naive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchOp {
    Betti2d,
    Minpres,
}

enum Failure {
    Invalid(String),
    Mismatch(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Mismatch(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Mismatch(m) | Failure::Io(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::PosetFile { .. } => Failure::Io(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

struct Input {
    text: String,
    base: Option<PathBuf>,
}

impl Input {
    fn read(path: &Option<PathBuf>) -> Result<Self> {
        match path.as_deref() {
            None => Self::stdin(),
            Some(p) if p == Path::new("-") => Self::stdin(),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
                Ok(Input {
                    text,
                    base: p.parent().map(Path::to_path_buf),
                })
            }
        }
    }

    fn stdin() -> Result<Self> {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        Ok(Input { text, base: None })
    }

    /// The poset file named on the header line, for writing graphs back out.
    fn poset_file(&self) -> String {
        self.text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .find(|l| !l.trim().is_empty())
            .and_then(|l| l.split_whitespace().nth(2))
            .unwrap_or("")
            .to_string()
    }

    fn graph(&self) -> Result<FilteredGraph> {
        let g = parse_graph(&self.text, self.base.as_deref())?;
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Failure::Invalid(listing(violations)))
        }
    }
}

fn listing<T: ToString>(items: Vec<T>) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("standard output: {e}"))),
    }
}

fn require_r2(g: &FilteredGraph) -> Result<()> {
    if g.poset().is_r2() {
        Ok(())
    } else {
        Err(Failure::Invalid(
            "betti2d needs an R^2-filtered graph (`poset rn 2`)".into(),
        ))
    }
}

fn grid_for(g: &FilteredGraph, args: &GridArgs) -> Result<(GradeGrid, PrimeField)> {
    let grid =
        GradeGrid::for_graph(g, args.grid_cap).map_err(|e| Failure::Invalid(e.to_string()))?;
    let field = PrimeField::new(args.field).map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok((grid, field))
}

fn oracle(io: &Io, args: &GridArgs) -> Result<()> {
    let g = Input::read(&io.input)?.graph()?;
    let (grid, field) = grid_for(&g, args)?;
    let tables = koszul_betti_all(&g, &grid, field).map_err(|e| Failure::Invalid(e.to_string()))?;
    let h1 = koszul_betti_h1(&g, &grid, field).map_err(|e| Failure::Invalid(e.to_string()))?;
    emit(
        &io.output,
        &write_oracle_tables(field.modulus(), &tables, Some(&h1)),
    )
}

fn verify(io: &Io, args: &GridArgs, backend: Backend) -> Result<()> {
    let g = Input::read(&io.input)?.graph()?;
    let (grid, field) = grid_for(&g, args)?;
    let mut report = Vec::new();
    let mut failed = false;
    let check = verify_presentation(&g, &minimal_presentation(&g), &grid);
    match &check.failure {
        None => report.push(format!(
            "ok minpres on {} grid points{}",
            check.points,
            if check.minimality_checked {
                ", minimal"
            } else {
                ""
            }
        )),
        Some(f) => {
            failed = true;
            report.push(format!("mismatch minpres: {f}"));
        }
    }
    if g.poset().is_r2() {
        let r = betti_r2(&g, backend).map_err(|e| Failure::Invalid(e.to_string()))?;
        let tables =
            koszul_betti_all(&g, &grid, field).map_err(|e| Failure::Invalid(e.to_string()))?;
        let h1 = koszul_betti_h1(&g, &grid, field).map_err(|e| Failure::Invalid(e.to_string()))?;
        for (name, ours, theirs) in [
            ("betti0", &r.beta0, &tables[0]),
            ("betti1", &r.beta1, &tables[1]),
            ("betti2", &r.beta2, &tables[2]),
            ("betti0_h1", &r.beta0_h1, &h1),
        ] {
            if ours.same_multiset(theirs) {
                report.push(format!("ok betti2d {name} ({} grades)", ours.len()));
            } else {
                failed = true;
                report.push(format!(
                    "mismatch betti2d {name}: found {:?}, oracle over F{} has {:?}",
                    ours.sorted(),
                    field.modulus(),
                    theirs.sorted()
                ));
            }
        }
    }
    let text = report.join("\n") + "\n";
    if failed {
        Err(Failure::Mismatch(text))
    } else {
        emit(&io.output, &text)
    }
}

fn bench(
    op: BenchOp,
    seed: u64,
    from: u32,
    to: u32,
    rounds: usize,
    backend: Backend,
) -> Result<String> {
    if from > to || to > 24 {
        return Err(Failure::Invalid("need from <= to <= 24".into()));
    }
    let sizes: Vec<usize> = (from..=to).map(|k| 1usize << k).collect();
    let d = match op {
        BenchOp::Betti2d => doubling(
            &sizes,
            rounds,
            |m| bench_graph(seed, m),
            |g| {
                std::hint::black_box(betti_r2(g, backend).expect("R^2 input"));
            },
        ),
        BenchOp::Minpres => doubling(
            &sizes,
            rounds,
            |n| bench_graph(seed, 4 * n),
            |g| {
                std::hint::black_box(minimal_presentation(g));
            },
        ),
    };
    let mut out = String::from("size seconds ratio\n");
    let ratios = d.ratios();
    for (i, (size, t)) in d.sizes.iter().zip(d.best()).enumerate() {
        match i.checked_sub(1).map(|j| ratios[j]) {
            Some(r) => out.push_str(&format!("{size} {t:.6} {r:.3}\n")),
            None => out.push_str(&format!("{size} {t:.6} -\n")),
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Reduce(io) => {
            let input = Input::read(&io.input)?;
            let g = input.graph()?;
            emit(
                &io.output,
                &write_graph(&vertex_minimize(&g).graph, &input.poset_file()),
            )
        }
        Command::Minpres(io) => {
            let g = Input::read(&io.input)?.graph()?;
            emit(&io.output, &write_presentation(&minimal_presentation(&g)))
        }
        Command::Betti2d { io, backend } => {
            let g = Input::read(&io.input)?.graph()?;
            require_r2(&g)?;
            let r = betti_r2(&g, backend.into()).map_err(|e| Failure::Invalid(e.to_string()))?;
            emit(&io.output, &write_betti_report(&r, true))
        }
        Command::Onecrit { io, betti, backend } => {
            let input = Input::read(&io.input)?;
            let m = parse_multicritical(&input.text, input.base.as_deref())?;
            let (g, _) = one_criticalize(&m).map_err(|e| Failure::Invalid(e.to_string()))?;
            if betti {
                require_r2(&g)?;
                let r =
                    betti_r2(&g, backend.into()).map_err(|e| Failure::Invalid(e.to_string()))?;
                emit(&io.output, &write_betti_report(&r, false))
            } else {
                emit(&io.output, &write_graph(&g, &input.poset_file()))
            }
        }
        Command::Oracle { io, grid } => oracle(&io, &grid),
        Command::Verify { io, grid, backend } => verify(&io, &grid, backend.into()),
        Command::Bench {
            op,
            seed,
            from,
            to,
            rounds,
            backend,
            output,
        } => {
            let text = bench(op, seed, from, to, rounds, backend.into())?;
            emit(&output, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = f.message();
            if matches!(f, Failure::Mismatch(_)) {
                print!("{msg}");
            } else {
                eprintln!("h0pres: {}", msg.trim_end());
            }
            ExitCode::from(f.code())
        }
    }
}
