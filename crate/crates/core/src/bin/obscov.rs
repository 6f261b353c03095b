//! Command-line front end: solving, exact oracle, reductions,
//! decomposition, verification, gadget generation and benchmarking.
//!
//! Exit codes: 0 success, 1 infeasible, 2 parse/validation error,
//! 3 budget exceeded.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use obscov::cost;
use obscov::cover::SolveError;
use obscov::decomp::chain_decompose;
use obscov::gadgets;
use obscov::gen;
use obscov::graph::{is_feasible, validate_instance, CoveringInstance};
use obscov::io::{self, ParsedInstance};
use obscov::oracle::{self, Budget, OracleError};
use obscov::reduction;
use obscov::unweighted::solve_unweighted;
use obscov::weighted::solve_weighted_traced;

#[derive(Parser)]
#[command(name = "obscov", about = "Obstruction covering and node-connectivity augmentation solvers", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an approximation pipeline on a covering instance.
    Solve(SolveArgs),
    /// Exact minimum-cost covering by branch and bound.
    Oracle {
        #[arg(short)]
        input: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Convert between `p nca` and `p ocov` files.
    Reduce {
        #[arg(short)]
        input: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Decompose a host graph into lonely nodes, ladders and hexagons.
    Decompose {
        #[arg(short)]
        input: PathBuf,
        /// Write a graphviz file colouring the decomposition.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Check a solution file against its instance.
    Verify {
        #[arg(short)]
        input: PathBuf,
        #[arg(short)]
        solution: PathBuf,
    },
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Ratio benchmark against the oracle on seeded random instances.
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Maximum node count per instance.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_enum)]
        mode: Mode,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PipelineChoice {
    /// 3/2-approximation for general costs.
    #[arg(long)]
    weighted: bool,
    /// 4/3-approximation for unit costs.
    #[arg(long)]
    unweighted: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short)]
    input: PathBuf,
    #[arg(short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineChoice,
    /// Print per-stage costs to stderr.
    #[arg(long)]
    trace: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Build the d = 4 covering gadget of a 3-SAT-(2,2) formula.
    Sat22 {
        #[arg(short)]
        input: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Build the gadget and extend it to obstruction order d.
    ExtendD {
        #[arg(short)]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Reduce a tree augmentation instance to k-node-connectivity
    /// augmentation.
    Tap {
        #[arg(short)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Weighted,
    Unweighted,
}

enum CliError {
    Infeasible(String),
    Invalid(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Infeasible(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Infeasible(m) | CliError::Invalid(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            SolveError::Precondition(_) => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            OracleError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            OracleError::Graph(_) => CliError::Invalid(e.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_covering(path: &PathBuf) -> Result<CoveringInstance, CliError> {
    match io::parse_instance(&read(path)?)? {
        ParsedInstance::Covering(inst) => {
            validate_instance(&inst).map_err(|e| CliError::Invalid(e.to_string()))?;
            if inst.d > obscov::graph::MAX_ENUMERATION_D {
                return Err(CliError::Invalid(format!(
                    "obstruction enumeration supports d <= {}, got {}",
                    obscov::graph::MAX_ENUMERATION_D,
                    inst.d
                )));
            }
            Ok(inst)
        }
        ParsedInstance::Augmentation(_) => {
            Err(CliError::Invalid("expected a `p ocov` file".into()))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => {
            let inst = load_covering(&args.input)?;
            let sol = if args.pipeline.unweighted {
                solve_unweighted(&inst)?
            } else {
                let (sol, trace) = solve_weighted_traced(&inst)?;
                if args.trace {
                    eprintln!(
                        "corner-cover={} f1={} residual={}",
                        cost::display(&trace.corner_cover_cost),
                        cost::display(&trace.f1_cost),
                        cost::display(&trace.residual_cost),
                    );
                }
                sol
            };
            if args.trace {
                let mut by_stage: BTreeMap<&str, usize> = BTreeMap::new();
                for tag in sol.stage_tags.values() {
                    *by_stage.entry(tag).or_default() += 1;
                }
                for (stage, count) in by_stage {
                    eprintln!("stage {stage}: {count} links");
                }
            }
            write_out(&args.output, &io::emit_solution(&sol))
        }
        Command::Oracle { input, output } => {
            let inst = load_covering(&input)?;
            let sol = oracle::exact_opt(&inst, &Budget::default())?;
            write_out(&output, &io::emit_solution(&sol))
        }
        Command::Reduce { input, output } => {
            let text = read(&input)?;
            match io::parse_instance(&text)? {
                ParsedInstance::Augmentation(aug) => {
                    let inst = reduction::to_covering(&aug)
                        .map_err(|e| CliError::Invalid(e.to_string()))?;
                    write_out(&output, &io::emit_covering(&inst))
                }
                ParsedInstance::Covering(inst) => {
                    validate_instance(&inst).map_err(|e| CliError::Invalid(e.to_string()))?;
                    let aug = reduction::to_augmentation(&inst)
                        .map_err(|e| CliError::Invalid(e.to_string()))?;
                    write_out(&output, &io::emit_augmentation(&aug))
                }
            }
        }
        Command::Decompose { input, emit_dot } => {
            let inst = load_covering(&input)?;
            let dec = chain_decompose(&inst.graph)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            println!(
                "lonely {} components {}",
                dec.lonely.len(),
                dec.components.len()
            );
            for (i, comp) in dec.components.iter().enumerate() {
                match comp {
                    obscov::decomp::Component::Ladder(l) => println!(
                        "component {i}: ladder length {} nodes {:?}",
                        l.length(),
                        comp.nodes()
                    ),
                    obscov::decomp::Component::Hexagon(_) => {
                        println!("component {i}: hexagon nodes {:?}", comp.nodes())
                    }
                }
            }
            if let Some(path) = emit_dot {
                write_out(&Some(path), &io::emit_dot(&inst.graph, &dec))?;
            }
            Ok(())
        }
        Command::Verify { input, solution } => {
            let inst = load_covering(&input)?;
            let sol = io::parse_solution(&read(&solution)?, &inst)?;
            if is_feasible(&inst, &sol) {
                println!("feasible cost={}", cost::display(&sol.total_cost));
                Ok(())
            } else {
                Err(CliError::Infeasible("solution leaves an obstruction uncovered".into()))
            }
        }
        Command::Gen(sub) => run_gen(sub),
        Command::Bench { seed, n, trials, mode } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let weighted = matches!(mode, Mode::Weighted);
            let instances: Vec<(String, CoveringInstance)> = (0..trials)
                .map(|t| {
                    (
                        format!("seed{seed}-{t}"),
                        gen::random_valid_instance(&mut rng, n, weighted),
                    )
                })
                .collect();
            let rows = oracle::ratio_report(&instances, &Budget::default(), |inst| {
                let sol = if weighted {
                    solve_weighted_traced(inst).map(|(s, _)| s)
                } else {
                    solve_unweighted(inst)
                };
                sol.ok()
            })?;
            println!("id\topt\tapx\tratio\tfeasible");
            for row in &rows {
                println!("{}", row.tsv());
            }
            Ok(())
        }
    }
}

fn run_gen(cmd: GenCommand) -> Result<(), CliError> {
    match cmd {
        GenCommand::Sat22 { input, output } => {
            let f = io::parse_dimacs(&read(&input)?)?;
            let (inst, _) = gadgets::sat_to_covering(&f)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            write_out(&output, &io::emit_covering(&inst))
        }
        GenCommand::ExtendD { input, d, output } => {
            let f = io::parse_dimacs(&read(&input)?)?;
            let (base, layout) = gadgets::sat_to_covering(&f)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let ext = gadgets::extend_to_d(&base, &layout, d)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            write_out(&output, &io::emit_covering(&ext))
        }
        GenCommand::Tap { input, k, output } => {
            let text = read(&input)?;
            let ParsedInstance::Augmentation(tree_file) = io::parse_instance(&text)? else {
                return Err(CliError::Invalid("tap input must be a `p nca` file".into()));
            };
            let tap = gadgets::TapInstance {
                tree: tree_file.graph,
                links: tree_file.links,
                cost: tree_file.cost,
            };
            let (aug, _) = gadgets::tap_to_knca(&tap, k)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            write_out(&output, &io::emit_augmentation(&aug))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
