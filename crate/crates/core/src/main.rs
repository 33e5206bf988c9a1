use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde_json::json;

use spatialpw::gen::{random_graph, random_partition, random_spatial, rng, SpatialParams};
use spatialpw::io::{parse_document, serialize_document};
use spatialpw::model::{rat, CandidateSet, ScoringRule, SpatialInstance, TieBreak, VoterSpec};
use spatialpw::oracles::DEFAULT_CAP;
use spatialpw::shapes::{gen_from_binpacking, gen_from_independent_set};
use spatialpw::solve::{solve_necessary, solve_pw, Strategy};
use spatialpw::weighted::{gen_partition_borda, gen_partition_kapproval, gen_partition_plurality, PartitionInstance};
use spatialpw::{Error, Result};

#[derive(Parser)]
#[command(name = "spatialpw", version, about = "Possible and necessary winners in spatial elections with uncertain voters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the query candidate is a possible winner.
    Solve(SolveArgs),
    /// Decide whether the query candidate is a necessary winner.
    Nw(SolveArgs),
    /// Decide the possible-winner question by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Print a generated instance.
    Gen(GenArgs),
    /// Time the line solver on growing plurality instances (tab-separated output).
    Bench(BenchArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance document.
    #[arg(long)]
    instance: PathBuf,
    /// Override the document's query candidate (1-based).
    #[arg(long)]
    query: Option<usize>,
    /// Largest search space the exhaustive solvers may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InstanceArgs,
    /// Solver to use: auto, pw1, fpt, weighted or oracle.
    #[arg(long, default_value = "auto")]
    algorithm: Strategy,
    /// Print the verified witness completion.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InstanceArgs,
    /// Ask the necessary-winner question instead.
    #[arg(long)]
    necessary: bool,
    #[arg(long)]
    witness: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum GenKind {
    Random,
    Binpacking,
    Indepset,
    PartitionPlurality,
    PartitionKapproval,
    PartitionBorda,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Partition values or bin-packing item sizes, comma separated; drawn at random when absent.
    #[arg(long, value_delimiter = ',')]
    values: Vec<u64>,
    /// Approval width for partition-kapproval, bins for binpacking, set size for indepset.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Bin capacity for binpacking.
    #[arg(long, default_value_t = 6)]
    bin: u64,
    /// Vertex count for indepset; candidate bound for random.
    #[arg(long, default_value_t = 5)]
    m: usize,
    /// Voter bound for random.
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Rule for random instances.
    #[arg(long, default_value = "borda")]
    rule: ScoringRule,
    /// Largest voter weight for random instances (unweighted when absent).
    #[arg(long)]
    max_weight: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 20)]
    m: usize,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn load(args: &InstanceArgs) -> Result<SpatialInstance> {
    let text = std::fs::read_to_string(&args.instance)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", args.instance.display())))?;
    let inst = parse_document(&text)?;
    match args.query {
        Some(0) => Err(Error::InvalidInput("--query is 1-based".into())),
        Some(q) => inst.with_query(q - 1),
        None => Ok(inst),
    }
}

fn report(instance: &SpatialInstance, verdict: spatialpw::verdict::Verdict, start: Instant, witness: bool) -> Result<()> {
    let seconds = start.elapsed().as_secs_f64();
    if witness {
        verdict.check_witness(instance)?;
    }
    println!("{}", verdict.to_json(Some(seconds), witness));
    Ok(())
}

fn partition(args: &GenArgs) -> Result<PartitionInstance> {
    if args.values.is_empty() {
        Ok(random_partition(&mut rng(args.seed), 8, 12))
    } else {
        PartitionInstance::new(args.values.clone())
    }
}

fn generate(args: &GenArgs) -> Result<String> {
    let doc = |inst: SpatialInstance| serialize_document(&inst);
    Ok(match args.kind {
        GenKind::Random => {
            let params = SpatialParams {
                dim: args.dim,
                max_m: args.m,
                max_n: args.n,
                rules: vec![args.rule.clone()],
                max_weight: args.max_weight,
                ..SpatialParams::default()
            };
            doc(random_spatial(&mut rng(args.seed), &params))
        }
        GenKind::PartitionPlurality => doc(gen_partition_plurality(&partition(args)?)),
        GenKind::PartitionKapproval => doc(gen_partition_kapproval(&partition(args)?, args.k)?),
        GenKind::PartitionBorda => doc(gen_partition_borda(&partition(args)?)),
        GenKind::Binpacking => {
            let sizes = if args.values.is_empty() {
                let mut r = rng(args.seed);
                (0..r.gen_range(1..=6)).map(|_| r.gen_range(1..=args.bin.max(1))).collect()
            } else {
                args.values.clone()
            };
            let inst = gen_from_binpacking(&sizes, args.bin, args.k)?;
            let source = json!({ "sizes": sizes, "bin": args.bin, "bins": args.k });
            serde_json::to_string_pretty(&json!({ "binpacking": source, "shapes": inst })).expect("serializable")
        }
        GenKind::Indepset => {
            if args.m < 2 {
                return Err(Error::InvalidInput("indepset needs at least two vertices".into()));
            }
            let mut r = rng(args.seed);
            let edges = loop {
                let e = random_graph(&mut r, args.m);
                if (0..args.m).all(|v| e.iter().any(|&(a, b)| a == v || b == v)) {
                    break e;
                }
            };
            let inst = gen_from_independent_set(&edges, args.m, args.k)?;
            let source = json!({ "vertices": args.m, "edges": edges, "k": args.k });
            serde_json::to_string_pretty(&json!({ "independent_set": source, "shapes": inst })).expect("serializable")
        }
    })
}

fn bench(args: &BenchArgs) -> Result<()> {
    println!("n\tm\tseconds\tanswer");
    let mut r = rng(args.seed);
    let span = 10 * args.m as i64;
    for &n in &args.sizes {
        let candidates = CandidateSet::on_line((0..args.m as i64).map(|i| rat(10 * i)).collect())?;
        let voters = (0..n)
            .map(|_| {
                let lo = r.gen_range(-5..span);
                VoterSpec::on_line(rat(lo), rat(lo + r.gen_range(0..30)))
            })
            .collect::<Result<Vec<_>>>()?;
        let inst = SpatialInstance::new(
            candidates,
            voters,
            ScoringRule::Plurality,
            TieBreak::lower_index(args.m),
            args.m / 2,
        )?;
        let start = Instant::now();
        let v = solve_pw(&inst, Strategy::Pw1, DEFAULT_CAP)?;
        println!("{n}\t{}\t{:.6}\t{}", args.m, start.elapsed().as_secs_f64(), v.answer);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => {
            let inst = load(&args.input)?;
            let start = Instant::now();
            let v = solve_pw(&inst, args.algorithm, args.input.cap)?;
            report(&inst, v, start, args.witness)
        }
        Command::Nw(args) => {
            let inst = load(&args.input)?;
            let start = Instant::now();
            let v = solve_necessary(&inst, args.algorithm, args.input.cap)?;
            report(&inst, v, start, false)
        }
        Command::Oracle(args) => {
            let inst = load(&args.input)?;
            let start = Instant::now();
            let v = if args.necessary {
                solve_necessary(&inst, Strategy::Oracle, args.input.cap)?
            } else {
                solve_pw(&inst, Strategy::Oracle, args.input.cap)?
            };
            report(&inst, v, start, args.witness && !args.necessary)
        }
        Command::Gen(args) => {
            let text = generate(&args)?;
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            Ok(())
        }
        Command::Bench(args) => bench(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Internal(_)) { 2 } else { 1 })
        }
    }
}
