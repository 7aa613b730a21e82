use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use kemperman::campaign::{
    parse_instances, power_chain_sharpness, run_group, run_linear, torsion_free_sharpness, Campaign, Source,
    Summary,
};
use kemperman::theorems::{olson_linear, power_chain, stabilizer, TheoremReport};
use kemperman::transform::reduce_pair;
use kemperman::{Ambient, Error, Result, Subspace};

#[derive(Parser)]
#[command(name = "kemperman", version, about = "Verify addition theorems for product spans and product sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Enumerate every instance
    #[arg(long, conflicts_with_all = ["trials", "seed", "input"])]
    exhaustive: bool,
    /// Read instances from a file: one per line, inputs separated by spaces
    #[arg(long, conflicts_with_all = ["trials", "seed"])]
    input: Option<String>,
    /// Number of random instances
    #[arg(long)]
    trials: Option<u64>,
    /// Seed of the random instance stream
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dimensions (or set sizes) per input, e.g. 2,3
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Largest random dimension when --dims is absent
    #[arg(long)]
    max_dim: Option<usize>,
    /// Only inputs containing 1
    #[arg(long)]
    contains_one: bool,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write JSON-lines reports here instead of stdout
    #[arg(long)]
    json: Option<String>,
    /// Ceiling on the number of exhaustive instances
    #[arg(long, default_value_t = kemperman::campaign::DEFAULT_CEILING)]
    ceiling: u128,
}

#[derive(Subcommand)]
enum Command {
    /// Check a linear theorem over subspaces of a field ambient
    Verify {
        /// gf:q:n or ratfun:q:maxdeg
        #[arg(long)]
        ambient: String,
        /// kneser-linear, olson-linear, prime-degree, full-product, torsion-free,
        /// unique-rep, abc-linear, cor3, transform, power-chain
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a product-set theorem over subsets of a finite group
    Group {
        /// cyclic:n, dihedral:n, sym:n, prod:d1,d2 or table:path
        #[arg(long = "type", alias = "group")]
        group: String,
        /// basic, kemperman, olson, thOl2, thOl3, abc, abc-abelian, kneser
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Power chains <B> ⊆ <B²> ⊆ … and their stabilization exponent
    Powers {
        #[arg(long)]
        ambient: String,
        /// Chain length limit (required for ratfun ambients)
        #[arg(long)]
        stop: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Search for instances attaining equality in a bound
    Sharp {
        /// torsion-free or power-chain
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        ambient: String,
        /// Largest r, s for the monomial family
        #[arg(long, default_value_t = 4)]
        limit: usize,
        #[arg(long)]
        json: Option<String>,
    },
    /// Dump the transform trace of one pair given in compact form
    Reduce {
        #[arg(long)]
        ambient: String,
        /// e.g. "[1,0,0,0;0,1,0,0]"
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Print a few worked examples
    Demo,
}

fn sink(path: &Option<String>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn campaign(theorem: &str, descriptor: &str, run: &RunArgs) -> Result<Campaign> {
    let source = match (run.exhaustive, run.trials, &run.input) {
        (true, _, _) => Source::Exhaustive,
        (false, _, Some(path)) => Source::Explicit(parse_instances(&std::fs::read_to_string(path)?)),
        (false, Some(trials), None) => Source::Random { trials, seed: run.seed },
        (false, None, None) => {
            return Err(Error::Precondition("pass --exhaustive, --trials N or --input PATH".into()))
        }
    };
    let mut c = Campaign::new(theorem, descriptor, source);
    c.dims = run.dims.clone();
    c.max_dim = run.max_dim;
    c.contains_one = run.contains_one;
    c.jobs = run.jobs;
    c.ceiling = run.ceiling;
    Ok(c)
}

fn finish(summary: Summary, out: &mut dyn Write) -> Result<ExitCode> {
    out.flush()?;
    eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    Ok(if summary.failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn write_reports(reports: &[TheoremReport], out: &mut dyn Write) -> Result<()> {
    for r in reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(())
}

fn demo() -> Result<()> {
    let amb = Arc::new(Ambient::parse("gf:2:4")?);
    println!("L = {amb}, modulus {}", amb.modulus().expect("finite").format('t'));
    let line = Subspace::span(&amb, &[amb.one(), amb.monomial(1)?])?;
    let sq = line.product(&line)?;
    println!("A = span{{1, t}}: dim <AA> = {}, stabilizer dim = {}", sq.dim(), stabilizer(&sq)?.dim());
    let red = reduce_pair(&line, &line)?;
    println!("reduction of (A, A): {}", serde_json::to_string(&red.trace.to_json()).expect("json"));
    let cert = olson_linear(&line, &line)?;
    println!("Olson certificate: {}", cert.to_json());
    let chain = power_chain(&line, None)?;
    println!("power chain dims {:?}, n = {:?}", chain.dims, chain.stabilization_n);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { ambient, theorem, run } => {
            let c = campaign(&theorem, &ambient, &run)?;
            let mut out = sink(&run.json)?;
            let summary = run_linear(&c, Some(&mut *out))?;
            finish(summary, &mut *out)
        }
        Command::Group { group, theorem, run } => {
            let c = campaign(&theorem, &group, &run)?;
            let mut out = sink(&run.json)?;
            let summary = run_group(&c, Some(&mut *out))?;
            finish(summary, &mut *out)
        }
        Command::Powers { ambient, stop, run } => {
            let mut c = campaign("power-chain", &ambient, &run)?;
            c.stop = stop;
            let mut out = sink(&run.json)?;
            let summary = run_linear(&c, Some(&mut *out))?;
            finish(summary, &mut *out)
        }
        Command::Sharp { theorem, ambient, limit, json } => {
            let amb = Arc::new(Ambient::parse(&ambient)?);
            let reports = match theorem.as_str() {
                "torsion-free" => torsion_free_sharpness(&amb, limit)?,
                "power-chain" => power_chain_sharpness(&amb)?,
                other => return Err(Error::Descriptor(format!("no sharpness search for `{other}`"))),
            };
            let mut out = sink(&json)?;
            write_reports(&reports, &mut *out)?;
            out.flush()?;
            eprintln!("{} witnesses", reports.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { ambient, a, b } => {
            let amb = Arc::new(Ambient::parse(&ambient)?);
            let a = Subspace::from_compact(&amb, &a)?;
            let b = Subspace::from_compact(&amb, &b)?;
            let red = reduce_pair(&a, &b)?;
            red.trace.verify()?;
            let doc = serde_json::json!({
                "ambient": amb.descriptor(),
                "A": a.to_compact(),
                "B": b.to_compact(),
                "E": red.e.to_compact(),
                "F": red.f.to_compact(),
                "steps": red.trace.to_json(),
                "policy": kemperman::transform::POLICY,
            });
            println!("{doc}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Demo => {
            demo()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
