use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use cupone::binomial_ring::RingSpec;
use cupone::cli_io::{run, Command, Format, Options, Verb};
use cupone::par::Execution;

/// Binomial cup-one dgas, 1-minimal models, kappa invariants and Massey products.
#[derive(Parser, Debug)]
#[command(name = "cupone", version)]
struct Cli {
    /// cohomology | minimal-model | kappa | compare | massey | group-realize | bar | verify-axioms
    #[arg(value_parser = parse_verb)]
    verb: Verb,
    /// Δ-set or presentation files
    inputs: Vec<PathBuf>,
    /// Z or Zp:<p>
    #[arg(long, value_parser = parse_ring)]
    ring: Option<RingSpec>,
    #[arg(long, default_value_t = 2)]
    stages: u32,
    #[arg(long, default_value_t = 6)]
    weight_cap: u32,
    /// text or json
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// Worker threads; 1 runs sequentially
    #[arg(long)]
    jobs: Option<usize>,
    /// `bar`: Zp:<m>, Z/<m>, or a comma-separated product
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// `massey`: i,j,k (1-based), repeatable
    #[arg(long = "triple", value_parser = parse_triple)]
    triples: Vec<[usize; 3]>,
    /// `compare`: compare cokernel ranks only
    #[arg(long)]
    forget_torsion: bool,
    /// `group-realize` over Z: audit box radius
    #[arg(long, default_value_t = 1)]
    radius: i64,
}

fn parse_verb(s: &str) -> Result<Verb, String> {
    s.parse().map_err(|e: cupone::Error| e.to_string())
}

fn parse_ring(s: &str) -> Result<RingSpec, String> {
    s.parse().map_err(|e: cupone::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        _ => Err(format!("unknown format `{s}`")),
    }
}

fn parse_triple(s: &str) -> Result<[usize; 3], String> {
    let v: Vec<usize> = s.split(',').map(|t| t.trim().parse().map_err(|_| format!("bad triple `{s}`"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| format!("a triple has three entries: `{s}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = match cli.jobs {
        Some(1) => Execution::Sequential,
        Some(n) => {
            #[cfg(feature = "parallel")]
            {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            let _ = n;
            Execution::Parallel
        }
        None => Execution::Parallel,
    };
    let cmd = Command {
        verb: cli.verb,
        ring: cli.ring,
        inputs: cli.inputs,
        options: Options {
            stages: cli.stages,
            weight_cap: cli.weight_cap,
            format: cli.format,
            exec,
            group: cli.group,
            max_dim: cli.max_dim,
            triples: cli.triples,
            forget_torsion: cli.forget_torsion,
            radius: cli.radius,
        },
    };
    match run(&cmd) {
        Ok(report) => {
            print!("{}", report.render(cmd.options.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
