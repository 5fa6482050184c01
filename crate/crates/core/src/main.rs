use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::error;

use mllon::artifact::ExportFormat;
use mllon::commands::{self, RunConfig};
use mllon::metrics::MetricsOptions;
use mllon::{EnumerateOptions, MllonConfig, OperatorKind};

#[derive(Parser)]
#[command(name = "mllon", version, about = "Local optima networks of NK landscapes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write NK instance files, one per (k, seed).
    Generate(GenerateArgs),
    /// Enumerate basins and build the LON of one instance.
    Lon(LonArgs),
    /// Join LON artifacts of one instance into a multi-layer network.
    Mllon(MllonArgs),
    /// Compute metrics and point clouds of a LON or multi-layer artifact.
    Metrics(MetricsArgs),
    /// Run the full experiment for every K.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, default_value_t = 18)]
    n: usize,
    /// Epistasis degrees, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,4,6,8,10,12,14,16")]
    k: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Instances per K; replicate r uses seed + r.
    #[arg(long, default_value_t = 1)]
    replicates: usize,
}

#[derive(Args)]
struct MllonConfigArgs {
    #[arg(long, default_value_t = 0.0)]
    p_sl: f64,
    #[arg(long, default_value_t = 1.0)]
    p_co_mirror: f64,
    #[arg(long, default_value_t = 0.0)]
    p_co_diff: f64,
}

impl MllonConfigArgs {
    fn config(&self) -> MllonConfig {
        MllonConfig { p_sl: self.p_sl, p_co_mirror: self.p_co_mirror, p_co_diff: self.p_co_diff }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, env = "MLLON_OUT", default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct LonArgs {
    /// Instance file written by `generate`.
    instance: PathBuf,
    #[arg(long, default_value = "bitflip")]
    operator: OperatorKind,
    #[arg(long, env = "MLLON_OUT", default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Lift the n <= 28 capacity guard.
    #[arg(long)]
    allow_large: bool,
    #[arg(long, value_delimiter = ',', default_value = "csv")]
    export: Vec<ExportFormat>,
}

#[derive(Args)]
struct MllonArgs {
    /// LON artifact directories, one per layer.
    #[arg(required = true)]
    layers: Vec<PathBuf>,
    #[command(flatten)]
    config: MllonConfigArgs,
    #[arg(long, env = "MLLON_OUT", default_value = "out")]
    out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "csv,graphml")]
    export: Vec<ExportFormat>,
}

#[derive(Args)]
struct MetricsArgs {
    /// LON or multi-layer artifact directory.
    network: PathBuf,
    #[arg(long, env = "MLLON_OUT", default_value = "out")]
    out: PathBuf,
    /// Skip the all-pairs shortest path length.
    #[arg(long)]
    no_path_lengths: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_delimiter = ',', default_value = "bitflip,swap")]
    operators: Vec<OperatorKind>,
    #[command(flatten)]
    config: MllonConfigArgs,
    #[arg(long, env = "MLLON_OUT", default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_delimiter = ',', default_value = "csv")]
    export: Vec<ExportFormat>,
    #[arg(long)]
    allow_large: bool,
    #[arg(long)]
    no_path_lengths: bool,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let cfg = RunConfig {
                n: a.instance.n,
                ks: a.instance.k,
                seed: a.instance.seed,
                replicates: a.instance.replicates,
                out_dir: a.out,
                ..RunConfig::default()
            };
            for path in commands::cmd_generate(&cfg)? {
                println!("{}", path.display());
            }
        }
        Command::Lon(a) => {
            if a.workers == 0 {
                anyhow::bail!("--workers must be at least 1");
            }
            let opts = EnumerateOptions { workers: a.workers, allow_large: a.allow_large };
            let outcome = commands::cmd_lon(&a.instance, a.operator, &a.out, &opts, &a.export)?;
            println!("nv={} ne={}", outcome.lon.nv(), outcome.lon.ne());
        }
        Command::Mllon(a) => {
            let m = commands::cmd_mllon(&a.layers, a.config.config(), &a.out, &a.export)?;
            println!(
                "nv={} ne={} mirror_pairs={} overlap_pairs={}",
                m.num_supra_nodes(),
                m.num_supra_edges(),
                m.mirror_edges.len() / 2,
                m.overlap_edges.len() / 2
            );
        }
        Command::Metrics(a) => {
            let opts = MetricsOptions { path_lengths: !a.no_path_lengths };
            let outcome = commands::cmd_metrics(&a.network, &a.out, &opts)?;
            println!("{}", serde_json::to_string_pretty(&outcome.report)?);
        }
        Command::Sweep(a) => {
            let cfg = RunConfig {
                n: a.instance.n,
                ks: a.instance.k,
                seed: a.instance.seed,
                replicates: a.instance.replicates,
                operators: a.operators,
                mllon: a.config.config(),
                out_dir: a.out,
                workers: a.workers,
                export: a.export,
                allow_large: a.allow_large,
                path_lengths: !a.no_path_lengths,
            };
            let rows = commands::cmd_sweep(&cfg)?;
            println!("{} rows written to {}", rows.len(), cfg.out_dir.join("metrics.csv").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e:#}");
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
