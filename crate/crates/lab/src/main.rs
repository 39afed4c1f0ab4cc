use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zakharov_lab::error::EXIT_CONFIG;
use zakharov_lab::{plotdata, run_experiment, Kind, LabError, LabResult};

#[derive(Parser)]
#[command(name = "zakharov-lab", version, about = "Zakharov system experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` configuration; defaults apply to absent keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory, `out/<kind>` by default.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    csv: PathBuf,
    /// Comma-separated column names, all columns when absent.
    #[arg(long, value_delimiter = ',')]
    columns: Vec<String>,
    /// Natural logarithm of every selected column.
    #[arg(long)]
    log: bool,
    /// Output file, stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
#[command(rename_all = "snake_case")]
enum Cmd {
    Conservation(RunArgs),
    ReductionRoundtrip(RunArgs),
    SplitScaling(RunArgs),
    BilinearProbe(RunArgs),
    KernelSupremumSweep(RunArgs),
    DuhamelVsSplitting(RunArgs),
    IntervalPipeline(RunArgs),
    GlobalGrowth(RunArgs),
    /// Whitespace-separated columns from a CSV.
    Plotdata(PlotArgs),
}

fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> LabError + '_ {
    move |source| LabError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn threads() -> LabResult<()> {
    let Ok(v) = std::env::var("ZK_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| LabError::Config(format!("ZK_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| LabError::Config(format!("thread pool: {e}")))
}

fn run(kind: Kind, a: RunArgs) -> LabResult<()> {
    let text = match &a.config {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|source| LabError::Config(format!("{}: {source}", p.display())))?),
        None => None,
    };
    let out = a.out.unwrap_or_else(|| PathBuf::from("out").join(kind.label()));
    let art = run_experiment(kind, text.as_deref(), a.seed, &out)?;
    for name in art.names() {
        println!("{}", out.join(name).display());
    }
    Ok(())
}

fn plot(a: PlotArgs) -> LabResult<()> {
    let cols: Vec<&str> = a.columns.iter().map(String::as_str).collect();
    let text = plotdata::emit_plotdata_file(&a.csv, &cols, a.log)?;
    match a.out {
        Some(p) => std::fs::write(&p, text).map_err(io_err(&p)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = threads().and_then(|()| match cli.cmd {
        Cmd::Conservation(a) => run(Kind::Conservation, a),
        Cmd::ReductionRoundtrip(a) => run(Kind::ReductionRoundtrip, a),
        Cmd::SplitScaling(a) => run(Kind::SplitScaling, a),
        Cmd::BilinearProbe(a) => run(Kind::BilinearProbe, a),
        Cmd::KernelSupremumSweep(a) => run(Kind::KernelSupremumSweep, a),
        Cmd::DuhamelVsSplitting(a) => run(Kind::DuhamelVsSplitting, a),
        Cmd::IntervalPipeline(a) => run(Kind::IntervalPipeline, a),
        Cmd::GlobalGrowth(a) => run(Kind::GlobalGrowth, a),
        Cmd::Plotdata(a) => plot(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            debug_assert!(code >= EXIT_CONFIG);
            ExitCode::from(code as u8)
        }
    }
}
