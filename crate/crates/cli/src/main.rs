use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use paritybus_cli::output::{manifest_toml, write_atomic};
use paritybus_cli::{check, execute, registry, CliError, ExperimentConfig};

/// Thread count for parallel sweeps.
const THREADS_VAR: &str = "PARITYBUS_THREADS";

#[derive(Parser)]
#[command(name = "paritybus", version, about = "Reproduce quantum Rabi bus experiments as CSV")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a config file or a bundled experiment by name.
    Run {
        config: String,
        /// Output directory; overrides the config's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List bundled experiments.
    List,
    /// Rerun with doubled truncation and report the largest change per column.
    Check { config: String },
}

fn load(arg: &str) -> Result<(ExperimentConfig, String), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let cfg = ExperimentConfig::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{arg}: {m}")),
            e => e,
        })?;
        return Ok((cfg, arg.to_string()));
    }
    match registry::get(arg) {
        Some(cfg) => Ok((cfg?, format!("bundled:{arg}"))),
        None => Err(CliError::Config(format!("`{arg}` is neither a file nor a bundled experiment"))),
    }
}

fn run(arg: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    let (cfg, source) = load(arg)?;
    let resolved = cfg.resolve()?;
    let result = execute(&resolved)?;
    let mut files = Vec::new();
    for t in &result.tables {
        files.push((t.file_name(&resolved.name), t.to_csv()?));
    }
    let manifest = manifest_toml(&resolved, &source, &result)?;
    files.push((format!("{}.manifest.toml", resolved.name), manifest.into_bytes()));
    let dir = out
        .or_else(|| cfg.output.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results"));
    for p in write_atomic(&dir, &files)? {
        println!("wrote {}", p.display());
    }
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn list() -> Result<(), CliError> {
    let rows = registry::table()?;
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let kw = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    for (name, kind, desc) in rows {
        println!("{name:width$}  {kind:kw$}  {desc}");
    }
    Ok(())
}

fn check_cmd(arg: &str) -> Result<(), CliError> {
    let (cfg, _) = load(arg)?;
    let resolved = cfg.resolve()?;
    let what = match resolved.kind {
        paritybus_cli::Kind::Transmon => "n_max",
        _ => "n_fock",
    };
    println!("{}: max |Δ| with {what} doubled", resolved.name);
    for d in check(&resolved)? {
        match d.max_abs {
            Some(x) => println!("{}  {}  {x:.3e}", d.file, d.column),
            None => println!("{}  {}  row count changed", d.file, d.column),
        }
    }
    Ok(())
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("{THREADS_VAR}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = init_threads().and_then(|()| match cli.command {
        Command::Run { config, out } => run(&config, out),
        Command::List => list(),
        Command::Check { config } => check_cmd(&config),
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
