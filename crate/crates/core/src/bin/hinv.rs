use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hecke_involutions::cli::{parse_star, run_command, Command, RunConfig, EXIT_USAGE};
use hecke_involutions::coxeter::DEFAULT_CAP;
use hecke_involutions::io::Format;
use hecke_involutions::verify::Suite;

/// Hecke modules on twisted involutions: tables, canonical bases and checks.
#[derive(Parser)]
#[command(name = "hinv", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// System descriptor (JSON).
    #[arg(long, global = true)]
    system: Option<PathBuf>,
    /// Override the diagram involution, e.g. "0,2,1".
    #[arg(long, global = true)]
    star: Option<String>,
    #[arg(long, global = true, default_value_t = 6)]
    maxlen: usize,
    /// Element cap for enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json or csv.
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// List elements up to the length bound.
    Enumerate {
        /// Only twisted involutions.
        #[arg(long)]
        twisted: bool,
    },
    /// bar(a_w).
    Bar { w: String },
    /// r-polynomial table.
    Rpoly,
    /// P± table with P and the P+/P- split.
    Ppm,
    /// Classical KL table.
    Kl,
    /// The canonical basis element A_w.
    Basis { w: String },
    /// Stable double cosets of W_K, K given as comma-separated labels.
    Cosets { k: String },
    /// Run a verification suite, or "all".
    Verify { suite: String },
    /// Compare P±(u) with P(-u) on affine double cosets.
    #[command(name = "scan-8-4")]
    Scan { l: Option<usize> },
    /// Closed forms for the coset of s_0 over the coset of 1.
    #[command(name = "check-8-6")]
    ClosedForms,
}

fn build(cli: Cli) -> Result<RunConfig, String> {
    let system = cli.system.ok_or("--system is required")?;
    let command = match cli.command {
        Cmd::Enumerate { twisted } => Command::Enumerate { twisted },
        Cmd::Bar { w } => Command::Bar { w },
        Cmd::Rpoly => Command::Rpoly,
        Cmd::Ppm => Command::Ppm,
        Cmd::Kl => Command::Kl,
        Cmd::Basis { w } => Command::Basis { w },
        Cmd::Cosets { k } => Command::Cosets { k },
        Cmd::Verify { suite } if suite == "all" => Command::Verify { suite: None },
        Cmd::Verify { suite } => Command::Verify { suite: Some(suite.parse::<Suite>().map_err(|e| e.to_string())?) },
        Cmd::Scan { l } => Command::Scan { max_len: l },
        Cmd::ClosedForms => Command::ClosedForms,
    };
    let mut cfg = RunConfig::new(system, command);
    cfg.star = cli.star.as_deref().map(parse_star).transpose().map_err(|e| e.to_string())?;
    cfg.max_len = cli.maxlen;
    cfg.cap = cli.cap;
    cfg.out = cli.out;
    cfg.format = cli.format.parse::<Format>().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match build(cli) {
        Ok(cfg) => ExitCode::from(run_command(&cfg) as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
