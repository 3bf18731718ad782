//! Command-line front end. Exit codes: 0 when every requested check is
//! clean, 1 when violations were found, 2 on usage, parse, or resolution
//! errors, 3 on an internal consistency failure.

mod commands;
mod render;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rbhom", version, about = "Exact checks and constructions for operator-family twisted algebras over Q(lambda)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the appropriate checker on every block of a file.
    Check {
        file: PathBuf,
    },
    /// Assemble the unified product of a datum file and write it out.
    Product {
        #[arg(long)]
        datum: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Assemble the bicrossed product of a matched-pair file.
    Bicrossed {
        #[arg(long)]
        pair: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Flag datum tooling for one-dimensional extensions.
    Flag {
        #[command(subcommand)]
        cmd: FlagCmd,
    },
    /// Verify every classification row on seeded instantiations.
    Table2 {
        /// Seed for the constraint-respecting parameter draws.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Instantiations per row.
        #[arg(long, default_value_t = 3)]
        trials: u32,
    },
    /// Reproduce the matched-pair action patterns from the fixed grid.
    Table3,
    /// Deformation map tooling.
    Deform {
        #[command(subcommand)]
        cmd: DeformCmd,
    },
    /// Check a witness pair between the datums of two files.
    Equiv {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Witness map into the base: column-major scalar list.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Witness automorphism of the complement: column-major list.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
}

#[derive(Subcommand)]
enum FlagCmd {
    /// Verify one classification row, either on explicit parameters or on
    /// seeded draws.
    Verify {
        #[arg(long)]
        row: String,
        /// Parameter assignment name=value (scalar literal grammar).
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: u32,
    },
    /// Enumerate all flag datums over a finite grid file.
    Enumerate {
        #[arg(long)]
        grid: PathBuf,
    },
}

#[derive(Subcommand)]
enum DeformCmd {
    /// Check a deformation map against its datum.
    Check {
        #[arg(long)]
        datum: PathBuf,
        /// Map entries, column-major scalar list (when the file has no
        /// deformation block).
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
    /// Solve the one-dimensional deformation conditions exactly.
    Solve {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
    /// Count equivalence classes of the solved deformation values.
    Index {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
}

/// Outcome of a command body: clean, violations found, or a usage-level
/// failure already reported.
pub enum Outcome {
    Clean,
    Violations,
}

#[derive(Debug)]
pub enum CmdError {
    /// Parse, resolution, file, or argument problems: exit 2.
    Usage(String),
    /// Internal consistency failure: exit 3.
    Internal(String),
}

impl From<rbhom_io::IoError> for CmdError {
    fn from(e: rbhom_io::IoError) -> CmdError {
        CmdError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer of our stdout goes away, like any
    // other pipeline-friendly tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| run(cli));
    match result {
        Ok(Ok(Outcome::Clean)) => ExitCode::from(0),
        Ok(Ok(Outcome::Violations)) => ExitCode::from(1),
        Ok(Err(CmdError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(CmdError::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CmdError> {
    match cli.cmd {
        Cmd::Check { file } => commands::check(&file),
        Cmd::Product { datum, output } => commands::product(&datum, &output),
        Cmd::Bicrossed { pair, output } => commands::bicrossed(&pair, &output),
        Cmd::Flag { cmd } => match cmd {
            FlagCmd::Verify { row, set, seed, trials } => {
                commands::flag_verify(&row, &set, seed, trials)
            }
            FlagCmd::Enumerate { grid } => commands::flag_enumerate(&grid),
        },
        Cmd::Table2 { seed, trials } => commands::table2(seed, trials),
        Cmd::Table3 => commands::table3(),
        Cmd::Deform { cmd } => match cmd {
            DeformCmd::Check { datum, d, set } => commands::deform_check(&datum, d.as_deref(), &set),
            DeformCmd::Solve { datum, set } => commands::deform_solve(&datum, &set),
            DeformCmd::Index { datum, set } => commands::deform_index(&datum, &set),
        },
        Cmd::Equiv { left, right, g, h } => commands::equiv(&left, &right, &g, &h),
    }
}
