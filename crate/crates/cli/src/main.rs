mod commands;
mod workspace;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Output, UsageError};
use workspace::Workspace;

#[derive(Parser)]
#[command(name = "nchrr", version, about = "Exact Euler classes, pairings and Riemann-Roch checks for finite-dimensional DG algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Workspace JSON file
    #[arg(long)]
    workspace: String,
    /// Emit JSON (the default)
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit plain text
    #[arg(long)]
    text: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `q` or `fp:P`; overrides the workspace field
    #[arg(long)]
    field: Option<String>,
    /// Longest bar word considered is `bar_cap - 1` letters
    #[arg(long, default_value_t = 4)]
    bar_cap: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every structural validator
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// chi(M, N) against the Euler class pairing and the tensor formula
    Hrr {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        n: Option<String>,
    },
    /// Euler classes of modules
    Eu {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
    },
    /// Pair two Hochschild cycles
    Pair {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
    },
    /// Hochschild homology dimensions
    Hh {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        algebra: Option<String>,
        /// Total degree; classical HH_n sits in degree -n
        #[arg(long = "degree", allow_negative_numbers = true, default_values_t = [0, -1])]
        degrees: Vec<i64>,
    },
    /// Ringel's form against chi on directed algebras
    Ringel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Orbifold Gram matrices of groups acting on V
    Orbifold {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        group: Option<String>,
    },
    /// The trace pairing identity on Frobenius algebras
    Frobenius {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate { common }
            | Command::Hrr { common, .. }
            | Command::Eu { common, .. }
            | Command::Pair { common, .. }
            | Command::Hh { common, .. }
            | Command::Ringel { common, .. }
            | Command::Orbifold { common, .. }
            | Command::Frobenius { common, .. } => common,
        }
    }
}

fn run(command: &Command, ws: &Workspace) -> Result<Output, UsageError> {
    let c = command.common();
    match command {
        Command::Validate { .. } => commands::validate(ws),
        Command::Hrr { m, n, .. } => commands::hrr(ws, m.as_deref(), n.as_deref()),
        Command::Eu { module, .. } => commands::eu(ws, module.as_deref()),
        Command::Pair { left, right, .. } => commands::pair_cmd(ws, left.as_deref(), right.as_deref()),
        Command::Hh { algebra, degrees, .. } => commands::hh(ws, algebra.as_deref(), degrees, c.bar_cap),
        Command::Ringel { quiver, trials, .. } => commands::ringel(ws, quiver.as_deref(), *trials, c.seed),
        Command::Orbifold { group, .. } => commands::orbifold(ws, group.as_deref()),
        Command::Frobenius { name, trials, .. } => commands::frobenius(ws, name.as_deref(), *trials, c.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();
    let ws = match Workspace::read(&common.workspace, common.field.as_deref()) {
        Ok(ws) => ws,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    // a failed validator only matters to commands that need the object
    if !matches!(cli.command, Command::Validate { .. }) {
        for f in &ws.failures {
            eprintln!("warning: {} skipped: {}", f.object, f.message);
        }
    }
    let out = match run(&cli.command, &ws) {
        Ok(out) => out,
        Err(UsageError(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = if common.text {
        out.text
    } else {
        serde_json::to_string_pretty(&out.json).expect("report serializes") + "\n"
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
