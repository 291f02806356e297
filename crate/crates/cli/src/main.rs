use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use skewgba::{load, run, Command, RingSpec};

#[derive(Parser)]
#[command(name = "skewgba", version, about = "Verify skew group rings of partial actions on fixtures")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Word-length bound for enumerations; overrides the fixture.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Randomized trials; overrides the fixture.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// integers, mod:n or rationals; overrides the fixture.
    #[arg(long, global = true, value_parser = RingSpec::parse)]
    ring: Option<RingSpec>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Semigroup axioms, grading purity and labelled-space axioms.
    Validate { path: PathBuf },
    /// Filters, ultrafilters and tight filters of a semilattice.
    Tight { path: PathBuf },
    /// Graded dimensions, units and the product identities.
    Algebra { path: PathBuf },
    /// Leavitt or labelled Cuntz-Krieger relations.
    Ck { path: PathBuf },
    /// Compare the algebra with that of the unitized semigroup.
    Unitize { path: PathBuf },
    /// Partial-action axioms, orthogonality and semi-saturation.
    ActionCheck { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, path) = match cli.command {
        Cmd::Validate { path } => (Command::Validate, path),
        Cmd::Tight { path } => (Command::Tight, path),
        Cmd::Algebra { path } => (Command::Algebra, path),
        Cmd::Ck { path } => (Command::Ck, path),
        Cmd::Unitize { path } => (Command::Unitize, path),
        Cmd::ActionCheck { path } => (Command::ActionCheck, path),
    };
    let result = load(&path).and_then(|mut fx| {
        let o = &mut fx.options;
        o.depth = cli.depth.unwrap_or(o.depth);
        o.trials = cli.trials.unwrap_or(o.trials);
        o.seed = cli.seed.unwrap_or(o.seed);
        if let Some(r) = cli.ring {
            o.ring = r;
        }
        run(cmd, &fx)
    });
    match result {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
