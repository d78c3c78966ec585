use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use skl::scenario::{list_presets, preset, run_to_dir, Scenario, DEFAULT_OUT};

#[derive(Parser)]
#[command(name = "skl", version, about = "Run spectral Krylov scenarios and write JSON/CSV reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunOpts {
    /// Output root; reports go to <DIR>/<scenario name>/.
    #[arg(long, env = "SKL_OUT", default_value = DEFAULT_OUT)]
    out: PathBuf,
    /// Overrides the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario document.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run a shipped preset.
    Preset {
        name: String,
        #[command(flatten)]
        opts: RunOpts,
        /// Print the preset document instead of running it.
        #[arg(long)]
        print: bool,
    },
    /// List the shipped presets.
    List,
    /// Check a scenario document without running it.
    Validate { scenario: PathBuf },
}

fn load(path: &PathBuf) -> skl::Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    let sc = Scenario::from_json(&text)?;
    sc.build_measure()?;
    Ok(sc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { scenario, opts } => {
            load(&scenario).and_then(|sc| run_to_dir(&sc, &opts.out, opts.seed)).map(|p| println!("{}", p.display()))
        }
        Command::Preset { name, opts, print } => preset(&name).and_then(|sc| {
            if print {
                println!("{}", sc.to_json());
                Ok(())
            } else {
                run_to_dir(&sc, &opts.out, opts.seed).map(|p| println!("{}", p.display()))
            }
        }),
        Command::List => {
            for (name, description) in list_presets() {
                println!("{name:<24} {description}");
            }
            Ok(())
        }
        Command::Validate { scenario } => load(&scenario).map(|sc| println!("ok: {} ({})", sc.name, sc.task.kind())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("skl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
