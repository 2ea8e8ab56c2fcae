use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use polyadic::io::read_input;
use polyadic::profinite::TowerSpec;
use polyadic::suite::{run_suite, Report};
use polyadic::{Error, Result};
use polyadic_cli::{catalog_command, catalog_json, exit_code, tower_command, verify};

#[derive(Parser)]
#[command(name = "polyadic", version, about = "Finite polyadic groups: verification, catalogs and check suites")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add wall-clock time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms, skew elements and Dörnte identities of a polyadic group file.
    Verify { file: PathBuf },
    /// Enumerate polyadic groups up to isomorphism.
    Catalog {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        max_order: usize,
        /// Write the full catalog as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named check suite over input files or its default inputs.
    Suite {
        name: String,
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
        /// Group class for pro-x and poln-closure (abelian, nilpotent, solvable or <p>-group).
        #[arg(long)]
        class: Option<String>,
    },
    /// Build and validate a tower of finite polyadic groups.
    Tower {
        #[arg(long, value_enum)]
        kind: TowerKind,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, allow_negative_numbers = true)]
        sign: i8,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TowerKind {
    #[value(name = "cyclic_pk", alias = "cyclic-pk")]
    CyclicPk,
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Verify { file } => verify(&file),
        Command::Catalog { arity, max_order, out } => {
            let (report, catalog) = catalog_command(arity, max_order)?;
            if let Some(out) = out {
                let text =
                    serde_json::to_string_pretty(&catalog_json(&catalog)).map_err(|e| Error::Parse(e.to_string()))?;
                std::fs::write(&out, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
            }
            Ok(report)
        }
        Command::Suite { name, inputs, class } => {
            let loaded = inputs
                .iter()
                .map(|path| read_input(path).map(|input| (path.display().to_string(), input)))
                .collect::<Result<Vec<_>>>()?;
            run_suite(&name, loaded, class.as_deref())
        }
        Command::Tower { kind: TowerKind::CyclicPk, p, depth, sign, b, arity } => {
            tower_command(&TowerSpec::CyclicPk { p, depth, sign, b, arity })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut outcome = run(cli.command);
    if let (Ok(report), true) = (&mut outcome, cli.timing) {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let code = exit_code(&outcome);
    match outcome {
        Ok(report) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
            println!("{}", text.expect("reports serialize"));
        }
        Err(e) => {
            let body = serde_json::json!({"error": e.to_string()});
            let text = if cli.pretty { serde_json::to_string_pretty(&body) } else { serde_json::to_string(&body) };
            eprintln!("{}", text.expect("errors serialize"));
        }
    }
    ExitCode::from(code as u8)
}
