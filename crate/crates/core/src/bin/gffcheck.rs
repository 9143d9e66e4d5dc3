use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gffcheck::cli::{run, Command, Input, RunConfig, EXIT_INPUT};
use gffcheck::spec_io::Format;

/// Exact verification of indefinite metric g.f.f-manifolds.
#[derive(Parser, Debug)]
#[command(name = "gffcheck", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Axioms, class and space-form constant.
    Classify(Common),
    /// Christoffel symbols, curvature symmetries and plane curvatures.
    Curvature(Common),
    /// Every identity suite; exit 0 iff no verdict fails.
    Verify(Common),
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Built-in structure: example1, example2 or example3.
    #[arg(long, conflicts_with = "path")]
    fixture: Option<String>,
    /// Definition file.
    path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Fmt::Text)]
    format: Fmt,
    /// `name=value,...` for every coordinate, or `0`.
    #[arg(long)]
    point: Option<String>,
    /// `X=<vector>;Y=<vector>` using dx-style frame names and Z1..Zr.
    #[arg(long)]
    plane: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    let (command, common) = match args.command {
        Cmd::Classify(c) => (Command::Classify, c),
        Cmd::Curvature(c) => (Command::Curvature, c),
        Cmd::Verify(c) => (Command::Verify, c),
    };
    let input = match (common.fixture, common.path) {
        (Some(f), None) => Input::Fixture(f),
        (None, Some(p)) => Input::Path(p),
        _ => {
            eprintln!("error: give either --fixture <name> or a definition file");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let cfg = RunConfig {
        input,
        command,
        format: match common.format {
            Fmt::Text => Format::Text,
            Fmt::Json => Format::Json,
        },
        point: common.point,
        plane: common.plane,
    };
    let out = run(&cfg);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
