//! `workbench`: lattice and cube inspection and the seeded verification suite.
//!
//! Exit codes: 0 on success, 1 when a checked property is violated, 2 on bad input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kan_vect::Exec;
use workbench_cli::commands::{self, InputError, Output};
use workbench_cli::config::SUPPORTED_GROUPS;
use workbench_cli::{replay, run_suite, RunOptions, SuiteConfig, WitnessFile, PROPERTIES};

#[derive(Parser)]
#[command(
    name = "workbench",
    version,
    about = "Parametrised cubes, excision and coefficient systems over orbit categories"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a lattice file.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Inspect the cube of a map of finite G-sets.
    #[command(subcommand)]
    Cube(CubeCommand),
    /// Run or replay the verification suite.
    #[command(subcommand)]
    Suite(SuiteCommand),
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Check distributivity, complements and the lattice laws.
    Verify { file: PathBuf },
    /// Split the lattice as a product along an element and its complement.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// List the faces through an element.
    Faces {
        file: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Restrict an excisable structure to the lattice below an element.
    Excisable {
        file: PathBuf,
        #[arg(long)]
        element: String,
        /// One of singletons, spherical, bottom or whole.
        #[arg(long, default_value = "singletons")]
        sigma: String,
    },
}

#[derive(Args)]
struct CubeArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["trivial", "C2", "C3", "C4", "S3"]))]
    group: String,
    /// Orbits mapped to the point, joined by `+`; `free` names the free orbit.
    #[arg(long)]
    w: String,
}

#[derive(Subcommand)]
enum CubeCommand {
    /// Fibre table of the cube.
    Build(CubeArgs),
    /// Global points and per-level point counts.
    Points(CubeArgs),
    /// The singleton inclusion per level.
    Singletons(CubeArgs),
    /// Restrict along an orbit mapped to the point.
    Basechange {
        #[command(flatten)]
        cube: CubeArgs,
        #[arg(long)]
        along: String,
    },
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Run the selected properties.
    Run(RunArgs),
    /// Feed a witness file back through the property that produced it.
    Replay { witness: PathBuf },
    /// List property names.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Groups to test; repeat or separate with commas.
    #[arg(long, value_delimiter = ',', value_parser = clap::builder::PossibleValuesParser::new(SUPPORTED_GROUPS))]
    group: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = workbench_cli::config::MAX_CUBE_DIM)]
    max_cube_dim: usize,
    /// Stage cap for the excisive tower.
    #[arg(long, default_value_t = 8)]
    stage_cap: usize,
    /// Properties to run, separated by commas.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Directory for witness files.
    #[arg(long, default_value = "workbench-witnesses")]
    witness_dir: PathBuf,
    /// Include wall-clock timings, which makes reports machine dependent.
    #[arg(long)]
    timings: bool,
    /// Evaluate properties one after another.
    #[arg(long)]
    sequential: bool,
}

enum Outcome {
    Done { text: String, json: String, violated: bool },
    Input(String),
}

fn emit(out: Output) -> Outcome {
    let json = serde_json::to_string_pretty(&out.value).expect("values serialize");
    Outcome::Done { text: out.text, json, violated: out.violated }
}

fn from_command(r: Result<Output, InputError>) -> Outcome {
    match r {
        Ok(out) => emit(out),
        Err(e) => Outcome::Input(e.0),
    }
}

fn lattice(cmd: LatticeCommand) -> Outcome {
    let run = || -> Result<Output, InputError> {
        match cmd {
            LatticeCommand::Verify { file } => commands::lattice_verify(&commands::load_lattice(&file)?),
            LatticeCommand::Decompose { file, element } => {
                let l = commands::load_lattice(&file)?;
                commands::lattice_decompose(&l, commands::parse_element(&l, &element)?)
            }
            LatticeCommand::Faces { file, element } => {
                let l = commands::load_lattice(&file)?;
                commands::lattice_faces(&l, commands::parse_element(&l, &element)?)
            }
            LatticeCommand::Excisable { file, element, sigma } => {
                let l = commands::load_lattice(&file)?;
                commands::lattice_excisable(&l, commands::parse_element(&l, &element)?, &sigma)
            }
        }
    };
    from_command(run())
}

fn cube(cmd: CubeCommand) -> Outcome {
    from_command(match cmd {
        CubeCommand::Build(a) => commands::cube_build(&a.group, &a.w),
        CubeCommand::Points(a) => commands::cube_points(&a.group, &a.w),
        CubeCommand::Singletons(a) => commands::cube_singletons(&a.group, &a.w),
        CubeCommand::Basechange { cube, along } => commands::cube_basechange(&cube.group, &cube.w, &along),
    })
}

fn suite(cmd: SuiteCommand) -> Outcome {
    match cmd {
        SuiteCommand::List => {
            let text = PROPERTIES.join("\n") + "\n";
            Outcome::Done {
                json: serde_json::to_string_pretty(&PROPERTIES).expect("names serialize"),
                text,
                violated: false,
            }
        }
        SuiteCommand::Replay { witness } => {
            let result = WitnessFile::load(&witness).and_then(|w| replay(&w));
            match result {
                Ok(r) => Outcome::Done {
                    text: format!(
                        "{}: {} ({})\n",
                        r.property,
                        if r.reproduced { "failure reproduced" } else { "not reproduced" },
                        r.detail
                    ),
                    json: serde_json::to_string_pretty(&r).expect("replays serialize"),
                    violated: r.reproduced,
                },
                Err(e) => Outcome::Input(e),
            }
        }
        SuiteCommand::Run(a) => {
            let defaults = SuiteConfig::default();
            let cfg = SuiteConfig {
                groups: if a.group.is_empty() { defaults.groups.clone() } else { a.group },
                seed: a.seed,
                max_cube_dim: a.max_cube_dim,
                stage_cap: a.stage_cap,
                only: a.only,
                ..defaults
            };
            let opts = RunOptions {
                witness_dir: Some(a.witness_dir),
                timings: a.timings,
                exec: if a.sequential { Exec::Sequential } else { Exec::Parallel },
            };
            match run_suite(&cfg, &opts) {
                Ok(report) => {
                    Outcome::Done { text: report.to_text(), json: report.to_json(), violated: !report.passed() }
                }
                Err(e) => Outcome::Input(e),
            }
        }
    }
}

fn write(out: Option<&Path>, body: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Lattice(c) => lattice(c),
        Command::Cube(c) => cube(c),
        Command::Suite(c) => suite(c),
    };
    match outcome {
        Outcome::Input(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Outcome::Done { text, json, violated } => {
            let body = match cli.format {
                Format::Text => text,
                Format::Json => json + "\n",
            };
            if let Err(e) = write(cli.out.as_deref(), &body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(violated))
        }
    }
}
