use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use std::path::PathBuf;
use std::process::ExitCode;
use wga_core::fixtures;
use wga_core::io::report::{render_text, run_file, Analysis, Report, Request};

#[derive(Parser)]
#[command(name = "wga", version, about = "Analyse alternating link diagrams on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// SLD files; several are processed in parallel.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks: alternation, colouring, primeness, representativity.
    Validate(Common),
    /// Twist number, checkerboard surfaces, guts and volume bounds.
    Invariants(Common),
    /// Angled chunk decompositions and their angle checks.
    Chunks(Common),
    /// Hyperbolicity, primeness and checkerboard surface geometry.
    Classify(Common),
    /// Slope lengths and Dehn filling certificates.
    Dehn {
        #[command(flatten)]
        common: Common,
        /// Link component the slopes live on.
        #[arg(long)]
        component: Option<usize>,
        /// Slope p/q; may be repeated.
        #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
        slope: Vec<String>,
        /// Also list every |q| threshold per component.
        #[arg(long)]
        all_thresholds: bool,
    },
    /// Print a bundled fixture as SLD, or list them.
    Fixture { name: Option<String> },
}

fn run(common: &Common, req: &Request) -> ExitCode {
    let reports: Vec<Report> = common.files.par_iter().map(|f| run_file(f, req)).collect();
    if common.json {
        let text = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&reports).expect("reports always serialise")
        };
        println!("{text}");
    } else {
        for r in &reports {
            print!("{}", render_text(r));
        }
    }
    for r in reports.iter().filter(|r| !r.ok()) {
        for e in &r.errors {
            eprintln!("{}: {e}", r.source.as_deref().unwrap_or("input"));
        }
    }
    if reports.iter().all(Report::ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate(c) => run(&c, &Request::only(Analysis::Validate)),
        Command::Invariants(c) => run(&c, &Request::only(Analysis::Invariants)),
        Command::Chunks(c) => run(&c, &Request::only(Analysis::Chunks)),
        Command::Classify(c) => run(&c, &Request::only(Analysis::Classify)),
        Command::Dehn { common, component, slope, all_thresholds } => {
            let req = Request { analyses: vec![Analysis::Dehn], component, slopes: slope, all_thresholds };
            run(&common, &req)
        }
        Command::Fixture { name: None } => {
            for n in fixtures::NAMES {
                println!("{n}");
            }
            ExitCode::SUCCESS
        }
        Command::Fixture { name: Some(n) } => match fixtures::source(&n) {
            Some(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("no fixture named {n}; try `wga fixture` for the list");
                ExitCode::FAILURE
            }
        },
    }
}
