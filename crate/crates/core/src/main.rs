use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use maxcalc::cli::{execute, parse_script, run_source, Outcome, RunOptions};
use maxcalc::constructions::{call_names, resolve_call, Params};
use maxcalc::generators::SurfaceName;
use maxcalc::session::{Session, DEFAULT_TRUNC};

#[derive(Parser)]
#[command(name = "maxcalc", version, about = "Propagate maximality of real varieties through constructions")]
struct Cli {
    /// Largest series order any statement may request.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNC)]
    trunc: usize,
    /// Treat rule assumptions as errors.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script and print its report.
    Run { file: PathBuf },
    /// Print the Hilbert-scheme series of a surface.
    Series {
        /// A catalog name (P2, P1xP1, B1) or b0,b1,b2,b3,b4.
        #[arg(long)]
        surface: String,
        #[arg(long)]
        upto: usize,
    },
    /// List generators, constructions and catalog surfaces.
    Catalog,
    /// Run a script and print the proof trace of one variety.
    Trace {
        file: PathBuf,
        #[arg(long = "var")]
        var: String,
    },
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("maxcalc: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn surface_betti(spec: &str) -> Result<[u64; 5], String> {
    if !spec.contains(',') {
        return SurfaceName::parse_plain(spec).map(|s| s.betti()).map_err(|e| e.to_string());
    }
    let parts: Vec<u64> = spec
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad Betti number '{x}': {e}")))
        .collect::<Result<_, _>>()?;
    <[u64; 5]>::try_from(parts).map_err(|p| format!("expected five Betti numbers, got {}", p.len()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        strict: cli.strict,
        trunc: cli.trunc,
    };
    match cli.command {
        Command::Run { file } => {
            let src = match read(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let report = run_source(&src, opts);
            print!("{}", report.text);
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Command::Series { surface, upto } => {
            let b = match surface_betti(&surface) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("maxcalc: {e}");
                    return ExitCode::from(2);
                }
            };
            match Session::new().with_trunc(cli.trunc).series(b, upto) {
                Ok(series) => {
                    for (n, c) in series.coefficients().iter().enumerate().take(upto + 1) {
                        println!("q^{n}: total {}  {c}", c.total());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("maxcalc: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Catalog => {
            for name in call_names() {
                if let Ok(rule) = resolve_call(name, &Params::new()) {
                    let kind = if rule.is_generator() { "generator" } else { "construction" };
                    println!("{name:<24} {kind:<12} {}", rule.citation());
                }
            }
            println!();
            for s in [SurfaceName::P2, SurfaceName::P1xP1, SurfaceName::B1] {
                let b = s.betti();
                println!("surface {:<8} b = ({}, {}, {}, {}, {})", s.to_string(), b[0], b[1], b[2], b[3], b[4]);
            }
            ExitCode::SUCCESS
        }
        Command::Trace { file, var } => {
            let src = match read(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let script = match parse_script(&src) {
                Ok(s) => s,
                Err(d) => {
                    eprintln!("maxcalc: parse error: {d}");
                    return ExitCode::from(2);
                }
            };
            let (report, session) = execute(&script, opts);
            if report.outcome == Outcome::EngineError {
                eprint!("{}", report.text);
                return ExitCode::from(2);
            }
            match session.trace_for(&var) {
                Ok(lines) => {
                    for l in lines {
                        println!("{l}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("maxcalc: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
