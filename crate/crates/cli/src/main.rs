use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use twoline::io::{emit_instance, generate, parse_instance, CenterSpec, GenSpec, LayoutKind, ResultFile, RunStats};
use twoline::optimizer::{decide, solve_with, SolveOptions};
use twoline::{verify_cover, Instance};

mod render;

#[derive(Parser)]
#[command(name = "twoline", version, about = "k-center with centers on two lines")]
struct Cli {
    /// Report elapsed_ms as 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test whether k centers of radius R suffice.
    Decide {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        radius: f64,
        /// Print the result file instead of a one-line summary.
        #[arg(long)]
        json: bool,
    },
    /// Find the smallest radius and its centers.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Binary search over pairwise touching radii (parallel layouts only).
        #[arg(long)]
        exact_candidates: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "parallel")]
        kind: LayoutKind,
        #[arg(long, default_value_t = 10.0)]
        spread: f64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Parallel only: weights in [0.5, 4).
        #[arg(long)]
        weighted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the deciders on generated instances and print CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [8192usize, 16384, 32768, 65536, 131072])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [LayoutKind::Parallel])]
        kinds: Vec<LayoutKind>,
    },
    /// Draw an instance and optional solution as SVG.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        result: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Input problems exit with 2, unlike infeasibility.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn elapsed(start: Instant, no_timing: bool) -> f64 {
    if no_timing {
        0.0
    } else {
        start.elapsed().as_secs_f64() * 1e3
    }
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    match cli.cmd {
        Cmd::Decide { instance, radius, json } => {
            let inst = read_instance(&instance)?;
            if !radius.is_finite() || radius < 0.0 {
                return Err(anyhow::anyhow!("radius must be finite and non-negative, got {radius}").into());
            }
            let start = Instant::now();
            let res = decide(&inst, radius);
            let file = ResultFile {
                feasible: res.feasible,
                radius: Some(radius),
                min_count: res.min_count,
                centers: res.solution.iter().flat_map(|s| &s.centers).map(|c| CenterSpec { x: c.x, y: c.y }).collect(),
                stats: RunStats { n: inst.points.len(), decider_calls: 1, elapsed_ms: elapsed(start, cli.no_timing) },
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&file)?);
            } else {
                let count = res.min_count.map(|m| format!(" min_count={m}")).unwrap_or_default();
                println!("{}{count}", if res.feasible { "feasible" } else { "infeasible" });
            }
            Ok(if res.feasible { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Solve { instance, tol, exact_candidates, out } => {
            let inst = read_instance(&instance)?;
            if tol.is_nan() || tol <= 0.0 {
                return Err(anyhow::anyhow!("tolerance must be positive, got {tol}").into());
            }
            let start = Instant::now();
            let rep = solve_with(&inst, SolveOptions { rel_tol: tol, exact_candidates });
            let stats = RunStats {
                n: inst.points.len(),
                decider_calls: rep.decider_calls,
                elapsed_ms: elapsed(start, cli.no_timing),
            };
            let file = match &rep.solution {
                Some(sol) => {
                    if !verify_cover(&inst, sol.radius, &sol.centers) {
                        eprintln!("warning: centers fail verification at radius {}", sol.radius);
                    }
                    ResultFile {
                        feasible: true,
                        radius: Some(sol.radius),
                        min_count: rep.min_count,
                        centers: sol.centers.iter().map(|c| CenterSpec { x: c.x, y: c.y }).collect(),
                        stats,
                    }
                }
                None => ResultFile { feasible: false, radius: None, min_count: None, centers: Vec::new(), stats },
            };
            write_or_print(out.as_deref(), &serde_json::to_string_pretty(&file)?)?;
            Ok(if file.feasible { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Gen { n, seed, kind, spread, k, weighted, out } => {
            if weighted && kind != LayoutKind::Parallel {
                return Err(anyhow::anyhow!("--weighted needs --kind parallel").into());
            }
            let inst = generate(&GenSpec { n, seed, kind, spread, k, weighted });
            write_or_print(out.as_deref(), &emit_instance(&inst))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench { sizes, seed, repeats, kinds } => {
            let rows = twoline_bench::run_scaling(&kinds, &sizes, seed, repeats);
            print!("{}", twoline_bench::to_csv(&rows));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Render { instance, result, out } => {
            let inst = read_instance(&instance)?;
            let res: Option<ResultFile> = match result {
                Some(p) => {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    Some(serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?)
                }
                None => None,
            };
            fs::write(&out, render::svg(&inst, res.as_ref())).with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
