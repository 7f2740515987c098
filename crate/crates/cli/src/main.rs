use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use qroute::{EmitOptions, RouterConfig, SearchMode};
use qroute_cli::bench::{collect_inputs, run_bench};
use qroute_cli::pipeline::{load_arch, map_source, Options};
use qroute_cli::report::{direction_label, read_baseline, to_csv};

#[derive(Parser)]
#[command(name = "qroute", version, about = "Map OpenQASM circuits onto a device coupling graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map a single circuit.
    Map {
        input: PathBuf,
        #[command(flatten)]
        routing: RoutingArgs,
        /// Routed QASM destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report destination.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Map every `.qasm` file in a directory.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        routing: RoutingArgs,
        /// Directory for routed QASM files.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report destination (array of reports).
        #[arg(long)]
        report: Option<PathBuf>,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// CSV with `circuit,additional_cnots` rows from another tool.
        #[arg(long)]
        baseline: Option<PathBuf>,
        /// Worker threads (all cores when omitted).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fixed,
    Imp,
}

#[derive(Args)]
struct RoutingArgs {
    /// Device preset (ibm_q20, sycamore, linear_N, grid_RxC) or edge-list JSON file.
    #[arg(long, default_value = "ibm_q20")]
    arch: String,
    /// Swap sequence search depth.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, value_enum, default_value = "fixed")]
    mode: ModeArg,
    /// Length-2 sequences extended in imp mode.
    #[arg(long, default_value_t = 50)]
    k: usize,
    /// Forward/backward iterations.
    #[arg(long, default_value_t = 5)]
    iters: usize,
    /// Look-ahead layers for candidate swaps.
    #[arg(long, default_value_t = 3)]
    layers: usize,
    /// Tie-break window below the threshold.
    #[arg(long, default_value_t = 30)]
    wnd: usize,
    /// Remaining-gate count above which the window grows with its square root.
    #[arg(long, default_value_t = 4000)]
    wnd_threshold: usize,
    #[arg(long, default_value_t = false, action = ArgAction::Set)]
    decompose_swaps: bool,
    /// Include wall time in reports (makes them non-reproducible).
    #[arg(long)]
    timing: bool,
}

impl RoutingArgs {
    fn options(&self) -> Options {
        let router = RouterConfig {
            search_depth: match self.mode {
                ModeArg::Fixed => self.depth,
                ModeArg::Imp => 2,
            },
            candidate_layers: self.layers,
            wnd_base: self.wnd,
            wnd_threshold: self.wnd_threshold,
            mode: match self.mode {
                ModeArg::Fixed => SearchMode::Fixed,
                ModeArg::Imp => SearchMode::Imp,
            },
            top_k: self.k,
            ..RouterConfig::default()
        };
        Options {
            router,
            iterations: self.iters,
            emit: EmitOptions {
                decompose_swaps: self.decompose_swaps,
            },
            timing: self.timing,
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Map {
            input,
            routing,
            out,
            report,
        } => map(input, routing, out, report),
        Command::Bench {
            dir,
            routing,
            out,
            report,
            csv,
            baseline,
            jobs,
        } => {
            if let Some(n) = jobs {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("warning: {e}");
                }
            }
            match bench(dir, routing, out, report, csv, baseline) {
                Ok(code) => code,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}

fn map(input: PathBuf, routing: RoutingArgs, out: Option<PathBuf>, report: Option<PathBuf>) -> ExitCode {
    let text = match fs::read_to_string(&input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return ExitCode::from(1);
        }
    };
    let ag = match load_arch(&routing.arch) {
        Ok(ag) => ag,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let name = qroute_cli::bench::circuit_name(&input);
    let mapped = match map_source(&name, &text, &ag, &routing.options()) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = (|| -> Result<()> {
        match &out {
            Some(path) => fs::write(path, &mapped.qasm).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", mapped.qasm),
        }
        if let Some(path) = &report {
            let json = serde_json::to_string_pretty(&mapped.report)?;
            fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    })();
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    eprintln!(
        "{}: {} swaps ({} additional CNOTs), best pass {}",
        name,
        mapped.report.swap_count,
        mapped.report.additional_cnots,
        direction_label(mapped.report.direction_of_best)
    );
    ExitCode::SUCCESS
}

fn bench(
    dir: PathBuf,
    routing: RoutingArgs,
    out: Option<PathBuf>,
    report: Option<PathBuf>,
    csv: Option<PathBuf>,
    baseline: Option<PathBuf>,
) -> Result<ExitCode> {
    let ag = load_arch(&routing.arch).map_err(|e| anyhow::anyhow!("{e}"))?;
    let baseline = baseline
        .map(|p| {
            let file = fs::File::open(&p).with_context(|| format!("opening {}", p.display()))?;
            read_baseline(file).with_context(|| format!("reading {}", p.display()))
        })
        .transpose()?;
    let files = collect_inputs(&dir).with_context(|| format!("listing {}", dir.display()))?;
    let run = run_bench(&files, &ag, &routing.options(), baseline.as_ref());

    for failure in &run.failures {
        eprintln!("skipped {}: {}", failure.path.display(), failure.error);
    }
    if let Some(out) = &out {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        for (name, qasm) in &run.outputs {
            fs::write(out.join(format!("{name}.qasm")), qasm)?;
        }
    }
    if let Some(path) = &report {
        let json = serde_json::to_string_pretty(&run.reports)?;
        fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let table = to_csv(&run.reports)?;
    match &csv {
        Some(path) => fs::write(path, table).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{table}"),
    }
    Ok(if run.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
