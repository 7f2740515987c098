//! Run the pipeline over a directory of circuits.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use qroute::ArchitectureGraph;
use rayon::prelude::*;

use crate::pipeline::{map_source, Mapped, Options, PipelineError};
use crate::report::{attach_baseline, CircuitReport};

#[derive(Debug)]
pub struct Failure {
    pub path: PathBuf,
    pub error: String,
}

#[derive(Debug, Default)]
pub struct BenchRun {
    /// Ordered by file name.
    pub reports: Vec<CircuitReport>,
    pub outputs: Vec<(String, String)>,
    pub failures: Vec<Failure>,
}

/// `.qasm` files directly inside `dir`, sorted by file name.
pub fn collect_inputs(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "qasm"))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

pub fn circuit_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub fn run_bench(
    files: &[PathBuf],
    ag: &ArchitectureGraph,
    opts: &Options,
    baseline: Option<&BTreeMap<String, usize>>,
) -> BenchRun {
    let results: Vec<(PathBuf, Result<Mapped, String>)> = files
        .par_iter()
        .map(|path| {
            let outcome = fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|text| {
                    map_source(&circuit_name(path), &text, ag, opts).map_err(|e: PipelineError| e.to_string())
                });
            (path.clone(), outcome)
        })
        .collect();

    let mut run = BenchRun::default();
    for (path, outcome) in results {
        match outcome {
            Ok(mapped) => {
                run.outputs.push((mapped.report.circuit_name.clone(), mapped.qasm));
                run.reports.push(mapped.report);
            }
            Err(error) => run.failures.push(Failure { path, error }),
        }
    }
    if let Some(baseline) = baseline {
        attach_baseline(&mut run.reports, baseline);
    }
    run
}
