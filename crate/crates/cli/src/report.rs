//! Per-circuit reports, baseline comparison and CSV rendering.

use std::collections::BTreeMap;
use std::io::Read;

use qroute::Direction;
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: [&str; 11] = [
    "circuit",
    "qubits",
    "gates",
    "cnots",
    "swaps",
    "additional_cnots",
    "depth_in",
    "depth_out",
    "ms",
    "direction",
    "delta_vs_baseline",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitReport {
    pub circuit_name: String,
    pub qubit_num: usize,
    /// Single- and two-qubit gates in the input; measure and barrier excluded.
    pub gate_num: usize,
    pub cnot_num: usize,
    pub swap_count: usize,
    pub additional_cnots: usize,
    pub depth_in: usize,
    pub depth_out: usize,
    /// Present only when timing was requested.
    pub wall_time_ms: Option<f64>,
    pub direction_of_best: Direction,
    pub iterations_run: usize,
    /// Present only when a baseline entry exists for this circuit.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta_vs_baseline: Option<Delta>,
}

/// Improvement over a baseline's additional gate count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub baseline: usize,
    /// `None` when the baseline needed no extra gates but this run did.
    pub ratio: Option<f64>,
}

/// `1 - ours / baseline`. Zero over zero counts as no change.
pub fn optimization_ratio(ours: usize, baseline: usize) -> Option<f64> {
    match (ours, baseline) {
        (0, 0) => Some(0.0),
        (_, 0) => None,
        _ => Some(1.0 - ours as f64 / baseline as f64),
    }
}

/// Percentage with two decimals, or empty when undefined.
pub fn format_percent(ratio: Option<f64>) -> String {
    match ratio {
        // Normalise -0.00 to 0.00.
        Some(r) => format!("{:.2}", (r * 100.0) + 0.0),
        None => String::new(),
    }
}

/// Baseline additional-gate counts keyed by circuit name. Expects a header
/// row with `circuit` and `additional_cnots` columns.
pub fn read_baseline<R: Read>(reader: R) -> Result<BTreeMap<String, usize>, csv::Error> {
    #[derive(Deserialize)]
    struct Row {
        circuit: String,
        additional_cnots: usize,
    }
    let mut out = BTreeMap::new();
    for row in csv::Reader::from_reader(reader).deserialize() {
        let row: Row = row?;
        out.insert(row.circuit, row.additional_cnots);
    }
    Ok(out)
}

pub fn attach_baseline(reports: &mut [CircuitReport], baseline: &BTreeMap<String, usize>) {
    for r in reports {
        r.delta_vs_baseline = baseline.get(&r.circuit_name).map(|&g| Delta {
            baseline: g,
            ratio: optimization_ratio(r.additional_cnots, g),
        });
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Totals {
    pub qubits: usize,
    pub gates: usize,
    pub cnots: usize,
    pub swaps: usize,
    pub additional_cnots: usize,
    pub depth_in: usize,
    pub depth_out: usize,
    pub ms: Option<f64>,
    /// Ratio over summed counts of the circuits that have a baseline entry.
    pub delta: Option<Option<f64>>,
}

pub fn totals(reports: &[CircuitReport]) -> Totals {
    let mut t = Totals::default();
    let (mut ours, mut theirs, mut any) = (0, 0, false);
    for r in reports {
        t.qubits += r.qubit_num;
        t.gates += r.gate_num;
        t.cnots += r.cnot_num;
        t.swaps += r.swap_count;
        t.additional_cnots += r.additional_cnots;
        t.depth_in += r.depth_in;
        t.depth_out += r.depth_out;
        if let Some(ms) = r.wall_time_ms {
            *t.ms.get_or_insert(0.0) += ms;
        }
        if let Some(d) = r.delta_vs_baseline {
            ours += r.additional_cnots;
            theirs += d.baseline;
            any = true;
        }
    }
    if any {
        t.delta = Some(optimization_ratio(ours, theirs));
    }
    t
}

pub fn direction_label(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

fn format_ms(ms: Option<f64>) -> String {
    ms.map(|v| format!("{v:.3}")).unwrap_or_default()
}

/// CSV with one row per circuit and a trailing `Sum` row.
pub fn to_csv(reports: &[CircuitReport]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.circuit_name.clone(),
            r.qubit_num.to_string(),
            r.gate_num.to_string(),
            r.cnot_num.to_string(),
            r.swap_count.to_string(),
            r.additional_cnots.to_string(),
            r.depth_in.to_string(),
            r.depth_out.to_string(),
            format_ms(r.wall_time_ms),
            direction_label(r.direction_of_best).to_string(),
            r.delta_vs_baseline.map(|d| format_percent(d.ratio)).unwrap_or_default(),
        ])?;
    }
    let t = totals(reports);
    w.write_record([
        "Sum".to_string(),
        t.qubits.to_string(),
        t.gates.to_string(),
        t.cnots.to_string(),
        t.swaps.to_string(),
        t.additional_cnots.to_string(),
        t.depth_in.to_string(),
        t.depth_out.to_string(),
        format_ms(t.ms),
        String::new(),
        t.delta.map(format_percent).unwrap_or_default(),
    ])?;
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
