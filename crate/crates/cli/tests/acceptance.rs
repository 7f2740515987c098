//! Acceptance gate. Prints one `[PASS]` or `[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

mod corpus;
#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::panic;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use qroute::initial_map::{f_val, finalize, greedy_embed, sort_edges};
use qroute::router::{candidate_swaps, route, select_sequence, Ratio, RouterConfig};
use qroute::{verify, ArchitectureGraph, LogicalCircuit, Mapping};
use qroute_cli::bench::{collect_inputs, run_bench};
use qroute_cli::pipeline::{map_source, Options};
use qroute_cli::report::to_csv;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-circuit budget for the zero-swap set.
const ZERO_SWAP_TIME: Duration = Duration::from_secs(5);
/// Extra SWAPs allowed over the exact routing optimum on tiny instances.
const OPTIMALITY_SLACK: usize = 2;
/// Relative band around the reference medium-circuit counts.
const TREND_TOLERANCE: f64 = 0.25;
/// Wall-clock limit for the largest circuit before falling back to depth 2.
const LARGEST_TIME: Duration = Duration::from_secs(30 * 60);
const RANDOM_INSTANCES: usize = 200;

static FAILED: AtomicUsize = AtomicUsize::new(0);

fn verdict(criterion: u32, title: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {title}: {detail}");
    if !ok {
        FAILED.fetch_add(1, Ordering::SeqCst);
    }
}

fn q20() -> ArchitectureGraph {
    ArchitectureGraph::preset("ibm_q20").unwrap()
}

/// Additional CNOTs and elapsed time for one circuit under default settings.
fn extra_cnots(name: &str, text: &str, opts: &Options) -> Result<(usize, Duration), String> {
    let started = Instant::now();
    let mapped = map_source(name, text, &q20(), opts).map_err(|e| e.to_string())?;
    Ok((mapped.report.additional_cnots, started.elapsed()))
}

fn source(name: &str) -> Result<String, String> {
    match name {
        "ising_model_10" => Ok(corpus::ising_model(10)),
        "ising_model_13" => Ok(corpus::ising_model(13)),
        "ising_model_16" => Ok(corpus::ising_model(16)),
        "qft_10" => Ok(corpus::qft(10)),
        other => corpus::external(other),
    }
}

fn criterion_1_zero_swap_circuits() {
    let names = [
        "ising_model_10",
        "ising_model_13",
        "ising_model_16",
        "4mod5_v1_22",
        "mod5mils_65",
        "decod24v2_43",
        "4gt13_92",
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        match source(name).and_then(|text| extra_cnots(name, &text, &Options::default())) {
            Ok((extra, took)) => {
                ok &= extra == 0 && took < ZERO_SWAP_TIME;
                parts.push(format!("{name}={extra} ({:.2}s)", took.as_secs_f64()));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    verdict(1, "zero additional CNOTs on ibm_q20", ok, &parts.join("; "));
}

fn criterion_2_small_circuit_near_match() {
    let limits = [("alu-v0_27", 9), ("qft_10", 45)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, limit) in limits {
        match source(name).and_then(|text| extra_cnots(name, &text, &Options::default())) {
            Ok((extra, _)) => {
                ok &= extra <= limit;
                parts.push(format!("{name}={extra} (limit {limit})"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    verdict(2, "small circuits near reference counts", ok, &parts.join("; "));
}

fn criterion_3_medium_and_large_trend() {
    // (name, reference count, competing heuristic's count)
    let targets = [
        ("rd84_142", 57, 105),
        ("sym6_145", 369, 1272),
        ("radd_250", 384, 1275),
        ("adr4_197", 381, 1614),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, reference, competitor) in targets {
        match source(name).and_then(|text| extra_cnots(name, &text, &Options::default())) {
            Ok((extra, _)) => {
                let band = (reference as f64 * TREND_TOLERANCE).floor() as usize;
                let within = extra + band >= reference && extra <= reference + band;
                ok &= within && extra < competitor;
                parts.push(format!("{name}={extra} (target {reference}±{band}, below {competitor})"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    match source("sym9_193") {
        Ok(text) => {
            let started = Instant::now();
            let result = extra_cnots("sym9_193", &text, &Options::default());
            let took = started.elapsed();
            if took <= LARGEST_TIME {
                ok &= result.is_ok();
                parts.push(format!("sym9_193 depth 3: {:?} in {:.1}s", result.map(|r| r.0), took.as_secs_f64()));
            } else {
                let opts = Options {
                    router: RouterConfig::with_depth(2),
                    ..Options::default()
                };
                let fallback = extra_cnots("sym9_193", &text, &opts);
                ok = false;
                parts.push(format!("sym9_193 deferred after {:.0}s; depth 2: {:?}", took.as_secs_f64(), fallback.map(|r| r.0)));
            }
        }
        Err(e) => {
            ok = false;
            parts.push(format!("sym9_193: {e}"));
        }
    }
    verdict(3, "medium/large circuits track reference counts", ok, &parts.join("; "));
}

fn criterion_4_placement_worked_example() {
    let c = LogicalCircuit::from_pairs(5, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (0, 1), (0, 4)]);
    let ag = ArchitectureGraph::preset("linear_6").unwrap();
    let ig = c.interaction_graph(&c.partition());
    let (kept, partial) = greedy_embed(&sort_edges(&ig), &ag, 5);
    let mut kept_pairs = kept.pairs();
    kept_pairs.sort_unstable();
    let s0 = f_val(4, 0, &partial, &ig, &ag);
    let s5 = f_val(4, 5, &partial, &ig, &ag);
    let full = finalize(&partial, &ig, &ag).unwrap();
    let expected = Mapping::from_pairs(5, 6, &[(1, 1), (0, 2), (2, 3), (3, 4), (4, 0)]);
    let ok = kept_pairs == [(0, 1), (0, 2), (2, 3)] && s0 == 3 && s5 == 2 && full == expected;
    verdict(
        4,
        "layer-weighted placement example",
        ok,
        &format!("kept {kept_pairs:?}, f_val(q4,v0)={s0}, f_val(q4,v5)={s5}, mapping {full:?}"),
    );
}

fn criterion_5_single_swap_routing_example() {
    let ag = ArchitectureGraph::preset("linear_4").unwrap();
    let c = LogicalCircuit::from_pairs(4, &[(0, 1), (2, 3), (1, 3), (0, 2)]);
    let result = route(&c, &Mapping::identity(4, 4), &ag, &RouterConfig::default());
    let ok = result.swap_count == 1 && verify(&c, &result, &ag).is_ok();
    verdict(5, "four-cycle on a line from the naive layout", ok, &format!("{} swap(s)", result.swap_count));
}

fn random_device(rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let nodes = rng.gen_range(2..=5);
    let mut edges: Vec<(usize, usize)> = (1..nodes).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(0..4) {
        let a = rng.gen_range(0..nodes);
        let b = rng.gen_range(0..nodes);
        if a != b {
            edges.push((a, b));
        }
    }
    (nodes, edges)
}

fn random_gates(rng: &mut ChaCha8Rng, logical: usize, max: usize) -> Vec<(usize, usize)> {
    (0..rng.gen_range(1..=max))
        .map(|_| {
            let a = rng.gen_range(0..logical);
            let mut b = rng.gen_range(0..logical - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect()
}

fn random_layout(rng: &mut ChaCha8Rng, logical: usize, nodes: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..nodes).collect();
    for i in (1..nodes).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm.truncate(logical);
    perm
}

fn criterion_6_replay_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    let mut failures = Vec::new();
    let devices = ["ibm_q20", "grid_3x4", "linear_9", "sycamore"];
    for (i, name) in devices.iter().enumerate() {
        let ag = ArchitectureGraph::preset(name).unwrap();
        for round in 0..10 {
            let logical = rng.gen_range(2..=ag.node_count().min(16));
            let text = corpus::random_circuit(logical, 40 + 10 * round, 1000 * i as u64 + round as u64);
            let program = qroute::parse_qasm(&text).unwrap();
            let circuit = LogicalCircuit::from_program(&program);
            for cfg in [RouterConfig::with_depth(1), RouterConfig::default(), RouterConfig::imp()] {
                let outcome = qroute::run(&circuit, &ag, &cfg, 2).unwrap();
                for record in &outcome.history {
                    checked += 1;
                    if let Err(e) = verify(&circuit, &record.oriented(circuit.len()), &ag) {
                        failures.push(format!("{name}/{round}: {e}"));
                    }
                }
                checked += 1;
                if let Err(e) = verify(&circuit, &outcome.routed, &ag) {
                    failures.push(format!("{name}/{round} best: {e}"));
                }
            }
        }
    }
    for name in ["ising_model_10", "ising_model_16", "qft_10"] {
        let text = source(name).unwrap();
        let program = qroute::parse_qasm(&text).unwrap();
        let circuit = LogicalCircuit::from_program(&program);
        let outcome = qroute::run(&circuit, &q20(), &RouterConfig::default(), 5).unwrap();
        checked += 1;
        if let Err(e) = verify(&circuit, &outcome.routed, &q20()) {
            failures.push(format!("{name}: {e}"));
        }
    }
    let ok = failures.is_empty();
    verdict(
        6,
        "replay certifies every routed circuit",
        ok,
        &format!("{checked} results replayed, {} failed {:?}", failures.len(), failures),
    );
}

fn criterion_7_brute_force_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut gval_checked, mut gval_bad, mut worst_gap, mut route_bad) = (0, 0, 0usize, 0);
    for _ in 0..RANDOM_INSTANCES {
        let (nodes, edges) = random_device(&mut rng);
        let logical = rng.gen_range(2..=nodes);
        let gates = random_gates(&mut rng, logical, 6);
        let layout = random_layout(&mut rng, logical, nodes);
        let ag = ArchitectureGraph::from_edge_list(nodes, &edges).unwrap();
        let dev = oracle::Device::new(nodes, &edges);
        let pairs: Vec<(usize, usize)> = layout.iter().copied().enumerate().collect();
        let map = Mapping::from_pairs(logical, nodes, &pairs);

        let ready = oracle::executable(&gates, &vec![false; gates.len()], &layout, &dev);
        let rest: Vec<(usize, usize)> = gates
            .iter()
            .enumerate()
            .filter(|(i, _)| !ready.contains(i))
            .map(|(_, &g)| g)
            .collect();
        if !rest.is_empty() {
            let remaining = LogicalCircuit::from_pairs(logical, &rest);
            let tp = candidate_swaps(&remaining, &map, &ag, 3);
            let ((count, len), maximizers) = oracle::best_gval(&rest, &layout, &dev, 2);
            if count > 0 && maximizers.iter().any(|s| s.iter().all(|e| tp.contains(e))) {
                gval_checked += 1;
                let chosen = select_sequence(&map, &remaining, &ag, &RouterConfig::with_depth(2));
                if chosen.map(|s| s.gval()) != Some(Ratio::new(count, len)) {
                    gval_bad += 1;
                }
            }
        }

        let circuit = LogicalCircuit::from_pairs(logical, &gates);
        let routed = route(&circuit, &map, &ag, &RouterConfig::default());
        let best = oracle::optimal_swaps(&gates, &layout, &dev);
        let gap = routed.swap_count.saturating_sub(best);
        worst_gap = worst_gap.max(gap);
        if gap > OPTIMALITY_SLACK || verify(&circuit, &routed, &ag).is_err() {
            route_bad += 1;
        }
    }
    let ok = gval_bad == 0 && route_bad == 0;
    verdict(
        7,
        "selection and routing against brute force",
        ok,
        &format!(
            "{RANDOM_INSTANCES} instances; gval compared on {gval_checked}, mismatches {gval_bad}; \
             worst swap gap {worst_gap} (slack {OPTIMALITY_SLACK}), violations {route_bad}"
        ),
    );
}

fn criterion_8_partial_extension_cost() {
    let ag = q20();
    let e = ag.edges().len();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, text) in [
        ("random_16q_700cx", corpus::random_circuit(16, 700, 81)),
        ("random_20q_800cx", corpus::random_circuit(20, 800, 82)),
    ] {
        let program = qroute::parse_qasm(&text).unwrap();
        assert!(program.gate_count() >= 1000, "{name} has {} gates", program.gate_count());
        let circuit = LogicalCircuit::from_program(&program);
        let start = qroute::initial_mapping(&circuit, &ag).unwrap();
        let mut per_step = Vec::new();
        for cfg in [RouterConfig::imp(), RouterConfig::with_depth(3)] {
            let t = Instant::now();
            let result = route(&circuit, &start, &ag, &cfg);
            let took = t.elapsed().as_secs_f64();
            per_step.push(took / result.stats.steps.max(1) as f64);
            if cfg.mode == qroute::SearchMode::Imp {
                let bound = e * e + (cfg.top_k + 1) * e;
                ok &= result.stats.max_candidates_per_step <= bound;
                parts.push(format!(
                    "{name}: max {} candidates/step (bound {bound})",
                    result.stats.max_candidates_per_step
                ));
            }
        }
        ok &= per_step[0] < per_step[1];
        parts.push(format!(
            "{name}: imp {:.3} ms/step vs depth-3 {:.3} ms/step",
            per_step[0] * 1e3,
            per_step[1] * 1e3
        ));
    }
    verdict(8, "partially extended search cost", ok, &parts.join("; "));
}

fn criterion_9_deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<(String, String)> = vec![
        ("ising_model_10".into(), corpus::ising_model(10)),
        ("ising_model_13".into(), corpus::ising_model(13)),
        ("qft_10".into(), corpus::qft(10)),
        ("random_12q_150cx".into(), corpus::random_circuit(12, 150, 9)),
        ("random_20q_200cx".into(), corpus::random_circuit(20, 200, 10)),
    ];
    for (name, text) in &files {
        std::fs::write(dir.path().join(format!("{name}.qasm")), text).unwrap();
    }
    let inputs = collect_inputs(dir.path()).unwrap();
    let first = to_csv(&run_bench(&inputs, &q20(), &Options::default(), None).reports).unwrap();
    let second = to_csv(&run_bench(&inputs, &q20(), &Options::default(), None).reports).unwrap();
    let ok = first == second && first.lines().count() == files.len() + 2;
    verdict(
        9,
        "repeated bench runs are byte-identical",
        ok,
        &format!("{} circuits, {} bytes", files.len(), first.len()),
    );
}

fn main() -> ExitCode {
    let criteria: [(u32, fn()); 9] = [
        (1, criterion_1_zero_swap_circuits),
        (2, criterion_2_small_circuit_near_match),
        (3, criterion_3_medium_and_large_trend),
        (4, criterion_4_placement_worked_example),
        (5, criterion_5_single_swap_routing_example),
        (6, criterion_6_replay_equivalence),
        (7, criterion_7_brute_force_agreement),
        (8, criterion_8_partial_extension_cost),
        (9, criterion_9_deterministic_reports),
    ];
    for (n, check) in criteria {
        if panic::catch_unwind(check).is_err() {
            println!("[FAIL] criterion {n}: panicked");
            FAILED.fetch_add(1, Ordering::SeqCst);
        }
    }
    let failed = FAILED.load(Ordering::SeqCst);
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
