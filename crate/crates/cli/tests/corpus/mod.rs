//! Generated benchmark circuits and access to an optional on-disk corpus.

#![allow(dead_code)]

use std::fmt::Write;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

/// Transverse-field Ising evolution on a chain: a Hadamard layer, then ten
/// Trotter steps of nearest-neighbour ZZ rotations (cx, rz, cx) followed by
/// per-qubit rz and rx rotations. `51n - 30` gates, `20(n - 1)` CNOTs.
pub fn ising_model(n: usize) -> String {
    let mut s = format!("{HEADER}qreg q[{n}];\n");
    for i in 0..n {
        let _ = writeln!(s, "h q[{i}];");
    }
    for step in 0..10 {
        for i in 0..n - 1 {
            let _ = writeln!(s, "cx q[{i}],q[{}];", i + 1);
            let _ = writeln!(s, "rz(0.{:02}) q[{}];", step + 10, i + 1);
            let _ = writeln!(s, "cx q[{i}],q[{}];", i + 1);
        }
        for i in 0..n {
            let _ = writeln!(s, "rz(0.{:02}) q[{i}];", step + 20);
            let _ = writeln!(s, "rx(0.{:02}) q[{i}];", step + 30);
        }
    }
    s
}

/// Quantum Fourier transform without the final qubit reversal. Each
/// controlled phase becomes `cx, u1(-l/2), cx, u1(l/2)` on the target; the
/// diagonal control phases of a qubit are merged into one `u1` just before
/// its Hadamard. `n(n - 1)` CNOTs.
pub fn qft(n: usize) -> String {
    let mut s = format!("{HEADER}qreg q[{n}];\n");
    for i in 0..n {
        if i > 0 {
            // Sum of pi/2^(k+1) over the rotations this qubit controlled.
            let terms: Vec<String> = (0..i).map(|k| format!("pi/{}", 1u64 << (i - k + 1))).collect();
            let _ = writeln!(s, "u1({}) q[{i}];", terms.join("+"));
        }
        let _ = writeln!(s, "h q[{i}];");
        for j in i + 1..n {
            let half = 1u64 << (j - i + 1);
            let _ = writeln!(s, "cx q[{j}],q[{i}];");
            let _ = writeln!(s, "u1(-pi/{half}) q[{i}];");
            let _ = writeln!(s, "cx q[{j}],q[{i}];");
            let _ = writeln!(s, "u1(pi/{half}) q[{i}];");
        }
    }
    s
}

/// Seeded random circuit: `cnots` CNOTs on random distinct pairs, each
/// preceded by a random single-qubit gate with probability one half.
pub fn random_circuit(n: usize, cnots: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = format!("{HEADER}qreg q[{n}];\n");
    for _ in 0..cnots {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        if rng.gen_bool(0.5) {
            let _ = writeln!(s, "t q[{a}];");
        }
        let _ = writeln!(s, "cx q[{a}],q[{b}];");
    }
    s
}

/// Directory holding externally supplied benchmark files, if configured.
pub fn corpus_dir() -> Option<PathBuf> {
    std::env::var_os("QROUTE_CORPUS_DIR").map(PathBuf::from)
}

/// Text of `<name>.qasm` from the external corpus.
pub fn external(name: &str) -> Result<String, String> {
    let dir = corpus_dir().ok_or_else(|| format!("missing input {name}.qasm (QROUTE_CORPUS_DIR not set)"))?;
    let path = dir.join(format!("{name}.qasm"));
    std::fs::read_to_string(&path).map_err(|e| format!("missing input {}: {e}", path.display()))
}
