//! A small OpenQASM 2.0 reader and writer.
//!
//! Only the flat subset used by routing benchmarks is accepted: one quantum
//! register, any number of classical registers, `cx`/`swap` as the only
//! two-qubit gates, arbitrary named single-qubit gates, and `measure` /
//! `barrier` statements which are carried through as opaque markers.
//! Gate parameters are kept as their source text so that emitting a parsed
//! program never perturbs an angle.

use std::fmt::Write as _;

use thiserror::Error;

pub const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QasmError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: only a single quantum register is supported")]
    MultipleQregs { line: usize },
    #[error("no quantum register declared")]
    MissingQreg,
    #[error("line {line}: gate `{name}` acts on {arity} qubits; at most two are supported")]
    TooManyQubits {
        line: usize,
        name: String,
        arity: usize,
    },
    #[error("line {line}: unsupported two-qubit gate `{name}` (only cx and swap are routed)")]
    UnsupportedGate { line: usize, name: String },
    #[error("line {line}: unsupported statement `{keyword}`")]
    UnsupportedStatement { line: usize, keyword: String },
    #[error("line {line}: qubit index {index} out of range for register of size {size}")]
    QubitOutOfRange {
        line: usize,
        index: usize,
        size: usize,
    },
    #[error("line {line}: gate `{name}` repeats a qubit operand")]
    RepeatedQubit { line: usize, name: String },
    #[error("line {line}: unknown register `{name}`")]
    UnknownRegister { line: usize, name: String },
}

/// What a parsed statement means for routing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateClass {
    /// A two-qubit gate that needs its operands adjacent.
    TwoQubit,
    /// Any one-qubit operation; never constrains routing.
    SingleQubit,
    /// `measure` or `barrier`.
    Marker,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGate {
    pub name: String,
    /// Parameter expressions exactly as written, without surrounding whitespace.
    pub params: Vec<String>,
    pub qubits: Vec<usize>,
    /// Classical target of a `measure`, verbatim (`c[3]`).
    pub classical: Option<String>,
    pub source_line: usize,
}

impl RawGate {
    pub fn new(name: impl Into<String>, qubits: Vec<usize>) -> Self {
        RawGate {
            name: name.into(),
            params: Vec::new(),
            qubits,
            classical: None,
            source_line: 0,
        }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::new("cx", vec![control, target])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new("swap", vec![a, b])
    }

    pub fn class(&self) -> GateClass {
        match self.name.as_str() {
            "measure" | "barrier" => GateClass::Marker,
            _ if self.qubits.len() == 2 => GateClass::TwoQubit,
            _ => GateClass::SingleQubit,
        }
    }

    /// Equality ignoring where the gate came from.
    pub fn same_op(&self, other: &RawGate) -> bool {
        self.name == other.name
            && self.params == other.params
            && self.qubits == other.qubits
            && self.classical == other.classical
    }
}

/// A parsed program: the register layout plus the flat gate list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub qreg_name: String,
    pub qubit_count: usize,
    pub cregs: Vec<(String, usize)>,
    pub gates: Vec<RawGate>,
}

impl Program {
    pub fn new(qubit_count: usize) -> Self {
        Program {
            qreg_name: "q".to_string(),
            qubit_count,
            cregs: Vec::new(),
            gates: Vec::new(),
        }
    }

    /// Gates excluding `measure` and `barrier`.
    pub fn gate_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.class() != GateClass::Marker)
            .count()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.class() == GateClass::TwoQubit)
            .count()
    }

    /// Circuit depth counting every gate and `measure` as one time step;
    /// barriers are ignored.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.qubit_count];
        let mut depth = 0;
        for gate in &self.gates {
            if gate.name == "barrier" {
                continue;
            }
            let next = gate.qubits.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in &gate.qubits {
                level[q] = next;
            }
            depth = depth.max(next);
        }
        depth
    }
}

pub fn parse_qasm(text: &str) -> Result<Program, QasmError> {
    let mut parser = Parser::default();
    for (line, statement) in statements(text) {
        parser.statement(line, statement)?;
    }
    parser.finish()
}

/// Serialize a program. SWAPs are written as `swap`; callers that want CNOT
/// triples expand them before emission.
pub fn emit_qasm(program: &Program) -> String {
    let mut out = String::from(HEADER);
    let reg = &program.qreg_name;
    let _ = writeln!(out, "qreg {reg}[{}];", program.qubit_count);
    for (name, size) in &program.cregs {
        let _ = writeln!(out, "creg {name}[{size}];");
    }
    for gate in &program.gates {
        out.push_str(&gate.name);
        if !gate.params.is_empty() {
            let _ = write!(out, "({})", gate.params.join(","));
        }
        let operands: Vec<String> = gate.qubits.iter().map(|q| format!("{reg}[{q}]")).collect();
        let _ = write!(out, " {}", operands.join(","));
        if let Some(target) = &gate.classical {
            let _ = write!(out, " -> {target}");
        }
        out.push_str(";\n");
    }
    out
}

/// Split source text into `;`-terminated statements tagged with the line on
/// which each statement starts. Line comments are dropped.
fn statements(text: &str) -> Vec<(usize, String)> {
    let mut result = Vec::new();
    let mut current = String::new();
    let mut start_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find("//") {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        for ch in line.chars() {
            if ch == ';' {
                let stmt = current.trim().to_string();
                if !stmt.is_empty() {
                    result.push((start_line, stmt));
                }
                current.clear();
                continue;
            }
            if current.trim().is_empty() && !ch.is_whitespace() {
                start_line = line_no;
            }
            current.push(ch);
        }
        current.push(' ');
    }
    let tail = current.trim();
    if !tail.is_empty() {
        // Unterminated trailing statement.
        result.push((start_line, format!("{tail}\u{0}")));
    }
    result
}

#[derive(Default)]
struct Parser {
    qreg: Option<(String, usize)>,
    cregs: Vec<(String, usize)>,
    gates: Vec<RawGate>,
}

impl Parser {
    fn statement(&mut self, line: usize, stmt: String) -> Result<(), QasmError> {
        if let Some(body) = stmt.strip_suffix('\u{0}') {
            return Err(syntax(line, format!("missing `;` after `{body}`")));
        }
        let keyword: String = stmt
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        if keyword.is_empty() {
            return Err(syntax(line, format!("unexpected `{stmt}`")));
        }
        let rest = stmt[keyword.len()..].trim();
        match keyword.as_str() {
            "OPENQASM" => {
                if !rest.starts_with('2') {
                    return Err(syntax(line, format!("unsupported version `{rest}`")));
                }
                Ok(())
            }
            "include" => Ok(()),
            "qreg" => {
                let (name, size) = parse_decl(line, rest)?;
                if self.qreg.is_some() {
                    return Err(QasmError::MultipleQregs { line });
                }
                self.qreg = Some((name, size));
                Ok(())
            }
            "creg" => {
                let decl = parse_decl(line, rest)?;
                self.cregs.push(decl);
                Ok(())
            }
            "gate" | "opaque" | "if" | "reset_all" => Err(QasmError::UnsupportedStatement {
                line,
                keyword,
            }),
            "measure" => self.measure(line, rest),
            "barrier" => {
                let qubits = self.operands(line, &keyword, rest)?;
                self.push(line, keyword, Vec::new(), qubits, None);
                Ok(())
            }
            _ => self.gate(line, keyword, rest),
        }
    }

    fn measure(&mut self, line: usize, rest: &str) -> Result<(), QasmError> {
        let (src, dst) = rest
            .split_once("->")
            .ok_or_else(|| syntax(line, "measure without `->`".to_string()))?;
        let dst = dst.trim();
        let qubits = self.operands(line, "measure", src)?;
        if dst.contains('[') {
            if qubits.len() != 1 {
                return Err(syntax(line, "measure arity mismatch".to_string()));
            }
            self.push(line, "measure".into(), Vec::new(), qubits, Some(dst.to_string()));
        } else {
            // Whole-register form: measure q -> c;
            let creg = self
                .cregs
                .iter()
                .find(|(name, _)| name == dst)
                .cloned()
                .ok_or_else(|| QasmError::UnknownRegister {
                    line,
                    name: dst.to_string(),
                })?;
            if creg.1 < qubits.len() {
                return Err(syntax(line, "classical register too small".to_string()));
            }
            for (i, q) in qubits.into_iter().enumerate() {
                self.push(
                    line,
                    "measure".into(),
                    Vec::new(),
                    vec![q],
                    Some(format!("{}[{i}]", creg.0)),
                );
            }
        }
        Ok(())
    }

    fn gate(&mut self, line: usize, name: String, rest: &str) -> Result<(), QasmError> {
        let (params, operand_text) = if let Some(inner) = rest.strip_prefix('(') {
            let close = matching_paren(inner)
                .ok_or_else(|| syntax(line, format!("unbalanced parentheses in `{name}`")))?;
            (split_params(&inner[..close]), &inner[close + 1..])
        } else {
            (Vec::new(), rest)
        };
        let operand_text = operand_text.trim();
        if operand_text.is_empty() {
            return Err(syntax(line, format!("gate `{name}` has no operands")));
        }
        let args: Vec<&str> = operand_text.split(',').map(str::trim).collect();
        match args.len() {
            1 => {
                // `h q;` applies to every qubit of the register.
                for q in self.operand(line, args[0])? {
                    self.push(line, name.clone(), params.clone(), vec![q], None);
                }
                Ok(())
            }
            2 => {
                if !matches!(name.as_str(), "cx" | "CX" | "swap") {
                    return Err(QasmError::UnsupportedGate { line, name });
                }
                let a = self.single_operand(line, args[0])?;
                let b = self.single_operand(line, args[1])?;
                if a == b {
                    return Err(QasmError::RepeatedQubit { line, name });
                }
                self.push(line, name, params, vec![a, b], None);
                Ok(())
            }
            arity => Err(QasmError::TooManyQubits { line, name, arity }),
        }
    }

    fn push(
        &mut self,
        line: usize,
        name: String,
        params: Vec<String>,
        qubits: Vec<usize>,
        classical: Option<String>,
    ) {
        self.gates.push(RawGate {
            name,
            params,
            qubits,
            classical,
            source_line: line,
        });
    }

    fn operands(&self, line: usize, name: &str, text: &str) -> Result<Vec<usize>, QasmError> {
        let mut qubits = Vec::new();
        for arg in text.split(',').map(str::trim) {
            qubits.extend(self.operand(line, arg)?);
        }
        let mut seen = qubits.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(QasmError::RepeatedQubit {
                line,
                name: name.to_string(),
            });
        }
        Ok(qubits)
    }

    fn single_operand(&self, line: usize, arg: &str) -> Result<usize, QasmError> {
        if !arg.contains('[') {
            return Err(syntax(
                line,
                format!("register broadcast `{arg}` is not supported for two-qubit gates"),
            ));
        }
        Ok(self.operand(line, arg)?[0])
    }

    /// Resolve `q[i]` to `[i]` or a bare `q` to the whole register.
    fn operand(&self, line: usize, arg: &str) -> Result<Vec<usize>, QasmError> {
        let (reg_name, size) = self.qreg.clone().ok_or(QasmError::MissingQreg)?;
        let (name, index) = match arg.split_once('[') {
            Some((name, idx)) => {
                let idx = idx
                    .strip_suffix(']')
                    .ok_or_else(|| syntax(line, format!("malformed operand `{arg}`")))?;
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, format!("malformed index in `{arg}`")))?;
                (name.trim(), Some(idx))
            }
            None => (arg, None),
        };
        if name != reg_name {
            return Err(QasmError::UnknownRegister {
                line,
                name: name.to_string(),
            });
        }
        match index {
            Some(index) if index >= size => Err(QasmError::QubitOutOfRange { line, index, size }),
            Some(index) => Ok(vec![index]),
            None => Ok((0..size).collect()),
        }
    }

    fn finish(self) -> Result<Program, QasmError> {
        let (qreg_name, qubit_count) = self.qreg.ok_or(QasmError::MissingQreg)?;
        Ok(Program {
            qreg_name,
            qubit_count,
            cregs: self.cregs,
            gates: self.gates,
        })
    }
}

fn syntax(line: usize, message: String) -> QasmError {
    QasmError::Syntax { line, message }
}

fn parse_decl(line: usize, rest: &str) -> Result<(String, usize), QasmError> {
    let (name, size) = rest
        .split_once('[')
        .ok_or_else(|| syntax(line, format!("malformed register declaration `{rest}`")))?;
    let size = size
        .trim()
        .strip_suffix(']')
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| syntax(line, format!("malformed register size in `{rest}`")))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(syntax(line, "register without a name".to_string()));
    }
    Ok((name.to_string(), size))
}

/// Index of the `)` closing an already-opened parenthesis.
fn matching_paren(text: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_params(text: &str) -> Vec<String> {
    let mut params = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                params.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() || !params.is_empty() {
        params.push(current.trim().to_string());
    }
    params
}
