//! Deterministic, instrumented forward execution.
//!
//! A run takes the program, the input N, and one candidate assignment of
//! values "received from the future", and executes forward exactly once,
//! recording outputs, every value sent back to each register, per-label
//! execution counts, and the step total. Whether the candidate assignment is
//! self-consistent is decided afterwards from the record alone.
//!
//! Arithmetic is exact signed 64-bit. Inputs are capped at 2^31 so `p * p`
//! can never overflow during the corpus programs' square tests.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::ast::{BinOp, CmpOp, Cond, Expr, Instr, Program};
use crate::dsl::render_instr;

/// Largest accepted input N.
pub const MAX_INPUT: i64 = 1 << 31;

/// Default forward-run step budget.
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: DEFAULT_MAX_STEPS }
    }
}

impl Limits {
    pub fn with_max_steps(max_steps: u64) -> Self {
        assert!(max_steps >= 1, "max_steps must be at least 1");
        Limits { max_steps }
    }
}

/// One candidate map register -> value received from the future.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReceivedAssignment {
    pub values: BTreeMap<String, i64>,
}

impl ReceivedAssignment {
    pub fn new(values: BTreeMap<String, i64>) -> Self {
        ReceivedAssignment { values }
    }

    pub fn single(register: &str, value: i64) -> Self {
        let mut values = BTreeMap::new();
        values.insert(register.to_string(), value);
        ReceivedAssignment { values }
    }

    pub fn of(pairs: &[(&str, i64)]) -> Self {
        ReceivedAssignment {
            values: pairs.iter().map(|&(name, v)| (name.to_string(), v)).collect(),
        }
    }

    pub fn get(&self, register: &str) -> Option<i64> {
        self.values.get(register).copied()
    }

    /// Values in register declaration order, rendered `(tt=3, flag=0)`.
    pub fn render(&self, program: &Program) -> String {
        let parts: Vec<String> = program
            .registers
            .iter()
            .filter_map(|r| self.get(&r.name).map(|v| format!("{}={}", r.name, v)))
            .collect();
        format!("({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultKind {
    /// `a mod b` with b <= 0.
    ModByNonPositive,
    /// A variable read before any assignment.
    UnboundVariable,
    /// Exact 64-bit arithmetic overflowed.
    Overflow,
}

impl std::fmt::Display for FaultKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FaultKind::ModByNonPositive => "mod by non-positive divisor",
            FaultKind::UnboundVariable => "unbound variable",
            FaultKind::Overflow => "arithmetic overflow",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Halted,
    StepLimitExceeded,
    Faulted { kind: FaultKind, line: u32 },
}

impl RunStatus {
    pub fn is_halted(&self) -> bool {
        matches!(self, RunStatus::Halted)
    }
}

impl std::fmt::Display for RunStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunStatus::Halted => write!(f, "halted"),
            RunStatus::StepLimitExceeded => write!(f, "step limit exceeded"),
            RunStatus::Faulted { kind, line } => write!(f, "faulted at line {line}: {kind}"),
        }
    }
}

/// Everything observable about one forward execution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub outputs: Vec<i64>,
    /// Every value sent back to each declared register, in send order.
    pub sends: BTreeMap<String, Vec<i64>>,
    /// How many times control entered each labeled statement.
    pub label_counts: BTreeMap<String, u64>,
    pub steps: u64,
    pub status: RunStatus,
}

impl RunRecord {
    pub fn loop_iterations(&self) -> u64 {
        self.label_counts.get("LOOP").copied().unwrap_or(0)
    }
}

/// A precondition failure: the run could not even start.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SetupError {
    #[error("input {0} out of range: expected 2 <= n <= {MAX_INPUT}")]
    InputOutOfRange(i64),
    #[error("received assignment is missing register `{0}`")]
    MissingRegister(String),
    #[error("received assignment names unknown register `{0}`")]
    UnknownRegister(String),
}

fn check_setup(program: &Program, n: i64, received: &ReceivedAssignment) -> Result<(), SetupError> {
    if !(2..=MAX_INPUT).contains(&n) {
        return Err(SetupError::InputOutOfRange(n));
    }
    for reg in &program.registers {
        if received.get(&reg.name).is_none() {
            return Err(SetupError::MissingRegister(reg.name.clone()));
        }
    }
    for name in received.values.keys() {
        if program.register(name).is_none() {
            return Err(SetupError::UnknownRegister(name.clone()));
        }
    }
    Ok(())
}

struct Fault {
    kind: FaultKind,
}

type EvalResult<T> = Result<T, Fault>;

struct Machine {
    n: i64,
    vars: BTreeMap<String, i64>,
}

impl Machine {
    fn eval_expr(&self, expr: &Expr) -> EvalResult<i64> {
        match expr {
            Expr::Int(v) => Ok(*v),
            Expr::Input => Ok(self.n),
            Expr::Var(name) => self
                .vars
                .get(name)
                .copied()
                .ok_or(Fault { kind: FaultKind::UnboundVariable }),
            Expr::Binary { op, lhs, rhs } => {
                let a = self.eval_expr(lhs)?;
                let b = self.eval_expr(rhs)?;
                let value = match op {
                    BinOp::Add => a.checked_add(b),
                    BinOp::Sub => a.checked_sub(b),
                    BinOp::Mul => a.checked_mul(b),
                    BinOp::Mod => {
                        if b <= 0 {
                            return Err(Fault { kind: FaultKind::ModByNonPositive });
                        }
                        // Euclidean remainder: always in [0, b) for b > 0.
                        Some(a.rem_euclid(b))
                    }
                };
                value.ok_or(Fault { kind: FaultKind::Overflow })
            }
        }
    }

    fn eval_cond(&self, cond: &Cond) -> EvalResult<bool> {
        match cond {
            Cond::Compare { op, lhs, rhs } => {
                let a = self.eval_expr(lhs)?;
                let b = self.eval_expr(rhs)?;
                Ok(match op {
                    CmpOp::Eq => a == b,
                    CmpOp::Ne => a != b,
                    CmpOp::Lt => a < b,
                    CmpOp::Gt => a > b,
                    CmpOp::Le => a <= b,
                    CmpOp::Ge => a >= b,
                })
            }
            // Short-circuit: the right side is not evaluated (and cannot
            // fault) when the left side decides.
            Cond::And(a, b) => Ok(self.eval_cond(a)? && self.eval_cond(b)?),
            Cond::Or(a, b) => Ok(self.eval_cond(a)? || self.eval_cond(b)?),
            Cond::Not(inner) => Ok(!self.eval_cond(inner)?),
        }
    }

    fn snapshot(&self) -> String {
        let parts: Vec<String> = self.vars.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Execute `program` on input `n` with the given received values, tracing
/// each executed statement to `trace` when provided.
///
/// Faults and step-limit overruns are reported inside the returned record,
/// never as process failures; `Err` is reserved for violated preconditions.
pub fn run_traced(
    program: &Program,
    n: i64,
    received: &ReceivedAssignment,
    limits: &Limits,
    mut trace: Option<&mut dyn Write>,
) -> Result<RunRecord, SetupError> {
    check_setup(program, n, received)?;

    let mut machine = Machine { n, vars: BTreeMap::new() };
    let mut record = RunRecord {
        outputs: Vec::new(),
        sends: program.registers.iter().map(|r| (r.name.clone(), Vec::new())).collect(),
        label_counts: program.labels.keys().map(|l| (l.clone(), 0)).collect(),
        steps: 0,
        status: RunStatus::Halted,
    };

    let mut pc = 0usize;
    loop {
        if pc >= program.statements.len() {
            // Falling off the end is equivalent to halt.
            record.status = RunStatus::Halted;
            break;
        }
        if record.steps == limits.max_steps {
            record.status = RunStatus::StepLimitExceeded;
            break;
        }
        let stmt = &program.statements[pc];
        record.steps += 1;
        if let Some(label) = &stmt.label {
            *record.label_counts.get_mut(label).expect("label counted") += 1;
        }

        let mut next = pc + 1;
        let mut fault: Option<Fault> = None;
        match &stmt.instr {
            Instr::Assign { var, expr } => match machine.eval_expr(expr) {
                Ok(v) => {
                    machine.vars.insert(var.clone(), v);
                }
                Err(f) => fault = Some(f),
            },
            Instr::Receive { register, var } => {
                let v = received.get(register).expect("checked at setup");
                machine.vars.insert(var.clone(), v);
            }
            Instr::Send { register, expr } => match machine.eval_expr(expr) {
                Ok(v) => record.sends.get_mut(register).expect("declared").push(v),
                Err(f) => fault = Some(f),
            },
            Instr::IfGoto { cond, target } => match machine.eval_cond(cond) {
                Ok(true) => next = program.labels[target],
                Ok(false) => {}
                Err(f) => fault = Some(f),
            },
            Instr::Goto { target } => next = program.labels[target],
            Instr::Output { expr } => match machine.eval_expr(expr) {
                Ok(v) => record.outputs.push(v),
                Err(f) => fault = Some(f),
            },
            Instr::Halt => {
                if let Some(sink) = trace.as_deref_mut() {
                    trace_line(sink, &record, stmt, &machine);
                }
                record.status = RunStatus::Halted;
                break;
            }
        }

        if let Some(sink) = trace.as_deref_mut() {
            trace_line(sink, &record, stmt, &machine);
        }

        if let Some(f) = fault {
            record.status = RunStatus::Faulted { kind: f.kind, line: stmt.line };
            break;
        }
        pc = next;
    }

    Ok(record)
}

/// [`run_traced`] without a trace sink.
pub fn run(
    program: &Program,
    n: i64,
    received: &ReceivedAssignment,
    limits: &Limits,
) -> Result<RunRecord, SetupError> {
    run_traced(program, n, received, limits, None)
}

fn trace_line(
    sink: &mut dyn Write,
    record: &RunRecord,
    stmt: &crate::dsl::Statement,
    machine: &Machine,
) {
    let label = stmt.label.as_deref().unwrap_or("-");
    // Best effort; a broken trace sink must not affect the run.
    let _ = writeln!(
        sink,
        "step={} line={} label={} stmt=\"{}\" vars={}",
        record.steps,
        stmt.line,
        label,
        render_instr(&stmt.instr),
        machine.snapshot()
    );
}

/// Why a (record, received) pair failed the self-consistency condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum Inconsistency {
    /// The run did not halt cleanly, so it cannot witness any fixed point.
    NotHalted { status: RunStatus },
    /// The last value sent to a register differs from the received one.
    SendMismatch { register: String, sent: i64, received: i64 },
    /// Nothing was sent to the register, so the past must observe the
    /// declared initial value.
    NeverSentMismatch { register: String, initial: i64, received: i64 },
}

impl std::fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Inconsistency::NotHalted { status } => write!(f, "run not halted: {status}"),
            Inconsistency::SendMismatch { register, sent, received } => {
                write!(f, "{register}: sent {sent} != received {received}")
            }
            Inconsistency::NeverSentMismatch { register, initial, received } => {
                write!(f, "{register}: never sent, received {received} != initial {initial}")
            }
        }
    }
}

/// Verdict of the self-consistency check, with diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyResult {
    pub consistent: bool,
    /// Per-register explanations; empty exactly when consistent.
    pub explanations: Vec<Inconsistency>,
    /// Registers whose send list holds two differing values. Informational:
    /// the verdict only compares the last send.
    pub conflicting_sends: Vec<String>,
}

impl ConsistencyResult {
    pub fn is_consistent(&self) -> bool {
        self.consistent
    }
}

impl std::fmt::Display for ConsistencyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.consistent {
            write!(f, "consistent")
        } else {
            let parts: Vec<String> = self.explanations.iter().map(|e| e.to_string()).collect();
            write!(f, "inconsistent ({})", parts.join("; "))
        }
    }
}

/// Decide self-consistency from a finished run.
///
/// A halted run is consistent with the received assignment iff for every
/// declared register the last value sent to it equals the received value,
/// and registers never sent to were received with their declared initial.
/// Faulted or truncated runs are never consistent.
pub fn consistency_of(
    record: &RunRecord,
    received: &ReceivedAssignment,
    program: &Program,
) -> ConsistencyResult {
    let empty: Vec<i64> = Vec::new();
    let mut conflicting_sends = Vec::new();
    for reg in &program.registers {
        let sends = record.sends.get(&reg.name).unwrap_or(&empty);
        if sends.windows(2).any(|w| w[0] != w[1]) {
            conflicting_sends.push(reg.name.clone());
        }
    }

    let mut explanations = Vec::new();
    if !record.status.is_halted() {
        explanations.push(Inconsistency::NotHalted { status: record.status });
    } else {
        for reg in &program.registers {
            let got = received.get(&reg.name).expect("received covers registers");
            let sends = record.sends.get(&reg.name).unwrap_or(&empty);
            match sends.last() {
                Some(&sent) if sent != got => {
                    explanations.push(Inconsistency::SendMismatch {
                        register: reg.name.clone(),
                        sent,
                        received: got,
                    });
                }
                None if got != reg.initial => {
                    explanations.push(Inconsistency::NeverSentMismatch {
                        register: reg.name.clone(),
                        initial: reg.initial,
                        received: got,
                    });
                }
                _ => {}
            }
        }
    }

    ConsistencyResult { consistent: explanations.is_empty(), explanations, conflicting_sends }
}
