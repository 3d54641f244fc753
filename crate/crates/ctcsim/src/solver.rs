//! Exhaustive fixed-point enumeration.
//!
//! Every candidate received-assignment in the resolved domain product is run
//! forward once; the ones the run reproduces are the program's fixed points.
//! No probability weighting is applied: existence and multiplicity of
//! self-consistent assignments is exactly the question being answered.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::{self, CorpusError, CorpusId};
use crate::dsl::ast::{Domain, Expr, Instr, Program};
use crate::interpreter::{
    consistency_of, run, ConsistencyResult, Limits, ReceivedAssignment, RunRecord, SetupError,
};
use crate::numtheory;

/// Default cap on the size of the enumerated domain product.
pub const DEFAULT_DOMAIN_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("domain product {product} exceeds budget {budget}")]
    DomainTooLarge { product: u128, budget: u64 },
    #[error(
        "cannot resolve `auto` domain for register `{0}`: its received variable is never \
         compared against the input and it is not restricted to literal 0/1 sends; declare an \
         explicit domain"
    )]
    AutoDomainUnresolved(String),
    #[error(transparent)]
    UnknownCorpus(#[from] CorpusError),
    #[error(transparent)]
    Setup(#[from] SetupError),
}

/// Concrete finite candidate sets, one per declared register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainResolution {
    /// Register name -> sorted, deduplicated candidate values. Always
    /// contains the register's declared initial value.
    pub candidates: BTreeMap<String, Vec<i64>>,
}

impl DomainResolution {
    /// Exact size of the candidate product.
    pub fn product(&self) -> u128 {
        self.candidates.values().map(|c| c.len() as u128).product()
    }
}

/// The finite set a register enumerates over, before materialization:
/// always the declared initial plus an interval.
#[derive(Debug, Clone, Copy)]
struct DomainPlan {
    initial: i64,
    lo: i64,
    hi: i64,
}

impl DomainPlan {
    fn size(&self) -> u128 {
        let span = (self.hi as i128 - self.lo as i128 + 1) as u128;
        let extra = u128::from(self.initial < self.lo || self.initial > self.hi);
        span + extra
    }

    fn materialize(&self) -> Vec<i64> {
        let mut cands: Vec<i64> = (self.lo..=self.hi).collect();
        if self.initial < self.lo || self.initial > self.hi {
            cands.insert(0, self.initial);
            cands.sort_unstable();
        }
        cands
    }
}

/// How `auto` resolves for one register, decided syntactically:
///
/// * the variable the register is received into appears in some comparison
///   that also mentions `input` -> `{initial} U [1, n]`;
/// * otherwise, every send to the register is a literal 0 or 1 (and there is
///   at least one) -> `{initial} U {0, 1}`;
/// * otherwise resolution fails and an explicit domain is required.
fn plan_auto(program: &Program, register: &str, n: i64) -> Result<DomainPlan, SolveError> {
    let initial = program.register(register).expect("declared").initial;

    if let Some((_, var)) = program.receive_of(register) {
        let mut compared_against_input = false;
        for stmt in &program.statements {
            if let Instr::IfGoto { cond, .. } = &stmt.instr {
                cond.for_each_compare(&mut |lhs, rhs| {
                    let mentions_var = lhs.mentions_var(var) || rhs.mentions_var(var);
                    let mentions_input = lhs.mentions_input() || rhs.mentions_input();
                    if mentions_var && mentions_input {
                        compared_against_input = true;
                    }
                });
            }
        }
        if compared_against_input {
            return Ok(DomainPlan { initial, lo: 1, hi: n });
        }
    }

    let sends: Vec<&Expr> = program
        .statements
        .iter()
        .filter_map(|s| match &s.instr {
            Instr::Send { register: r, expr } if r == register => Some(expr),
            _ => None,
        })
        .collect();
    let only_bits =
        !sends.is_empty() && sends.iter().all(|e| matches!(e, Expr::Int(0) | Expr::Int(1)));
    if only_bits {
        return Ok(DomainPlan { initial, lo: 0, hi: 1 });
    }

    Err(SolveError::AutoDomainUnresolved(register.to_string()))
}

/// Resolve every register of `program` to a finite candidate set for input
/// `n`, failing when the product of set sizes exceeds `budget`. Sizes are
/// checked before any set is materialized.
pub fn resolve_domains(program: &Program, n: i64, budget: u64) -> Result<DomainResolution, SolveError> {
    let mut plans = Vec::new();
    for reg in &program.registers {
        let plan = match reg.domain {
            Domain::Auto => plan_auto(program, &reg.name, n)?,
            Domain::Interval { lo, hi } => DomainPlan { initial: reg.initial, lo, hi },
        };
        plans.push((reg.name.clone(), plan));
    }

    let product: u128 = plans.iter().map(|(_, p)| p.size()).product();
    if product > budget as u128 {
        return Err(SolveError::DomainTooLarge { product, budget });
    }

    let candidates =
        plans.into_iter().map(|(name, plan)| (name, plan.materialize())).collect();
    Ok(DomainResolution { candidates })
}

/// What a fixed point's output means for the factoring task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Some output o with 1 < o < n divides n.
    NontrivialFactor,
    /// The program output n itself.
    TrivialSelf,
    Other,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::NontrivialFactor => "nontrivial_factor",
            Classification::TrivialSelf => "trivial_self",
            Classification::Other => "other",
        };
        f.write_str(s)
    }
}

/// Classify a halted record's outputs against the input. Pure function of
/// `(outputs, n)`.
pub fn classify(outputs: &[i64], n: i64) -> Classification {
    if outputs.iter().any(|&o| 1 < o && o < n && n % o == 0) {
        Classification::NontrivialFactor
    } else if outputs.contains(&n) {
        Classification::TrivialSelf
    } else {
        Classification::Other
    }
}

/// A self-consistent received assignment together with its run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub received: ReceivedAssignment,
    pub record: RunRecord,
    pub classification: Classification,
}

/// How the computed fixed-point set differs from the documented claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceKind {
    PresentButUnclaimed,
    ClaimedButAbsent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub kind: DivergenceKind,
    pub assignment: ReceivedAssignment,
    /// Human-readable entry, with the assignment in declaration order.
    pub text: String,
}

impl std::fmt::Display for Divergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

/// Result of one exhaustive solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub program_name: String,
    pub n: i64,
    /// All fixed points, sorted by received assignment (register name, then
    /// value).
    pub fixed_points: Vec<FixedPoint>,
    /// Exact size of the enumerated domain product.
    pub candidates_tried: u64,
    /// Candidates whose runs faulted or exceeded the step limit.
    pub faults: u64,
    /// Nonempty only when the computed set differs from the documented
    /// claims for a bundled program.
    pub claim_divergences: Vec<Divergence>,
    /// Wall-clock time of the enumeration. Excluded from canonical output.
    pub wall_time: Duration,
}

impl SolveReport {
    /// Received tt values of all fixed points, ascending (single-register
    /// programs).
    pub fn received_values(&self, register: &str) -> Vec<i64> {
        let mut v: Vec<i64> =
            self.fixed_points.iter().filter_map(|fp| fp.received.get(register)).collect();
        v.sort_unstable();
        v
    }
}

/// Solve configuration beyond the program and input.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub limits: Limits,
    pub domain_budget: u64,
    /// Evaluate candidates on the rayon thread pool. The report is identical
    /// either way: results are merged and sorted before assembly.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            limits: Limits::default(),
            domain_budget: DEFAULT_DOMAIN_BUDGET,
            parallel: false,
        }
    }
}

fn assignment_at(names: &[String], cands: &[Vec<i64>], mut index: u64) -> ReceivedAssignment {
    let mut values = BTreeMap::new();
    // Mixed-radix decode, last register fastest.
    for pos in (0..names.len()).rev() {
        let set = &cands[pos];
        let radix = set.len() as u64;
        values.insert(names[pos].clone(), set[(index % radix) as usize]);
        index /= radix;
    }
    ReceivedAssignment::new(values)
}

fn evaluate(
    program: &Program,
    n: i64,
    received: ReceivedAssignment,
    limits: &Limits,
) -> Result<(Option<FixedPoint>, bool), SolveError> {
    let record = run(program, n, &received, limits)?;
    let faulted = !record.status.is_halted();
    let verdict = consistency_of(&record, &received, program);
    let fixed_point = verdict.is_consistent().then(|| {
        let classification = classify(&record.outputs, n);
        FixedPoint { received, record, classification }
    });
    Ok((fixed_point, faulted))
}

/// Enumerate every candidate assignment and keep the self-consistent ones.
///
/// The report is deterministic and independent of evaluation order; faulted
/// candidates count as inconsistent and are tallied in `faults`.
pub fn solve(program: &Program, n: i64, options: &SolveOptions) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let resolution = resolve_domains(program, n, options.domain_budget)?;
    let names: Vec<String> = resolution.candidates.keys().cloned().collect();
    let cands: Vec<Vec<i64>> = resolution.candidates.values().cloned().collect();
    let total = resolution.product() as u64;

    let (mut fixed_points, faults) = if options.parallel {
        (0..total)
            .into_par_iter()
            .map(|i| evaluate(program, n, assignment_at(&names, &cands, i), &options.limits))
            .try_fold(
                || (Vec::new(), 0u64),
                |(mut fps, faults), item| {
                    let (fp, faulted) = item?;
                    fps.extend(fp);
                    Ok::<_, SolveError>((fps, faults + faulted as u64))
                },
            )
            .try_reduce(
                || (Vec::new(), 0u64),
                |(mut a, fa), (b, fb)| {
                    a.extend(b);
                    Ok((a, fa + fb))
                },
            )?
    } else {
        let mut fps = Vec::new();
        let mut faults = 0u64;
        for i in 0..total {
            let (fp, faulted) = evaluate(program, n, assignment_at(&names, &cands, i), &options.limits)?;
            fps.extend(fp);
            faults += faulted as u64;
        }
        (fps, faults)
    };

    fixed_points.sort_by(|a, b| a.received.cmp(&b.received));

    let mut report = SolveReport {
        program_name: program.name.clone(),
        n,
        fixed_points,
        candidates_tried: total,
        faults,
        claim_divergences: Vec::new(),
        wall_time: started.elapsed(),
    };
    if let Ok(id) = program.name.parse::<CorpusId>() {
        report.claim_divergences = divergences_for(&report, id, program);
    }
    Ok(report)
}

/// Re-execute one candidate from scratch and return its consistency verdict.
pub fn verify(
    program: &Program,
    n: i64,
    received: &ReceivedAssignment,
    limits: &Limits,
) -> Result<ConsistencyResult, SetupError> {
    let record = run(program, n, received, limits)?;
    Ok(consistency_of(&record, received, program))
}

/// The fixed-point set documented for a bundled program:
///
/// * brun1: `{tt = d}` for every divisor d > 1 of n (multiplicity conceded,
///   including n itself);
/// * brun2: proper nontrivial divisors for composite n, `{n}` for prime n;
/// * brun3: `{(d, 0)}` over proper nontrivial divisors for composite n,
///   `{(n, 1)}` for prime n.
pub fn claimed_fixed_points(id: CorpusId, n: i64) -> Vec<ReceivedAssignment> {
    let view = numtheory::factor_view(n).expect("solve requires n >= 2");
    match id {
        CorpusId::Brun1 => view
            .divisors_gt1
            .iter()
            .map(|&d| ReceivedAssignment::single("tt", d))
            .collect(),
        CorpusId::Brun2 => {
            if view.is_prime {
                vec![ReceivedAssignment::single("tt", n)]
            } else {
                view.proper_nontrivial_divisors()
                    .iter()
                    .map(|&d| ReceivedAssignment::single("tt", d))
                    .collect()
            }
        }
        CorpusId::Brun3 => {
            if view.is_prime {
                vec![ReceivedAssignment::of(&[("tt", n), ("flag", 1)])]
            } else {
                view.proper_nontrivial_divisors()
                    .iter()
                    .map(|&d| ReceivedAssignment::of(&[("tt", d), ("flag", 0)]))
                    .collect()
            }
        }
    }
}

fn divergences_for(report: &SolveReport, id: CorpusId, program: &Program) -> Vec<Divergence> {
    let mut claimed = claimed_fixed_points(id, report.n);
    claimed.sort();
    let computed: Vec<&ReceivedAssignment> =
        report.fixed_points.iter().map(|fp| &fp.received).collect();

    let mut divergences = Vec::new();
    for assignment in &claimed {
        if !computed.contains(&assignment) {
            divergences.push(Divergence {
                kind: DivergenceKind::ClaimedButAbsent,
                assignment: assignment.clone(),
                text: format!(
                    "claimed fixed point {} was not found by enumeration",
                    assignment.render(program)
                ),
            });
        }
    }
    for assignment in computed {
        if !claimed.contains(assignment) {
            divergences.push(Divergence {
                kind: DivergenceKind::PresentButUnclaimed,
                assignment: assignment.clone(),
                text: format!(
                    "fixed point {} is self-consistent but not among the claimed solutions",
                    assignment.render(program)
                ),
            });
        }
    }
    divergences
}

/// Compare a report for a bundled program against its documented fixed-point
/// set. One entry per element that is present-but-unclaimed or
/// claimed-but-absent; an empty list means exact agreement.
pub fn compare_to_claims(report: &SolveReport) -> Result<Vec<Divergence>, SolveError> {
    let entry = corpus::get_by_name(&report.program_name)?;
    Ok(divergences_for(report, entry.id, &entry.program()))
}
