//! Structural validation, separate from parsing so externally built ASTs can
//! be checked through the same path. Violations are data, not failures.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Domain, Instr, Program};
use super::{ValidationReport, Violation, ViolationKind};

pub fn validate(program: &Program) -> ValidationReport {
    let mut violations = Vec::new();

    // Register declarations: unique names, non-empty explicit domains.
    let mut seen = BTreeSet::new();
    for reg in &program.registers {
        if !seen.insert(reg.name.as_str()) {
            violations.push(Violation {
                kind: ViolationKind::DuplicateRegister,
                token: reg.name.clone(),
                line: reg.line,
            });
        }
        if let Domain::Interval { lo, hi } = reg.domain {
            if lo > hi {
                violations.push(Violation {
                    kind: ViolationKind::EmptyDomain,
                    token: reg.name.clone(),
                    line: reg.line,
                });
            }
        }
    }
    let declared: BTreeSet<&str> = program.registers.iter().map(|r| r.name.as_str()).collect();

    // Duplicate labels, in statement order.
    let mut label_at: BTreeMap<&str, usize> = BTreeMap::new();
    for (index, stmt) in program.statements.iter().enumerate() {
        if let Some(label) = &stmt.label {
            if label_at.insert(label.as_str(), index).is_some() {
                violations.push(Violation {
                    kind: ViolationKind::DuplicateLabel,
                    token: label.clone(),
                    line: stmt.line,
                });
            }
        }
    }

    // Label table must agree with the statement list (first occurrence wins
    // when labels are duplicated, which is already reported above).
    let mut first_at: BTreeMap<&str, usize> = BTreeMap::new();
    for (index, stmt) in program.statements.iter().enumerate() {
        if let Some(label) = &stmt.label {
            first_at.entry(label.as_str()).or_insert(index);
        }
    }
    if program.labels.len() != first_at.len()
        || !first_at
            .iter()
            .all(|(label, index)| program.labels.get(*label) == Some(index))
    {
        violations.push(Violation {
            kind: ViolationKind::LabelTableInconsistent,
            token: program.name.clone(),
            line: 1,
        });
    }

    // Statement-level checks, in order.
    let mut received: BTreeMap<&str, u32> = BTreeMap::new();
    for stmt in &program.statements {
        match &stmt.instr {
            Instr::Receive { register, .. } => {
                if !declared.contains(register.as_str()) {
                    violations.push(Violation {
                        kind: ViolationKind::UndeclaredRegister,
                        token: register.clone(),
                        line: stmt.line,
                    });
                }
                if received.insert(register.as_str(), stmt.line).is_some() {
                    violations.push(Violation {
                        kind: ViolationKind::DuplicateReceive,
                        token: register.clone(),
                        line: stmt.line,
                    });
                }
            }
            Instr::Send { register, .. } => {
                if !declared.contains(register.as_str()) {
                    violations.push(Violation {
                        kind: ViolationKind::UndeclaredRegister,
                        token: register.clone(),
                        line: stmt.line,
                    });
                }
            }
            Instr::Goto { target } | Instr::IfGoto { target, .. } => {
                if !first_at.contains_key(target.as_str()) {
                    violations.push(Violation {
                        kind: ViolationKind::UnknownLabel,
                        token: target.clone(),
                        line: stmt.line,
                    });
                }
            }
            Instr::Assign { .. } | Instr::Output { .. } | Instr::Halt => {}
        }
    }

    ValidationReport { violations }
}
