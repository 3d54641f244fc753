//! Canonical source rendering. One statement per line, labels suffixed with
//! `:`, parentheses only where precedence demands them. The output is a
//! fixed point of parse-then-pretty, so pretty-printing twice is byte-stable.

use std::fmt::Write;

use super::ast::*;

pub fn pretty(program: &Program) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "program {}", program.name);
    for reg in &program.registers {
        match reg.domain {
            Domain::Auto => {
                let _ = writeln!(out, "ttreg {} init {} domain auto", reg.name, reg.initial);
            }
            Domain::Interval { lo, hi } => {
                let _ = writeln!(out, "ttreg {} init {} domain {}..{}", reg.name, reg.initial, lo, hi);
            }
        }
    }
    for stmt in &program.statements {
        match &stmt.label {
            Some(label) => {
                let _ = writeln!(out, "{}: {}", label, render_instr(&stmt.instr));
            }
            None => {
                let _ = writeln!(out, "  {}", render_instr(&stmt.instr));
            }
        }
    }
    out
}

pub fn render_instr(instr: &Instr) -> String {
    match instr {
        Instr::Assign { var, expr } => format!("{var} = {}", render_expr(expr)),
        Instr::Receive { register, var } => format!("receive {register} -> {var}"),
        Instr::Send { register, expr } => format!("send {register} {}", render_expr(expr)),
        Instr::IfGoto { cond, target } => format!("if {} goto {target}", render_cond(cond)),
        Instr::Goto { target } => format!("goto {target}"),
        Instr::Output { expr } => format!("output {}", render_expr(expr)),
        Instr::Halt => "halt".to_string(),
    }
}

// Expression precedence: additive 1, multiplicative 2, atoms 3.
fn expr_prec(expr: &Expr) -> u8 {
    match expr {
        Expr::Binary { op: BinOp::Add | BinOp::Sub, .. } => 1,
        Expr::Binary { op: BinOp::Mul | BinOp::Mod, .. } => 2,
        _ => 3,
    }
}

pub fn render_expr(expr: &Expr) -> String {
    render_expr_prec(expr, 0)
}

fn render_expr_prec(expr: &Expr, min_prec: u8) -> String {
    match expr {
        Expr::Int(v) => v.to_string(),
        Expr::Var(name) => name.clone(),
        Expr::Input => "input".to_string(),
        Expr::Binary { op, lhs, rhs } => {
            let prec = expr_prec(expr);
            let op_str = match op {
                BinOp::Add => "+",
                BinOp::Sub => "-",
                BinOp::Mul => "*",
                BinOp::Mod => "mod",
            };
            // Left-associative: the right operand needs strictly higher
            // precedence to stay unparenthesized.
            let text = format!(
                "{} {} {}",
                render_expr_prec(lhs, prec),
                op_str,
                render_expr_prec(rhs, prec + 1)
            );
            if prec < min_prec {
                format!("({text})")
            } else {
                text
            }
        }
    }
}

// Condition precedence: or 1, and 2, not/compare 3.
fn cond_prec(cond: &Cond) -> u8 {
    match cond {
        Cond::Or(..) => 1,
        Cond::And(..) => 2,
        Cond::Not(_) | Cond::Compare { .. } => 3,
    }
}

pub fn render_cond(cond: &Cond) -> String {
    render_cond_prec(cond, 0)
}

fn render_cond_prec(cond: &Cond, min_prec: u8) -> String {
    let prec = cond_prec(cond);
    let text = match cond {
        Cond::Compare { op, lhs, rhs } => {
            let op_str = match op {
                CmpOp::Eq => "==",
                CmpOp::Ne => "!=",
                CmpOp::Lt => "<",
                CmpOp::Gt => ">",
                CmpOp::Le => "<=",
                CmpOp::Ge => ">=",
            };
            format!("{} {} {}", render_expr(lhs), op_str, render_expr(rhs))
        }
        Cond::And(a, b) => {
            format!("{} and {}", render_cond_prec(a, prec), render_cond_prec(b, prec + 1))
        }
        Cond::Or(a, b) => {
            format!("{} or {}", render_cond_prec(a, prec), render_cond_prec(b, prec + 1))
        }
        Cond::Not(inner) => format!("not {}", render_cond_prec(inner, prec)),
    };
    if prec < min_prec {
        format!("({text})")
    } else {
        text
    }
}
