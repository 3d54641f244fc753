//! Abstract syntax for the CTC DSL.
//!
//! Equality on AST nodes is structural: source line numbers are carried for
//! diagnostics but ignored by `PartialEq`, so a program compares equal to its
//! re-parsed pretty-printed form.

use std::collections::BTreeMap;

/// Candidate-value domain of a time-travel register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Resolved at solve time from how the register is used.
    Auto,
    /// Explicit inclusive interval `lo..hi`.
    Interval { lo: i64, hi: i64 },
}

/// A `ttreg` declaration.
#[derive(Debug, Clone)]
pub struct RegisterDecl {
    pub name: String,
    /// Value the register holds if nothing is ever sent back to it.
    pub initial: i64,
    pub domain: Domain,
    pub line: u32,
}

impl PartialEq for RegisterDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.initial == other.initial && self.domain == other.domain
    }
}
impl Eq for RegisterDecl {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Mod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    /// The program input N.
    Input,
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

impl Expr {
    /// Does this expression mention the variable `name`?
    pub fn mentions_var(&self, name: &str) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var(v) => v == name,
            Expr::Input => false,
            Expr::Binary { lhs, rhs, .. } => lhs.mentions_var(name) || rhs.mentions_var(name),
        }
    }

    /// Does this expression mention `input`?
    pub fn mentions_input(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Var(_) => false,
            Expr::Input => true,
            Expr::Binary { lhs, rhs, .. } => lhs.mentions_input() || rhs.mentions_input(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cond {
    Compare { op: CmpOp, lhs: Expr, rhs: Expr },
    And(Box<Cond>, Box<Cond>),
    Or(Box<Cond>, Box<Cond>),
    Not(Box<Cond>),
}

impl Cond {
    /// Visit every comparison leaf of this condition tree.
    pub fn for_each_compare(&self, f: &mut impl FnMut(&Expr, &Expr)) {
        match self {
            Cond::Compare { lhs, rhs, .. } => f(lhs, rhs),
            Cond::And(a, b) | Cond::Or(a, b) => {
                a.for_each_compare(f);
                b.for_each_compare(f);
            }
            Cond::Not(c) => c.for_each_compare(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    Assign { var: String, expr: Expr },
    Receive { register: String, var: String },
    Send { register: String, expr: Expr },
    IfGoto { cond: Cond, target: String },
    Goto { target: String },
    Output { expr: Expr },
    Halt,
}

/// One statement: an instruction with an optional label and its source line.
#[derive(Debug, Clone)]
pub struct Statement {
    pub label: Option<String>,
    pub instr: Instr,
    pub line: u32,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.instr == other.instr
    }
}
impl Eq for Statement {}

/// A validated CTC-DSL program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub name: String,
    pub registers: Vec<RegisterDecl>,
    pub statements: Vec<Statement>,
    /// Label -> statement index.
    pub labels: BTreeMap<String, usize>,
}

impl Program {
    pub fn register(&self, name: &str) -> Option<&RegisterDecl> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// The receive statement for `register`, if any: `(index, variable)`.
    pub fn receive_of(&self, register: &str) -> Option<(usize, &str)> {
        self.statements.iter().enumerate().find_map(|(i, s)| match &s.instr {
            Instr::Receive { register: r, var } if r == register => Some((i, var.as_str())),
            _ => None,
        })
    }
}
