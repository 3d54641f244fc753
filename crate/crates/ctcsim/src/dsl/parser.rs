//! Recursive descent parser for the CTC DSL.
//!
//! Grammar (whitespace-insensitive, `#` line comments):
//!
//! ```text
//! program  := "program" IDENT regdecl* stmt*
//! regdecl  := "ttreg" IDENT "init" INT ( "domain" INT ".." INT | "domain" "auto" )
//! stmt     := (IDENT ":")? instr
//! instr    := IDENT "=" expr | "receive" IDENT "->" IDENT | "send" IDENT expr
//!           | "if" cond "goto" IDENT | "goto" IDENT | "output" expr | "halt"
//! expr     := term (("+"|"-") term)* ; term := atom (("*"|"mod") atom)*
//! atom     := INT | IDENT | "input" | "(" expr ")"
//! cond     := bor ; bor := band ("or" band)* ; band := bnot ("and" bnot)*
//! bnot     := "not" bnot | expr CMP expr | "(" cond ")" ; CMP := "=="|"!="|"<"|">"|"<="|">="
//! ```
//!
//! INT is a signed decimal literal; the sign is consumed where an INT or atom
//! is expected, so `p - 1` stays a subtraction while `send tt -1` sends the
//! literal -1.

use std::collections::BTreeMap;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::validate::validate;
use super::{ParseError, SyntaxError};

pub fn parse(source: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser { tokens, pos: 0 };
    let program = parser.program()?;
    let report = validate(&program);
    match report.violations.into_iter().next() {
        Some(first) => Err(ParseError::Invalid(first)),
        None => Ok(program),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.tok)
    }

    fn here(&self) -> (u32, u32) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.col),
            // Past the end: report at the last token.
            None => self.tokens.last().map(|t| (t.line, t.col)).unwrap_or((1, 1)),
        }
    }

    fn line(&self) -> u32 {
        self.here().0
    }

    fn err(&self, message: impl Into<String>) -> SyntaxError {
        let (line, col) = self.here();
        SyntaxError { line, col, message: message.into() }
    }

    fn expected(&self, what: &str) -> SyntaxError {
        match self.peek() {
            Some(tok) => self.err(format!("expected {what}, found {}", tok.describe())),
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.expected(what)),
        }
    }

    /// INT with an optional leading minus.
    fn signed_int(&mut self) -> PResult<i64> {
        let negative = self.eat(&Tok::Minus);
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(if negative { -v } else { v })
            }
            _ => Err(self.expected("an integer literal")),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        self.expect(Tok::Program, "`program`")?;
        let name = self.ident("a program name")?;

        let mut registers = Vec::new();
        while self.peek() == Some(&Tok::Ttreg) {
            registers.push(self.regdecl()?);
        }

        let mut statements = Vec::new();
        while self.peek().is_some() {
            statements.push(self.statement()?);
        }

        // Label table keeps the first occurrence; duplicates are reported by
        // the validator.
        let mut labels = BTreeMap::new();
        for (index, stmt) in statements.iter().enumerate() {
            if let Some(label) = &stmt.label {
                labels.entry(label.clone()).or_insert(index);
            }
        }

        Ok(Program { name, registers, statements, labels })
    }

    fn regdecl(&mut self) -> PResult<RegisterDecl> {
        let line = self.line();
        self.expect(Tok::Ttreg, "`ttreg`")?;
        let name = self.ident("a register name")?;
        self.expect(Tok::Init, "`init`")?;
        let initial = self.signed_int()?;
        self.expect(Tok::Domain, "`domain`")?;
        let domain = if self.eat(&Tok::Auto) {
            Domain::Auto
        } else {
            let lo = self.signed_int()?;
            self.expect(Tok::DotDot, "`..`")?;
            let hi = self.signed_int()?;
            Domain::Interval { lo, hi }
        };
        Ok(RegisterDecl { name, initial, domain, line })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let line = self.line();
        let label = match (self.peek(), self.peek2()) {
            (Some(Tok::Ident(name)), Some(Tok::Colon)) => {
                let name = name.clone();
                self.pos += 2;
                Some(name)
            }
            _ => None,
        };
        let instr = self.instr()?;
        Ok(Statement { label, instr, line })
    }

    fn instr(&mut self) -> PResult<Instr> {
        match self.peek() {
            Some(Tok::Receive) => {
                self.pos += 1;
                let register = self.ident("a register name")?;
                self.expect(Tok::Arrow, "`->`")?;
                let var = self.ident("a variable name")?;
                Ok(Instr::Receive { register, var })
            }
            Some(Tok::Send) => {
                self.pos += 1;
                let register = self.ident("a register name")?;
                let expr = self.expr()?;
                Ok(Instr::Send { register, expr })
            }
            Some(Tok::If) => {
                self.pos += 1;
                let cond = self.cond()?;
                self.expect(Tok::Goto, "`goto`")?;
                let target = self.ident("a label")?;
                Ok(Instr::IfGoto { cond, target })
            }
            Some(Tok::Goto) => {
                self.pos += 1;
                let target = self.ident("a label")?;
                Ok(Instr::Goto { target })
            }
            Some(Tok::Output) => {
                self.pos += 1;
                let expr = self.expr()?;
                Ok(Instr::Output { expr })
            }
            Some(Tok::Halt) => {
                self.pos += 1;
                Ok(Instr::Halt)
            }
            Some(Tok::Ident(_)) => {
                let var = self.ident("a variable name")?;
                self.expect(Tok::Assign, "`=`")?;
                let expr = self.expr()?;
                Ok(Instr::Assign { var, expr })
            }
            _ => Err(self.expected("a statement")),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.atom()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Mod) => BinOp::Mod,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.atom()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) };
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Minus) => {
                // Signed literal only; general negation is not in the grammar.
                Ok(Expr::Int(self.signed_int()?))
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Input) => {
                self.pos += 1;
                Ok(Expr::Input)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.expected("an expression")),
        }
    }

    fn cond(&mut self) -> PResult<Cond> {
        let mut lhs = self.band()?;
        while self.eat(&Tok::Or) {
            let rhs = self.band()?;
            lhs = Cond::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn band(&mut self) -> PResult<Cond> {
        let mut lhs = self.bnot()?;
        while self.eat(&Tok::And) {
            let rhs = self.bnot()?;
            lhs = Cond::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn bnot(&mut self) -> PResult<Cond> {
        if self.eat(&Tok::Not) {
            return Ok(Cond::Not(Box::new(self.bnot()?)));
        }
        // `(` is ambiguous: it may open a parenthesized condition or a
        // parenthesized expression inside a comparison. A parenthesized
        // group is a condition exactly when it contains a comparison at its
        // top nesting level, so try the condition reading and fall back.
        if self.peek() == Some(&Tok::LParen) {
            let saved = self.pos;
            self.pos += 1;
            if let Ok(inner) = self.cond() {
                if self.eat(&Tok::RParen) {
                    return Ok(inner);
                }
            }
            self.pos = saved;
        }
        let lhs = self.expr()?;
        let op = match self.peek() {
            Some(Tok::EqEq) => CmpOp::Eq,
            Some(Tok::Ne) => CmpOp::Ne,
            Some(Tok::Lt) => CmpOp::Lt,
            Some(Tok::Gt) => CmpOp::Gt,
            Some(Tok::Le) => CmpOp::Le,
            Some(Tok::Ge) => CmpOp::Ge,
            _ => return Err(self.expected("a comparison operator")),
        };
        self.pos += 1;
        let rhs = self.expr()?;
        Ok(Cond::Compare { op, lhs, rhs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::ViolationKind;

    #[test]
    fn parses_a_minimal_program() {
        let p = parse("program tiny\noutput input\nhalt").unwrap();
        assert_eq!(p.name, "tiny");
        assert_eq!(p.statements.len(), 2);
        assert!(p.registers.is_empty());
    }

    #[test]
    fn parses_registers_and_labels() {
        let p = parse(
            "program demo\nttreg tt init -1 domain auto\nttreg k init 0 domain 0..5\n\
             L: x = 1\ngoto L",
        )
        .unwrap();
        assert_eq!(p.registers.len(), 2);
        assert_eq!(p.registers[0].initial, -1);
        assert_eq!(p.registers[0].domain, Domain::Auto);
        assert_eq!(p.registers[1].domain, Domain::Interval { lo: 0, hi: 5 });
        assert_eq!(p.labels["L"], 0);
    }

    #[test]
    fn signed_literals_and_subtraction() {
        let p = parse("program e\nx = 2 - 1\ny = -1\nz = x - -1").unwrap();
        match &p.statements[0].instr {
            Instr::Assign { expr: Expr::Binary { op: BinOp::Sub, .. }, .. } => {}
            other => panic!("wrong parse: {other:?}"),
        }
        match &p.statements[1].instr {
            Instr::Assign { expr: Expr::Int(-1), .. } => {}
            other => panic!("wrong parse: {other:?}"),
        }
        match &p.statements[2].instr {
            Instr::Assign { expr: Expr::Binary { op: BinOp::Sub, rhs, .. }, .. } => {
                assert_eq!(**rhs, Expr::Int(-1));
            }
            other => panic!("wrong parse: {other:?}"),
        }
    }

    #[test]
    fn paren_cond_vs_paren_expr() {
        let p = parse("program e\nif (x + 1) * 2 == 4 goto L\nL: halt").unwrap();
        match &p.statements[0].instr {
            Instr::IfGoto { cond: Cond::Compare { op: CmpOp::Eq, .. }, .. } => {}
            other => panic!("wrong parse: {other:?}"),
        }
        let p = parse("program e\nif (x == 1) and not (y == 2 or z < 3) goto L\nL: halt").unwrap();
        match &p.statements[0].instr {
            Instr::IfGoto { cond: Cond::And(_, b), .. } => match &**b {
                Cond::Not(inner) => match &**inner {
                    Cond::Or(..) => {}
                    other => panic!("wrong parse: {other:?}"),
                },
                other => panic!("wrong parse: {other:?}"),
            },
            other => panic!("wrong parse: {other:?}"),
        }
    }

    #[test]
    fn precedence_mul_before_add() {
        let p = parse("program e\nx = 1 + 2 * 3").unwrap();
        match &p.statements[0].instr {
            Instr::Assign { expr: Expr::Binary { op: BinOp::Add, rhs, .. }, .. } => match &**rhs {
                Expr::Binary { op: BinOp::Mul, .. } => {}
                other => panic!("wrong parse: {other:?}"),
            },
            other => panic!("wrong parse: {other:?}"),
        }
    }

    #[test]
    fn unknown_label_is_reported_with_its_name() {
        let err = parse("program e\ngoto NOWHERE").unwrap_err();
        match err {
            ParseError::Invalid(v) => {
                assert_eq!(v.kind, ViolationKind::UnknownLabel);
                assert_eq!(v.token, "NOWHERE");
                assert_eq!(v.line, 2);
            }
            other => panic!("expected a validation error, got {other}"),
        }
    }

    #[test]
    fn duplicate_receive_is_reported() {
        let err = parse(
            "program e\nttreg tt init -1 domain auto\nreceive tt -> p\nreceive tt -> q\nhalt",
        )
        .unwrap_err();
        match err {
            ParseError::Invalid(v) => {
                assert_eq!(v.kind, ViolationKind::DuplicateReceive);
                assert_eq!(v.token, "tt");
                assert_eq!(v.line, 4);
            }
            other => panic!("expected a validation error, got {other}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse("program e\nx = = 1").unwrap_err();
        match err {
            ParseError::Syntax(s) => {
                assert_eq!(s.line, 2);
                assert!(s.message.contains("expected an expression"));
            }
            other => panic!("expected a syntax error, got {other}"),
        }
    }

    #[test]
    fn keywords_are_reserved() {
        assert!(parse("program e\ninput = 1").is_err());
        assert!(parse("program e\nhalt = 1").is_err());
    }
}
