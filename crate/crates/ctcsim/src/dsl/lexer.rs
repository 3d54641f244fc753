//! Hand-rolled lexer for the CTC DSL. Whitespace-insensitive, `#` starts a
//! line comment.

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    // Keywords.
    Program,
    Ttreg,
    Init,
    Domain,
    Auto,
    Receive,
    Send,
    If,
    Goto,
    Output,
    Halt,
    Input,
    Mod,
    And,
    Or,
    Not,
    // Punctuation and operators.
    Assign, // =
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Colon,
    Arrow,  // ->
    DotDot, // ..
    EqEq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Program => "`program`".into(),
            Tok::Ttreg => "`ttreg`".into(),
            Tok::Init => "`init`".into(),
            Tok::Domain => "`domain`".into(),
            Tok::Auto => "`auto`".into(),
            Tok::Receive => "`receive`".into(),
            Tok::Send => "`send`".into(),
            Tok::If => "`if`".into(),
            Tok::Goto => "`goto`".into(),
            Tok::Output => "`output`".into(),
            Tok::Halt => "`halt`".into(),
            Tok::Input => "`input`".into(),
            Tok::Mod => "`mod`".into(),
            Tok::And => "`and`".into(),
            Tok::Or => "`or`".into(),
            Tok::Not => "`not`".into(),
            Tok::Assign => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Ne => "`!=`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Ge => "`>=`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "program" => Tok::Program,
        "ttreg" => Tok::Ttreg,
        "init" => Tok::Init,
        "domain" => Tok::Domain,
        "auto" => Tok::Auto,
        "receive" => Tok::Receive,
        "send" => Tok::Send,
        "if" => Tok::If,
        "goto" => Tok::Goto,
        "output" => Tok::Output,
        "halt" => Tok::Halt,
        "input" => Tok::Input,
        "mod" => Tok::Mod,
        "and" => Tok::And,
        "or" => Tok::Or,
        "not" => Tok::Not,
        _ => return None,
    })
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! push {
        ($tok:expr, $c:expr) => {
            tokens.push(Token { tok: $tok, line, col: $c })
        };
    }

    while i < chars.len() {
        let c = chars[i];
        let start_col = col;
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
            }
            c if c.is_whitespace() => {
                col += 1;
                i += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => {
                push!(Tok::LParen, start_col);
                i += 1;
                col += 1;
            }
            ')' => {
                push!(Tok::RParen, start_col);
                i += 1;
                col += 1;
            }
            ':' => {
                push!(Tok::Colon, start_col);
                i += 1;
                col += 1;
            }
            '+' => {
                push!(Tok::Plus, start_col);
                i += 1;
                col += 1;
            }
            '*' => {
                push!(Tok::Star, start_col);
                i += 1;
                col += 1;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    push!(Tok::Arrow, start_col);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Minus, start_col);
                    i += 1;
                    col += 1;
                }
            }
            '.' => {
                if chars.get(i + 1) == Some(&'.') {
                    push!(Tok::DotDot, start_col);
                    i += 2;
                    col += 2;
                } else {
                    return Err(SyntaxError {
                        line,
                        col,
                        message: "unexpected `.` (did you mean `..`?)".into(),
                    });
                }
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    push!(Tok::EqEq, start_col);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Assign, start_col);
                    i += 1;
                    col += 1;
                }
            }
            '!' => {
                if chars.get(i + 1) == Some(&'=') {
                    push!(Tok::Ne, start_col);
                    i += 2;
                    col += 2;
                } else {
                    return Err(SyntaxError {
                        line,
                        col,
                        message: "unexpected `!` (did you mean `!=`?)".into(),
                    });
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    push!(Tok::Le, start_col);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Lt, start_col);
                    i += 1;
                    col += 1;
                }
            }
            '>' => {
                if chars.get(i + 1) == Some(&'=') {
                    push!(Tok::Ge, start_col);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Gt, start_col);
                    i += 1;
                    col += 1;
                }
            }
            c if c.is_ascii_digit() => {
                let mut value: i64 = 0;
                let mut overflow = false;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    let digit = chars[i] as i64 - '0' as i64;
                    value = match value.checked_mul(10).and_then(|v| v.checked_add(digit)) {
                        Some(v) => v,
                        None => {
                            overflow = true;
                            0
                        }
                    };
                    i += 1;
                    col += 1;
                }
                if overflow {
                    return Err(SyntaxError {
                        line,
                        col: start_col,
                        message: "integer literal does not fit in 64 bits".into(),
                    });
                }
                push!(Tok::Int(value), start_col);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    word.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                match keyword(&word) {
                    Some(tok) => push!(tok, start_col),
                    None => push!(Tok::Ident(word), start_col),
                }
            }
            other => {
                return Err(SyntaxError {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            toks("p = p + 1"),
            vec![
                Tok::Ident("p".into()),
                Tok::Assign,
                Tok::Ident("p".into()),
                Tok::Plus,
                Tok::Int(1)
            ]
        );
    }

    #[test]
    fn arrow_vs_minus() {
        assert_eq!(
            toks("receive tt -> p"),
            vec![Tok::Receive, Tok::Ident("tt".into()), Tok::Arrow, Tok::Ident("p".into())]
        );
        assert_eq!(toks("a - 1"), vec![Tok::Ident("a".into()), Tok::Minus, Tok::Int(1)]);
        assert_eq!(toks("a -1"), vec![Tok::Ident("a".into()), Tok::Minus, Tok::Int(1)]);
    }

    #[test]
    fn comparisons_and_ranges() {
        assert_eq!(toks("1..10"), vec![Tok::Int(1), Tok::DotDot, Tok::Int(10)]);
        assert_eq!(
            toks("a <= b >= c == d != e"),
            vec![
                Tok::Ident("a".into()),
                Tok::Le,
                Tok::Ident("b".into()),
                Tok::Ge,
                Tok::Ident("c".into()),
                Tok::EqEq,
                Tok::Ident("d".into()),
                Tok::Ne,
                Tok::Ident("e".into())
            ]
        );
    }

    #[test]
    fn comments_and_lines() {
        let tokens = tokenize("a = 1 # trailing\n# whole line\nb = 2").unwrap();
        assert_eq!(tokens[0].line, 1);
        assert_eq!(tokens[3].line, 3);
        assert_eq!(tokens[3].tok, Tok::Ident("b".into()));
    }

    #[test]
    fn bad_characters_are_errors() {
        assert!(tokenize("a = $").is_err());
        assert!(tokenize("a ! b").is_err());
        let err = tokenize("x = 99999999999999999999").unwrap_err();
        assert!(err.message.contains("64 bits"));
    }
}
