//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?            // right-associative
//! atom    := NUMBER | 'x' | 'pi' | 'e'
//!          | FUNC '(' expr (',' expr)* ')'
//!          | '(' expr ')'
//! ```
//!
//! The exponent is parsed at the `unary` level, so `2^-3` is valid while
//! `-x^2` still means `-(x^2)`. Errors carry the byte offset into the
//! source string.

use super::{BinaryOp, Expr, Function, NamedConst};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at byte {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("malformed number at byte {at}")]
    MalformedNumber { at: usize },
    #[error("unknown identifier {name:?} at byte {at}")]
    UnknownIdentifier { name: String, at: usize },
    #[error("{func} takes {expected} argument(s), found {found} at byte {at}")]
    WrongArity {
        func: &'static str,
        expected: usize,
        found: usize,
        at: usize,
    },
    #[error("expected {expected} at byte {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the next token with the byte offset where it starts.
    fn next(&mut self) -> Result<Option<(Tok, usize)>, ParseError> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let at = self.pos;
        let b = self.bytes[at];
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' | b'.' => return Ok(Some((self.number(at)?, at))),
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut end = at;
                while end < self.bytes.len()
                    && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
                {
                    end += 1;
                }
                self.pos = end;
                return Ok(Some((Tok::Ident(self.src[at..end].to_owned()), at)));
            }
            _ => {
                let ch = self.src[at..].chars().next().unwrap();
                return Err(ParseError::UnexpectedChar { ch, at });
            }
        };
        self.pos += 1;
        Ok(Some((tok, at)))
    }

    fn number(&mut self, at: usize) -> Result<Tok, ParseError> {
        let mut end = at;
        let mut saw_digit = false;
        while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
            end += 1;
            saw_digit = true;
        }
        if end < self.bytes.len() && self.bytes[end] == b'.' {
            end += 1;
            while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                end += 1;
                saw_digit = true;
            }
        }
        // Exponent part: 1e-3, 2.5E+10. Only consumed when well-formed so a
        // trailing identifier like `2e` is caught as malformed.
        if saw_digit && end < self.bytes.len() && (self.bytes[end] | 0x20) == b'e' {
            let mut cursor = end + 1;
            if cursor < self.bytes.len()
                && (self.bytes[cursor] == b'+' || self.bytes[cursor] == b'-')
            {
                cursor += 1;
            }
            if cursor < self.bytes.len() && self.bytes[cursor].is_ascii_digit() {
                while cursor < self.bytes.len() && self.bytes[cursor].is_ascii_digit() {
                    cursor += 1;
                }
                end = cursor;
            } else {
                return Err(ParseError::MalformedNumber { at });
            }
        }
        if !saw_digit {
            return Err(ParseError::MalformedNumber { at });
        }
        let text = &self.src[at..end];
        let value: f64 = text
            .parse()
            .map_err(|_| ParseError::MalformedNumber { at })?;
        self.pos = end;
        Ok(Tok::Number(value))
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.idx)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &'static str) -> Result<usize, ParseError> {
        match self.bump() {
            Some((tok, at)) if tok == want => Ok(at),
            Some((_, at)) => Err(ParseError::Expected { expected: what, at }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some((tok, _)) = self.peek() {
            let op = match tok {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => break,
            };
            self.idx += 1;
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((tok, _)) = self.peek() {
            let op = match tok {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => break,
            };
            self.idx += 1;
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.idx += 1;
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.idx += 1;
            let exp = self.unary()?;
            return Ok(Expr::binary(BinaryOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Some((Tok::Number(v), _)) => Ok(Expr::Number(v)),
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Some((Tok::Ident(name), at)) => self.ident(name, at),
            Some((_, at)) => Err(ParseError::Expected {
                expected: "expression",
                at,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn ident(&mut self, name: String, at: usize) -> Result<Expr, ParseError> {
        match name.as_str() {
            "x" => return Ok(Expr::Var),
            "pi" => return Ok(Expr::Const(NamedConst::Pi)),
            "e" => return Ok(Expr::Const(NamedConst::E)),
            _ => {}
        }
        let Some(func) = Function::from_name(&name) else {
            return Err(ParseError::UnknownIdentifier { name, at });
        };
        self.expect(Tok::LParen, "opening parenthesis")?;
        let mut args = vec![self.expr()?];
        while let Some((Tok::Comma, _)) = self.peek() {
            self.idx += 1;
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen, "closing parenthesis")?;
        if args.len() != func.arity() {
            return Err(ParseError::WrongArity {
                func: func.name(),
                expected: func.arity(),
                found: args.len(),
                at,
            });
        }
        Ok(Expr::Call(func, args))
    }
}

/// Parses `src` into an [`Expr`], or reports the first error with its byte
/// offset.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut lexer = Lexer::new(src);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next()? {
        toks.push(t);
    }
    let mut parser = Parser { toks, idx: 0 };
    let ast = parser.expr()?;
    if let Some((_, at)) = parser.peek() {
        return Err(ParseError::Expected {
            expected: "end of input",
            at: *at,
        });
    }
    Ok(ast)
}
