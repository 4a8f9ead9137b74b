//! Plain-text problem files.
//!
//! A problem file is line oriented:
//!
//! ```text
//! # anything after a hash is a comment
//! name two pockets
//! domain -3 2
//! constraint sin(3*x) | K=3
//! constraint 1/4-(x+1)^2 | K=2.5 | partial
//! objective (x+2)^2/4 | K=3
//! reference -2 0
//! ```
//!
//! Each directive starts a line; blank lines and `#` comment lines are
//! skipped. `name`, `domain` and `objective` are required and must appear
//! exactly once. `constraint` lines may repeat; their order in the file is
//! the order in which solvers evaluate them, which is part of the problem
//! statement, not a hint. Function lines put the expression first and the
//! Lipschitz bound after a `|` separator as `K=<number>`; constraints may
//! add `| partial` to mark an expression that is allowed to fail outside
//! the region guarded by the preceding constraints. `reference` is an
//! optional known solution (`x` alone or `x f`) used only in reports.
//!
//! [`to_text`] emits this same format with canonically serialized
//! expressions; writing and re-reading a spec reproduces it exactly,
//! including every floating-point bit.

use crate::expr::{parse, ParseError};
use crate::problem::{FunctionDef, ProblemSpec, Reference};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemFileError {
    #[error("line {line}: unknown directive {word:?}")]
    UnknownDirective { line: usize, word: String },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: expression error: {source}")]
    Expression { line: usize, source: ParseError },
    #[error("line {line}: {what} given more than once")]
    Duplicate { line: usize, what: &'static str },
    #[error("missing required directive {0:?}")]
    Missing(&'static str),
}

fn parse_number(line: usize, what: &str, text: &str) -> Result<f64, ProblemFileError> {
    text.parse().map_err(|_| ProblemFileError::Malformed {
        line,
        msg: format!("{what} is not a number: {text:?}"),
    })
}

/// Parses a `<expr> | K=<num> [| partial]` payload.
fn parse_function(
    line: usize,
    rest: &str,
    allow_partial: bool,
) -> Result<FunctionDef, ProblemFileError> {
    let mut pieces = rest.split('|').map(str::trim);
    let src = pieces.next().unwrap_or("");
    if src.is_empty() {
        return Err(ProblemFileError::Malformed {
            line,
            msg: "missing expression".to_owned(),
        });
    }
    let expr = parse(src).map_err(|source| ProblemFileError::Expression { line, source })?;
    let mut k = None;
    let mut partial = false;
    for piece in pieces {
        if let Some(num) = piece.strip_prefix("K=") {
            if k.replace(parse_number(line, "K", num.trim())?).is_some() {
                return Err(ProblemFileError::Duplicate { line, what: "K" });
            }
        } else if piece == "partial" && allow_partial {
            partial = true;
        } else {
            return Err(ProblemFileError::Malformed {
                line,
                msg: format!("unexpected option {piece:?}"),
            });
        }
    }
    let k = k.ok_or(ProblemFileError::Malformed {
        line,
        msg: "missing K=<number> option".to_owned(),
    })?;
    Ok(FunctionDef { expr, k, partial })
}

/// Parses one problem from file text. The result is structurally checked
/// with [`ProblemSpec::validate`] by callers that need a runnable problem;
/// this function only enforces the file grammar.
pub fn from_text(text: &str) -> Result<ProblemSpec, ProblemFileError> {
    let mut name: Option<String> = None;
    let mut domain: Option<(f64, f64)> = None;
    let mut objective: Option<FunctionDef> = None;
    let mut reference: Option<Reference> = None;
    let mut constraints = Vec::new();

    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (word, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        match word {
            "name" => {
                if rest.is_empty() {
                    return Err(ProblemFileError::Malformed {
                        line,
                        msg: "name must not be empty".to_owned(),
                    });
                }
                if name.replace(rest.to_owned()).is_some() {
                    return Err(ProblemFileError::Duplicate { line, what: "name" });
                }
            }
            "domain" => {
                let mut parts = rest.split_whitespace();
                let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                    (Some(a), Some(b), None) => (
                        parse_number(line, "domain left end", a)?,
                        parse_number(line, "domain right end", b)?,
                    ),
                    _ => {
                        return Err(ProblemFileError::Malformed {
                            line,
                            msg: "domain needs exactly two numbers".to_owned(),
                        })
                    }
                };
                if domain.replace((a, b)).is_some() {
                    return Err(ProblemFileError::Duplicate {
                        line,
                        what: "domain",
                    });
                }
            }
            "constraint" => constraints.push(parse_function(line, rest, true)?),
            "objective" => {
                if objective
                    .replace(parse_function(line, rest, false)?)
                    .is_some()
                {
                    return Err(ProblemFileError::Duplicate {
                        line,
                        what: "objective",
                    });
                }
            }
            "reference" => {
                let mut parts = rest.split_whitespace();
                let r = match (parts.next(), parts.next(), parts.next()) {
                    (Some(x), f, None) => Reference {
                        x: parse_number(line, "reference x", x)?,
                        f: f.map(|f| parse_number(line, "reference f", f))
                            .transpose()?,
                    },
                    _ => {
                        return Err(ProblemFileError::Malformed {
                            line,
                            msg: "reference needs one or two numbers".to_owned(),
                        })
                    }
                };
                if reference.replace(r).is_some() {
                    return Err(ProblemFileError::Duplicate {
                        line,
                        what: "reference",
                    });
                }
            }
            _ => {
                return Err(ProblemFileError::UnknownDirective {
                    line,
                    word: word.to_owned(),
                })
            }
        }
    }

    let (a, b) = domain.ok_or(ProblemFileError::Missing("domain"))?;
    let mut spec = ProblemSpec::new(
        name.ok_or(ProblemFileError::Missing("name"))?,
        a,
        b,
        constraints,
        objective.ok_or(ProblemFileError::Missing("objective"))?,
    );
    spec.reference = reference;
    Ok(spec)
}

/// Emits the canonical file form of a problem.
pub fn to_text(spec: &ProblemSpec) -> String {
    let mut out = String::new();
    writeln!(out, "name {}", spec.name).unwrap();
    writeln!(out, "domain {} {}", spec.a, spec.b).unwrap();
    for c in &spec.constraints {
        let partial = if c.partial { " | partial" } else { "" };
        writeln!(out, "constraint {} | K={}{}", c.expr, c.k, partial).unwrap();
    }
    writeln!(
        out,
        "objective {} | K={}",
        spec.objective.expr, spec.objective.k
    )
    .unwrap();
    if let Some(r) = spec.reference {
        match r.f {
            Some(f) => writeln!(out, "reference {} {}", r.x, f).unwrap(),
            None => writeln!(out, "reference {}", r.x).unwrap(),
        }
    }
    out
}
