//! Trial traces: a line-oriented record of everything a solver did, exact
//! enough to replay the run.
//!
//! A trace file looks like
//!
//! ```text
//! #trace-v1
//! #problem: two wells
//! #method: ibba
//! #domain: -3 2
//! #m: 2
//! 1 -3 2 1.3 - - -
//! 2 2 1 1.4941833723776927 - - -
//! 3 -0.5 3 0.25 0.25 1 -1.75
//! ```
//!
//! One record per trial, in execution order: the trial number `k`, the
//! point `x`, its constraint index `nu`, the raw value of the deciding
//! function, the best feasible objective value after this trial (`-` while
//! none exists), and for trials produced by subdividing an interval the
//! 1-based rank `t` of the interval's left endpoint in the x-sorted row of
//! earlier trials plus that interval's characteristic `r` (`-` for the two
//! initial endpoint trials).
//!
//! Floating-point fields are printed with Rust's shortest round-trip
//! formatting, so parsing a trace reproduces the original values bit for
//! bit.

use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub k: u64,
    pub x: f64,
    pub index: usize,
    pub raw: f64,
    /// Best feasible objective value after this trial, if any.
    pub zstar: Option<f64>,
    /// Rank of the subdivided interval's left endpoint, absent for the
    /// initial endpoint trials.
    pub t: Option<usize>,
    /// Characteristic of the subdivided interval, absent likewise.
    pub r: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub problem: String,
    pub method: String,
    pub a: f64,
    pub b: f64,
    pub m: usize,
    pub records: Vec<TraceRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("missing or wrong magic line (expected \"#trace-v1\")")]
    BadMagic,
    #[error("missing header line {0:?}")]
    MissingHeader(&'static str),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

fn opt_f64(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_owned(), |v| format!("{v}"))
}

impl Trace {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("#trace-v1\n");
        writeln!(out, "#problem: {}", self.problem).unwrap();
        writeln!(out, "#method: {}", self.method).unwrap();
        writeln!(out, "#domain: {} {}", self.a, self.b).unwrap();
        writeln!(out, "#m: {}", self.m).unwrap();
        for r in &self.records {
            writeln!(
                out,
                "{} {} {} {} {} {} {}",
                r.k,
                r.x,
                r.index,
                r.raw,
                opt_f64(r.zstar),
                r.t.map_or_else(|| "-".to_owned(), |t| t.to_string()),
                opt_f64(r.r),
            )
            .unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Trace, TraceError> {
        let mut lines = text.lines().enumerate();
        let magic = lines.next().map(|(_, l)| l.trim_end());
        if magic != Some("#trace-v1") {
            return Err(TraceError::BadMagic);
        }

        let mut problem = None;
        let mut method = None;
        let mut domain = None;
        let mut m = None;
        let mut records = Vec::new();

        for (i, line) in lines {
            let line = line.trim_end();
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("#problem: ") {
                problem = Some(rest.to_owned());
            } else if let Some(rest) = line.strip_prefix("#method: ") {
                method = Some(rest.to_owned());
            } else if let Some(rest) = line.strip_prefix("#domain: ") {
                let mut it = rest.split_ascii_whitespace();
                let a = parse_f64(it.next(), lineno, "domain")?;
                let b = parse_f64(it.next(), lineno, "domain")?;
                domain = Some((a, b));
            } else if let Some(rest) = line.strip_prefix("#m: ") {
                m = Some(rest.trim().parse().map_err(|_| TraceError::Malformed {
                    line: lineno,
                    msg: format!("bad constraint count {rest:?}"),
                })?);
            } else if line.starts_with('#') {
                // Unknown comment lines are tolerated.
            } else {
                records.push(parse_record(line, lineno)?);
            }
        }

        Ok(Trace {
            problem: problem.ok_or(TraceError::MissingHeader("#problem"))?,
            method: method.ok_or(TraceError::MissingHeader("#method"))?,
            a: domain.ok_or(TraceError::MissingHeader("#domain"))?.0,
            b: domain.ok_or(TraceError::MissingHeader("#domain"))?.1,
            m: m.ok_or(TraceError::MissingHeader("#m"))?,
            records,
        })
    }
}

fn parse_f64(field: Option<&str>, line: usize, what: &str) -> Result<f64, TraceError> {
    field
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| TraceError::Malformed {
            line,
            msg: format!("bad {what} field"),
        })
}

fn parse_opt_f64(field: Option<&str>, line: usize, what: &str) -> Result<Option<f64>, TraceError> {
    match field {
        Some("-") => Ok(None),
        other => parse_f64(other, line, what).map(Some),
    }
}

fn parse_record(line: &str, lineno: usize) -> Result<TraceRecord, TraceError> {
    let mut it = line.split_ascii_whitespace();
    let malformed = |msg: &str| TraceError::Malformed {
        line: lineno,
        msg: msg.to_owned(),
    };
    let k = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| malformed("bad trial number"))?;
    let x = parse_f64(it.next(), lineno, "x")?;
    let index = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| malformed("bad index"))?;
    let raw = parse_f64(it.next(), lineno, "raw value")?;
    let zstar = parse_opt_f64(it.next(), lineno, "record value")?;
    let t = match it.next() {
        Some("-") => None,
        Some(s) => Some(s.parse().map_err(|_| malformed("bad rank"))?),
        None => return Err(malformed("missing rank field")),
    };
    let r = parse_opt_f64(it.next(), lineno, "characteristic")?;
    if it.next().is_some() {
        return Err(malformed("trailing fields"));
    }
    Ok(TraceRecord {
        k,
        x,
        index,
        raw,
        zstar,
        t,
        r,
    })
}
