//! Arithmetic expressions in one variable `x`.
//!
//! The grammar (see [`parse`]) covers the binary operators `+ - * / ^`,
//! unary minus, the functions `sin cos tan exp log abs sqrt min max`, the
//! named constants `pi` and `e`, numeric literals, and the variable `x`.
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)`; there is no implicit multiplication. `log` is the natural
//! logarithm.
//!
//! Evaluation is IEEE double precision. Domain violations (division by
//! zero, `log` of a non-positive value, `sqrt` of a negative value) and any
//! non-finite intermediate result are reported as [`EvalError`] instead of
//! silently propagating NaN or infinity.
//!
//! ```
//! use indexbound::expr::parse;
//!
//! let f = parse("exp(-cos(4*x-3))+(4*x-3)^2/250-1").unwrap();
//! let v = f.eval(0.75).unwrap();
//! assert!((v - (1.0f64.exp().recip() - 1.0)).abs() < 1e-15);
//! ```

mod parse;

pub use parse::{parse, ParseError};

use std::fmt;
use thiserror::Error;

/// Named mathematical constants accepted as bare identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedConst {
    Pi,
    E,
}

impl NamedConst {
    pub fn value(self) -> f64 {
        match self {
            NamedConst::Pi => std::f64::consts::PI,
            NamedConst::E => std::f64::consts::E,
        }
    }

    fn name(self) -> &'static str {
        match self {
            NamedConst::Pi => "pi",
            NamedConst::E => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

/// Built-in functions. `min` and `max` take two arguments, the rest one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Abs,
    Sqrt,
    Min,
    Max,
}

impl Function {
    pub fn arity(self) -> usize {
        match self {
            Function::Min | Function::Max => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Abs => "abs",
            Function::Sqrt => "sqrt",
            Function::Min => "min",
            Function::Max => "max",
        }
    }

    pub fn from_name(name: &str) -> Option<Function> {
        match name {
            "sin" => Some(Function::Sin),
            "cos" => Some(Function::Cos),
            "tan" => Some(Function::Tan),
            "exp" => Some(Function::Exp),
            "log" => Some(Function::Log),
            "abs" => Some(Function::Abs),
            "sqrt" => Some(Function::Sqrt),
            "min" => Some(Function::Min),
            "max" => Some(Function::Max),
            _ => None,
        }
    }
}

/// Expression tree. The only free variable is `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var,
    Const(NamedConst),
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Function, Vec<Expr>),
}

/// Evaluation failure at a specific operation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("log of non-positive value {0}")]
    LogDomain(f64),
    #[error("sqrt of negative value {0}")]
    SqrtDomain(f64),
    #[error("non-finite result from {op}")]
    NonFinite { op: &'static str },
}

impl Expr {
    pub fn number(v: f64) -> Expr {
        Expr::Number(v)
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    pub fn binary(op: BinaryOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn call(f: Function, args: Vec<Expr>) -> Expr {
        debug_assert_eq!(f.arity(), args.len());
        Expr::Call(f, args)
    }

    /// Evaluates the expression at `x`, reporting domain violations and any
    /// non-finite intermediate instead of letting NaN/inf flow through.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Number(c) => *c,
            Expr::Var => x,
            Expr::Const(c) => c.value(),
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Binary(op, l, r) => {
                let a = l.eval(x)?;
                let b = r.eval(x)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => {
                        if b == 0.0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        a / b
                    }
                    BinaryOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, args) => {
                let a = args[0].eval(x)?;
                match f {
                    Function::Sin => a.sin(),
                    Function::Cos => a.cos(),
                    Function::Tan => a.tan(),
                    Function::Exp => a.exp(),
                    Function::Log => {
                        if a <= 0.0 {
                            return Err(EvalError::LogDomain(a));
                        }
                        a.ln()
                    }
                    Function::Abs => a.abs(),
                    Function::Sqrt => {
                        if a < 0.0 {
                            return Err(EvalError::SqrtDomain(a));
                        }
                        a.sqrt()
                    }
                    Function::Min => a.min(args[1].eval(x)?),
                    Function::Max => a.max(args[1].eval(x)?),
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { op: self.op_name() })
        }
    }

    fn op_name(&self) -> &'static str {
        match self {
            Expr::Number(_) => "literal",
            Expr::Var => "variable",
            Expr::Const(_) => "constant",
            Expr::Neg(_) => "negation",
            Expr::Binary(op, ..) => match op {
                BinaryOp::Add => "addition",
                BinaryOp::Sub => "subtraction",
                BinaryOp::Mul => "multiplication",
                BinaryOp::Div => "division",
                BinaryOp::Pow => "power",
            },
            Expr::Call(f, _) => f.name(),
        }
    }

    // Precedence for minimal-parenthesis printing. Higher binds tighter.
    fn prec(&self) -> u8 {
        match self {
            Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
            Expr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
            // A negative literal prints with a leading minus, so it binds
            // like unary minus for parenthesization purposes.
            Expr::Number(v) if v.is_sign_negative() => 3,
            Expr::Neg(_) => 3,
            Expr::Binary(BinaryOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, out: &mut String, min: u8) {
        let p = self.prec();
        if p < min {
            out.push('(');
            self.fmt_prec(out, 0);
            out.push(')');
            return;
        }
        match self {
            Expr::Number(v) => {
                use std::fmt::Write;
                write!(out, "{v}").unwrap();
            }
            Expr::Var => out.push('x'),
            Expr::Const(c) => out.push_str(c.name()),
            Expr::Neg(e) => {
                out.push('-');
                e.fmt_prec(out, 3);
            }
            Expr::Binary(op, l, r) => {
                // Binary operators reproduce the exact tree shape: the right
                // operand of a left-associative operator is printed one level
                // tighter, and `^` keeps its left operand at atom level so
                // `(2^3)^2` and `-x` bases stay parenthesized.
                let (lmin, rmin) = match op {
                    BinaryOp::Add | BinaryOp::Sub => (1, 2),
                    BinaryOp::Mul | BinaryOp::Div => (2, 3),
                    BinaryOp::Pow => (5, 3),
                };
                l.fmt_prec(out, lmin);
                out.push(op.symbol());
                r.fmt_prec(out, rmin);
            }
            Expr::Call(f, args) => {
                out.push_str(f.name());
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    a.fmt_prec(out, 0);
                }
                out.push(')');
            }
        }
    }

    /// Canonical text form. Parsing the result reproduces the exact
    /// evaluation path of the original tree.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        self.fmt_prec(&mut s, 0);
        s
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(src: &str, x: f64) -> f64 {
        parse(src).unwrap().eval(x).unwrap()
    }

    #[test]
    fn precedence_mul_over_add() {
        assert_eq!(ev("2+3*4", 0.0), 14.0);
    }

    #[test]
    fn pow_right_associative() {
        assert_eq!(ev("2^3^2", 0.0), 512.0);
        assert_eq!(ev("(2^3)^2", 0.0), 64.0);
    }

    #[test]
    fn pow_binds_tighter_than_unary_minus() {
        assert_eq!(ev("-2^2", 0.0), -4.0);
        assert_eq!(ev("(-2)^2", 0.0), 4.0);
    }

    #[test]
    fn variable_identity() {
        assert_eq!(ev("x", 2.0), 2.0);
    }

    #[test]
    fn named_constants() {
        assert_eq!(ev("pi", 0.0), std::f64::consts::PI);
        assert_eq!(ev("e", 0.0), std::f64::consts::E);
    }

    #[test]
    fn chain_value_at_left_endpoint() {
        // cos(0) - sin(0) + 3/10 at x = -3.
        let v = ev("cos(7/5*(x+3))-sin(7*(x+3))+3/10", -3.0);
        assert_eq!(v, 1.3);
    }

    #[test]
    fn objective_value_at_reported_minimizer() {
        // Independently verified with 30-digit arithmetic.
        let v = ev("exp(-cos(4*x-3))+(4*x-3)^2/250-1", -0.77473979);
        assert!((v - (-0.477053235014)).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn domain_errors_are_reported() {
        assert_eq!(
            parse("1/x").unwrap().eval(0.0),
            Err(EvalError::DivisionByZero)
        );
        assert_eq!(
            parse("log(x)").unwrap().eval(-1.0),
            Err(EvalError::LogDomain(-1.0))
        );
        assert_eq!(
            parse("sqrt(x)").unwrap().eval(-4.0),
            Err(EvalError::SqrtDomain(-4.0))
        );
        assert!(matches!(
            parse("exp(x)").unwrap().eval(1e6),
            Err(EvalError::NonFinite { .. })
        ));
        assert!(matches!(
            parse("x^x").unwrap().eval(-0.5),
            Err(EvalError::NonFinite { .. })
        ));
    }

    #[test]
    fn min_max_are_binary() {
        assert_eq!(ev("min(2,3)", 0.0), 2.0);
        assert_eq!(ev("max(2,3)", 0.0), 3.0);
        assert_eq!(ev("min(x,x^2)", 0.5), 0.25);
    }

    #[test]
    fn serialize_preserves_shape() {
        for src in [
            "2^3^2",
            "(2^3)^2",
            "-x^2",
            "(-x)^2",
            "-(x+1)",
            "x",
            "x-(1-x)",
            "x/(2*x)",
            "1-2-3",
            "min(x,max(1,x))",
            "exp(-cos(4*x-3))+(4*x-3)^2/250-1",
            "sin(x)^3*exp(-sin(3*x))+1/2",
        ] {
            let ast = parse(src).unwrap();
            let printed = ast.serialize();
            let reparsed = parse(&printed).unwrap();
            assert_eq!(ast, reparsed, "{src} -> {printed}");
        }
    }

    #[test]
    fn serialize_negative_literal_like_unary_minus() {
        let ast = Expr::binary(BinaryOp::Mul, Expr::number(-1.5), Expr::var());
        let printed = ast.serialize();
        assert_eq!(printed, "-1.5*x");
        let reparsed = parse(&printed).unwrap();
        for x in [-2.0, 0.0, 3.25] {
            assert_eq!(
                ast.eval(x).unwrap().to_bits(),
                reparsed.eval(x).unwrap().to_bits()
            );
        }
    }
}
