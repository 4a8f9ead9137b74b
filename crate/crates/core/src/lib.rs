//! Global optimization of univariate Lipschitz problems with ordered
//! multiextremal constraints.
//!
//! The crate solves
//!
//! ```text
//! minimize    f(x)           over x in [a, b]
//! subject to  g_1(x) <= 0, ..., g_m(x) <= 0
//! ```
//!
//! where the objective and every constraint are only assumed Lipschitz
//! continuous (they may be multiextremal and non-differentiable, and the
//! feasible set may be a union of disjoint intervals). Two solvers are
//! provided:
//!
//! * [`ibba`] handles the constraints natively. Constraints are ordered and
//!   a trial at `x` evaluates them only up to the first violated one, so
//!   infeasible regions are explored at a fraction of the full evaluation
//!   cost, constraints may be partially defined, and infeasibility of the
//!   whole problem is detected and certified. A branch-and-bound loop over
//!   subintervals drives trials into the most promising interval.
//! * [`pen`] is the classic alternative: fold the constraints into the
//!   objective with an exterior penalty and minimize the result with the
//!   sawtooth (piecewise-linear lower envelope) method, retuning the
//!   penalty coefficient when the answer comes back infeasible.
//!
//! Supporting modules: [`expr`] parses the small expression language used
//! to describe problems, [`problem`] defines problem instances and the
//! per-function evaluation ledger, [`oracle`] provides brute-force grid
//! verification utilities, and the I/O modules handle problem files,
//! trial traces, benchmark reports, and SVG diagrams of solver dynamics.

pub mod battery;
pub mod cli;
pub mod expr;
pub mod fixtures;
pub mod ibba;
pub mod index;
pub mod oracle;
pub mod pen;
pub mod problem;
pub mod problem_file;
pub mod report;
pub mod support;
pub mod svg;
pub mod trace;
