//! Exact asymptotic limits of maximum-weight independent sets and matchings
//! in sparse random graphs, cross-checked against exact combinatorial
//! solvers at desk scale.
//!
//! The per-node limits of these optimization problems on random `r`-regular
//! graphs, on `G(n, c/n)`, and on cycles are governed by distributional
//! fixed-point equations for the *bonus* of a node — the value the optimum
//! loses when the node (or its incident edges) is forbidden. This crate
//! contains both sides of the story:
//!
//! * the analytic side: operator iteration on sample pools ([`rde`]),
//!   two-sided bracketing with a uniqueness verdict, and scalar closed
//!   forms for exponential, unit, and two-point weight laws
//!   ([`closedform`]);
//! * the combinatorial side: random graph generators ([`graphs`]) and
//!   exact solvers ([`solvers`]) — brute force, branch-and-bound,
//!   linear-time dynamic programming on forests and unicyclic components,
//!   and Karp–Sipser leaf removal — that verify every computed constant on
//!   finite instances.
//!
//! The [`harness`] module ties the two together into seeded, reproducible
//! experiments; the `sparselim` binary exposes them as subcommands. The
//! rendered guide under `book/` walks through the concepts; its code
//! snippets compile and run as doc-tests via the [`guide`] module.

pub mod cli;
pub mod closedform;
pub mod empdist;
pub mod graphs;
pub mod harness;
pub mod quad;
pub mod rde;
pub mod solvers;
pub mod stream;
pub mod weights;

mod guide;

pub use empdist::{dominates, EmpiricalDist};
pub use rde::{
    apply_operator, bracket_iterate, limit_from_pool, uniqueness_verdict, FixedPointBracket,
    LimitEstimate, Objective, Offspring, OperatorSpec, Quantity, RdeStream, RootDegree, Verdict,
};
pub use weights::{WeightKind, WeightSpec};
