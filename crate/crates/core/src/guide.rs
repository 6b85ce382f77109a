//! Keeps the book's code snippets honest.
//!
//! mdbook cannot compile-test snippets against this crate, so each chapter
//! is re-exposed here as a doc comment; `cargo test --doc` then builds and
//! runs every fenced Rust block. One module per chapter makes a failing
//! snippet traceable to its markdown file.

#![allow(unused)]

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/pools-and-weights.md")]
pub mod pools_and_weights {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/operators-and-brackets.md")]
pub mod operators_and_brackets {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/closed-forms.md")]
pub mod closed_forms {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/graphs-and-solvers.md")]
pub mod graphs_and_solvers {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/leaf-removal.md")]
pub mod leaf_removal {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}
