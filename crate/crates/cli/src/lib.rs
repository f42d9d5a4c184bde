//! Library side of the `req2uml` command-line tool: input collection, the
//! run driver, and the evaluation harness. The binary in `main.rs` is a thin
//! argument-parsing layer over this.

pub mod eval;
pub mod runner;
