//! ctcsim: a simulator and analysis toolkit for classical programs with
//! time-travel registers.
//!
//! Programs are written in a small integer goto-language (the CTC DSL) whose
//! `ttreg` registers behave like values on a closed timelike curve: the
//! program `receive`s a register's value at the start of time and may `send`
//! one back later. A candidate received value is a *fixed point* when the
//! forward run reproduces it: the last value sent back equals the value
//! received, and registers never sent to were received with their declared
//! initial. The solver enumerates every candidate exhaustively, so spurious
//! fixed points and grandfather paradoxes (empty fixed-point sets) are found
//! mechanically rather than argued about.
//!
//! Three classic factoring programs built on this trick ship in
//! [`corpus`]: `brun1` (the original single-register algorithm, which admits
//! the number itself as a spurious fixed point), `brun2` (a corrected variant
//! that pays O(sqrt(N)) loop iterations on primes), and `brun3` (a
//! two-register variant meant to be O(1) on primes as well). Solve reports
//! for these compare the computed fixed-point set against the documented one
//! and list every divergence.
//!
//! ## Where to start
//!
//! The `examples/` directory is the front door, one runnable program per
//! capability:
//!
//! ```bash
//! cargo run --example parse_and_pretty       # DSL parsing, validation, printing
//! cargo run --example forward_run            # one deterministic instrumented run
//! cargo run --example trace_execution        # per-statement execution traces
//! cargo run --example enumerate_fixed_points # exhaustive solve of brun1
//! cargo run --example spurious_fixed_point   # the brun1 flaw and the brun2 fix
//! cargo run --example prime_loop_cost        # loop-iteration counts on primes
//! cargo run --example optimal_two_registers  # brun3, including its surprise
//! cargo run --example grandfather_paradox    # programs with no fixed point
//! cargo run --example custom_program         # your own DSL source, explicit domains
//! cargo run --example sweep_to_csv           # batch sweeps, CSV output
//! ```
//!
//! The same functionality is scriptable through the thin `ctcsim` binary
//! (`parse`, `run`, `solve`, `sweep`, `corpus`).
//!
//! ## Library quick start
//!
//! ```
//! use ctcsim::corpus::{self, CorpusId};
//! use ctcsim::solver::{solve, SolveOptions};
//!
//! let program = corpus::get(CorpusId::Brun1).program();
//! let report = solve(&program, 15, &SolveOptions::default()).unwrap();
//!
//! // 3 and 5 are the intended answers; 15 is the spurious self-solution.
//! assert_eq!(report.received_values("tt"), vec![3, 5, 15]);
//! ```

pub mod cli;
pub mod corpus;
pub mod dsl;
pub mod interpreter;
pub mod numtheory;
pub mod solver;

pub use dsl::{parse, pretty, validate, ParseError, Program};
pub use interpreter::{
    consistency_of, run, run_traced, ConsistencyResult, Limits, ReceivedAssignment, RunRecord,
    RunStatus,
};
pub use solver::{solve, verify, Classification, FixedPoint, SolveOptions, SolveReport};
