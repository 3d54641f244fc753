//! The two-register variant, and what exhaustive enumeration reveals
//! about it.
//!
//! brun3 adds a flag register so primes no longer pay for the loop: a prime
//! can only be consistent as (tt=N, flag=1), reached without looping. For
//! composites the intended fixed points are (d, 0) for each proper factor d.
//! Enumeration shows one more consistent history for every composite:
//! (tt=N, flag=1). The trailing "if p == N send flag 1" also fires on the
//! direct path, so receiving (N, 1) reproduces itself: the claimed set and
//! the computed set genuinely differ, and the report says so.
//!
//! ```bash
//! cargo run --example optimal_two_registers
//! ```

use ctcsim::corpus::{self, CorpusId};
use ctcsim::solver::{solve, SolveOptions};

fn main() {
    let program = corpus::get(CorpusId::Brun3).program();

    for n in [7, 15] {
        let report = solve(&program, n, &SolveOptions::default()).unwrap();
        println!("n={n}:");
        for fp in &report.fixed_points {
            println!(
                "  {}  output {:?}  loop iterations {}",
                fp.received.render(&program),
                fp.record.outputs,
                fp.record.loop_iterations()
            );
        }
        if report.claim_divergences.is_empty() {
            println!("  agrees with the claimed fixed-point set");
        }
        for divergence in &report.claim_divergences {
            println!("  divergence: {divergence}");
        }
        println!();
    }
}
