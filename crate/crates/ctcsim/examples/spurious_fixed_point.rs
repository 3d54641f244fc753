//! The self-solution flaw and its fix, side by side.
//!
//! brun1 accepts the input itself as a "factor": receiving tt=N satisfies
//! the divisibility guard, so the run sends N back and the history is
//! self-consistent even when N is composite. brun2 adds one guard which
//! forces tt=N through the loop, where a real factor is computed and sent
//! back, contradicting the received N.
//!
//! ```bash
//! cargo run --example spurious_fixed_point
//! ```

use ctcsim::corpus::{self, CorpusId};
use ctcsim::solver::{solve, verify, Classification, SolveOptions};
use ctcsim::{Limits, ReceivedAssignment};

fn main() {
    let n = 15;
    for id in [CorpusId::Brun1, CorpusId::Brun2] {
        let program = corpus::get(id).program();
        let report = solve(&program, n, &SolveOptions::default()).unwrap();
        let spurious = report
            .fixed_points
            .iter()
            .filter(|fp| fp.classification == Classification::TrivialSelf)
            .count();
        println!(
            "{id} n={n}: fixed-point tt set {:?}, {} spurious self-solution(s)",
            report.received_values("tt"),
            spurious
        );
    }

    // Why tt=15 dies in brun2: the new guard jumps into the loop, the loop
    // finds 3, and 3 != 15.
    let program = corpus::get(CorpusId::Brun2).program();
    let verdict =
        verify(&program, n, &ReceivedAssignment::single("tt", n), &Limits::default()).unwrap();
    println!("\nbrun2 given tt={n}: {verdict}");
}
