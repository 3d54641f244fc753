//! Programs with no fixed point (a grandfather paradox) and programs where
//! every candidate is one. An empty solve result is an answer, not an
//! error.
//!
//! ```bash
//! cargo run --example grandfather_paradox
//! ```

use ctcsim::dsl::parse;
use ctcsim::solver::{solve, SolveOptions};

fn main() {
    // Sends back the opposite bit of whatever it received: receiving 0
    // sends 1, receiving 1 sends 0. No history is self-consistent.
    let paradox = parse(
        "program paradox
         ttreg b init 0 domain 0..1
         receive b -> x
         send b 1 - x
         halt",
    )
    .unwrap();

    // Echoes back whatever it received: every history is self-consistent.
    let plenty = parse(
        "program plenty
         ttreg b init 0 domain 0..5
         receive b -> x
         send b x
         output x
         halt",
    )
    .unwrap();

    for program in [&paradox, &plenty] {
        let report = solve(program, 4, &SolveOptions::default()).unwrap();
        println!(
            "{}: {} candidate(s), {} fixed point(s) {:?}",
            report.program_name,
            report.candidates_tried,
            report.fixed_points.len(),
            report.received_values("b"),
        );
    }

    // The paradox program has zero fixed points; the echo program has one
    // per candidate. Determinism of the program does not make the
    // fixed-point count one.
}
