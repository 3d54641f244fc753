//! Write your own time-travel program: explicit candidate domains, multiple
//! sends (last write wins), and per-register consistency diagnostics.
//!
//! ```bash
//! cargo run --example custom_program
//! ```

use ctcsim::dsl::parse;
use ctcsim::solver::{solve, verify, SolveOptions};
use ctcsim::{Limits, ReceivedAssignment};

fn main() {
    // Guess-the-root: the register claims a value g from the future; the
    // program checks g * g == input and only then repeats the claim back.
    // Fixed points exist exactly when the input is a perfect square.
    let source = "
        program root_guess
        ttreg g init 0 domain 0..100
          receive g -> x
          if x * x == input goto ECHO
          send g x + 1         # always differs from the received x
          goto DONE
        ECHO: send g x
          output x
        DONE: halt
    ";
    let program = parse(source).unwrap();

    for n in [16, 17, 36] {
        let report = solve(&program, n, &SolveOptions::default()).unwrap();
        println!(
            "n={n:>2}: fixed points {:?} out of {} candidates",
            report.received_values("g"),
            report.candidates_tried
        );
    }

    // Ask about one candidate directly.
    let verdict =
        verify(&program, 17, &ReceivedAssignment::single("g", 4), &Limits::default()).unwrap();
    println!("\nn=17 with g=4: {verdict}");
}
