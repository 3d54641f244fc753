//! Watch a run statement by statement: one trace line per executed
//! statement with the variable snapshot after it.
//!
//! ```bash
//! cargo run --example trace_execution
//! ```

use ctcsim::corpus::{self, CorpusId};
use ctcsim::interpreter::{run_traced, Limits, ReceivedAssignment};

fn main() {
    let program = corpus::get(CorpusId::Brun2).program();
    let received = ReceivedAssignment::single("tt", 7);

    println!("brun2 on n=7 with received tt=7 (the prime path):\n");
    let mut sink = Vec::new();
    let record = run_traced(&program, 7, &received, &Limits::default(), Some(&mut sink)).unwrap();
    print!("{}", String::from_utf8(sink).unwrap());

    println!("\nsteps: {}", record.steps);
    println!("loop iterations: {}", record.loop_iterations());
    println!("status: {}", record.status);
}
