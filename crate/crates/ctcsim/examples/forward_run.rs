//! One deterministic forward run: pick what the register "receives from the
//! future", execute once, and check whether the run reproduces that value.
//!
//! ```bash
//! cargo run --example forward_run
//! ```

use ctcsim::corpus::{self, CorpusId};
use ctcsim::interpreter::{consistency_of, run, Limits, ReceivedAssignment};

fn main() {
    let program = corpus::get(CorpusId::Brun1).program();
    let limits = Limits::default();
    let n = 15;

    for tt in [-1, 3, 4, 15] {
        let received = ReceivedAssignment::single("tt", tt);
        let record = run(&program, n, &received, &limits).unwrap();
        let verdict = consistency_of(&record, &received, &program);
        println!(
            "n={n} received tt={tt:>2}  ->  output {:?}, sent {:?}, loop iterations {}, {}",
            record.outputs,
            record.sends["tt"],
            record.loop_iterations(),
            verdict
        );
    }

    // tt=3: the guard fires, the loop never runs, and 3 is sent back to the
    // past: self-consistent, and the factor appears in constant time.
    // tt=-1 or tt=4: the loop computes 3 and sends it back, contradicting
    // what was received: those histories are impossible.
}
