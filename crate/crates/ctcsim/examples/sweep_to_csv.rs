//! Batch analysis over a range of inputs, collected into rows: fixed-point
//! counts, outputs, classifications, loop costs, and claim divergences.
//!
//! ```bash
//! cargo run --example sweep_to_csv
//! ```
//!
//! The `ctcsim sweep` subcommand produces the same table as a CSV file:
//!
//! ```bash
//! cargo run -- sweep --program brun3 --from 2 --to 50 --out sweep.csv
//! ```

use ctcsim::corpus::{self, CorpusId};
use ctcsim::numtheory::factor_view;
use ctcsim::solver::{solve, SolveOptions};

fn main() {
    let program = corpus::get(CorpusId::Brun3).program();
    let options = SolveOptions { parallel: true, ..SolveOptions::default() };

    println!("n,prime,fixedpoint_count,outputs,loop_iterations,divergences");
    let mut total_divergences = 0;
    for n in 2..=50 {
        let report = solve(&program, n, &options).unwrap();
        let outputs: Vec<String> = report
            .fixed_points
            .iter()
            .map(|fp| fp.record.outputs.first().copied().unwrap_or(0).to_string())
            .collect();
        let loops: Vec<String> = report
            .fixed_points
            .iter()
            .map(|fp| fp.record.loop_iterations().to_string())
            .collect();
        total_divergences += report.claim_divergences.len();
        println!(
            "{n},{},{},{},{},{}",
            factor_view(n).unwrap().is_prime,
            report.fixed_points.len(),
            outputs.join(";"),
            loops.join(";"),
            report.claim_divergences.len()
        );
    }

    eprintln!("\ntotal claim divergences over the sweep: {total_divergences}");
    eprintln!("(one per composite: the self-consistent (tt=n, flag=1) history)");
}
