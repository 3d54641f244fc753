//! Exhaustively enumerate every candidate received value and keep the
//! self-consistent ones: the program's fixed points.
//!
//! ```bash
//! cargo run --example enumerate_fixed_points
//! ```

use ctcsim::corpus::{self, CorpusId};
use ctcsim::solver::{resolve_domains, solve, SolveOptions, DEFAULT_DOMAIN_BUDGET};

fn main() {
    let program = corpus::get(CorpusId::Brun1).program();
    let n = 15;

    let resolution = resolve_domains(&program, n, DEFAULT_DOMAIN_BUDGET).unwrap();
    println!("candidate domain for n={n}:");
    for (register, candidates) in &resolution.candidates {
        println!("  {register}: {candidates:?}");
    }

    let report = solve(&program, n, &SolveOptions::default()).unwrap();
    println!("\ncandidates tried: {}", report.candidates_tried);
    println!("fixed points:");
    for fp in &report.fixed_points {
        println!(
            "  {}  output {:?}  {}",
            fp.received.render(&program),
            fp.record.outputs,
            fp.classification
        );
    }

    // 3 and 5 are genuine factors; 15 made the divisibility guard true with
    // the number itself. Nothing in the program rules that history out.
}
