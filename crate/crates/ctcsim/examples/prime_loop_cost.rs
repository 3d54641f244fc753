//! What the brun2 fix costs: on primes, the only consistent history is the
//! one that walks the whole trial-division loop, floor(sqrt(N)) iterations,
//! while composites still finish without looping.
//!
//! ```bash
//! cargo run --example prime_loop_cost
//! ```

use ctcsim::corpus::{self, CorpusId};
use ctcsim::numtheory::{factor_view, isqrt};
use ctcsim::solver::{solve, SolveOptions};

fn main() {
    let program = corpus::get(CorpusId::Brun2).program();

    println!("{:>5}  {:>9}  {:>15}  {:>8}", "n", "prime?", "loop iterations", "isqrt(n)");
    for n in [7, 12, 29, 30, 97, 100, 227, 228] {
        let report = solve(&program, n, &SolveOptions::default()).unwrap();
        let iterations: Vec<u64> =
            report.fixed_points.iter().map(|fp| fp.record.loop_iterations()).collect();
        let is_prime = factor_view(n).unwrap().is_prime;
        println!("{n:>5}  {is_prime:>9}  {:>15}  {:>8}", format!("{iterations:?}"), isqrt(n));
    }

    // Every prime row shows exactly one fixed point with isqrt(n) loop
    // iterations; every composite row shows zero-iteration fixed points.
}
