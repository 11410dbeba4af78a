//! Enclose the global minimum of a benchmark function and print the
//! guaranteed bracket.
//!
//! Usage: `cargo run --release --example enclose_minimum [function] [n]`

use boxmin::{solve, SolverConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let function = args.get(1).map(String::as_str).unwrap_or("levy");
    let n: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(10);

    let mut config = SolverConfig::new(function, n);
    config.dims_per_iteration = config.dims_per_iteration.min(n);
    config.debug_soundness = true;

    let result = solve(config).expect("solver run");

    println!(
        "{function} (n = {n}): stopped after {} iterations ({})",
        result.iterations,
        result.stop_reason.as_str()
    );
    println!(
        "global minimum guaranteed inside [{}, {}]",
        result.glb, result.gub
    );
    println!(
        "{} candidate region(s); soundness instrumentation: {}",
        result.regions.len(),
        result.soundness.as_str()
    );
    for (i, region) in result.regions.iter().enumerate().take(4) {
        let d0 = region.bounds.get(0);
        println!(
            "  region {i}: f >= {}, x1 in [{}, {}], max width {:.2e}",
            region.lb,
            d0.lo(),
            d0.hi(),
            region.bounds.max_width()
        );
    }
    if let Some(witness) = &result.witness {
        println!("best sampled point starts at x1 = {}", witness[0]);
    }
}
