//! Simon's algorithm on a hidden xor-period.
//!
//! ```bash
//! cargo run -p qfourier --example simon -- 8 10110011
//! ```

use qfourier::algorithms::{dot_bits, simon_solve, SimonInstance};
use qfourier::rng::seeded_rng;

fn main() -> qfourier::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let xi = args
        .next()
        .and_then(|s| u64::from_str_radix(&s, 2).ok())
        .unwrap_or(0b10110 & ((1 << n) - 1));

    let inst = SimonInstance::canonical(n, xi)?;
    let mut rng = seeded_rng(7);
    let sol = simon_solve(&inst, &mut rng, inst.default_max_samples())?;
    for y in &sol.samples {
        println!("  y = {y:0n$b}   y.xi = {}", dot_bits(*y, xi));
    }
    println!(
        "recovered xi = {:0n$b} (planted {:0n$b}) from {} queries",
        sol.xi, xi, sol.oracle_queries
    );
    Ok(())
}
