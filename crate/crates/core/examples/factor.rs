//! Factoring through order finding, with either order finder.
//!
//! ```bash
//! cargo run -p qfourier --example factor -- 35 kitaev
//! ```

use qfourier::algorithms::{factor, FactorMethod};
use qfourier::rng::seeded_rng;

fn main() -> qfourier::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(21);
    let method: FactorMethod = args.next().as_deref().unwrap_or("shor").parse()?;

    let mut rng = seeded_rng(42);
    let run = factor(n, method, &mut rng)?;
    for a in &run.attempts {
        match (a.shortcut, a.order) {
            (true, _) => println!("  y = {:3}: shares a factor with N", a.y),
            (false, Some(r)) => println!("  y = {:3}: order {r}, divisor {:?}", a.y, a.divisor),
            (false, None) => println!("  y = {:3}: no order found", a.y),
        }
    }
    println!("{n} = {} x {}", run.divisor, n / run.divisor);
    Ok(())
}
