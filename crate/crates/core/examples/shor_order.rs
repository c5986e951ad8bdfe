//! Order finding over Z_q: the exact distribution of the measured c, then a
//! seeded run that recovers r by continued fractions.
//!
//! ```bash
//! cargo run -p qfourier --example shor_order -- 2 21
//! ```

use qfourier::algorithms::{auto_q, ShorCircuit};
use qfourier::numtheory::convergents;
use qfourier::rng::seeded_rng;

fn main() -> qfourier::Result<()> {
    let mut args = std::env::args().skip(1).filter_map(|s| s.parse::<u64>().ok());
    let y = args.next().unwrap_or(7);
    let n = args.next().unwrap_or(15);

    let exact = ShorCircuit::new(7, 15, 16)?;
    let p = exact.distribution()?;
    let support: Vec<usize> = (0..16).filter(|&c| p[c] > 1e-12).collect();
    println!("y=7, N=15, q=16: c takes values {support:?}");

    let q = auto_q(n)?;
    let circ = ShorCircuit::new(y, n, q)?;
    let mut rng = seeded_rng(11);
    let run = circ.find_order(&mut rng, 64)?;
    for &c in &run.samples {
        let cf: Vec<String> = convergents(c, q)
            .iter()
            .take_while(|cv| cv.denominator <= n)
            .map(|cv| format!("{}/{}", cv.numerator, cv.denominator))
            .collect();
        println!("  c = {c:4}   convergents {}", cf.join(" "));
    }
    println!("order of {y} mod {n}: {:?} (q = {q})", run.recovered_r);
    Ok(())
}
