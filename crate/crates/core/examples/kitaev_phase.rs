//! Eigenvalue measurement: the controlled-U gadget, PROC statistics, and
//! phase estimation from powers U^(2^j).
//!
//! ```bash
//! cargo run -p qfourier --example kitaev_phase
//! ```

use num_complex::Complex64;
use qfourier::kitaev::{
    controlled_u_direct, controlled_u_gadget, eigenstate_lambda_k, estimate_phase, gadget_layout, kitaev_order,
    linear_entropy, MultUnitary, PhaseOptions,
};
use qfourier::rng::seeded_rng;
use qfourier::simulator::StateVector;

fn main() -> qfourier::Result<()> {
    let u = MultUnitary::new(7, 15)?;

    let layout = gadget_layout(&u)?;
    let mut gadget = StateVector::init_basis(&layout, &[1, 2, 0])?;
    let mut direct = gadget.clone();
    controlled_u_gadget(&u, 0, &mut gadget)?;
    controlled_u_direct(&u, 0, &mut direct)?;
    println!(
        "gadget vs direct: max diff {:.1e}, ancilla entropy {:.1e}",
        gadget.max_abs_diff(&direct),
        linear_entropy(&gadget, 2)?
    );

    let mut rng = seeded_rng(3);
    let opts = PhaseOptions {
        bits: 4,
        ..PhaseOptions::default()
    };
    for k in 0..4 {
        let lam = eigenstate_lambda_k(7, 15, 4, k)?;
        let est = estimate_phase(&u, lam.amplitudes(), &opts, &mut rng)?;
        println!("|lambda_{k}>: bits {:?} -> phi ~ {}", est.bits, est.fraction());
    }

    // |1> is an even superposition of the four eigenstates
    let mut one = vec![Complex64::new(0.0, 0.0); 15];
    one[1] = Complex64::new(1.0, 0.0);
    let est = estimate_phase(&u, &one, &opts, &mut rng)?;
    println!("|1>: collapsed onto phase {:?}", est.eigenphase);
    for s in &est.stages {
        println!("  j={} t={} p0={:.3} angle={:.3}", s.j, s.t, s.p0_hat, s.angle);
    }

    let run = kitaev_order(2, 21, &mut rng)?;
    println!(
        "order of 2 mod 21: {:?} after {} estimates",
        run.recovered_r,
        run.estimates.len()
    );
    Ok(())
}
