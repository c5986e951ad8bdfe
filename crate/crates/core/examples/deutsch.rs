//! Deutsch's XOR problem, the one-query constant/balanced test, and reading
//! k off f_k(x) = k.x.
//!
//! ```bash
//! cargo run -p qfourier --example deutsch
//! ```

use qfourier::algorithms::{
    deutsch_jozsa, deutsch_xor_distribution, identify_linear_fk, linear_fk_table, probe_linear_fk_classically,
};
use qfourier::group::GroupSpec;
use qfourier::rng::seeded_rng;
use qfourier::truth_table::TruthTable;

fn main() -> qfourier::Result<()> {
    let mut rng = seeded_rng(2024);
    let b1 = GroupSpec::boolean(1)?;
    for v in [[0, 0], [1, 1], [0, 1], [1, 0]] {
        let f = TruthTable::new(&b1, v.to_vec())?;
        let d = deutsch_xor_distribution(&f)?;
        println!(
            "f = {v:?}: inconclusive {:.2}, constant {:.2}, balanced {:.2}",
            d.p_inconclusive, d.p_constant, d.p_balanced
        );
    }

    let n = 6;
    let g = GroupSpec::boolean(n)?;
    let parity = TruthTable::from_label_fn(&g, 2, |x| (x.count_ones() % 2) as u64)?;
    let constant = TruthTable::from_label_fn(&g, 2, |_| 1)?;
    for (name, f) in [("parity", &parity), ("constant", &constant)] {
        let v = deutsch_jozsa(f, n, &mut rng)?;
        println!("{name}: {:?} with {} query", v.outcome, v.queries_used);
    }

    let k = 0b101101;
    let fk = linear_fk_table(k, n)?;
    let (found, p, q) = identify_linear_fk(&fk, n, &mut rng)?;
    let (classical, evals) = probe_linear_fk_classically(&fk, n)?;
    println!("k = {found:06b} (p = {p:.3}) from {q} query; classically {classical:06b} after {evals} evaluations");
    Ok(())
}
