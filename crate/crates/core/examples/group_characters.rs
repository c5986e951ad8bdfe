//! Characters of Z_2 x Z_4: the table, orthogonality, and the stabilizer of
//! a function found by brute force.
//!
//! ```bash
//! cargo run -p qfourier --example group_characters
//! ```

use qfourier::group::GroupSpec;
use qfourier::truth_table::TruthTable;

fn main() -> qfourier::Result<()> {
    let g = GroupSpec::new(&[2, 4])?;
    println!("G = Z_2 x Z_4, |G| = {}, exponent {}", g.order(), g.exponent());

    println!("\ncharacter table (rows chi_k, entries chi_k(g) as re+im i):");
    for k in g.elements() {
        let row: Vec<String> = g
            .elements()
            .map(|x| {
                let z = g.character_value(&k, &x).unwrap();
                format!("{:+.0}{:+.0}i", z.re, z.im)
            })
            .collect();
        println!("  chi_{} : {}", k, row.join(" "));
    }

    let a = g.element(&[1, 1])?;
    let b = g.element(&[0, 3])?;
    println!("\n<chi_a, chi_a> = {:.3}", g.character_inner_product(&a, &a)?);
    println!("<chi_a, chi_b> = {:.3}", g.character_inner_product(&a, &b)?);

    // f only sees the second coordinate mod 2, so it is constant on cosets of
    // the subgroup {(x, y) : y even}
    let f = TruthTable::from_fn(&g, 2, |x| x.residues()[1] % 2)?;
    let k = g.stabilizer_bruteforce(&f)?;
    let elems: Vec<String> = k.elements().iter().map(|e| e.to_string()).collect();
    println!("\nstabilizer of f: {{{}}}", elems.join(", "));
    Ok(())
}
