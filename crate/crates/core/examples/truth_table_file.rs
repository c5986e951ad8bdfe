//! Round trip through the truth-table text format used by `--oracle`.
//!
//! ```bash
//! cargo run -p qfourier --example truth_table_file
//! ```

use qfourier::algorithms::SimonInstance;
use qfourier::truth_table::TruthTable;

fn main() -> qfourier::Result<()> {
    let inst = SimonInstance::canonical(3, 0b011)?;
    let text = inst.table().to_text();
    print!("{text}");

    let parsed = TruthTable::parse(&format!("# written by the example\n{text}"))?;
    let again = SimonInstance::from_table(parsed)?;
    println!("promise holds, period {:03b}", again.hidden_xi());

    let broken = text.replace("0,0,0 -> 0", "0,0,0 -> 5");
    match TruthTable::parse(&broken).and_then(SimonInstance::from_table) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
