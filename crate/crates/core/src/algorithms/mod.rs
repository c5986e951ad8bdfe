//! Oracle-decision and period-finding algorithms run end to end on the
//! simulator.

mod deutsch;
mod factor;
mod gf2;
mod shor;
mod simon;

pub use deutsch::{
    deutsch_jozsa, deutsch_jozsa_state, deutsch_xor_distribution, deutsch_xor_original, identify_linear_fk,
    identify_linear_fk_state, linear_fk_table, probe_linear_fk_classically, DeutschOutcome, DeutschVerdict,
    XorDistribution,
};
pub use factor::{factor, factor_with_base, FactorAttempt, FactorMethod, FactorRun};
pub use gf2::{dot_bits, gf2_nullspace, GF2Matrix};
pub use shor::{
    auto_q, shor_distribution, shor_order, shor_sample, shor_step3_residue, OrderCandidates, ShorCircuit, ShorRun,
};
pub use simon::{simon_sample, simon_solve, simon_step4_state, SimonInstance, SimonSolution};

use crate::error::Result;
use crate::simulator::{RegisterId, StateVector};
use crate::truth_table::TruthTable;

/// A black-box function together with a count of how often it was applied.
#[derive(Debug, Clone)]
pub struct Oracle {
    table: TruthTable,
    queries: usize,
}

impl Oracle {
    pub fn new(table: TruthTable) -> Self {
        Self { table, queries: 0 }
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    /// One application of `U_f : |x>|y> -> |x>|y xor f(x)>`.
    pub fn apply_xor(&mut self, state: &mut StateVector, input: RegisterId, output: RegisterId) -> Result<()> {
        state.apply_oracle_xor(&self.table, input, output)?;
        self.queries += 1;
        Ok(())
    }

    /// One application of `U_f : |x1>|x2> -> |x1>|x2 + f(x1) mod N>`.
    pub fn apply_modadd(&mut self, state: &mut StateVector, input: RegisterId, output: RegisterId) -> Result<()> {
        state.apply_oracle_modadd(&self.table, input, output)?;
        self.queries += 1;
        Ok(())
    }
}
