//! Simon's problem: `f: B^n -> B^n` with `f(x) = f(y)` iff `y = x xor xi`.

use rand::Rng;
use serde::Serialize;

use super::gf2::{gf2_nullspace, GF2Matrix};
use super::Oracle;
use crate::error::{Error, Result};
use crate::fourier::hadamard_n;
use crate::group::GroupSpec;
use crate::simulator::{RegisterLayout, StateVector};
use crate::truth_table::TruthTable;

#[derive(Debug, Clone)]
pub struct SimonInstance {
    n: usize,
    table: TruthTable,
    xi: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimonSolution {
    pub xi: u64,
    pub samples: Vec<u64>,
    pub oracle_queries: usize,
}

impl SimonInstance {
    /// `f(x) = min(x, x xor xi)` on unsigned labels.
    pub fn canonical(n: usize, xi: u64) -> Result<Self> {
        if n == 0 || n > 24 {
            return Err(Error::InvalidArgument(format!("n = {n} outside 1..=24")));
        }
        if xi == 0 || xi >> n != 0 {
            return Err(Error::InvalidArgument(format!(
                "xi = {xi:#b} must be a nonzero {n}-bit string"
            )));
        }
        let g = GroupSpec::boolean(n)?;
        let table = TruthTable::from_label_fn(&g, 1 << n, |x| x.min(x ^ xi))?;
        Ok(Self { n, table, xi })
    }

    /// Accepts an arbitrary table after checking the 2-to-1 promise.
    pub fn from_table(table: TruthTable) -> Result<Self> {
        let g = table.group();
        if !g.is_boolean() {
            return Err(Error::PromiseViolated("domain is not B^n".into()));
        }
        let n = g.rank();
        table
            .check_codomain(1 << n)
            .map_err(|e| Error::PromiseViolated(e.to_string()))?;
        let values = table.values();
        let xi = (1..values.len())
            .find(|&x| values[x] == values[0])
            .ok_or_else(|| Error::PromiseViolated("f is one-to-one".into()))? as u64;
        let mut seen = std::collections::HashMap::new();
        for (x, &v) in values.iter().enumerate() {
            if values[x ^ xi as usize] != v {
                return Err(Error::PromiseViolated(format!("f({x}) != f({x} xor {xi})")));
            }
            *seen.entry(v).or_insert(0usize) += 1;
        }
        if seen.values().any(|&c| c != 2) {
            return Err(Error::PromiseViolated("f is not exactly 2-to-1".into()));
        }
        Ok(Self { n, table, xi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    /// The planted period, for checking results. Solvers never read it.
    pub fn hidden_xi(&self) -> u64 {
        self.xi
    }

    /// Sample cap used when none is given: `4n + 20`.
    pub fn default_max_samples(&self) -> usize {
        4 * self.n + 20
    }
}

fn prepare(inst: &SimonInstance, oracle: &mut Oracle) -> Result<StateVector> {
    let dim = 1usize << inst.n;
    let layout = RegisterLayout::new(&[dim, dim])?;
    let mut state = StateVector::init_basis(&layout, &[0, 0])?;
    hadamard_n(&mut state, 0)?;
    oracle.apply_xor(&mut state, 0, 1)?;
    Ok(state)
}

/// The state after `H_n` on register 1 with register 2 left unmeasured; its
/// register-1 marginal is the distribution of [`simon_sample`].
pub fn simon_step4_state(inst: &SimonInstance) -> Result<StateVector> {
    let mut oracle = Oracle::new(inst.table.clone());
    let mut state = prepare(inst, &mut oracle)?;
    hadamard_n(&mut state, 0)?;
    Ok(state)
}

fn measure_prepared<R: Rng + ?Sized>(prepared: &StateVector, rng: &mut R) -> Result<u64> {
    let mut state = prepared.clone();
    // the register-1 residue is now |x0> + |x0 xor xi>
    state.measure_register(1, rng)?;
    hadamard_n(&mut state, 0)?;
    Ok(state.measure_register(0, rng)?.value as u64)
}

/// One run of the quantum subroutine; the result satisfies `y.xi = 0`.
pub fn simon_sample<R: Rng + ?Sized>(inst: &SimonInstance, rng: &mut R) -> Result<u64> {
    let mut oracle = Oracle::new(inst.table.clone());
    measure_prepared(&prepare(inst, &mut oracle)?, rng)
}

/// Samples until the rows span an `(n-1)`-dimensional space, then returns
/// the nonzero vector orthogonal to all of them.
pub fn simon_solve<R: Rng + ?Sized>(inst: &SimonInstance, rng: &mut R, max_samples: usize) -> Result<SimonSolution> {
    // every run starts from the same pre-measurement state; simulate it once
    // and charge one query per run
    let mut oracle = Oracle::new(inst.table.clone());
    let prepared = prepare(inst, &mut oracle)?;
    let mut rows = GF2Matrix::new(inst.n, Vec::new())?;
    let mut samples = Vec::new();
    loop {
        if rows.rank() == inst.n - 1 {
            let basis = gf2_nullspace(&rows);
            debug_assert_eq!(basis.len(), 1);
            return Ok(SimonSolution {
                xi: basis[0],
                oracle_queries: samples.len(),
                samples,
            });
        }
        if samples.len() >= max_samples {
            return Err(Error::BudgetExhausted {
                what: "simon_solve",
                attempts: samples.len(),
            });
        }
        let y = measure_prepared(&prepared, rng)?;
        samples.push(y);
        rows.push(y);
    }
}
