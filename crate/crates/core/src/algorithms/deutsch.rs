//! Deutsch's XOR problem, the one-query Deutsch-Jozsa decision and
//! identification of the linear functions `f_k(x) = k.x`.

use rand::Rng;
use serde::Serialize;

use super::Oracle;
use crate::error::{Error, Result};
use crate::fourier::hadamard_n;
use crate::group::GroupSpec;
use crate::simulator::{RegisterLayout, StateVector};
use crate::truth_table::TruthTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeutschOutcome {
    Constant,
    Balanced,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeutschVerdict {
    pub outcome: DeutschOutcome,
    pub queries_used: usize,
    /// Label read from the input register, when one was measured.
    pub measured_label: Option<u64>,
    /// Born probability of `measured_label`.
    pub probability: f64,
}

/// Exact outcome probabilities of the original XOR procedure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XorDistribution {
    pub p_inconclusive: f64,
    pub p_constant: f64,
    pub p_balanced: f64,
}

fn check_boolean_function(f: &TruthTable, n: usize) -> Result<()> {
    let g = f.group();
    if !g.is_boolean() || g.rank() != n {
        return Err(Error::InvalidArgument(format!(
            "expected a function on B^{n}, got one on group ({g})"
        )));
    }
    f.check_codomain(2)
}

/// Runs `U_f` once on `(|0> + |1>)/sqrt2 |0>` and applies `H` to both qubits,
/// so that standard measurements read the dual basis.
fn xor_final_state(f: &TruthTable) -> Result<(StateVector, usize)> {
    check_boolean_function(f, 1)?;
    let layout = RegisterLayout::new(&[2, 2])?;
    let mut state = StateVector::init_basis(&layout, &[0, 0])?;
    hadamard_n(&mut state, 0)?;
    let mut oracle = Oracle::new(f.clone());
    oracle.apply_xor(&mut state, 0, 1)?;
    hadamard_n(&mut state, 1)?;
    hadamard_n(&mut state, 0)?;
    Ok((state, oracle.queries()))
}

/// Amplitude-level probabilities of the three verdicts.
pub fn deutsch_xor_distribution(f: &TruthTable) -> Result<XorDistribution> {
    let (state, _) = xor_final_state(f)?;
    let p = state.basis_probabilities();
    // index = 2 * qubit1 + qubit2
    Ok(XorDistribution {
        p_inconclusive: p[0] + p[2],
        p_constant: p[1],
        p_balanced: p[3],
    })
}

/// Deutsch's original method: one query, success with probability 1/2.
///
/// The output qubit is measured in the dual basis. Outcome `0'` carries no
/// information about `f`; after `1'` the input qubit's dual-basis reading
/// separates constant (`0'`) from balanced (`1'`).
pub fn deutsch_xor_original<R: Rng + ?Sized>(f: &TruthTable, rng: &mut R) -> Result<DeutschVerdict> {
    check_boolean_function(f, 1)?;
    let layout = RegisterLayout::new(&[2, 2])?;
    let mut state = StateVector::init_basis(&layout, &[0, 0])?;
    hadamard_n(&mut state, 0)?;
    let mut oracle = Oracle::new(f.clone());
    oracle.apply_xor(&mut state, 0, 1)?;

    hadamard_n(&mut state, 1)?;
    let second = state.measure_register(1, rng)?;
    if second.value == 0 {
        return Ok(DeutschVerdict {
            outcome: DeutschOutcome::Inconclusive,
            queries_used: oracle.queries(),
            measured_label: None,
            probability: second.probability,
        });
    }
    hadamard_n(&mut state, 0)?;
    let first = state.measure_register(0, rng)?;
    let outcome = if first.value == 0 {
        DeutschOutcome::Constant
    } else {
        DeutschOutcome::Balanced
    };
    Ok(DeutschVerdict {
        outcome,
        queries_used: oracle.queries(),
        measured_label: Some(first.value as u64),
        probability: second.probability * first.probability,
    })
}

/// `H_n |f>` on the input register, built with a single query.
///
/// The output qubit starts in `(|0> - |1>)/sqrt2` so `U_f` writes
/// `(-1)^f(x)` into the phase. Returns the state and the query count.
pub fn deutsch_jozsa_state(f: &TruthTable, n: usize) -> Result<(StateVector, usize)> {
    check_boolean_function(f, n)?;
    let layout = RegisterLayout::new(&[1 << n, 2])?;
    let mut state = StateVector::init_basis(&layout, &[0, 1])?;
    hadamard_n(&mut state, 0)?;
    hadamard_n(&mut state, 1)?;
    let mut oracle = Oracle::new(f.clone());
    oracle.apply_xor(&mut state, 0, 1)?;
    hadamard_n(&mut state, 0)?;
    Ok((state, oracle.queries()))
}

/// Decides constant vs balanced with one query: constant iff the input
/// register reads `0..0`, which under the promise happens with probability
/// one or zero.
pub fn deutsch_jozsa<R: Rng + ?Sized>(f: &TruthTable, n: usize, rng: &mut R) -> Result<DeutschVerdict> {
    let (mut state, queries) = deutsch_jozsa_state(f, n)?;
    let m = state.measure_register(0, rng)?;
    let outcome = if m.value == 0 {
        DeutschOutcome::Constant
    } else {
        DeutschOutcome::Balanced
    };
    Ok(DeutschVerdict {
        outcome,
        queries_used: queries,
        measured_label: Some(m.value as u64),
        probability: m.probability,
    })
}

/// Truth table of `f_k(x) = k.x mod 2` on `B^n`.
pub fn linear_fk_table(k: u64, n: usize) -> Result<TruthTable> {
    if n < 64 && k >> n != 0 {
        return Err(Error::InvalidArgument(format!("k = {k} has more than {n} bits")));
    }
    let g = GroupSpec::boolean(n)?;
    TruthTable::from_label_fn(&g, 2, |x| ((x & k).count_ones() % 2) as u64)
}

/// Input register after one query; it equals `|k>` for `f_k`.
pub fn identify_linear_fk_state(f: &TruthTable, n: usize) -> Result<(StateVector, usize)> {
    deutsch_jozsa_state(f, n)
}

/// Reads `k` from `H_n |f_k>` with one query. Returns `(k, probability,
/// queries)`.
pub fn identify_linear_fk<R: Rng + ?Sized>(f: &TruthTable, n: usize, rng: &mut R) -> Result<(u64, f64, usize)> {
    let (mut state, queries) = identify_linear_fk_state(f, n)?;
    let m = state.measure_register(0, rng)?;
    Ok((m.value as u64, m.probability, queries))
}

/// The classical route: `n` evaluations at `10..0, .., 0..01` reveal the bits
/// of `k` one at a time. Returns `(k, evaluations)`.
pub fn probe_linear_fk_classically(f: &TruthTable, n: usize) -> Result<(u64, usize)> {
    check_boolean_function(f, n)?;
    let mut k = 0u64;
    for bit in 0..n {
        let probe = 1usize << (n - 1 - bit);
        k = (k << 1) | f.value_at(probe);
    }
    Ok((k, n))
}
