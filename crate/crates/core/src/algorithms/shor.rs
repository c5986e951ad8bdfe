//! Order finding over `Z_q`: the periodic function `f(x) = y^x mod N`,
//! `DFT_q`, and continued-fraction recovery of the period.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use super::Oracle;
use crate::error::{Error, Result};
use crate::fourier::dft_q;
use crate::group::GroupSpec;
use crate::numtheory::{convergents, gcd, lcm, modpow, reduce_to_order};
use crate::simulator::{RegisterLayout, StateVector};
use crate::truth_table::TruthTable;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShorRun {
    #[serde(rename = "N")]
    pub n: u64,
    pub y: u64,
    pub q: u64,
    pub samples: Vec<u64>,
    pub recovered_r: Option<u64>,
    pub repetitions: usize,
}

/// Least power of two `>= N^2`.
pub fn auto_q(n: u64) -> Result<u64> {
    n.checked_mul(n)
        .and_then(u64::checked_next_power_of_two)
        .ok_or(Error::Overflow)
}

/// The two-register circuit for fixed `(y, N, q)`.
///
/// The state after the oracle call is computed once and cloned for each run.
#[derive(Debug, Clone)]
pub struct ShorCircuit {
    y: u64,
    n: u64,
    q: u64,
    table: TruthTable,
    prepared: StateVector,
}

impl ShorCircuit {
    pub fn new(y: u64, n: u64, q: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        if q < 2 {
            return Err(Error::InvalidArgument(format!("q = {q} must be at least 2")));
        }
        let y = y % n;
        if gcd(y, n)? != 1 {
            return Err(Error::NotCoprime { y, modulus: n });
        }
        let zq = GroupSpec::with_max_order(&[q], usize::MAX)?;
        let table = TruthTable::from_label_fn(&zq, n, |x| modpow(y, x, n).unwrap_or(0))?;
        let layout = RegisterLayout::new(&[q as usize, n as usize])?;
        let mut prepared = StateVector::init_basis(&layout, &[0, 0])?;
        dft_q(&mut prepared, 0)?;
        let mut oracle = Oracle::new(table.clone());
        oracle.apply_modadd(&mut prepared, 0, 1)?;
        Ok(Self {
            y,
            n,
            q,
            table,
            prepared,
        })
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    /// `q^{-1/2} sum_x |x>|f(x)>`.
    pub fn prepared_state(&self) -> &StateVector {
        &self.prepared
    }

    /// Measure register 2, transform register 1, measure it.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        let mut state = self.prepared.clone();
        state.measure_register(1, rng)?;
        dft_q(&mut state, 0)?;
        Ok(state.measure_register(0, rng)?.value as u64)
    }

    /// Exact law of the measured `c`. Measuring register 2 first does not
    /// change the register-1 marginal, so the transform is applied to the
    /// unmeasured state.
    pub fn distribution(&self) -> Result<Vec<f64>> {
        let mut state = self.prepared.clone();
        dft_q(&mut state, 0)?;
        state.probabilities(0)
    }

    /// Register 1 after register 2 is found to hold `value`.
    pub fn step3_residue(&self, value: u64) -> Result<StateVector> {
        let mut state = self.prepared.clone();
        state.collapse(1, value as usize)?;
        let amps = state.fibre(0, &[value as usize])?;
        StateVector::from_amplitudes(&RegisterLayout::new(&[self.q as usize])?, amps)
    }

    /// Samples until [`OrderCandidates`] verifies an order or `max_reps` runs
    /// have been spent.
    pub fn find_order<R: Rng + ?Sized>(&self, rng: &mut R, max_reps: usize) -> Result<ShorRun> {
        let mut cands = OrderCandidates::new(self.y, self.n, self.q)?;
        let mut samples = Vec::new();
        if let Some(r) = cands.trivial() {
            return Ok(self.run(samples, Some(r)));
        }
        while samples.len() < max_reps {
            let c = self.sample(rng)?;
            samples.push(c);
            if let Some(r) = cands.push(c)? {
                return Ok(self.run(samples, Some(r)));
            }
        }
        Err(Error::BudgetExhausted {
            what: "shor_order",
            attempts: samples.len(),
        })
    }

    fn run(&self, samples: Vec<u64>, r: Option<u64>) -> ShorRun {
        ShorRun {
            n: self.n,
            y: self.y,
            q: self.q,
            repetitions: samples.len(),
            samples,
            recovered_r: r,
        }
    }
}

/// Denominators gathered from measured values, closed under `lcm` up to `N`.
#[derive(Debug, Clone)]
pub struct OrderCandidates {
    y: u64,
    n: u64,
    q: u64,
    seen: BTreeSet<u64>,
}

impl OrderCandidates {
    pub fn new(y: u64, n: u64, q: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Self {
            y: y % n,
            n,
            q,
            seen: BTreeSet::new(),
        })
    }

    /// `y = 1` has order 1 and needs no samples.
    pub fn trivial(&self) -> Option<u64> {
        (self.y == 1).then_some(1)
    }

    pub fn denominators(&self) -> impl Iterator<Item = u64> + '_ {
        self.seen.iter().copied()
    }

    /// Adds the convergent denominators of `c/q` and returns the order once
    /// some candidate passes `y^r = 1 mod N`.
    pub fn push(&mut self, c: u64) -> Result<Option<u64>> {
        let fresh: Vec<u64> = convergents(c % self.q, self.q)
            .into_iter()
            .map(|cv| cv.denominator)
            .filter(|&d| d >= 1 && d <= self.n)
            .collect();
        let mut new = Vec::new();
        for d in fresh {
            if self.seen.insert(d) {
                new.push(d);
            }
        }
        let mut i = 0;
        while i < new.len() {
            let d = new[i];
            let others: Vec<u64> = self.seen.iter().copied().collect();
            for o in others {
                let m = lcm(d, o)?;
                if m <= self.n && self.seen.insert(m) {
                    new.push(m);
                }
            }
            i += 1;
        }
        let mut best: Option<u64> = None;
        for d in new {
            if modpow(self.y, d, self.n)? == 1 {
                let r = reduce_to_order(self.y, d, self.n)?;
                best = Some(best.map_or(r, |b: u64| b.min(r)));
            }
        }
        Ok(best)
    }
}

/// One run of the circuit with explicit `q`.
pub fn shor_sample<R: Rng + ?Sized>(y: u64, n: u64, q: u64, rng: &mut R) -> Result<u64> {
    ShorCircuit::new(y, n, q)?.sample(rng)
}

pub fn shor_distribution(y: u64, n: u64, q: u64) -> Result<Vec<f64>> {
    ShorCircuit::new(y, n, q)?.distribution()
}

pub fn shor_step3_residue(y: u64, n: u64, q: u64, value: u64) -> Result<StateVector> {
    ShorCircuit::new(y, n, q)?.step3_residue(value)
}

/// Order of `y` mod `N` with `q` chosen by [`auto_q`].
pub fn shor_order<R: Rng + ?Sized>(y: u64, n: u64, rng: &mut R, max_reps: usize) -> Result<ShorRun> {
    ShorCircuit::new(y, n, auto_q(n)?)?.find_order(rng, max_reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::order_bruteforce;
    use crate::rng::seeded_rng;

    #[test]
    fn auto_q_examples() {
        assert_eq!(auto_q(15).unwrap(), 256);
        assert_eq!(auto_q(21).unwrap(), 512);
        assert_eq!(auto_q(16).unwrap(), 256);
    }

    #[test]
    fn exact_multiple_distribution() {
        let p = shor_distribution(7, 15, 16).unwrap();
        for (c, &pc) in p.iter().enumerate() {
            let expected = if c % 4 == 0 { 0.25 } else { 0.0 };
            assert!((pc - expected).abs() <= 1e-10, "c={c} p={pc}");
        }
    }

    #[test]
    fn residue_is_arithmetic_progression() {
        let circ = ShorCircuit::new(7, 15, 16).unwrap();
        for value in [1u64, 7, 4, 13] {
            let res = circ.step3_residue(value).unwrap();
            let support: Vec<usize> = (0..16).filter(|&x| res.amplitudes()[x].norm_sqr() > 1e-12).collect();
            assert_eq!(support.len(), 4);
            let x0 = support[0];
            assert!(x0 < 4);
            assert_eq!(support, vec![x0, x0 + 4, x0 + 8, x0 + 12]);
        }
        assert!(matches!(circ.step3_residue(2), Err(Error::ZeroNorm)));
    }

    #[test]
    fn sampled_values_are_multiples() {
        let mut rng = seeded_rng(5);
        for _ in 0..50 {
            assert_eq!(shor_sample(7, 15, 16, &mut rng).unwrap() % 4, 0);
        }
    }

    #[test]
    fn near_multiples_for_21() {
        let p = shor_distribution(2, 21, 512).unwrap();
        let near: f64 = p
            .iter()
            .enumerate()
            .filter(|&(c, _)| {
                let k = (c as f64 * 6.0 / 512.0).round();
                (c as f64 - k * 512.0 / 6.0).abs() <= 1.0
            })
            .map(|(_, &pc)| pc)
            .sum();
        assert!(near >= 0.8, "{near}");
    }

    #[test]
    fn order_examples() {
        let mut rng = seeded_rng(2);
        for (y, n) in [(7, 15), (2, 21), (4, 15), (1, 15)] {
            let run = shor_order(y, n, &mut rng, 64).unwrap();
            assert_eq!(run.recovered_r, Some(order_bruteforce(y, n).unwrap()));
            assert_eq!(run.repetitions, run.samples.len());
            assert!(run.samples.iter().all(|&c| c < run.q));
        }
    }

    #[test]
    fn non_coprime_rejected() {
        let mut rng = seeded_rng(0);
        assert!(matches!(
            shor_sample(3, 15, 16, &mut rng),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn candidates_combine_across_samples() {
        // c/q = 1/2 and 1/3 alone give 2 and 3; together lcm 6 is the order of 2 mod 21
        let mut cands = OrderCandidates::new(2, 21, 512).unwrap();
        assert_eq!(cands.push(256).unwrap(), None);
        assert_eq!(cands.push(171).unwrap(), Some(6));
    }
}
