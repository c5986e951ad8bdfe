//! Order of `y` mod `N` from the eigenphases seen by `X = |1>`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::phase::{estimate_phase, samples_per_stage, EstimateMode, PhaseEstimate, PhaseOptions};
use super::MultUnitary;
use crate::algorithms::OrderCandidates;
use crate::error::{Error, Result};
use crate::numtheory::gcd;

/// `1 + ceil(log2 N)`.
pub fn precision_bits(n: u64) -> usize {
    1 + (64 - (n.max(2) - 1).leading_zeros()) as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct KitaevOptions {
    pub epsilon: f64,
    /// Defaults to [`precision_bits`].
    pub bits: Option<usize>,
    pub max_attempts: usize,
    pub mode: EstimateMode,
}

impl Default for KitaevOptions {
    fn default() -> Self {
        Self {
            epsilon: 0.05,
            bits: None,
            max_attempts: 32,
            mode: EstimateMode::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KitaevRun {
    #[serde(rename = "N")]
    pub n: u64,
    pub y: u64,
    pub bits: usize,
    pub epsilon: f64,
    pub samples_per_stage: usize,
    /// One entry per successful phase estimate.
    pub estimates: Vec<PhaseEstimate>,
    /// Estimates rejected because their stages disagreed.
    pub inconsistent: usize,
    pub recovered_r: Option<u64>,
    pub attempts: usize,
}

impl KitaevRun {
    /// The measured `c` values, `phi ~ c / 2^bits`.
    pub fn samples(&self) -> Vec<u64> {
        self.estimates.iter().map(PhaseEstimate::numerator).collect()
    }
}

pub fn kitaev_order<R: Rng + ?Sized>(y: u64, n: u64, rng: &mut R) -> Result<KitaevRun> {
    kitaev_order_with(y, n, &KitaevOptions::default(), rng)
}

/// Repeats phase estimation on `|1>` until the measured fractions yield a
/// verified order.
pub fn kitaev_order_with<R: Rng + ?Sized>(y: u64, n: u64, opts: &KitaevOptions, rng: &mut R) -> Result<KitaevRun> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let y = y % n;
    if gcd(y, n)? != 1 {
        return Err(Error::NotCoprime { y, modulus: n });
    }
    let l = opts.bits.unwrap_or_else(|| precision_bits(n));
    let t = samples_per_stage(l, opts.epsilon)?;
    let mut run = KitaevRun {
        n,
        y,
        bits: l,
        epsilon: opts.epsilon,
        samples_per_stage: t,
        estimates: Vec::new(),
        inconsistent: 0,
        recovered_r: None,
        attempts: 0,
    };
    let mut cands = OrderCandidates::new(y, n, 1u64 << l)?;
    if let Some(r) = cands.trivial() {
        run.recovered_r = Some(r);
        return Ok(run);
    }
    let u = MultUnitary::new(y, n)?;
    let mut one = vec![Complex64::new(0.0, 0.0); n as usize];
    one[1] = Complex64::new(1.0, 0.0);
    let popts = PhaseOptions {
        bits: l,
        epsilon: opts.epsilon,
        samples: Some(t),
        mode: opts.mode,
    };
    while run.attempts < opts.max_attempts {
        run.attempts += 1;
        let est = match estimate_phase(&u, &one, &popts, rng) {
            Ok(est) => est,
            Err(Error::InconsistentStages { .. }) => {
                run.inconsistent += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let c = est.numerator();
        run.estimates.push(est);
        if let Some(r) = cands.push(c)? {
            run.recovered_r = Some(r);
            return Ok(run);
        }
    }
    Err(Error::BudgetExhausted {
        what: "kitaev_order",
        attempts: run.attempts,
    })
}
