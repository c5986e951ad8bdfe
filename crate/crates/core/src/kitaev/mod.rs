//! Eigenvalue measurement for unitaries that fix `|0>`: the controlled-U
//! gadget, PROC sampling, phase estimation from successive powers, and
//! order finding through multiplication by `y`.

mod gadget;
mod order;
mod phase;

pub use gadget::{controlled_u_direct, controlled_u_gadget, gadget_layout, linear_entropy};
pub use order::{kitaev_order, kitaev_order_with, precision_bits, KitaevOptions, KitaevRun};
pub use phase::{
    collapse_first_distribution, estimate_p0, estimate_phase, full_proc_distribution, proc_once, proc_p0,
    samples_per_stage, stitch_stages, EstimateMode, PhaseEstimate, PhaseOptions, ProcState, ProcVariant, StageRecord,
    STAGE_PRECISION,
};

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::root_of_unity;
use crate::numtheory::{gcd, modpow, mulmod, order_bruteforce, pow2_power};
use crate::simulator::{RegisterLayout, StateVector};

/// An exact phase `num / den` in `[0, 1)`, meaning the eigenvalue
/// `exp(2 pi i num/den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Phase {
    pub num: u64,
    pub den: u64,
}

impl Phase {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("phase denominator is zero".into()));
        }
        let num = num % den;
        let g = crate::group::gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `2^j phi mod 1`.
    pub fn doubled(&self, j: u32) -> Self {
        if self.den == 1 {
            return Self::zero();
        }
        let m = modpow(2, j as u64, self.den).unwrap_or(0);
        Self::new(mulmod(self.num, m, self.den), self.den).unwrap_or_else(|_| Self::zero())
    }
}

/// Projection of an input state onto one eigenspace.
#[derive(Debug, Clone)]
pub struct EigenComponent {
    pub phase: Phase,
    /// `|a_lambda|^2`.
    pub weight: f64,
    /// Normalised projection onto the eigenspace.
    pub state: Vec<Complex64>,
}

/// A unitary on `C^dim` whose powers `U^(2^j)` can be applied.
pub trait PowerOracle {
    fn dim(&self) -> usize;

    /// Overwrites `v` with `U^(2^j) v`.
    fn apply_power(&self, j: u32, v: &mut [Complex64]) -> Result<()>;

    /// Whether `U|0> = |0>`.
    fn fixes_zero(&self) -> bool;

    /// Spectral decomposition of `input`, when the eigenbasis is known.
    fn spectrum(&self, _input: &[Complex64]) -> Option<Vec<EigenComponent>> {
        None
    }
}

/// `U|m> = |m y mod N>` on `C^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultUnitary {
    y: u64,
    n: u64,
}

impl MultUnitary {
    pub fn new(y: u64, n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidModulus(n));
        }
        if y < 2 || y >= n {
            return Err(Error::InvalidArgument(format!("y = {y} outside 2..{n}")));
        }
        if gcd(y, n)? != 1 {
            return Err(Error::NotCoprime { y, modulus: n });
        }
        Ok(Self { y, n })
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Image of the basis label `m` under `U^(2^j)`.
    pub fn map_power(&self, j: u32, m: u64) -> u64 {
        let a = pow2_power(self.y, j, self.n).unwrap_or(1);
        mulmod(a, m, self.n)
    }

    /// Basis labels split into cycles of `m -> m y`, each starting at its
    /// least element.
    pub fn cycles(&self) -> Vec<Vec<u64>> {
        let mut seen = vec![false; self.n as usize];
        let mut out = Vec::new();
        for m0 in 0..self.n {
            if seen[m0 as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut m = m0;
            while !seen[m as usize] {
                seen[m as usize] = true;
                cycle.push(m);
                m = mulmod(m, self.y, self.n);
            }
            out.push(cycle);
        }
        out
    }
}

impl PowerOracle for MultUnitary {
    fn dim(&self) -> usize {
        self.n as usize
    }

    fn apply_power(&self, j: u32, v: &mut [Complex64]) -> Result<()> {
        check_len(v, self.dim())?;
        let a = pow2_power(self.y, j, self.n)?;
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (m, amp) in v.iter().enumerate() {
            out[mulmod(a, m as u64, self.n) as usize] = *amp;
        }
        v.copy_from_slice(&out);
        Ok(())
    }

    fn fixes_zero(&self) -> bool {
        true
    }

    /// On a cycle `m0, m0 y, .., m0 y^(L-1)` the vectors
    /// `v_k = L^{-1/2} sum_l exp(2 pi i lk/L) |m0 y^l>` satisfy
    /// `U v_k = exp(-2 pi i k/L) v_k`, i.e. phase `(L - k)/L`.
    fn spectrum(&self, input: &[Complex64]) -> Option<Vec<EigenComponent>> {
        if input.len() != self.dim() {
            return None;
        }
        let mut acc: BTreeMap<Phase, Vec<Complex64>> = BTreeMap::new();
        for cycle in self.cycles() {
            let len = cycle.len() as u64;
            if cycle.iter().all(|&m| input[m as usize].norm_sqr() == 0.0) {
                continue;
            }
            let scale = 1.0 / (len as f64).sqrt();
            for k in 0..len {
                let coeff: Complex64 = cycle
                    .iter()
                    .enumerate()
                    .map(|(l, &m)| root_of_unity((l as u64 * k) % len, len).conj() * input[m as usize])
                    .sum::<Complex64>()
                    * scale;
                if coeff.norm_sqr() < 1e-15 {
                    continue;
                }
                let phase = Phase::new((len - k) % len, len).ok()?;
                let slot = acc
                    .entry(phase)
                    .or_insert_with(|| vec![Complex64::new(0.0, 0.0); input.len()]);
                for (l, &m) in cycle.iter().enumerate() {
                    slot[m as usize] += coeff * root_of_unity((l as u64 * k) % len, len) * scale;
                }
            }
        }
        Some(acc.into_iter().map(|(phase, state)| component(phase, state)).collect())
    }
}

fn component(phase: Phase, mut state: Vec<Complex64>) -> EigenComponent {
    let weight: f64 = state.iter().map(|a| a.norm_sqr()).sum();
    let scale = weight.sqrt();
    if scale > 0.0 {
        state.iter_mut().for_each(|a| *a /= scale);
    }
    EigenComponent { phase, weight, state }
}

fn check_len(v: &[Complex64], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    Ok(())
}

/// A dense unitary. Powers come from caller-supplied matrices where given,
/// otherwise from `2^j` repeated applications.
#[derive(Debug, Clone)]
pub struct MatrixUnitary {
    dim: usize,
    entries: Vec<Complex64>,
    powers: Vec<Vec<Complex64>>,
    diagonal: Option<Vec<Phase>>,
}

impl MatrixUnitary {
    /// `entries` is row-major, `dim x dim`.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        for a in 0..dim {
            for b in 0..dim {
                let dot: Complex64 = (0..dim)
                    .map(|i| entries[i * dim + a].conj() * entries[i * dim + b])
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                if (dot - target).norm() > 1e-9 {
                    return Err(Error::InvalidArgument("matrix is not unitary".into()));
                }
            }
        }
        Ok(Self {
            dim,
            entries,
            powers: Vec::new(),
            diagonal: None,
        })
    }

    /// `diag(exp(2 pi i phi_0), ..)`; its spectrum is known exactly.
    pub fn diagonal(phases: &[Phase]) -> Result<Self> {
        let dim = phases.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, p) in phases.iter().enumerate() {
            entries[i * dim + i] = root_of_unity(p.num, p.den);
        }
        let mut u = Self::new(dim, entries)?;
        u.diagonal = Some(phases.to_vec());
        Ok(u)
    }

    /// Supplies `U^(2^j)` for `j = 0..powers.len()`.
    pub fn with_powers(mut self, powers: Vec<Vec<Complex64>>) -> Result<Self> {
        for p in &powers {
            if p.len() != self.dim * self.dim {
                return Err(Error::ShapeMismatch {
                    expected: self.dim * self.dim,
                    found: p.len(),
                });
            }
        }
        self.powers = powers;
        Ok(self)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    fn matvec(m: &[Complex64], dim: usize, v: &mut [Complex64]) {
        let out: Vec<Complex64> = (0..dim)
            .map(|r| (0..dim).map(|c| m[r * dim + c] * v[c]).sum())
            .collect();
        v.copy_from_slice(&out);
    }
}

impl PowerOracle for MatrixUnitary {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply_power(&self, j: u32, v: &mut [Complex64]) -> Result<()> {
        check_len(v, self.dim)?;
        if let Some(p) = self.powers.get(j as usize) {
            Self::matvec(p, self.dim, v);
            return Ok(());
        }
        if j >= 32 {
            return Err(Error::TooLarge {
                size: 1u128 << j,
                max: 1u128 << 32,
            });
        }
        // exponential in j
        for _ in 0..(1u64 << j) {
            Self::matvec(&self.entries, self.dim, v);
        }
        Ok(())
    }

    fn fixes_zero(&self) -> bool {
        (0..self.dim).all(|r| {
            let target = if r == 0 { 1.0 } else { 0.0 };
            (self.entries[r * self.dim] - target).norm() < 1e-12
        })
    }

    fn spectrum(&self, input: &[Complex64]) -> Option<Vec<EigenComponent>> {
        let phases = self.diagonal.as_ref()?;
        if input.len() != self.dim {
            return None;
        }
        let mut acc: BTreeMap<Phase, Vec<Complex64>> = BTreeMap::new();
        for (i, p) in phases.iter().enumerate() {
            if input[i].norm_sqr() < 1e-15 {
                continue;
            }
            acc.entry(*p)
                .or_insert_with(|| vec![Complex64::new(0.0, 0.0); self.dim])[i] = input[i];
        }
        Some(acc.into_iter().map(|(phase, state)| component(phase, state)).collect())
    }
}

/// `|lambda_k> = r^{-1/2} sum_l exp(2 pi i lk/r) |y^l mod N>`, with
/// `U|lambda_k> = exp(-2 pi i k/r)|lambda_k>`.
pub fn eigenstate_lambda_k(y: u64, n: u64, r: u64, k: u64) -> Result<StateVector> {
    let order = order_bruteforce(y, n)?;
    if r != order {
        return Err(Error::InvalidArgument(format!(
            "{r} is not the order of {y} mod {n} (it is {order})"
        )));
    }
    if k >= r {
        return Err(Error::InvalidArgument(format!("k = {k} must be below r = {r}")));
    }
    let layout = RegisterLayout::new(&[n as usize])?;
    let mut amps = vec![Complex64::new(0.0, 0.0); n as usize];
    let scale = 1.0 / (r as f64).sqrt();
    let mut m = 1u64;
    for l in 0..r {
        amps[m as usize] += root_of_unity((l * k) % r, r) * scale;
        m = mulmod(m, y, n);
    }
    StateVector::from_amplitudes(&layout, amps)
}

/// The phase carried by `|lambda_k>`: `(-k/r) mod 1`.
pub fn lambda_k_phase(r: u64, k: u64) -> Result<Phase> {
    Phase::new((r - k % r) % r, r)
}
