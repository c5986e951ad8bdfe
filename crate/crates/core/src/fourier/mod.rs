//! The Fourier transform on a finite Abelian group.
//!
//! `FT` is the unitary with rows `chi_i / sqrt|G|`:
//! `[FT]_{ij} = chi_i(g_j) / sqrt|G|`. It maps the shift-invariant state
//! `|chi_i> = |G|^{-1/2} sum_g conj(chi_i(g)) |g>` to the basis state `|g_i>`,
//! and [`apply_inverse_ft`] undoes it. On `Z_q` this is `DFT_q` with the
//! positive exponent `exp(+2 pi i kl / q)`; on `B^n` it is `H_n`.
//!
//! [`ft_matrix`] builds the dense matrix and is the reference for the fast
//! path in [`apply_ft`], which factors `G` into its cyclic pieces and runs a
//! cyclic FFT along each.

mod fft;

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{CharacterIndex, GroupElement, GroupSpec};
use crate::simulator::{RegisterId, RegisterLayout, StateVector};

use fft::CyclicPlan;
pub use fft::Direction;

/// Largest `|G|` for which [`ft_matrix`] will build a dense matrix.
pub const DEFAULT_DENSE_MAX: usize = 4096;

/// Largest register the fast path will transform.
pub const FAST_PATH_MAX: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierMatrix {
    group: GroupSpec,
    entries: Vec<Complex64>,
}

impl FourierMatrix {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `FT x` for a single vector.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        self.entries
            .chunks_exact(n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `FT^dagger x`.
    pub fn apply_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|col| (0..n).map(|row| self.entry(row, col).conj() * x[row]).sum())
            .collect()
    }

    /// Dense multiplication on every fibre of `reg`.
    pub fn apply_to_register(&self, state: &mut StateVector, reg: RegisterId) -> Result<()> {
        check_register(state, reg, self.dim())?;
        state.transform_register(reg, |fibre| {
            let out = self.apply(fibre);
            fibre.copy_from_slice(&out);
        })
    }

    /// `max_{ij} |(FT^dagger FT - I)_{ij}|`.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let dot: Complex64 = (0..n).map(|k| self.entry(k, i).conj() * self.entry(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    /// Row-major text: one row per line, entries as `re,im` separated by spaces.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut out = String::new();
        for row in self.entries.chunks_exact(n) {
            let cells: Vec<String> = row
                .iter()
                .map(|c| format!("{},{}", fmt_num(c.re), fmt_num(c.im)))
                .collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

fn fmt_num(x: f64) -> String {
    // strip negative zero so dumps compare cleanly
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

pub fn ft_matrix(group: &GroupSpec) -> Result<FourierMatrix> {
    ft_matrix_with_max(group, DEFAULT_DENSE_MAX)
}

pub fn ft_matrix_with_max(group: &GroupSpec, dense_max: usize) -> Result<FourierMatrix> {
    let n = group.order();
    if n > dense_max {
        return Err(Error::TooLarge {
            size: n as u128,
            max: dense_max as u128,
        });
    }
    let scale = 1.0 / (n as f64).sqrt();
    let elements: Vec<GroupElement> = group.elements().collect();
    let mut entries = Vec::with_capacity(n * n);
    for chi in &elements {
        for g in &elements {
            entries.push(group.character_value(chi, g)? * scale);
        }
    }
    Ok(FourierMatrix {
        group: group.clone(),
        entries,
    })
}

fn check_register(state: &StateVector, reg: RegisterId, expected: usize) -> Result<()> {
    let dim = state.layout().dim(reg)?;
    if dim != expected {
        return Err(Error::DimensionMismatch { expected, found: dim });
    }
    Ok(())
}

/// Fast transform on one register, structured by the cyclic factors of `G`.
struct GroupTransform {
    factors: Vec<(CyclicPlan, usize)>,
    scale: f64,
    scratch: Vec<Complex64>,
}

impl GroupTransform {
    fn new(group: &GroupSpec, direction: Direction) -> Self {
        let mut stride = group.order();
        let factors = group
            .moduli()
            .iter()
            .map(|&n| {
                stride /= n as usize;
                (CyclicPlan::new(n as usize, direction), stride)
            })
            .collect();
        Self {
            factors,
            scale: 1.0 / (group.order() as f64).sqrt(),
            scratch: Vec::new(),
        }
    }

    fn run(&mut self, fibre: &mut [Complex64]) {
        for (plan, stride) in &mut self.factors {
            debug_assert_eq!(fibre.len() % (plan.len() * *stride), 0);
            plan.process_strided(fibre, *stride, &mut self.scratch);
        }
        fibre.iter_mut().for_each(|a| *a *= self.scale);
    }
}

fn transform(group: &GroupSpec, state: &mut StateVector, reg: RegisterId, direction: Direction) -> Result<()> {
    check_register(state, reg, group.order())?;
    if group.order() > FAST_PATH_MAX {
        return Err(Error::TooLarge {
            size: group.order() as u128,
            max: FAST_PATH_MAX as u128,
        });
    }
    let mut t = GroupTransform::new(group, direction);
    state.transform_register(reg, |fibre| t.run(fibre))
}

/// Applies `FT` of `group` to register `reg`.
pub fn apply_ft(group: &GroupSpec, state: &mut StateVector, reg: RegisterId) -> Result<()> {
    transform(group, state, reg, Direction::Forward)
}

/// Applies `FT^dagger`.
pub fn apply_inverse_ft(group: &GroupSpec, state: &mut StateVector, reg: RegisterId) -> Result<()> {
    transform(group, state, reg, Direction::Inverse)
}

/// `H_n`: `|x> -> 2^{-n/2} sum_y (-1)^{x.y} |y>` on an `n`-qubit register.
pub fn hadamard_n(state: &mut StateVector, reg: RegisterId) -> Result<()> {
    let dim = state.layout().dim(reg)?;
    if !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    let scale = 1.0 / (dim as f64).sqrt();
    state.transform_register(reg, |fibre| {
        fft::walsh_hadamard(fibre);
        fibre.iter_mut().for_each(|a| *a *= scale);
    })
}

/// `DFT_q`: `|k> -> q^{-1/2} sum_l exp(2 pi i kl/q) |l>`, `q` the register dimension.
pub fn dft_q(state: &mut StateVector, reg: RegisterId) -> Result<()> {
    let q = state.layout().dim(reg)?;
    apply_ft(&GroupSpec::cyclic(q as u64)?, state, reg)
}

/// Inverse of [`dft_q`] (negative exponent).
pub fn inverse_dft_q(state: &mut StateVector, reg: RegisterId) -> Result<()> {
    let q = state.layout().dim(reg)?;
    apply_inverse_ft(&GroupSpec::cyclic(q as u64)?, state, reg)
}

/// `|g> -> |h o g>` on register `reg`.
pub fn shift_operator(group: &GroupSpec, h: &GroupElement, state: &mut StateVector, reg: RegisterId) -> Result<()> {
    group.validate(h)?;
    check_register(state, reg, group.order())?;
    let layout = state.layout().clone();
    let stride = layout.stride(reg)?;
    let dim = group.order();
    state.permute(|i| {
        let g = (i / stride) % dim;
        i - g * stride + group.op_index(h, g) * stride
    });
    Ok(())
}

/// The shift-invariant state `|chi_i> = |G|^{-1/2} sum_g conj(chi_i(g)) |g>`.
pub fn fourier_basis_state(group: &GroupSpec, chi: &CharacterIndex) -> Result<StateVector> {
    let layout = RegisterLayout::new(&[group.order()])?;
    let scale = 1.0 / (group.order() as f64).sqrt();
    let amps = group
        .elements()
        .map(|g| group.character_value(chi, &g).map(|v| v.conj() * scale))
        .collect::<Result<Vec<_>>>()?;
    StateVector::from_amplitudes(&layout, amps)
}
