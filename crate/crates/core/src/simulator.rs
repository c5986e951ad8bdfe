//! Register-structured statevector engine.
//!
//! A state lives on a product of registers with arbitrary dimensions
//! `d_1 x .. x d_k`. Basis indices are mixed-radix with register 0 most
//! significant, matching the element order of [`GroupSpec`](crate::group::GroupSpec).

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// Default cap on the number of amplitudes in a state.
pub const DEFAULT_MAX_AMPLITUDES: usize = 1 << 24;

/// Environment variable that overrides [`DEFAULT_MAX_AMPLITUDES`].
pub const MAX_AMPLITUDES_ENV: &str = "QSIM_MAX_AMPLITUDES";

/// Tolerance used when checking that a state is normalised.
pub const NORM_TOLERANCE: f64 = 1e-9;

pub type RegisterId = usize;

/// Amplitude cap, honouring `QSIM_MAX_AMPLITUDES` when it parses.
pub fn max_amplitudes() -> usize {
    std::env::var(MAX_AMPLITUDES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_AMPLITUDES)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl RegisterLayout {
    pub fn new(dims: &[usize]) -> Result<Self> {
        Self::with_max(dims, max_amplitudes())
    }

    pub fn with_max(dims: &[usize], max: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("layout needs at least one register".into()));
        }
        let mut size: u128 = 1;
        for &d in dims {
            if d < 2 {
                return Err(Error::InvalidModulus(d as u64));
            }
            size = size.saturating_mul(d as u128);
            if size > max as u128 {
                return Err(Error::TooLarge { size, max: max as u128 });
            }
        }
        let mut strides = vec![1usize; dims.len()];
        for j in (0..dims.len() - 1).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        Ok(Self {
            dims: dims.to_vec(),
            strides,
            size: size as usize,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, reg: RegisterId) -> Result<usize> {
        self.dims.get(reg).copied().ok_or(Error::NoSuchRegister(reg))
    }

    pub fn stride(&self, reg: RegisterId) -> Result<usize> {
        self.strides.get(reg).copied().ok_or(Error::NoSuchRegister(reg))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_registers(&self) -> usize {
        self.dims.len()
    }

    pub fn index_of(&self, labels: &[usize]) -> Result<usize> {
        if labels.len() != self.dims.len() {
            return Err(Error::ShapeMismatch {
                expected: self.dims.len(),
                found: labels.len(),
            });
        }
        let mut index = 0;
        for ((&l, &d), &s) in labels.iter().zip(&self.dims).zip(&self.strides) {
            if l >= d {
                return Err(Error::LabelOutOfRange { label: l, dim: d });
            }
            index += l * s;
        }
        Ok(index)
    }

    pub fn labels_of(&self, index: usize) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| (index / s) % d)
            .collect()
    }

    #[inline]
    pub fn label(&self, index: usize, reg: RegisterId) -> usize {
        (index / self.strides[reg]) % self.dims[reg]
    }

    /// Start indices of every fibre along `reg` (all other labels fixed).
    pub(crate) fn fibre_starts(&self, reg: RegisterId) -> impl Iterator<Item = usize> {
        let stride = self.strides[reg];
        let block = stride * self.dims[reg];
        let size = self.size;
        (0..size / block).flat_map(move |outer| (0..stride).map(move |inner| outer * block + inner))
    }
}

/// The outcome of measuring one register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcome {
    pub register: RegisterId,
    pub value: usize,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Product basis state `|labels[0]>|labels[1]>..`.
    pub fn init_basis(layout: &RegisterLayout, labels: &[usize]) -> Result<Self> {
        let index = layout.index_of(labels)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.size()];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            layout: layout.clone(),
            amps,
        })
    }

    /// Wraps amplitudes that are already unit norm (within [`NORM_TOLERANCE`]).
    pub fn from_amplitudes(layout: &RegisterLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.size() {
            return Err(Error::DimensionMismatch {
                expected: layout.size(),
                found: amps.len(),
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("state norm^2 is {norm}, expected 1")));
        }
        Ok(Self {
            layout: layout.clone(),
            amps,
        })
    }

    /// Normalises `amps` before wrapping them.
    pub fn from_unnormalized(layout: &RegisterLayout, mut amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.size() {
            return Err(Error::DimensionMismatch {
                expected: layout.size(),
                found: amps.len(),
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            layout: layout.clone(),
            amps,
        })
    }

    /// Tensor product; registers of `self` come first.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let mut dims = self.layout.dims.clone();
        dims.extend_from_slice(&other.layout.dims);
        let layout = RegisterLayout::new(&dims)?;
        let mut amps = Vec::with_capacity(layout.size());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(Self { layout, amps })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, labels: &[usize]) -> Result<Complex64> {
        Ok(self.amps[self.layout.index_of(labels)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.layout != other.layout {
            return Err(Error::DimensionMismatch {
                expected: self.layout.size(),
                found: other.layout.size(),
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Applies a basis permutation given on flat indices.
    ///
    /// `map` must be a bijection of `0..size`.
    pub fn permute(&mut self, map: impl Fn(usize) -> usize) {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[map(i)] = *a;
        }
        self.amps = out;
    }

    /// Applies a linear map to every fibre along `reg`.
    ///
    /// The closure receives the fibre's amplitudes in label order and must
    /// overwrite them in place. All-zero fibres are skipped.
    pub fn transform_register(&mut self, reg: RegisterId, apply: impl FnMut(&mut [Complex64])) -> Result<()> {
        self.transform_register_if(reg, |_| true, apply)
    }

    /// Like [`transform_register`](Self::transform_register), restricted to
    /// fibres whose start index (label 0 on `reg`) satisfies `select`.
    pub fn transform_register_if(
        &mut self,
        reg: RegisterId,
        select: impl Fn(usize) -> bool,
        mut apply: impl FnMut(&mut [Complex64]),
    ) -> Result<()> {
        let dim = self.layout.dim(reg)?;
        let stride = self.layout.stride(reg)?;
        if stride == 1 {
            for (f, fibre) in self.amps.chunks_exact_mut(dim).enumerate() {
                if select(f * dim) && fibre.iter().any(|a| a.re != 0.0 || a.im != 0.0) {
                    apply(fibre);
                }
            }
            return Ok(());
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); dim];
        let starts: Vec<usize> = self.layout.fibre_starts(reg).filter(|&s| select(s)).collect();
        for start in starts {
            let mut nonzero = false;
            for (l, slot) in buf.iter_mut().enumerate() {
                *slot = self.amps[start + l * stride];
                nonzero |= slot.re != 0.0 || slot.im != 0.0;
            }
            if !nonzero {
                continue;
            }
            apply(&mut buf);
            for (l, v) in buf.iter().enumerate() {
                self.amps[start + l * stride] = *v;
            }
        }
        Ok(())
    }

    /// Multiplies the amplitude of every basis state by `phase(index)`.
    pub fn apply_phase(&mut self, phase: impl Fn(usize) -> Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= phase(i);
        }
    }

    /// `|x>|y> -> |x>|y xor f(x)>` for `f: B^n -> B^m`.
    pub fn apply_oracle_xor(&mut self, f: &TruthTable, in_reg: RegisterId, out_reg: RegisterId) -> Result<()> {
        self.check_oracle_regs(f, in_reg, out_reg)?;
        let out_dim = self.layout.dim(out_reg)?;
        if !f.group().is_boolean() {
            return Err(Error::InvalidArgument("xor oracle needs a function on B^n".into()));
        }
        if !out_dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(out_dim));
        }
        f.check_codomain(out_dim as u64)?;
        let out_stride = self.layout.strides[out_reg];
        let layout = self.layout.clone();
        self.permute(|i| {
            let x = layout.label(i, in_reg);
            let y = layout.label(i, out_reg);
            let y2 = y ^ f.value_at(x) as usize;
            i - y * out_stride + y2 * out_stride
        });
        Ok(())
    }

    /// `|x1>|x2> -> |x1>|x2 + f(x1) mod N>` where `N` is the output dimension.
    pub fn apply_oracle_modadd(&mut self, f: &TruthTable, in_reg: RegisterId, out_reg: RegisterId) -> Result<()> {
        self.modular_oracle(f, in_reg, out_reg, false)
    }

    /// Inverse of [`apply_oracle_modadd`](Self::apply_oracle_modadd).
    pub fn apply_oracle_modsub(&mut self, f: &TruthTable, in_reg: RegisterId, out_reg: RegisterId) -> Result<()> {
        self.modular_oracle(f, in_reg, out_reg, true)
    }

    fn modular_oracle(
        &mut self,
        f: &TruthTable,
        in_reg: RegisterId,
        out_reg: RegisterId,
        subtract: bool,
    ) -> Result<()> {
        self.check_oracle_regs(f, in_reg, out_reg)?;
        let n = self.layout.dim(out_reg)?;
        f.check_codomain(n as u64)?;
        let out_stride = self.layout.strides[out_reg];
        let layout = self.layout.clone();
        self.permute(|i| {
            let x1 = layout.label(i, in_reg);
            let x2 = layout.label(i, out_reg);
            let v = f.value_at(x1) as usize;
            let y = if subtract { (x2 + n - v) % n } else { (x2 + v) % n };
            i - x2 * out_stride + y * out_stride
        });
        Ok(())
    }

    fn check_oracle_regs(&self, f: &TruthTable, in_reg: RegisterId, out_reg: RegisterId) -> Result<()> {
        let in_dim = self.layout.dim(in_reg)?;
        self.layout.dim(out_reg)?;
        if in_reg == out_reg {
            return Err(Error::InvalidArgument(
                "oracle input and output registers coincide".into(),
            ));
        }
        if f.group().order() != in_dim {
            return Err(Error::DimensionMismatch {
                expected: in_dim,
                found: f.group().order(),
            });
        }
        Ok(())
    }

    /// Marginal Born distribution over the labels of `reg`.
    pub fn probabilities(&self, reg: RegisterId) -> Result<Vec<f64>> {
        let dim = self.layout.dim(reg)?;
        let stride = self.layout.strides[reg];
        let mut p = vec![0.0; dim];
        // consecutive runs of `stride` amplitudes share a label on `reg`
        for block in self.amps.chunks_exact(stride * dim) {
            for (pl, run) in p.iter_mut().zip(block.chunks_exact(stride)) {
                *pl += run.iter().map(|a| a.norm_sqr()).sum::<f64>();
            }
        }
        Ok(p)
    }

    /// Joint Born distribution over all registers (flat index order).
    pub fn basis_probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Samples `reg` and collapses the state onto the observed label.
    pub fn measure_register<R: Rng + ?Sized>(&mut self, reg: RegisterId, rng: &mut R) -> Result<MeasurementOutcome> {
        let p = self.probabilities(reg)?;
        let value = sample_index(&p, rng);
        self.collapse(reg, value)?;
        Ok(MeasurementOutcome {
            register: reg,
            value,
            probability: p[value],
        })
    }

    /// Projects onto `reg = value` and renormalises.
    pub fn collapse(&mut self, reg: RegisterId, value: usize) -> Result<f64> {
        let dim = self.layout.dim(reg)?;
        if value >= dim {
            return Err(Error::LabelOutOfRange { label: value, dim });
        }
        let stride = self.layout.strides[reg];
        let mut weight = 0.0;
        for block in self.amps.chunks_exact_mut(stride * dim) {
            for (l, run) in block.chunks_exact_mut(stride).enumerate() {
                if l == value {
                    weight += run.iter().map(|a| a.norm_sqr()).sum::<f64>();
                } else {
                    run.fill(Complex64::new(0.0, 0.0));
                }
            }
        }
        if weight <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let scale = weight.sqrt();
        self.amps.iter_mut().for_each(|a| *a /= scale);
        Ok(weight)
    }

    /// Amplitudes of `reg` with every other register fixed at `others`.
    ///
    /// `others` lists labels for all registers except `reg`, in order.
    pub fn fibre(&self, reg: RegisterId, others: &[usize]) -> Result<Vec<Complex64>> {
        let dim = self.layout.dim(reg)?;
        let mut labels = others.to_vec();
        if labels.len() + 1 != self.layout.num_registers() {
            return Err(Error::ShapeMismatch {
                expected: self.layout.num_registers() - 1,
                found: labels.len(),
            });
        }
        labels.insert(reg, 0);
        let start = self.layout.index_of(&labels)?;
        let stride = self.layout.strides[reg];
        Ok((0..dim).map(|l| self.amps[start + l * stride]).collect())
    }

    /// One `index,re,im` line per amplitude with modulus above `threshold`.
    pub fn dump(&self, threshold: f64) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > threshold {
                let _ = writeln!(out, "{},{:.17e},{:.17e}", i, a.re, a.im);
            }
        }
        out
    }
}

/// Draws an index from a (possibly slightly unnormalised) distribution.
pub fn sample_index<R: Rng + ?Sized>(p: &[f64], rng: &mut R) -> usize {
    let total: f64 = p.iter().sum();
    let mut u = rng.gen::<f64>() * total;
    let mut last_nonzero = 0;
    for (i, &w) in p.iter().enumerate() {
        if w > 0.0 {
            last_nonzero = i;
            if u < w {
                return i;
            }
            u -= w;
        }
    }
    last_nonzero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::rng::seeded_rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn init_basis_examples() {
        let l = RegisterLayout::new(&[2, 2]).unwrap();
        let s = StateVector::init_basis(&l, &[0, 0]).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
        let l = RegisterLayout::new(&[16, 15]).unwrap();
        let s = StateVector::init_basis(&l, &[0, 1]).unwrap();
        assert_eq!(s.amplitude(&[0, 1]).unwrap(), c(1.0, 0.0));
        assert_eq!(s.amplitudes()[1], c(1.0, 0.0));
        let l = RegisterLayout::new(&[2, 2]).unwrap();
        assert_eq!(
            StateVector::init_basis(&l, &[2, 0]),
            Err(Error::LabelOutOfRange { label: 2, dim: 2 })
        );
    }

    #[test]
    fn layout_limits() {
        assert!(RegisterLayout::new(&[1, 2]).is_err());
        assert!(matches!(
            RegisterLayout::with_max(&[1024, 1024], 1000),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn xor_oracle_identity_function() {
        let b1 = GroupSpec::boolean(1).unwrap();
        let id = TruthTable::from_label_fn(&b1, 2, |x| x).unwrap();
        let l = RegisterLayout::new(&[2, 2]).unwrap();
        let mut s = StateVector::init_basis(&l, &[1, 0]).unwrap();
        s.apply_oracle_xor(&id, 0, 1).unwrap();
        assert_eq!(s.amplitude(&[1, 1]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn xor_oracle_is_involution() {
        let b3 = GroupSpec::boolean(3).unwrap();
        let f = TruthTable::from_label_fn(&b3, 4, |x| (x * 3 + 1) % 4).unwrap();
        let l = RegisterLayout::new(&[8, 4]).unwrap();
        let mut rng = seeded_rng(3);
        let amps: Vec<Complex64> = (0..32)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let s0 = StateVector::from_unnormalized(&l, amps).unwrap();
        let mut s = s0.clone();
        s.apply_oracle_xor(&f, 0, 1).unwrap();
        s.apply_oracle_xor(&f, 0, 1).unwrap();
        assert!(s.max_abs_diff(&s0) <= 1e-12);
    }

    #[test]
    fn xor_oracle_phase_kickback() {
        let b1 = GroupSpec::boolean(1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for f_vals in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let f = TruthTable::new(&b1, f_vals.to_vec()).unwrap();
            for x in 0..2 {
                let l = RegisterLayout::new(&[2, 2]).unwrap();
                let mut amps = vec![c(0.0, 0.0); 4];
                amps[x * 2] = c(h, 0.0);
                amps[x * 2 + 1] = c(-h, 0.0);
                let mut s = StateVector::from_amplitudes(&l, amps.clone()).unwrap();
                s.apply_oracle_xor(&f, 0, 1).unwrap();
                let sign = if f_vals[x] == 1 { -1.0 } else { 1.0 };
                for (a, b) in s.amplitudes().iter().zip(&amps) {
                    assert!((a - b * sign).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn modadd_examples() {
        let z16 = GroupSpec::cyclic(16).unwrap();
        let f = TruthTable::from_label_fn(&z16, 15, |x| crate::numtheory::modpow(7, x, 15).unwrap()).unwrap();
        let l = RegisterLayout::new(&[16, 15]).unwrap();
        let mut s = StateVector::init_basis(&l, &[2, 0]).unwrap();
        s.apply_oracle_modadd(&f, 0, 1).unwrap();
        assert_eq!(s.amplitude(&[2, 4]).unwrap(), c(1.0, 0.0));

        let zero = TruthTable::from_label_fn(&z16, 15, |_| 0).unwrap();
        let mut s = StateVector::init_basis(&l, &[5, 7]).unwrap();
        let before = s.clone();
        s.apply_oracle_modadd(&zero, 0, 1).unwrap();
        assert_eq!(s, before);

        let one = TruthTable::from_label_fn(&z16, 15, |_| 1).unwrap();
        let mut s = StateVector::init_basis(&l, &[3, 14]).unwrap();
        s.apply_oracle_modadd(&one, 0, 1).unwrap();
        assert_eq!(s.amplitude(&[3, 0]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn modadd_then_modsub_is_identity() {
        let z8 = GroupSpec::cyclic(8).unwrap();
        let f = TruthTable::from_label_fn(&z8, 5, |x| (x * x) % 5).unwrap();
        let l = RegisterLayout::new(&[8, 5]).unwrap();
        let mut rng = seeded_rng(9);
        let amps: Vec<Complex64> = (0..40).map(|_| c(rng.gen::<f64>(), rng.gen::<f64>())).collect();
        let s0 = StateVector::from_unnormalized(&l, amps).unwrap();
        let mut s = s0.clone();
        s.apply_oracle_modadd(&f, 0, 1).unwrap();
        assert!(s.max_abs_diff(&s0) > 1e-3);
        s.apply_oracle_modsub(&f, 0, 1).unwrap();
        assert!(s.max_abs_diff(&s0) <= 1e-12);
    }

    #[test]
    fn oracle_dimension_errors() {
        let b2 = GroupSpec::boolean(2).unwrap();
        let f = TruthTable::from_label_fn(&b2, 2, |x| x & 1).unwrap();
        let l = RegisterLayout::new(&[8, 2]).unwrap();
        let mut s = StateVector::init_basis(&l, &[0, 0]).unwrap();
        assert!(matches!(
            s.apply_oracle_xor(&f, 0, 1),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(s.apply_oracle_xor(&f, 0, 5), Err(Error::NoSuchRegister(5))));
    }

    #[test]
    fn probabilities_examples() {
        let l = RegisterLayout::new(&[3, 4]).unwrap();
        let s = StateVector::init_basis(&l, &[2, 1]).unwrap();
        assert_eq!(s.probabilities(0).unwrap(), vec![0.0, 0.0, 1.0]);
        assert_eq!(s.probabilities(1).unwrap(), vec![0.0, 1.0, 0.0, 0.0]);

        let l = RegisterLayout::new(&[5]).unwrap();
        let s = StateVector::from_unnormalized(&l, vec![c(1.0, 0.0); 5]).unwrap();
        for p in s.probabilities(0).unwrap() {
            assert!((p - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn measuring_basis_state_is_certain() {
        let l = RegisterLayout::new(&[4, 3]).unwrap();
        let mut s = StateVector::init_basis(&l, &[3, 2]).unwrap();
        let before = s.clone();
        let mut rng = seeded_rng(1);
        let m = s.measure_register(1, &mut rng).unwrap();
        assert_eq!(m.value, 2);
        assert_eq!(m.probability, 1.0);
        assert_eq!(s, before);
    }

    #[test]
    fn measurement_statistics_within_three_sigma() {
        let weights = [0.1, 0.2, 0.3, 0.4];
        let l = RegisterLayout::new(&[4]).unwrap();
        let amps: Vec<Complex64> = weights.iter().map(|w: &f64| c(w.sqrt(), 0.0)).collect();
        let s = StateVector::from_amplitudes(&l, amps).unwrap();
        let mut rng = seeded_rng(2024);
        let shots = 100_000;
        let mut counts = [0usize; 4];
        for _ in 0..shots {
            let mut t = s.clone();
            counts[t.measure_register(0, &mut rng).unwrap().value] += 1;
        }
        for (count, p) in counts.iter().zip(weights) {
            let sigma = (p * (1.0 - p) / shots as f64).sqrt();
            assert!((*count as f64 / shots as f64 - p).abs() <= 3.0 * sigma);
        }
    }

    #[test]
    fn collapse_gives_point_mass() {
        let l = RegisterLayout::new(&[3, 3]).unwrap();
        let s0 = StateVector::from_unnormalized(&l, (0..9).map(|i| c(i as f64 + 1.0, 0.5)).collect()).unwrap();
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let mut s = s0.clone();
            let m = s.measure_register(0, &mut rng).unwrap();
            let p = s.probabilities(0).unwrap();
            assert!((p[m.value] - 1.0).abs() < 1e-12);
            assert!((s.norm_sqr() - 1.0).abs() < NORM_TOLERANCE);
        }
    }

    #[test]
    fn dump_lists_nonzero_amplitudes() {
        let l = RegisterLayout::new(&[2, 2]).unwrap();
        let s = StateVector::init_basis(&l, &[1, 0]).unwrap();
        let text = s.dump(1e-12);
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("2,1.0"));
    }
}
