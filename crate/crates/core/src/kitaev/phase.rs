//! PROC sampling and phase estimation to `l` bits from the powers
//! `U, U^2, U^4, ..`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::{EigenComponent, Phase, PowerOracle};
use crate::error::{Error, Result};
use crate::fourier::hadamard_n;
use crate::simulator::{sample_index, RegisterId, RegisterLayout, StateVector};

/// Per-stage precision `delta` on each estimated probability.
pub const STAGE_PRECISION: f64 = 0.125;

/// `2 / sqrt(2 pi)`, the prefactor of the tail bound.
const TAIL_PREFACTOR: f64 = 0.797_884_560_802_865_4;

/// Which interferometer the control qubit goes through.
///
/// `Cosine` is `H, Lambda(U), H` with `p0 = (1 + cos 2 pi phi)/2`.
/// `Quadrature` inserts `diag(1, i)` after the first `H`, giving
/// `p0 = (1 - sin 2 pi phi)/2`; together the two fix the sign of `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcVariant {
    Cosine,
    Quadrature,
}

/// Exact `p0` for eigenphase `phi`.
pub fn proc_p0(phi: f64, variant: ProcVariant) -> f64 {
    let theta = std::f64::consts::TAU * phi;
    let p = match variant {
        ProcVariant::Cosine => 0.5 * (1.0 + theta.cos()),
        ProcVariant::Quadrature => 0.5 * (1.0 - theta.sin()),
    };
    p.clamp(0.0, 1.0)
}

fn exact_p0(phase: Phase, variant: ProcVariant) -> f64 {
    // exact at multiples of 1/4 where the trig functions are not
    let quarter = match phase.den {
        1 => Some(0),
        2 => Some(2 * phase.num),
        4 => Some(phase.num),
        _ => None,
    };
    match (quarter, variant) {
        (Some(q), ProcVariant::Cosine) => [1.0, 0.5, 0.0, 0.5][q as usize],
        (Some(q), ProcVariant::Quadrature) => [0.5, 0.0, 0.5, 1.0][q as usize],
        (None, v) => proc_p0(phase.value(), v),
    }
}

/// Registers `(C, X)` with the control in `|0>` between runs.
#[derive(Debug, Clone)]
pub struct ProcState {
    state: StateVector,
}

impl ProcState {
    pub fn new(x: &[Complex64]) -> Result<Self> {
        let dim = x.len();
        let layout = RegisterLayout::new(&[2, dim])?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * dim];
        amps[..dim].copy_from_slice(x);
        Ok(Self {
            state: StateVector::from_amplitudes(&layout, amps)?,
        })
    }

    pub fn from_label(dim: usize, label: usize) -> Result<Self> {
        let layout = RegisterLayout::new(&[2, dim])?;
        Ok(Self {
            state: StateVector::init_basis(&layout, &[0, label])?,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Contents of `X` (the control is `|0>` here).
    pub fn x_state(&self) -> Vec<Complex64> {
        self.state.fibre(1, &[0]).unwrap_or_default()
    }
}

fn phase_gate(state: &mut StateVector, reg: RegisterId) {
    let layout = state.layout().clone();
    state.apply_phase(|i| {
        if layout.label(i, reg) == 1 {
            Complex64::new(0.0, 1.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    });
}

fn controlled_power<U: PowerOracle + ?Sized>(
    u: &U,
    j: u32,
    state: &mut StateVector,
    control: RegisterId,
    target: RegisterId,
) -> Result<()> {
    let layout = state.layout().clone();
    let mut err = None;
    state.transform_register_if(
        target,
        |start| layout.label(start, control) == 1,
        |fibre| {
            if let Err(e) = u.apply_power(j, fibre) {
                err = Some(e);
            }
        },
    )?;
    err.map_or(Ok(()), Err)
}

fn interfere<U: PowerOracle + ?Sized>(
    u: &U,
    j: u32,
    variant: ProcVariant,
    state: &mut StateVector,
    control: RegisterId,
    target: RegisterId,
) -> Result<()> {
    hadamard_n(state, control)?;
    if variant == ProcVariant::Quadrature {
        phase_gate(state, control);
    }
    controlled_power(u, j, state, control, target)?;
    hadamard_n(state, control)
}

/// One PROC with `U^(2^j)`: interfere, measure `C`, reset `C` to `|0>`.
pub fn proc_once<U: PowerOracle + ?Sized, R: Rng + ?Sized>(
    u: &U,
    j: u32,
    variant: ProcVariant,
    ps: &mut ProcState,
    rng: &mut R,
) -> Result<u8> {
    if ps.state.layout().dim(1)? != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: ps.state.layout().dim(1)?,
        });
    }
    interfere(u, j, variant, &mut ps.state, 0, 1)?;
    let bit = ps.state.measure_register(0, rng)?.value as u8;
    if bit == 1 {
        let dim = u.dim();
        ps.state.permute(|i| if i >= dim { i - dim } else { i + dim });
    }
    Ok(bit)
}

/// `y / t` over `t` cosine PROCs on the same `X`.
pub fn estimate_p0<U: PowerOracle + ?Sized, R: Rng + ?Sized>(
    u: &U,
    ps: &mut ProcState,
    t: usize,
    rng: &mut R,
) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let mut zeros = 0;
    for _ in 0..t {
        if proc_once(u, 0, ProcVariant::Cosine, ps, rng)? == 0 {
            zeros += 1;
        }
    }
    Ok(zeros as f64 / t as f64)
}

/// Runs per probability estimate so that each stage misses `delta = 1/8`
/// with probability at most `epsilon / l`, using `p0 p1 <= 1/4`. The
/// budget is split between the two variants, then rounded up to a power
/// of two.
pub fn samples_per_stage(l: usize, epsilon: f64) -> Result<usize> {
    if l == 0 || !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "need l >= 1 and 0 < epsilon < 1, got {l}, {epsilon}"
        )));
    }
    let per_estimate = epsilon / (2 * l) as f64;
    let t = ((TAIL_PREFACTOR / per_estimate).ln() / (2.0 * STAGE_PRECISION * STAGE_PRECISION)).ceil();
    Ok((t.max(1.0) as usize).next_power_of_two())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMode {
    /// Collapse-first when the spectrum is known, otherwise sequential.
    Auto,
    /// Sample one eigenspace, then i.i.d. control bits.
    CollapseFirst,
    /// Physical PROC runs on a single `(C, X)` pair.
    Sequential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOptions {
    pub bits: usize,
    pub epsilon: f64,
    /// Overrides [`samples_per_stage`].
    pub samples: Option<usize>,
    pub mode: EstimateMode,
}

impl Default for PhaseOptions {
    fn default() -> Self {
        Self {
            bits: 8,
            epsilon: 0.05,
            samples: None,
            mode: EstimateMode::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRecord {
    pub j: usize,
    pub t: usize,
    pub y_count: usize,
    pub p0_hat: f64,
    pub y_count_quadrature: usize,
    pub p0_hat_quadrature: f64,
    /// Estimate of `2^j phi mod 1`.
    pub angle: f64,
    /// Bits `j` and `j+1` of `phi` read off `angle`.
    pub bits: [u8; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseEstimate {
    /// Binary digits of `phi`, most significant first.
    pub bits: Vec<u8>,
    pub per_stage_p0: Vec<f64>,
    pub error_budget: f64,
    pub stages: Vec<StageRecord>,
    /// Stitched estimate before rounding to `bits`.
    pub value: f64,
    /// The eigenphase that was sampled, when simulated collapse-first.
    pub eigenphase: Option<Phase>,
}

impl PhaseEstimate {
    /// The bits as an integer `c`, so that `phi ~ c / 2^l`.
    pub fn numerator(&self) -> u64 {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn fraction(&self) -> f64 {
        self.numerator() as f64 / (1u64 << self.bits.len()) as f64
    }
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Combines stage estimates `alpha_j ~ 2^j phi mod 1` into one value of
/// `phi`, working from the finest stage down. Each step picks the half
/// of `beta_{j+1}` closer to `alpha_j`. Fails when some stage is more than
/// [`STAGE_PRECISION`] of a turn from the reconstruction.
pub fn stitch_stages(alphas: &[f64]) -> Result<f64> {
    let Some(&last) = alphas.last() else {
        return Err(Error::InvalidArgument("no stages".into()));
    };
    let mut beta = last.rem_euclid(1.0);
    for &alpha in alphas.iter().rev().skip(1) {
        let lo = beta / 2.0;
        let hi = lo + 0.5;
        beta = if circular_distance(lo, alpha) <= circular_distance(hi, alpha) {
            lo
        } else {
            hi
        };
    }
    for (j, &alpha) in alphas.iter().enumerate() {
        let reconstructed = (beta * (1u64 << j) as f64).rem_euclid(1.0);
        if circular_distance(reconstructed, alpha) > STAGE_PRECISION {
            return Err(Error::InconsistentStages {
                stage: j,
                estimate: alpha,
                reconstructed,
            });
        }
    }
    Ok(beta)
}

fn angle_from(p_cos: f64, p_quad: f64) -> f64 {
    let a = (1.0 - 2.0 * p_quad).atan2(2.0 * p_cos - 1.0) / std::f64::consts::TAU;
    a.rem_euclid(1.0)
}

fn count_zeros<R: Rng + ?Sized>(p0: f64, t: usize, rng: &mut R) -> usize {
    (0..t).filter(|_| rng.gen::<f64>() < p0).count()
}

/// Estimates `l` bits of the eigenphase of `input` (or of one eigenphase,
/// chosen with probability `|a_lambda|^2`, for a superposition).
pub fn estimate_phase<U: PowerOracle + ?Sized, R: Rng + ?Sized>(
    u: &U,
    input: &[Complex64],
    opts: &PhaseOptions,
    rng: &mut R,
) -> Result<PhaseEstimate> {
    let l = opts.bits;
    if l == 0 || l > 62 {
        return Err(Error::InvalidArgument(format!("bits = {l} outside 1..=62")));
    }
    if input.len() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: input.len(),
        });
    }
    let t = match opts.samples {
        Some(0) => return Err(Error::InvalidArgument("samples must be at least 1".into())),
        Some(t) => t,
        None => samples_per_stage(l, opts.epsilon)?,
    };
    let spectrum = match opts.mode {
        EstimateMode::Sequential => None,
        EstimateMode::Auto => u.spectrum(input),
        EstimateMode::CollapseFirst => Some(
            u.spectrum(input)
                .ok_or_else(|| Error::InvalidArgument("spectrum unknown; use sequential mode".into()))?,
        ),
    };

    let mut counts = Vec::with_capacity(l);
    let eigenphase = if let Some(comps) = spectrum {
        let phase = sample_component(&comps, rng)?.phase;
        for j in 0..l {
            let p = phase.doubled(j as u32);
            let zc = count_zeros(exact_p0(p, ProcVariant::Cosine), t, rng);
            let zq = count_zeros(exact_p0(p, ProcVariant::Quadrature), t, rng);
            counts.push((zc, zq));
        }
        Some(phase)
    } else {
        let mut ps = ProcState::new(input)?;
        for j in 0..l {
            let mut zc = 0;
            let mut zq = 0;
            for _ in 0..t {
                zc += (proc_once(u, j as u32, ProcVariant::Cosine, &mut ps, rng)? == 0) as usize;
            }
            for _ in 0..t {
                zq += (proc_once(u, j as u32, ProcVariant::Quadrature, &mut ps, rng)? == 0) as usize;
            }
            counts.push((zc, zq));
        }
        None
    };

    let mut stages = Vec::with_capacity(l);
    for (j, &(zc, zq)) in counts.iter().enumerate() {
        let pc = zc as f64 / t as f64;
        let pq = zq as f64 / t as f64;
        let angle = angle_from(pc, pq);
        let two = ((angle * 4.0).floor() as u64 % 4) as u8;
        stages.push(StageRecord {
            j,
            t,
            y_count: zc,
            p0_hat: pc,
            y_count_quadrature: zq,
            p0_hat_quadrature: pq,
            angle,
            bits: [two >> 1, two & 1],
        });
    }
    let alphas: Vec<f64> = stages.iter().map(|s| s.angle).collect();
    let value = stitch_stages(&alphas)?;
    let scale = (1u64 << l) as f64;
    let c = ((value * scale).round() as u64) % (1u64 << l);
    let bits = (0..l).map(|i| ((c >> (l - 1 - i)) & 1) as u8).collect();
    Ok(PhaseEstimate {
        bits,
        per_stage_p0: stages.iter().map(|s| s.p0_hat).collect(),
        error_budget: opts.epsilon,
        stages,
        value,
        eigenphase,
    })
}

fn sample_component<'a, R: Rng + ?Sized>(comps: &'a [EigenComponent], rng: &mut R) -> Result<&'a EigenComponent> {
    if comps.is_empty() {
        return Err(Error::ZeroNorm);
    }
    let w: Vec<f64> = comps.iter().map(|c| c.weight).collect();
    Ok(&comps[sample_index(&w, rng)])
}

fn check_small_t(t: usize) -> Result<()> {
    if t == 0 || t > 3 {
        return Err(Error::InvalidArgument(format!("t = {t} outside 1..=3")));
    }
    Ok(())
}

/// Joint law of `t` control bits when all `t` PROCs with `U^(2^j)` act on
/// one shared `X` before anything is measured. Index bit `t-1-i` holds
/// control `i`.
pub fn full_proc_distribution<U: PowerOracle + ?Sized>(
    u: &U,
    input: &[Complex64],
    j: u32,
    t: usize,
    variant: ProcVariant,
) -> Result<Vec<f64>> {
    check_small_t(t)?;
    let dim = u.dim();
    let mut dims = vec![2; t];
    dims.push(dim);
    let layout = RegisterLayout::new(&dims)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.size()];
    amps[..dim].copy_from_slice(input);
    let mut state = StateVector::from_amplitudes(&layout, amps)?;
    for c in 0..t {
        interfere(u, j, variant, &mut state, c, t)?;
    }
    let mut out = vec![0.0; 1 << t];
    for (i, a) in state.amplitudes().iter().enumerate() {
        out[i / dim] += a.norm_sqr();
    }
    Ok(out)
}

/// The same law from the spectrum: pick `lambda` with weight
/// `|a_lambda|^2`, then `t` independent bits.
pub fn collapse_first_distribution<U: PowerOracle + ?Sized>(
    u: &U,
    input: &[Complex64],
    j: u32,
    t: usize,
    variant: ProcVariant,
) -> Result<Vec<f64>> {
    check_small_t(t)?;
    let comps = u
        .spectrum(input)
        .ok_or_else(|| Error::InvalidArgument("spectrum unknown".into()))?;
    let mut out = vec![0.0; 1 << t];
    for comp in &comps {
        let p0 = exact_p0(comp.phase.doubled(j), variant);
        for (idx, slot) in out.iter_mut().enumerate() {
            let ones = idx.count_ones() as i32;
            *slot += comp.weight * p0.powi(t as i32 - ones) * (1.0 - p0).powi(ones);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kitaev::{eigenstate_lambda_k, MatrixUnitary, MultUnitary};
    use crate::rng::seeded_rng;

    fn diag(num: u64, den: u64) -> MatrixUnitary {
        MatrixUnitary::diagonal(&[Phase::zero(), Phase::new(num, den).unwrap()]).unwrap()
    }

    fn e1() -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
    }

    #[test]
    fn proc_examples() {
        let mut rng = seeded_rng(1);
        for (num, den, expected) in [(0, 1, 0u8), (1, 2, 1u8)] {
            let u = diag(num, den);
            let mut ps = ProcState::new(&e1()).unwrap();
            for _ in 0..50 {
                assert_eq!(
                    proc_once(&u, 0, ProcVariant::Cosine, &mut ps, &mut rng).unwrap(),
                    expected
                );
            }
        }
        assert!((proc_p0(0.25, ProcVariant::Cosine) - 0.5).abs() < 1e-12);
        let p = full_proc_distribution(&diag(1, 4), &e1(), 0, 1, ProcVariant::Cosine).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn proc_preserves_eigenstate() {
        let mut rng = seeded_rng(2);
        let u = MultUnitary::new(7, 15).unwrap();
        let lam = eigenstate_lambda_k(7, 15, 4, 1).unwrap();
        let mut ps = ProcState::new(lam.amplitudes()).unwrap();
        for _ in 0..20 {
            proc_once(&u, 0, ProcVariant::Cosine, &mut ps, &mut rng).unwrap();
        }
        let x = ps.x_state();
        let overlap: Complex64 = x.iter().zip(lam.amplitudes()).map(|(a, b)| a.conj() * b).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn proc_amplitudes_match_formula() {
        let u = MultUnitary::new(7, 15).unwrap();
        for k in 0..4 {
            let lam = eigenstate_lambda_k(7, 15, 4, k).unwrap();
            let phi = ((4 - k) % 4) as f64 / 4.0;
            let mut ps = ProcState::new(lam.amplitudes()).unwrap();
            interfere(&u, 0, ProcVariant::Cosine, &mut ps.state, 0, 1).unwrap();
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * phi);
            let c0 = (Complex64::new(1.0, 0.0) + w) * 0.5;
            let c1 = (Complex64::new(1.0, 0.0) - w) * 0.5;
            for m in 0..15 {
                let a0 = ps.state.amplitude(&[0, m]).unwrap();
                let a1 = ps.state.amplitude(&[1, m]).unwrap();
                assert!((a0 - c0 * lam.amplitudes()[m]).norm() < 1e-12);
                assert!((a1 - c1 * lam.amplitudes()[m]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn estimate_p0_examples() {
        let mut rng = seeded_rng(3);
        let mut ps = ProcState::new(&e1()).unwrap();
        assert_eq!(estimate_p0(&diag(0, 1), &mut ps, 17, &mut rng).unwrap(), 1.0);
        let mut ps = ProcState::new(&e1()).unwrap();
        let p = estimate_p0(&diag(1, 4), &mut ps, 10_000, &mut rng).unwrap();
        assert!((p - 0.5).abs() <= 0.02, "{p}");
    }

    #[test]
    fn sample_budget() {
        assert_eq!(samples_per_stage(7, 0.05).unwrap(), 256);
        assert!(samples_per_stage(0, 0.05).is_err());
        assert!(samples_per_stage(3, 0.0).is_err());
    }

    #[test]
    fn stitching() {
        let phi: f64 = 0.3141;
        let alphas: Vec<f64> = (0..8).map(|j| (phi * (1u64 << j) as f64).rem_euclid(1.0)).collect();
        assert!((stitch_stages(&alphas).unwrap() - phi).abs() < 1e-12);
        let noisy: Vec<f64> = alphas
            .iter()
            .enumerate()
            .map(|(j, a)| a + if j % 2 == 0 { 0.05 } else { -0.05 })
            .collect();
        assert!((stitch_stages(&noisy).unwrap() - phi).abs() < 0.05 / 128.0 + 1e-12);
        assert!(matches!(
            stitch_stages(&[0.0, 0.5, 0.0]),
            Err(Error::InconsistentStages { .. })
        ));
    }

    #[test]
    fn estimate_examples() {
        let mut rng = seeded_rng(4);
        let opts = PhaseOptions {
            bits: 3,
            ..PhaseOptions::default()
        };
        for mode in [EstimateMode::CollapseFirst, EstimateMode::Sequential] {
            let o = PhaseOptions { mode, ..opts.clone() };
            let est = estimate_phase(&diag(1, 4), &e1(), &o, &mut rng).unwrap();
            assert_eq!(est.bits, vec![0, 1, 0]);
            let est = estimate_phase(&diag(0, 1), &e1(), &o, &mut rng).unwrap();
            assert_eq!(est.bits, vec![0, 0, 0]);
            let est = estimate_phase(&diag(3, 4), &e1(), &o, &mut rng).unwrap();
            assert_eq!(est.bits, vec![1, 1, 0]);
        }
    }

    #[test]
    fn superposition_collapses_to_one_eigenvalue() {
        let mut rng = seeded_rng(5);
        let u = MultUnitary::new(7, 15).unwrap();
        let mut one = vec![Complex64::new(0.0, 0.0); 15];
        one[1] = Complex64::new(1.0, 0.0);
        let opts = PhaseOptions {
            bits: 3,
            ..PhaseOptions::default()
        };
        for _ in 0..50 {
            let est = estimate_phase(&u, &one, &opts, &mut rng).unwrap();
            let phase = est.eigenphase.unwrap();
            assert_eq!(phase.den.max(4) % 4, 0);
            assert!((est.fraction() - phase.value()).abs() < 1e-12);
        }
    }

    #[test]
    fn full_and_collapse_first_agree() {
        let u = MultUnitary::new(7, 15).unwrap();
        let mut one = vec![Complex64::new(0.0, 0.0); 15];
        one[1] = Complex64::new(1.0, 0.0);
        for t in 1..=3 {
            for j in 0..3 {
                for v in [ProcVariant::Cosine, ProcVariant::Quadrature] {
                    let a = full_proc_distribution(&u, &one, j, t, v).unwrap();
                    let b = collapse_first_distribution(&u, &one, j, t, v).unwrap();
                    let tv: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0;
                    assert!(tv <= 1e-10, "t={t} j={j} tv={tv}");
                }
            }
        }
    }
}
