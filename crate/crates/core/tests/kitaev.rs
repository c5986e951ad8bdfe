use std::collections::BTreeMap;

use num_complex::Complex64;

use qfourier::kitaev::{
    eigenstate_lambda_k, estimate_p0, estimate_phase, full_proc_distribution, kitaev_order, lambda_k_phase,
    EstimateMode, MatrixUnitary, MultUnitary, Phase, PhaseOptions, ProcState, ProcVariant,
};
use qfourier::rng::seeded_rng;

fn one_hot(dim: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

#[test]
fn proc_outcome_probabilities_on_eigenstates() {
    let u = MultUnitary::new(7, 15).unwrap();
    for k in 0..4 {
        let lam = eigenstate_lambda_k(7, 15, 4, k).unwrap();
        // U|lambda_k> = exp(-2 pi i k / 4)|lambda_k>
        let z = Complex64::from_polar(1.0, -std::f64::consts::TAU * k as f64 / 4.0);
        let p = full_proc_distribution(&u, lam.amplitudes(), 0, 1, ProcVariant::Cosine).unwrap();
        assert!((p[0] - ((1.0 + z) / 2.0).norm_sqr()).abs() <= 1e-12);
        assert!((p[1] - ((1.0 - z) / 2.0).norm_sqr()).abs() <= 1e-12);
        let zi = z * Complex64::new(0.0, 1.0);
        let p = full_proc_distribution(&u, lam.amplitudes(), 0, 1, ProcVariant::Quadrature).unwrap();
        assert!((p[0] - ((1.0 + zi) / 2.0).norm_sqr()).abs() <= 1e-12);
    }
}

#[test]
fn phase_convention_is_negative_k_over_r() {
    assert_eq!(lambda_k_phase(4, 1).unwrap(), Phase::new(3, 4).unwrap());
    assert_eq!(lambda_k_phase(6, 0).unwrap(), Phase::zero());
}

#[test]
fn p0_estimate_at_quarter_turn() {
    // lambda_3 of (7, 15) has phi = 1/4, so p0 = 1/2
    let u = MultUnitary::new(7, 15).unwrap();
    let lam = eigenstate_lambda_k(7, 15, 4, 3).unwrap();
    let close = (0..100)
        .filter(|&seed| {
            let mut ps = ProcState::new(lam.amplitudes()).unwrap();
            let p = estimate_p0(&u, &mut ps, 10_000, &mut seeded_rng(seed)).unwrap();
            (p - 0.5).abs() <= 0.02
        })
        .count();
    assert!(close >= 99, "{close}/100");
}

fn assert_exact_bits(u: &dyn Fn(&PhaseOptions, u64) -> Option<u64>, expected: u64, label: &str) {
    let opts = PhaseOptions::default();
    let hits = (0..200).filter(|&seed| u(&opts, seed) == Some(expected)).count();
    assert!(hits as f64 >= 200.0 * (1.0 - opts.epsilon), "{label}: {hits}/200");
}

#[test]
fn exact_eigenstates_give_all_bits() {
    let u = MultUnitary::new(7, 15).unwrap();
    for k in 0..4 {
        let lam = eigenstate_lambda_k(7, 15, 4, k).unwrap();
        // phi = (4 - k)/4 mod 1, as 8 bits
        let expected = ((4 - k) % 4) * 64;
        for mode in [EstimateMode::CollapseFirst, EstimateMode::Sequential] {
            let run = |opts: &PhaseOptions, seed: u64| {
                let opts = PhaseOptions { mode, ..opts.clone() };
                estimate_phase(&u, lam.amplitudes(), &opts, &mut seeded_rng(seed))
                    .ok()
                    .map(|e| e.numerator())
            };
            assert_exact_bits(&run, expected, &format!("k={k} {mode:?}"));
        }
    }
    let phases: Vec<Phase> = [(0, 1), (5, 32), (77, 256), (1, 2), (255, 256)]
        .iter()
        .map(|&(a, b)| Phase::new(a, b).unwrap())
        .collect();
    let d = MatrixUnitary::diagonal(&phases).unwrap();
    for (i, ph) in phases.iter().enumerate() {
        let expected = ph.num * (256 / ph.den);
        let x = one_hot(phases.len(), i);
        let run = |opts: &PhaseOptions, seed: u64| {
            estimate_phase(&d, &x, opts, &mut seeded_rng(seed))
                .ok()
                .map(|e| e.numerator())
        };
        assert_exact_bits(&run, expected, &format!("phase {}/{}", ph.num, ph.den));
    }
}

#[test]
fn input_one_samples_each_eigenphase_equally() {
    let u = MultUnitary::new(7, 15).unwrap();
    let x = one_hot(15, 1);
    let opts = PhaseOptions::default();
    let runs = 10_000;
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for seed in 0..runs {
        let est = estimate_phase(&u, &x, &opts, &mut seeded_rng(seed)).unwrap();
        *counts.entry(est.numerator()).or_default() += 1;
    }
    let in_set: usize = [0u64, 64, 128, 192]
        .iter()
        .map(|c| counts.get(c).copied().unwrap_or(0))
        .sum();
    // stage failures are allowed at rate epsilon
    assert!(in_set as f64 >= runs as f64 * (1.0 - opts.epsilon));
    for c in [0u64, 64, 128, 192] {
        let freq = counts.get(&c).copied().unwrap_or(0) as f64 / runs as f64;
        assert!((freq - 0.25).abs() <= 0.05, "{c}: {freq}");
    }
}

#[test]
fn order_examples() {
    for (y, n, r) in [(7u64, 15u64, 4u64), (2, 21, 6), (4, 15, 2)] {
        let run = kitaev_order(y, n, &mut seeded_rng(1)).unwrap();
        assert_eq!(run.recovered_r, Some(r));
    }
}
