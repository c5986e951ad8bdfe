use num_complex::Complex64;
use rand::Rng;

use qfourier::fourier::{apply_ft, hadamard_n};
use qfourier::group::GroupSpec;
use qfourier::rng::seeded_rng;
use qfourier::simulator::{RegisterLayout, StateVector};
use qfourier::truth_table::TruthTable;

fn random_state(rng: &mut impl Rng, layout: &RegisterLayout) -> StateVector {
    let amps = (0..layout.size())
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    StateVector::from_unnormalized(layout, amps).unwrap()
}

#[test]
fn operations_preserve_norm() {
    let mut rng = seeded_rng(1);
    let layout = RegisterLayout::new(&[8, 5, 4]).unwrap();
    let g8 = GroupSpec::boolean(3).unwrap();
    let z5 = GroupSpec::cyclic(5).unwrap();
    let f_xor = TruthTable::from_label_fn(&g8, 4, |x| (x * 3) % 4).unwrap();
    let f_mod = TruthTable::from_label_fn(&g8, 5, |x| (x * x) % 5).unwrap();
    for _ in 0..20 {
        let mut s = random_state(&mut rng, &layout);
        hadamard_n(&mut s, 0).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
        apply_ft(&z5, &mut s, 1).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
        s.apply_oracle_xor(&f_xor, 0, 2).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
        s.apply_oracle_modadd(&f_mod, 0, 1).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
        s.measure_register(1, &mut rng).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn oracles_are_self_inverse_or_inverted() {
    let mut rng = seeded_rng(2);
    let g = GroupSpec::boolean(4).unwrap();
    let f = TruthTable::from_label_fn(&g, 8, |x| (x * 5 + 1) % 8).unwrap();
    let layout = RegisterLayout::new(&[16, 8]).unwrap();
    let s0 = random_state(&mut rng, &layout);
    let mut s = s0.clone();
    s.apply_oracle_xor(&f, 0, 1).unwrap();
    assert!(s.max_abs_diff(&s0) > 1e-3);
    s.apply_oracle_xor(&f, 0, 1).unwrap();
    assert!(s.max_abs_diff(&s0) <= 1e-12);

    let z = GroupSpec::cyclic(12).unwrap();
    let h = TruthTable::from_label_fn(&z, 7, |x| (x * x) % 7).unwrap();
    let layout = RegisterLayout::new(&[12, 7]).unwrap();
    let s0 = random_state(&mut rng, &layout);
    let mut s = s0.clone();
    s.apply_oracle_modadd(&h, 0, 1).unwrap();
    s.apply_oracle_modsub(&h, 0, 1).unwrap();
    assert!(s.max_abs_diff(&s0) <= 1e-12);
}

#[test]
fn measurement_frequencies_follow_born_rule() {
    let layout = RegisterLayout::new(&[4]).unwrap();
    let p = [0.1, 0.2, 0.3, 0.4];
    let amps = p.iter().map(|&x| Complex64::new(f64::sqrt(x), 0.0)).collect();
    let s = StateVector::from_amplitudes(&layout, amps).unwrap();
    let mut rng = seeded_rng(3);
    let trials = 100_000;
    let mut counts = [0usize; 4];
    for _ in 0..trials {
        let mut c = s.clone();
        counts[c.measure_register(0, &mut rng).unwrap().value] += 1;
    }
    for (k, &pk) in p.iter().enumerate() {
        let sigma = (pk * (1.0 - pk) / trials as f64).sqrt();
        let freq = counts[k] as f64 / trials as f64;
        assert!((freq - pk).abs() <= 3.0 * sigma, "{k}: {freq} vs {pk}");
    }
}

#[test]
fn measured_register_becomes_point_mass() {
    let mut rng = seeded_rng(4);
    let layout = RegisterLayout::new(&[3, 6, 2]).unwrap();
    for reg in 0..3 {
        for _ in 0..10 {
            let mut s = random_state(&mut rng, &layout);
            let before = s.probabilities(reg).unwrap();
            let m = s.measure_register(reg, &mut rng).unwrap();
            assert!((m.probability - before[m.value]).abs() <= 1e-12);
            let after = s.probabilities(reg).unwrap();
            for (v, p) in after.iter().enumerate() {
                let target = if v == m.value { 1.0 } else { 0.0 };
                assert!((p - target).abs() <= 1e-12);
            }
        }
    }
}
