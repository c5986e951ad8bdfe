//! Unnormalised cyclic DFTs (planned by `rustfft`) and the Walsh-Hadamard
//! butterfly.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

/// Sign of the exponent in `sum_j x_j exp(sign 2 pi i jk / n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

thread_local! {
    // the planner memoises plans (and their twiddles) per length
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// A reusable plan for one cyclic length.
#[derive(Clone)]
pub(crate) struct CyclicPlan {
    len: usize,
    fft: Arc<dyn Fft<f64>>,
    work: Vec<Complex64>,
}

impl std::fmt::Debug for CyclicPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CyclicPlan").field("len", &self.len).finish()
    }
}

impl CyclicPlan {
    pub(crate) fn new(len: usize, direction: Direction) -> Self {
        // rustfft's forward transform uses the negative exponent
        let dir = match direction {
            Direction::Forward => FftDirection::Inverse,
            Direction::Inverse => FftDirection::Forward,
        };
        let fft = PLANNER.with(|p| p.borrow_mut().plan_fft(len, dir));
        let work = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        Self { len, fft, work }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn process(&mut self, data: &mut [Complex64]) {
        if self.len > 1 {
            self.fft.process_with_scratch(data, &mut self.work);
        }
    }

    /// Transforms every line of `data` that steps by `stride`; `data` is a
    /// whole number of blocks of `stride * len`.
    pub(crate) fn process_strided(&mut self, data: &mut [Complex64], stride: usize, scratch: &mut Vec<Complex64>) {
        if stride == 1 {
            for line in data.chunks_exact_mut(self.len) {
                self.process(line);
            }
            return;
        }
        let block = stride * self.len;
        scratch.resize(self.len, Complex64::new(0.0, 0.0));
        for outer in 0..data.len() / block {
            for inner in 0..stride {
                let start = outer * block + inner;
                for (l, s) in scratch.iter_mut().enumerate() {
                    *s = data[start + l * stride];
                }
                self.process(scratch);
                for (l, s) in scratch.iter().enumerate() {
                    data[start + l * stride] = *s;
                }
            }
        }
    }
}

/// Unnormalised Walsh-Hadamard transform; length must be a power of two.
pub(crate) fn walsh_hadamard(data: &mut [Complex64]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for i in start..start + h {
                let a = data[i];
                let b = data[i + h];
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::root_of_unity;
    use rand::Rng;

    fn twiddle(direction: Direction, num: u64, den: u64) -> Complex64 {
        let w = root_of_unity(num, den);
        match direction {
            Direction::Forward => w,
            Direction::Inverse => w.conj(),
        }
    }

    fn naive(x: &[Complex64], direction: Direction) -> Vec<Complex64> {
        let n = x.len() as u64;
        (0..n)
            .map(|k| (0..n).map(|j| x[j as usize] * twiddle(direction, (j * k) % n, n)).sum())
            .collect()
    }

    #[test]
    fn plans_match_naive_sum() {
        let mut rng = crate::rng::seeded_rng(11);
        for n in [1usize, 2, 3, 4, 5, 6, 7, 8, 12, 15, 16, 17, 31, 64, 100] {
            for direction in [Direction::Forward, Direction::Inverse] {
                let x: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect();
                let expected = naive(&x, direction);
                let mut got = x.clone();
                CyclicPlan::new(n, direction).process(&mut got);
                for (a, b) in got.iter().zip(&expected) {
                    assert!((a - b).norm() < 1e-10, "n={n}");
                }
            }
        }
    }

    #[test]
    fn walsh_hadamard_small() {
        let mut x = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        walsh_hadamard(&mut x);
        let re: Vec<f64> = x.iter().map(|c| c.re).collect();
        assert_eq!(re, vec![1.0, -1.0, -1.0, 1.0]);
    }
}
