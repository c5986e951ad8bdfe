use crate::error::{Error, Result};

/// Bitwise dot product mod 2.
pub fn dot_bits(a: u64, b: u64) -> u64 {
    ((a & b).count_ones() % 2) as u64
}

/// Rows of an `m x n` matrix over GF(2), each packed into the low `n` bits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GF2Matrix {
    width: usize,
    rows: Vec<u64>,
}

impl GF2Matrix {
    pub fn new(width: usize, rows: Vec<u64>) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(Error::InvalidArgument(format!("width {width} outside 1..=64")));
        }
        let mask = mask(width);
        if let Some(&bad) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::InvalidArgument(format!("row {bad:#b} wider than {width} bits")));
        }
        Ok(Self { width, rows })
    }

    pub fn identity(width: usize) -> Result<Self> {
        Self::new(width, (0..width).map(|i| 1u64 << i).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn push(&mut self, row: u64) {
        self.rows.push(row & mask(self.width));
    }

    pub fn rank(&self) -> usize {
        reduce(&self.rows).len()
    }
}

fn mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Reduced row echelon form; returns `(pivot_bit, row)` pairs.
fn reduce(rows: &[u64]) -> Vec<(u32, u64)> {
    let mut pivots: Vec<(u32, u64)> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &(p, row) in &pivots {
            if v >> p & 1 == 1 {
                v ^= row;
            }
        }
        if v == 0 {
            continue;
        }
        let p = 63 - v.leading_zeros();
        for entry in pivots.iter_mut() {
            if entry.1 >> p & 1 == 1 {
                entry.1 ^= v;
            }
        }
        pivots.push((p, v));
    }
    pivots
}

/// Basis of `{x : M x = 0}` by Gaussian elimination.
pub fn gf2_nullspace(m: &GF2Matrix) -> Vec<u64> {
    let pivots = reduce(&m.rows);
    let mut basis = Vec::new();
    for free in (0..m.width as u32).rev() {
        if pivots.iter().any(|&(p, _)| p == free) {
            continue;
        }
        let mut v = 1u64 << free;
        for &(p, row) in &pivots {
            if row >> free & 1 == 1 {
                v |= 1u64 << p;
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_trivial_nullspace() {
        assert!(gf2_nullspace(&GF2Matrix::identity(5).unwrap()).is_empty());
    }

    #[test]
    fn hand_elimination_example() {
        let m = GF2Matrix::new(3, vec![0b011, 0b101]).unwrap();
        assert_eq!(gf2_nullspace(&m), vec![0b111]);
    }

    #[test]
    fn empty_matrix_gives_full_space() {
        let m = GF2Matrix::new(4, vec![]).unwrap();
        let basis = gf2_nullspace(&m);
        assert_eq!(basis.len(), 4);
        let mut span = basis.clone();
        span.sort();
        assert_eq!(span, vec![1, 2, 4, 8]);
    }

    #[test]
    fn rejects_wide_rows() {
        assert!(GF2Matrix::new(3, vec![0b1000]).is_err());
    }

    proptest! {
        #[test]
        fn nullspace_vectors_annihilate_rows(rows in prop::collection::vec(0u64..256, 0..10)) {
            let m = GF2Matrix::new(8, rows.clone()).unwrap();
            let basis = gf2_nullspace(&m);
            prop_assert_eq!(basis.len() + m.rank(), 8);
            for v in &basis {
                prop_assert!(*v != 0);
                for r in &rows {
                    prop_assert_eq!(dot_bits(*v, *r), 0);
                }
            }
            // independence
            let bm = GF2Matrix::new(8, basis.clone()).unwrap();
            prop_assert_eq!(bm.rank(), basis.len());
        }
    }
}
