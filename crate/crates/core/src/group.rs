//! Finite Abelian groups written as direct products of cyclic groups.
//!
//! A [`GroupSpec`] with moduli `(n_1, .., n_m)` is `Z_{n_1} x .. x Z_{n_m}`.
//! `B^n` is `(2, .., 2)` and `Z_q` is `(q)`. Elements are enumerated in
//! mixed-radix lexicographic order with `residues[0]` most significant; this
//! ordering is shared by the Fourier matrix and by register basis indices.
//!
//! Characters of a product of cyclic groups are indexed by the group's own
//! elements: `chi_k(g) = exp(2 pi i sum_j k_j g_j / n_j)`.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// Default cap on `|G|` for anything that enumerates the group.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
}

/// An element of a [`GroupSpec`], stored as reduced residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    residues: Vec<u64>,
}

/// Characters are labelled by group elements.
pub type CharacterIndex = GroupElement;

impl GroupSpec {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        Self::with_max_order(moduli, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn with_max_order(moduli: &[u64], max_order: usize) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidArgument("group needs at least one modulus".into()));
        }
        let mut order: u128 = 1;
        for &n in moduli {
            if n < 2 {
                return Err(Error::InvalidModulus(n));
            }
            order = order.saturating_mul(n as u128);
            if order > max_order as u128 {
                return Err(Error::TooLarge {
                    size: order,
                    max: max_order as u128,
                });
            }
        }
        let mut strides = vec![1usize; moduli.len()];
        for j in (0..moduli.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * moduli[j + 1] as usize;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &n| lcm(acc, n));
        Ok(Self {
            moduli: moduli.to_vec(),
            strides,
            order: order as usize,
            exponent,
        })
    }

    /// `B^n`, the n-bit strings under XOR.
    pub fn boolean(n: usize) -> Result<Self> {
        Self::new(&vec![2; n])
    }

    /// `Z_q`.
    pub fn cyclic(q: u64) -> Result<Self> {
        Self::new(&[q])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the moduli; every character value is a root
    /// of unity of this order.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_boolean(&self) -> bool {
        self.moduli.iter().all(|&n| n == 2)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each residue mod its modulus.
    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        self.check_len(residues.len())?;
        Ok(GroupElement {
            residues: residues.iter().zip(&self.moduli).map(|(&r, &n)| r % n).collect(),
        })
    }

    /// Builds an element, rejecting residues that are not already reduced.
    pub fn element_strict(&self, residues: &[u64]) -> Result<GroupElement> {
        self.check_len(residues.len())?;
        for (&r, &n) in residues.iter().zip(&self.moduli) {
            if r >= n {
                return Err(Error::ResidueOutOfRange { value: r, modulus: n });
            }
        }
        Ok(GroupElement {
            residues: residues.to_vec(),
        })
    }

    /// Element at position `index` of the enumeration order.
    pub fn element_at(&self, index: usize) -> GroupElement {
        debug_assert!(index < self.order);
        let residues = self
            .strides
            .iter()
            .zip(&self.moduli)
            .map(|(&s, &n)| ((index / s) as u64) % n)
            .collect();
        GroupElement { residues }
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.validate(g)?;
        Ok(self.index_unchecked(g))
    }

    fn index_unchecked(&self, g: &GroupElement) -> usize {
        g.residues
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| r as usize * s)
            .sum()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        self.check_len(g.residues.len())?;
        for (&r, &n) in g.residues.iter().zip(&self.moduli) {
            if r >= n {
                return Err(Error::ResidueOutOfRange { value: r, modulus: n });
            }
        }
        Ok(())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::ShapeMismatch {
                expected: self.rank(),
                found: len,
            });
        }
        Ok(())
    }

    /// Componentwise addition mod `n_j`.
    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.op_unchecked(a, b))
    }

    pub(crate) fn op_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    /// Index of `h o g_index` without materialising elements.
    pub(crate) fn op_index(&self, h: &GroupElement, index: usize) -> usize {
        let mut out = 0;
        for ((&r, &s), &n) in h.residues.iter().zip(&self.strides).zip(&self.moduli) {
            let g = (index / s) as u64 % n;
            out += ((g + r) % n) as usize * s;
        }
        out
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.validate(a)?;
        Ok(GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        })
    }

    /// Phase of `chi_k(g)` as an exact fraction `num / exponent` of a turn.
    pub fn character_phase(&self, k: &CharacterIndex, g: &GroupElement) -> Result<u64> {
        self.validate(k)?;
        self.validate(g)?;
        Ok(self.character_phase_unchecked(k, g))
    }

    fn character_phase_unchecked(&self, k: &CharacterIndex, g: &GroupElement) -> u64 {
        let e = self.exponent;
        let mut num = 0u64;
        for ((&kj, &gj), &n) in k.residues.iter().zip(&g.residues).zip(&self.moduli) {
            let term = (kj * gj) % n;
            num = (num + term * (e / n)) % e;
        }
        num
    }

    /// `chi_k(g) = exp(2 pi i sum_j k_j g_j / n_j)`.
    pub fn character_value(&self, k: &CharacterIndex, g: &GroupElement) -> Result<Complex64> {
        let num = self.character_phase(k, g)?;
        Ok(root_of_unity(num, self.exponent))
    }

    /// `(1/|G|) sum_g chi_i(g) conj(chi_j(g))`.
    pub fn character_inner_product(&self, i: &CharacterIndex, j: &CharacterIndex) -> Result<Complex64> {
        self.validate(i)?;
        self.validate(j)?;
        let e = self.exponent;
        let sum: Complex64 = self
            .elements()
            .map(|g| {
                let a = self.character_phase_unchecked(i, &g);
                let b = self.character_phase_unchecked(j, &g);
                root_of_unity((a + e - b) % e, e)
            })
            .sum();
        Ok(sum / self.order as f64)
    }

    /// `(1/|G|) sum_i chi_i(g)`: one at the identity, zero elsewhere.
    pub fn character_sum_at(&self, g: &GroupElement) -> Result<Complex64> {
        self.validate(g)?;
        let sum: Complex64 = self
            .elements()
            .map(|k| root_of_unity(self.character_phase_unchecked(&k, g), self.exponent))
            .sum();
        Ok(sum / self.order as f64)
    }

    /// `K = {k : f(k o g) = f(g) for all g}` by exhaustive search.
    pub fn stabilizer_bruteforce(&self, f: &TruthTable) -> Result<Subgroup> {
        if f.group() != self {
            return Err(Error::InvalidArgument(
                "truth table is defined on a different group".into(),
            ));
        }
        let values = f.values();
        let f_e = values[0];
        let mut members = Vec::new();
        for k_index in 0..self.order {
            // f(k o e) = f(e) is necessary, so most candidates die here
            if values[k_index] != f_e {
                continue;
            }
            let k = self.element_at(k_index);
            if (0..self.order).all(|g| values[self.op_index(&k, g)] == values[g]) {
                members.push(k);
            }
        }
        Subgroup::from_elements(self, members)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    /// Reads a `B^n` element as an unsigned label, first residue most significant.
    pub fn to_bits_label(&self) -> u64 {
        self.residues.iter().fold(0, |acc, &b| (acc << 1) | (b & 1))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A subgroup given by generators, with its elements materialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    /// Closure of `generators` under the group operation.
    pub fn generated_by(group: &GroupSpec, generators: &[GroupElement]) -> Result<Self> {
        for g in generators {
            group.validate(g)?;
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let identity = group.identity();
        seen.insert(0);
        let mut frontier = vec![identity];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = group.op_unchecked(&x, g);
                if seen.insert(group.index_unchecked(&y)) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self {
            generators: generators.to_vec(),
            elements: seen.into_iter().map(|i| group.element_at(i)).collect(),
        })
    }

    /// Wraps an explicit element list, checking that it is a subgroup.
    pub fn from_elements(group: &GroupSpec, mut elements: Vec<GroupElement>) -> Result<Self> {
        for g in &elements {
            group.validate(g)?;
        }
        elements.sort_by_key(|g| group.index_unchecked(g));
        elements.dedup();
        let index: BTreeSet<usize> = elements.iter().map(|g| group.index_unchecked(g)).collect();
        if !index.contains(&0) {
            return Err(Error::InvalidArgument("subset lacks the identity".into()));
        }
        for a in &elements {
            for b in &elements {
                if !index.contains(&group.index_unchecked(&group.op_unchecked(a, b))) {
                    return Err(Error::InvalidArgument("subset is not closed".into()));
                }
            }
        }
        // greedy generating set: keep an element if it is outside the span so far
        let mut generators = Vec::new();
        let mut span = Self::generated_by(group, &[])?;
        for g in &elements {
            if !span.contains(g) {
                generators.push(g.clone());
                span = Self::generated_by(group, &generators)?;
            }
        }
        Ok(Self { generators, elements })
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        // index order coincides with lexicographic order on residues
        self.elements.binary_search(g).is_ok()
    }

    /// Checks closure under the group operation and inverses.
    pub fn is_closed(&self, group: &GroupSpec) -> bool {
        self.elements.iter().all(|a| {
            group.inverse(a).map(|inv| self.contains(&inv)).unwrap_or(false)
                && self.elements.iter().all(|b| self.contains(&group.op_unchecked(a, b)))
        })
    }
}

/// `exp(2 pi i num / den)` with exact values at multiples of a quarter turn.
pub fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if num == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if (4 * num as u128).is_multiple_of(den as u128) {
        return match (4 * num as u128 / den as u128) as u64 {
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // fold into (-1/2, 1/2] of a turn to keep the argument small
    let signed = if 2 * num > den {
        -((den - num) as f64)
    } else {
        num as f64
    };
    Complex64::from_polar(1.0, std::f64::consts::TAU * signed / den as f64)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn make_group_orders() {
        assert_eq!(GroupSpec::new(&[2, 2, 2]).unwrap().order(), 8);
        assert_eq!(GroupSpec::new(&[16]).unwrap().order(), 16);
        assert_eq!(GroupSpec::new(&[2, 1]), Err(Error::InvalidModulus(1)));
        assert!(matches!(
            GroupSpec::with_max_order(&[1024, 1024, 2], 1 << 20),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn group_op_examples() {
        let b3 = GroupSpec::boolean(3).unwrap();
        let a = b3.element(&[1, 1, 0]).unwrap();
        let b = b3.element(&[0, 1, 1]).unwrap();
        assert_eq!(b3.op(&a, &b).unwrap().residues(), &[1, 0, 1]);

        let z16 = GroupSpec::cyclic(16).unwrap();
        let nine = z16.element(&[9]).unwrap();
        let twelve = z16.element(&[12]).unwrap();
        assert_eq!(z16.op(&nine, &twelve).unwrap().residues(), &[5]);
        assert_eq!(z16.op(&nine, &z16.identity()).unwrap(), nine);

        assert!(matches!(b3.op(&a, &z16.identity()), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn enumeration_is_mixed_radix_msb_first() {
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let labels: Vec<Vec<u64>> = g.elements().map(|e| e.residues().to_vec()).collect();
        assert_eq!(
            labels,
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.element_at(i)).unwrap(), i);
        }
    }

    #[test]
    fn character_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let one = z4.element(&[1]).unwrap();
        assert_eq!(z4.character_value(&one, &one).unwrap(), Complex64::new(0.0, 1.0));

        let b3 = GroupSpec::boolean(3).unwrap();
        for s in b3.elements() {
            for x in b3.elements() {
                let dot: u64 = s.residues().iter().zip(x.residues()).map(|(a, b)| a * b).sum();
                let expected = if dot.is_multiple_of(2) { 1.0 } else { -1.0 };
                assert_eq!(b3.character_value(&s, &x).unwrap(), Complex64::new(expected, 0.0));
            }
        }

        let g = GroupSpec::new(&[3, 5]).unwrap();
        for x in g.elements() {
            assert_eq!(g.character_value(&g.identity(), &x).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn inner_product_z2_by_hand() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let one = z2.element(&[1]).unwrap();
        let v = z2.character_inner_product(&one, &z2.identity()).unwrap();
        assert!(v.norm() <= TOL);
        let v = z2.character_inner_product(&one, &one).unwrap();
        assert!(close(v, Complex64::new(1.0, 0.0), TOL));
    }

    #[test]
    fn character_sum_z3() {
        let z3 = GroupSpec::cyclic(3).unwrap();
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let by_hand = (Complex64::new(1.0, 0.0) + omega + omega * omega) / 3.0;
        let v = z3.character_sum_at(&z3.element(&[1]).unwrap()).unwrap();
        assert!(close(v, by_hand, TOL));
        assert!(v.norm() <= TOL);
        assert!(close(
            z3.character_sum_at(&z3.identity()).unwrap(),
            Complex64::new(1.0, 0.0),
            TOL
        ));
    }

    #[test]
    fn stabilizer_examples() {
        let b3 = GroupSpec::boolean(3).unwrap();
        let constant = TruthTable::from_fn(&b3, 1, |_| 0).unwrap();
        assert_eq!(b3.stabilizer_bruteforce(&constant).unwrap().order(), 8);

        let xi = 0b110u64;
        let simon = TruthTable::from_fn(&b3, 8, |g| {
            let x = g.to_bits_label();
            x.min(x ^ xi)
        })
        .unwrap();
        let k = b3.stabilizer_bruteforce(&simon).unwrap();
        let labels: Vec<u64> = k.elements().iter().map(|e| e.to_bits_label()).collect();
        assert_eq!(labels, vec![0b000, 0b110]);
        assert!(k.is_closed(&b3));

        let injective = TruthTable::from_fn(&b3, 8, |g| g.to_bits_label()).unwrap();
        let k = b3.stabilizer_bruteforce(&injective).unwrap();
        assert_eq!(k.elements(), &[b3.identity()]);
    }

    #[test]
    fn subgroup_generation() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let k = Subgroup::generated_by(&z12, &[z12.element(&[8]).unwrap()]).unwrap();
        let labels: Vec<u64> = k.elements().iter().map(|e| e.residues()[0]).collect();
        assert_eq!(labels, vec![0, 4, 8]);
        assert!(k.is_closed(&z12));
        let bad = vec![z12.identity(), z12.element(&[5]).unwrap()];
        assert!(Subgroup::from_elements(&z12, bad).is_err());
    }

    #[test]
    fn roots_of_unity_exact_quarters() {
        assert_eq!(root_of_unity(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(6, 8), Complex64::new(0.0, -1.0));
        assert_eq!(root_of_unity(5, 10), Complex64::new(-1.0, 0.0));
        let w = root_of_unity(1, 3);
        assert!((w.powu(3) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }
}
