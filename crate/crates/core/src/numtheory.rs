//! Classical arithmetic: gcd, modular powers, orders and continued fractions.
//!
//! Everything is `u64` with products widened to `u128`, which is plenty for
//! the moduli a statevector can hold.

use crate::error::{Error, Result};

/// A reduced fraction `numerator / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Convergent {
    pub numerator: u64,
    pub denominator: u64,
}

impl Convergent {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    Ok(crate::group::gcd(a, b))
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / crate::group::gcd(a, b)).checked_mul(b).ok_or(Error::Overflow)
}

#[inline]
pub fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `y^e mod n` by repeated squaring.
pub fn modpow(y: u64, mut e: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let mut base = y % n;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, n);
        }
        base = mulmod(base, base, n);
        e >>= 1;
    }
    Ok(acc)
}

/// `y^(2^j) mod n` via `j` successive squarings.
pub fn pow2_power(y: u64, j: u32, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let mut v = y % n;
    for _ in 0..j {
        v = mulmod(v, v, n);
    }
    Ok(v)
}

/// Least `r >= 1` with `y^r = 1 mod n`, by stepping through powers.
pub fn order_bruteforce(y: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let y = y % n;
    if crate::group::gcd(y, n) != 1 {
        return Err(Error::NotCoprime { y, modulus: n });
    }
    let mut v = y;
    let mut r = 1;
    while v != 1 {
        v = mulmod(v, y, n);
        r += 1;
    }
    Ok(r)
}

/// Continued-fraction convergents of `c / q`, in order.
pub fn convergents(c: u64, q: u64) -> Vec<Convergent> {
    let mut out = Vec::new();
    if q == 0 {
        return out;
    }
    let (mut a, mut b) = (c, q);
    // h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1
    let (mut h_prev, mut h) = (0u128, 1u128);
    let (mut k_prev, mut k) = (1u128, 0u128);
    while b != 0 {
        let term = (a / b) as u128;
        let h_next = term * h + h_prev;
        let k_next = term * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        out.push(Convergent {
            numerator: h as u64,
            denominator: k as u64,
        });
        let rem = a % b;
        a = b;
        b = rem;
    }
    out
}

/// The convergent of `c / q` with the largest denominator not above `bound`.
pub fn best_rational(c: u64, q: u64, bound: u64) -> Convergent {
    let bound = bound.max(1);
    convergents(c, q)
        .into_iter()
        .take_while(|cv| cv.denominator <= bound)
        .last()
        .unwrap_or(Convergent {
            numerator: 0,
            denominator: 1,
        })
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Shrinks a verified multiple `m` of the order of `y` down to the order.
///
/// Requires `y^m = 1 mod n`.
pub fn reduce_to_order(y: u64, m: u64, n: u64) -> Result<u64> {
    if modpow(y, m, n)? != 1 {
        return Err(Error::InvalidArgument(format!("{y}^{m} is not 1 mod {n}")));
    }
    let mut r = m;
    for p in prime_factors(m) {
        while r.is_multiple_of(p) && modpow(y, r / p, n)? == 1 {
            r /= p;
        }
    }
    Ok(r)
}
