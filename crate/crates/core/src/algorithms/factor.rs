//! Factoring by order finding: a random base `y`, its order `r`, and
//! `gcd(y^(r/2) +- 1, N)`.

use rand::Rng;
use serde::Serialize;

use super::shor::shor_order;
use crate::error::{Error, Result};
use crate::kitaev::kitaev_order;
use crate::numtheory::{gcd, modpow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorMethod {
    Shor,
    Kitaev,
}

impl std::str::FromStr for FactorMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shor" => Ok(Self::Shor),
            "kitaev" => Ok(Self::Kitaev),
            other => Err(Error::InvalidArgument(format!(
                "unknown method '{other}' (shor|kitaev)"
            ))),
        }
    }
}

/// Outcome of one base `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorAttempt {
    pub y: u64,
    /// Set when `gcd(y, N) > 1` made order finding unnecessary.
    pub shortcut: bool,
    pub order: Option<u64>,
    pub divisor: Option<u64>,
    /// Order-finding samples spent on this base.
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorRun {
    #[serde(rename = "N")]
    pub n: u64,
    pub method: FactorMethod,
    pub attempts: Vec<FactorAttempt>,
    pub divisor: u64,
}

/// Repetitions allowed per order-finding call.
const ORDER_BUDGET: usize = 64;
/// Bases tried before giving up.
const MAX_BASES: usize = 32;

fn find_order<R: Rng + ?Sized>(y: u64, n: u64, method: FactorMethod, rng: &mut R) -> Result<(Option<u64>, usize)> {
    let out = match method {
        FactorMethod::Shor => shor_order(y, n, rng, ORDER_BUDGET).map(|run| (run.recovered_r, run.repetitions)),
        FactorMethod::Kitaev => kitaev_order(y, n, rng).map(|run| (run.recovered_r, run.attempts)),
    };
    match out {
        Err(Error::BudgetExhausted { attempts, .. }) => Ok((None, attempts)),
        other => other,
    }
}

/// Tries the single base `y`.
pub fn factor_with_base<R: Rng + ?Sized>(n: u64, y: u64, method: FactorMethod, rng: &mut R) -> Result<FactorAttempt> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "N = {n} has no nontrivial divisor to find"
        )));
    }
    let y = y % n;
    if y < 2 {
        return Err(Error::InvalidArgument(format!("base {y} must lie in 2..N")));
    }
    let g = gcd(y, n)?;
    if g > 1 {
        return Ok(FactorAttempt {
            y,
            shortcut: true,
            order: None,
            divisor: Some(g),
            samples: 0,
        });
    }
    let (order, samples) = find_order(y, n, method, rng)?;
    let divisor = order.and_then(|r| {
        if r % 2 != 0 {
            return None;
        }
        let h = modpow(y, r / 2, n).ok()?;
        if h == n - 1 {
            return None;
        }
        [h + 1, h + n - 1]
            .into_iter()
            .filter_map(|v| gcd(v % n, n).ok())
            .find(|&d| d > 1 && d < n)
    });
    Ok(FactorAttempt {
        y,
        shortcut: false,
        order,
        divisor,
        samples,
    })
}

/// A nontrivial divisor of `N`, drawing bases uniformly from `2..N`.
///
/// `N` should be odd, composite and not a prime power; otherwise the search
/// ends in [`Error::BudgetExhausted`].
pub fn factor<R: Rng + ?Sized>(n: u64, method: FactorMethod, rng: &mut R) -> Result<FactorRun> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "N = {n} has no nontrivial divisor to find"
        )));
    }
    let mut attempts = Vec::new();
    while attempts.len() < MAX_BASES {
        let y = rng.gen_range(2..n);
        let attempt = factor_with_base(n, y, method, rng)?;
        let divisor = attempt.divisor;
        attempts.push(attempt);
        if let Some(d) = divisor {
            return Ok(FactorRun {
                n,
                method,
                attempts,
                divisor: d,
            });
        }
    }
    Err(Error::BudgetExhausted {
        what: "factor",
        attempts: attempts.len(),
    })
}
