//! Explicit functions on a group, used as oracle payloads.
//!
//! Text form:
//!
//! ```text
//! group: 2,2,2
//! 0,0,0 -> 0
//! 0,0,1 -> 1
//! ...
//! ```
//!
//! Every element of the group must appear exactly once. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    group: GroupSpec,
    values: Vec<u64>,
}

impl TruthTable {
    /// `values[i]` is `f` at the `i`-th element of the enumeration order.
    pub fn new(group: &GroupSpec, values: Vec<u64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::PartialTable {
                got: values.len(),
                expected: group.order(),
            });
        }
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    /// Tabulates `f`, checking every value is below `codomain`.
    pub fn from_fn(group: &GroupSpec, codomain: u64, f: impl Fn(&GroupElement) -> u64) -> Result<Self> {
        let values: Vec<u64> = group.elements().map(|g| f(&g)).collect();
        let table = Self::new(group, values)?;
        table.check_codomain(codomain)?;
        Ok(table)
    }

    /// Tabulates a function of basis labels `0..|G|`.
    pub fn from_label_fn(group: &GroupSpec, codomain: u64, f: impl Fn(u64) -> u64) -> Result<Self> {
        let values: Vec<u64> = (0..group.order() as u64).map(f).collect();
        let table = Self::new(group, values)?;
        table.check_codomain(codomain)?;
        Ok(table)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, g: &GroupElement) -> Result<u64> {
        Ok(self.values[self.group.index_of(g)?])
    }

    pub fn value_at(&self, index: usize) -> u64 {
        self.values[index]
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn check_codomain(&self, codomain: u64) -> Result<()> {
        match self.values.iter().find(|&&v| v >= codomain) {
            Some(&value) => Err(Error::ValueOutOfRange { value, codomain }),
            None => Ok(()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("group: {}\n", self.group);
        for (g, v) in self.group.elements().zip(&self.values) {
            let _ = writeln!(out, "{} -> {}", g, v);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "empty truth table".into(),
        })?;
        let moduli_text = header.strip_prefix("group:").ok_or_else(|| Error::Parse {
            line: header_line,
            message: "expected `group: n_1,...,n_m` header".into(),
        })?;
        let moduli = parse_list(moduli_text, header_line)?;
        let group = GroupSpec::new(&moduli).map_err(|e| Error::Parse {
            line: header_line,
            message: e.to_string(),
        })?;

        let mut values: Vec<Option<u64>> = vec![None; group.order()];
        for (line, body) in lines {
            let (lhs, rhs) = body.split_once("->").ok_or_else(|| Error::Parse {
                line,
                message: "expected `g_1,...,g_m -> v`".into(),
            })?;
            let residues = parse_list(lhs, line)?;
            let g = group.element_strict(&residues).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            let v: u64 = rhs.trim().parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad value `{}`", rhs.trim()),
            })?;
            let slot = &mut values[group.index_of(&g)?];
            if slot.is_some() {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate entry for {}", g),
                });
            }
            *slot = Some(v);
        }
        let got = values.iter().filter(|v| v.is_some()).count();
        if got != values.len() {
            return Err(Error::PartialTable {
                got,
                expected: values.len(),
            });
        }
        Self::new(&group, values.into_iter().flatten().collect())
    }
}

fn parse_list(text: &str, line: usize) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<u64>().map_err(|_| Error::Parse {
                line,
                message: format!("bad integer `{}`", t.trim()),
            })
        })
        .collect()
}
