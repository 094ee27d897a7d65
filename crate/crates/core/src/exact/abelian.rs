//! Finite abelian groups presented by relations.

use std::fmt;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{snf, IntMatrix};
use crate::error::{Error, Result};

/// `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinAbelianGroup {
    invariants: Vec<u64>,
}

impl FinAbelianGroup {
    pub fn trivial() -> FinAbelianGroup {
        FinAbelianGroup { invariants: vec![] }
    }

    pub fn new(invariants: Vec<u64>) -> Result<FinAbelianGroup> {
        if invariants.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput("invariant factors must exceed 1".into()));
        }
        if invariants.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput("invariant factors must form a divisibility chain".into()));
        }
        Ok(FinAbelianGroup { invariants })
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Number of cyclic summands of order exactly `p^n` in the primary
    /// decomposition.
    pub fn p_rank_at_level(&self, p: u64, n: u32) -> usize {
        self.invariants
            .iter()
            .filter(|&&d| p_valuation(d, p) == n)
            .count()
    }

    /// `(level, count)` for every level with a nonzero count.
    pub fn p_levels(&self, p: u64) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &d in &self.invariants {
            let v = p_valuation(d, p);
            if v == 0 {
                continue;
            }
            match out.iter_mut().find(|(l, _)| *l == v) {
                Some(e) => e.1 += 1,
                None => out.push((v, 1)),
            }
        }
        out.sort();
        out
    }
}

pub fn p_valuation(mut d: u64, p: u64) -> u32 {
    if d == 0 {
        return 0;
    }
    let mut v = 0;
    while d % p == 0 {
        d /= p;
        v += 1;
    }
    v
}

impl fmt::Display for FinAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.invariants.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Structure of `Z^k / (column span of relations)`.
pub fn abelian_structure(relations: &IntMatrix) -> Result<FinAbelianGroup> {
    let k = relations.nrows();
    if k == 0 {
        return Ok(FinAbelianGroup::trivial());
    }
    let s = snf(relations);
    let diag = s.diagonal();
    if diag.len() < k || diag.iter().any(|d| d.is_zero()) {
        return Err(Error::InvalidInput("relations leave an infinite quotient".into()));
    }
    let mut inv = Vec::new();
    for d in diag {
        if d.abs() > BigInt::one() {
            inv.push(d.abs().to_u64().ok_or_else(|| Error::Unsupported("group too large".into()))?);
        }
    }
    FinAbelianGroup::new(inv)
}

/// Smith data for mapping generator exponent vectors to invariant-factor
/// coordinates: `coords = U * v mod d`.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub group: FinAbelianGroup,
    /// Rows of `U` belonging to the nontrivial factors, in invariant order.
    pub projection: Vec<Vec<BigInt>>,
    /// Columns of `U^{-1}` for the nontrivial factors: the new generators
    /// written in the original ones.
    pub generators: Vec<Vec<BigInt>>,
}

impl AbelianPresentation {
    pub fn new(relations: &IntMatrix) -> Result<AbelianPresentation> {
        let group = abelian_structure(relations)?;
        let k = relations.nrows();
        if k == 0 {
            return Ok(AbelianPresentation { group, projection: vec![], generators: vec![] });
        }
        let s = snf(relations);
        let uinv = s
            .u
            .to_rational()
            .inverse()
            .ok_or_else(|| Error::Numerical("Smith transform not invertible".into()))?;
        let diag = s.diagonal();
        let mut projection = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d.abs() > BigInt::one() {
                projection.push(s.u.row(i).to_vec());
                generators.push((0..k).map(|r| uinv.get(r, i).to_integer()).collect());
            }
        }
        Ok(AbelianPresentation { group, projection, generators })
    }

    /// Canonical coordinates of an element given in the original generators.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<u64> {
        self.projection
            .iter()
            .zip(self.group.invariants())
            .map(|(row, &d)| {
                let s: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                s.mod_floor(&BigInt::from(d)).to_u64().unwrap()
            })
            .collect()
    }
}
