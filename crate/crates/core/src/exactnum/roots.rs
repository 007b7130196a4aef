//! Lifting roots of unity from a finite field to Q(zeta_m), and eigenvalue
//! multiplicities of semisimple matrices.

use std::collections::BTreeMap;

use super::cyclo::CycloNum;
use super::field::{FFElem, FiniteField};
use super::matrix::FFMatrix;
use crate::error::{Error, Result};

/// Discrete logarithm table for the cyclic group generated by `omega`.
#[derive(Debug, Clone)]
pub struct RootTable {
    omega: FFElem,
    m: u64,
    index: Vec<Option<u32>>,
    powers: Vec<FFElem>,
}

impl RootTable {
    /// `omega` must have multiplicative order exactly `m`.
    pub fn new(field: &FiniteField, omega: FFElem, m: u64) -> Result<Self> {
        if field.mult_order(omega) != Some(m) {
            return Err(Error::InvalidInput(format!("{omega:?} does not have order {m} in {field}")));
        }
        let mut index = vec![None; field.order() as usize];
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = FFElem::ONE;
        for i in 0..m as u32 {
            index[cur.0 as usize] = Some(i);
            powers.push(cur);
            cur = field.mul(cur, omega);
        }
        Ok(RootTable { omega, m, index, powers })
    }

    pub fn omega(&self) -> FFElem {
        self.omega
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// `omega^i` with `i` taken modulo `m`.
    pub fn power(&self, i: u64) -> FFElem {
        self.powers[(i % self.m) as usize]
    }

    /// The exponent `i` with `omega^i = xi`.
    pub fn dlog(&self, xi: FFElem) -> Result<u32> {
        self.index.get(xi.0 as usize).copied().flatten().ok_or(Error::NotARoot)
    }

    pub fn lift(&self, xi: FFElem) -> Result<CycloNum> {
        Ok(CycloNum::zeta_pow(self.m, self.dlog(xi)? as i64))
    }
}

/// `zeta_m^i` where `xi = omega^i`.
pub fn lift_root(field: &FiniteField, xi: FFElem, omega: FFElem, m: u64) -> Result<CycloNum> {
    RootTable::new(field, omega, m)?.lift(xi)
}

/// Multiplicity of each eigenvalue `omega^i` of a matrix of order dividing `m`,
/// keyed by `i`; zero multiplicities are omitted.
pub fn eigen_multiplicities(field: &FiniteField, mat: &FFMatrix, table: &RootTable) -> Result<BTreeMap<u32, usize>> {
    eigen_multiplicities_among(field, mat, table, 0..table.order() as u32)
}

/// As [`eigen_multiplicities`], testing only the listed exponents and stopping
/// once the multiplicities account for the whole space.
pub fn eigen_multiplicities_among(
    field: &FiniteField,
    mat: &FFMatrix,
    table: &RootTable,
    exponents: impl IntoIterator<Item = u32>,
) -> Result<BTreeMap<u32, usize>> {
    if !mat.is_square() {
        return Err(Error::DimMismatch("eigenvalues of a non-square matrix".into()));
    }
    let n = mat.rows();
    let mut out = BTreeMap::new();
    let mut total = 0;
    for i in exponents {
        if total == n {
            break;
        }
        let shifted = mat.minus_scalar(field, table.power(i as u64));
        let mult = n - shifted.rank(field);
        if mult > 0 {
            out.insert(i, mult);
            total += mult;
        }
    }
    if total != n {
        return Err(Error::NotSemisimple { found: total, expected: n });
    }
    Ok(out)
}

/// `sum_i mult_i zeta_m^i`.
pub fn lifted_trace(m: u64, mults: &BTreeMap<u32, usize>) -> CycloNum {
    let mut counts = vec![0i64; m as usize];
    for (&i, &c) in mults {
        counts[i as usize] += c as i64;
    }
    CycloNum::from_root_counts(m, &counts)
}
