//! The splitting field `k' = k(omega)` and lifting of eigenvalues.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::cyclo::CycloNum;
use crate::exactnum::field::{make_field, FFElem, FiniteField, MAX_FIELD_ORDER};
use crate::exactnum::matrix::FFMatrix;
use crate::exactnum::roots::{eigen_multiplicities_among, lifted_trace, RootTable};

/// A coefficient field `k`, a `p'`-integer `m`, the least extension `k'` of
/// `k` containing the `m`-th roots of unity and a fixed primitive root in it.
#[derive(Debug, Clone)]
pub struct BrauerContext {
    base: FiniteField,
    ext: FiniteField,
    embed: Vec<FFElem>,
    roots: RootTable,
    m: u64,
}

impl BrauerContext {
    pub fn new(base: &FiniteField, m: u64) -> Result<Self> {
        let p = base.characteristic() as u64;
        let q = base.order() as u64;
        if m == 0 || m.is_multiple_of(p) {
            return Err(Error::InvalidInput(format!("root-of-unity order {m} must be positive and prime to {p}")));
        }
        let mut e = 1u32;
        let mut qe = q % m;
        while qe != 1 % m {
            qe = qe * q % m;
            e += 1;
        }
        let s = base.degree() * e;
        if (p as f64).powi(s as i32) > MAX_FIELD_ORDER as f64 {
            return Err(Error::TooLarge(MAX_FIELD_ORDER as usize));
        }
        let ext = make_field(p, s)?;
        let embed = base.embedding_into(&ext)?;
        let omega = ext.primitive_root_of_unity(m)?;
        let roots = RootTable::new(&ext, omega, m)?;
        Ok(BrauerContext { base: base.clone(), ext, embed, roots, m })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.ext
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn omega(&self) -> FFElem {
        self.roots.omega()
    }

    pub fn roots(&self) -> &RootTable {
        &self.roots
    }

    pub fn embed_elem(&self, a: FFElem) -> FFElem {
        self.embed[a.0 as usize]
    }

    pub fn embed_matrix(&self, mat: &FFMatrix) -> FFMatrix {
        mat.map_entries(|x| self.embed[x as usize].0)
    }

    /// Eigenvalue exponents of a matrix over `k` whose order divides `order`.
    pub fn eigen_exponents(&self, mat: &FFMatrix, order: u64) -> Result<BTreeMap<u32, usize>> {
        if !self.m.is_multiple_of(order) {
            return Err(Error::InvalidInput(format!("element order {order} does not divide {}", self.m)));
        }
        let step = (self.m / order) as u32;
        let big = self.embed_matrix(mat);
        eigen_multiplicities_among(&self.ext, &big, &self.roots, (0..order as u32).map(|k| k * step))
    }

    /// The Brauer value `sum of lifted eigenvalues` of a matrix over `k` whose
    /// multiplicative order divides `order` (prime to p).
    pub fn brauer_value(&self, mat: &FFMatrix, order: u64) -> Result<CycloNum> {
        if mat.rows() == 0 {
            return Ok(CycloNum::zero(self.m));
        }
        Ok(lifted_trace(self.m, &self.eigen_exponents(mat, order)?))
    }
}
