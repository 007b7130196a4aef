//! The finite-level model `(H, V)`: a finite group acting on a vector space
//! over `k`, with the adjoint polynomial and centralizer dimensions.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::classfn::brauer_value;
use super::context::BrauerContext;
use super::rep::Rep;
use crate::error::{Error, Result};
use crate::exactnum::cyclo::CycloNum;
use crate::exactnum::field::FiniteField;
use crate::exactnum::laurent::LaurentPoly;
use crate::groups::finite::FiniteGroup;
use crate::groups::orbits::{galois_orbits, OrbitPartition};

#[derive(Debug)]
pub struct ModelGN {
    v: Rep,
    p: u64,
    q: u64,
    ctx: BrauerContext,
    orbits: OrbitPartition,
    exterior: OnceLock<Vec<Rep>>,
}

impl Clone for ModelGN {
    fn clone(&self) -> Self {
        ModelGN {
            v: self.v.clone(),
            p: self.p,
            q: self.q,
            ctx: self.ctx.clone(),
            orbits: self.orbits.clone(),
            exterior: OnceLock::new(),
        }
    }
}

/// Orbits whose representatives have centralizer dimension at most `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SFiltration {
    pub i: i64,
    /// Indices of the qualifying orbit blocks.
    pub blocks: Vec<usize>,
    pub representatives: Vec<usize>,
    pub count: usize,
    /// Centralizer dimension of every orbit, in block order.
    pub centralizer_dims: Vec<usize>,
}

impl ModelGN {
    pub fn new(v: Rep) -> Result<Self> {
        let field = v.field().clone();
        let p = field.characteristic() as u64;
        let q = field.order() as u64;
        let group = v.group();
        for &g in group.generator_indices() {
            if v.matrix(g).det(&field).is_zero() {
                return Err(Error::InvalidInput("action matrices must be invertible".into()));
            }
        }
        let m = group.p_prime_exponent(p);
        let ctx = BrauerContext::new(&field, m)?;
        let orbits = galois_orbits(group, p, q)?;
        Ok(ModelGN { v, p, q, ctx, orbits, exterior: OnceLock::new() })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.v.group()
    }

    pub fn field(&self) -> &FiniteField {
        self.v.field()
    }

    pub fn v(&self) -> &Rep {
        &self.v
    }

    pub fn d(&self) -> usize {
        self.v.dim()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `p'`-part of the exponent of `H`.
    pub fn m(&self) -> u64 {
        self.ctx.m()
    }

    pub fn context(&self) -> &BrauerContext {
        &self.ctx
    }

    pub fn orbits(&self) -> &OrbitPartition {
        &self.orbits
    }

    /// `Lambda^j V` for `0 <= j <= d`.
    pub fn exterior_powers(&self) -> &[Rep] {
        self.exterior.get_or_init(|| (0..=self.d()).map(|j| self.v.exterior_power(j).expect("j <= dim")).collect())
    }

    fn check_regular(&self, g: usize) -> Result<()> {
        if g >= self.group().order() || !self.group().is_p_regular(g, self.p) {
            return Err(Error::InvalidInput(format!("element {g} is not p-regular")));
        }
        Ok(())
    }

    /// `Psi(g) = sum_j (-t)^j phi_{Lambda^j V}(g)`.
    pub fn psi(&self, g: usize) -> Result<LaurentPoly> {
        self.check_regular(g)?;
        let mut out = LaurentPoly::zero(self.m());
        for (j, lam) in self.exterior_powers().iter().enumerate() {
            let val = brauer_value(&self.ctx, lam, g)?;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.add_term(j as i64, &val.scale_int(sign));
        }
        Ok(out)
    }

    /// `prod_i (1 - lambda_i t)` over the lifted eigenvalues of `g` on `V`.
    pub fn psi_from_eigenvalues(&self, g: usize) -> Result<LaurentPoly> {
        self.check_regular(g)?;
        let mut out = LaurentPoly::one(self.m());
        if self.d() == 0 {
            return Ok(out);
        }
        let mults = self.ctx.eigen_exponents(self.v.matrix(g), self.group().elem_order(g))?;
        for (&i, &mult) in &mults {
            let mut factor = LaurentPoly::one(self.m());
            factor.add_term(1, &CycloNum::zeta_pow(self.m(), i as i64).neg());
            out = out.mul(&factor.pow(mult as u32));
        }
        Ok(out)
    }

    /// `dim ker(rho_V(g) - 1)`, checked against the multiplicity of `t = 1` as
    /// a root of `Psi(g)`.
    pub fn centralizer_dim(&self, g: usize) -> Result<usize> {
        self.check_regular(g)?;
        let field = self.field();
        let fixed = self.d() - self.v.matrix(g).minus_scalar(field, crate::exactnum::field::FFElem::ONE).rank(field);
        let root_mult = self.psi(g)?.vanishing_order_at_one().unwrap_or(0) as usize;
        if fixed != root_mult {
            return Err(Error::Internal(format!(
                "fixed space of dimension {fixed} but Psi vanishes to order {root_mult} at t = 1"
            )));
        }
        Ok(fixed)
    }

    /// Orbits of `H x Gal` on p-regular elements with centralizer dimension `<= i`.
    pub fn s_filtration(&self, i: i64) -> Result<SFiltration> {
        let reps = self.orbits.representatives();
        let dims = reps.iter().map(|&g| self.centralizer_dim(g)).collect::<Result<Vec<_>>>()?;
        let blocks: Vec<usize> = (0..reps.len()).filter(|&b| dims[b] as i64 <= i).collect();
        Ok(SFiltration {
            i,
            representatives: blocks.iter().map(|&b| reps[b]).collect(),
            count: blocks.len(),
            blocks,
            centralizer_dims: dims,
        })
    }

    /// p-regular elements outside `S_{d-1}`, i.e. those acting trivially on `V`.
    pub fn finite_radical_regular_part(&self) -> Result<Vec<usize>> {
        let s = self.s_filtration(self.d() as i64 - 1)?;
        let mut out: Vec<usize> = (0..self.orbits.len())
            .filter(|b| !s.blocks.contains(b))
            .flat_map(|b| self.orbits.blocks()[b].clone())
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}
