//! The skew group algebra `R = Sym(V) # H` with `v h = h v^h`, truncated in degree.

use std::sync::Arc;

use super::monomial::{binomial, monomial_index, monomials, substitute};
use crate::error::{Error, Result};
use crate::exactnum::field::FFElem;
use crate::exactnum::matrix::FFMatrix;
use crate::reps::model::ModelGN;

/// `R_n` has basis `h x^mu` (group element, then monomial), ordered by group
/// element first and monomial second.
#[derive(Debug, Clone)]
pub struct SkewAlgebra {
    model: Arc<ModelGN>,
    top: usize,
    monos: Vec<Vec<Vec<u32>>>,
    /// Right multiplication by each group generator on `R_n`.
    group_mult: Vec<Vec<FFMatrix>>,
    /// Right multiplication by each basis vector of `V`, `R_n -> R_{n+1}`.
    var_mult: Vec<Vec<FFMatrix>>,
}

pub fn build_algebra(model: Arc<ModelGN>, cutoff: usize) -> Result<SkewAlgebra> {
    SkewAlgebra::new(model, cutoff)
}

impl SkewAlgebra {
    pub fn new(model: Arc<ModelGN>, top: usize) -> Result<Self> {
        let d = model.d();
        let group = Arc::clone(model.group());
        let field = model.field().clone();
        let order = group.order();
        let monos: Vec<Vec<Vec<u32>>> = (0..=top).map(|n| monomials(d, n as u32)).collect();
        let index: Vec<_> = monos.iter().map(|m| monomial_index(m)).collect();
        let mut group_mult = Vec::new();
        let mut var_mult = Vec::new();
        for n in 0..=top {
            let nm = monos[n].len();
            let dim = order * nm;
            let mut per_gen = Vec::new();
            for &s in group.generator_indices() {
                let ms = model.v().matrix(s);
                let mut mat = FFMatrix::zeros(dim, dim);
                for (a, mu) in monos[n].iter().enumerate() {
                    let img = substitute(&field, ms, mu);
                    for h in 0..order {
                        let hs = group.mul(h, s);
                        for (nu, &c) in &img {
                            mat.set(h * nm + a, hs * nm + index[n][nu], FFElem(c));
                        }
                    }
                }
                per_gen.push(mat);
            }
            group_mult.push(per_gen);
            if n < top {
                let nm1 = monos[n + 1].len();
                let mut per_var = Vec::new();
                for i in 0..d {
                    let mut mat = FFMatrix::zeros(dim, order * nm1);
                    for (a, mu) in monos[n].iter().enumerate() {
                        let mut nu = mu.clone();
                        nu[i] += 1;
                        let b = index[n + 1][&nu];
                        for h in 0..order {
                            mat.set(h * nm + a, h * nm1 + b, FFElem::ONE);
                        }
                    }
                    per_var.push(mat);
                }
                var_mult.push(per_var);
            }
        }
        let alg = SkewAlgebra { model, top, monos, group_mult, var_mult };
        alg.check_twist_law()?;
        Ok(alg)
    }

    /// `r v_i s = r s (v_i)^s` for every generator `s`.
    fn check_twist_law(&self) -> Result<()> {
        let field = self.model.field();
        let group = self.model.group();
        for n in 0..self.top {
            for (k, &s) in group.generator_indices().iter().enumerate() {
                let ms = self.model.v().matrix(s);
                for i in 0..self.model.d() {
                    let lhs = self.var_mult[n][i].mul(field, &self.group_mult[n + 1][k]);
                    let mut comb = FFMatrix::zeros(lhs.rows(), lhs.cols());
                    for j in 0..self.model.d() {
                        let c = ms.get(i, j);
                        if !c.is_zero() {
                            comb = comb.add(field, &self.var_mult[n][j].scale(field, c));
                        }
                    }
                    let rhs = self.group_mult[n][k].mul(field, &comb);
                    if lhs != rhs {
                        return Err(Error::Internal(format!("twist law fails in degree {n}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> &Arc<ModelGN> {
        &self.model
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `|H| * C(n + d - 1, d - 1)`, zero above the cutoff.
    pub fn dim(&self, n: usize) -> usize {
        if n > self.top {
            return 0;
        }
        self.model.group().order() * self.monos[n].len()
    }

    /// The closed form for `dim R_n`.
    pub fn expected_dim(&self, n: usize) -> usize {
        let d = self.model.d() as u64;
        let monos = if d == 0 { u64::from(n == 0) } else { binomial(n as u64 + d - 1, d - 1) };
        self.model.group().order() * monos as usize
    }

    pub fn group_mult(&self, n: usize, generator: usize) -> &FFMatrix {
        &self.group_mult[n][generator]
    }

    pub fn var_mult(&self, n: usize, var: usize) -> &FFMatrix {
        &self.var_mult[n][var]
    }
}
