//! Matrix representations of finite groups acting on row vectors.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::field::{FFElem, FiniteField};
use crate::exactnum::matrix::FFMatrix;
use crate::groups::finite::FiniteGroup;
use crate::groups::perm;

/// A right representation `g -> rho(g)` with `rho(gh) = rho(g) rho(h)`.
///
/// Matrices of all group elements are cached along the closure tree, and
/// construction checks the homomorphism property on every product `e * s`
/// with `s` a generator.
#[derive(Debug, Clone)]
pub struct Rep {
    group: Arc<FiniteGroup>,
    field: FiniteField,
    dim: usize,
    matrices: Vec<FFMatrix>,
}

/// Every `subsets(n, j)` entry is a sorted `j`-subset; order is lexicographic.
pub fn subsets(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < j - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if j <= n {
        rec(0, n, j, &mut Vec::new(), &mut out);
    }
    out
}

impl Rep {
    /// Builds and validates a representation from one matrix per generator.
    pub fn new(group: Arc<FiniteGroup>, field: FiniteField, dim: usize, gens: Vec<FFMatrix>) -> Result<Rep> {
        let rep = Self::new_unchecked(group, field, dim, gens)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Builds the element cache without checking relations.
    pub fn new_unchecked(group: Arc<FiniteGroup>, field: FiniteField, dim: usize, gens: Vec<FFMatrix>) -> Result<Rep> {
        if gens.len() != group.generators().len() {
            return Err(Error::DimMismatch(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim) {
            return Err(Error::DimMismatch(format!("generator matrices must be {dim} x {dim}")));
        }
        let mut matrices = Vec::with_capacity(group.order());
        matrices.push(FFMatrix::identity(dim));
        for e in 1..group.order() {
            let (par, via) = group.tree_parent(e).expect("non-identity");
            let m = matrices[par].mul(&field, &gens[via]);
            matrices.push(m);
        }
        Ok(Rep { group, field, dim, matrices })
    }

    fn validate(&self) -> Result<()> {
        for (k, &s) in self.group.generator_indices().iter().enumerate() {
            let gen = self.generator_matrix(k);
            for e in 0..self.group.order() {
                if self.matrices[e].mul(&self.field, gen) != self.matrices[self.group.mul(e, s)] {
                    return Err(Error::InvalidInput(format!(
                        "matrices do not define a representation: relation fails at element {} times generator {k}",
                        perm::cycle_string(self.group.element(e))
                    )));
                }
            }
        }
        Ok(())
    }

    fn generator_matrix(&self, k: usize) -> &FFMatrix {
        &self.matrices[self.group.generator_indices()[k]]
    }

    pub fn trivial(group: Arc<FiniteGroup>, field: FiniteField, dim: usize) -> Rep {
        let gens = vec![FFMatrix::identity(dim); group.generators().len()];
        Self::new_unchecked(group, field, dim, gens).expect("identity matrices")
    }

    /// The permutation representation on the given points.
    pub fn permutation(group: Arc<FiniteGroup>, field: FiniteField) -> Rep {
        let n = group.n_points();
        let gens = group
            .generators()
            .iter()
            .map(|g| {
                let mut m = FFMatrix::zeros(n, n);
                for (i, &j) in g.iter().enumerate() {
                    m.set(i, j as usize, FFElem::ONE);
                }
                m
            })
            .collect();
        Self::new_unchecked(group, field, n, gens).expect("permutation matrices")
    }

    /// The right regular representation on `kG` with basis the group elements.
    pub fn regular(group: Arc<FiniteGroup>, field: FiniteField) -> Rep {
        let n = group.order();
        let gens = group
            .generator_indices()
            .iter()
            .map(|&s| {
                let mut m = FFMatrix::zeros(n, n);
                for e in 0..n {
                    m.set(e, group.mul(e, s), FFElem::ONE);
                }
                m
            })
            .collect();
        Self::new_unchecked(group, field, n, gens).expect("regular representation")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, e: usize) -> &FFMatrix {
        &self.matrices[e]
    }

    pub fn generator_matrices(&self) -> Vec<FFMatrix> {
        (0..self.group.generators().len()).map(|k| self.generator_matrix(k).clone()).collect()
    }

    fn same_context(&self, other: &Rep) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::DimMismatch("representations of different groups".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} and {}", self.field, other.field)));
        }
        Ok(())
    }

    fn map_element_matrices(&self, dim: usize, f: impl Fn(&FFMatrix) -> FFMatrix) -> Rep {
        Rep {
            group: Arc::clone(&self.group),
            field: self.field.clone(),
            dim,
            matrices: self.matrices.iter().map(f).collect(),
        }
    }

    pub fn tensor(&self, other: &Rep) -> Result<Rep> {
        self.same_context(other)?;
        Ok(Rep {
            group: Arc::clone(&self.group),
            field: self.field.clone(),
            dim: self.dim * other.dim,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.kron(&self.field, b)).collect(),
        })
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        self.same_context(other)?;
        Ok(Rep {
            group: Arc::clone(&self.group),
            field: self.field.clone(),
            dim: self.dim + other.dim,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| FFMatrix::block_diag(a, b)).collect(),
        })
    }

    /// `Lambda^j` in the basis of lexicographic `j`-subsets; entries are minors.
    pub fn exterior_power(&self, j: usize) -> Result<Rep> {
        if j > self.dim {
            return Err(Error::DimMismatch(format!("exterior power {j} of a {}-dimensional module", self.dim)));
        }
        let subs = subsets(self.dim, j);
        let field = &self.field;
        Ok(self.map_element_matrices(subs.len(), |m| exterior_matrix(field, m, &subs)))
    }

    /// Extension of scalars along an embedding table `k -> K`.
    pub fn extend_scalars(&self, big: &FiniteField, embed: &[FFElem]) -> Rep {
        Rep {
            group: Arc::clone(&self.group),
            field: big.clone(),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| m.map_entries(|x| embed[x as usize].0)).collect(),
        }
    }

    /// Induction from the group of `self`, whose elements must lie in `big`,
    /// to `big`, on the basis `a_i (x) t` over right coset representatives `t`.
    pub fn induce(&self, big: &Arc<FiniteGroup>) -> Result<Rep> {
        let small = &self.group;
        if small.n_points() != big.n_points() {
            return Err(Error::NotSubgroup);
        }
        let to_big: Vec<usize> =
            small.elements().iter().map(|p| big.index_of(p).ok_or(Error::NotSubgroup)).collect::<Result<_>>()?;
        let mut from_big = vec![None; big.order()];
        for (s, &b) in to_big.iter().enumerate() {
            from_big[b] = Some(s);
        }
        // Right cosets K t, numbered by least element.
        let mut coset_of = vec![usize::MAX; big.order()];
        let mut reps = Vec::new();
        for g in 0..big.order() {
            if coset_of[g] == usize::MAX {
                for &k in &to_big {
                    coset_of[big.mul(k, g)] = reps.len();
                }
                reps.push(g);
            }
        }
        let d = self.dim;
        let n = reps.len() * d;
        let gens = big
            .generator_indices()
            .iter()
            .map(|&s| {
                let mut m = FFMatrix::zeros(n, n);
                for (c, &t) in reps.iter().enumerate() {
                    let ts = big.mul(t, s);
                    let c2 = coset_of[ts];
                    // t s = k t2 with k in K.
                    let k = big.mul(ts, big.inv(reps[c2]));
                    let km = &self.matrices[from_big[k].expect("coset decomposition")];
                    for i in 0..d {
                        for j in 0..d {
                            m.set(c * d + i, c2 * d + j, km.get(i, j));
                        }
                    }
                }
                m
            })
            .collect();
        Rep::new_unchecked(Arc::clone(big), self.field.clone(), n, gens)
    }

    /// Block upper triangular module with `sub` as submodule and `quo` as
    /// quotient, glued by one off-diagonal block per generator; fails if the
    /// blocks do not define a representation.
    pub fn extension(sub: &Rep, quo: &Rep, glue: &[FFMatrix]) -> Result<Rep> {
        sub.same_context(quo)?;
        let (a, b) = (quo.dim, sub.dim);
        let gens = (0..sub.group.generators().len())
            .map(|k| {
                let mut m = FFMatrix::zeros(a + b, a + b);
                let q = quo.generator_matrix(k);
                let s = sub.generator_matrix(k);
                for i in 0..a {
                    for j in 0..a {
                        m.set(i, j, q.get(i, j));
                    }
                    for j in 0..b {
                        m.set(i, a + j, glue[k].get(i, j));
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m.set(a + i, a + j, s.get(i, j));
                    }
                }
                m
            })
            .collect();
        Rep::new(Arc::clone(&sub.group), sub.field.clone(), a + b, gens)
    }
}

/// Matrix of `g` on `Lambda^j` given its matrix on `V`.
pub fn exterior_matrix(field: &FiniteField, m: &FFMatrix, subs: &[Vec<usize>]) -> FFMatrix {
    let n = subs.len();
    let mut out = FFMatrix::zeros(n, n);
    for (r, rows) in subs.iter().enumerate() {
        for (c, cols) in subs.iter().enumerate() {
            let minor = FFMatrix::from_raw(
                rows.len(),
                cols.len(),
                rows.iter().flat_map(|&i| cols.iter().map(move |&j| m.get(i, j).0)).collect(),
            );
            out.set(r, c, minor.det(field));
        }
    }
    out
}
