//! Finitely generated graded right `R`-modules, stored degreewise up to a cutoff.

use std::sync::Arc;

use super::monomial::{substitute, variables};
use super::presentation::{Presentation, Relation};
use crate::error::{Error, Result};
use crate::exactnum::field::{FFElem, FiniteField};
use crate::exactnum::matrix::{axpy, EchelonBasis, FFMatrix};
use crate::reps::model::ModelGN;
use crate::reps::rep::Rep;

/// Degrees `lowest..=top` of a graded module `M`.
///
/// Each degree carries the `H`-action as a [`Rep`]; `var_maps[n][i]` is right
/// multiplication by the `i`-th basis vector of `V`, `M_n -> M_{n+1}`.
/// Every degree inside the window is exact: all generators and relations
/// live in degrees `<= max_degree <= top`.
#[derive(Debug, Clone)]
pub struct GradedModule {
    model: Arc<ModelGN>,
    lowest: i64,
    top: i64,
    max_degree: i64,
    pieces: Vec<Rep>,
    var_maps: Vec<Vec<FFMatrix>>,
}

/// Degreewise construction of `F / (relations) R` for a free module `F`.
pub fn module_from_presentation(model: Arc<ModelGN>, pres: &Presentation, top: i64) -> Result<GradedModule> {
    GradedModule::from_presentation(model, pres, top)
}

struct Builder<'a> {
    model: &'a ModelGN,
    field: FiniteField,
    gen_degrees: &'a [i64],
    lowest: i64,
    pieces: Vec<Rep>,
    var_maps: Vec<Vec<FFMatrix>>,
    /// `e_b h` as a vector of `M_{deg b}`, for every generator `b` and element `h`.
    gen_images: Vec<Vec<Vec<u32>>>,
}

impl Builder<'_> {
    fn dim(&self, n: i64) -> usize {
        if n < self.lowest {
            0
        } else {
            self.pieces[(n - self.lowest) as usize].dim()
        }
    }

    /// Image of `relation * h` in `P_n = (M_{n-1} (x) V) + (new generators (x) kH)`.
    fn relation_image(&self, rel: &Relation, h: usize, n: i64, new_gens: &[usize]) -> Vec<u32> {
        let group = self.model.group();
        let d = self.model.d();
        let order = group.order();
        let prev = self.dim(n - 1);
        let mut out = vec![0u32; prev * d + new_gens.len() * order];
        let mh = self.model.v().matrix(h);
        for t in rel.terms.iter().filter(|t| t.coeff != 0) {
            let hh = group.mul(t.element, h);
            for (nu, &a) in &substitute(&self.field, mh, &t.monomial) {
                let c = self.field.mul_raw(t.coeff, a);
                let vars = variables(nu);
                match vars.split_last() {
                    None => {
                        let pos = new_gens.iter().position(|&b| b == t.generator).expect("generator of degree n");
                        let slot = prev * d + pos * order + hh;
                        out[slot] = self.field.add_raw(out[slot], c);
                    }
                    Some((&last, init)) => {
                        let mut w = self.gen_images[t.generator][hh].clone();
                        for (deg, &var) in (self.gen_degrees[t.generator]..).zip(init) {
                            w = self.var_maps[(deg - self.lowest) as usize][var].vec_mul(&self.field, &w);
                        }
                        for (k, &x) in w.iter().enumerate() {
                            if x != 0 {
                                let idx = k * d + last;
                                out[idx] = self.field.add_raw(out[idx], self.field.mul_raw(c, x));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn step(&mut self, n: i64, pres: &Presentation) -> Result<()> {
        let group = Arc::clone(self.model.group());
        let field = self.field.clone();
        let d = self.model.d();
        let order = group.order();
        let prev = self.dim(n - 1);
        let new_gens: Vec<usize> = (0..self.gen_degrees.len()).filter(|&b| self.gen_degrees[b] == n).collect();
        let ncols = prev * d + new_gens.len() * order;

        let mut span = EchelonBasis::new(ncols);
        // (m v_i) v_j = (m v_j) v_i for m in M_{n-2}.
        if n - 2 >= self.lowest {
            let k = (n - 2 - self.lowest) as usize;
            let maps = &self.var_maps[k];
            for row in 0..self.dim(n - 2) {
                for i in 0..d {
                    for j in i + 1..d {
                        let mut v = vec![0u32; ncols];
                        for (l, (&a, &b)) in maps[i].row(row).iter().zip(maps[j].row(row)).enumerate() {
                            v[l * d + j] = a;
                            v[l * d + i] = field.neg_raw(b);
                        }
                        span.insert(&field, v);
                    }
                }
            }
        }
        for rel in &pres.relations {
            if rel.degree(self.gen_degrees) == Some(n) {
                for h in 0..order {
                    span.insert(&field, self.relation_image(rel, h, n, &new_gens));
                }
            }
        }
        let span = span.into_rref(&field);
        let basis_cols: Vec<usize> = (0..ncols).filter(|&c| !span.is_pivot(c)).collect();
        let dim = basis_cols.len();
        let unit = |c: usize| {
            let mut e = vec![0u32; ncols];
            e[c] = 1;
            e
        };

        let mut gen_mats = Vec::new();
        for &s in group.generator_indices() {
            let ms = self.model.v().matrix(s);
            let prev_s = (prev > 0).then(|| self.pieces[(n - 1 - self.lowest) as usize].matrix(s));
            let mut mat = FFMatrix::zeros(dim, dim);
            for (r, &c) in basis_cols.iter().enumerate() {
                let mut v = vec![0u32; ncols];
                if c < prev * d {
                    // (m_k v_i) s = (m_k s) (v_i)^s.
                    let (k, i) = (c / d, c % d);
                    let hs = prev_s.expect("previous degree is nonzero");
                    for (l, &a) in hs.row(k).iter().enumerate() {
                        if a != 0 {
                            axpy(&field, &mut v[l * d..(l + 1) * d], a, ms.row(i));
                        }
                    }
                } else {
                    let rel = c - prev * d;
                    let (pos, h) = (rel / order, rel % order);
                    v[prev * d + pos * order + group.mul(h, s)] = 1;
                }
                mat.row_mut(r).copy_from_slice(&span.quotient_coords(&field, &v));
            }
            gen_mats.push(mat);
        }
        let piece = Rep::new(Arc::clone(&group), field.clone(), dim, gen_mats)
            .map_err(|e| Error::Internal(format!("group action in degree {n}: {e}")))?;

        if n > self.lowest {
            let maps = (0..d)
                .map(|i| {
                    let mut mat = FFMatrix::zeros(prev, dim);
                    for k in 0..prev {
                        mat.row_mut(k).copy_from_slice(&span.quotient_coords(&field, &unit(k * d + i)));
                    }
                    mat
                })
                .collect();
            self.var_maps.push(maps);
        }
        for (pos, &b) in new_gens.iter().enumerate() {
            self.gen_images[b] =
                (0..order).map(|h| span.quotient_coords(&field, &unit(prev * d + pos * order + h))).collect();
        }
        self.pieces.push(piece);
        Ok(())
    }
}

impl GradedModule {
    pub fn from_presentation(model: Arc<ModelGN>, pres: &Presentation, top: i64) -> Result<Self> {
        pres.validate(&model)?;
        let Some(lowest) = pres.lowest_degree() else {
            return Ok(Self::zero(model, 0, top.max(0)));
        };
        let max_degree = pres.max_degree().expect("has generators");
        if max_degree > top {
            return Err(Error::WindowTooSmall { degree: max_degree, top });
        }
        let mut builder = Builder {
            model: &model,
            field: model.field().clone(),
            gen_degrees: &pres.generator_degrees,
            lowest,
            pieces: Vec::new(),
            var_maps: Vec::new(),
            gen_images: vec![Vec::new(); pres.generator_degrees.len()],
        };
        for n in lowest..=top {
            builder.step(n, pres)?;
        }
        let (pieces, var_maps) = (builder.pieces, builder.var_maps);
        let module = GradedModule { model, lowest, top, max_degree, pieces, var_maps };
        module.check_invariants()?;
        Ok(module)
    }

    /// The zero module on the window `lowest..=top`.
    pub fn zero(model: Arc<ModelGN>, lowest: i64, top: i64) -> Self {
        let group = Arc::clone(model.group());
        let field = model.field().clone();
        let len = (top - lowest + 1).max(1) as usize;
        let pieces = vec![Rep::trivial(group, field, 0); len];
        let var_maps = vec![vec![FFMatrix::zeros(0, 0); model.d()]; len - 1];
        GradedModule { model, lowest, top: lowest + len as i64 - 1, max_degree: lowest, pieces, var_maps }
    }

    /// `rep` placed in degree `degree` with `V` acting as zero.
    pub fn concentrated(model: Arc<ModelGN>, rep: Rep, degree: i64, top: i64) -> Result<Self> {
        if !Arc::ptr_eq(rep.group(), model.group()) && rep.group().elements() != model.group().elements() {
            return Err(Error::InvalidInput("representation of a different group".into()));
        }
        if rep.field() != model.field() {
            return Err(Error::FieldMismatch("representation and model use different fields".into()));
        }
        if top < degree {
            return Err(Error::WindowTooSmall { degree, top });
        }
        let mut pieces = vec![rep];
        let mut var_maps = Vec::new();
        for _ in degree..top {
            let prev = pieces.last().expect("nonempty").dim();
            var_maps.push(vec![FFMatrix::zeros(prev, 0); model.d()]);
            pieces.push(Rep::trivial(Arc::clone(model.group()), model.field().clone(), 0));
        }
        Self::from_parts(model, degree, degree, pieces, var_maps)
    }

    /// Assembles a module from degreewise data and checks every axiom.
    pub fn from_parts(
        model: Arc<ModelGN>,
        lowest: i64,
        max_degree: i64,
        pieces: Vec<Rep>,
        var_maps: Vec<Vec<FFMatrix>>,
    ) -> Result<Self> {
        if pieces.is_empty() || var_maps.len() + 1 != pieces.len() {
            return Err(Error::DimMismatch("need one variable map per pair of consecutive degrees".into()));
        }
        let top = lowest + pieces.len() as i64 - 1;
        if max_degree > top || max_degree < lowest {
            return Err(Error::WindowTooSmall { degree: max_degree, top });
        }
        for (k, maps) in var_maps.iter().enumerate() {
            if maps.len() != model.d() {
                return Err(Error::DimMismatch(format!("{} variable maps for dimension {}", maps.len(), model.d())));
            }
            for m in maps {
                if m.rows() != pieces[k].dim() || m.cols() != pieces[k + 1].dim() {
                    return Err(Error::DimMismatch(format!("variable map out of degree {}", lowest + k as i64)));
                }
            }
        }
        let module = GradedModule { model, lowest, top, max_degree, pieces, var_maps };
        module.check_invariants().map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(module)
    }

    /// Commuting variables and `(x v) h = (x h) v^h` in every degree.
    pub fn check_invariants(&self) -> Result<()> {
        let field = self.model.field();
        let d = self.model.d();
        let group = self.model.group();
        for k in 0..self.var_maps.len() {
            let n = self.lowest + k as i64;
            let here = &self.var_maps[k];
            if let Some(next) = self.var_maps.get(k + 1) {
                for i in 0..d {
                    for j in i + 1..d {
                        if here[i].mul(field, &next[j]) != here[j].mul(field, &next[i]) {
                            return Err(Error::Internal(format!(
                                "variables {i} and {j} do not commute from degree {n}"
                            )));
                        }
                    }
                }
            }
            for &s in group.generator_indices() {
                let ms = self.model.v().matrix(s);
                for i in 0..d {
                    let lhs = here[i].mul(field, self.pieces[k + 1].matrix(s));
                    let mut comb = FFMatrix::zeros(here[i].rows(), here[i].cols());
                    for (j, map) in here.iter().enumerate() {
                        let c = ms.get(i, j);
                        if !c.is_zero() {
                            comb = comb.add(field, &map.scale(field, c));
                        }
                    }
                    if lhs != self.pieces[k].matrix(s).mul(field, &comb) {
                        return Err(Error::Internal(format!("group and variable actions clash in degree {n}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> &Arc<ModelGN> {
        &self.model
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest
    }

    pub fn top_degree(&self) -> i64 {
        self.top
    }

    /// Largest degree of a generator or relation.
    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    /// `dim M_n`; zero below the window. Degrees above `top` are unknown.
    pub fn dim(&self, n: i64) -> usize {
        self.piece(n).map_or(0, Rep::dim)
    }

    pub fn piece(&self, n: i64) -> Option<&Rep> {
        if n < self.lowest || n > self.top {
            None
        } else {
            Some(&self.pieces[(n - self.lowest) as usize])
        }
    }

    /// Right multiplication by `v_var` on `M_n`, for `lowest <= n < top`.
    pub fn var_map(&self, n: i64, var: usize) -> Option<&FFMatrix> {
        if n < self.lowest || n >= self.top {
            None
        } else {
            self.var_maps[(n - self.lowest) as usize].get(var)
        }
    }

    /// `M[a]` with `M[a]_n = M_{n + a}`.
    pub fn shift(&self, a: i64) -> Self {
        GradedModule { lowest: self.lowest - a, top: self.top - a, max_degree: self.max_degree - a, ..self.clone() }
    }

    /// Acting matrix of a word in the group on `M_n`.
    pub fn element_matrix(&self, n: i64, g: usize) -> Option<&FFMatrix> {
        self.piece(n).map(|rep| rep.matrix(g))
    }

    pub fn field(&self) -> &FiniteField {
        self.model.field()
    }
}

/// Common presentations over a model.
pub mod presentations {
    use super::*;

    /// `R` itself, generated in degree `a`.
    pub fn free(a: i64) -> Presentation {
        Presentation::free(a)
    }

    /// `Sym(V)` as `R / (h - 1)R`.
    pub fn symmetric_algebra(model: &ModelGN) -> Presentation {
        let field = model.field();
        let rels = model
            .group()
            .generator_indices()
            .iter()
            .map(|&s| Relation::eigen(field, 0, model.d(), s, FFElem::ONE))
            .collect();
        Presentation::new(vec![0], rels)
    }

    /// `kH` in degree 0 with `V` acting as zero.
    pub fn group_algebra(model: &ModelGN) -> Presentation {
        let rels = (0..model.d()).map(|i| Relation::variable(0, model.d(), i)).collect();
        Presentation::new(vec![0], rels)
    }

    /// A one-dimensional module in degree 0 on which each generator acts by a
    /// scalar and `V` acts as zero.
    pub fn line(model: &ModelGN, scalars: &[FFElem]) -> Presentation {
        let field = model.field();
        let d = model.d();
        let mut rels: Vec<Relation> = (0..d).map(|i| Relation::variable(0, d, i)).collect();
        for (&s, &c) in model.group().generator_indices().iter().zip(scalars) {
            rels.push(Relation::eigen(field, 0, d, s, c));
        }
        Presentation::new(vec![0], rels)
    }

    /// Adds `e_0 * x_var = 0` for each listed variable.
    pub fn kill_variables(mut pres: Presentation, d: usize, vars: &[usize]) -> Presentation {
        pres.relations.extend(vars.iter().map(|&i| Relation::variable(0, d, i)));
        pres
    }
}
