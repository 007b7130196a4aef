//! Finite presentations of graded right `R`-modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::field::{FFElem, FiniteField};
use crate::reps::model::ModelGN;

/// `coeff * e_generator * h * x^monomial` in the free module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTerm {
    pub generator: usize,
    /// Index of the group element `h`.
    pub element: usize,
    pub monomial: Vec<u32>,
    pub coeff: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

/// Free module on homogeneous generators modulo the right submodule spanned
/// by homogeneous relations.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub generator_degrees: Vec<i64>,
    pub relations: Vec<Relation>,
}

impl RelationTerm {
    pub fn new(generator: usize, element: usize, monomial: Vec<u32>, coeff: FFElem) -> Self {
        RelationTerm { generator, element, monomial, coeff: coeff.0 }
    }

    fn degree(&self, gens: &[i64]) -> i64 {
        gens[self.generator] + self.monomial.iter().map(|&e| i64::from(e)).sum::<i64>()
    }
}

impl Relation {
    pub fn new(terms: Vec<RelationTerm>) -> Self {
        Relation { terms }
    }

    /// `e_gen * x_var`.
    pub fn variable(generator: usize, d: usize, var: usize) -> Self {
        let mut mono = vec![0; d];
        mono[var] = 1;
        Relation::new(vec![RelationTerm::new(generator, 0, mono, FFElem::ONE)])
    }

    /// `e_gen * h - c * e_gen`.
    pub fn eigen(field: &FiniteField, generator: usize, d: usize, element: usize, c: FFElem) -> Self {
        Relation::new(vec![
            RelationTerm::new(generator, element, vec![0; d], FFElem::ONE),
            RelationTerm::new(generator, 0, vec![0; d], field.neg(c)),
        ])
    }

    /// Degree of the first nonzero term, `None` for the zero relation.
    pub fn degree(&self, gens: &[i64]) -> Option<i64> {
        self.terms.iter().find(|t| t.coeff != 0).map(|t| t.degree(gens))
    }
}

impl Presentation {
    pub fn new(generator_degrees: Vec<i64>, relations: Vec<Relation>) -> Self {
        Presentation { generator_degrees, relations }
    }

    /// The free module of rank one on a generator of degree `a`.
    pub fn free(a: i64) -> Self {
        Presentation::new(vec![a], Vec::new())
    }

    /// Checks indices, field elements and homogeneity against a model.
    pub fn validate(&self, model: &ModelGN) -> Result<()> {
        let q = model.field().order();
        let d = model.d();
        let gens = &self.generator_degrees;
        for (r, rel) in self.relations.iter().enumerate() {
            let mut degree = None;
            for t in &rel.terms {
                if t.generator >= gens.len() {
                    return Err(Error::InvalidInput(format!("relation {r} uses unknown generator {}", t.generator)));
                }
                if t.element >= model.group().order() {
                    return Err(Error::InvalidInput(format!("relation {r} uses unknown group element {}", t.element)));
                }
                if t.monomial.len() != d {
                    return Err(Error::InvalidInput(format!(
                        "relation {r} has a monomial of length {} in {d} variables",
                        t.monomial.len()
                    )));
                }
                if t.coeff >= q {
                    return Err(Error::InvalidInput(format!(
                        "relation {r} has coefficient {} outside GF({q})",
                        t.coeff
                    )));
                }
                if t.coeff == 0 {
                    continue;
                }
                let deg = t.degree(gens);
                if *degree.get_or_insert(deg) != deg {
                    return Err(Error::InvalidInput(format!("relation {r} is not homogeneous")));
                }
            }
        }
        Ok(())
    }

    pub fn lowest_degree(&self) -> Option<i64> {
        self.generator_degrees.iter().copied().min()
    }

    /// Largest degree of a generator or relation.
    pub fn max_degree(&self) -> Option<i64> {
        let gens = &self.generator_degrees;
        let rel = self.relations.iter().filter_map(|r| r.degree(gens));
        gens.iter().copied().chain(rel).max()
    }

    /// Generators and relations moved up by `a` degrees.
    pub fn shifted(&self, a: i64) -> Self {
        Presentation {
            generator_degrees: self.generator_degrees.iter().map(|g| g + a).collect(),
            relations: self.relations.clone(),
        }
    }
}
