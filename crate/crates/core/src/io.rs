//! JSON documents for groups, fields, representations and module presentations.
//!
//! Unknown keys are rejected everywhere. Field elements are arrays of exactly
//! `s` base-`p` digits, lowest first; a bare integer is read modulo `p`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::field::{make_field, FFElem, FiniteField};
use crate::exactnum::matrix::FFMatrix;
use crate::fixtures::Example;
use crate::groups::finite::FiniteGroup;
use crate::groups::perm::Perm;
use crate::reps::model::ModelGN;
use crate::reps::rep::Rep;
use crate::skewgraded::presentation::{Presentation, Relation, RelationTerm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub points: usize,
    pub generators: Vec<Perm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub p: u64,
    pub s: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemDoc {
    Digits(Vec<u32>),
    Integer(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub group: GroupDoc,
    pub field: FieldDoc,
    /// One matrix per group generator, as rows of field elements.
    pub matrices: Vec<Vec<Vec<ElemDoc>>>,
    /// Needed only when the group has no generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    /// Word in the group generators; empty for the identity.
    pub h: Vec<usize>,
    pub monomial: Vec<u32>,
    pub coeff: ElemDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub target_gen: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub model: RepDoc,
    pub generators: Vec<GeneratorDoc>,
    pub relations: Vec<RelationDoc>,
    #[serde(default)]
    pub cutoff: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedModuleDoc {
    pub name: String,
    pub module: ModuleDoc,
}

/// A model and its module catalog, as emitted by the example command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleDoc {
    pub name: String,
    pub model: RepDoc,
    pub modules: Vec<NamedModuleDoc>,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("document: {e}")))
}

impl GroupDoc {
    pub fn to_group(&self, max_order: usize) -> Result<FiniteGroup> {
        FiniteGroup::close(self.points, self.generators.clone(), max_order)
    }

    pub fn from_group(group: &FiniteGroup) -> Self {
        GroupDoc { points: group.n_points(), generators: group.generators().to_vec() }
    }
}

impl FieldDoc {
    pub fn to_field(self) -> Result<FiniteField> {
        make_field(self.p, self.s)
    }

    pub fn from_field(field: &FiniteField) -> Self {
        FieldDoc { p: u64::from(field.characteristic()), s: field.degree() }
    }
}

impl ElemDoc {
    pub fn to_elem(&self, field: &FiniteField) -> Result<FFElem> {
        match self {
            ElemDoc::Digits(d) => field.from_digits(d),
            ElemDoc::Integer(n) => Ok(field.from_i64(*n)),
        }
    }

    pub fn from_elem(field: &FiniteField, a: FFElem) -> Self {
        ElemDoc::Digits(field.digits(a))
    }
}

fn matrix_from_doc(field: &FiniteField, rows: &[Vec<ElemDoc>], dim: usize) -> Result<FFMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::DimMismatch(format!("expected a {dim} x {dim} matrix")));
    }
    let data = rows.iter().flatten().map(|e| e.to_elem(field).map(|x| x.0)).collect::<Result<Vec<_>>>()?;
    Ok(FFMatrix::from_raw(dim, dim, data))
}

impl RepDoc {
    pub fn to_rep(&self, max_order: usize) -> Result<Rep> {
        let group = Arc::new(self.group.to_group(max_order)?);
        let field = self.field.to_field()?;
        let dim = match (self.matrices.first(), self.dim) {
            (Some(m), None) => m.len(),
            (Some(m), Some(d)) if m.len() == d => d,
            (None, Some(d)) => d,
            (None, None) => 0,
            _ => return Err(Error::DimMismatch("dim disagrees with the matrices".into())),
        };
        let gens = self.matrices.iter().map(|m| matrix_from_doc(&field, m, dim)).collect::<Result<Vec<_>>>()?;
        Rep::new(group, field, dim, gens)
    }

    pub fn to_model(&self, max_order: usize) -> Result<ModelGN> {
        ModelGN::new(self.to_rep(max_order)?)
    }

    pub fn from_rep(rep: &Rep) -> Self {
        let field = rep.field();
        let matrices = rep
            .generator_matrices()
            .iter()
            .map(|m| {
                (0..m.rows()).map(|r| (0..m.cols()).map(|c| ElemDoc::from_elem(field, m.get(r, c))).collect()).collect()
            })
            .collect();
        RepDoc {
            group: GroupDoc::from_group(rep.group()),
            field: FieldDoc::from_field(field),
            matrices,
            dim: rep.group().generators().is_empty().then_some(rep.dim()),
        }
    }
}

impl ModuleDoc {
    /// The model, the presentation and the requested cutoff.
    pub fn resolve(&self, max_order: usize) -> Result<(Arc<ModelGN>, Presentation, Option<i64>)> {
        let model = Arc::new(self.model.to_model(max_order)?);
        let pres = self.presentation(&model)?;
        Ok((model, pres, self.cutoff))
    }

    pub fn presentation(&self, model: &ModelGN) -> Result<Presentation> {
        let field = model.field();
        let group = model.group();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let terms = r
                    .terms
                    .iter()
                    .map(|t| {
                        Ok(RelationTerm::new(
                            r.target_gen,
                            group.eval_word(&t.h)?,
                            t.monomial.clone(),
                            t.coeff.to_elem(field)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Relation::new(terms))
            })
            .collect::<Result<Vec<_>>>()?;
        let pres = Presentation::new(self.generators.iter().map(|g| g.degree).collect(), relations);
        pres.validate(model)?;
        Ok(pres)
    }

    /// Relations must each involve a single generator to be expressible.
    pub fn from_presentation(model: &ModelGN, pres: &Presentation, cutoff: Option<i64>) -> Result<Self> {
        let field = model.field();
        let group = model.group();
        let relations = pres
            .relations
            .iter()
            .map(|rel| {
                let target_gen = rel.terms.first().map_or(0, |t| t.generator);
                if rel.terms.iter().any(|t| t.generator != target_gen) {
                    return Err(Error::InvalidInput("relation mixes generators".into()));
                }
                let terms = rel
                    .terms
                    .iter()
                    .map(|t| TermDoc {
                        h: group.word(t.element),
                        monomial: t.monomial.clone(),
                        coeff: ElemDoc::from_elem(field, FFElem(t.coeff)),
                    })
                    .collect();
                Ok(RelationDoc { target_gen, terms })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleDoc {
            model: RepDoc::from_rep(model.v()),
            generators: pres.generator_degrees.iter().map(|&degree| GeneratorDoc { degree }).collect(),
            relations,
            cutoff,
        })
    }
}

impl ExampleDoc {
    pub fn from_example(ex: &Example) -> Result<Self> {
        let modules = ex
            .catalog
            .iter()
            .map(|e| {
                Ok(NamedModuleDoc {
                    name: e.name.clone(),
                    module: ModuleDoc::from_presentation(&ex.model, &e.presentation, None)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExampleDoc { name: ex.name.clone(), model: RepDoc::from_rep(ex.model.v()), modules })
    }
}
