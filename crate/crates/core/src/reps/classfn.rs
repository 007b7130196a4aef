//! Class functions on p-regular elements and Brauer characters.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::context::BrauerContext;
use super::rep::Rep;
use crate::error::{Error, Result};
use crate::exactnum::cyclo::{cyclo_rank, CycloNum};
use crate::exec::Exec;
use crate::groups::finite::FiniteGroup;
use crate::groups::orbits::{p_regular_classes, OrbitPartition};

/// A function on the p-regular elements of a group with values in Q(zeta_m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    p: u64,
    m: u64,
    values: BTreeMap<usize, CycloNum>,
}

/// Brauer characters are class functions computed from representations.
pub type BrauerChar = ClassFunction;

impl ClassFunction {
    pub fn from_values(p: u64, m: u64, values: BTreeMap<usize, CycloNum>) -> Self {
        ClassFunction { p, m, values }
    }

    pub fn constant(group: &FiniteGroup, p: u64, m: u64, c: &CycloNum) -> Self {
        let values = group.p_regular_set(p).into_iter().map(|g| (g, c.clone())).collect();
        ClassFunction { p, m, values }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn values(&self) -> &BTreeMap<usize, CycloNum> {
        &self.values
    }

    /// Value at a p-regular element.
    pub fn value(&self, g: usize) -> Result<&CycloNum> {
        self.values.get(&g).ok_or_else(|| Error::InvalidInput(format!("element {g} is not p-regular")))
    }

    fn zip(&self, other: &Self, f: impl Fn(&CycloNum, &CycloNum) -> CycloNum) -> Result<Self> {
        if self.values.len() != other.values.len() || self.values.keys().ne(other.values.keys()) {
            return Err(Error::DimMismatch("class functions on different domains".into()));
        }
        let values = self.values.iter().zip(other.values.values()).map(|((&g, a), b)| (g, f(a, b))).collect();
        Ok(ClassFunction { p: self.p, m: self.m, values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, CycloNum::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, CycloNum::sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, CycloNum::mul)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        ClassFunction { p: self.p, m: self.m, values: self.values.iter().map(|(&g, v)| (g, v.scale_int(n))).collect() }
    }

    /// Values on the representatives of a partition.
    pub fn on_representatives(&self, part: &OrbitPartition) -> Result<Vec<CycloNum>> {
        part.representatives().into_iter().map(|g| self.value(g).cloned()).collect()
    }
}

/// Brauer value of a representation at one p-regular element.
pub fn brauer_value(ctx: &BrauerContext, rep: &Rep, g: usize) -> Result<CycloNum> {
    let group = rep.group();
    let order = group.elem_order(g);
    if order.is_multiple_of(group_characteristic(ctx)) {
        return Err(Error::InvalidInput(format!("element {g} is not p-regular")));
    }
    ctx.brauer_value(rep.matrix(g), order)
}

fn group_characteristic(ctx: &BrauerContext) -> u64 {
    ctx.base().characteristic() as u64
}

/// The Brauer character, evaluated once per p-regular conjugacy class.
pub fn brauer_character(ctx: &BrauerContext, rep: &Rep, exec: Exec) -> Result<BrauerChar> {
    if rep.field() != ctx.base() {
        return Err(Error::FieldMismatch(format!(
            "representation over {} with context over {}",
            rep.field(),
            ctx.base()
        )));
    }
    let p = group_characteristic(ctx);
    let classes = p_regular_classes(rep.group(), p);
    let reps = classes.representatives();
    let vals = exec.try_map_range(reps.len(), |i| brauer_value(ctx, rep, reps[i]))?;
    let mut values = BTreeMap::new();
    for (block, v) in classes.blocks().iter().zip(vals) {
        for &g in block {
            values.insert(g, v.clone());
        }
    }
    Ok(ClassFunction { p, m: ctx.m(), values })
}

/// Induction of a class function from a subgroup (given by its own closure on
/// the same points) to `big`:
/// `Ind f (g) = |K|^-1 sum_{x in G} f(x g x^-1)`, with `f` zero off `K`.
pub fn induce_class_function(f: &ClassFunction, small: &FiniteGroup, big: &Arc<FiniteGroup>) -> Result<ClassFunction> {
    if small.n_points() != big.n_points() {
        return Err(Error::NotSubgroup);
    }
    let mut from_big: Vec<Option<usize>> = vec![None; big.order()];
    for (s, perm) in small.elements().iter().enumerate() {
        let b = big.index_of(perm).ok_or(Error::NotSubgroup)?;
        from_big[b] = Some(s);
    }
    let p = f.p;
    let scale = BigRational::new(BigInt::from(1), BigInt::from(small.order()));
    let mut values = BTreeMap::new();
    for g in big.p_regular_set(p) {
        let mut acc = CycloNum::zero(f.m);
        for x in 0..big.order() {
            let c = big.mul(big.mul(x, g), big.inv(x));
            if let Some(s) = from_big[c] {
                acc = acc.add(f.value(s)?);
            }
        }
        values.insert(g, acc.scale(&scale));
    }
    Ok(ClassFunction { p, m: f.m, values })
}

/// Rank over Q(zeta_m) of the matrix of values on the partition representatives.
pub fn char_span_rank(chars: &[ClassFunction], part: &OrbitPartition) -> Result<usize> {
    let rows = chars.iter().map(|c| c.on_representatives(part)).collect::<Result<Vec<_>>>()?;
    Ok(cyclo_rank(&rows))
}
