//! Orbits of conjugation and Frobenius powering on p-regular elements.

use serde::Serialize;

use super::finite::FiniteGroup;
use super::perm;
use crate::error::{Error, Result};
use crate::exactnum::field::is_prime;

/// `log_p(q)` when `q` is a positive power of the prime `p`.
pub fn field_degree(p: u64, q: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let mut s = 0;
    let mut r = q;
    while r > 1 && r.is_multiple_of(p) {
        r /= p;
        s += 1;
    }
    if r != 1 || s == 0 {
        return Err(Error::BadCharacteristic { p, q });
    }
    Ok(s)
}

/// Characteristic data of the Frobenius action on a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisData {
    pub p: u64,
    pub q: u64,
    /// `p'`-part of the group exponent.
    pub m: u64,
    /// The cyclic subgroup of units mod `m` generated by `q`, ascending.
    pub t_powers: Vec<u64>,
}

impl GaloisData {
    pub fn new(group: &FiniteGroup, p: u64, q: u64) -> Result<Self> {
        field_degree(p, q)?;
        let m = group.p_prime_exponent(p);
        let mut t_powers = vec![1 % m];
        let mut cur = q % m;
        while !t_powers.contains(&cur) {
            t_powers.push(cur);
            cur = cur * q % m;
        }
        if m == 1 {
            t_powers = vec![0];
        }
        t_powers.sort_unstable();
        Ok(GaloisData { p, q, m, t_powers })
    }

    /// Smallest `e` with `q^e = 1 mod m`.
    pub fn frobenius_order(&self) -> u32 {
        self.t_powers.len() as u32
    }
}

/// A partition of the p-regular elements into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    p: u64,
    q: Option<u64>,
    base: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<Option<usize>>,
}

impl OrbitPartition {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> Option<u64> {
        self.q
    }

    /// The p-regular elements, ascending.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Blocks ordered by least element, each ascending.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Least element of each block.
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    pub fn block_of(&self, g: usize) -> Option<usize> {
        self.block_of.get(g).copied().flatten()
    }

    fn build(group: &FiniteGroup, p: u64, q: Option<u64>) -> OrbitPartition {
        let n = group.order();
        let base = group.p_regular_set(p);
        let mut block_of: Vec<Option<usize>> = vec![None; n];
        let mut blocks = Vec::new();
        for &start in &base {
            if block_of[start].is_some() {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            block_of[start] = Some(id);
            let mut head = 0;
            while head < block.len() {
                let g = block[head];
                let mut nbrs: Vec<usize> = group.generator_indices().iter().map(|&x| group.conj(g, x)).collect();
                if let Some(q) = q {
                    nbrs.push(group.pow(g, (q % group.elem_order(g)) as i64));
                }
                for h in nbrs {
                    if block_of[h].is_none() {
                        block_of[h] = Some(id);
                        block.push(h);
                    }
                }
                head += 1;
            }
            block.sort_unstable();
            blocks.push(block);
        }
        OrbitPartition { p, q, base, blocks, block_of }
    }

    /// JSON-friendly description of each block.
    pub fn report(&self, group: &FiniteGroup) -> Vec<BlockReport> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| BlockReport {
                block: i,
                representative: b[0],
                representative_cycles: perm::cycle_string(group.element(b[0])),
                order: group.elem_order(b[0]),
                size: b.len(),
                elements: b.clone(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub block: usize,
    pub representative: usize,
    pub representative_cycles: String,
    pub order: u64,
    pub size: usize,
    pub elements: Vec<usize>,
}

/// Conjugacy classes of p-regular elements, as an orbit partition without
/// the Frobenius action.
pub fn p_regular_classes(group: &FiniteGroup, p: u64) -> OrbitPartition {
    OrbitPartition::build(group, p, None)
}

/// Orbits of the p-regular elements under conjugation and `g -> g^q`.
pub fn galois_orbits(group: &FiniteGroup, p: u64, q: u64) -> Result<OrbitPartition> {
    field_degree(p, q)?;
    Ok(OrbitPartition::build(group, p, Some(q)))
}
