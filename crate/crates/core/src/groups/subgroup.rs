//! Subgroups, normal p-subgroups, quotients and the p-regular orbit bijection
//! across a quotient by a normal p-subgroup.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::finite::FiniteGroup;
use super::orbits::{galois_orbits, OrbitPartition};
use crate::error::{Error, Result};

/// A subgroup as a sorted set of element indices of the ambient group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Closure of the given elements under multiplication.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = group.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { elements: set.into_iter().collect() }
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(group: &FiniteGroup) -> Subgroup {
        Subgroup { elements: (0..group.order()).collect() }
    }

    /// Checks that the given set is closed and contains the identity.
    pub fn from_elements(group: &FiniteGroup, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&e| e >= group.order()) || elements.first() != Some(&0) {
            return Err(Error::NotSubgroup);
        }
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        for &a in &elements {
            for &b in &elements {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        self.elements.iter().all(|&u| group.generator_indices().iter().all(|&x| self.contains(group.conj(u, x))))
    }
}

/// Normal closure of a set of elements.
pub fn normal_closure(group: &FiniteGroup, elems: &[usize]) -> Subgroup {
    let mut gens: BTreeSet<usize> = elems.iter().copied().collect();
    loop {
        let sub = Subgroup::generated(group, &gens.iter().copied().collect::<Vec<_>>());
        if sub.is_normal_in(group) {
            return sub;
        }
        for &u in sub.elements() {
            for &x in group.generator_indices() {
                gens.insert(group.conj(u, x));
            }
        }
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// All normal subgroups of `p`-power order, ordered by size then elements.
pub fn normal_p_subgroups(group: &FiniteGroup, p: u64) -> Vec<Subgroup> {
    let p = p as usize;
    let classes: Vec<Vec<usize>> = group
        .conjugacy_classes()
        .into_iter()
        .filter(|c| c[0] != 0 && is_power_of(group.elem_order(c[0]) as usize, p))
        .collect();
    let mut found: BTreeSet<Subgroup> = BTreeSet::from([Subgroup::trivial()]);
    let mut frontier = vec![Subgroup::trivial()];
    while let Some(n) = frontier.pop() {
        for c in &classes {
            if n.contains(c[0]) {
                continue;
            }
            let mut gens = n.elements().to_vec();
            gens.extend(c);
            let joined = normal_closure(group, &gens);
            if is_power_of(joined.order(), p) && found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// The quotient by a normal subgroup, realized on right cosets.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Image of each element of the ambient group.
    pub projection: Vec<usize>,
}

pub fn quotient(group: &FiniteGroup, normal: &Subgroup) -> Result<Quotient> {
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    // Coset of each element, numbered by least member.
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        for &u in normal.elements() {
            coset_of[group.mul(u, g)] = reps.len();
        }
        reps.push(g);
    }
    let action = |x: usize| -> Vec<u32> { reps.iter().map(|&r| coset_of[group.mul(r, x)] as u32).collect() };
    let gens: Vec<Vec<u32>> = group.generator_indices().iter().map(|&x| action(x)).collect();
    let q = FiniteGroup::close(reps.len(), gens, group.order().max(1))?;
    let projection =
        (0..group.order()).map(|g| q.index_of(&action(g)).expect("coset action lies in the closure")).collect();
    Ok(Quotient { group: q, projection })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallPair {
    pub block: usize,
    pub representative: usize,
    pub size: usize,
    pub quotient_block: usize,
    pub quotient_representative: usize,
    pub quotient_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub quotient_order: usize,
    pub p: u64,
    pub q: u64,
    pub pairs: Vec<HallPair>,
}

/// Pairs the orbits of `G` with those of `G/U` through the projection and
/// checks that this is a well-defined bijection.
pub fn hall_check(group: &FiniteGroup, normal: &Subgroup, p: u64, q: u64) -> Result<HallReport> {
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    if !is_power_of(normal.order(), p as usize) {
        return Err(Error::NotPGroup(normal.order()));
    }
    let orbits = galois_orbits(group, p, q)?;
    let quo = quotient(group, normal)?;
    let q_orbits = galois_orbits(&quo.group, p, q)?;
    let pairing = block_map(&orbits, &q_orbits, &quo.projection)?;
    let pairs = pairing
        .iter()
        .map(|(&b, &qb)| HallPair {
            block: b,
            representative: orbits.blocks()[b][0],
            size: orbits.blocks()[b].len(),
            quotient_block: qb,
            quotient_representative: q_orbits.blocks()[qb][0],
            quotient_size: q_orbits.blocks()[qb].len(),
        })
        .collect();
    Ok(HallReport {
        group_order: group.order(),
        subgroup_order: normal.order(),
        quotient_order: quo.group.order(),
        p,
        q,
        pairs,
    })
}

fn block_map(src: &OrbitPartition, dst: &OrbitPartition, proj: &[usize]) -> Result<BTreeMap<usize, usize>> {
    let mut map = BTreeMap::new();
    for (b, block) in src.blocks().iter().enumerate() {
        let mut image = None;
        for &g in block {
            let t = dst.block_of(proj[g]).ok_or_else(|| {
                Error::BijectionFailure(format!("element {g} maps outside the p-regular set of the quotient"))
            })?;
            match image {
                None => image = Some(t),
                Some(prev) if prev != t => {
                    return Err(Error::BijectionFailure(format!("block {b} meets quotient blocks {prev} and {t}")));
                }
                _ => {}
            }
        }
        map.insert(b, image.expect("blocks are nonempty"));
    }
    let hit: BTreeSet<usize> = map.values().copied().collect();
    if hit.len() != map.len() {
        return Err(Error::BijectionFailure("two blocks share an image".into()));
    }
    if hit.len() != dst.len() {
        return Err(Error::BijectionFailure(format!("{} of {} quotient blocks are hit", hit.len(), dst.len())));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite::close_group;
    use crate::groups::perm::from_cycles;

    fn s3() -> FiniteGroup {
        close_group(3, vec![from_cycles(3, &[&[0, 1]]), from_cycles(3, &[&[0, 1, 2]])]).unwrap()
    }

    #[test]
    fn s3_mod_a3() {
        let g = s3();
        let a3 = Subgroup::generated(&g, &[g.index_of(&from_cycles(3, &[&[0, 1, 2]])).unwrap()]);
        assert_eq!(a3.order(), 3);
        let r = hall_check(&g, &a3, 3, 3).unwrap();
        assert_eq!(r.quotient_order, 2);
        assert_eq!(r.pairs.len(), 2);
        let trivial = hall_check(&g, &Subgroup::trivial(), 3, 3).unwrap();
        assert!(trivial.pairs.iter().all(|p| p.block == p.quotient_block));
    }

    #[test]
    fn rejects_bad_subgroups() {
        let g = s3();
        let c2 = Subgroup::generated(&g, &[g.index_of(&from_cycles(3, &[&[0, 1]])).unwrap()]);
        assert_eq!(hall_check(&g, &c2, 2, 2).unwrap_err(), Error::NotNormal);
        assert_eq!(hall_check(&g, &Subgroup::whole(&g), 2, 2).unwrap_err(), Error::NotPGroup(6));
    }

    #[test]
    fn normal_p_subgroups_of_small_groups() {
        let g = s3();
        assert_eq!(normal_p_subgroups(&g, 3).len(), 2);
        assert_eq!(normal_p_subgroups(&g, 2).len(), 1);
        let c4 = close_group(4, vec![from_cycles(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(normal_p_subgroups(&c4, 2).len(), 3);
        let r = hall_check(&c4, &normal_p_subgroups(&c4, 2)[1], 2, 2).unwrap();
        assert_eq!(r.pairs.len(), 1);
    }
}
