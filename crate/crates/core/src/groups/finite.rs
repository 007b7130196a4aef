//! Finite permutation groups enumerated by breadth-first closure.

use std::collections::HashMap;

use super::perm::{self, Perm};
use crate::error::{Error, Result};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A finite group given by generating permutations, with every element
/// enumerated. Element 0 is the identity; elements are referred to by index.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    n_points: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// Closure tree: element `e` equals `parent[e]` times generator `via[e]`.
    parent: Vec<(usize, usize)>,
    gen_index: Vec<usize>,
    inverse: Vec<usize>,
    orders: Vec<u64>,
    table: Option<Vec<u32>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n_points == other.n_points && self.generators == other.generators
    }
}

impl Eq for FiniteGroup {}

pub fn close_group(n_points: usize, generators: Vec<Perm>) -> Result<FiniteGroup> {
    FiniteGroup::close(n_points, generators, DEFAULT_MAX_ORDER)
}

impl FiniteGroup {
    pub fn close(n_points: usize, generators: Vec<Perm>, max_order: usize) -> Result<FiniteGroup> {
        for g in &generators {
            perm::validate(g, n_points)?;
        }
        let id = perm::identity(n_points);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![(0usize, usize::MAX)];
        let mut head = 0;
        while head < elements.len() {
            for (k, g) in generators.iter().enumerate() {
                let next = perm::compose(&elements[head], g);
                if !index.contains_key(&next) {
                    if elements.len() >= max_order {
                        return Err(Error::TooLarge(max_order));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    parent.push((head, k));
                }
            }
            head += 1;
        }
        let gen_index = generators.iter().map(|g| index[g]).collect();
        let inverse = elements.iter().map(|e| index[&perm::inverse(e)]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (a, pa) in elements.iter().enumerate() {
                for (b, pb) in elements.iter().enumerate() {
                    t[a * n + b] = index[&perm::compose(pa, pb)] as u32;
                }
            }
            t
        });
        let mut group = FiniteGroup {
            n_points,
            generators,
            elements,
            index,
            parent,
            gen_index,
            inverse,
            orders: Vec::new(),
            table,
        };
        group.orders = (0..n).map(|e| group.compute_order(e)).collect();
        Ok(group)
    }

    fn compute_order(&self, e: usize) -> u64 {
        let mut k = 1;
        let mut cur = e;
        while cur != 0 {
            cur = self.mul(cur, e);
            k += 1;
        }
        k
    }

    pub fn trivial() -> FiniteGroup {
        close_group(1, Vec::new()).expect("trivial group")
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn element(&self, e: usize) -> &Perm {
        &self.elements[e]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `a` then `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&perm::compose(&self.elements[a], &self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let o = self.orders[a] as i64;
        let e = e.rem_euclid(o);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `x^-1 g x`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn elem_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    /// Generator indices whose product, left to right, equals `e`.
    pub fn word(&self, e: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = e;
        while cur != 0 {
            let (par, via) = self.parent[cur];
            w.push(via);
            cur = par;
        }
        w.reverse();
        w
    }

    /// Closure tree entry: `e = parent * generator`, `None` for the identity.
    pub fn tree_parent(&self, e: usize) -> Option<(usize, usize)> {
        (e != 0).then(|| self.parent[e])
    }

    /// Product of a word of generator indices.
    pub fn eval_word(&self, word: &[usize]) -> Result<usize> {
        word.iter().try_fold(0usize, |acc, &k| {
            let g = *self
                .gen_index
                .get(k)
                .ok_or_else(|| Error::InvalidInput(format!("generator index {k} out of range")))?;
            Ok(self.mul(acc, g))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.gen_index.iter().all(|&a| self.gen_index.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes ordered by least element, each sorted ascending.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![start];
            class_of[start] = id;
            let mut head = 0;
            while head < class.len() {
                let g = class[head];
                for &x in &self.gen_index {
                    let c = self.conj(g, x);
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        class.push(c);
                    }
                }
                head += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// `(s, u)` with `s` of order prime to `p`, `u` of `p`-power order and
    /// `g = s u = u s`; both are powers of `g`.
    pub fn p_regular_part(&self, g: usize, p: u64) -> (usize, usize) {
        let o = self.orders[g];
        let mut op = 1;
        let mut rest = o;
        while rest.is_multiple_of(p) {
            rest /= p;
            op *= p;
        }
        // a = 1 mod rest, a = 0 mod op.
        let a = (0..o).step_by(op as usize).find(|&a| a % rest == 1 % rest).unwrap_or(0);
        let s = self.pow(g, a as i64);
        let u = self.pow(g, 1 - a as i64);
        (s, u)
    }

    pub fn is_p_regular(&self, g: usize, p: u64) -> bool {
        !self.orders[g].is_multiple_of(p)
    }

    /// Elements of order prime to `p`, ascending.
    pub fn p_regular_set(&self, p: u64) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.is_p_regular(g, p)).collect()
    }

    /// The `p'`-part of the exponent.
    pub fn p_prime_exponent(&self, p: u64) -> u64 {
        let mut e = self.exponent();
        while e.is_multiple_of(p) {
            e /= p;
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::perm::from_cycles;

    pub fn s3() -> FiniteGroup {
        close_group(3, vec![from_cycles(3, &[&[0, 1]]), from_cycles(3, &[&[0, 1, 2]])]).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(FiniteGroup::trivial().order(), 1);
        assert_eq!(s3().order(), 6);
        let c7 = close_group(7, vec![from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]])]).unwrap();
        assert_eq!(c7.order(), 7);
        assert!(c7.is_abelian());
        assert!(!s3().is_abelian());
        let too_big = FiniteGroup::close(3, vec![from_cycles(3, &[&[0, 1]]), from_cycles(3, &[&[0, 1, 2]])], 4);
        assert_eq!(too_big.unwrap_err(), Error::TooLarge(4));
    }

    #[test]
    fn words_evaluate_back() {
        let g = s3();
        for e in 0..g.order() {
            assert_eq!(g.eval_word(&g.word(e)).unwrap(), e);
        }
    }

    #[test]
    fn classes_of_s3() {
        let g = s3();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(g.conjugacy_classes()[0], vec![0]);
    }

    #[test]
    fn p_regular_parts() {
        let s5 = close_group(5, vec![from_cycles(5, &[&[0, 1]]), from_cycles(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        let g = s5.index_of(&from_cycles(5, &[&[0, 1], &[2, 3, 4]])).unwrap();
        let (s, u) = s5.p_regular_part(g, 3);
        assert_eq!(s5.element(s), &from_cycles(5, &[&[0, 1]]));
        assert_eq!(s5.element(u), &from_cycles(5, &[&[2, 3, 4]]));
        assert_eq!(s5.p_regular_set(5).len(), 120 - 24);
        assert_eq!(s3().p_regular_set(3).len(), 4);
    }
}
