//! Monomials in a fixed basis of `V` and their images under linear maps.

use std::collections::{BTreeMap, HashMap};

use crate::exactnum::field::FiniteField;
use crate::exactnum::matrix::FFMatrix;

pub type Exponents = Vec<u32>;

/// All exponent vectors of total degree `n` in `d` variables, in
/// lexicographically decreasing order.
pub fn monomials(d: usize, n: u32) -> Vec<Exponents> {
    fn rec(i: usize, d: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == d {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, d, left - e, cur, out);
        }
    }
    if d == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d, n, &mut vec![0; d], &mut out);
    out
}

/// Position lookup for a list of monomials.
pub fn monomial_index(monos: &[Exponents]) -> HashMap<Exponents, usize> {
    monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

/// Image of `x^mu` under `x_i -> sum_j mat[i][j] x_j`, as a sparse polynomial.
pub fn substitute(field: &FiniteField, mat: &FFMatrix, mu: &[u32]) -> BTreeMap<Exponents, u32> {
    let d = mu.len();
    let mut poly: BTreeMap<Exponents, u32> = BTreeMap::from([(vec![0; d], 1)]);
    for (i, &e) in mu.iter().enumerate() {
        for _ in 0..e {
            let mut next: BTreeMap<Exponents, u32> = BTreeMap::new();
            for (mono, &c) in &poly {
                for j in 0..d {
                    let a = mat.get(i, j).0;
                    if a == 0 {
                        continue;
                    }
                    let mut m2 = mono.clone();
                    m2[j] += 1;
                    let entry = next.entry(m2).or_insert(0);
                    *entry = field.add_raw(*entry, field.mul_raw(c, a));
                }
            }
            next.retain(|_, c| *c != 0);
            poly = next;
        }
    }
    poly
}

/// Variables of `mu` listed with multiplicity, in increasing index order.
pub fn variables(mu: &[u32]) -> Vec<usize> {
    mu.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
