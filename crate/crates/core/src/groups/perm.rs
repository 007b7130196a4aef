//! Permutations of `0..n` acting on the right: `x^(ab) = (x^a)^b`.

use crate::error::{Error, Result};

pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn validate(p: &[u32], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::InvalidInput(format!("permutation of length {} on {n} points", p.len())));
    }
    let mut seen = vec![false; n];
    for &x in p {
        let x = x as usize;
        if x >= n || seen[x] {
            return Err(Error::InvalidInput(format!("{p:?} is not a bijection of 0..{n}")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// The product `a` then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Builds a permutation from disjoint cycles.
pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Perm {
    let mut p = identity(n);
    for c in cycles {
        for (k, &x) in c.iter().enumerate() {
            p[x as usize] = c[(k + 1) % c.len()];
        }
    }
    p
}

/// Disjoint cycle notation, omitting fixed points; `()` for the identity.
pub fn cycle_string(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_composition() {
        let a = from_cycles(3, &[&[0, 1]]);
        let b = from_cycles(3, &[&[1, 2]]);
        // 0 -a-> 1 -b-> 2.
        assert_eq!(compose(&a, &b)[0], 2);
        assert_eq!(compose(&a, &inverse(&a)), identity(3));
        assert_eq!(cycle_string(&compose(&a, &b)), "(0 2 1)");
        assert!(validate(&[0, 0, 1], 3).is_err());
    }
}
