//! Built-in small groups and conversion of matrix groups to permutation groups.

use super::finite::{close_group, FiniteGroup};
use super::perm::{self, from_cycles, Perm};
use crate::error::{Error, Result};
use crate::exactnum::field::{FFElem, FiniteField};
use crate::exactnum::matrix::FFMatrix;

pub fn cyclic(n: usize) -> FiniteGroup {
    if n <= 1 {
        return FiniteGroup::trivial();
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    close_group(n, vec![from_cycles(n, &[&cycle])]).expect("cyclic group")
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 2, "dihedral groups need n >= 2");
    let rot: Perm = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let refl: Perm = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    close_group(n, vec![refl, rot]).expect("dihedral group")
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n <= 1 {
        return FiniteGroup::trivial();
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    close_group(n, vec![from_cycles(n, &[&[0, 1]]), from_cycles(n, &[&cycle])]).expect("symmetric group")
}

pub fn alternating4() -> FiniteGroup {
    close_group(4, vec![from_cycles(4, &[&[0, 1, 2]]), from_cycles(4, &[&[0, 1], &[2, 3]])]).expect("A4")
}

/// `C3 : C4` with the generator of order 4 inverting the normal `C3`.
pub fn dicyclic3() -> FiniteGroup {
    close_group(7, vec![from_cycles(7, &[&[0, 1, 2]]), from_cycles(7, &[&[1, 2], &[3, 4, 5, 6]])]).expect("Dic3")
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.n_points(), b.n_points());
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut p = g.clone();
        p.extend((0..nb as u32).map(|x| x + na as u32));
        gens.push(p);
    }
    for g in b.generators() {
        let mut p = perm::identity(na);
        p.extend(g.iter().map(|&x| x + na as u32));
        gens.push(p);
    }
    close_group(na + nb, gens).expect("direct product of finite groups")
}

/// The permutation action of invertible matrices on row vectors of `F^n`,
/// with vectors numbered by their base-`q` digit encoding.
pub fn matrix_group(field: &FiniteField, gens: &[FFMatrix], max_order: usize) -> Result<FiniteGroup> {
    let n = gens.first().map_or(0, FFMatrix::rows);
    if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::DimMismatch("matrix generators of different sizes".into()));
    }
    for g in gens {
        if g.det(field).is_zero() {
            return Err(Error::InvalidInput("singular matrix generator".into()));
        }
    }
    let q = field.order() as usize;
    let points = q.checked_pow(n as u32).filter(|&c| c <= max_order).ok_or(Error::TooLarge(max_order))?;
    let decode = |mut code: usize| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let d = code % q;
                code /= q;
                d as u32
            })
            .collect()
    };
    let encode = |v: &[u32]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * q + d as usize) };
    let perms =
        gens.iter().map(|g| (0..points).map(|x| encode(&g.vec_mul(field, &decode(x))) as u32).collect()).collect();
    FiniteGroup::close(points, perms, max_order)
}

fn gl23_gens(field: &FiniteField, special: bool) -> Vec<FFMatrix> {
    let m = |rows: [[i64; 2]; 2]| {
        FFMatrix::from_elems(&rows.map(|r| r.map(|x| field.from_i64(x)).to_vec())).expect("2x2 matrix")
    };
    let mut gens = vec![m([[1, 1], [0, 1]]), m([[1, 0], [1, 1]])];
    if !special {
        gens.push(m([[-1, 0], [0, 1]]));
    }
    gens
}

/// Named groups of order at most 48, each paired with its name.
pub fn builtin_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in [1usize, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 18, 24] {
        out.push((format!("C{n}"), cyclic(n)));
    }
    for n in [2usize, 3, 4, 5, 6, 8, 9, 12] {
        out.push((format!("D{n}"), dihedral(n)));
    }
    let f3 = crate::exactnum::field::make_field(3, 1).expect("F3");
    let c2 = cyclic(2);
    let c3 = cyclic(3);
    let s3 = symmetric(3);
    let a4 = alternating4();
    let s4 = symmetric(4);
    out.push(("S3".into(), s3.clone()));
    out.push(("S4".into(), s4.clone()));
    out.push(("A4".into(), a4.clone()));
    out.push(("Q8".into(), quaternion8()));
    out.push(("Dic3".into(), dicyclic3()));
    out.push(("C2xC2".into(), direct_product(&c2, &c2)));
    out.push(("C2xC2xC2".into(), direct_product(&direct_product(&c2, &c2), &c2)));
    out.push(("C3xC3".into(), direct_product(&c3, &c3)));
    out.push(("C2xC4".into(), direct_product(&c2, &cyclic(4))));
    out.push(("C2xS3".into(), direct_product(&c2, &s3)));
    out.push(("C3xS3".into(), direct_product(&c3, &s3)));
    out.push(("S3xS3".into(), direct_product(&s3, &s3)));
    out.push(("C2xA4".into(), direct_product(&c2, &a4)));
    out.push(("C4xS3".into(), direct_product(&cyclic(4), &s3)));
    out.push(("C2xQ8".into(), direct_product(&c2, &quaternion8())));
    out.push(("C2xD4".into(), direct_product(&c2, &dihedral(4))));
    out.push(("C2xS4".into(), direct_product(&c2, &s4)));
    out.push(("SL(2,3)".into(), matrix_group(&f3, &gl23_gens(&f3, true), 1000).expect("SL(2,3)")));
    out.push(("GL(2,3)".into(), matrix_group(&f3, &gl23_gens(&f3, false), 1000).expect("GL(2,3)")));
    out
}

/// Quaternion group as the subgroup of SL(2,3) generated by two elements of order 4.
pub fn quaternion8() -> FiniteGroup {
    let f3 = crate::exactnum::field::make_field(3, 1).expect("F3");
    let i = FFMatrix::from_rows(vec![vec![0, 1], vec![2, 0]], 2);
    let j = FFMatrix::from_rows(vec![vec![1, 1], vec![1, 2]], 2);
    matrix_group(&f3, &[i, j], 100).expect("Q8")
}

/// Looks up a built-in group by name, e.g. `C7`, `D4`, `S3`, `GL(2,3)`.
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=4096).contains(&n) {
            return Ok(cyclic(n));
        }
    }
    if let Some(n) = name.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
        if (2..=2048).contains(&n) {
            return Ok(dihedral(n));
        }
    }
    builtin_groups()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, g)| g)
        .ok_or_else(|| Error::InvalidInput(format!("unknown group name {name:?}")))
}

/// The element of `F^n` with the given digits, for tests and fixtures.
pub fn vector_code(field: &FiniteField, v: &[FFElem]) -> usize {
    let q = field.order() as usize;
    v.iter().rev().fold(0, |acc, d| acc * q + d.0 as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let expected = [
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("Q8", 8),
            ("Dic3", 12),
            ("SL(2,3)", 24),
            ("GL(2,3)", 48),
            ("C2xS4", 48),
            ("S3xS3", 36),
            ("D4", 8),
            ("C24", 24),
        ];
        let all = builtin_groups();
        for (name, order) in expected {
            let g = &all.iter().find(|(n, _)| n == name).unwrap().1;
            assert_eq!(g.order(), order, "{name}");
        }
        assert!(all.iter().all(|(_, g)| g.order() <= 48));
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = quaternion8();
        assert_eq!((0..8).filter(|&e| q8.elem_order(e) == 2).count(), 1);
        assert!(!q8.is_abelian());
        let dic = dicyclic3();
        assert_eq!((0..12).filter(|&e| dic.elem_order(e) == 2).count(), 1);
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("C7").unwrap().order(), 7);
        assert_eq!(by_name("D4").unwrap().order(), 8);
        assert_eq!(by_name("GL(2,3)").unwrap().order(), 48);
        assert!(by_name("nonsense").is_err());
    }
}
