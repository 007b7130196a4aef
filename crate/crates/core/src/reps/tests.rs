use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::exactnum::cyclo::CycloNum;
use crate::exactnum::field::{make_field, FiniteField};
use crate::exactnum::laurent::LaurentPoly;
use crate::exactnum::matrix::FFMatrix;
use crate::exec::Exec;
use crate::groups::catalog::{cyclic, symmetric};
use crate::groups::finite::{close_group, FiniteGroup};
use crate::groups::orbits::galois_orbits;
use crate::groups::perm::from_cycles;

fn mat(field: &FiniteField, rows: &[&[i64]]) -> FFMatrix {
    FFMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x).0).collect()).collect(), rows.len())
}

fn ctx_for(group: &FiniteGroup, field: &FiniteField) -> BrauerContext {
    BrauerContext::new(field, group.p_prime_exponent(field.characteristic() as u64)).unwrap()
}

fn sign_rep(group: Arc<FiniteGroup>, field: &FiniteField) -> Rep {
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            // A k-cycle is a product of k - 1 transpositions.
            let mut seen = vec![false; g.len()];
            let mut transpositions = 0;
            for s in 0..g.len() {
                let mut len = 0;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = g[x] as usize;
                    len += 1;
                }
                if len > 0 {
                    transpositions += len - 1;
                }
            }
            mat(field, &[&[if transpositions % 2 == 0 { 1 } else { -1 }]])
        })
        .collect();
    Rep::new(group, field.clone(), 1, gens).unwrap()
}

pub fn s3_reflection(field: &FiniteField) -> Rep {
    let g = Arc::new(symmetric(3));
    Rep::new(g, field.clone(), 2, vec![mat(field, &[&[0, 1], &[1, 0]]), mat(field, &[&[0, 1], &[-1, -1]])]).unwrap()
}

#[test]
fn trivial_and_regular_characters() {
    let f3 = make_field(3, 1).unwrap();
    let c2 = Arc::new(cyclic(2));
    let ctx = ctx_for(&c2, &f3);
    let triv = brauer_character(&ctx, &Rep::trivial(c2.clone(), f3.clone(), 3), Exec::Sequential).unwrap();
    assert!(triv.values().values().all(|v| *v == CycloNum::from_int(2, 3)));
    let reg = brauer_character(&ctx, &Rep::regular(c2.clone(), f3.clone()), Exec::Sequential).unwrap();
    assert_eq!(reg.value(0).unwrap(), &CycloNum::from_int(2, 2));
    assert!(reg.value(1).unwrap().is_zero());
}

#[test]
fn cubic_module_of_c7() {
    let f2 = make_field(2, 1).unwrap();
    let c7 = Arc::new(cyclic(7));
    let comp = mat(&f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
    let rep = Rep::new(c7.clone(), f2.clone(), 3, vec![comp]).unwrap();
    let ctx = ctx_for(&c7, &f2);
    let chi = brauer_character(&ctx, &rep, Exec::Parallel).unwrap();
    let g = c7.generator_indices()[0];
    assert_eq!(chi.value(g).unwrap(), &CycloNum::from_root_counts(7, &[0, 1, 1, 0, 1]));
}

#[test]
fn tensor_exterior_and_sums() {
    let f3 = make_field(3, 1).unwrap();
    let c2 = Arc::new(cyclic(2));
    let ctx = ctx_for(&c2, &f3);
    let sign = Rep::new(c2.clone(), f3.clone(), 1, vec![mat(&f3, &[&[-1]])]).unwrap();
    let ss = brauer_character(&ctx, &sign.tensor(&sign).unwrap(), Exec::Sequential).unwrap();
    assert!(ss.values().values().all(CycloNum::is_one));

    let v = Rep::new(c2.clone(), f3.clone(), 2, vec![mat(&f3, &[&[-1, 0], &[0, -1]])]).unwrap();
    let lam2 = v.exterior_power(2).unwrap();
    assert_eq!(lam2.dim(), 1);
    assert!(brauer_value(&ctx, &lam2, 1).unwrap().is_one());
    let lam0 = v.exterior_power(0).unwrap();
    assert_eq!(lam0.dim(), 1);
    assert!(brauer_value(&ctx, &lam0, 1).unwrap().is_one());

    let sum = sign.direct_sum(&v).unwrap();
    let a = brauer_character(&ctx, &sum, Exec::Sequential).unwrap();
    let b = brauer_character(&ctx, &sign, Exec::Sequential)
        .unwrap()
        .add(&brauer_character(&ctx, &v, Exec::Sequential).unwrap())
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn psi_and_centralizers() {
    let f3 = make_field(3, 1).unwrap();
    let model = ModelGN::new(s3_reflection(&f3)).unwrap();
    let t = model.group().generator_indices()[0];
    assert_eq!(model.psi(0).unwrap(), LaurentPoly::from_ints(2, 0, &[1, -2, 1]));
    assert_eq!(model.psi(t).unwrap(), LaurentPoly::from_ints(2, 0, &[1, 0, -1]));
    assert_eq!(model.psi(t).unwrap(), model.psi_from_eigenvalues(t).unwrap());
    assert_eq!(model.centralizer_dim(t).unwrap(), 1);
    assert_eq!(model.centralizer_dim(0).unwrap(), 2);

    let c2 = Arc::new(cyclic(2));
    let v = Rep::new(c2, f3.clone(), 2, vec![mat(&f3, &[&[-1, 0], &[0, -1]])]).unwrap();
    let model = ModelGN::new(v).unwrap();
    assert_eq!(model.centralizer_dim(1).unwrap(), 0);
    let s0 = model.s_filtration(0).unwrap();
    assert_eq!(s0.count, 1);
    assert_eq!(model.s_filtration(2).unwrap().count, 2);
    assert_eq!(model.finite_radical_regular_part().unwrap(), vec![0]);
}

#[test]
fn induced_class_functions() {
    let f5 = make_field(5, 1).unwrap();
    let s3 = Arc::new(symmetric(3));
    let c2 = close_group(3, vec![from_cycles(3, &[&[0, 1]])]).unwrap();
    let t_small = c2.generator_indices()[0];
    let indicator =
        ClassFunction::from_values(5, 2, BTreeMap::from([(0, CycloNum::zero(2)), (t_small, CycloNum::one(2))]));
    let ind = induce_class_function(&indicator, &c2, &s3).unwrap();
    for (&g, v) in ind.values() {
        let expect = if s3.elem_order(g) == 2 { 1 } else { 0 };
        assert_eq!(v, &CycloNum::from_int(2, expect));
    }
    let ones = ClassFunction::constant(&c2, 5, 2, &CycloNum::one(2));
    let perm_char = induce_class_function(&ones, &c2, &s3).unwrap();
    assert_eq!(perm_char.value(0).unwrap(), &CycloNum::from_int(2, 3));

    // Agreement with the character of the induced module.
    let sign_small = Rep::new(Arc::new(c2.clone()), f5.clone(), 1, vec![mat(&f5, &[&[-1]])]).unwrap();
    let ctx_small = ctx_for(&c2, &f5);
    let ctx_big = ctx_for(&s3, &f5);
    let chi_small = brauer_character(&ctx_small, &sign_small, Exec::Sequential).unwrap();
    let induced_rep = sign_small.induce(&s3).unwrap();
    let chi_big = brauer_character(&ctx_big, &induced_rep, Exec::Sequential).unwrap();
    let formula = induce_class_function(&chi_small, &c2, &s3).unwrap();
    for (g, v) in chi_big.values() {
        assert_eq!(v, formula.value(*g).unwrap());
    }
}

#[test]
fn span_ranks() {
    let f3 = make_field(3, 1).unwrap();
    let s3 = Arc::new(symmetric(3));
    let ctx = ctx_for(&s3, &f3);
    let orbits = galois_orbits(&s3, 3, 3).unwrap();
    let triv = brauer_character(&ctx, &Rep::trivial(s3.clone(), f3.clone(), 1), Exec::Sequential).unwrap();
    let sign = brauer_character(&ctx, &sign_rep(s3.clone(), &f3), Exec::Sequential).unwrap();
    assert_eq!(char_span_rank(&[triv.clone(), sign], &orbits).unwrap(), 2);
    assert_eq!(char_span_rank(&[triv], &orbits).unwrap(), 1);

    let f2 = make_field(2, 1).unwrap();
    let c7 = Arc::new(cyclic(7));
    let ctx = ctx_for(&c7, &f2);
    let orbits = galois_orbits(&c7, 2, 2).unwrap();
    let cubic_a = Rep::new(c7.clone(), f2.clone(), 3, vec![mat(&f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]])]).unwrap();
    let cubic_b = Rep::new(c7.clone(), f2.clone(), 3, vec![mat(&f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 1]])]).unwrap();
    let chars: Vec<_> = [Rep::trivial(c7.clone(), f2.clone(), 1), cubic_a, cubic_b]
        .iter()
        .map(|r| brauer_character(&ctx, r, Exec::Sequential).unwrap())
        .collect();
    assert_eq!(char_span_rank(&chars, &orbits).unwrap(), 3);
}

#[test]
fn frobenius_and_field_extension_invariance() {
    let f2 = make_field(2, 1).unwrap();
    let c7 = Arc::new(cyclic(7));
    let rep = Rep::new(c7.clone(), f2.clone(), 3, vec![mat(&f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]])]).unwrap();
    let ctx = ctx_for(&c7, &f2);
    let chi = brauer_character(&ctx, &rep, Exec::Sequential).unwrap();
    for (&g, v) in chi.values() {
        assert_eq!(chi.value(c7.pow(g, 2)).unwrap(), v);
    }
    let f8 = make_field(2, 3).unwrap();
    let big = rep.extend_scalars(&f8, &f2.embedding_into(&f8).unwrap());
    let ctx8 = ctx_for(&c7, &f8);
    // Both contexts use the same k' = GF(8) and the same root of unity.
    assert_eq!(ctx8.omega(), ctx.omega());
    assert_eq!(brauer_character(&ctx8, &big, Exec::Sequential).unwrap(), chi);
}

#[test]
fn extensions_are_additive() {
    let f3 = make_field(3, 1).unwrap();
    let c2 = Arc::new(cyclic(2));
    let ctx = ctx_for(&c2, &f3);
    let triv = Rep::trivial(c2.clone(), f3.clone(), 1);
    let sign = Rep::new(c2.clone(), f3.clone(), 1, vec![mat(&f3, &[&[-1]])]).unwrap();
    // [[-1, 1], [0, 1]] squares to the identity, so it glues sign over trivial.
    let ext = Rep::extension(&triv, &sign, &[mat(&f3, &[&[1]])]).unwrap();
    let total = brauer_character(&ctx, &ext, Exec::Sequential).unwrap();
    let parts = brauer_character(&ctx, &triv, Exec::Sequential)
        .unwrap()
        .add(&brauer_character(&ctx, &sign, Exec::Sequential).unwrap())
        .unwrap();
    assert_eq!(total, parts);
    assert!(Rep::new(c2, f3.clone(), 1, vec![mat(&f3, &[&[2]])]).is_ok());
}
