use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use iwachar::exactnum::{make_field, CycloNum, FFElem, FFMatrix, LaurentPoly, RatFuncT, RootTable};
use iwachar::exec::Exec;
use iwachar::fixtures;
use iwachar::groups::catalog::builtin_groups;
use iwachar::groups::finite::FiniteGroup;
use iwachar::groups::orbits::galois_orbits;
use iwachar::groups::subgroup::normal_p_subgroups;
use iwachar::properties;
use iwachar::reps::classfn::{brauer_character, char_span_rank};
use iwachar::reps::context::BrauerContext;
use iwachar::reps::model::ModelGN;
use iwachar::reps::rep::Rep;
use iwachar::skewgraded::{build_module, presentations, series, ModuleAnalysis, Settings};

const FIELDS: [(u64, u32); 8] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4)];

fn small_groups() -> Vec<FiniteGroup> {
    builtin_groups().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 48).collect()
}

fn poly(m: u64, lo: i64, coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_ints(m, lo, coeffs)
}

/// An invertible matrix over GF(p^s) built from a unit lower and a unit upper triangle.
fn invertible(field: &iwachar::exactnum::FiniteField, n: usize, seed: &[u32]) -> FFMatrix {
    let q = field.order();
    let mut lower = FFMatrix::identity(n);
    let mut upper = FFMatrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            let x = FFElem(seed[k % seed.len()] % q);
            k += 1;
            if i > j {
                lower.set(i, j, x);
            } else if i < j {
                upper.set(i, j, x);
            }
        }
    }
    lower.mul(field, &upper)
}

proptest! {
    #[test]
    fn field_axioms(f in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (p, s) = FIELDS[f];
        let field = make_field(p, s).unwrap();
        let q = field.order();
        properties::field_axioms(&field, FFElem(a % q), FFElem(b % q), FFElem(c % q)).unwrap();
    }

    #[test]
    fn lifts_are_homomorphisms(f in 0..FIELDS.len(), a in 0u64..1000, b in 0u64..1000) {
        let (p, s) = FIELDS[f];
        let field = make_field(p, s).unwrap();
        let m = u64::from(field.order()) - 1;
        let table = RootTable::new(&field, field.primitive_root_of_unity(m).unwrap(), m).unwrap();
        properties::lift_is_homomorphism(&table, a, b).unwrap();
    }

    #[test]
    fn reconstruction_inverts_expansion(
        coeffs in prop::collection::vec(-5i64..=5, 1..6),
        lo in -2i64..3,
        m in 1u64..5,
        delta in 0u32..3,
        guard in 1u32..4,
    ) {
        let f = RatFuncT::new(poly(m, lo, &coeffs), m, delta);
        properties::reconstruct_inverts_expand(&f, guard).unwrap();
    }

    #[test]
    fn eval_without_denominator_is_substitution(
        a in prop::collection::vec(-9i64..=9, 0..6),
        b in prop::collection::vec(-9i64..=9, 0..6),
        shift in -3i64..3,
    ) {
        properties::eval_matches_substitution(&poly(3, shift, &a), &poly(3, 0, &b)).unwrap();
    }

    #[test]
    fn rational_arithmetic_in_cyclotomic_fields(
        a in prop::collection::vec(-4i64..=4, 6),
        b in prop::collection::vec(-4i64..=4, 6),
    ) {
        let x = CycloNum::from_root_counts(7, &a);
        let y = CycloNum::from_root_counts(7, &b);
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        if let Some(inv) = x.inv() {
            prop_assert!(inv.mul(&x).is_one());
        }
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        prop_assert_eq!(x.scale(&half).scale_int(2), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn p_regular_decomposition(gi in 0usize..64, pi in 0usize..3, gsel in any::<usize>()) {
        let groups = small_groups();
        let group = &groups[gi % groups.len()];
        let p = [2u64, 3, 5][pi];
        properties::p_regular_part_unique(group, gsel % group.order(), p).unwrap();
        properties::regular_set_is_image(group, p).unwrap();
    }

    #[test]
    fn galois_orbits_are_invariant(gi in 0usize..64, f in 0..FIELDS.len()) {
        let groups = small_groups();
        let group = &groups[gi % groups.len()];
        let (p, s) = FIELDS[f];
        properties::orbits_are_invariant(group, p, p.pow(s)).unwrap();
    }

    #[test]
    fn eigenvalues_are_frobenius_stable(gi in 0usize..64, f in 0..FIELDS.len(), seed in prop::collection::vec(any::<u32>(), 9)) {
        let groups = small_groups();
        let group = Arc::new(groups[gi % groups.len()].clone());
        let (p, s) = FIELDS[f];
        let field = make_field(p, s).unwrap();
        let perm = Rep::permutation(Arc::clone(&group), field.clone());
        let n = perm.dim();
        let conj = invertible(&field, n, &seed);
        let conj_inv = conj.inverse(&field).unwrap();
        let ctx = BrauerContext::new(&field, group.p_prime_exponent(p)).unwrap();
        for g in group.p_regular_set(p) {
            let mat = conj_inv.mul(&field, perm.matrix(g)).mul(&field, &conj);
            properties::eigen_frobenius_stable(ctx.ext(), &ctx.embed_matrix(&mat), ctx.roots(), u64::from(field.order())).unwrap();
        }
    }

    #[test]
    fn brauer_characters_are_frobenius_invariant(gi in 0usize..64, f in 0..FIELDS.len()) {
        let groups = small_groups();
        let group = Arc::new(groups[gi % groups.len()].clone());
        let (p, s) = FIELDS[f];
        let field = make_field(p, s).unwrap();
        let q = u64::from(field.order());
        let ctx = BrauerContext::new(&field, group.p_prime_exponent(p)).unwrap();
        let perm = Rep::permutation(Arc::clone(&group), field.clone());
        let chi = brauer_character(&ctx, &perm, Exec::Sequential).unwrap();
        for (&g, v) in chi.values() {
            prop_assert_eq!(chi.value(group.pow(g, q as i64)).unwrap(), v);
            // A permutation character counts fixed points.
            let fixed = group.element(g).iter().enumerate().filter(|(i, &x)| *i == x as usize).count();
            prop_assert_eq!(v, &CycloNum::from_int(ctx.m(), fixed as i64));
        }
        let orbits = galois_orbits(&group, p, q).unwrap();
        prop_assert!(char_span_rank(&[chi], &orbits).unwrap() <= orbits.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn hall_bijection_for_normal_p_subgroups(gi in 0usize..64, pi in 0usize..2, s in 1u32..3) {
        let groups = small_groups();
        let group = &groups[gi % groups.len()];
        let p = [2u64, 3][pi];
        for normal in normal_p_subgroups(group, p) {
            properties::hall_bijection(group, &normal, p, p.pow(s)).unwrap();
        }
    }

    #[test]
    fn psi_shape_and_centralizers(f in 0usize..4, seed in prop::collection::vec(any::<u32>(), 4)) {
        let q = [3u64, 4, 5, 7][f];
        let ex = fixtures::s3_reflection(q).unwrap();
        let field = ex.model.field().clone();
        // Conjugating V by an invertible matrix gives an isomorphic model.
        let conj = invertible(&field, 2, &seed);
        let inv = conj.inverse(&field).unwrap();
        let gens = ex.model.v().generator_matrices().iter().map(|m| inv.mul(&field, m).mul(&field, &conj)).collect();
        let v = Rep::new(Arc::clone(ex.model.group()), field, 2, gens).unwrap();
        let model = ModelGN::new(v).unwrap();
        for g in model.orbits().representatives() {
            let psi = model.psi(g).unwrap();
            prop_assert_eq!(psi.max_degree(), Some(2));
            prop_assert!(psi.coeff(0).is_one());
            prop_assert_eq!(&psi, &ex.model.psi(g).unwrap());
            prop_assert_eq!(psi, model.psi_from_eigenvalues(g).unwrap());
            prop_assert_eq!(model.centralizer_dim(g).unwrap(), ex.model.centralizer_dim(g).unwrap());
        }
    }

    #[test]
    fn koszul_euler_characteristic_and_shift(which in 0usize..4, entry in 0usize..8, shift in -3i64..4) {
        let ex = [
            fixtures::s3_reflection(3),
            fixtures::klein_four(3, 3),
            fixtures::dihedral_abelian(5, 5),
            fixtures::heisenberg(1, 3, 3),
        ][which].clone().unwrap();
        let pres = &ex.catalog[entry % ex.catalog.len()].presentation;
        let settings = Settings { exec: Exec::Sequential, ..Settings::default() };
        let module = build_module(Arc::clone(&ex.model), pres, &settings).unwrap();
        let a = ModuleAnalysis::run(&module, &settings).unwrap();
        prop_assert!(a.euler_defects.is_empty());
        prop_assert!(a.tor.pieces.keys().all(|&(j, _)| j <= ex.model.d()));
        let shifted = module.shift(shift);
        for &g in &a.representatives {
            let s0 = series::zeta_series(&module, g, Exec::Sequential).unwrap();
            let s1 = series::zeta_series(&shifted, g, Exec::Sequential).unwrap();
            prop_assert_eq!(s1.shift(shift), s0);
        }
        let b = ModuleAnalysis::run(&shifted, &settings).unwrap();
        prop_assert_eq!(&a.rho, &b.rho);
        prop_assert_eq!(a.dimension, b.dimension);
    }

    #[test]
    fn unit_rescaled_relations_keep_rho(which in 0usize..3, unit in 1i64..5) {
        let ex = [fixtures::dihedral_abelian(5, 5), fixtures::klein_four(5, 5), fixtures::s3_reflection(5)][which]
            .clone()
            .unwrap();
        let field = ex.model.field().clone();
        let settings = Settings { exec: Exec::Sequential, ..Settings::default() };
        for e in &ex.catalog {
            let mut pres = e.presentation.clone();
            for rel in &mut pres.relations {
                for t in &mut rel.terms {
                    t.coeff = field.mul(FFElem(t.coeff), field.from_i64(unit)).0;
                }
            }
            let base = ModuleAnalysis::run(&build_module(Arc::clone(&ex.model), &e.presentation, &settings).unwrap(), &settings).unwrap();
            let scaled = ModuleAnalysis::run(&build_module(Arc::clone(&ex.model), &pres, &settings).unwrap(), &settings).unwrap();
            prop_assert_eq!(base.rho, scaled.rho);
        }
    }
}

#[test]
fn sym_of_a_line_matches_its_molien_series() {
    let ex = fixtures::dihedral_abelian(3, 3).unwrap();
    let settings = Settings { exec: Exec::Sequential, ..Settings::default() };
    let module = build_module(Arc::clone(&ex.model), &presentations::symmetric_algebra(&ex.model), &settings).unwrap();
    let series = series::zeta_series(&module, 1, Exec::Sequential).unwrap();
    for n in 0..=module.top_degree() {
        let expect = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(series.coeff(n), CycloNum::from_int(2, expect));
    }
}
