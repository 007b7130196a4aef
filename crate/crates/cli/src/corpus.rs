//! Seeded randomized corpus over the library's invariant checks.
//!
//! Instances are drawn from a ChaCha stream, so a seed fixes the whole run.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use iwachar::exactnum::{make_field, FFElem, FFMatrix, FiniteField, LaurentPoly, RatFuncT, RootTable};
use iwachar::groups::catalog::builtin_groups;
use iwachar::groups::{normal_p_subgroups, FiniteGroup};
use iwachar::properties;
use iwachar::reps::{BrauerContext, Rep};

const FIELDS: [(u64, u32); 9] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1)];

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub check: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub instances: usize,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
}

struct Runner {
    rng: ChaCha8Rng,
    checks: Vec<CheckSummary>,
}

impl Runner {
    fn run(&mut self, check: &'static str, count: usize, mut one: impl FnMut(&mut ChaCha8Rng) -> iwachar::Result<()>) {
        let mut failures = Vec::new();
        for _ in 0..count {
            if let Err(e) = one(&mut self.rng) {
                failures.push(e.to_string());
            }
        }
        self.checks.push(CheckSummary { check, instances: count, failures });
    }
}

fn random_field(rng: &mut ChaCha8Rng) -> FiniteField {
    let (p, s) = *FIELDS.choose(rng).expect("nonempty");
    make_field(p, s).expect("table fields are valid")
}

fn random_elem(rng: &mut ChaCha8Rng, field: &FiniteField) -> FFElem {
    FFElem(rng.gen_range(0..field.order()))
}

fn random_poly(rng: &mut ChaCha8Rng, m: u64) -> LaurentPoly {
    let len = rng.gen_range(1..6);
    let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
    LaurentPoly::from_ints(m, rng.gen_range(-3..4), &coeffs)
}

/// Conjugate of a permutation representation by a unit lower times unit upper matrix.
fn conjugated_permutation(rng: &mut ChaCha8Rng, group: &Arc<FiniteGroup>, field: &FiniteField) -> iwachar::Result<Rep> {
    let perm = Rep::permutation(Arc::clone(group), field.clone());
    let n = perm.dim();
    let (mut lower, mut upper) = (FFMatrix::identity(n), FFMatrix::identity(n));
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, random_elem(rng, field));
            upper.set(j, i, random_elem(rng, field));
        }
    }
    let conj = lower.mul(field, &upper);
    let inv =
        conj.inverse(field).ok_or_else(|| iwachar::Error::Internal("unitriangular product is singular".into()))?;
    let gens = perm.generator_matrices().iter().map(|m| inv.mul(field, m).mul(field, &conj)).collect();
    Rep::new(Arc::clone(group), field.clone(), n, gens)
}

/// Runs every check `rounds` times its base count.
pub fn run(seed: u64, rounds: usize) -> CorpusReport {
    let groups: Vec<Arc<FiniteGroup>> =
        builtin_groups().into_iter().filter(|(_, g)| g.order() <= 48).map(|(_, g)| Arc::new(g)).collect();
    let small: Vec<Arc<FiniteGroup>> = groups.iter().filter(|g| g.n_points() <= 8).cloned().collect();
    let mut r = Runner { rng: ChaCha8Rng::seed_from_u64(seed), checks: Vec::new() };

    r.run("field_axioms", 80 * rounds, |rng| {
        let field = random_field(rng);
        let (a, b, c) = (random_elem(rng, &field), random_elem(rng, &field), random_elem(rng, &field));
        properties::field_axioms(&field, a, b, c)
    });
    r.run("lift_is_homomorphism", 40 * rounds, |rng| {
        let field = random_field(rng);
        let m = u64::from(field.order()) - 1;
        let table = RootTable::new(&field, field.primitive_root_of_unity(m)?, m)?;
        properties::lift_is_homomorphism(&table, rng.gen_range(0..4 * m), rng.gen_range(0..4 * m))
    });
    r.run("reconstruct_inverts_expand", 40 * rounds, |rng| {
        let m = rng.gen_range(1..5);
        let f = RatFuncT::new(random_poly(rng, m), m, rng.gen_range(0..3));
        properties::reconstruct_inverts_expand(&f, rng.gen_range(1..4))
    });
    r.run("eval_matches_substitution", 40 * rounds, |rng| {
        let m = rng.gen_range(1..7);
        properties::eval_matches_substitution(&random_poly(rng, m), &random_poly(rng, m))
    });
    r.run("p_regular_part_unique", 100 * rounds, |rng| {
        let group = groups.choose(rng).expect("nonempty");
        let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
        properties::p_regular_part_unique(group, rng.gen_range(0..group.order()), p)
    });
    r.run("regular_set_is_image", 40 * rounds, |rng| {
        let group = groups.choose(rng).expect("nonempty");
        properties::regular_set_is_image(group, *[2u64, 3, 5].choose(rng).expect("nonempty"))
    });
    r.run("orbits_are_invariant", 40 * rounds, |rng| {
        let group = groups.choose(rng).expect("nonempty");
        let (p, s) = *FIELDS.choose(rng).expect("nonempty");
        properties::orbits_are_invariant(group, p, p.pow(s))
    });
    r.run("eigen_frobenius_stable", 20 * rounds, |rng| {
        let group = small.choose(rng).expect("nonempty");
        let field = random_field(rng);
        let p = u64::from(field.characteristic());
        let rep = conjugated_permutation(rng, group, &field)?;
        let ctx = BrauerContext::new(&field, group.p_prime_exponent(p))?;
        let regular = group.p_regular_set(p);
        let g = *regular.choose(rng).expect("identity is p-regular");
        properties::eigen_frobenius_stable(
            ctx.ext(),
            &ctx.embed_matrix(rep.matrix(g)),
            ctx.roots(),
            u64::from(field.order()),
        )
    });
    r.run("hall_bijection", 20 * rounds, |rng| {
        let group = groups.choose(rng).expect("nonempty");
        let p = *[2u64, 3].choose(rng).expect("nonempty");
        let q = p.pow(rng.gen_range(1..3));
        normal_p_subgroups(group, p).iter().try_for_each(|u| properties::hall_bijection(group, u, p, q))
    });

    let instances = r.checks.iter().map(|c| c.instances).sum();
    let passed = r.checks.iter().all(|c| c.failures.is_empty());
    CorpusReport { seed, instances, passed, checks: r.checks }
}
