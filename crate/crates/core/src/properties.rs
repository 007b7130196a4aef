//! Invariant checks on explicit instances.
//!
//! Each check returns `Err(Error::Internal(..))` describing the first
//! violation. Instance generation is left to callers, so the same checks back
//! both the property tests and the seeded corpus of the command-line tool.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::cyclo::CycloNum;
use crate::exactnum::field::{FFElem, FiniteField};
use crate::exactnum::laurent::LaurentPoly;
use crate::exactnum::matrix::FFMatrix;
use crate::exactnum::ratfunc::{eval_at_one, reconstruct_rational, RatFuncT};
use crate::exactnum::roots::{eigen_multiplicities, RootTable};
use crate::groups::finite::FiniteGroup;
use crate::groups::orbits::galois_orbits;
use crate::groups::subgroup::{hall_check, Subgroup};

fn fail(msg: String) -> Result<()> {
    Err(Error::Internal(msg))
}

/// Associativity, distributivity and inverses on one triple.
pub fn field_axioms(field: &FiniteField, a: FFElem, b: FFElem, c: FFElem) -> Result<()> {
    let (add, mul) = (|x, y| field.add(x, y), |x, y| field.mul(x, y));
    if add(add(a, b), c) != add(a, add(b, c)) || mul(mul(a, b), c) != mul(a, mul(b, c)) {
        return fail(format!("associativity fails on {a:?}, {b:?}, {c:?} in {field}"));
    }
    if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) {
        return fail(format!("distributivity fails on {a:?}, {b:?}, {c:?} in {field}"));
    }
    if !a.is_zero() && field.inv(a).map(|i| mul(i, a)) != Some(FFElem::ONE) {
        return fail(format!("{a:?} has no inverse in {field}"));
    }
    if add(a, field.neg(a)) != FFElem::ZERO {
        return fail(format!("{a:?} has no negative in {field}"));
    }
    Ok(())
}

/// `lift(omega^a omega^b) = lift(omega^a) lift(omega^b)` and `lift(omega^a) = zeta^a`.
pub fn lift_is_homomorphism(table: &RootTable, a: u64, b: u64) -> Result<()> {
    let (x, y) = (table.power(a), table.power(b));
    let lx = table.lift(x)?;
    let prod = table.lift(table.power(a + b))?;
    if prod != lx.mul(&table.lift(y)?) {
        return fail(format!("lift is not multiplicative at exponents {a}, {b}"));
    }
    if lx != CycloNum::zeta_pow(table.order(), a as i64) {
        return fail(format!("lift of omega^{a} is not zeta^{a}"));
    }
    Ok(())
}

/// The eigenvalue multiset of a matrix over `k = GF(q)` is stable under `i -> q i mod m`.
/// `big` is the splitting field containing `table`'s roots; `mat` is already embedded.
pub fn eigen_frobenius_stable(big: &FiniteField, mat: &FFMatrix, table: &RootTable, q: u64) -> Result<()> {
    let mults = eigen_multiplicities(big, mat, table)?;
    let m = table.order();
    let twisted: BTreeMap<u32, usize> = mults.iter().map(|(&i, &k)| (((i as u64 * q) % m) as u32, k)).collect();
    if twisted != mults {
        return fail(format!("eigenvalue exponents {mults:?} are not stable under multiplication by {q} mod {m}"));
    }
    Ok(())
}

/// Reconstruction from an expansion long enough to hold the numerator plus a guard window.
///
/// Past the numerator, `series * (1 - t^m)^k` for `k < delta` is a quasi-polynomial
/// of degree below `delta` on each residue class mod `m`, so a window of
/// `m * delta` extra degrees cannot be all zero by accident.
pub fn reconstruct_inverts_expand(f: &RatFuncT, guard: u32) -> Result<()> {
    let f = f.reduced();
    let guard = guard + f.m as u32 * f.den_exp;
    let hi = f.num.max_degree().unwrap_or(0);
    let top = hi + f.m as i64 * i64::from(f.den_exp) + 2 * i64::from(guard) + 1;
    let series = f.expand(top);
    let back = reconstruct_rational(&series, top, f.m, f.den_exp + 2, guard)?;
    if back != f {
        return fail(format!("reconstructed {back} from the expansion of {f}"));
    }
    Ok(())
}

/// With no denominator, `eval_at_one` is substitution `t = 1`.
pub fn eval_matches_substitution(f: &LaurentPoly, mult: &LaurentPoly) -> Result<()> {
    let value = eval_at_one(&RatFuncT::polynomial(f.clone()), mult)?;
    let naive = f.eval_at_one().mul(&mult.eval_at_one());
    if value != naive {
        return fail(format!("eval_at_one gave {value}, substitution gave {naive}"));
    }
    Ok(())
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `g = s u = u s` with `s` p-regular and `u` of p-power order, and no other
/// such commuting pair exists.
pub fn p_regular_part_unique(group: &FiniteGroup, g: usize, p: u64) -> Result<()> {
    let (s, u) = group.p_regular_part(g, p);
    if group.mul(s, u) != g || group.mul(u, s) != g {
        return fail(format!("p-regular part of element {g} does not multiply back"));
    }
    if group.elem_order(s).is_multiple_of(p) || !is_power_of(group.elem_order(u), p) {
        return fail(format!("p-regular part of element {g} has the wrong orders"));
    }
    for s2 in 0..group.order() {
        if s2 == s || group.elem_order(s2).is_multiple_of(p) {
            continue;
        }
        let u2 = group.mul(group.inv(s2), g);
        if group.mul(s2, u2) == group.mul(u2, s2) && is_power_of(group.elem_order(u2), p) {
            return fail(format!("element {g} has a second decomposition through {s2}"));
        }
    }
    Ok(())
}

/// Orbit blocks are closed under conjugation by every element and under `g -> g^q`.
pub fn orbits_are_invariant(group: &FiniteGroup, p: u64, q: u64) -> Result<()> {
    let orbits = galois_orbits(group, p, q)?;
    for block in orbits.blocks() {
        let b = orbits.block_of(block[0]);
        for &g in block {
            if orbits.block_of(group.pow(g, q as i64)) != b {
                return fail(format!("block of element {g} is not closed under the q-power map"));
            }
            for x in 0..group.order() {
                if orbits.block_of(group.conj(g, x)) != b {
                    return fail(format!("block of element {g} is not closed under conjugation by {x}"));
                }
            }
        }
    }
    Ok(())
}

/// The p-regular set is the image of `g -> p-regular part of g`.
pub fn regular_set_is_image(group: &FiniteGroup, p: u64) -> Result<()> {
    let mut image: Vec<usize> = (0..group.order()).map(|g| group.p_regular_part(g, p).0).collect();
    image.sort_unstable();
    image.dedup();
    if image != group.p_regular_set(p) {
        return fail("p-regular set differs from the image of the p-regular part map".to_string());
    }
    Ok(())
}

/// `hall_check` succeeds for a normal p-subgroup.
pub fn hall_bijection(group: &FiniteGroup, normal: &Subgroup, p: u64, q: u64) -> Result<()> {
    hall_check(group, normal, p, q).map(|_| ())
}
