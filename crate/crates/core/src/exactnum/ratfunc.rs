//! Rational functions `num / (1 - t^m)^delta` and their reconstruction from
//! truncated power series.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::cyclo::CycloNum;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatFuncT {
    /// Period of the denominator `(1 - t^m)`.
    pub m: u64,
    pub num: LaurentPoly,
    pub den_exp: u32,
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl RatFuncT {
    pub fn new(num: LaurentPoly, m: u64, den_exp: u32) -> Self {
        assert!(m >= 1, "denominator period must be positive");
        RatFuncT { m, num, den_exp }
    }

    pub fn polynomial(num: LaurentPoly) -> Self {
        Self::new(num, 1, 0)
    }

    /// Cancels common factors `(1 - t^m)` so that the numerator is not
    /// divisible by it when the denominator is present.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        let factor = LaurentPoly::one_minus_t_pow(self.num.conductor(), self.m as i64);
        while out.den_exp > 0 {
            match divide_exact(&out.num, &factor) {
                Some(q) => {
                    out.num = q;
                    out.den_exp -= 1;
                }
                None => break,
            }
        }
        if out.num.is_zero() {
            out.den_exp = 0;
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced().den_exp == self.den_exp
    }

    /// The same function written over `(1 - t^m)^delta` with `delta >= den_exp`.
    pub fn with_den_exp(&self, delta: u32) -> Result<Self> {
        if delta < self.den_exp {
            let red = self.reduced();
            if red.den_exp > delta {
                return Err(Error::InvalidInput(format!(
                    "denominator exponent {} cannot be lowered to {delta}",
                    red.den_exp
                )));
            }
            return red.with_den_exp(delta);
        }
        let factor = LaurentPoly::one_minus_t_pow(self.num.conductor(), self.m as i64).pow(delta - self.den_exp);
        Ok(RatFuncT { m: self.m, num: self.num.mul(&factor), den_exp: delta })
    }

    /// Power series expansion through degree `top`.
    pub fn expand(&self, top: i64) -> LaurentPoly {
        let Some(lo) = self.num.min_degree() else {
            return LaurentPoly::zero(self.num.conductor());
        };
        if self.den_exp == 0 {
            return self.num.truncate(top);
        }
        // 1/(1-t^m)^delta = sum_k C(k + delta - 1, delta - 1) t^(mk).
        let mut inv = LaurentPoly::zero(1);
        let delta = self.den_exp as u64;
        let mut k = 0u64;
        while lo + (self.m * k) as i64 <= top {
            let c = BigRational::from_integer(binomial(k + delta - 1, delta - 1));
            inv.add_term((self.m * k) as i64, &CycloNum::from_rational(1, c));
            k += 1;
        }
        self.num.mul_truncated(&inv, top)
    }

    /// `den_exp` minus the vanishing order of the numerator at `t = 1`.
    /// The zero function is regular and reports 0.
    pub fn pole_order_at_one(&self) -> i64 {
        match self.num.vanishing_order_at_one() {
            Some(v) => self.den_exp as i64 - v as i64,
            None => 0,
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RatFuncT { m: self.m, num: self.num.mul(p), den_exp: self.den_exp }
    }

    /// Multiplies by `t^a`.
    pub fn shift(&self, a: i64) -> Self {
        RatFuncT { m: self.m, num: self.num.shift(a), den_exp: self.den_exp }
    }
}

/// Exact division of Laurent polynomials, `None` if it leaves a remainder.
pub fn divide_exact(num: &LaurentPoly, den: &LaurentPoly) -> Option<LaurentPoly> {
    let (dlo, dhi) = (den.min_degree()?, den.max_degree()?);
    let m = num_integer::lcm(num.conductor(), den.conductor());
    let lead_inv = den.coeff(dhi).inv()?;
    let mut rem = num.clone();
    let mut quo = LaurentPoly::zero(m);
    while let (Some(rlo), Some(rhi)) = (rem.min_degree(), rem.max_degree()) {
        if rhi - rlo < dhi - dlo {
            return None;
        }
        let c = rem.coeff(rhi).mul(&lead_inv);
        let shift = rhi - dhi;
        quo.add_term(shift, &c);
        rem = rem.sub(&den.shift(shift).scale(&c));
    }
    Some(quo)
}

/// Value at `t = 1` of `f * mult`, which must be regular there.
pub fn eval_at_one(f: &RatFuncT, mult: &LaurentPoly) -> Result<CycloNum> {
    let mut prod = f.num.mul(mult);
    let m = prod.conductor();
    if prod.is_zero() {
        return Ok(CycloNum::zero(m));
    }
    for k in 0..f.den_exp {
        prod = prod.div_one_minus_t().ok_or(Error::PoleAtOne((f.den_exp - k) as i64))?;
    }
    let scale = BigRational::new(BigInt::from(1), BigInt::from(f.m).pow(f.den_exp));
    Ok(prod.eval_at_one().scale(&scale))
}

/// Recovers `num / (1 - t^m)^delta` from the coefficients of `series` in
/// degrees `<= top`, taking the least `delta <= delta_max` for which the
/// product `series * (1 - t^m)^delta` vanishes on the last `guard` degrees.
/// A window shorter than `m` can vanish by accident on sparse series, so
/// callers should validate the fit beyond `top`.
pub fn reconstruct_rational(series: &LaurentPoly, top: i64, m: u64, delta_max: u32, guard: u32) -> Result<RatFuncT> {
    if guard == 0 {
        return Err(Error::InvalidInput("guard window must be positive".into()));
    }
    let series = series.truncate(top);
    let cutoff = top - guard as i64;
    if series.min_degree().is_some_and(|lo| lo > cutoff) {
        return Err(Error::InsufficientData(format!("no coefficients below the guard window ending at degree {top}")));
    }
    let factor = LaurentPoly::one_minus_t_pow(series.conductor(), m as i64);
    let mut prod = series.clone();
    for delta in 0..=delta_max {
        if delta > 0 {
            prod = prod.mul_truncated(&factor, top);
        }
        if prod.window(cutoff + 1, top).is_zero() {
            let num = prod.truncate(cutoff);
            return Ok(RatFuncT::new(num, m, delta).reduced());
        }
    }
    Err(Error::InsufficientData(format!(
        "no denominator (1 - t^{m})^delta with delta <= {delta_max} fits the data through degree {top}"
    )))
}

impl fmt::Debug for RatFuncT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFuncT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / (1 - t^{})^{}", self.num, self.m, self.den_exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(lo: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(1, lo, c)
    }

    #[test]
    fn pole_orders() {
        assert_eq!(RatFuncT::new(ints(0, &[1, -1]), 2, 1).pole_order_at_one(), 0);
        assert_eq!(RatFuncT::new(ints(0, &[1, 1]), 2, 1).pole_order_at_one(), 1);
        assert_eq!(RatFuncT::polynomial(ints(0, &[5])).pole_order_at_one(), 0);
    }

    #[test]
    fn evaluation_at_one() {
        let inv_one_plus_t = RatFuncT::new(ints(0, &[1, -1]), 2, 1);
        assert!(eval_at_one(&inv_one_plus_t, &ints(0, &[1, 1])).unwrap().is_one());
        let inv_one_minus_t = RatFuncT::new(ints(0, &[1, 1]), 2, 1);
        assert!(eval_at_one(&inv_one_minus_t, &ints(0, &[1, -1])).unwrap().is_one());
        let simple_pole = RatFuncT::new(ints(0, &[1]), 1, 1);
        assert_eq!(eval_at_one(&simple_pole, &ints(0, &[1])), Err(Error::PoleAtOne(1)));
    }

    #[test]
    fn reconstruction() {
        let alternating = ints(0, &[1, -1, 1, -1, 1, -1, 1, -1, 1]);
        let f = reconstruct_rational(&alternating, 8, 2, 2, 3).unwrap();
        assert_eq!(f, RatFuncT::new(ints(0, &[1, -1]), 2, 1));

        let squares = ints(0, &(1..=12).collect::<Vec<_>>());
        let f = reconstruct_rational(&squares, 11, 1, 2, 3).unwrap();
        assert_eq!(f, RatFuncT::new(ints(0, &[1]), 1, 2));

        let seven = ints(0, &[7]);
        let f = reconstruct_rational(&seven, 8, 2, 2, 3).unwrap();
        assert_eq!(f, RatFuncT::new(ints(0, &[7]), 2, 0));
    }

    #[test]
    fn reconstruction_needs_data() {
        let short = ints(0, &[1, 2, 3]);
        assert!(matches!(reconstruct_rational(&short, 2, 1, 1, 3), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn expansion_round_trip() {
        let f = RatFuncT::new(ints(-1, &[2, 0, 3]), 3, 2);
        let series = f.expand(20);
        assert_eq!(reconstruct_rational(&series, 20, 3, 3, 4).unwrap(), f);
    }

    #[test]
    fn exact_division() {
        let a = ints(0, &[1, 0, -1]);
        let b = ints(0, &[1, 1]);
        assert_eq!(divide_exact(&a, &b).unwrap(), ints(0, &[1, -1]));
        assert!(divide_exact(&b, &ints(0, &[1, 0, 1])).is_none());
    }
}
