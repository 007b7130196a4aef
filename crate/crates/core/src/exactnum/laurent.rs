//! Laurent polynomials in `t` with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::CycloNum;
use crate::error::{Error, Result};

/// A finite sum `sum_n c_n t^n`; zero coefficients are never stored.
#[derive(Clone)]
pub struct LaurentPoly {
    m: u64,
    terms: BTreeMap<i64, CycloNum>,
}

impl LaurentPoly {
    pub fn zero(m: u64) -> Self {
        LaurentPoly { m, terms: BTreeMap::new() }
    }

    pub fn one(m: u64) -> Self {
        Self::monomial(m, 0, CycloNum::one(m))
    }

    pub fn constant(c: CycloNum) -> Self {
        let m = c.conductor();
        Self::monomial(m, 0, c)
    }

    pub fn monomial(m: u64, deg: i64, c: CycloNum) -> Self {
        let mut p = Self::zero(m.max(1));
        p.add_term(deg, &c);
        p
    }

    /// Polynomial with integer coefficients `coeffs[k]` at degree `lo + k`.
    pub fn from_ints(m: u64, lo: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(m);
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.add_term(lo + k as i64, &CycloNum::from_int(m, c));
            }
        }
        p
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(m: u64, k: i64) -> Self {
        let mut p = Self::one(m);
        p.add_term(k, &CycloNum::from_int(m, -1));
        p
    }

    pub fn from_terms(m: u64, terms: impl IntoIterator<Item = (i64, CycloNum)>) -> Self {
        let mut p = Self::zero(m);
        for (d, c) in terms {
            p.add_term(d, &c);
        }
        p
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<i64, CycloNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: i64) -> CycloNum {
        self.terms.get(&deg).cloned().unwrap_or_else(|| CycloNum::zero(self.m))
    }

    pub fn add_term(&mut self, deg: i64, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        if c.conductor() != self.m && !self.m.is_multiple_of(c.conductor()) {
            self.raise_conductor(num_integer::lcm(self.m, c.conductor()));
        }
        let c = c.embed(self.m).expect("conductor divides");
        match self.terms.get_mut(&deg) {
            Some(cur) => {
                let s = cur.add(&c);
                if s.is_zero() {
                    self.terms.remove(&deg);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(deg, c);
            }
        }
    }

    fn raise_conductor(&mut self, m: u64) {
        for c in self.terms.values_mut() {
            *c = c.embed(m).expect("conductor divides");
        }
        self.m = m;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, c) in &other.terms {
            out.add_term(d, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { m: self.m, terms: self.terms.iter().map(|(&d, c)| (d, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut out = Self::zero(self.m);
        for (&d, a) in &self.terms {
            out.add_term(d, &a.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(num_integer::lcm(self.m, other.m));
        for (&d1, a) in &self.terms {
            for (&d2, b) in &other.terms {
                out.add_term(d1 + d2, &a.mul(b));
            }
        }
        out
    }

    /// Product truncated to degrees `<= top`.
    pub fn mul_truncated(&self, other: &Self, top: i64) -> Self {
        let mut out = Self::zero(num_integer::lcm(self.m, other.m));
        for (&d1, a) in &self.terms {
            for (&d2, b) in other.terms.range(..=top - d1) {
                out.add_term(d1 + d2, &a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `t^a`.
    pub fn shift(&self, a: i64) -> Self {
        LaurentPoly { m: self.m, terms: self.terms.iter().map(|(&d, c)| (d + a, c.clone())).collect() }
    }

    /// Terms of degree `<= top`.
    pub fn truncate(&self, top: i64) -> Self {
        LaurentPoly { m: self.m, terms: self.terms.range(..=top).map(|(&d, c)| (d, c.clone())).collect() }
    }

    /// Terms of degree in `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        if lo > hi {
            return Self::zero(self.m);
        }
        LaurentPoly { m: self.m, terms: self.terms.range(lo..=hi).map(|(&d, c)| (d, c.clone())).collect() }
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> CycloNum {
        self.terms.values().fold(CycloNum::zero(self.m), |acc, c| acc.add(c))
    }

    /// Exact quotient by `1 - t`, or `None` when `1 - t` does not divide.
    pub fn div_one_minus_t(&self) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return Some(self.clone());
        };
        // Coefficients of the quotient are partial sums of ours.
        let mut out = Self::zero(self.m);
        let mut acc = CycloNum::zero(self.m);
        for d in lo..hi {
            if let Some(c) = self.terms.get(&d) {
                acc = acc.add(c);
            }
            out.add_term(d, &acc);
        }
        acc = acc.add(&self.coeff(hi));
        acc.is_zero().then_some(out)
    }

    /// Order of vanishing at `t = 1`; the zero polynomial reports `None`.
    pub fn vanishing_order_at_one(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut cur = self.clone();
        let mut k = 0;
        while let Some(q) = cur.div_one_minus_t() {
            cur = q;
            k += 1;
        }
        Some(k)
    }

    /// Applies `zeta -> zeta^a` to every coefficient.
    pub fn galois(&self, a: i64) -> Self {
        LaurentPoly { m: self.m, terms: self.terms.iter().map(|(&d, c)| (d, c.galois(a))).collect() }
    }

    /// Re-expresses every coefficient over `Q(zeta_new)`.
    pub fn embed(&self, new_m: u64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (&d, c) in &self.terms {
            terms.insert(d, c.embed(new_m)?);
        }
        Ok(LaurentPoly { m: new_m, terms })
    }

    /// Integer coefficients in `lo..=hi`, failing on non-integer values.
    pub fn int_coeffs(&self, lo: i64, hi: i64) -> Result<Vec<i64>> {
        (lo..=hi)
            .map(|d| {
                self.coeff(d)
                    .as_i64()
                    .ok_or_else(|| Error::InvalidInput(format!("coefficient of t^{d} is not an integer")))
            })
            .collect()
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((d1, a), (d2, b))| d1 == d2 && a == b)
    }
}

impl Eq for LaurentPoly {}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match *d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{d}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaurentDoc {
    m: u64,
    terms: BTreeMap<String, CycloNum>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Keys are emitted in numeric degree order so output is stable.
        use serde::ser::SerializeMap;
        struct Terms<'a>(&'a BTreeMap<i64, CycloNum>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (d, c) in self.0 {
                    map.serialize_entry(&d.to_string(), c)?;
                }
                map.end()
            }
        }
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = LaurentDoc::deserialize(d)?;
        let mut p = LaurentPoly::zero(doc.m);
        for (k, c) in doc.terms {
            let deg: i64 = k.parse().map_err(|_| D::Error::custom(format!("bad degree key {k:?}")))?;
            p.add_term(deg, &c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_one_minus_t() {
        let p = LaurentPoly::from_ints(1, 0, &[1, 0, -1]); // 1 - t^2
        let q = p.div_one_minus_t().unwrap();
        assert_eq!(q, LaurentPoly::from_ints(1, 0, &[1, 1]));
        assert!(q.div_one_minus_t().is_none());
        assert_eq!(p.vanishing_order_at_one(), Some(1));
        let cube = LaurentPoly::one_minus_t_pow(1, 1).pow(3).shift(-2);
        assert_eq!(cube.vanishing_order_at_one(), Some(3));
    }

    #[test]
    fn products_and_shifts() {
        let a = LaurentPoly::from_ints(1, -1, &[1, 1]); // t^-1 + 1
        let b = LaurentPoly::from_ints(1, 0, &[1, -1]); // 1 - t
        assert_eq!(a.mul(&b), LaurentPoly::from_ints(1, -1, &[1, 0, -1]));
        assert_eq!(a.shift(1), LaurentPoly::from_ints(1, 0, &[1, 1]));
        assert_eq!(a.mul(&b).truncate(0), LaurentPoly::from_ints(1, -1, &[1]));
    }

    #[test]
    fn serde_is_stable() {
        let p = LaurentPoly::from_ints(2, -1, &[3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"m":2,"terms":{"-1":{"m":2,"coeffs":["3"]},"10":{"m":2,"coeffs":["1"]}}}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
