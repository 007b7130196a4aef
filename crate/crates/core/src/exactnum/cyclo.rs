//! Exact elements of the cyclotomic field Q(zeta_m).
//!
//! Values are stored in the power basis `1, zeta, ..., zeta^(phi(m)-1)` with
//! rational coefficients. Binary operations on values of different conductors
//! first embed both operands into the field of the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u64 = 10_000;

/// Cached data for one conductor: `phi_m` and `x^i mod phi_m` for `0 <= i < m`.
#[derive(Debug)]
struct Conductor {
    m: u64,
    degree: usize,
    powers: Vec<Vec<i64>>,
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both monic or with leading coefficient +-1 in practice; den is monic.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![0i64; num.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_divexact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

impl Conductor {
    fn build(m: u64) -> Conductor {
        let phi = cyclotomic_poly(m);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // Multiply by x and reduce the overflow term with the monic phi.
            let top = cur[degree - 1];
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..degree {
                    cur[k] -= top * phi[k];
                }
            }
        }
        Conductor { m, degree, powers }
    }
}

fn conductor(m: u64) -> Arc<Conductor> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Conductor>>>> = OnceLock::new();
    assert!((1..=MAX_CONDUCTOR).contains(&m), "conductor {m} out of range");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().expect("conductor cache poisoned").get(&m) {
        return Arc::clone(c);
    }
    let built = Arc::new(Conductor::build(m));
    let mut w = cache.write().expect("conductor cache poisoned");
    Arc::clone(w.entry(m).or_insert(built))
}

/// Euler's totient, the degree of Q(zeta_m) over Q.
pub fn totient(m: u64) -> usize {
    conductor(m).degree
}

#[derive(Clone)]
pub struct CycloNum {
    m: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(m: u64) -> Self {
        CycloNum { m, coeffs: vec![BigRational::zero(); totient(m)] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(m: u64, r: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = r;
        z
    }

    /// `zeta_m^i`, with `i` taken modulo `m`.
    pub fn zeta_pow(m: u64, i: i64) -> Self {
        let cond = conductor(m);
        let idx = i.rem_euclid(m as i64) as usize;
        CycloNum { m, coeffs: cond.powers[idx].iter().map(|&c| rat(c)).collect() }
    }

    /// `sum_i counts[i] * zeta_m^i`, the shape of every Brauer character value.
    pub fn from_root_counts(m: u64, counts: &[i64]) -> Self {
        let cond = conductor(m);
        let mut acc = vec![0i64; cond.degree];
        for (i, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &b) in acc.iter_mut().zip(&cond.powers[i % m as usize]) {
                    *a += c * b;
                }
            }
        }
        CycloNum { m, coeffs: acc.into_iter().map(rat).collect() }
    }

    /// Builds a value from power-basis coefficients, reducing modulo `phi_m`.
    pub fn from_coeffs(m: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if m == 0 || m > MAX_CONDUCTOR {
            return Err(Error::InvalidInput(format!("conductor {m} out of range")));
        }
        let cond = conductor(m);
        let mut out = Self::zero(m);
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(&cond, i, &c);
            }
        }
        Ok(out)
    }

    fn add_scaled_power(&mut self, cond: &Conductor, i: usize, c: &BigRational) {
        for (a, &b) in self.coeffs.iter_mut().zip(&cond.powers[i % cond.m as usize]) {
            if b != 0 {
                *a += c * rat(b);
            }
        }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    /// Image under `zeta_m -> zeta_new^(new/m)`; requires `m | new`.
    pub fn embed(&self, new_m: u64) -> Result<Self> {
        if new_m == self.m {
            return Ok(self.clone());
        }
        if new_m == 0 || !new_m.is_multiple_of(self.m) {
            return Err(Error::InvalidInput(format!("conductor {} does not divide {new_m}", self.m)));
        }
        let step = (new_m / self.m) as usize;
        let cond = conductor(new_m);
        let mut out = Self::zero(new_m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(&cond, i * step, c);
            }
        }
        Ok(out)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = a.m.lcm(&b.m);
        (a.embed(l).expect("lcm is a multiple"), b.embed(l).expect("lcm is a multiple"))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.m != other.m {
            let (a, b) = Self::common(self, other);
            return a.add(&b);
        }
        CycloNum { m: self.m, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycloNum { m: self.m, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNum { m: self.m, coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&rat(n))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.m != other.m {
            let (a, b) = Self::common(self, other);
            return a.mul(&b);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let cond = conductor(self.m);
        let n = cond.degree;
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut out = CycloNum { m: self.m, coeffs: raw[..n].to_vec() };
        for (k, c) in raw.iter().enumerate().skip(n) {
            if !c.is_zero() {
                out.add_scaled_power(&cond, k, c);
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

    /// Multiplicative inverse by solving the linear system `x * self = 1`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.m, r.recip()));
        }
        let n = self.coeffs.len();
        // Row i of the multiplication matrix is zeta^i * self.
        let rows: Vec<Vec<BigRational>> = (0..n).map(|i| Self::zeta_pow(self.m, i as i64).mul(self).coeffs).collect();
        // Solve x * rows = e_0, i.e. rows^T x^T = e_0.
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|c| {
                let mut r: Vec<BigRational> = (0..n).map(|i| rows[i][c].clone()).collect();
                r.push(if c == 0 { BigRational::one() } else { BigRational::zero() });
                r
            })
            .collect();
        let sol = solve_square(&mut aug)?;
        Some(CycloNum { m: self.m, coeffs: sol })
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image under the automorphism `zeta -> zeta^a`, `gcd(a, m) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let cond = conductor(self.m);
        let mut out = Self::zero(self.m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(&cond, (i as i64 * a).rem_euclid(self.m as i64) as usize, c);
            }
        }
        out
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Gaussian elimination on an `n x (n+1)` augmented system.
fn solve_square(aug: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = aug.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !aug[r][c].is_zero())?;
        aug.swap(c, piv);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                let (pr, rr) = if r < c {
                    let (a, b) = aug.split_at_mut(c);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = aug.split_at_mut(r);
                    (&a[c], &mut b[0])
                };
                for (x, y) in rr.iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "z{}", self.m)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycloDoc {
    m: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloDoc { m: self.m, coeffs: self.coeffs.iter().map(ToString::to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = CycloDoc::deserialize(d)?;
        let coeffs = doc
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloNum::from_coeffs(doc.m, coeffs).map_err(D::Error::custom)
    }
}

/// Rank over Q(zeta) of a matrix with cyclotomic entries.
pub fn cyclo_rank(rows: &[Vec<CycloNum>]) -> usize {
    let mut rows: Vec<Vec<CycloNum>> = rows.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        let pivot_row: Vec<CycloNum> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..ncols {
                row[k] = row[k].sub(&f.mul(&pivot_row[k]));
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(7), 6);
    }

    #[test]
    fn roots_of_unity_multiply() {
        for m in [1u64, 2, 3, 4, 6, 7, 8, 12] {
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    assert_eq!(CycloNum::zeta_pow(m, a).mul(&CycloNum::zeta_pow(m, b)), CycloNum::zeta_pow(m, a + b));
                }
            }
        }
        assert_eq!(CycloNum::zeta_pow(6, 3), CycloNum::from_int(6, -1));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        let all: Vec<i64> = vec![1; 7];
        assert!(CycloNum::from_root_counts(7, &all).is_zero());
    }

    #[test]
    fn inverse_and_embedding() {
        let x = CycloNum::from_root_counts(7, &[0, 1, 1, 0, 1]);
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).is_one());
        let y = CycloNum::zeta_pow(3, 1);
        let z = y.embed(6).unwrap();
        assert_eq!(z, CycloNum::zeta_pow(6, 2));
        assert_eq!(y, z);
        assert_eq!(y.add(&CycloNum::zeta_pow(2, 1)), CycloNum::zeta_pow(6, 2).sub(&CycloNum::one(6)));
    }

    #[test]
    fn gauss_period_of_seven() {
        // (z + z^2 + z^4) satisfies x^2 + x + 2 = 0.
        let eta = CycloNum::from_root_counts(7, &[0, 1, 1, 0, 1]);
        let val = eta.mul(&eta).add(&eta).add(&CycloNum::from_int(7, 2));
        assert!(val.is_zero());
    }

    #[test]
    fn serde_round_trip() {
        let x = CycloNum::from_root_counts(3, &[1, 2]).scale(&BigRational::new(1.into(), 2.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":3,"coeffs":["1/2","1"]}"#);
        let back: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rank_over_cyclotomics() {
        let z = CycloNum::zeta_pow(3, 1);
        let one = CycloNum::one(3);
        let rows = vec![vec![one.clone(), z.clone()], vec![z.clone(), z.mul(&z)]];
        assert_eq!(cyclo_rank(&rows), 1);
        let rows = vec![vec![one.clone(), one.clone()], vec![one.clone(), one.neg()]];
        assert_eq!(cyclo_rank(&rows), 2);
    }
}
