//! Finite fields GF(p^s) with deterministic construction.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`
//! where `c_i` are the coefficients of the residue polynomial. The modulus is
//! the least monic irreducible polynomial in that same encoding order and the
//! distinguished multiplicative generator is the least-encoded one, so every
//! table built here is identical across runs and platforms.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order supported by the table-driven arithmetic.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Largest order for which full addition/multiplication tables are kept.
const TABLE_ORDER: u32 = 256;

/// An element of a finite field in its base-p digit encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElem(pub u32);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);
    pub const ONE: FFElem = FFElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
enum Arith {
    Prime,
    Table { add: Vec<u16>, mul: Vec<u16> },
    Digits,
}

/// The finite field GF(p^s).
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    s: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    arith: Arith,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.q)?;
        if self.s > 1 {
            write!(f, ", modulus {:?}", self.modulus)?;
        }
        write!(f, ")")
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial arithmetic over Z/p on low-first coefficient vectors.
mod zp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let top = r.len() - 1;
            let f = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = top - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = (f as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&out, m, p)
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut g = super::digits_of(code as u32, p, d as u32);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn digits_of(mut code: u32, p: u32, s: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(s as usize);
    for _ in 0..s {
        out.push(code % p);
        code /= p;
    }
    out
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// The deterministic field GF(p^s).
pub fn make_field(p: u64, s: u32) -> Result<FiniteField> {
    FiniteField::new(p, s)
}

impl FiniteField {
    pub fn new(p: u64, s: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if s == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        let q64 = p
            .checked_pow(s)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::InvalidInput(format!("GF({p}^{s}) exceeds the supported order {MAX_FIELD_ORDER}")))?;
        let p = p as u32;
        let q = q64 as u32;

        let modulus = if s == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|code| {
                    let mut f = digits_of(code, p, s);
                    f.push(1);
                    f
                })
                .find(|f| f[0] != 0 && zp_poly::is_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree")
        };

        let mul_code = |a: u32, b: u32| -> u32 {
            if s == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let mut prod = zp_poly::mul_mod(&digits_of(a, p, s), &digits_of(b, p, s), &modulus, p);
            prod.resize(s as usize, 0);
            encode(&prod, p)
        };

        let group_order = (q - 1) as u64;
        let factors = prime_factors(group_order);
        let pow_code = |a: u32, mut e: u64| -> u32 {
            let mut r = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = mul_code(r, b);
                }
                b = mul_code(b, b);
                e >>= 1;
            }
            r
        };
        let generator = (1..q)
            .find(|&c| factors.iter().all(|&r| pow_code(c, group_order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = mul_code(x, generator);
        }

        let neg: Vec<u32> = (0..q)
            .map(|c| {
                let d: Vec<u32> = digits_of(c, p, s).into_iter().map(|x| (p - x) % p).collect();
                encode(&d, p)
            })
            .collect();

        let arith = if s == 1 {
            Arith::Prime
        } else if q <= TABLE_ORDER {
            let mut add = vec![0u16; (q * q) as usize];
            let mut mul = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = digits_of(a, p, s);
                for b in 0..q {
                    let db = digits_of(b, p, s);
                    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    add[(a * q + b) as usize] = encode(&sum, p) as u16;
                    mul[(a * q + b) as usize] = if a == 0 || b == 0 {
                        0
                    } else {
                        exp[((log[a as usize] + log[b as usize]) % (q - 1)) as usize] as u16
                    };
                }
            }
            Arith::Table { add, mul }
        } else {
            Arith::Digits
        };

        Ok(FiniteField { p, s, q, modulus, generator, exp, log, neg, arith })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low-degree coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least-encoded multiplicative generator.
    pub fn generator(&self) -> FFElem {
        FFElem(self.generator)
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElem> {
        (0..self.q).map(FFElem)
    }

    pub fn digits(&self, a: FFElem) -> Vec<u32> {
        digits_of(a.0, self.p, self.s)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FFElem> {
        if digits.len() != self.s as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(Error::InvalidInput(format!(
                "{digits:?} is not a digit vector of length {} over Z/{}",
                self.s, self.p
            )));
        }
        Ok(FFElem(encode(digits, self.p)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, n: i64) -> FFElem {
        FFElem(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        match &self.arith {
            Arith::Prime => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Arith::Table { add, .. } => add[(a * self.q + b) as usize] as u32,
            Arith::Digits => {
                let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
                while a > 0 || b > 0 {
                    out += ((a % self.p + b % self.p) % self.p) * place;
                    a /= self.p;
                    b /= self.p;
                    place *= self.p;
                }
                out
            }
        }
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.arith {
            Arith::Prime => (a * b) % self.p,
            Arith::Table { mul, .. } => mul[(a * self.q + b) as usize] as u32,
            Arith::Digits => {
                if a == 0 || b == 0 {
                    0
                } else {
                    self.exp[((self.log[a as usize] + self.log[b as usize]) % (self.q - 1)) as usize]
                }
            }
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg[b as usize])
    }

    #[inline]
    pub fn inv_raw(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem(self.add_raw(a.0, b.0))
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem(self.sub_raw(a.0, b.0))
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        FFElem(self.neg_raw(a.0))
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem(self.mul_raw(a.0, b.0))
    }

    pub fn inv(&self, a: FFElem) -> Option<FFElem> {
        (!a.is_zero()).then(|| FFElem(self.inv_raw(a.0)))
    }

    pub fn pow(&self, a: FFElem, e: u64) -> FFElem {
        if a.is_zero() {
            return if e == 0 { FFElem::ONE } else { FFElem::ZERO };
        }
        let n = (self.q - 1) as u64;
        FFElem(self.exp[((self.log[a.0 as usize] as u64 * (e % n)) % n) as usize])
    }

    /// Discrete logarithm to the base of [`generator`](Self::generator).
    pub fn log(&self, a: FFElem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FFElem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.q - 1) as u64;
        Some(n / num_integer::gcd(n, l))
    }

    /// `xi = g^((q-1)/m)` for the least-encoded generator `g`.
    pub fn primitive_root_of_unity(&self, m: u64) -> Result<FFElem> {
        let n = (self.q - 1) as u64;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::NoSuchRoot { m, q: self.q as u64 });
        }
        Ok(FFElem(self.exp[((n / m) % n) as usize]))
    }

    /// Evaluates a polynomial with prime-subfield coefficients at `x`.
    fn eval_prime_poly(&self, coeffs: &[u32], x: FFElem) -> FFElem {
        coeffs.iter().rev().fold(FFElem::ZERO, |acc, &c| self.add(self.mul(acc, x), FFElem(c)))
    }

    /// Embedding table `self -> big`, sending the residue class of `x` to the
    /// least-encoded root of this field's modulus in `big`.
    pub fn embedding_into(&self, big: &FiniteField) -> Result<Vec<FFElem>> {
        if big.p != self.p || !big.s.is_multiple_of(self.s) {
            return Err(Error::FieldMismatch(format!("{self:?} does not embed in {big:?}")));
        }
        let root = big
            .elements()
            .find(|&x| big.eval_prime_poly(&self.modulus, x).is_zero())
            .expect("a field contains the roots of the modulus of each subfield");
        Ok(self.elements().map(|a| big.eval_prime_poly(&self.digits(a), root)).collect())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn gf8_modulus_matches_enumeration() {
        // Oracle: enumerate monic cubics over F2 in encoding order and keep
        // the first with no root (a reducible cubic always has a linear factor).
        let first = (0u32..8)
            .map(|c| vec![c & 1, (c >> 1) & 1, (c >> 2) & 1, 1])
            .find(|f| (0..2u32).all(|x| (f[0] + f[1] * x + f[2] * x * x + f[3] * x * x * x) % 2 != 0))
            .unwrap();
        assert_eq!(first, vec![1, 1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), first.as_slice());
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrime(4));
    }

    #[test]
    fn roots_of_unity() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.generator(), FFElem(3));
        assert_eq!(f7.primitive_root_of_unity(6).unwrap(), FFElem(3));
        assert_eq!(f7.primitive_root_of_unity(1).unwrap(), FFElem::ONE);
        assert!(matches!(f7.primitive_root_of_unity(4), Err(Error::NoSuchRoot { .. })));

        let f4 = make_field(2, 2).unwrap();
        // x is the least-encoded element of order 3.
        assert_eq!(f4.primitive_root_of_unity(3).unwrap(), FFElem(2));
        assert_eq!(f4.mult_order(FFElem(2)), Some(3));
        assert_eq!(f4.mult_order(FFElem(3)), Some(3));
    }

    #[test]
    fn embeddings_are_ring_maps() {
        for (p, s, t) in [(2u64, 1u32, 3u32), (2, 2, 4), (3, 1, 2), (3, 2, 4), (5, 1, 2)] {
            let small = make_field(p, s).unwrap();
            let big = make_field(p, t).unwrap();
            let e = small.embedding_into(&big).unwrap();
            for a in small.elements() {
                for b in small.elements() {
                    assert_eq!(e[small.add(a, b).0 as usize], big.add(e[a.0 as usize], e[b.0 as usize]));
                    assert_eq!(e[small.mul(a, b).0 as usize], big.mul(e[a.0 as usize], e[b.0 as usize]));
                }
            }
        }
    }

    #[test]
    fn digit_arithmetic_path_matches_tables() {
        // GF(3^6) is beyond the table threshold and uses digit-wise addition.
        let f = make_field(3, 6).unwrap();
        let g = f.generator();
        let a = f.pow(g, 100);
        let b = f.pow(g, 555);
        let sum = f.add(a, b);
        let da = f.digits(a);
        let db = f.digits(b);
        let ds: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
        assert_eq!(f.from_digits(&ds).unwrap(), sum);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FFElem::ONE);
    }
}
