//! Exact coefficient domains.
//!
//! Everything downstream (polynomials, Groebner bases, homology) is generic
//! over [`ScalarDomain`]. A domain is a value, not just a type, because the
//! prime field carries its modulus and the localized integers carry their
//! inverted prime set; element types stay plain (`BigRational`, `u64`,
//! `BigInt`). Floating point is intentionally not implementable here: every
//! operation is exact and `try_inv` must be an honest unit test.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An exact commutative coefficient domain.
///
/// `try_inv` returns `Some` exactly on units, which is what the completion
/// loop uses to decide whether a leading coefficient can be normalized away.
pub trait ScalarDomain: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse, or `None` when `a` is not a unit.
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// True when every nonzero element is a unit.
    fn is_field(&self) -> bool;

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Embed an exact rational, failing when the denominator is not a unit
    /// (e.g. 1/2 over the integers, or 1/p over GF(p)).
    fn from_ratio(&self, q: &BigRational) -> Result<Self::Elem>;

    /// A canonical rational representative of `a`, used to move coefficients
    /// between domains (for GF(p) this is the least nonnegative residue).
    fn to_ratio(&self, a: &Self::Elem) -> BigRational;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// Short description used in diagnostics and machine trailers ("Q", "F5", "Z").
    fn name(&self) -> String;
}

/// The rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl ScalarDomain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn try_inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_field(&self) -> bool {
        true
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn to_ratio(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// The field GF(p) for a prime modulus p < 2^31.
///
/// Elements are stored reduced in `0..p`; products go through `u128`, so no
/// overflow is possible in the supported modulus range.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > (1 << 31) {
            return Err(Error::Unsupported(format!(
                "prime field modulus {p} out of range (2..=2^31)"
            )));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::Unsupported(format!("modulus {p} is not prime")));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        // mod_floor of a positive modulus is in 0..p and fits u64.
        u64::try_from(r).expect("residue fits u64")
    }
}

impl ScalarDomain for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn try_inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid; p is prime so any nonzero residue is a unit.
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn is_field(&self) -> bool {
        true
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_ratio(&self, q: &BigRational) -> Result<u64> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        let inv = self.try_inv(&den).ok_or_else(|| {
            Error::Coefficient(format!("{q}"), format!("F{} (denominator divisible by {})", self.p, self.p))
        })?;
        Ok(self.mul(&num, &inv))
    }
    fn to_ratio(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}

/// The ring of integers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Integers;

impl ScalarDomain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn try_inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.is_one() || (-a).is_one()).then(|| a.clone())
    }
    fn is_field(&self) -> bool {
        false
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_ratio(&self, q: &BigRational) -> Result<BigInt> {
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::Coefficient(format!("{q}"), "Z".into()))
        }
    }
    fn to_ratio(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn fmt_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "Z".into()
    }
}

/// The integers with a finite set of primes inverted, Z[1/p : p in S].
///
/// Elements are stored as exact rationals whose denominators are supported on
/// S; `from_ratio` enforces the support condition and `try_inv` recognizes
/// the units (elements of the form +/- product of powers of S-primes).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalizedIntegers {
    primes: BTreeSet<u64>,
}

impl LocalizedIntegers {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            PrimeField::new(p)?; // reuse the primality check
            set.insert(p);
        }
        Ok(LocalizedIntegers { primes: set })
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    /// Strip all S-prime factors from |n|; what remains is the non-unit part.
    fn cofactor(&self, n: &BigInt) -> BigInt {
        let mut m = n.abs();
        for &p in &self.primes {
            let p = BigInt::from(p);
            while !m.is_zero() && (&m % &p).is_zero() {
                m /= &p;
            }
        }
        m
    }

    fn supported(&self, n: &BigInt) -> bool {
        self.cofactor(n).is_one()
    }
}

impl ScalarDomain for LocalizedIntegers {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn try_inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero() && self.supported(a.numer())).then(|| a.recip())
    }
    fn is_field(&self) -> bool {
        false
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, q: &BigRational) -> Result<BigRational> {
        if self.supported(q.denom()) {
            Ok(q.clone())
        } else {
            Err(Error::Coefficient(format!("{q}"), self.name()))
        }
    }
    fn to_ratio(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        Rationals.fmt_elem(a)
    }
    fn name(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(|p| format!("1/{p}")).collect();
        format!("Z[{}]", ps.join(","))
    }
}

/// Factor a positive integer by trial division. Only used on denominators,
/// which stay small in every workload this crate targets.
pub fn trial_factor(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2u64);
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((u64::try_from(&d).expect("small factor"), e));
        }
        d += 1;
    }
    if !n.is_one() {
        out.push((u64::try_from(&n).expect("factor fits u64"), 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.add(&5, &4), 2);
        assert_eq!(f7.neg(&0), 0);
        assert_eq!(f7.mul(&3, &5), 1);
        assert_eq!(f7.try_inv(&3), Some(5));
        assert_eq!(f7.try_inv(&0), None);
        let q = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f7.from_ratio(&q).unwrap(), 4); // 2*4 = 1 mod 7
        let f2 = PrimeField::new(2).unwrap();
        assert!(f2.from_ratio(&q).is_err());
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn integers_units() {
        let z = Integers;
        assert!(z.try_inv(&BigInt::from(1)).is_some());
        assert!(z.try_inv(&BigInt::from(-1)).is_some());
        assert!(z.try_inv(&BigInt::from(2)).is_none());
        assert!(z.from_ratio(&BigRational::new(BigInt::from(3), BigInt::from(2))).is_err());
    }

    #[test]
    fn localized_units_and_support() {
        let z2 = LocalizedIntegers::new([2]).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(z2.from_ratio(&half).is_ok());
        assert!(z2.from_ratio(&third).is_err());
        // -8 is a unit, 6 is not.
        assert!(z2.try_inv(&BigRational::from_integer(BigInt::from(-8))).is_some());
        assert!(z2.try_inv(&BigRational::from_integer(BigInt::from(6))).is_none());
        assert_eq!(z2.name(), "Z[1/2]");
    }

    #[test]
    fn trial_factor_small() {
        assert_eq!(trial_factor(&BigInt::from(93312000)), vec![(2, 10), (3, 6), (5, 3)]);
        assert_eq!(trial_factor(&BigInt::from(1)), vec![]);
    }
}
