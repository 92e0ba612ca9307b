//! Exact coefficient fields: arbitrary-precision rationals and prime fields
//! ℤ/p with p an odd prime.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Checks the admissibility invariants: the modulus must be prime and
    /// different from two; the rationals are always admissible.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(2) => Err(Error::invalid(
                "prime field of characteristic 2 is not admissible",
            )),
            FieldSpec::Prime(p) if !is_prime(p) => {
                Err(Error::Invalid(format!("{p} is not prime")))
            }
            FieldSpec::Prime(p) if p >= (1 << 31) => {
                Err(Error::Invalid(format!("modulus {p} too large (need < 2^31)")))
            }
            FieldSpec::Prime(_) => Ok(()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field of coefficients. Implementations carry their own data
/// (e.g. the prime modulus), so every operation takes `&self`.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn of_i64(&self, n: i64) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    /// Rescales a nonzero coefficient vector into its canonical generator
    /// form (used to tame coefficient growth during basis computations).
    /// Over a prime field this makes the first entry 1; over ℚ it clears
    /// denominators, divides by the content and makes the first entry
    /// positive. Both scalings preserve the span.
    fn scale_canonical(&self, coeffs: &mut [Self::Elem]);

    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// True when the element, printed as a signed quantity, starts with a
    /// minus sign. Prime-field representatives are never negative.
    fn is_displayed_negative(&self, a: &Self::Elem) -> bool;

    /// Magnitude part for display: `a` without its leading sign.
    fn fmt_abs(&self, a: &Self::Elem) -> String;
}

/// The prime field ℤ/p, p an odd prime below 2³¹. Elements are canonical
/// representatives in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::Prime(p).validate()?;
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
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
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^31 so the product fits in u64
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let p = self.p as i128;
        Some(((s0 % p + p) % p) as u64)
    }
    fn of_i64(&self, n: i64) -> u64 {
        let p = self.p as i128;
        ((n as i128 % p + p) % p) as u64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn scale_canonical(&self, coeffs: &mut [u64]) {
        if let Some(first) = coeffs.iter().find(|c| **c != 0) {
            let inv = self.inv(first).unwrap();
            for c in coeffs.iter_mut() {
                *c = self.mul(c, &inv);
            }
        }
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn is_displayed_negative(&self, _a: &u64) -> bool {
        false
    }
    fn fmt_abs(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The field ℚ with arbitrary-precision arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
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
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn of_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn scale_canonical(&self, coeffs: &mut [BigRational]) {
        let mut lcm_den = BigInt::one();
        for c in coeffs.iter() {
            if !c.is_zero() {
                lcm_den = lcm_den.lcm(c.denom());
            }
        }
        let mut gcd_num = BigInt::zero();
        for c in coeffs.iter() {
            if !c.is_zero() {
                let scaled = c.numer() * &lcm_den / c.denom();
                gcd_num = gcd_num.gcd(&scaled);
            }
        }
        if gcd_num.is_zero() {
            return;
        }
        let mut factor = BigRational::new(lcm_den, gcd_num);
        if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
            if (first * &factor).is_negative() {
                factor = -factor;
            }
        }
        for c in coeffs.iter_mut() {
            *c *= &factor;
        }
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn is_displayed_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn fmt_abs(&self, a: &BigRational) -> String {
        a.abs().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_rejects_two_and_composites() {
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(32004).is_err());
        assert!(Fp::new(32003).is_ok());
        assert!(FieldSpec::Prime(7).validate().is_ok());
        assert!(FieldSpec::Rationals.validate().is_ok());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(32003).unwrap();
        assert_eq!(f.add(&32002, &1), 0);
        assert_eq!(f.of_i64(-1), 32002);
        let inv = f.inv(&12345).unwrap();
        assert_eq!(f.mul(&12345, &inv), 1);
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rational_canonical_scaling() {
        let f = Rationals;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
        let mut v = vec![half, third];
        f.scale_canonical(&mut v);
        assert_eq!(v[0], f.of_i64(3));
        assert_eq!(v[1], f.of_i64(-2));
    }
}
