//! Exact scalar domains: the rationals and prime fields F_p.
//!
//! Fields are context objects; elements are plain data. Every arithmetic
//! operation goes through the field so that prime-field reduction and
//! rational normalization stay exact.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A field with exact arithmetic.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// The fraction `num/den`; `None` when `den` maps to zero.
    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem>;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// Number of field elements when finite.
    fn size(&self) -> Option<u64>;
    /// The `k`-th element of a finite field, `0 <= k < size()`.
    fn elem_from_index(&self, k: u64) -> Self::Elem;
    /// A random element: uniform over F_p, a small-height integer over Q.
    fn random_elem<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
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
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: i64, den: i64) -> Option<BigRational> {
        if den == 0 {
            None
        } else {
            Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn elem_from_index(&self, _k: u64) -> BigRational {
        panic!("rationals are not enumerable");
    }
    fn random_elem<R: Rng>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3i64..=3))
    }
}

/// The prime field F_p, elements stored as residues in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Construct F_p; panics if `p` is not prime or does not fit in 31 bits.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "PrimeField requires a prime modulus, got {p}");
        assert!(p < (1 << 31), "modulus too large: {p}");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        let m = self.p as i64;
        (((n % m) + m) % m) as u64
    }
}

impl Field for PrimeField {
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
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        Some(self.pow(a, self.p - 2))
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Option<u64> {
        let d = self.reduce_i64(den);
        let di = self.inv(&d)?;
        Some(self.mul(&self.reduce_i64(num), &di))
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn size(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elem_from_index(&self, k: u64) -> u64 {
        debug_assert!(k < self.p);
        k
    }
    fn random_elem<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Runtime selection of the active scalar domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarDomain {
    Rationals,
    PrimeField(u64),
}

impl ScalarDomain {
    pub fn is_finite(&self) -> bool {
        matches!(self, ScalarDomain::PrimeField(_))
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Rationals => write!(f, "QQ"),
            ScalarDomain::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// A rational literal as parsed from input files, before any field is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatLit {
    pub num: i64,
    pub den: i64,
}

impl RatLit {
    pub fn int(n: i64) -> Self {
        RatLit { num: n, den: 1 }
    }

    pub fn to_elem<F: Field>(&self, field: &F) -> Option<F::Elem> {
        field.from_ratio(self.num, self.den)
    }
}

/// Sign of a rational, used by exact cone queries.
pub fn rational_sign(a: &BigRational) -> i32 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_basics() {
        let f5 = PrimeField::new(5);
        assert_eq!(f5.add(&3, &4), 2);
        assert_eq!(f5.mul(&3, &4), 2);
        assert_eq!(f5.inv(&3), Some(2));
        assert_eq!(f5.from_ratio(1, 2), Some(3));
        assert_eq!(f5.neg(&0), 0);
    }

    #[test]
    #[should_panic]
    fn composite_modulus_rejected() {
        PrimeField::new(6);
    }

    #[test]
    fn rationals_exact() {
        let q = Rationals;
        let half = q.from_ratio(1, 2).unwrap();
        let third = q.from_ratio(1, 3).unwrap();
        let sum = q.add(&half, &third);
        assert_eq!(q.fmt_elem(&sum), "5/6");
    }

    proptest! {
        #[test]
        fn f7_field_axioms(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
            let f = PrimeField::new(7);
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)),
                            f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if a != 0 {
                let ai = f.inv(&a).unwrap();
                prop_assert_eq!(f.mul(&a, &ai), 1);
            }
        }
    }
}
