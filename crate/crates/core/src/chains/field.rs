//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) if is_prime(p) && p < (1 << 31) => Ok(()),
            FieldSpec::PrimeField(p) => Err(Error::InvalidParameter(format!(
                "{p} is not a supported prime modulus"
            ))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    /// Parses `Q`, `QQ`, `F7`, `Fp7` or a bare prime.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let spec = if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            FieldSpec::Rationals
        } else {
            let digits = t
                .trim_start_matches(['F', 'f'])
                .trim_start_matches(['p', 'P'])
                .trim_start_matches('_');
            let p: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("unrecognised field `{s}`")))?;
            FieldSpec::PrimeField(p)
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FieldSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field given by a context object; elements are plain values and every
/// operation goes through the context (the modulus lives there for prime fields).
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn spec(&self) -> FieldSpec;

    /// Image of the fraction `num/den`; fails when `den` is not invertible.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// An integer representative: the value itself over Q when integral, the
    /// least nonnegative residue over a prime field.
    fn to_integer(&self, a: &Self::Elem) -> Option<i64>;

    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn sign(&self, negative: bool) -> Self::Elem {
        if negative {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }

    /// Parses an integer or `a/b`.
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar `{s}`")))?;
        let den: BigInt = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar `{s}`")))?;
        self.from_fraction(&num, &den)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn to_integer(&self, a: &BigRational) -> Option<i64> {
        if a.is_integer() {
            a.to_integer().to_i64()
        } else {
            None
        }
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::PrimeField(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().expect("residue fits")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
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
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let d = self.reduce_big(den);
        let di = self.inv(&d).ok_or_else(|| {
            Error::Parse(format!("denominator {den} is not invertible mod {}", self.p))
        })?;
        Ok(self.mul(&self.reduce_big(num), &di))
    }
    fn to_integer(&self, a: &u64) -> Option<i64> {
        Some(*a as i64)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}
