//! Exact coefficient arithmetic over the rationals or a prime field.
//!
//! A [`FieldSpec`] is runtime data: the same polynomial code runs over Q
//! (arbitrary-precision rationals, always in lowest terms with positive
//! denominator) or over F_p (canonical representatives in `[0, p)`).
//! Every scalar operation goes through the field so that characteristic-
//! dependent behaviour has a single home.

use crate::error::{Error, Result};
use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The coefficient field: Q or F_p with p prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// One coefficient. The variant must match the owning field; all arithmetic
/// is performed through [`FieldSpec`] methods so the pairing is checked in
/// one place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(a) => *a == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(a) => *a == 1,
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over u64 (the listed witness set decides
/// primality for every 64-bit integer).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub fn prime(p: u64) -> Result<FieldSpec> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for Q, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Whether the characteristic divides `k`; always false over Q.
    pub fn char_divides(&self, k: u64) -> bool {
        match self {
            FieldSpec::Rationals => false,
            FieldSpec::Prime(p) => k % p == 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let r = v.rem_euclid(*p as i64);
                Scalar::Mod(r as u64)
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = v % &m;
                if r.sign() == Sign::Minus {
                    r += &m;
                }
                Scalar::Mod(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// Builds numer/denom, reducing over Q and inverting the denominator in F_p.
    pub fn from_ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<Scalar> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(numer.clone(), denom.clone()))),
            FieldSpec::Prime(_) => {
                let n = self.from_bigint(numer);
                let d = self.from_bigint(denom);
                self.div(&n, &d)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(mul_mod(*x, *y, *p)),
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Ok(Scalar::Mod(pow_mod(*x, p - 2, *p))),
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Parses "a" or "a/b" with optional sign, as used in JSON inputs.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("bad coefficient '{s}'"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            self.from_ratio(&n, &d)
        } else {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(self.from_bigint(&n))
        }
    }

    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(x) => x.to_string(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Serialized as "Q" or {"p": prime}, matching the arrangement input format.
impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Rationals => ser.serialize_str("Q"),
            FieldSpec::Prime(p) => {
                use serde::ser::SerializeMap;
                let mut m = ser.serialize_map(Some(1))?;
                m.serialize_entry("p", p)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Prime { p: u64 },
        }
        match Raw::deserialize(de)? {
            Raw::Name(s) if s == "Q" => Ok(FieldSpec::Rationals),
            Raw::Name(s) => {
                if let Some(ps) = s.strip_prefix('F').or_else(|| s.strip_prefix('f')) {
                    let p: u64 = ps
                        .parse()
                        .map_err(|_| serde::de::Error::custom(format!("unknown field '{s}'")))?;
                    FieldSpec::prime(p)
                        .map_err(|e| serde::de::Error::custom(e.to_string()))
                } else {
                    Err(serde::de::Error::custom(format!("unknown field '{s}'")))
                }
            }
            Raw::Prime { p } => {
                FieldSpec::prime(p).map_err(|e| serde::de::Error::custom(e.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(101));
        assert!(is_prime(65537));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(!is_prime(1_000_000));
        assert!(FieldSpec::prime(6).is_err());
    }

    #[test]
    fn rational_arithmetic_stays_reduced() {
        let k = FieldSpec::Rationals;
        let a = k.from_ratio(&BigInt::from(2), &BigInt::from(4)).unwrap();
        let b = k.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(k.render(&a), "1/2");
        let s = k.add(&a, &b);
        assert!(s.is_one());
        let neg = k.from_ratio(&BigInt::from(1), &BigInt::from(-3)).unwrap();
        assert_eq!(k.render(&neg), "-1/3");
    }

    #[test]
    fn prime_field_canonical_representatives() {
        let k = FieldSpec::prime(7).unwrap();
        let a = k.from_i64(-3);
        assert_eq!(a, Scalar::Mod(4));
        let inv = k.inv(&a).unwrap();
        assert!(k.mul(&a, &inv).is_one());
        assert!(k.char_divides(14));
        assert!(!k.char_divides(5));
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn field_spec_serde_round_trip() {
        let q: FieldSpec = serde_json::from_str("\"Q\"").unwrap();
        assert_eq!(q, FieldSpec::Rationals);
        let p: FieldSpec = serde_json::from_str("{\"p\": 13}").unwrap();
        assert_eq!(p, FieldSpec::Prime(13));
        assert!(serde_json::from_str::<FieldSpec>("{\"p\": 12}").is_err());
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"Q\"");
        assert_eq!(serde_json::to_string(&p).unwrap(), "{\"p\":13}");
    }
}
