//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept sorted in strictly descending ambient degrevlex order with
//! no zero coefficients, so structural equality is semantic equality. The
//! zero polynomial is the empty term list and reports its degree as `None`
//! rather than a numeric sentinel. Variable names are display metadata;
//! compatibility between rings is the field plus the variable count.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
pub struct PolynomialRing {
    field: FieldSpec,
    vars: Vec<String>,
}

pub type Ring = Arc<PolynomialRing>;

impl PolynomialRing {
    pub fn new(field: FieldSpec, vars: Vec<String>) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::InvalidInput(format!("bad variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable name '{v}'")));
            }
        }
        Ok(Arc::new(PolynomialRing { field, vars }))
    }

    /// K[x1, ..., xn], the default naming for generated rings.
    pub fn standard(field: FieldSpec, n: usize) -> Ring {
        let vars = (1..=n).map(|i| format!("x{i}")).collect();
        PolynomialRing::new(field, vars).expect("standard names are valid")
    }

    /// Short names x, y, z, w for hand-written examples of rank at most 4.
    pub fn xyzw(field: FieldSpec, n: usize) -> Ring {
        assert!(n <= 4, "xyzw naming supports at most 4 variables");
        let vars = ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect();
        PolynomialRing::new(field, vars).expect("xyzw names are valid")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Structural compatibility: same field and variable count. Names are
    /// metadata and do not participate.
    pub fn compatible(&self, other: &PolynomialRing) -> bool {
        self.field == other.field && self.vars.len() == other.vars.len()
    }
}

/// Appends fresh variables after the existing ones.
pub fn extend_ring_back(ring: &Ring, extra: &[&str]) -> Result<Ring> {
    let mut vars = ring.vars.clone();
    vars.extend(extra.iter().map(|s| s.to_string()));
    PolynomialRing::new(ring.field, vars)
}

/// Prepends fresh variables before the existing ones (they become the leading
/// block for elimination orders).
pub fn extend_ring_front(ring: &Ring, extra: &[&str]) -> Result<Ring> {
    let mut vars: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
    vars.extend(ring.vars.clone());
    PolynomialRing::new(ring.field, vars)
}

/// The ring obtained by dropping the first `k` variables.
pub fn shrink_ring_front(ring: &Ring, k: usize) -> Result<Ring> {
    PolynomialRing::new(ring.field, ring.vars[k..].to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Scalar,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.compatible(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { mono: Monomial::one(ring.nvars()), coeff: c }],
        }
    }

    pub fn variable(ring: &Ring, i: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                mono: Monomial::variable(ring.nvars(), i),
                coeff: ring.field.one(),
            }],
        }
    }

    pub fn monomial_term(ring: &Ring, mono: Monomial, coeff: Scalar) -> Polynomial {
        Polynomial::from_terms(ring, vec![Term { mono, coeff }])
    }

    /// Normalizing constructor: merges duplicate monomials, drops zeros,
    /// sorts descending in the ambient order.
    pub fn from_terms(ring: &Ring, terms: Vec<Term>) -> Polynomial {
        let field = ring.field;
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for t in terms {
            debug_assert_eq!(t.mono.nvars(), ring.nvars());
            match acc.entry(t.mono) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(t.coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = field.add(e.get(), &t.coeff);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { mono, coeff })
            .collect();
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a linear form from a coefficient vector.
    pub fn linear_form(ring: &Ring, coeffs: &[Scalar]) -> Polynomial {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Term {
                mono: Monomial::variable(ring.nvars(), i),
                coeff: c.clone(),
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t0) => {
                let d = t0.mono.degree();
                self.terms.iter().all(|t| t.mono.degree() == d)
            }
        }
    }

    /// The common degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroInput("homogeneous degree of 0 is undefined".into()));
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        Ok(self.terms[0].mono.degree())
    }

    /// Leading term in the ambient degrevlex order.
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn coeff_of(&self, mono: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|t| &t.mono == mono)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.compatible(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} vs {} variables over {} vs {}",
                self.ring.nvars(),
                other.ring.nvars(),
                self.ring.field,
                other.ring.field
            )))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match a.mono.cmp(&b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&a.coeff, &b.coeff);
                    if !c.is_zero() {
                        out.push(Term { mono: a.mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ring: self.ring.clone(), terms: out })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coeff: field.neg(&t.coeff) })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coeff: field.mul(&t.coeff, c) })
                .collect(),
        }
    }

    /// Multiplication by a single term keeps the sort order, so it is a map.
    pub fn mul_term(&self, mono: &Monomial, coeff: &Scalar) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(mono),
                    coeff: field.mul(&t.coeff, coeff),
                })
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field;
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let mono = a.mono.mul(&b.mono);
                let prod = field.mul(&a.coeff, &b.coeff);
                match acc.entry(mono) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = field.add(e.get(), &prod);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .map(|(mono, coeff)| Term { mono, coeff })
            .collect();
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Polynomial {
        let field = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.exp(i) > 0)
            .map(|t| {
                let e = t.mono.exp(i);
                let mut exps = t.mono.exps().to_vec();
                exps[i] = e - 1;
                Term {
                    mono: Monomial::from_exps(exps),
                    coeff: field.mul(&t.coeff, &field.from_i64(e as i64)),
                }
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars()).map(|i| self.partial(i)).collect()
    }

    /// Substitutes `images[i]` for variable `i`. All images must live in one
    /// common ring over the same field.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidInput(format!(
                "expected {} substitution images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .ok_or_else(|| Error::InvalidInput("no substitution images".into()))?;
        for p in images {
            if !p.ring.compatible(&target) {
                return Err(Error::RingMismatch("substitution images in different rings".into()));
            }
        }
        if *target.field() != self.ring.field {
            return Err(Error::RingMismatch("substitution across different fields".into()));
        }
        // Precompute the powers of each image that actually occur.
        let mut max_exp = vec![0u16; self.ring.nvars()];
        for t in &self.terms {
            for i in 0..self.ring.nvars() {
                max_exp[i] = max_exp[i].max(t.mono.exp(i));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let mut ps = vec![Polynomial::one(&target)];
            for e in 1..=max_exp[i] {
                let next = ps[(e - 1) as usize].try_mul(img)?;
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc = Polynomial::zero(&target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(&target, t.coeff.clone());
            for i in 0..self.ring.nvars() {
                let e = t.mono.exp(i);
                if e > 0 {
                    prod = prod.try_mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.try_add(&prod)?;
        }
        Ok(acc)
    }

    /// Over Q, clears denominators and divides by the integer content so the
    /// coefficients are coprime integers with positive leading coefficient.
    /// Over F_p, rescales to a monic leading term. Returns zero unchanged.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        match self.ring.field {
            FieldSpec::Prime(_) => self.monic(),
            FieldSpec::Rationals => {
                let mut denom_lcm = BigInt::one();
                for t in &self.terms {
                    if let Scalar::Rat(r) = &t.coeff {
                        denom_lcm = num::integer::lcm(denom_lcm, r.denom().clone());
                    }
                }
                let mut numer_gcd = BigInt::zero();
                for t in &self.terms {
                    if let Scalar::Rat(r) = &t.coeff {
                        let scaled = r.numer() * (&denom_lcm / r.denom());
                        numer_gcd = num::integer::gcd(numer_gcd, scaled);
                    }
                }
                if numer_gcd.is_zero() {
                    return self.clone();
                }
                let mut factor = BigRational::new(denom_lcm, numer_gcd);
                if let Scalar::Rat(lead) = &self.terms[0].coeff {
                    if (lead * &factor).is_negative() {
                        factor = -factor;
                    }
                }
                self.scale(&Scalar::Rat(factor))
            }
        }
    }

    /// Rescales so the ambient leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = self.ring.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Reinterprets the polynomial in a larger ring, shifting variable `i`
    /// to `i + offset`.
    pub fn inject_into(&self, big: &Ring, offset: usize) -> Result<Polynomial> {
        if *big.field() != self.ring.field {
            return Err(Error::RingMismatch("injection across different fields".into()));
        }
        let extra_back = big
            .nvars()
            .checked_sub(offset + self.ring.nvars())
            .ok_or_else(|| Error::RingMismatch("target ring too small for injection".into()))?;
        let terms = self
            .terms
            .iter()
            .map(|t| Term { mono: t.mono.pad(offset, extra_back), coeff: t.coeff.clone() })
            .collect();
        Ok(Polynomial { ring: big.clone(), terms })
    }

    /// Drops the first `k` variables; fails if any term uses them.
    pub fn strip_front_vars(&self, k: usize, small: &Ring) -> Result<Polynomial> {
        if small.nvars() + k != self.ring.nvars() || *small.field() != self.ring.field {
            return Err(Error::RingMismatch("target ring has the wrong shape".into()));
        }
        for t in &self.terms {
            if t.mono.exps()[..k].iter().any(|&e| e > 0) {
                return Err(Error::InvalidInput(
                    "polynomial involves a variable being dropped".into(),
                ));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { mono: t.mono.truncate_front(k), coeff: t.coeff.clone() })
            .collect();
        Ok(Polynomial { ring: small.clone(), terms })
    }
}

/// The Euler combination sum_i x_i * df/dx_i of a homogeneous polynomial.
/// When the characteristic does not divide deg f this equals (deg f) * f.
pub fn euler_combination(f: &Polynomial) -> Result<Polynomial> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let ring = f.ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for i in 0..ring.nvars() {
        let xi = Polynomial::variable(&ring, i);
        acc = acc.try_add(&xi.try_mul(&f.partial(i))?)?;
    }
    Ok(acc)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (idx, t) in self.terms.iter().enumerate() {
            let rendered = field.render(&t.coeff);
            let (sign, mag) = match rendered.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", rendered),
            };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else if sign == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if t.mono.is_one() || mag != "1" {
                pieces.push(mag);
            }
            for i in 0..t.mono.nvars() {
                let e = t.mono.exp(i);
                if e == 1 {
                    pieces.push(self.ring.var_name(i).to_string());
                } else if e > 1 {
                    pieces.push(format!("{}^{}", self.ring.var_name(i), e));
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring() -> Ring {
        PolynomialRing::xyzw(FieldSpec::Rationals, 3)
    }

    #[test]
    fn zero_has_no_degree() {
        let r = qring();
        let z = Polynomial::zero(&r);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert!(z.is_homogeneous());
        assert!(z.homogeneous_degree().is_err());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn arithmetic_merges_and_cancels() {
        let r = qring();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let s = x.try_add(&y).unwrap();
        let d = s.try_sub(&x).unwrap();
        assert_eq!(d, y);
        let p = s.try_mul(&s).unwrap();
        assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous());
        let diff = p.try_sub(&p).unwrap();
        assert!(diff.is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r3 = qring();
        let r2 = PolynomialRing::xyzw(FieldSpec::Rationals, 2);
        let a = Polynomial::variable(&r3, 0);
        let b = Polynomial::variable(&r2, 0);
        assert!(a.try_add(&b).is_err());
        let rp = PolynomialRing::standard(FieldSpec::prime(5).unwrap(), 3);
        let c = Polynomial::variable(&rp, 0);
        assert!(a.try_mul(&c).is_err());
        // Same shape, different names: compatible by design, so the first
        // variables of the two rings add up as one term.
        let renamed = PolynomialRing::new(FieldSpec::Rationals, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let d = Polynomial::variable(&renamed, 0);
        assert_eq!(a.try_add(&d).unwrap(), a.scale(&FieldSpec::Rationals.from_i64(2)));
    }

    #[test]
    fn partials_and_euler_identity() {
        let r = qring();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let z = Polynomial::variable(&r, 2);
        // f = x y z, the braid-free baseline.
        let f = x.try_mul(&y).unwrap().try_mul(&z).unwrap();
        assert_eq!(f.partial(0).to_string(), "y*z");
        let e = euler_combination(&f).unwrap();
        assert_eq!(e, f.scale(&r.field().from_i64(3)));
        // In characteristic 3 the same combination vanishes.
        let r3 = PolynomialRing::xyzw(FieldSpec::prime(3).unwrap(), 3);
        let g = Polynomial::variable(&r3, 0)
            .try_mul(&Polynomial::variable(&r3, 1))
            .unwrap()
            .try_mul(&Polynomial::variable(&r3, 2))
            .unwrap();
        assert!(euler_combination(&g).unwrap().is_zero());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let r = qring();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let half = r.field().parse_scalar("1/2").unwrap();
        let third = r.field().parse_scalar("-1/3").unwrap();
        let p = x.scale(&half).try_add(&y.scale(&third)).unwrap();
        let prim = p.primitive_part();
        assert_eq!(prim.to_string(), "3*x - 2*y");
        let neg = p.neg().primitive_part();
        assert_eq!(neg.to_string(), "3*x - 2*y");
    }

    #[test]
    fn compose_substitutes_linear_images() {
        let r = qring();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let z = Polynomial::variable(&r, 2);
        let f = x.pow(2).try_sub(&y.try_mul(&z).unwrap()).unwrap();
        // x -> y + z, y -> z, z -> x gives (y+z)^2 - z*x.
        let images = vec![y.try_add(&z).unwrap(), z.clone(), x.clone()];
        let g = f.compose(&images).unwrap();
        assert_eq!(g.to_string(), "y^2 - x*z + 2*y*z + z^2");
    }

    #[test]
    fn display_is_canonical() {
        let r = qring();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let p = x
            .pow(3)
            .scale(&r.field().from_i64(-1))
            .try_add(&x.try_mul(&y).unwrap().scale(&r.field().from_i64(2)))
            .unwrap()
            .try_add(&Polynomial::one(&r))
            .unwrap();
        assert_eq!(p.to_string(), "-x^3 + 2*x*y + 1");
    }

    #[test]
    fn injection_and_projection_round_trip() {
        let small = PolynomialRing::xyzw(FieldSpec::Rationals, 2);
        let big = PolynomialRing::standard(FieldSpec::Rationals, 4);
        let x = Polynomial::variable(&small, 0);
        let y = Polynomial::variable(&small, 1);
        let p = x.try_mul(&y).unwrap().try_add(&y.pow(2)).unwrap();
        let q = p.inject_into(&big, 2).unwrap();
        assert_eq!(q.to_string(), "x3*x4 + x4^2");
        let back = q.strip_front_vars(2, &small).unwrap();
        assert_eq!(back, p);
        assert!(q.strip_front_vars(3, &PolynomialRing::xyzw(FieldSpec::Rationals, 1)).is_err());
    }
}
