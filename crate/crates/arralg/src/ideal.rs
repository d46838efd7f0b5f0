//! Ideals of a polynomial ring, with cached reduced bases and the standard
//! toolbox built on top of them: membership, sums, products, intersections,
//! colons, saturations, and variable elimination.
//!
//! A basis is computed at most once per (order, degree cap) pair and shared
//! through an `Arc`, so cloning an `Ideal` is cheap and repeated queries
//! against the same ideal do not redo the Buchberger run.

use crate::budget;
use crate::engine::{self, GbOptions, VTerm, VecElem};
use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::{extend_ring_front, shrink_ring_front, Polynomial, Ring, Term};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

pub(crate) fn poly_to_elem(p: &Polynomial, ord: &MonomialOrder) -> VecElem {
    VecElem::from_terms(
        p.field(),
        ord,
        p.terms()
            .iter()
            .map(|t| VTerm { mono: t.mono.clone(), comp: 0, coeff: t.coeff.clone() })
            .collect(),
    )
}

pub(crate) fn elem_to_poly(ring: &Ring, e: &VecElem) -> Polynomial {
    Polynomial::from_terms(
        ring,
        e.terms
            .iter()
            .map(|t| {
                debug_assert_eq!(t.comp, 0, "module element projected as a polynomial");
                Term { mono: t.mono.clone(), coeff: t.coeff.clone() }
            })
            .collect(),
    )
}

/// Exact division of `p` by `g`; errors unless `g` divides `p`.
pub fn divide_exact(p: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !p.ring().compatible(g.ring()) {
        return Err(Error::RingMismatch("division across different rings".into()));
    }
    let ord = MonomialOrder::DegRevLex;
    let red = engine::reduce(
        p.field(),
        &ord,
        &poly_to_elem(p, &ord),
        &[poly_to_elem(g, &ord)],
        true,
    )?;
    if !red.reduced_to_zero() {
        return Err(Error::InvalidInput(format!("{} does not divide {}", g, p)));
    }
    Ok(elem_to_poly(p.ring(), &red.quotients(p.field(), &ord)))
}

/// A variable name not already used by the ring, for auxiliary constructions.
pub(crate) fn fresh_var_name(ring: &Ring, base: &str) -> String {
    if ring.var_index(base).is_none() {
        return base.to_string();
    }
    let mut i = 0usize;
    loop {
        let candidate = format!("{base}{i}");
        if ring.var_index(&candidate).is_none() {
            return candidate;
        }
        i += 1;
    }
}

type CacheKey = (MonomialOrder, Option<u32>);

/// An ideal, held as its original generators plus lazily computed reduced
/// bases.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Arc<Mutex<BTreeMap<CacheKey, Arc<Vec<Polynomial>>>>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// Builds an ideal from generators, dropping zeros. All generators must
    /// live in (a ring compatible with) `ring`.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !g.ring().compatible(ring) {
                return Err(Error::RingMismatch(
                    "ideal generator from an incompatible ring".into(),
                ));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("no generators to mismatch")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("constant generator")
    }

    /// The irrelevant maximal ideal (x_1, ..., x_n).
    pub fn irrelevant(ring: &Ring) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect();
        Ideal::new(ring, gens).expect("variables live in the ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// True when every generator is homogeneous of the same degree.
    pub fn is_equigenerated(&self) -> Option<u32> {
        let first = self.gens.first()?.homogeneous_degree().ok()?;
        self.gens
            .iter()
            .all(|g| g.homogeneous_degree().ok() == Some(first))
            .then_some(first)
    }

    /// Reduced basis for `ord`, computed once and cached.
    pub fn groebner_basis(&self, ord: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        self.basis_impl(ord, None)
    }

    /// Reduced basis valid through degree `cap`. Requires homogeneous
    /// generators; pairs above the cap are discarded, which is what makes
    /// single-degree questions affordable.
    pub fn truncated_basis(&self, ord: MonomialOrder, cap: u32) -> Result<Arc<Vec<Polynomial>>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(
                "degree-capped bases need homogeneous generators".into(),
            ));
        }
        self.basis_impl(ord, Some(cap))
    }

    fn basis_impl(&self, ord: MonomialOrder, cap: Option<u32>) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(hit) = self.cache.lock().unwrap().get(&(ord, cap)) {
            return Ok(hit.clone());
        }
        let elems: Vec<VecElem> = self.gens.iter().map(|g| poly_to_elem(g, &ord)).collect();
        let opts = GbOptions {
            ord,
            shifts: Vec::new(),
            prune: true,
            degree_cap: cap,
            trace: false,
        };
        let gb = engine::buchberger(self.ring.field(), &elems, &opts)?;
        let polys: Arc<Vec<Polynomial>> =
            Arc::new(gb.basis.iter().map(|e| elem_to_poly(&self.ring, e)).collect());
        self.cache.lock().unwrap().insert((ord, cap), polys.clone());
        Ok(polys)
    }

    /// The unique normal form of `p` modulo this ideal (degrevlex).
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        let ord = MonomialOrder::DegRevLex;
        let gb = self.groebner_basis(ord)?;
        let basis: Vec<VecElem> = gb.iter().map(|g| poly_to_elem(g, &ord)).collect();
        let red = engine::reduce(p.field(), &ord, &poly_to_elem(p, &ord), &basis, false)?;
        Ok(elem_to_poly(p.ring(), &red.normal_form(p.field())))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Membership test for a homogeneous `p` using a basis truncated at
    /// deg(p). Requires homogeneous generators.
    pub fn contains_truncated(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let d = p.homogeneous_degree()?;
        let ord = MonomialOrder::DegRevLex;
        let gb = self.truncated_basis(ord, d)?;
        let basis: Vec<VecElem> = gb.iter().map(|g| poly_to_elem(g, &ord)).collect();
        let red = engine::reduce(p.field(), &ord, &poly_to_elem(p, &ord), &basis, false)?;
        Ok(red.reduced_to_zero())
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        let gb = self.groebner_basis(MonomialOrder::DegRevLex)?;
        Ok(gb.len() == 1 && gb[0].degree() == Some(0))
    }

    /// Equality as ideals: identical reduced degrevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if !self.ring.compatible(&other.ring) {
            return Err(Error::RingMismatch("comparing ideals across rings".into()));
        }
        let a = self.groebner_basis(MonomialOrder::DegRevLex)?;
        let b = other.groebner_basis(MonomialOrder::DegRevLex)?;
        Ok(*a == *b)
    }

    /// Writes `p` as an explicit combination of the stored generators, or
    /// `None` if `p` is not in the ideal. With `cap = Some(d)` the
    /// computation is degree-capped (homogeneous case only), making it exact
    /// for homogeneous `p` of degree at most `d`.
    pub fn express_in_generators(
        &self,
        p: &Polynomial,
        cap: Option<u32>,
    ) -> Result<Option<Vec<Polynomial>>> {
        if p.is_zero() {
            return Ok(Some(vec![Polynomial::zero(&self.ring); self.gens.len()]));
        }
        if cap.is_some() && !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(
                "degree-capped expression needs homogeneous generators".into(),
            ));
        }
        let ord = MonomialOrder::DegRevLex;
        let field = self.ring.field();
        let elems: Vec<VecElem> = self.gens.iter().map(|g| poly_to_elem(g, &ord)).collect();
        let opts = GbOptions {
            ord,
            shifts: Vec::new(),
            prune: true,
            degree_cap: cap,
            trace: true,
        };
        let gb = engine::buchberger(field, &elems, &opts)?;
        let basis = &gb.basis;
        let trace = gb.trace.as_ref().expect("trace requested");
        let red = engine::reduce(field, &ord, &poly_to_elem(p, &ord), basis, true)?;
        if !red.reduced_to_zero() {
            return Ok(None);
        }
        // p = sum_k q_k basis[k] and basis[k] = trace[k] . gens, so the
        // coefficient on gens[j] is sum_k q_k trace[k][j].
        let q = red.quotients(field, &ord);
        let mut acc = VecElem::zero();
        for t in &q.terms {
            acc = acc.sub_term_mul(field, &ord, &field.neg(&t.coeff), &t.mono, &trace[t.comp as usize]);
        }
        let mut out = vec![Polynomial::zero(&self.ring); self.gens.len()];
        for j in 0..self.gens.len() {
            let terms = acc
                .component_terms(j as u32)
                .into_iter()
                .map(|(mono, coeff)| Term { mono, coeff })
                .collect();
            out[j] = Polynomial::from_terms(&self.ring, terms);
        }
        Ok(Some(out))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.compatible(&other.ring) {
            return Err(Error::RingMismatch("sum of ideals across rings".into()));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.compatible(&other.ring) {
            return Err(Error::RingMismatch("product of ideals across rings".into()));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.try_mul(g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        if k == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection via the auxiliary-variable trick: eliminate t from
    /// t I + (1 - t) J.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.compatible(&other.ring) {
            return Err(Error::RingMismatch("intersection of ideals across rings".into()));
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let aux_name = fresh_var_name(&self.ring, "t@");
        let big = extend_ring_front(&self.ring, &[&aux_name])?;
        let t = Polynomial::variable(&big, 0);
        let one_minus_t = Polynomial::one(&big).try_sub(&t)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(t.try_mul(&f.inject_into(&big, 1)?)?);
        }
        for g in &other.gens {
            gens.push(one_minus_t.try_mul(&g.inject_into(&big, 1)?)?);
        }
        let aux = Ideal::new(&big, gens)?;
        let eliminated = aux.eliminate_front(1)?;
        // Rebuild over the original ring so variable names survive.
        Ideal::new(
            &self.ring,
            eliminated
                .gens
                .iter()
                .map(|g| {
                    Polynomial::from_terms(&self.ring, g.terms().to_vec())
                })
                .collect(),
        )
    }

    /// The colon ideal (self : g), via (self intersect (g)) / g.
    pub fn colon_poly(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersection(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|h| divide_exact(h, g))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// The colon ideal (self : other) = intersection of (self : g) over the
    /// generators g of `other`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        if other.is_zero_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            budget::check()?;
            let piece = self.colon_poly(g)?;
            acc = Some(match acc {
                None => piece,
                Some(prev) => prev.intersection(&piece)?,
            });
        }
        Ok(acc.expect("other has generators"))
    }

    /// Saturation (self : other^infinity) by iterating colons until they
    /// stabilize. Also returns the stabilization exponent: the least s with
    /// (self : other^s) = (self : other^(s+1)).
    pub fn saturation(&self, other: &Ideal) -> Result<(Ideal, u32)> {
        let mut current = self.clone();
        let mut s = 0u32;
        loop {
            budget::check()?;
            let next = current.colon(other)?;
            if next.equals(&current)? {
                return Ok((current, s));
            }
            current = next;
            s += 1;
        }
    }

    /// Eliminates the first `k` variables: the contraction of the ideal to
    /// the subring in the remaining variables, computed with a block order.
    pub fn eliminate_front(&self, k: usize) -> Result<Ideal> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.ring.nvars() {
            return Err(Error::InvalidInput(
                "cannot eliminate every variable of the ring".into(),
            ));
        }
        let gb = self.groebner_basis(MonomialOrder::Block(k))?;
        let small = shrink_ring_front(&self.ring, k)?;
        let mut gens = Vec::new();
        for g in gb.iter() {
            if g.terms().iter().all(|t| (0..k).all(|i| t.mono.exp(i) == 0)) {
                gens.push(g.strip_front_vars(k, &small)?);
            }
        }
        Ideal::new(&small, gens)
    }
}
