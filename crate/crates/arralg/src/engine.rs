//! The Buchberger engine, written once at the level of free modules.
//!
//! An element of R^s is a sorted list of (monomial, component, coefficient)
//! triples under a term-over-position order: monomials are compared by the
//! active [`MonomialOrder`], ties broken toward the lower component. Ideals
//! are the single-component case, and syzygy computations reuse the same
//! machinery one level up, so there is exactly one division routine and one
//! pair loop to get right.
//!
//! Over Q the reducer works fraction-free: instead of dividing by leading
//! coefficients it rescales the working element and keeps a running scale
//! factor, so intermediate coefficients stay integral and the exact normal
//! form or division quotients can be recovered at the end by one division.
//! S-polynomials of same-component pairs are formed cross-scaled for the
//! same reason.
//!
//! Pair pruning follows Gebauer-Moeller. The product (coprime) criterion is
//! applied only in the single-component case, where it is a theorem; it is
//! not valid for modules. Syzygy extraction (`syzygy_generators`) therefore
//! re-reduces every same-component S-pair of the finished basis with pruning
//! disabled, which is the textbook hypothesis for the lifted-trace argument.

use crate::budget;
use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::monomial::{Monomial, MonomialOrder};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: Scalar,
}

/// An element of a free module R^s with terms sorted strictly descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VecElem {
    pub terms: Vec<VTerm>,
}

fn vcmp(ord: &MonomialOrder, a: &VTerm, b: &VTerm) -> Ordering {
    ord.cmp(&a.mono, &b.mono).then_with(|| b.comp.cmp(&a.comp))
}

impl VecElem {
    pub fn zero() -> VecElem {
        VecElem { terms: Vec::new() }
    }

    pub fn unit(nvars: usize, comp: u32, field: &FieldSpec) -> VecElem {
        VecElem {
            terms: vec![VTerm { mono: Monomial::one(nvars), comp, coeff: field.one() }],
        }
    }

    pub fn from_terms(field: &FieldSpec, ord: &MonomialOrder, mut terms: Vec<VTerm>) -> VecElem {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| vcmp(ord, b, a));
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        VecElem { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &VTerm {
        &self.terms[0]
    }

    /// Degree with component shifts; `None` for zero.
    pub fn degree(&self, shifts: &[u32]) -> Option<u32> {
        self.terms
            .iter()
            .map(|t| t.mono.degree() + shifts.get(t.comp as usize).copied().unwrap_or(0))
            .max()
    }

    pub fn is_homogeneous(&self, shifts: &[u32]) -> bool {
        match self.terms.first() {
            None => true,
            Some(t0) => {
                let d = t0.mono.degree() + shifts.get(t0.comp as usize).copied().unwrap_or(0);
                self.terms.iter().all(|t| {
                    t.mono.degree() + shifts.get(t.comp as usize).copied().unwrap_or(0) == d
                })
            }
        }
    }

    pub fn scale(&self, field: &FieldSpec, c: &Scalar) -> VecElem {
        if c.is_zero() {
            return VecElem::zero();
        }
        VecElem {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    mono: t.mono.clone(),
                    comp: t.comp,
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    /// self - coeff * mono * other, merged in one pass.
    pub fn sub_term_mul(
        &self,
        field: &FieldSpec,
        ord: &MonomialOrder,
        coeff: &Scalar,
        mono: &Monomial,
        other: &VecElem,
    ) -> VecElem {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let bt = &other.terms[j];
            let bmono = bt.mono.mul(mono);
            let key = VTerm { mono: bmono, comp: bt.comp, coeff: field.zero() };
            match vcmp(ord, a, &key) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = field.neg(&field.mul(&bt.coeff, coeff));
                    out.push(VTerm { mono: key.mono, comp: bt.comp, coeff: c });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.sub(&a.coeff, &field.mul(&bt.coeff, coeff));
                    if !c.is_zero() {
                        out.push(VTerm { mono: key.mono, comp: a.comp, coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < other.terms.len() {
            let bt = &other.terms[j];
            let c = field.neg(&field.mul(&bt.coeff, coeff));
            out.push(VTerm { mono: bt.mono.mul(mono), comp: bt.comp, coeff: c });
            j += 1;
        }
        VecElem { terms: out }
    }

    /// The scalar s such that scale(s) has coprime integer coefficients and a
    /// positive leading one (over Q), or a monic leading term (over F_p).
    pub fn primitive_factor(&self, field: &FieldSpec) -> Scalar {
        if self.terms.is_empty() {
            return field.one();
        }
        match field {
            FieldSpec::Prime(_) => field.inv(&self.terms[0].coeff).expect("lead is nonzero"),
            FieldSpec::Rationals => {
                let mut denom_lcm = BigInt::one();
                let mut numer_gcd = BigInt::zero();
                for t in &self.terms {
                    if let Scalar::Rat(r) = &t.coeff {
                        denom_lcm = num::integer::lcm(denom_lcm, r.denom().clone());
                    }
                }
                for t in &self.terms {
                    if let Scalar::Rat(r) = &t.coeff {
                        let scaled = r.numer() * (&denom_lcm / r.denom());
                        numer_gcd = num::integer::gcd(numer_gcd, scaled);
                    }
                }
                let mut factor = BigRational::new(denom_lcm, numer_gcd);
                if let Scalar::Rat(lead) = &self.terms[0].coeff {
                    if (lead * &factor).is_negative() {
                        factor = -factor;
                    }
                }
                Scalar::Rat(factor)
            }
        }
    }

    /// Multiply every term by a monomial. Order is preserved, since monomial
    /// orders are invariant under multiplication.
    pub fn mono_mul(&self, m: &Monomial) -> VecElem {
        VecElem {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mono: t.mono.mul(m), comp: t.comp, coeff: t.coeff.clone() })
                .collect(),
        }
    }

    pub fn map_comps(&self, f: impl Fn(u32) -> u32) -> VecElem {
        VecElem {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mono: t.mono.clone(), comp: f(t.comp), coeff: t.coeff.clone() })
                .collect(),
        }
    }

    /// Collects the polynomial part sitting in one component.
    pub fn component_terms(&self, comp: u32) -> Vec<(Monomial, Scalar)> {
        self.terms
            .iter()
            .filter(|t| t.comp == comp)
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect()
    }
}

/// Recorded division step: subtracted `coeff * mono * basis[k]` while the
/// running scale factor was `scale_at`.
struct Step {
    k: usize,
    mono: Monomial,
    coeff: Scalar,
    scale_at: Scalar,
}

pub(crate) struct Reduction {
    pub remainder: VecElem,
    /// Final scale factor S: remainder = S * input - sum of recorded steps.
    pub scale: Scalar,
    steps: Vec<Step>,
}

impl Reduction {
    /// The exact normal form of the input (remainder divided by the scale).
    pub fn normal_form(&self, field: &FieldSpec) -> VecElem {
        let inv = field.inv(&self.scale).expect("scale is nonzero");
        self.remainder.scale(field, &inv)
    }

    /// Exact quotients: input = sum_k quotient_k * basis[k] + normal_form.
    /// Returned as one element of R^{#basis} (component k carries quotient_k).
    pub fn quotients(&self, field: &FieldSpec, ord: &MonomialOrder) -> VecElem {
        let terms = self
            .steps
            .iter()
            .map(|s| VTerm {
                mono: s.mono.clone(),
                comp: s.k as u32,
                coeff: field.div(&s.coeff, &s.scale_at).expect("scale is nonzero"),
            })
            .collect();
        VecElem::from_terms(field, ord, terms)
    }

    pub fn reduced_to_zero(&self) -> bool {
        self.remainder.is_zero()
    }
}

const CONTENT_STRIP_INTERVAL: usize = 24;

/// Full (head and tail) division of `p` by `basis`. Fraction-free over Q:
/// the remainder is a scalar multiple of the true normal form, with the
/// factor reported so callers needing exactness can divide it out.
pub(crate) fn reduce(
    field: &FieldSpec,
    ord: &MonomialOrder,
    p: &VecElem,
    basis: &[VecElem],
    record: bool,
) -> Result<Reduction> {
    let mut done: Vec<VTerm> = Vec::new();
    let mut work = p.clone();
    let mut scale = field.one();
    let mut steps: Vec<Step> = Vec::new();
    let mut since_strip = 0usize;
    let mut polls = 0usize;
    'outer: while !work.is_zero() {
        polls += 1;
        if polls % 64 == 0 {
            budget::check()?;
        }
        let lt = work.lead().clone();
        for (k, g) in basis.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let glt = g.lead();
            if glt.comp == lt.comp && glt.mono.divides(&lt.mono) {
                let shift = glt.mono.divide_into(&lt.mono).expect("divisibility checked");
                let coeff = field.div(&lt.coeff, &glt.coeff).expect("lead is nonzero");
                if record {
                    steps.push(Step {
                        k,
                        mono: shift.clone(),
                        coeff: coeff.clone(),
                        scale_at: scale.clone(),
                    });
                }
                work = work.sub_term_mul(field, ord, &coeff, &shift, g);
                since_strip += 1;
                if since_strip >= CONTENT_STRIP_INTERVAL {
                    since_strip = 0;
                    if matches!(field, FieldSpec::Rationals) && !work.is_zero() {
                        let f = work.primitive_factor(field);
                        if !f.is_one() {
                            work = work.scale(field, &f);
                            for t in done.iter_mut() {
                                t.coeff = field.mul(&t.coeff, &f);
                            }
                            scale = field.mul(&scale, &f);
                        }
                    }
                }
                continue 'outer;
            }
        }
        // Head is irreducible: move it to the finished part.
        done.push(work.terms.remove(0));
    }
    Ok(Reduction { remainder: VecElem { terms: done }, scale, steps })
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    degree: u32,
}

pub(crate) struct GbOptions {
    pub ord: MonomialOrder,
    /// Grading shifts per component, used for the degree of a pair (affects
    /// selection order and the degree cap, not correctness).
    pub shifts: Vec<u32>,
    /// Apply Gebauer-Moeller pruning. Must be off when every S-pair's
    /// reduction is itself the object of interest.
    pub prune: bool,
    /// Skip pairs whose lcm degree exceeds the cap. Only sound for
    /// homogeneous inputs; the result is a basis valid up to that degree.
    pub degree_cap: Option<u32>,
    /// Record expressions of basis elements in terms of the inputs.
    pub trace: bool,
}

impl GbOptions {
    #[cfg(test)]
    pub fn plain(ord: MonomialOrder) -> GbOptions {
        GbOptions { ord, shifts: Vec::new(), prune: true, degree_cap: None, trace: false }
    }
}

pub(crate) struct GbResult {
    pub basis: Vec<VecElem>,
    /// trace[j] expresses basis[j] in R^{#inputs}: basis[j] = trace[j] . inputs.
    pub trace: Option<Vec<VecElem>>,
}

struct BasisItem {
    el: VecElem,
    trace: Option<VecElem>,
}

fn pair_degree(lcm: &Monomial, comp: u32, shifts: &[u32]) -> u32 {
    lcm.degree() + shifts.get(comp as usize).copied().unwrap_or(0)
}

fn make_pair(items: &[BasisItem], shifts: &[u32], i: usize, j: usize) -> Pair {
    let li = items[i].el.lead();
    let lj = items[j].el.lead();
    debug_assert_eq!(li.comp, lj.comp);
    let lcm = li.mono.lcm(&lj.mono);
    let degree = pair_degree(&lcm, li.comp, shifts);
    Pair { i, j, lcm, comp: li.comp, degree }
}

/// Gebauer-Moeller update: prune the surviving old pairs and the new pairs
/// created by basis element `t`.
fn update_pairs(
    pairs: &mut Vec<Pair>,
    items: &[BasisItem],
    shifts: &[u32],
    t: usize,
    single_component: bool,
) {
    let lt = items[t].el.lead();
    // Old-pair rule: drop (i, j) when the new lead strictly refines it.
    pairs.retain(|p| {
        if p.comp != lt.comp || !lt.mono.divides(&p.lcm) {
            return true;
        }
        let lcm_it = items[p.i].el.lead().mono.lcm(&lt.mono);
        let lcm_jt = items[p.j].el.lead().mono.lcm(&lt.mono);
        lcm_it == p.lcm || lcm_jt == p.lcm
    });
    let mut fresh: Vec<Pair> = (0..t)
        .filter(|&i| items[i].el.lead().comp == lt.comp)
        .map(|i| make_pair(items, shifts, i, t))
        .collect();
    // M rule: keep only divisibility-minimal lcms among the new pairs.
    let lcms: Vec<Monomial> = fresh.iter().map(|p| p.lcm.clone()).collect();
    fresh.retain(|p| {
        !lcms
            .iter()
            .any(|other| other != &p.lcm && other.divides(&p.lcm))
    });
    // F rule: one representative per lcm.
    fresh.sort_by(|a, b| a.i.cmp(&b.i));
    let mut seen: Vec<Monomial> = Vec::new();
    fresh.retain(|p| {
        if seen.contains(&p.lcm) {
            false
        } else {
            seen.push(p.lcm.clone());
            true
        }
    });
    // B rule (single component only): coprime leads reduce to zero.
    if single_component {
        fresh.retain(|p| {
            !items[p.i]
                .el
                .lead()
                .mono
                .is_coprime_to(&items[p.j].el.lead().mono)
        });
    }
    pairs.extend(fresh);
}

/// S-pair of two elements with the same leading component, cross-scaled so
/// no division happens.
fn s_element(field: &FieldSpec, ord: &MonomialOrder, fi: &VecElem, fj: &VecElem, lcm: &Monomial) -> VecElem {
    let li = fi.lead();
    let lj = fj.lead();
    let ui = li.mono.divide_into(lcm).expect("lcm divisible by lead");
    let uj = lj.mono.divide_into(lcm).expect("lcm divisible by lead");
    let a = fi.scale(field, &lj.coeff);
    let a = VecElem {
        terms: a
            .terms
            .iter()
            .map(|t| VTerm { mono: t.mono.mul(&ui), comp: t.comp, coeff: t.coeff.clone() })
            .collect(),
    };
    a.sub_term_mul(field, ord, &li.coeff, &uj, fj)
}

fn trace_s_element(
    field: &FieldSpec,
    ord: &MonomialOrder,
    items: &[BasisItem],
    p: &Pair,
) -> VecElem {
    let li = items[p.i].el.lead().clone();
    let lj = items[p.j].el.lead().clone();
    let ui = li.mono.divide_into(&p.lcm).expect("lcm divisible by lead");
    let uj = lj.mono.divide_into(&p.lcm).expect("lcm divisible by lead");
    let ti = items[p.i].trace.as_ref().expect("trace mode");
    let tj = items[p.j].trace.as_ref().expect("trace mode");
    let a = ti.scale(field, &lj.coeff);
    let a = VecElem {
        terms: a
            .terms
            .iter()
            .map(|t| VTerm { mono: t.mono.mul(&ui), comp: t.comp, coeff: t.coeff.clone() })
            .collect(),
    };
    a.sub_term_mul(field, ord, &li.coeff, &uj, tj)
}

/// Buchberger's algorithm. Returns the reduced basis (pairwise tail-reduced,
/// monic, sorted ascending by leading term), optionally with traces.
pub(crate) fn buchberger(field: &FieldSpec, gens: &[VecElem], opts: &GbOptions) -> Result<GbResult> {
    let ord = opts.ord;
    let single_component = gens
        .iter()
        .flat_map(|g| g.terms.iter())
        .all(|t| t.comp == 0);
    let mut items: Vec<BasisItem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let factor = g.primitive_factor(field);
        let el = g.scale(field, &factor);
        let trace = if opts.trace {
            let mut tr = VecElem::unit(el.lead().mono.nvars(), idx as u32, field);
            tr = tr.scale(field, &factor);
            Some(tr)
        } else {
            None
        };
        items.push(BasisItem { el, trace });
        let t = items.len() - 1;
        if opts.prune {
            update_pairs(&mut pairs, &items, &opts.shifts, t, single_component);
        } else {
            for i in 0..t {
                if items[i].el.lead().comp == items[t].el.lead().comp {
                    pairs.push(make_pair(&items, &opts.shifts, i, t));
                }
            }
        }
    }
    while !pairs.is_empty() {
        budget::check()?;
        // Normal selection: smallest degree first, deterministic tiebreak.
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| ord.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        if let Some(cap) = opts.degree_cap {
            if pair.degree > cap {
                continue;
            }
        }
        let s = s_element(field, &ord, &items[pair.i].el, &items[pair.j].el, &pair.lcm);
        let basis_els: Vec<VecElem> = items.iter().map(|b| b.el.clone()).collect();
        let red = reduce(field, &ord, &s, &basis_els, opts.trace)?;
        if red.remainder.is_zero() {
            continue;
        }
        let factor = red.remainder.primitive_factor(field);
        let el = red.remainder.scale(field, &factor);
        let trace = if opts.trace {
            // remainder = scale * s_elem - sum steps; carry the same
            // combination through the traces of the inputs.
            let ts = trace_s_element(field, &ord, &items, &pair);
            let mut tr = ts.scale(field, &red.scale);
            for st in &red.steps {
                let c = field.mul(
                    &field.div(&st.coeff, &st.scale_at).expect("scale nonzero"),
                    &red.scale,
                );
                let other = items[st.k].trace.as_ref().expect("trace mode").clone();
                tr = tr.sub_term_mul(field, &ord, &c, &st.mono, &other);
            }
            Some(tr.scale(field, &factor))
        } else {
            None
        };
        items.push(BasisItem { el, trace });
        let t = items.len() - 1;
        if opts.prune {
            update_pairs(&mut pairs, &items, &opts.shifts, t, single_component);
        } else {
            for i in 0..t {
                if items[i].el.lead().comp == items[t].el.lead().comp {
                    pairs.push(make_pair(&items, &opts.shifts, i, t));
                }
            }
        }
    }
    interreduce(field, &ord, items, opts.trace)
}

/// Minimalizes and tail-reduces a basis into the reduced form: pairwise
/// non-divisible leading terms, fully reduced tails, monic, sorted by
/// ascending leading term.
fn interreduce(
    field: &FieldSpec,
    ord: &MonomialOrder,
    items: Vec<BasisItem>,
    traced: bool,
) -> Result<GbResult> {
    // Keep only lead-minimal elements, preferring earlier insertion on ties.
    let mut keep: Vec<BasisItem> = Vec::new();
    let mut sorted: Vec<BasisItem> = items.into_iter().collect();
    sorted.sort_by(|a, b| {
        vcmp(ord, a.el.lead(), b.el.lead())
    });
    for item in sorted {
        let lt = item.el.lead();
        let dominated = keep.iter().any(|k| {
            let kl = k.el.lead();
            kl.comp == lt.comp && kl.mono.divides(&lt.mono)
        });
        if !dominated {
            keep.push(item);
        }
    }
    // Tail-reduce each element against the others until stable.
    for i in 0..keep.len() {
        budget::check()?;
        let others: Vec<VecElem> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, b)| b.el.clone())
            .collect();
        let red = reduce(field, ord, &keep[i].el, &others, traced)?;
        debug_assert!(!red.remainder.is_zero(), "lead-minimal element vanished");
        let factor = red.remainder.primitive_factor(field);
        let el = red.remainder.scale(field, &factor);
        let trace = if traced {
            let base = keep[i].trace.clone().expect("trace mode");
            let mut tr = base.scale(field, &red.scale);
            for st in &red.steps {
                // Index st.k counts within `others`; shift past the hole.
                let k = if st.k >= i { st.k + 1 } else { st.k };
                let c = field.mul(
                    &field.div(&st.coeff, &st.scale_at).expect("scale nonzero"),
                    &red.scale,
                );
                let other = keep[k].trace.as_ref().expect("trace mode").clone();
                tr = tr.sub_term_mul(field, ord, &c, &st.mono, &other);
            }
            Some(tr.scale(field, &factor))
        } else {
            None
        };
        keep[i] = BasisItem { el, trace };
    }
    // Monic leading coefficients for canonical output.
    for item in keep.iter_mut() {
        let inv = field.inv(&item.el.lead().coeff).expect("lead nonzero");
        item.el = item.el.scale(field, &inv);
        if let Some(tr) = item.trace.take() {
            item.trace = Some(tr.scale(field, &inv));
        }
    }
    keep.sort_by(|a, b| vcmp(ord, a.el.lead(), b.el.lead()));
    let trace = if traced {
        Some(keep.iter().map(|b| b.trace.clone().expect("trace mode")).collect())
    } else {
        None
    };
    Ok(GbResult { basis: keep.into_iter().map(|b| b.el).collect(), trace })
}

/// Generators of the syzygy module of `gens` (not necessarily minimal),
/// as elements of R^{#gens}.
///
/// When every nonzero generator is homogeneous of positive degree in the
/// plain grading, the syzygies are cut out of one basis computation on the
/// graph module spanned by (g_i, e_i) in R^{s+t}: degree makes every
/// original-block term dominate every certificate term, so the elements of
/// the finished basis supported purely in the certificate block generate
/// the syzygy module, arriving interreduced and with tame coefficients.
/// Anything else falls back to the lifted-trace construction.
pub(crate) fn syzygy_generators(
    field: &FieldSpec,
    ord: &MonomialOrder,
    gens: &[VecElem],
) -> Result<Vec<VecElem>> {
    let n = gens.len();
    let nonzero: Vec<usize> = (0..n).filter(|&i| !gens[i].is_zero()).collect();
    let mut syz: Vec<VecElem> = Vec::new();
    // A zero generator is a free syzygy all by itself.
    for i in 0..n {
        if gens[i].is_zero() {
            let nvars = gens
                .iter()
                .flat_map(|g| g.terms.first())
                .map(|t| t.mono.nvars())
                .next()
                .unwrap_or(0);
            syz.push(VecElem::unit(nvars, i as u32, field));
        }
    }
    if nonzero.is_empty() {
        return Ok(syz);
    }
    let active: Vec<VecElem> = nonzero.iter().map(|&i| gens[i].clone()).collect();
    let graded = active
        .iter()
        .all(|g| g.is_homogeneous(&[]) && g.degree(&[]).unwrap_or(0) >= 1);
    if !graded {
        let mut rest = syzygy_generators_traced(field, ord, &active)?;
        for r in rest.drain(..) {
            syz.push(r.map_comps(|c| nonzero[c as usize] as u32));
        }
        return Ok(syz);
    }
    let nvars = active[0].lead().mono.nvars();
    let width = 1 + active
        .iter()
        .flat_map(|g| g.terms.iter())
        .map(|t| t.comp)
        .max()
        .unwrap_or(0) as usize;
    let mut shifts = vec![0u32; width];
    let graph: Vec<VecElem> = active
        .iter()
        .enumerate()
        .map(|(k, g)| {
            shifts.push(g.degree(&[]).expect("nonzero"));
            let mut terms = g.terms.clone();
            terms.push(VTerm {
                mono: Monomial::one(nvars),
                comp: (width + k) as u32,
                coeff: field.one(),
            });
            VecElem::from_terms(field, ord, terms)
        })
        .collect();
    let opts = GbOptions { ord: *ord, shifts, prune: true, degree_cap: None, trace: false };
    let gb = buchberger(field, &graph, &opts)?;
    for b in gb.basis {
        if b.lead().comp >= width as u32 {
            debug_assert!(
                b.terms.iter().all(|t| t.comp >= width as u32),
                "degree dominance keeps pure leads on pure elements"
            );
            syz.push(b.map_comps(|c| nonzero[(c - width as u32) as usize] as u32));
        }
    }
    Ok(syz)
}

/// The lifted-trace syzygy construction: the Schreyer relations of a traced
/// reduced basis are pushed through the trace matrix, plus the rows of
/// I - B A witnessing the two presentations of each input. Indices are
/// relative to `active`, which must be free of zero elements.
fn syzygy_generators_traced(
    field: &FieldSpec,
    ord: &MonomialOrder,
    active: &[VecElem],
) -> Result<Vec<VecElem>> {
    let mut syz: Vec<VecElem> = Vec::new();
    let opts = GbOptions {
        ord: *ord,
        shifts: Vec::new(),
        prune: true,
        degree_cap: None,
        trace: true,
    };
    let gb = buchberger(field, active, &opts)?;
    let trace = gb.trace.as_ref().expect("trace requested");
    let basis = &gb.basis;
    // B matrix: each input in terms of the basis (must reduce to zero).
    let mut b_rows: Vec<VecElem> = Vec::with_capacity(active.len());
    for g in active {
        let red = reduce(field, ord, g, basis, true)?;
        debug_assert!(red.remainder.is_zero(), "input must lie in its own basis");
        b_rows.push(red.quotients(field, ord));
    }
    // Rows of I - B A, in input coordinates.
    for (i, b_row) in b_rows.iter().enumerate() {
        let mut row = VecElem::unit(
            active[i].lead().mono.nvars(),
            i as u32,
            field,
        );
        for t in &b_row.terms {
            // subtract t * trace[t.comp]
            row = row.sub_term_mul(field, ord, &t.coeff, &t.mono, &trace[t.comp as usize]);
        }
        if !row.is_zero() {
            let f = row.primitive_factor(field);
            syz.push(row.scale(field, &f));
        }
    }
    // Schreyer relations: every same-component S-pair of the finished basis
    // reduces to zero; its combination pushed through A is a syzygy.
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            budget::check()?;
            let li = basis[i].lead();
            let lj = basis[j].lead();
            if li.comp != lj.comp {
                continue;
            }
            let lcm = li.mono.lcm(&lj.mono);
            // Even an identically-zero S-element yields a relation (the
            // bare Koszul combination), so no early skip here.
            let s = s_element(field, ord, &basis[i], &basis[j], &lcm);
            let red = reduce(field, ord, &s, basis, true)?;
            debug_assert!(red.remainder.is_zero(), "S-pair of a reduced basis must vanish");
            // scale * s = sum steps  =>  syzygy = s-combination - quotients.
            let ui = li.mono.divide_into(&lcm).expect("divides");
            let uj = lj.mono.divide_into(&lcm).expect("divides");
            let mut rel = VecElem::from_terms(
                field,
                ord,
                vec![
                    VTerm { mono: ui, comp: i as u32, coeff: lj.coeff.clone() },
                    VTerm {
                        mono: uj,
                        comp: j as u32,
                        coeff: field.neg(&li.coeff),
                    },
                ],
            );
            let q = red.quotients(field, ord);
            for t in &q.terms {
                rel = rel.sub_term_mul(field, ord, &t.coeff, &t.mono, &VecElem::unit(
                    t.mono.nvars(),
                    t.comp,
                    field,
                ));
            }
            // rel is in basis coordinates; push through the trace matrix A.
            let mut in_inputs = VecElem::zero();
            for t in &rel.terms {
                in_inputs = in_inputs.sub_term_mul(
                    field,
                    ord,
                    &field.neg(&t.coeff),
                    &t.mono,
                    &trace[t.comp as usize],
                );
            }
            if !in_inputs.is_zero() {
                let f = in_inputs.primitive_factor(field);
                syz.push(in_inputs.scale(field, &f));
            }
        }
    }
    // The raw relations carry coefficients inflated by the long quotient
    // chains they came from. Interreducing them as a module basis returns
    // the same span with canonical, content-stripped elements; in the graded
    // case a degree cap at the raw maximum is sound, because every input
    // reduces to zero against the capped basis already.
    let shifts: Option<Vec<u32>> = active
        .iter()
        .map(|g| {
            if g.is_homogeneous(&[]) {
                g.degree(&[])
            } else {
                None
            }
        })
        .collect();
    let (shifts, cap) = match shifts {
        Some(s) => {
            let cap = syz.iter().filter_map(|e| e.degree(&s)).max();
            (s, cap)
        }
        None => (Vec::new(), None),
    };
    syz.sort_by_key(|e| e.degree(&shifts));
    let opts = GbOptions { ord: *ord, shifts, prune: true, degree_cap: cap, trace: false };
    let reduced = buchberger(field, &syz, &opts)?;
    Ok(reduced.basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn elem(field: &FieldSpec, terms: &[(&[u16], i64)]) -> VecElem {
        VecElem::from_terms(
            field,
            &MonomialOrder::DegRevLex,
            terms
                .iter()
                .map(|(e, c)| VTerm {
                    mono: Monomial::from_exps(e.to_vec()),
                    comp: 0,
                    coeff: field.from_i64(*c),
                })
                .collect(),
        )
    }

    #[test]
    fn reduce_recovers_exact_quotients() {
        let f = q();
        let ord = MonomialOrder::DegRevLex;
        // Divide x^2 y + x y^2 + y^2 by [x y - 1, y^2 - 1]: the CLO example.
        let p = elem(&f, &[(&[2, 1], 1), (&[1, 2], 1), (&[0, 2], 1)]);
        let g1 = elem(&f, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let g2 = elem(&f, &[(&[0, 2], 1), (&[0, 0], -1)]);
        let red = reduce(&f, &ord, &p, &[g1.clone(), g2.clone()], true).unwrap();
        let nf = red.normal_form(&f);
        // Known remainder x + y + 1.
        let expected = elem(&f, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(nf, expected);
        // Replay: p == q1 g1 + q2 g2 + nf.
        let quot = red.quotients(&f, &ord);
        let mut acc = nf.clone();
        for t in &quot.terms {
            let g = if t.comp == 0 { &g1 } else { &g2 };
            acc = acc.sub_term_mul(&f, &ord, &f.neg(&t.coeff), &t.mono, g);
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn buchberger_cyclic_style_example() {
        let f = q();
        // <x^2 - y, x^3 - z> in degrevlex; the reduced basis is
        // {x^2 - y, x y - z, x z - y^2} (classic twisted cubic affine cone).
        let g1 = elem(&f, &[(&[2, 0, 0], 1), (&[0, 1, 0], -1)]);
        let g2 = elem(&f, &[(&[3, 0, 0], 1), (&[0, 0, 1], -1)]);
        let opts = GbOptions::plain(MonomialOrder::DegRevLex);
        let gb = buchberger(&f, &[g1, g2], &opts).unwrap();
        let printed: Vec<String> = gb
            .basis
            .iter()
            .map(|e| {
                e.terms
                    .iter()
                    .map(|t| format!("{:?}:{}", t.mono.exps(), f.render(&t.coeff)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        assert_eq!(gb.basis.len(), 3, "{printed:?}");
        // All S-pairs of the result reduce to zero.
        for i in 0..gb.basis.len() {
            for j in i + 1..gb.basis.len() {
                let lcm = gb.basis[i].lead().mono.lcm(&gb.basis[j].lead().mono);
                let s = s_element(&f, &MonomialOrder::DegRevLex, &gb.basis[i], &gb.basis[j], &lcm);
                let red = reduce(&f, &MonomialOrder::DegRevLex, &s, &gb.basis, false).unwrap();
                assert!(red.remainder.is_zero());
            }
        }
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let f = q();
        let ord = MonomialOrder::DegRevLex;
        // Same ideal presented two ways must give the same reduced basis.
        let a1 = elem(&f, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let a2 = elem(&f, &[(&[0, 2], 1)]);
        let b1 = elem(&f, &[(&[1, 0], 2), (&[0, 1], 2)]);
        let b2 = elem(&f, &[(&[0, 2], 3), (&[1, 0], 3), (&[0, 1], 3)]);
        let opts = GbOptions::plain(ord);
        let gb1 = buchberger(&f, &[a1.clone(), a2.clone()], &opts).unwrap();
        let gb2 = buchberger(&f, &[b1, b2], &opts).unwrap();
        assert_eq!(gb1.basis, gb2.basis);
        assert_eq!(gb1.basis, vec![a1, a2]);
    }

    #[test]
    fn trace_expresses_basis_in_inputs() {
        let f = q();
        let ord = MonomialOrder::DegRevLex;
        let g1 = elem(&f, &[(&[2, 0, 0], 1), (&[0, 1, 0], -1)]);
        let g2 = elem(&f, &[(&[3, 0, 0], 1), (&[0, 0, 1], -1)]);
        let gens = vec![g1.clone(), g2.clone()];
        let opts = GbOptions {
            ord,
            shifts: Vec::new(),
            prune: true,
            degree_cap: None,
            trace: true,
        };
        let gb = buchberger(&f, &gens, &opts).unwrap();
        let trace = gb.trace.unwrap();
        for (b, tr) in gb.basis.iter().zip(&trace) {
            let mut acc = b.clone();
            for t in &tr.terms {
                acc = acc.sub_term_mul(&f, &ord, &t.coeff, &t.mono, &gens[t.comp as usize]);
            }
            assert!(acc.is_zero(), "trace row fails to reproduce basis element");
        }
    }

    #[test]
    fn syzygies_of_koszul_pair() {
        let f = q();
        let ord = MonomialOrder::DegRevLex;
        // gens (x, y): the syzygy module is generated by (y, -x).
        let x = elem(&f, &[(&[1, 0], 1)]);
        let y = elem(&f, &[(&[0, 1], 1)]);
        let gens = vec![x.clone(), y.clone()];
        let syz = syzygy_generators(&f, &ord, &gens).unwrap();
        assert!(!syz.is_empty());
        for s in &syz {
            // Verify s . gens == 0.
            let mut acc = VecElem::zero();
            for t in &s.terms {
                acc = acc.sub_term_mul(
                    &f,
                    &ord,
                    &f.neg(&t.coeff),
                    &t.mono,
                    &gens[t.comp as usize],
                );
            }
            assert!(acc.is_zero());
        }
        // Some generator must be the Koszul relation itself (up to scalar):
        // exactly two terms, degree 1 entries.
        assert!(syz.iter().any(|s| s.terms.len() == 2
            && s.terms.iter().all(|t| t.mono.degree() == 1)));
    }

    #[test]
    fn prime_field_basis() {
        let f = FieldSpec::prime(7).unwrap();
        let g1 = VecElem::from_terms(
            &f,
            &MonomialOrder::DegRevLex,
            vec![
                VTerm { mono: Monomial::from_exps(vec![2, 0]), comp: 0, coeff: f.from_i64(3) },
                VTerm { mono: Monomial::from_exps(vec![0, 1]), comp: 0, coeff: f.from_i64(1) },
            ],
        );
        let g2 = VecElem::from_terms(
            &f,
            &MonomialOrder::DegRevLex,
            vec![
                VTerm { mono: Monomial::from_exps(vec![1, 1]), comp: 0, coeff: f.from_i64(1) },
                VTerm { mono: Monomial::from_exps(vec![1, 0]), comp: 0, coeff: f.from_i64(5) },
            ],
        );
        let gb = buchberger(&f, &[g1, g2], &GbOptions::plain(MonomialOrder::DegRevLex)).unwrap();
        for b in &gb.basis {
            assert!(b.lead().coeff.is_one(), "reduced basis is monic");
        }
    }
}
