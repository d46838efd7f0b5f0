//! Products of higher-degree forms: smoothness, near transversality, the
//! two-forms depth suite, the syzygy initial-degree lower bound, and the
//! unbalanced-degree depth criterion.
//!
//! Throughout, F = f_1 ... f_m is a product of homogeneous forms of
//! degrees at least two and J_F is its Jacobian ideal, equigenerated in
//! degree d_1 + ... + d_m - 1 and of codimension exactly two whenever the
//! forms are pairwise coprime.

use crate::error::{Error, Result};
use crate::hilbert;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, PolynomialRing, Ring};
use crate::rees::{index_subsets, poly_det};
use crate::resolution;
use serde::Serialize;

/// A system of m >= 2 homogeneous forms of degree >= 2, pairwise distinct
/// as hypersurfaces.
pub struct FormSystem {
    ring: Ring,
    forms: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl FormSystem {
    pub fn new(ring: &Ring, forms: Vec<Polynomial>) -> Result<FormSystem> {
        if forms.len() < 2 {
            return Err(Error::InvalidInput("a form system needs at least two forms".into()));
        }
        let mut degrees = Vec::with_capacity(forms.len());
        for f in &forms {
            if !f.ring().compatible(ring) {
                return Err(Error::RingMismatch("form outside the system ring".into()));
            }
            if f.is_zero() {
                return Err(Error::ZeroInput("forms must be nonzero".into()));
            }
            let d = f.homogeneous_degree()?;
            if d < 2 {
                return Err(Error::InvalidInput(format!(
                    "'{f}' has degree {d}; forms must have degree at least 2"
                )));
            }
            degrees.push(d);
        }
        for (i, f) in forms.iter().enumerate() {
            for g in &forms[..i] {
                if f.monic() == g.monic() {
                    return Err(Error::InvalidInput(format!(
                        "'{f}' appears twice in the system"
                    )));
                }
            }
        }
        Ok(FormSystem { ring: ring.clone(), forms, degrees })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &Polynomial {
        &self.forms[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    /// c = min(m, n), the subset size entering the transversality check.
    pub fn c(&self) -> usize {
        self.forms.len().min(self.ring.nvars())
    }

    /// F = f_1 ... f_m.
    pub fn product(&self) -> Polynomial {
        let mut f = Polynomial::one(&self.ring);
        for g in &self.forms {
            f = f.try_mul(g).expect("same ring");
        }
        f
    }

    /// J_F, the Jacobian ideal of the product.
    pub fn jacobian_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.product().gradient()).expect("partials live in the ring")
    }

    /// Pairwise coprimality, decided by codimension: two forms share a
    /// factor exactly when the ideal they generate has codimension one.
    pub fn pairwise_coprime(&self) -> Result<bool> {
        for (i, f) in self.forms.iter().enumerate() {
            for g in &self.forms[..i] {
                if !coprime(f, g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.ring.field(),
            "n": self.ring.nvars(),
            "forms": self.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FormSystem> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("form-system JSON must be an object".into()))?;
        let field: crate::field::FieldSpec = serde_json::from_value(
            obj.get("field")
                .cloned()
                .ok_or_else(|| Error::InvalidInput("missing 'field'".into()))?,
        )
        .map_err(|e| Error::InvalidInput(format!("bad 'field': {e}")))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::InvalidInput("missing or bad 'n'".into()))? as usize;
        let texts = obj
            .get("forms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::InvalidInput("missing or bad 'forms'".into()))?;
        let ring = if n <= 4 {
            PolynomialRing::xyzw(field, n)
        } else {
            PolynomialRing::standard(field, n)
        };
        let forms = texts
            .iter()
            .map(|t| {
                let s = t
                    .as_str()
                    .ok_or_else(|| Error::InvalidInput("each form must be a string".into()))?;
                crate::parse::parse_polynomial(&ring, s)
            })
            .collect::<Result<Vec<_>>>()?;
        FormSystem::new(&ring, forms)
    }

    pub fn from_json_str(s: &str) -> Result<FormSystem> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("invalid JSON: {e}")))?;
        FormSystem::from_json(&v)
    }
}

fn coprime(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    let pair = Ideal::new(f.ring(), vec![f.clone(), g.clone()])?;
    if pair.is_unit_ideal()? {
        return Ok(true);
    }
    Ok(hilbert::codimension(&pair)? == 2)
}

fn member(ideal: &Ideal, p: &Polynomial) -> Result<bool> {
    if ideal.is_homogeneous() && (p.is_zero() || p.is_homogeneous()) {
        ideal.contains_truncated(p)
    } else {
        ideal.contains(p)
    }
}

/// Whether the hypersurface cut out by a homogeneous form of degree >= 2
/// is smooth: its Jacobian ideal must be primary to the irrelevant ideal.
pub fn is_smooth_form(f: &Polynomial) -> Result<bool> {
    if f.is_zero() || f.homogeneous_degree()? < 2 {
        return Err(Error::InvalidInput(
            "smoothness is checked for forms of degree at least 2".into(),
        ));
    }
    let jac = Ideal::new(f.ring(), f.gradient())?;
    hilbert::is_m_primary(&jac)
}

/// One subset's transversality verdict: the rank-drop locus of the
/// Jacobian matrix inside the subset's zero set must have codimension at
/// least n (codimension None means the locus is empty).
#[derive(Clone, Debug, Serialize)]
pub struct SubsetCheck {
    pub indices: Vec<usize>,
    pub codimension: Option<usize>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalityReport {
    pub smooth: Vec<bool>,
    pub subset_checks: Vec<SubsetCheck>,
    pub nearly_transversal: bool,
}

/// Checks near transversality: every form smooth, and for every c-subset
/// the locus where the subset's Jacobian matrix drops rank, intersected
/// with the subset's zero set, has codimension at least n.
pub fn near_transversality(fs: &FormSystem) -> Result<TransversalityReport> {
    let n = fs.ring().nvars();
    if n < 3 {
        return Err(Error::Precondition(
            "near transversality is defined for at least three variables".into(),
        ));
    }
    let smooth = fs
        .forms()
        .iter()
        .map(is_smooth_form)
        .collect::<Result<Vec<_>>>()?;
    let c = fs.c();
    let mut subset_checks = Vec::new();
    for indices in index_subsets(fs.num_forms(), c) {
        crate::budget::check()?;
        let jac: Vec<Vec<Polynomial>> =
            indices.iter().map(|&i| fs.form(i).gradient()).collect();
        let mut gens: Vec<Polynomial> =
            indices.iter().map(|&i| fs.form(i).clone()).collect();
        let col_range: Vec<usize> = (0..c).collect();
        for cols in index_subsets(n, c) {
            gens.push(poly_det(&col_range, &cols, &jac, fs.ring())?);
        }
        let ideal = Ideal::new(fs.ring(), gens)?;
        let (codimension, ok) = if ideal.is_unit_ideal()? {
            (None, true)
        } else {
            let k = hilbert::codimension(&ideal)?;
            (Some(k), k >= n)
        };
        subset_checks.push(SubsetCheck { indices, codimension, ok });
    }
    let nearly_transversal =
        smooth.iter().all(|&s| s) && subset_checks.iter().all(|s| s.ok);
    Ok(TransversalityReport { smooth, subset_checks, nearly_transversal })
}

/// The two-forms suite for F = fg with d = deg f <= e = deg g: the
/// saturation membership of g^2, the syzygy initial-degree comparison,
/// the two auxiliary memberships its proof rests on, and the depth of
/// R/J_F. Statement-level preconditions that fail are recorded as
/// warnings; every item is still computed.
#[derive(Clone, Debug, Serialize)]
pub struct TwoFormsReport {
    /// g^2 lies in the saturation of J_F.
    pub g_squared_in_saturation: bool,
    /// indeg Syz(J_F).
    pub indeg_product: Option<u32>,
    /// indeg Syz(J_g).
    pub indeg_second: Option<u32>,
    /// indeg Syz(J_F) >= indeg Syz(J_g).
    pub indeg_inequality_holds: bool,
    /// <f, I_2(Jacobian of (f, g))> is m-primary.
    pub auxiliary_ideal_m_primary: bool,
    /// g * <f, I_2(...)> lies in J_F.
    pub scaled_auxiliary_in_jacobian: bool,
    pub depth: usize,
    pub depth_is_zero: bool,
    pub warnings: Vec<String>,
}

/// The 2-minors of the 2 x n Jacobian matrix of (f, g).
fn pair_minors(f: &Polynomial, g: &Polynomial) -> Result<Vec<Polynomial>> {
    let jac = vec![f.gradient(), g.gradient()];
    let n = f.ring().nvars();
    let mut out = Vec::new();
    for cols in index_subsets(n, 2) {
        out.push(poly_det(&[0, 1], &cols, &jac, f.ring())?);
    }
    Ok(out)
}

pub fn two_forms_suite(f: &Polynomial, g: &Polynomial) -> Result<TwoFormsReport> {
    let ring = f.ring();
    if !g.ring().compatible(ring) {
        return Err(Error::RingMismatch("the two forms live in different rings".into()));
    }
    let d = f.homogeneous_degree()?;
    let e = g.homogeneous_degree()?;
    if d < 2 || e < 2 {
        return Err(Error::InvalidInput("both forms must have degree at least 2".into()));
    }
    if !coprime(f, g)? {
        return Err(Error::Precondition("the two forms share a common factor".into()));
    }
    let mut warnings = Vec::new();
    if d > e {
        warnings.push("the first form should have the smaller degree".into());
    }
    if !is_smooth_form(f)? {
        warnings.push("the saturation membership needs the first form smooth".into());
    }
    let field = ring.field();
    for (k, label) in [(d, "d"), (e, "e"), (d + e, "d+e")] {
        if field.char_divides(k as u64) {
            warnings.push(format!("the characteristic divides {label} = {k}"));
        }
    }

    let fsys = FormSystem::new(ring, vec![f.clone(), g.clone()])?;
    let j_f = fsys.jacobian_ideal();
    let (sat, _) = j_f.saturation(&Ideal::irrelevant(ring))?;
    let g2 = g.try_mul(g)?;
    let g_squared_in_saturation = member(&sat, &g2)?;

    let indeg_product = resolution::syzygy_initial_degree(&j_f)?;
    let j_g = Ideal::new(ring, g.gradient())?;
    let indeg_second = resolution::syzygy_initial_degree(&j_g)?;
    let indeg_inequality_holds = match (indeg_product, indeg_second) {
        (Some(a), Some(b)) => a >= b,
        (_, None) => true,
        (None, Some(_)) => false,
    };

    let mut aux_gens = vec![f.clone()];
    aux_gens.extend(pair_minors(f, g)?);
    let aux = Ideal::new(ring, aux_gens)?;
    let auxiliary_ideal_m_primary = hilbert::is_m_primary(&aux)?;
    let mut scaled_auxiliary_in_jacobian = true;
    for h in aux.generators() {
        if !member(&j_f, &g.try_mul(h)?)? {
            scaled_auxiliary_in_jacobian = false;
            break;
        }
    }

    let depth = resolution::depth_of_quotient(&j_f)?;
    Ok(TwoFormsReport {
        g_squared_in_saturation,
        indeg_product,
        indeg_second,
        indeg_inequality_holds,
        auxiliary_ideal_m_primary,
        scaled_auxiliary_in_jacobian,
        depth,
        depth_is_zero: depth == 0,
        warnings,
    })
}

/// The initial degree of Syz(J_F) against the floor bound
/// (d_1 + ... + d_m) / m, rounded down, minus one.
#[derive(Clone, Debug, Serialize)]
pub struct IndegBoundReport {
    pub observed: Option<u32>,
    pub bound: u32,
    pub holds: bool,
}

pub fn indeg_lower_bound_check(fs: &FormSystem) -> Result<IndegBoundReport> {
    if !fs.pairwise_coprime()? {
        return Err(Error::Precondition("the forms must be pairwise coprime".into()));
    }
    let total: u32 = fs.degrees().iter().sum();
    let bound = total / fs.num_forms() as u32 - 1;
    let observed = resolution::syzygy_initial_degree(&fs.jacobian_ideal())?;
    let holds = observed.map_or(true, |o| o >= bound);
    Ok(IndegBoundReport { observed, bound, holds })
}

/// The unbalanced-degree depth criterion for the distinguished index j:
/// when the remaining degrees d = sum_{i != j} d_i satisfy
/// d - d_j <= floor(d / (m-1)) - 3, the quotient R/J_F has depth zero,
/// witnessed by G = F/f_j with G^2 in the saturation of J_F but not in
/// J_F itself. The distinguished form must be smooth: the saturation
/// membership of G^2 routes through the smoothness of f_j even though
/// the degree inequality alone does not mention it.
#[derive(Clone, Debug, Serialize)]
pub struct UnbalancedReport {
    /// Whether the degree inequality holds; when false the criterion is
    /// inapplicable and no further fields are computed.
    pub applicable: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub depth: Option<usize>,
    pub depth_is_zero: Option<bool>,
    pub complement_square_in_saturation: Option<bool>,
    pub complement_square_in_jacobian: Option<bool>,
}

pub fn unbalanced_depth_check(fs: &FormSystem, j: usize) -> Result<UnbalancedReport> {
    if j >= fs.num_forms() {
        return Err(Error::InvalidInput(format!("form index {j} out of range")));
    }
    let m = fs.num_forms() as i64;
    let e = fs.degrees()[j] as i64;
    let d: i64 = fs.degrees().iter().map(|&x| x as i64).sum::<i64>() - e;
    let lhs = d - e;
    let rhs = d / (m - 1) - 3;
    if lhs > rhs {
        return Ok(UnbalancedReport {
            applicable: false,
            lhs,
            rhs,
            depth: None,
            depth_is_zero: None,
            complement_square_in_saturation: None,
            complement_square_in_jacobian: None,
        });
    }
    if !is_smooth_form(fs.form(j))? {
        return Err(Error::Precondition(
            "the distinguished form must be smooth".into(),
        ));
    }
    let ring = fs.ring();
    let mut big_g = Polynomial::one(ring);
    for (i, f) in fs.forms().iter().enumerate() {
        if i != j {
            big_g = big_g.try_mul(f)?;
        }
    }
    let g2 = big_g.try_mul(&big_g)?;
    let j_f = fs.jacobian_ideal();
    let (sat, _) = j_f.saturation(&Ideal::irrelevant(ring))?;
    let in_sat = member(&sat, &g2)?;
    // deg G^2 = 2d below the generating degree d + e - 1 settles
    // non-membership without a division.
    let in_jf = if 2 * d < d + e - 1 { false } else { member(&j_f, &g2)? };
    let depth = resolution::depth_of_quotient(&j_f)?;
    Ok(UnbalancedReport {
        applicable: true,
        lhs,
        rhs,
        depth: Some(depth),
        depth_is_zero: Some(depth == 0),
        complement_square_in_saturation: Some(in_sat),
        complement_square_in_jacobian: Some(in_jf),
    })
}
