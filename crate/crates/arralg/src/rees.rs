//! Symmetric and Rees algebra presentations of an ideal, linear-type
//! detection, the G_infinity condition on Fitting-ideal heights, and the
//! freeness criterion for rank-3 arrangements.
//!
//! Both presentation ideals live in K[x_1..x_n, T_1..T_mu] over a fixed,
//! recorded minimal generating set g_1, ..., g_mu: the symmetric ideal is
//! spanned by the syzygy biforms sum_k s_k T_k, and the Rees ideal is the
//! full kernel of T_k -> t g_k, computed by eliminating the auxiliary
//! variable t.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::hilbert;
use crate::ideal::{fresh_var_name, Ideal};
use crate::poly::{extend_ring_front, Polynomial, PolynomialRing, Ring};
use crate::resolution;

/// The two presentation ideals of an ideal I over one recorded minimal
/// generating set.
pub struct ReesPresentation {
    ring: Ring,
    generators: Vec<Polynomial>,
    symmetric: Ideal,
    rees: Ideal,
}

fn biform_ring(base: &Ring, mu: usize) -> Result<Ring> {
    let mut names: Vec<String> = base.var_names().to_vec();
    for k in 1..=mu {
        let mut name = format!("T{k}");
        while names.contains(&name) {
            name.push('t');
        }
        names.push(name);
    }
    PolynomialRing::new(*base.field(), names)
}

/// Computes both presentation ideals of a homogeneous ideal. The recorded
/// generators are the minimal ones, in the deterministic order the
/// minimalization produces; the symmetric ideal is checked to sit inside
/// the Rees ideal, and the Rees generators are checked to vanish under
/// T_k -> g_k.
pub fn rees_presentation(ideal: &Ideal) -> Result<ReesPresentation> {
    if ideal.is_zero_ideal() {
        return Err(Error::ZeroInput("presentations need a nonzero ideal".into()));
    }
    let base = ideal.ring();
    let n = base.nvars();
    let pres = resolution::presentation(ideal)?;
    let mu = pres.gens.len();
    let ring = biform_ring(base, mu)?;

    let mut sym_gens = Vec::with_capacity(pres.syzygies.len());
    for row in &pres.syzygies {
        let mut biform = Polynomial::zero(&ring);
        for (k, entry) in row.iter().enumerate() {
            let t_k = Polynomial::variable(&ring, n + k);
            biform = biform.try_add(&entry.inject_into(&ring, 0)?.try_mul(&t_k)?)?;
        }
        sym_gens.push(biform);
    }
    let symmetric = Ideal::new(&ring, sym_gens)?;

    let aux = fresh_var_name(&ring, "t");
    let full = extend_ring_front(&ring, &[&aux])?;
    let t = Polynomial::variable(&full, 0);
    let mut full_gens = Vec::with_capacity(mu);
    for (k, g) in pres.gens.iter().enumerate() {
        let t_k = Polynomial::variable(&full, 1 + n + k);
        full_gens.push(t_k.try_sub(&g.inject_into(&full, 1)?.try_mul(&t)?)?);
    }
    let rees_raw = Ideal::new(&full, full_gens)?.eliminate_front(1)?;
    let rees = Ideal::new(&ring, rees_raw.generators().to_vec())?;

    let mut images: Vec<Polynomial> =
        (0..n).map(|i| Polynomial::variable(base, i)).collect();
    images.extend(pres.gens.iter().cloned());
    for g in rees.generators() {
        assert!(
            g.compose(&images)?.is_zero(),
            "Rees generators must vanish under T_k -> g_k"
        );
    }
    for g in symmetric.generators() {
        assert!(
            rees.contains(g)?,
            "the symmetric ideal always sits inside the Rees ideal"
        );
    }

    Ok(ReesPresentation { ring, generators: pres.gens, symmetric, rees })
}

impl ReesPresentation {
    /// The biform ring K[x_1..x_n, T_1..T_mu].
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The recorded minimal generators g_1, ..., g_mu.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn symmetric_ideal(&self) -> &Ideal {
        &self.symmetric
    }

    pub fn rees_ideal(&self) -> &Ideal {
        &self.rees
    }

    /// Whether the natural surjection from the symmetric algebra onto the
    /// Rees algebra is an isomorphism, detected as equality of the two
    /// presentation ideals.
    pub fn is_linear_type(&self) -> Result<bool> {
        self.symmetric.equals(&self.rees)
    }

    /// Whether the Rees algebra is a complete intersection: the Rees ideal
    /// needs exactly as many minimal generators as its codimension.
    pub fn is_complete_intersection(&self) -> Result<bool> {
        let mu = resolution::mu(&self.rees)?;
        Ok(mu == hilbert::codimension(&self.rees)?)
    }
}

/// Convenience wrapper: linear type of a homogeneous ideal.
pub fn is_linear_type(ideal: &Ideal) -> Result<bool> {
    rees_presentation(ideal)?.is_linear_type()
}

pub(crate) fn poly_det(
    rows: &[usize],
    cols: &[usize],
    m: &[Vec<Polynomial>],
    ring: &Ring,
) -> Result<Polynomial> {
    if rows.is_empty() {
        return Ok(Polynomial::one(ring));
    }
    let mut acc = Polynomial::zero(ring);
    let rest: Vec<usize> = rows[1..].to_vec();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let mut sub_cols = cols.to_vec();
        sub_cols.remove(pos);
        let minor = poly_det(&rest, &sub_cols, m, ring)?;
        let signed = entry.try_mul(&minor)?;
        acc = if pos % 2 == 0 { acc.try_add(&signed)? } else { acc.try_sub(&signed)? };
    }
    Ok(acc)
}

pub(crate) fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The ideal of k-minors of the presentation matrix (rows indexed by the
/// mu generators, columns by the minimal syzygies).
fn fitting_minors(ideal: &Ideal, k: usize) -> Result<Ideal> {
    let ring = ideal.ring();
    let pres = resolution::presentation(ideal)?;
    let mu = pres.gens.len();
    let q = pres.syzygies.len();
    if k == 0 {
        return Ok(Ideal::unit(ring));
    }
    if k > mu || k > q {
        return Ok(Ideal::zero(ring));
    }
    // Entry (row g, column s) of the presentation matrix.
    let matrix: Vec<Vec<Polynomial>> =
        (0..mu).map(|g| (0..q).map(|s| pres.syzygies[s][g].clone()).collect()).collect();
    let mut minors = Vec::new();
    for rows in index_subsets(mu, k) {
        for cols in index_subsets(q, k) {
            minors.push(poly_det(&rows, &cols, &matrix, ring)?);
        }
    }
    Ideal::new(ring, minors)
}

/// The G_infinity condition via Fitting-ideal heights: for every i >= 1
/// the i-th Fitting ideal of I (the (mu - i)-minors of the presentation
/// matrix) must have codimension strictly greater than i. This is the
/// classical reformulation of the localized bound mu(I_p) <= height(p)
/// for every prime p containing I.
pub fn g_infinity_check(ideal: &Ideal) -> Result<bool> {
    let mu = resolution::mu(ideal)?;
    for i in 1..mu {
        crate::budget::check()?;
        let fitt = fitting_minors(ideal, mu - i)?;
        if fitt.is_zero_ideal() {
            return Ok(false);
        }
        if fitt.is_unit_ideal()? {
            continue;
        }
        if hilbert::codimension(&fitt)? <= i {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Freeness of an arrangement: the Jacobian ideal is perfect of
/// codimension two, so the syzygy module of J_f is free.
pub fn is_free(arr: &Arrangement) -> Result<bool> {
    let j = arr.jacobian_ideal();
    Ok(hilbert::codimension(&j)? == 2 && resolution::is_perfect(&j)?)
}

/// Whether the Rees algebra of the Jacobian ideal is a complete
/// intersection.
pub fn rees_is_ci(arr: &Arrangement) -> Result<bool> {
    rees_presentation(&arr.jacobian_ideal())?.is_complete_intersection()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        let polys: Vec<Polynomial> =
            gens.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect();
        Ideal::new(ring, polys).unwrap()
    }

    fn arr(field: FieldSpec, n: usize, forms: &[&str]) -> Arrangement {
        let ring = PolynomialRing::xyzw(field, n);
        let polys: Vec<Polynomial> =
            forms.iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
        Arrangement::from_forms(&ring, &polys).unwrap()
    }

    #[test]
    fn koszul_pair_is_linear_type() {
        let ring = PolynomialRing::xyzw(FieldSpec::Rationals, 2);
        let i = ideal(&ring, &["x", "y"]);
        let p = rees_presentation(&i).unwrap();
        assert!(p.is_linear_type().unwrap());
        let expected = ideal(p.ring(), &["y*T1 - x*T2"]);
        assert!(p.rees_ideal().equals(&expected).unwrap());
        assert!(p.symmetric_ideal().equals(&expected).unwrap());
    }

    #[test]
    fn squared_maximal_ideal_is_not_linear_type() {
        let ring = PolynomialRing::xyzw(FieldSpec::Rationals, 2);
        let i = ideal(&ring, &["x^2", "x*y", "y^2"]);
        let p = rees_presentation(&i).unwrap();
        assert!(!p.is_linear_type().unwrap());
        // The Rees kernel picks up the quadratic relation T1 T3 - T2^2,
        // which no syzygy biform produces.
        let quadric = parse_polynomial(p.ring(), "T1*T3 - T2^2").unwrap();
        assert!(p.rees_ideal().contains(&quadric).unwrap());
        assert!(!p.symmetric_ideal().contains(&quadric).unwrap());
        assert!(!g_infinity_check(&i).unwrap());
    }

    #[test]
    fn monomial_triple_is_linear_type() {
        let ring = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let i = ideal(&ring, &["x*y", "x*z", "y*z"]);
        assert!(is_linear_type(&i).unwrap());
    }

    #[test]
    fn free_quadruple_has_complete_intersection_rees_algebra() {
        let a = arr(FieldSpec::Rationals, 3, &["x", "y", "z", "x + y"]);
        assert!(is_free(&a).unwrap());
        assert!(rees_is_ci(&a).unwrap());
        let p = rees_presentation(&a.jacobian_ideal()).unwrap();
        // A free rank-3 arrangement has a 3 x 2 syzygy matrix, so two
        // biforms present the symmetric algebra.
        assert_eq!(p.symmetric_ideal().num_generators(), 2);
        assert!(p.is_linear_type().unwrap());
        assert!(g_infinity_check(&a.jacobian_ideal()).unwrap());
    }

    #[test]
    fn generic_quadruple_is_linear_type_but_not_free() {
        let a = arr(FieldSpec::Rationals, 3, &["x", "y", "z", "x + y + z"]);
        assert!(!is_free(&a).unwrap());
        assert!(!rees_is_ci(&a).unwrap());
        assert!(is_linear_type(&a.jacobian_ideal()).unwrap());
        assert!(g_infinity_check(&a.jacobian_ideal()).unwrap());
    }

    #[test]
    fn principal_ideals_pass_g_infinity_trivially() {
        let ring = PolynomialRing::xyzw(FieldSpec::Rationals, 2);
        let i = ideal(&ring, &["x^2 + y^2"]);
        assert!(g_infinity_check(&i).unwrap());
    }
}
