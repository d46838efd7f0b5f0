//! Hilbert functions and dimension theory through the leading-term ideal.
//!
//! Passing to leading terms preserves both the Hilbert function (Macaulay)
//! and the Krull dimension, so every question here reduces to counting
//! standard monomials or to a combinatorial statement about the supports of
//! the leading monomials.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};

/// Minimal generators of the leading-term ideal (degrevlex): the leading
/// monomials of the reduced basis.
pub fn leading_monomials(ideal: &Ideal) -> Result<Vec<Monomial>> {
    let gb = ideal.groebner_basis(MonomialOrder::DegRevLex)?;
    Ok(gb
        .iter()
        .map(|g| g.leading_term().expect("basis elements are nonzero").mono.clone())
        .collect())
}

/// Hilbert function of R/I in degree d: the number of degree-d monomials
/// outside the leading-term ideal.
pub fn hilbert_function(ideal: &Ideal, d: u32) -> Result<usize> {
    let lts = leading_monomials(ideal)?;
    let n = ideal.ring().nvars();
    Ok(monomials_of_degree(n, d)
        .into_iter()
        .filter(|m| !lts.iter().any(|lt| lt.divides(m)))
        .count())
}

/// Dimension of the degree-d graded piece of I itself.
pub fn ideal_graded_dim(ideal: &Ideal, d: u32) -> Result<usize> {
    let n = ideal.ring().nvars();
    let total = monomials_of_degree(n, d).len();
    Ok(total - hilbert_function(ideal, d)?)
}

/// Krull dimension of R/I; `None` when I is the unit ideal (the zero ring).
///
/// For a monomial ideal the dimension is the largest coordinate subspace
/// avoiding all generators: max |S| over variable subsets S containing no
/// generator's support. The leading-term ideal has the same dimension as I.
pub fn dimension(ideal: &Ideal) -> Result<Option<usize>> {
    let lts = leading_monomials(ideal)?;
    if lts.iter().any(|m| m.is_one()) {
        return Ok(None);
    }
    let n = ideal.ring().nvars();
    assert!(n <= 24, "subset enumeration over {n} variables");
    let supports: Vec<u32> = lts
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0usize;
    for s in 0u32..(1 << n) {
        if supports.iter().all(|&sup| sup & !s != 0) {
            best = best.max(s.count_ones() as usize);
        }
    }
    Ok(Some(best))
}

/// Codimension (height) of I; the unit ideal is rejected.
pub fn codimension(ideal: &Ideal) -> Result<usize> {
    match dimension(ideal)? {
        None => Err(Error::UnitIdeal("codimension of the unit ideal".into())),
        Some(d) => Ok(ideal.ring().nvars() - d),
    }
}

/// Whether I is primary to the irrelevant maximal ideal: proper, with
/// dim R/I = 0.
pub fn is_m_primary(ideal: &Ideal) -> Result<bool> {
    Ok(dimension(ideal)? == Some(0))
}

/// Hilbert function of R/I on an initial segment of degrees, together with
/// the Krull dimension. The segment always reaches past the degree where the
/// function starts agreeing with the Hilbert polynomial, so the tail behavior
/// is visible from the data alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// dim_K [R/I]_d for d = 0, 1, ..., in order.
    pub values: Vec<usize>,
    /// Krull dimension of R/I; `None` for the unit ideal.
    pub dimension: Option<usize>,
}

/// Coefficients of the Hilbert series numerator P(t), where
/// HS(R/I) = P(t) / (1-t)^n. Index is the power of t.
///
/// Computed on the leading-term ideal by splitting off a pivot variable: the
/// sequence 0 -> R/(I:x)(-1) -> R/I -> R/(I+(x)) -> 0 gives
/// P(I) = t P(I:x) + P(I+(x)), and once the surviving generators have
/// pairwise disjoint supports they form a regular sequence, so the Koszul
/// complex closes the recursion with a product of (1 - t^deg) factors.
pub fn hilbert_series_numerator(ideal: &Ideal) -> Result<Vec<i64>> {
    let gens = leading_monomials(ideal)?
        .iter()
        .map(|m| m.exps().to_vec())
        .collect();
    let mut p = numerator_rec(gens, ideal.ring().nvars());
    while p.last() == Some(&0) {
        p.pop();
    }
    Ok(p)
}

/// Drop duplicate monomials and any monomial divisible by another.
fn minimalize_monomials(gens: &mut Vec<Vec<u16>>) {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    let mut kept: Vec<Vec<u16>> = Vec::new();
    for g in gens.drain(..) {
        if !kept.iter().any(|k| k.iter().zip(&g).all(|(a, b)| a <= b)) {
            kept.push(g);
        }
    }
    *gens = kept;
}

fn poly_shift(p: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0; p.len() + k];
    out[k..].copy_from_slice(p);
    out
}

fn poly_add(mut a: Vec<i64>, b: &[i64]) -> Vec<i64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn numerator_rec(mut gens: Vec<Vec<u16>>, nvars: usize) -> Vec<i64> {
    minimalize_monomials(&mut gens);
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Vec::new();
    }
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (pivot, &hits) = counts
        .iter()
        .enumerate()
        .max_by_key(|(_, &c)| c)
        .unwrap_or((0, &0));
    if hits <= 1 {
        // Pairwise disjoint supports: a regular sequence of monomials.
        let mut p = vec![1i64];
        for g in &gens {
            let d = g.iter().map(|&e| e as usize).sum();
            let shifted = poly_shift(&p, d);
            p = poly_add(shifted.iter().map(|c| -c).collect(), &p);
        }
        return p;
    }
    let colon: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h[pivot] > 0 {
                h[pivot] -= 1;
            }
            h
        })
        .collect();
    let mut sum: Vec<Vec<u16>> = gens.iter().filter(|g| g[pivot] == 0).cloned().collect();
    let mut pure = vec![0u16; nvars];
    pure[pivot] = 1;
    sum.push(pure);
    let recursed = poly_shift(&numerator_rec(colon, nvars), 1);
    poly_add(recursed, &numerator_rec(sum, nvars))
}

/// Hilbert function values of R/I out past stabilization, plus the Krull
/// dimension. The function agrees with the Hilbert polynomial from degree
/// deg P - n + 1 on, so the reported segment extends one step beyond that.
pub fn hilbert_data(ideal: &Ideal) -> Result<HilbertData> {
    let p = hilbert_series_numerator(ideal)?;
    let n = ideal.ring().nvars();
    let horizon = p.len().saturating_sub(n) + 1;
    let mut series: Vec<i64> = (0..=horizon)
        .map(|d| p.get(d).copied().unwrap_or(0))
        .collect();
    for _ in 0..n {
        for i in 1..series.len() {
            series[i] += series[i - 1];
        }
    }
    let values = series
        .into_iter()
        .map(|c| {
            assert!(c >= 0, "Hilbert function values are nonnegative");
            c as usize
        })
        .collect();
    Ok(HilbertData { values, dimension: dimension(ideal)? })
}

/// Whether [I]_d = [J]_d as subspaces of R_d. Needs homogeneous ideals.
pub fn graded_pieces_equal(a: &Ideal, b: &Ideal, d: u32) -> Result<bool> {
    if !a.ring().compatible(b.ring()) {
        return Err(Error::RingMismatch("graded pieces across rings".into()));
    }
    if !a.is_homogeneous() || !b.is_homogeneous() {
        return Err(Error::NotHomogeneous("graded piece comparison".into()));
    }
    if ideal_graded_dim(a, d)? != ideal_graded_dim(b, d)? {
        return Ok(false);
    }
    // Equal dimensions, so one containment suffices: every monomial multiple
    // of a generator of `a` landing in degree d must lie in `b`.
    let n = a.ring().nvars();
    for g in a.generators() {
        let gd = g.homogeneous_degree()?;
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            let shifted = g.mul_term(&m, &a.ring().field().one());
            if !b.contains_truncated(&shifted)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::poly::{PolynomialRing, Ring};

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        let polys = gens.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect();
        Ideal::new(ring, polys).unwrap()
    }

    #[test]
    fn hilbert_function_of_a_fat_line() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let i = ideal(&r, &["x^2", "x*y", "y^2"]);
        assert_eq!(hilbert_function(&i, 0).unwrap(), 1);
        assert_eq!(hilbert_function(&i, 1).unwrap(), 3);
        assert_eq!(hilbert_function(&i, 2).unwrap(), 3);
        assert_eq!(hilbert_function(&i, 5).unwrap(), 3);
        assert_eq!(dimension(&i).unwrap(), Some(1));
        assert_eq!(codimension(&i).unwrap(), 2);
    }

    #[test]
    fn dimension_edge_cases() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        assert_eq!(dimension(&Ideal::zero(&r)).unwrap(), Some(3));
        assert_eq!(dimension(&Ideal::unit(&r)).unwrap(), None);
        assert!(codimension(&Ideal::unit(&r)).is_err());
        let pt = ideal(&r, &["x^2", "y^3", "z"]);
        assert!(is_m_primary(&pt).unwrap());
        let line = ideal(&r, &["x^2", "y^3"]);
        assert!(!is_m_primary(&line).unwrap());
    }

    #[test]
    fn dimension_sees_through_non_monomial_generators() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        // A smooth conic in the plane x = 0: a curve, dimension 1 as a cone.
        let i = ideal(&r, &["x", "y^2 - z^2"]);
        assert_eq!(dimension(&i).unwrap(), Some(1));
        assert_eq!(codimension(&i).unwrap(), 2);
    }

    #[test]
    fn hilbert_data_of_standard_examples() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let max = ideal(&r, &["x", "y", "z"]);
        let data = hilbert_data(&max).unwrap();
        assert_eq!(data.values, vec![1, 0, 0]);
        assert_eq!(data.dimension, Some(0));

        let squares = ideal(&r, &["x^2", "y^2", "z^2"]);
        let data = hilbert_data(&squares).unwrap();
        assert_eq!(data.values, vec![1, 3, 3, 1, 0, 0]);
        assert_eq!(data.dimension, Some(0));

        let cubic = ideal(&r, &["x^3 + y^3 + z^3"]);
        let data = hilbert_data(&cubic).unwrap();
        assert_eq!(data.dimension, Some(2));
        for (d, &v) in data.values.iter().enumerate() {
            assert_eq!(v, hilbert_function(&cubic, d as u32).unwrap());
        }

        assert_eq!(hilbert_data(&Ideal::zero(&r)).unwrap().values, vec![1, 3]);
        let unit = hilbert_data(&Ideal::unit(&r)).unwrap();
        assert!(unit.values.iter().all(|&v| v == 0));
        assert_eq!(unit.dimension, None);
    }

    #[test]
    fn series_numerator_agrees_with_monomial_counting() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        for gens in [
            vec!["x^2 + y*z", "z^3"],
            vec!["x*z - y^2", "y*z - x^2"],
            vec!["x^2*y", "y^2*z", "x*z^2"],
            vec!["x^2 - y^2", "x*y + z^2", "y^3"],
        ] {
            let i = ideal(&r, &gens);
            let data = hilbert_data(&i).unwrap();
            for (d, &v) in data.values.iter().enumerate() {
                assert_eq!(v, hilbert_function(&i, d as u32).unwrap(), "{gens:?} at {d}");
            }
            // The pole order of the series at t = 1 recovers the dimension.
            let p = hilbert_series_numerator(&i).unwrap();
            let mut q = p.clone();
            let mut vanishing = 0usize;
            while !q.is_empty() && q.iter().sum::<i64>() == 0 {
                // Divide by (1 - t): prefix sums drop the degree by one.
                for k in 1..q.len() {
                    q[k] += q[k - 1];
                }
                assert_eq!(q.pop(), Some(0));
                vanishing += 1;
            }
            assert_eq!(dimension(&i).unwrap(), Some(3 - vanishing));
        }
    }

    #[test]
    fn graded_piece_comparison() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let a = ideal(&r, &["x", "y"]);
        let b = ideal(&r, &["x^2", "x*y", "y^2", "x*z", "y*z"]);
        assert!(!graded_pieces_equal(&a, &b, 1).unwrap());
        assert!(graded_pieces_equal(&a, &b, 2).unwrap());
        assert!(graded_pieces_equal(&a, &b, 3).unwrap());
    }

    #[test]
    fn graded_dims_complement_each_other() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let i = ideal(&r, &["x^2 + y*z", "z^3"]);
        for d in 0..6 {
            let total = monomials_of_degree(3, d).len();
            assert_eq!(
                ideal_graded_dim(&i, d).unwrap() + hilbert_function(&i, d).unwrap(),
                total
            );
        }
    }
}
