//! Brute-force reference answers, computed by exact linear algebra alone.
//!
//! For a homogeneous ideal, the degree-d piece is the row space of the
//! monomial multiples of the generators landing in degree d. Dimension,
//! membership, and Hilbert function values all fall out of row reduction of
//! that matrix, with no term orders, no division, and no basis completion
//! anywhere in sight. This is deliberately a second, slower route to the
//! same numbers the main machinery produces, used to cross-check it.

use crate::error::{Error, Result};
use crate::linalg::ScalarMatrix;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;

fn coefficient_row(p: &Polynomial, index: &[Monomial]) -> Vec<crate::field::Scalar> {
    index.iter().map(|m| p.coeff_of(m)).collect()
}

/// The matrix whose rows span the degree-d piece of the ideal generated by
/// `gens`, over the monomial basis of R_d in the order produced by
/// [`monomials_of_degree`].
fn degree_piece_matrix(gens: &[Polynomial], d: u32) -> Result<ScalarMatrix> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| Error::ZeroInput("oracle needs at least one generator".into()))?;
    let n = ring.nvars();
    let one = ring.field().one();
    let index = monomials_of_degree(n, d);
    let mut rows = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let gd = g.homogeneous_degree()?;
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            let shifted = g.mul_term(&m, &one);
            rows.push(coefficient_row(&shifted, &index));
        }
    }
    Ok(ScalarMatrix::from_rows(*ring.field(), rows))
}

/// Dimension of the degree-d graded piece of the ideal.
pub fn graded_piece_dim(gens: &[Polynomial], d: u32) -> Result<usize> {
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(0);
    }
    Ok(degree_piece_matrix(gens, d)?.rank())
}

/// Hilbert function of the quotient in degree d.
pub fn hilbert_function(gens: &[Polynomial], d: u32) -> Result<usize> {
    let n = gens
        .first()
        .map(|g| g.ring().nvars())
        .ok_or_else(|| Error::ZeroInput("oracle needs at least one generator".into()))?;
    Ok(monomials_of_degree(n, d).len() - graded_piece_dim(gens, d)?)
}

/// Membership of a homogeneous polynomial, by comparing the rank of the
/// degree-d span with and without it.
pub fn contains(gens: &[Polynomial], p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let d = p.homogeneous_degree()?;
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(false);
    }
    let base = degree_piece_matrix(gens, d)?;
    let rank_without = base.rank();
    let index = monomials_of_degree(p.ring().nvars(), d);
    let mut rows: Vec<Vec<crate::field::Scalar>> =
        (0..base.rows()).map(|i| base.row(i).to_vec()).collect();
    rows.push(coefficient_row(p, &index));
    let with = ScalarMatrix::from_rows(*p.ring().field(), rows);
    Ok(with.rank() == rank_without)
}

/// Equality of the degree-d pieces of two homogeneous ideals: equal span
/// dimensions, and the stacked matrix adds no new rank.
pub fn graded_pieces_equal(a: &[Polynomial], b: &[Polynomial], d: u32) -> Result<bool> {
    let da = graded_piece_dim(a, d)?;
    let db = graded_piece_dim(b, d)?;
    if da != db {
        return Ok(false);
    }
    let ma = degree_piece_matrix(a, d)?;
    let mb = degree_piece_matrix(b, d)?;
    let mut rows: Vec<Vec<crate::field::Scalar>> =
        (0..ma.rows()).map(|i| ma.row(i).to_vec()).collect();
    rows.extend((0..mb.rows()).map(|i| mb.row(i).to_vec()));
    let stacked = ScalarMatrix::from_rows(*ma.field(), rows);
    Ok(stacked.rank() == da)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::poly::{PolynomialRing, Ring};

    fn polys(ring: &Ring, gens: &[&str]) -> Vec<Polynomial> {
        gens.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect()
    }

    #[test]
    fn piece_dimensions_of_a_complete_intersection() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let gens = polys(&r, &["x^2 + y^2", "y^2 + z^2"]);
        // Degree 2: the two generators are independent.
        assert_eq!(graded_piece_dim(&gens, 2).unwrap(), 2);
        // Degree 3: { x, y, z } times each generator, all independent.
        assert_eq!(graded_piece_dim(&gens, 3).unwrap(), 6);
        assert_eq!(hilbert_function(&gens, 2).unwrap(), 4);
    }

    #[test]
    fn membership_by_rank() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let gens = polys(&r, &["x^2 - y*z", "x*y - z^2"]);
        let inside = parse_polynomial(&r, "y*x^2 - y^2*z + x^2*y - x*z^2").unwrap();
        assert!(contains(&gens, &inside).unwrap());
        let outside = parse_polynomial(&r, "x^3").unwrap();
        assert!(!contains(&gens, &outside).unwrap());
    }

    #[test]
    fn oracle_agrees_with_the_basis_route() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let gens = polys(&r, &["x^2 + y*z", "x*z + z^2", "y^3"]);
        let ideal = crate::ideal::Ideal::new(&r, gens.clone()).unwrap();
        for d in 0..7 {
            assert_eq!(
                graded_piece_dim(&gens, d).unwrap(),
                crate::hilbert::ideal_graded_dim(&ideal, d).unwrap(),
                "degree {d}"
            );
        }
    }

    #[test]
    fn piece_equality_is_two_sided() {
        let r = PolynomialRing::xyzw(FieldSpec::Rationals, 2);
        let a = polys(&r, &["x"]);
        let b = polys(&r, &["x^2", "x*y"]);
        assert!(!graded_pieces_equal(&a, &b, 1).unwrap());
        assert!(graded_pieces_equal(&a, &b, 2).unwrap());
        assert!(graded_pieces_equal(&a, &b, 5).unwrap());
    }
}
