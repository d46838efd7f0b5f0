//! Dense exact linear algebra over the coefficient field, plus invertible
//! linear changes of variables between polynomial rings.
//!
//! Everything here is fraction-free only in spirit: entries are field scalars
//! and elimination is ordinary Gauss-Jordan, which is exact over Q and F_p.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    a: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize) -> ScalarMatrix {
        ScalarMatrix { field, rows, cols, a: vec![field.zero(); rows * cols] }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> ScalarMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        debug_assert!(rows.iter().all(|x| x.len() == c));
        ScalarMatrix { field, rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    pub fn identity(field: FieldSpec, n: usize) -> ScalarMatrix {
        let mut m = ScalarMatrix::new(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.a[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::new(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        let mut out = ScalarMatrix::new(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = f.mul(aik, other.at(k, j));
                    *out.at_mut(i, j) = f.add(out.at(i, j), &add);
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.a.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = f.inv(self.at(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                *self.at_mut(r, j) = f.mul(self.at(r, j), &inv);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let factor = self.at(i, c).clone();
                    for j in c..self.cols {
                        let sub = f.mul(&factor, self.at(r, j));
                        *self.at_mut(i, j) = f.sub(self.at(i, j), &sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                return f.zero();
            };
            if pr != c {
                for j in 0..m.cols {
                    m.a.swap(c * m.cols + j, pr * m.cols + j);
                }
                det = f.neg(&det);
            }
            det = f.mul(&det, m.at(c, c));
            let inv = f.inv(m.at(c, c)).expect("pivot is nonzero");
            for i in c + 1..m.rows {
                if !m.at(i, c).is_zero() {
                    let factor = f.mul(m.at(i, c), &inv);
                    for j in c..m.cols {
                        let sub = f.mul(&factor, m.at(c, j));
                        *m.at_mut(i, j) = f.sub(m.at(i, j), &sub);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<ScalarMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field;
        let mut aug = ScalarMatrix::new(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = f.one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = ScalarMatrix::new(f, n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// Basis of the right kernel {v : A v = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (c, pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = f.neg(m.at(*r, free));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b, if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let mut aug = ScalarMatrix::new(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

/// An invertible change of variables between two rings of the same shape.
///
/// The matrix convention: column j of `forward_matrix` is the coefficient
/// vector (in the source variables) of the form the j-th target variable is
/// set equal to. Writing y_j for the target variables, y_j = sum_i M[i][j] x_i,
/// hence substituting x_i by the i-th column of M^{-1} (read in y) transports
/// a polynomial from the source ring to the target ring.
pub struct VariableChange {
    src: Ring,
    dst: Ring,
    m: ScalarMatrix,
    m_inv: ScalarMatrix,
}

impl VariableChange {
    pub fn new(src: &Ring, dst: &Ring, m: ScalarMatrix) -> Result<VariableChange> {
        let n = src.nvars();
        if dst.nvars() != n || dst.field() != src.field() {
            return Err(Error::RingMismatch("variable change between different shapes".into()));
        }
        if m.rows() != n || m.cols() != n {
            return Err(Error::InvalidInput("variable-change matrix has the wrong shape".into()));
        }
        let m_inv = m.inverse()?;
        Ok(VariableChange { src: src.clone(), dst: dst.clone(), m, m_inv })
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &ScalarMatrix {
        &self.m_inv
    }

    fn columns_as_forms(matrix: &ScalarMatrix, ring: &Ring) -> Vec<Polynomial> {
        (0..matrix.cols())
            .map(|j| {
                let col: Vec<Scalar> = (0..matrix.rows()).map(|i| matrix.at(i, j).clone()).collect();
                Polynomial::linear_form(ring, &col)
            })
            .collect()
    }

    /// Transports p(x) to the target ring: substitutes x_i by the linear form
    /// given by column i of M^{-1}.
    pub fn forward(&self, p: &Polynomial) -> Result<Polynomial> {
        let images = Self::columns_as_forms(&self.m_inv, &self.dst);
        p.compose(&images)
    }

    /// Transports q(y) back: substitutes y_j by column j of M.
    pub fn backward(&self, q: &Polynomial) -> Result<Polynomial> {
        let images = Self::columns_as_forms(&self.m, &self.src);
        q.compose(&images)
    }

    /// Checks the gradient transport law: for G = forward(F), the gradient of
    /// G equals the row vector of transported partials of F times the
    /// transpose of M^{-1}.
    pub fn gradient_transport_holds(&self, f: &Polynomial) -> Result<bool> {
        let g = self.forward(f)?;
        let transported: Vec<Polynomial> = f
            .gradient()
            .iter()
            .map(|fx| self.forward(fx))
            .collect::<Result<_>>()?;
        for (i, gy) in g.gradient().iter().enumerate() {
            // sum_j transported[j] * (M^{-1})[i][j]
            let mut rhs = Polynomial::zero(&self.dst);
            for (j, t) in transported.iter().enumerate() {
                rhs = rhs.try_add(&t.scale(self.m_inv.at(i, j)))?;
            }
            if gy != &rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::poly::PolynomialRing;

    fn qmat(rows: &[&[i64]]) -> ScalarMatrix {
        let f = FieldSpec::Rationals;
        ScalarMatrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_det_inverse() {
        let m = qmat(&[&[1, 2], &[1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), FieldSpec::Rationals.from_i64(-1));
        let inv = m.inverse().unwrap();
        assert_eq!(inv, qmat(&[&[-1, 2], &[1, -1]]));
        assert_eq!(m.mul(&inv), ScalarMatrix::identity(FieldSpec::Rationals, 2));
        let singular = qmat(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.rank(), 1);
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn kernel_and_solve() {
        let m = qmat(&[&[1, 1, 1], &[0, 1, 2]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        let f = FieldSpec::Rationals;
        for v in &ker {
            for i in 0..m.rows() {
                let mut s = f.zero();
                for j in 0..m.cols() {
                    s = f.add(&s, &f.mul(m.at(i, j), &v[j]));
                }
                assert!(s.is_zero());
            }
        }
        let sol = m.solve(&[f.from_i64(3), f.from_i64(2)]).unwrap();
        let mut s0 = f.zero();
        for j in 0..3 {
            s0 = f.add(&s0, &f.mul(m.at(0, j), &sol[j]));
        }
        assert_eq!(s0, f.from_i64(3));
        let inconsistent = qmat(&[&[1, 0], &[1, 0]]);
        assert!(inconsistent.solve(&[f.from_i64(1), f.from_i64(2)]).is_none());
    }

    #[test]
    fn prime_field_elimination() {
        let f = FieldSpec::prime(5).unwrap();
        let m = ScalarMatrix::from_rows(
            f,
            vec![
                vec![f.from_i64(2), f.from_i64(3)],
                vec![f.from_i64(1), f.from_i64(1)],
            ],
        );
        assert_eq!(m.rank(), 2);
        // det [[2,3],[1,4]] = 5 vanishes mod 5.
        let singular = ScalarMatrix::from_rows(
            f,
            vec![
                vec![f.from_i64(2), f.from_i64(3)],
                vec![f.from_i64(1), f.from_i64(4)],
            ],
        );
        assert_eq!(singular.rank(), 1);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ScalarMatrix::identity(f, 2));
    }

    #[test]
    fn variable_change_round_trip() {
        let src = PolynomialRing::new(FieldSpec::Rationals, vec!["x1".into(), "x2".into()]).unwrap();
        let dst = PolynomialRing::new(FieldSpec::Rationals, vec!["y1".into(), "y2".into()]).unwrap();
        let m = qmat(&[&[1, 2], &[1, 1]]);
        let vc = VariableChange::new(&src, &dst, m).unwrap();
        let f = parse_polynomial(&src, "x1^2 - x2^2 + 3x1 x2").unwrap();
        let g = vc.forward(&f).unwrap();
        let back = vc.backward(&g).unwrap();
        assert_eq!(back, f);
        assert!(vc.gradient_transport_holds(&f).unwrap());
    }
}
