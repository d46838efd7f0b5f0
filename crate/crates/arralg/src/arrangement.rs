//! Central hyperplane arrangements: the defining polynomial, the Jacobian
//! ideal, fold-product ideals, deletion and restriction, genericity, and
//! the degree-by-degree comparisons between J_f and the fold ideal.
//!
//! An arrangement is stored as its coefficient matrix: n rows, one column
//! per form, entry (i, j) the coefficient of x_i in l_j. Columns are
//! normalized so the first nonzero entry is 1, making "same hyperplane"
//! equal to "same column".

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::hilbert;
use crate::ideal::Ideal;
use crate::linalg::ScalarMatrix;
use crate::matroid;
use crate::poly::{Polynomial, PolynomialRing, Ring};
use crate::resolution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

/// The three syzygy initial degrees entering the addition-deletion law,
/// and whether the law's implication holds on this instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdditionDeletionCheck {
    pub r_full: u32,
    pub r_deletion: u32,
    pub r_restriction: u32,
    pub implication_holds: bool,
}

#[derive(Default)]
struct DerivedCache {
    jacobian: OnceLock<Ideal>,
    folds: Mutex<BTreeMap<usize, Ideal>>,
}

/// A central, essential arrangement of m ≥ n distinct hyperplanes in K^n.
#[derive(Clone)]
pub struct Arrangement {
    ring: Ring,
    matrix: ScalarMatrix,
    forms: Vec<Polynomial>,
    cache: Arc<DerivedCache>,
}

fn normalize_column(field: &FieldSpec, col: &[Scalar]) -> Result<Vec<Scalar>> {
    let first = col
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidArrangement("zero column is not a hyperplane".into()))?;
    let inv = field.inv(first).expect("nonzero scalar");
    Ok(col.iter().map(|c| field.mul(c, &inv)).collect())
}

impl Arrangement {
    /// Builds an arrangement from per-form coefficient columns (each of
    /// length n). Columns are normalized and validated: nonzero, pairwise
    /// distinct as hyperplanes, jointly of rank n, and m ≥ n.
    pub fn new(ring: &Ring, columns: &[Vec<Scalar>]) -> Result<Arrangement> {
        let n = ring.nvars();
        let field = ring.field();
        if columns.len() < n {
            return Err(Error::InvalidArrangement(format!(
                "{} forms cannot have rank {n}",
                columns.len()
            )));
        }
        let mut normalized = Vec::with_capacity(columns.len());
        for col in columns {
            if col.len() != n {
                return Err(Error::InvalidArrangement(format!(
                    "form with {} coefficients in a ring of {n} variables",
                    col.len()
                )));
            }
            normalized.push(normalize_column(field, col)?);
        }
        for (j, col) in normalized.iter().enumerate() {
            if normalized[..j].contains(col) {
                return Err(Error::InvalidArrangement(
                    "two forms define the same hyperplane".into(),
                ));
            }
        }
        let rows = (0..n)
            .map(|i| normalized.iter().map(|c| c[i].clone()).collect())
            .collect();
        let matrix = ScalarMatrix::from_rows(*field, rows);
        if matrix.rank() != n {
            return Err(Error::InvalidArrangement(format!(
                "arrangement has rank {} in {n} variables",
                matrix.rank()
            )));
        }
        let forms = normalized
            .iter()
            .map(|c| Polynomial::linear_form(ring, c))
            .collect();
        Ok(Arrangement {
            ring: ring.clone(),
            matrix,
            forms,
            cache: Arc::new(DerivedCache::default()),
        })
    }

    /// Builds an arrangement from linear forms already in the ring.
    pub fn from_forms(ring: &Ring, forms: &[Polynomial]) -> Result<Arrangement> {
        let n = ring.nvars();
        let mut columns = Vec::with_capacity(forms.len());
        for f in forms {
            if f.is_zero() || f.homogeneous_degree()? != 1 {
                return Err(Error::InvalidArrangement(format!(
                    "'{f}' is not a linear form"
                )));
            }
            let col = (0..n)
                .map(|i| f.coeff_of(&crate::monomial::Monomial::variable(n, i)))
                .collect();
            columns.push(col);
        }
        Arrangement::new(ring, &columns)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The rank n (the ambient dimension; the arrangement is essential).
    pub fn rank(&self) -> usize {
        self.ring.nvars()
    }

    /// The number of hyperplanes m.
    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn form(&self, j: usize) -> &Polynomial {
        &self.forms[j]
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    /// f = l_1 ... l_m.
    pub fn defining_polynomial(&self) -> Polynomial {
        let mut f = Polynomial::one(&self.ring);
        for l in &self.forms {
            f = f.try_mul(l).expect("same ring");
        }
        f
    }

    /// Whether the field characteristic divides m, which disables the Euler
    /// identity arguments (f need not lie in J_f then).
    pub fn char_divides_m(&self) -> bool {
        self.field().char_divides(self.num_forms() as u64)
    }

    /// The Jacobian ideal, generated by the n partials of f; equigenerated
    /// in degree m - 1.
    pub fn jacobian_ideal(&self) -> Ideal {
        self.cache
            .jacobian
            .get_or_init(|| {
                let f = self.defining_polynomial();
                Ideal::new(&self.ring, f.gradient()).expect("partials live in the ring")
            })
            .clone()
    }

    /// The cofactors L_j = f / l_j, indexed parallel to the forms.
    pub fn cofactors(&self) -> Vec<Polynomial> {
        (0..self.num_forms())
            .map(|j| {
                let mut p = Polynomial::one(&self.ring);
                for (i, l) in self.forms.iter().enumerate() {
                    if i != j {
                        p = p.try_mul(l).expect("same ring");
                    }
                }
                p
            })
            .collect()
    }

    /// The ideal of all k-fold products of distinct forms. For k = m - 1
    /// the generators are the cofactors L_1, ..., L_m in that order;
    /// otherwise subsets are enumerated lexicographically.
    pub fn fold_product_ideal(&self, k: usize) -> Result<Ideal> {
        let m = self.num_forms();
        if k < 1 || k > m {
            return Err(Error::InvalidInput(format!(
                "fold length {k} outside 1..={m}"
            )));
        }
        if let Some(hit) = self.cache.folds.lock().unwrap().get(&k) {
            return Ok(hit.clone());
        }
        let gens: Vec<Polynomial> = if k == m - 1 {
            self.cofactors()
        } else {
            let mut out = Vec::new();
            let mut subset: Vec<usize> = (0..k).collect();
            loop {
                let mut p = Polynomial::one(&self.ring);
                for &i in &subset {
                    p = p.try_mul(&self.forms[i]).expect("same ring");
                }
                out.push(p);
                // Advance the subset lexicographically.
                let mut i = k;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if subset[i] != i + m - k {
                        subset[i] += 1;
                        for j in i + 1..k {
                            subset[j] = subset[j - 1] + 1;
                        }
                        break;
                    }
                    if i == 0 {
                        subset.clear();
                        break;
                    }
                }
                if subset.is_empty() {
                    break;
                }
            }
            out
        };
        let ideal = Ideal::new(&self.ring, gens)?;
        self.cache.folds.lock().unwrap().insert(k, ideal.clone());
        Ok(ideal)
    }

    /// The main fold-product ideal: (m-1)-fold products.
    pub fn fold_ideal(&self) -> Ideal {
        self.fold_product_ideal(self.num_forms() - 1)
            .expect("m - 1 is always in range")
    }

    /// Largest d such that every d of the forms are linearly independent;
    /// d = n means generic.
    pub fn genericity_level(&self) -> usize {
        let cs = matroid::circuits(&self.matrix);
        cs.iter()
            .map(|c| c.cols.len() - 1)
            .min()
            .unwrap_or(self.rank())
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_level() == self.rank()
    }

    /// Indices whose deletion drops the rank.
    pub fn coloops(&self) -> Vec<usize> {
        matroid::coloops(&self.matrix)
    }

    /// The finest direct-sum decomposition, as blocks of form indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        matroid::components(&self.matrix)
    }

    pub fn circuits(&self) -> Vec<matroid::Circuit> {
        matroid::circuits(&self.matrix)
    }

    /// Deletes form j. The result must still be a rank-n arrangement, so
    /// deleting a coloop is an error.
    pub fn deletion(&self, j: usize) -> Result<Arrangement> {
        let m = self.num_forms();
        if j >= m {
            return Err(Error::InvalidInput(format!("form index {j} out of range")));
        }
        let columns: Vec<Vec<Scalar>> = (0..m)
            .filter(|&i| i != j)
            .map(|i| (0..self.rank()).map(|r| self.matrix.at(r, i).clone()).collect())
            .collect();
        Arrangement::new(&self.ring, &columns).map_err(|_| {
            Error::InvalidArrangement(format!(
                "deleting form {j} drops the rank below {}",
                self.rank()
            ))
        })
    }

    /// Restricts to the hyperplane l_j = 0: a change of variables sends l_j
    /// to the last variable, which is then set to zero. Residual forms that
    /// become proportional are merged; the result lives in n - 1 variables.
    pub fn restriction(&self, j: usize) -> Result<Arrangement> {
        let n = self.rank();
        let m = self.num_forms();
        if j >= m {
            return Err(Error::InvalidInput(format!("form index {j} out of range")));
        }
        if n < 2 {
            return Err(Error::InvalidArrangement(
                "restriction needs at least two variables".into(),
            ));
        }
        let field = self.field();
        // Columns of S: a basis of the hyperplane a_j-perp, then any vector
        // with a_j . v = 1. Then l_i becomes S^T a_i, and dropping the last
        // coordinate restricts to l_j = 0.
        let a_j: Vec<Scalar> = (0..n).map(|i| self.matrix.at(i, j).clone()).collect();
        let row = ScalarMatrix::from_rows(*field, vec![a_j.clone()]);
        let kernel = row.kernel_basis();
        assert_eq!(kernel.len(), n - 1, "a nonzero form has an (n-1)-dim kernel");
        let particular = row
            .solve(&[field.one()])
            .expect("a nonzero form attains the value one");
        let mut s_cols = kernel;
        s_cols.push(particular);
        let mut restricted: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..m {
            if i == j {
                continue;
            }
            let a_i: Vec<Scalar> = (0..n).map(|r| self.matrix.at(r, i).clone()).collect();
            // First n-1 entries of S^T a_i.
            let col: Vec<Scalar> = s_cols[..n - 1]
                .iter()
                .map(|s| {
                    let mut acc = field.zero();
                    for r in 0..n {
                        acc = field.add(&acc, &field.mul(&a_i[r], &s[r]));
                    }
                    acc
                })
                .collect();
            if col.iter().all(|c| c.is_zero()) {
                continue;
            }
            let col = normalize_column(field, &col)?;
            if !restricted.contains(&col) {
                restricted.push(col);
            }
        }
        let small = if n - 1 <= 4 {
            PolynomialRing::xyzw(*field, n - 1)
        } else {
            PolynomialRing::standard(*field, n - 1)
        };
        Arrangement::new(&small, &restricted)
    }

    /// The membership of Delta = (l_1 ... l_{m-n})^2 l_{m-n+1} ... l_{m-1}
    /// in J_f. Generic arrangements with m > n only; the characteristic must
    /// not divide m for the statement to be meaningful.
    pub fn delta_membership_check(&self) -> Result<bool> {
        let n = self.rank();
        let m = self.num_forms();
        if !self.is_generic() {
            return Err(Error::Precondition(
                "Delta membership is stated for generic arrangements".into(),
            ));
        }
        if m < n + 1 {
            return Err(Error::Precondition("Delta membership needs m > n".into()));
        }
        let mut delta = Polynomial::one(&self.ring);
        for i in 0..m - n {
            delta = delta.try_mul(&self.forms[i])?;
            delta = delta.try_mul(&self.forms[i])?;
        }
        for i in m - n..m - 1 {
            delta = delta.try_mul(&self.forms[i])?;
        }
        self.jacobian_ideal().contains_truncated(&delta)
    }

    /// Whether the degree-d pieces of the fold ideal and of J_f agree.
    pub fn graded_piece_equality(&self, d: u32) -> Result<bool> {
        hilbert::graded_pieces_equal(&self.fold_ideal(), &self.jacobian_ideal(), d)
    }

    /// The addition-deletion law for the syzygy initial degree r: comparing
    /// the arrangement against its deletion and restriction at form j, if
    /// r(deletion) < r(restriction) then r = r(deletion) + 1.
    ///
    /// Needs rank at least 3 (the restriction must itself have syzygies to
    /// speak of), a deletion that keeps the rank (j not a coloop), and a
    /// characteristic not dividing the number of forms.
    pub fn addition_deletion_check(&self, j: usize) -> Result<AdditionDeletionCheck> {
        if self.rank() < 3 {
            return Err(Error::Precondition(
                "the addition-deletion law needs rank at least 3, so that the \
                 restriction still has rank 2"
                    .into(),
            ));
        }
        if self.char_divides_m() {
            return Err(Error::Precondition(
                "the characteristic divides the number of forms".into(),
            ));
        }
        let deletion = self.deletion(j)?;
        let restriction = self.restriction(j)?;
        let r_full = initial_syzygy_degree(self)?;
        let r_deletion = initial_syzygy_degree(&deletion)?;
        let r_restriction = initial_syzygy_degree(&restriction)?;
        let implication_holds =
            r_deletion >= r_restriction || r_full == r_deletion + 1;
        Ok(AdditionDeletionCheck { r_full, r_deletion, r_restriction, implication_holds })
    }

    /// Canonical JSON: {"field": ..., "n": ..., "forms": [[entries], ...]}
    /// with one row of n entries per form.
    pub fn to_json(&self) -> serde_json::Value {
        let forms: Vec<serde_json::Value> = (0..self.num_forms())
            .map(|j| {
                (0..self.rank())
                    .map(|i| scalar_to_json(self.field(), self.matrix.at(i, j)))
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        serde_json::json!({
            "field": self.field(),
            "n": self.rank(),
            "forms": forms,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Arrangement> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("arrangement JSON must be an object".into()))?;
        let field: FieldSpec = serde_json::from_value(
            obj.get("field")
                .cloned()
                .ok_or_else(|| Error::InvalidInput("missing 'field'".into()))?,
        )
        .map_err(|e| Error::InvalidInput(format!("bad 'field': {e}")))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::InvalidInput("missing or bad 'n'".into()))? as usize;
        let forms = obj
            .get("forms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::InvalidInput("missing or bad 'forms'".into()))?;
        let mut columns = Vec::with_capacity(forms.len());
        for form in forms {
            let entries = form
                .as_array()
                .ok_or_else(|| Error::InvalidInput("each form must be an array".into()))?;
            let col = entries
                .iter()
                .map(|e| scalar_from_json(&field, e))
                .collect::<Result<Vec<_>>>()?;
            columns.push(col);
        }
        let ring = if n <= 4 {
            PolynomialRing::xyzw(field, n)
        } else {
            PolynomialRing::standard(field, n)
        };
        Arrangement::new(&ring, &columns)
    }

    pub fn from_json_str(s: &str) -> Result<Arrangement> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("invalid JSON: {e}")))?;
        Arrangement::from_json(&v)
    }
}

fn scalar_to_json(field: &FieldSpec, s: &Scalar) -> serde_json::Value {
    match s {
        Scalar::Mod(v) => serde_json::json!(v),
        Scalar::Rat(r) => {
            use num::traits::ToPrimitive;
            if r.is_integer() {
                if let Some(i) = r.numer().to_i64() {
                    return serde_json::json!(i);
                }
            }
            serde_json::json!(field.render(s))
        }
    }
}

fn scalar_from_json(field: &FieldSpec, v: &serde_json::Value) -> Result<Scalar> {
    if let Some(i) = v.as_i64() {
        return Ok(field.from_i64(i));
    }
    if let Some(s) = v.as_str() {
        return field.parse_scalar(s);
    }
    Err(Error::InvalidInput(format!(
        "coefficient entries must be integers or \"a/b\" strings, got {v}"
    )))
}

/// Rejection-samples integer coefficient matrices until one is a valid
/// arrangement; deterministic per seed. `require_generic` additionally
/// demands genericity level n.
fn random_impl(
    field: FieldSpec,
    n: usize,
    m: usize,
    seed: u64,
    bound: i64,
    require_generic: bool,
) -> Result<Arrangement> {
    if bound < 1 {
        return Err(Error::InvalidInput("coefficient bound must be positive".into()));
    }
    let ring = if n <= 4 {
        PolynomialRing::xyzw(field, n)
    } else {
        PolynomialRing::standard(field, n)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let columns: Vec<Vec<Scalar>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| field.from_i64(rng.gen_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        let Ok(a) = Arrangement::new(&ring, &columns) else {
            continue;
        };
        if !require_generic || a.is_generic() {
            return Ok(a);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no valid arrangement found for n={n}, m={m}, bound={bound}, seed={seed}"
    )))
}

/// A random generic arrangement: every n columns independent.
pub fn random_generic(
    field: FieldSpec,
    n: usize,
    m: usize,
    seed: u64,
    bound: i64,
) -> Result<Arrangement> {
    if m < n + 1 {
        return Err(Error::InvalidInput(
            "generic sampling expects m at least n + 1".into(),
        ));
    }
    random_impl(field, n, m, seed, bound, true)
}

/// A random valid arrangement with no genericity requirement; small bounds
/// produce degenerate (non-generic) instances readily.
pub fn random_arrangement(
    field: FieldSpec,
    n: usize,
    m: usize,
    seed: u64,
    bound: i64,
) -> Result<Arrangement> {
    random_impl(field, n, m, seed, bound, false)
}

/// Initial degree of the Jacobian syzygies. Rank >= 2 guarantees at least
/// two minimal generators, so the degree always exists there.
fn initial_syzygy_degree(arr: &Arrangement) -> Result<u32> {
    resolution::syzygy_initial_degree(&arr.jacobian_ideal())?.ok_or_else(|| {
        Error::InvalidArrangement("the Jacobian ideal has no syzygies".into())
    })
}
