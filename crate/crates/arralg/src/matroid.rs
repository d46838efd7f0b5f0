//! The linear matroid on the columns of a scalar matrix: circuits with
//! their dependency coefficients, coloops, and connected components.

use crate::field::Scalar;
use crate::linalg::ScalarMatrix;

/// A minimal dependent set of columns together with the (essentially unique)
/// dependency among them: sum of coeffs[k] * column(cols[k]) = 0, normalized
/// so the first coefficient is 1. Minimality forces every coefficient to be
/// nonzero.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub cols: Vec<usize>,
    pub coeffs: Vec<Scalar>,
}

fn submatrix(m: &ScalarMatrix, cols: &[usize]) -> ScalarMatrix {
    let rows = (0..m.rows())
        .map(|i| cols.iter().map(|&j| m.at(i, j).clone()).collect())
        .collect();
    ScalarMatrix::from_rows(*m.field(), rows)
}

/// Rank of the named columns.
pub fn column_rank(m: &ScalarMatrix, cols: &[usize]) -> usize {
    submatrix(m, cols).rank()
}

fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            rec(i + 1, m, k, current, out);
            current.pop();
        }
    }
    rec(0, m, k, &mut current, &mut out);
    out
}

/// All circuits, by increasing size, lexicographic within a size. A subset
/// is a circuit when it is dependent and contains no smaller circuit, which
/// the size-ordered sweep checks directly.
pub fn circuits(m: &ScalarMatrix) -> Vec<Circuit> {
    let ncols = m.cols();
    let max_size = (m.rows() + 1).min(ncols);
    let mut found: Vec<Circuit> = Vec::new();
    for size in 1..=max_size {
        for cols in subsets_of_size(ncols, size) {
            if found.iter().any(|c| c.cols.iter().all(|i| cols.contains(i))) {
                continue;
            }
            if column_rank(m, &cols) == size {
                continue;
            }
            let kernel = submatrix(m, &cols).kernel_basis();
            assert_eq!(kernel.len(), 1, "a circuit has a one-dimensional dependency");
            let field = m.field();
            let v = &kernel[0];
            let first = v
                .iter()
                .find(|c| !c.is_zero())
                .expect("dependency is nonzero");
            let inv = field.inv(first).expect("nonzero scalar");
            let coeffs: Vec<Scalar> = v.iter().map(|c| field.mul(c, &inv)).collect();
            assert!(
                coeffs.iter().all(|c| !c.is_zero()),
                "minimal dependency uses every column"
            );
            found.push(Circuit { cols, coeffs });
        }
    }
    found
}

/// Columns whose removal drops the rank.
pub fn coloops(m: &ScalarMatrix) -> Vec<usize> {
    let all: Vec<usize> = (0..m.cols()).collect();
    let full = column_rank(m, &all);
    (0..m.cols())
        .filter(|&j| {
            let rest: Vec<usize> = (0..m.cols()).filter(|&i| i != j).collect();
            column_rank(m, &rest) < full
        })
        .collect()
}

/// Connected components of the matroid: the transitive closure of "appears
/// in a common circuit". Columns in no circuit (the coloops) are singletons.
pub fn components(m: &ScalarMatrix) -> Vec<Vec<usize>> {
    let ncols = m.cols();
    let mut parent: Vec<usize> = (0..ncols).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for c in circuits(m) {
        let head = c.cols[0];
        for &other in &c.cols[1..] {
            let (a, b) = (find(&mut parent, head), find(&mut parent, other));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..ncols {
        let root = find(&mut parent, i);
        blocks.entry(root).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
    out.sort_by_key(|b| b[0]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn matrix(cols: &[&[i64]]) -> ScalarMatrix {
        let f = FieldSpec::Rationals;
        let n = cols[0].len();
        let rows = (0..n)
            .map(|i| cols.iter().map(|c| f.from_i64(c[i])).collect())
            .collect();
        ScalarMatrix::from_rows(f, rows)
    }

    #[test]
    fn forced_dependency_of_three_coplanar_forms() {
        // Columns x, y, x+y in the plane.
        let m = matrix(&[&[1, 0], &[0, 1], &[1, 1]]);
        let cs = circuits(&m);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].cols, vec![0, 1, 2]);
        // Normalized dependency: x + y - (x+y) = 0.
        let f = FieldSpec::Rationals;
        assert_eq!(cs[0].coeffs, vec![f.from_i64(1), f.from_i64(1), f.from_i64(-1)]);
    }

    #[test]
    fn generic_columns_have_full_size_circuits() {
        let m = matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]]);
        let cs = circuits(&m);
        // Generic rank 3 with 5 columns: every 4-subset is a circuit.
        assert_eq!(cs.len(), 5);
        assert!(cs.iter().all(|c| c.cols.len() == 4));
        assert!(coloops(&m).is_empty());
        assert_eq!(components(&m).len(), 1);
    }

    #[test]
    fn coloop_detection_and_split() {
        // x, y, x+y, z: the z column is a coloop and its own component.
        let m = matrix(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(coloops(&m), vec![3]);
        assert_eq!(components(&m), vec![vec![0, 1, 2], vec![3]]);
        // Boole: every column is a coloop, all components singletons.
        let b = matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(coloops(&b), vec![0, 1, 2]);
        assert_eq!(components(&b).len(), 3);
        assert!(circuits(&b).is_empty());
    }

    #[test]
    fn rank_two_circuits_are_triples() {
        let m = matrix(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let cs = circuits(&m);
        assert_eq!(cs.len(), 4);
        assert!(cs.iter().all(|c| c.cols.len() == 3));
    }
}
