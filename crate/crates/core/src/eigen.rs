//! Dense Hermitian eigensolver over [`HermitianOperator`]s.
//!
//! The matrix is first split into the connected components of its coupling
//! graph; each block is diagonalised separately with nalgebra's Hermitian
//! solver. The oscillator Hamiltonians fall apart by n_z this way.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::operators::{hermiticity_defect, max_abs, HermitianOperator};

/// Eigenpairs in ascending order of eigenvalue. Eigenvalues are in units of
/// the operator; eigenvectors are the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> nalgebra::DVectorView<'_, Complex64> {
        self.vectors.column(k)
    }

    /// ⟨v_k| A |v_k⟩
    pub fn expectation(&self, k: usize, op: &HermitianOperator) -> f64 {
        let v = self.vectors.column(k);
        (v.adjoint() * op.matrix() * v)[(0, 0)].re
    }
}

fn blocks(m: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for j in 0..n {
        for i in 0..j {
            if m[(i, j)] != Complex64::from(0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

/// Eigenpair of one block, with the vector stored as (row, value) entries.
struct BlockPair {
    value: f64,
    dominant: usize,
    entries: Vec<(usize, Complex64)>,
}

/// Eigenpairs sorted by value, ties broken by the basis index of the
/// dominant component.
pub fn eigen_decomposition(op: &HermitianOperator) -> Result<EigenDecomposition> {
    let m = op.matrix();
    let defect = hermiticity_defect(m);
    if !(defect <= 1e-12 * max_abs(m)) {
        return invalid(format!("operator is not Hermitian (defect {defect:e})"));
    }
    let n = m.nrows();
    let mut pairs: Vec<BlockPair> = Vec::with_capacity(n);
    for block in blocks(m) {
        let k = block.len();
        let sub = DMatrix::from_fn(k, k, |i, j| m[(block[i], block[j])]);
        let eig = SymmetricEigen::new(sub);
        for c in 0..k {
            let col = eig.eigenvectors.column(c);
            let entries: Vec<(usize, Complex64)> = block.iter().zip(col.iter()).map(|(&r, &v)| (r, v)).collect();
            // secondary sort key: basis index of the dominant component
            let dominant = entries
                .iter()
                .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()).then(b.0.cmp(&a.0)))
                .map(|e| e.0)
                .unwrap_or(0);
            pairs.push(BlockPair {
                value: eig.eigenvalues[c],
                dominant,
                entries,
            });
        }
    }
    pairs.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.dominant.cmp(&b.dominant)));

    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (c, BlockPair { value, entries, .. }) in pairs.into_iter().enumerate() {
        if !value.is_finite() {
            return invalid("eigenvalue is not finite");
        }
        values.push(value);
        for (r, v) in entries {
            vectors[(r, c)] = v;
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Ascending eigenvalues, in units of the operator.
pub fn eigenvalues(op: &HermitianOperator) -> Result<Vec<f64>> {
    Ok(eigen_decomposition(op)?.values)
}

/// Dominant basis index of each eigenvector (same order as the values).
pub(crate) fn dominant_components(d: &EigenDecomposition) -> Vec<usize> {
    (0..d.values.len())
        .map(|k| {
            d.vectors
                .column(k)
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()).then(b.0.cmp(&a.0)))
                .map(|e| e.0)
                .unwrap_or(0)
        })
        .collect()
}
