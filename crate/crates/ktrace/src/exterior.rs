//! Operators induced on the k-th exterior power Λ^k(C^n): multiplicative
//! compounds, additive compounds, and the symmetrized mixed operator that
//! interpolates between them.
//!
//! The basis of Λ^k(C^n) is the lexicographically ordered family of wedges
//! e_I = e_{i_1} ∧ … ∧ e_{i_k} over strictly increasing index tuples I.
//! In that basis the k-th compound of A has entries det A[I, J]; the additive
//! compound is the derivative of t ↦ compound(I + tA) at t = 0.

use crate::comb::{binomial_capped, factorial, rank_subset, sort_sign, unrank_subset};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par;
use num_complex::Complex64;

/// Hard cap on dim Λ^k = C(n, k) for assembled operators.
pub const COMPOUND_DIM_CAP: u64 = 10_000;

/// Largest k for which the mixed exterior operator will enumerate S_k.
pub const MIXED_OPERATOR_MAX_K: usize = 6;

/// The lexicographically ordered k-subset basis of Λ^k(C^n).
#[derive(Clone, Debug)]
pub struct KSubsetBasis {
    n: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
}

impl KSubsetBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!(
                "wedge degree k = {k} outside 1..={n}"
            )));
        }
        let dim = binomial_capped(n, k, COMPOUND_DIM_CAP).ok_or_else(|| {
            Error::ResourceCap(format!(
                "dim Λ^{k}(C^{n}) = C({n}, {k}) exceeds the cap of {COMPOUND_DIM_CAP}"
            ))
        })?;
        let mut subsets = Vec::with_capacity(dim as usize);
        let mut scratch = Vec::with_capacity(k);
        for rank in 0..dim {
            unrank_subset(n, k, rank, &mut scratch);
            subsets.push(scratch.clone());
        }
        Ok(KSubsetBasis { n, k, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    /// The (sorted, strictly increasing) index tuple of basis element `i`.
    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    /// Position of a sorted index tuple in the basis.
    pub fn index_of(&self, subset: &[usize]) -> usize {
        rank_subset(self.n, subset) as usize
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }
}

/// An operator on Λ^k(C^n) together with the wedge basis it is written in.
#[derive(Clone, Debug)]
pub struct CompoundOperator {
    basis: KSubsetBasis,
    matrix: Matrix,
}

impl CompoundOperator {
    pub fn basis(&self) -> &KSubsetBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }
}

/// k-th multiplicative compound: entries det A[I, J] over wedge basis pairs.
/// Functorial — compound(AB) = compound(A)·compound(B) — and its trace is
/// trace_k.
pub fn compound(a: &Matrix, k: usize) -> Result<CompoundOperator> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "compound needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let basis = KSubsetBasis::new(a.n(), k)?;
    let dim = basis.dim();
    let rows = par::map_indexed(dim, |i| {
        let row_set = basis.subset(i);
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            row.push(a.submatrix(row_set, basis.subset(j)).determinant());
        }
        row
    });
    let mut data = Vec::with_capacity(dim * dim);
    for row in rows {
        data.extend(row);
    }
    let matrix = Matrix::new(dim, dim, data)?;
    Ok(CompoundOperator { basis, matrix })
}

/// k-th additive compound, assembled entrywise on wedges: the matrix of
/// Σ_j I ∧ … ∧ A_(slot j) ∧ … ∧ I. Its spectrum is the set of k-sums of the
/// spectrum of A, and compound(exp A) = exp(additive_compound(A)).
pub fn additive_compound(a: &Matrix, k: usize) -> Result<CompoundOperator> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "additive compound needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let basis = KSubsetBasis::new(a.n(), k)?;
    let dim = basis.dim();
    let n = a.n();
    let columns = par::map_indexed(dim, |col_idx| {
        // Build column `col_idx`: apply the operator to e_J and expand.
        let j_set = basis.subset(col_idx);
        let mut column = vec![Complex64::new(0.0, 0.0); dim];
        for slot in 0..k {
            // Replace e_{j_slot} by A e_{j_slot} = Σ_r a[r, j_slot] e_r.
            for r in 0..n {
                let coeff = a[(r, j_set[slot])];
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut tuple: Vec<usize> = j_set.to_vec();
                tuple[slot] = r;
                // Wedge with a repeated index vanishes.
                if tuple.iter().enumerate().any(|(p, &v)| p != slot && v == r) {
                    continue;
                }
                let sign = sort_sign(&mut tuple);
                let row_idx = basis.index_of(&tuple);
                column[row_idx] += coeff * sign;
            }
        }
        column
    });
    let mut matrix = Matrix::zeros(dim, dim);
    for (j, column) in columns.iter().enumerate() {
        for (i, &v) in column.iter().enumerate() {
            matrix[(i, j)] = v;
        }
    }
    Ok(CompoundOperator { basis, matrix })
}

/// Symmetrized mixed exterior operator M^{(k)}(A_1, …, A_k) on Λ^k:
/// the sum over assignments of the k matrices to the k wedge slots,
/// Σ_{σ ∈ S_k} A_{σ(1)} ∧ … ∧ A_{σ(k)}.
///
/// Entrywise over wedge pairs (I, J) this is a permanent-like sum of products
/// Π_s (A_{σ(s)})[i_{π(s)}, j_s] with the parity of π. Specializations:
/// all slots equal to A gives k!·compound(A); one slot A and the rest the
/// identity gives (k−1)!·additive_compound(A).
pub fn mixed_exterior(matrices: &[&Matrix]) -> Result<CompoundOperator> {
    let k = matrices.len();
    if k == 0 {
        return Err(Error::InvalidArgument(
            "mixed exterior operator needs at least one matrix".into(),
        ));
    }
    if k > MIXED_OPERATOR_MAX_K {
        return Err(Error::ResourceCap(format!(
            "mixed exterior operator enumerates S_k: k = {k} exceeds {MIXED_OPERATOR_MAX_K}"
        )));
    }
    let n = matrices[0].n();
    for m in matrices {
        if !m.is_square() || m.n() != n {
            return Err(Error::Dimension(
                "mixed exterior operator needs equal square matrices".into(),
            ));
        }
    }
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "wedge degree k = {k} outside 1..={n}"
        )));
    }
    let basis = KSubsetBasis::new(n, k)?;
    let dim = basis.dim();
    let n_perm = factorial(k);

    let rows = par::map_indexed(dim, |i| {
        let i_set = basis.subset(i);
        let mut row = vec![Complex64::new(0.0, 0.0); dim];
        let mut perm = Vec::with_capacity(k);
        for (j, slot_j) in basis.subsets().iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for sigma_rank in 0..n_perm {
                crate::comb::unrank_permutation(k, sigma_rank, &mut perm);
                // With slot s holding matrix A_{perm[s]}, expand the wedge:
                // coefficient of e_I is det of the k×k matrix
                // B[s, t] = (A_{perm[t]})[i_s, j_t].
                let mut small = Matrix::zeros(k, k);
                for s in 0..k {
                    for t in 0..k {
                        small[(s, t)] = matrices[perm[t]][(i_set[s], slot_j[t])];
                    }
                }
                acc += small.determinant();
            }
            row[j] = acc;
        }
        row
    });
    let mut data = Vec::with_capacity(dim * dim);
    for row in rows {
        data.extend(row);
    }
    let matrix = Matrix::new(dim, dim, data)?;
    Ok(CompoundOperator { basis, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix_exp;
    use crate::linalg::HermitianMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
            }
        }
        worst
    }

    #[test]
    fn basis_is_lexicographic_and_invertible() {
        let basis = KSubsetBasis::new(5, 3).unwrap();
        assert_eq!(basis.dim(), 10);
        assert_eq!(basis.subset(0), &[0, 1, 2]);
        assert_eq!(basis.subset(9), &[2, 3, 4]);
        for i in 0..basis.dim() {
            assert_eq!(basis.index_of(basis.subset(i)), i);
        }
    }

    #[test]
    fn compound_of_diagonal_is_products() {
        let a = Matrix::from_real_diag(&[2.0, 3.0, 5.0]);
        let c2 = compound(&a, 2).unwrap();
        // Basis order {0,1}, {0,2}, {1,2} → products 6, 10, 15.
        let m = c2.matrix();
        assert!((m[(0, 0)].re - 6.0).abs() < 1e-14);
        assert!((m[(1, 1)].re - 10.0).abs() < 1e-14);
        assert!((m[(2, 2)].re - 15.0).abs() < 1e-14);
        assert_eq!(m[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn compound_is_functorial() {
        let a = Matrix::new(
            3,
            3,
            vec![
                c(1.0, 0.2),
                c(0.0, -1.0),
                c(2.0, 0.0),
                c(0.5, 0.0),
                c(1.0, 1.0),
                c(0.0, 0.0),
                c(-1.0, 0.3),
                c(0.7, 0.0),
                c(0.4, -0.6),
            ],
        )
        .unwrap();
        let b = Matrix::new(
            3,
            3,
            vec![
                c(0.3, 0.0),
                c(1.0, -0.5),
                c(0.0, 0.8),
                c(-0.2, 0.1),
                c(0.6, 0.0),
                c(1.5, 0.0),
                c(0.9, 0.0),
                c(0.0, -0.4),
                c(-1.1, 0.2),
            ],
        )
        .unwrap();
        let lhs = compound(&a.mul(&b), 2).unwrap();
        let rhs = compound(&a, 2).unwrap().matrix().mul(compound(&b, 2).unwrap().matrix());
        assert!(max_abs_diff(lhs.matrix(), &rhs) < 1e-12);
    }

    #[test]
    fn additive_compound_of_diag_123_is_pair_sums() {
        let a = Matrix::from_real_diag(&[1.0, 2.0, 3.0]);
        let ac = additive_compound(&a, 2).unwrap();
        let m = ac.matrix();
        // Pairs {0,1}, {0,2}, {1,2} → sums 3, 4, 5.
        assert!((m[(0, 0)].re - 3.0).abs() < 1e-14);
        assert!((m[(1, 1)].re - 4.0).abs() < 1e-14);
        assert!((m[(2, 2)].re - 5.0).abs() < 1e-14);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(m[(i, j)], c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn additive_compound_matches_derivative_of_compound() {
        // additive(A) = d/dt compound(I + tA) at 0: central difference check.
        let a = Matrix::new(
            3,
            3,
            vec![
                c(0.4, 0.0),
                c(1.0, -0.3),
                c(0.0, 0.7),
                c(-0.5, 0.2),
                c(0.1, 0.0),
                c(0.9, 0.0),
                c(0.3, 0.0),
                c(0.0, -1.1),
                c(-0.6, 0.0),
            ],
        )
        .unwrap();
        let h = 1e-5;
        let id = Matrix::identity(3);
        let plus = compound(&id.add(&a.scale_re(h)), 2).unwrap();
        let minus = compound(&id.add(&a.scale_re(-h)), 2).unwrap();
        let diff = plus
            .matrix()
            .sub(minus.matrix())
            .scale_re(1.0 / (2.0 * h));
        let exact = additive_compound(&a, 2).unwrap();
        assert!(max_abs_diff(&diff, exact.matrix()) < 1e-9);
    }

    #[test]
    fn exp_of_additive_is_compound_of_exp() {
        let a = HermitianMatrix::new(
            &Matrix::new(
                3,
                3,
                vec![
                    c(0.2, 0.0),
                    c(0.4, -0.1),
                    c(0.0, 0.3),
                    c(0.4, 0.1),
                    c(-0.5, 0.0),
                    c(0.2, 0.0),
                    c(0.0, -0.3),
                    c(0.2, 0.0),
                    c(0.1, 0.0),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let lhs = compound(matrix_exp(&a).unwrap().as_matrix(), 2).unwrap();
        // exp of the additive compound, computed on the wedge space.
        let add = additive_compound(a.as_matrix(), 2).unwrap();
        let add_h = HermitianMatrix::new(add.matrix()).unwrap();
        let rhs = matrix_exp(&add_h).unwrap();
        assert!(max_abs_diff(lhs.matrix(), rhs.as_matrix()) < 1e-11);
    }

    #[test]
    fn mixed_exterior_specializations() {
        let a = Matrix::new(
            3,
            3,
            vec![
                c(1.0, 0.0),
                c(0.3, -0.2),
                c(0.0, 0.5),
                c(0.3, 0.2),
                c(-0.4, 0.0),
                c(0.8, 0.0),
                c(0.0, -0.5),
                c(0.8, 0.0),
                c(0.6, 0.0),
            ],
        )
        .unwrap();
        let k = 2;
        // All slots A: k!·compound.
        let all_a = mixed_exterior(&[&a, &a]).unwrap();
        let comp = compound(&a, k).unwrap();
        let scaled = comp.matrix().scale_re(factorial(k) as f64);
        assert!(max_abs_diff(all_a.matrix(), &scaled) < 1e-12);
        // One slot A, rest identity: (k−1)!·additive.
        let id = Matrix::identity(3);
        let one_a = mixed_exterior(&[&a, &id]).unwrap();
        let add = additive_compound(&a, k).unwrap();
        let scaled_add = add.matrix().scale_re(factorial(k - 1) as f64);
        assert!(max_abs_diff(one_a.matrix(), &scaled_add) < 1e-12);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let a = Matrix::identity(40);
        assert!(matches!(compound(&a, 20), Err(Error::ResourceCap(_))));
    }
}
