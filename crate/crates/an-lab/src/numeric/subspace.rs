//! Orthonormal subspace bases and norms of restricted operators.
//!
//! A closed subspace M enters the numeric layer as an orthonormal basis
//! matrix V; the restriction of T to M has the same norm as the composite
//! T V, so the restricted norm is a plain top singular value.

use super::eigen::sym_eigen;
use super::matrix::DenseMatrix;
use super::{NumericError, DEPENDENT_PIVOT_TOLERANCE, ORTHONORMALITY_TOLERANCE};
use num_complex::Complex64;

/// An m x k matrix whose columns are orthonormal within the stored
/// tolerance.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    matrix: DenseMatrix,
    orthonormality_tolerance: f64,
}

impl SubspaceBasis {
    /// Validates `max|V*V - I| <= tolerance` with the default tolerance.
    pub fn new(matrix: DenseMatrix) -> Result<Self, NumericError> {
        Self::with_tolerance(matrix, ORTHONORMALITY_TOLERANCE)
    }

    pub fn with_tolerance(matrix: DenseMatrix, tolerance: f64) -> Result<Self, NumericError> {
        let gram = matrix.adjoint().mul(&matrix).expect("shapes agree");
        let deviation = gram
            .sub(&DenseMatrix::identity(matrix.cols()))
            .expect("square gram")
            .max_abs();
        if deviation > tolerance {
            return Err(NumericError::NotOrthonormal {
                deviation,
                tolerance,
            });
        }
        Ok(SubspaceBasis {
            matrix,
            orthonormality_tolerance: tolerance,
        })
    }

    pub fn identity(n: usize) -> Self {
        SubspaceBasis {
            matrix: DenseMatrix::identity(n),
            orthonormality_tolerance: ORTHONORMALITY_TOLERANCE,
        }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn ambient_dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn subspace_dimension(&self) -> usize {
        self.matrix.cols()
    }

    pub fn orthonormality_tolerance(&self) -> f64 {
        self.orthonormality_tolerance
    }
}

/// Modified Gram-Schmidt with a second reorthogonalization pass. Columns
/// whose residual after projection falls below
/// [`DEPENDENT_PIVOT_TOLERANCE`] of their original length are rejected.
pub fn gram_schmidt(vectors: &DenseMatrix) -> Result<SubspaceBasis, NumericError> {
    let m = vectors.rows();
    let k = vectors.cols();
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut v = vectors.column(j);
        let original: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if original == 0.0 {
            return Err(NumericError::DependentInput { column: j });
        }
        for _pass in 0..2 {
            for qi in &q {
                let dot: Complex64 = qi
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for (vi, ai) in v.iter_mut().zip(qi) {
                    *vi -= dot * ai;
                }
            }
        }
        let remaining: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if remaining <= DEPENDENT_PIVOT_TOLERANCE * original {
            return Err(NumericError::DependentInput { column: j });
        }
        for vi in &mut v {
            *vi /= remaining;
        }
        q.push(v);
    }
    let mut out = DenseMatrix::zeros(m, k);
    for (j, col) in q.iter().enumerate() {
        out.set_column(j, col);
    }
    SubspaceBasis::new(out)
}

/// Norm of `T` restricted to the span of `V`: the top singular value of
/// `T V`, along with a unit attaining vector in subspace coordinates
/// (coefficients with respect to the columns of `V`).
pub fn restricted_norm(
    t: &DenseMatrix,
    v: &SubspaceBasis,
) -> Result<(f64, Vec<Complex64>), NumericError> {
    if t.cols() != v.ambient_dimension() {
        return Err(NumericError::ShapeMismatch(format!(
            "operator acts on dimension {}, basis lives in dimension {}",
            t.cols(),
            v.ambient_dimension()
        )));
    }
    let tv = t.mul(v.matrix()).expect("shapes agree");
    let gram = tv.adjoint().mul(&tv).expect("shapes agree");
    let eig = sym_eigen(&gram)?;
    let k = gram.rows();
    let top = eig.values[k - 1].max(0.0);
    Ok((top.sqrt(), eig.vectors.column(k - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::eigen::operator_norm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            }
        }
        m
    }

    #[test]
    fn identity_input_is_already_orthonormal() {
        let basis = gram_schmidt(&DenseMatrix::identity(4)).unwrap();
        assert!(basis
            .matrix()
            .sub(&DenseMatrix::identity(4))
            .unwrap()
            .max_abs()
            < 1e-15);
    }

    #[test]
    fn random_tall_input_orthonormalizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(&mut rng, 6, 3);
        let basis = gram_schmidt(&m).unwrap();
        let gram = basis.matrix().adjoint().mul(basis.matrix()).unwrap();
        assert!(gram.sub(&DenseMatrix::identity(3)).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn duplicated_column_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut m = random_matrix(&mut rng, 5, 3);
        let col = m.column(0);
        m.set_column(2, &col);
        assert!(matches!(
            gram_schmidt(&m),
            Err(NumericError::DependentInput { column: 2 })
        ));
    }

    #[test]
    fn non_orthonormal_basis_is_rejected() {
        let mut m = DenseMatrix::identity(3);
        m[(0, 1)] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            SubspaceBasis::new(m),
            Err(NumericError::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn full_basis_recovers_operator_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = random_matrix(&mut rng, 4, 4);
        let (norm, vector) = restricted_norm(&t, &SubspaceBasis::identity(4)).unwrap();
        assert!((norm - operator_norm(&t).unwrap()).abs() < 1e-10);
        let len: f64 = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((len - 1.0).abs() < 1e-10);
        // The attaining vector actually attains the norm.
        let y = t.mul_vec(&vector).unwrap();
        let achieved: f64 = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((achieved - norm).abs() < 1e-10);
    }

    #[test]
    fn coordinate_plane_restriction_of_a_diagonal() {
        // diag(1, 1, 1, 1/2) restricted to span(e2, e3) has norm 1,
        // attained inside the subspace.
        let t = DenseMatrix::diagonal(&[1.0, 1.0, 1.0, 0.5]);
        let mut v = DenseMatrix::zeros(4, 2);
        v[(1, 0)] = Complex64::new(1.0, 0.0);
        v[(2, 1)] = Complex64::new(1.0, 0.0);
        let basis = SubspaceBasis::new(v).unwrap();
        let (norm, vector) = restricted_norm(&t, &basis).unwrap();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(vector.len(), 2);
    }

    #[test]
    fn isometry_restricted_to_any_subspace_has_norm_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        // A diagonal unitary is an isometry.
        let phases: Vec<Complex64> = (0..6)
            .map(|_| {
                let p: f64 = rng.gen_range(-3.14..=3.14);
                Complex64::new(p.cos(), p.sin())
            })
            .collect();
        let w = DenseMatrix::diagonal_complex(&phases);
        for k in [1usize, 2, 4] {
            let raw = random_matrix(&mut rng, 6, k);
            let basis = gram_schmidt(&raw).unwrap();
            let (norm, _) = restricted_norm(&w, &basis).unwrap();
            assert!((norm - 1.0).abs() < 1e-10);
        }
    }
}
