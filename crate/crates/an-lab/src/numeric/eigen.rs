//! Hermitian eigendecomposition by cyclic Jacobi rotations, and the derived
//! quantities: operator norm, modulus `|T|`, and the polar factorization.

use super::matrix::DenseMatrix;
use super::{
    NumericError, CONVERGENCE_RELATIVE_TOLERANCE, EIGEN_RESIDUAL_RELATIVE_TOLERANCE,
    HERMITIAN_TOLERANCE, MAX_SWEEPS, RANK_CUTOFF_RELATIVE,
};
use num_complex::Complex64;

/// Eigendecomposition `A = V diag(values) V*` with `values` ascending and
/// the columns of `vectors` orthonormal.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

fn off_diagonal_mass(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[(r, c)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Applies the rotation on columns (p, q): `M <- M R` where R is the
/// identity except `R[p][p]=c, R[p][q]=s, R[q][p]=-s*conj(u), R[q][q]=c*conj(u)`.
fn rotate_columns(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64, u: Complex64) {
    let ubar = u.conj();
    for i in 0..m.rows() {
        let mp = m[(i, p)];
        let mq = m[(i, q)];
        m[(i, p)] = c * mp - s * (ubar * mq);
        m[(i, q)] = s * mp + c * (ubar * mq);
    }
}

/// Applies the conjugate rotation on rows (p, q): `M <- R* M`.
fn rotate_rows(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64, u: Complex64) {
    for j in 0..m.cols() {
        let mp = m[(p, j)];
        let mq = m[(q, j)];
        m[(p, j)] = c * mp - s * (u * mq);
        m[(q, j)] = s * mp + c * (u * mq);
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// The pivot `(p, q)` is eliminated by a unitary plane rotation built from
/// the phase of `a_pq` and the real tangent solving `t^2 + 2*tau*t - 1 = 0`
/// with `tau = (a_qq - a_pp) / (2 |a_pq|)`; the smaller root keeps the
/// rotation angle below 45 degrees, which makes the sweep contraction
/// standard. Convergence is declared when the off-diagonal Frobenius mass
/// falls to [`CONVERGENCE_RELATIVE_TOLERANCE`] times the input's Frobenius
/// norm.
pub fn sym_eigen(a: &DenseMatrix) -> Result<Eigen, NumericError> {
    if !a.is_square() {
        return Err(NumericError::ShapeMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let deviation = a.hermitian_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(NumericError::NotHermitian {
            deviation,
            tolerance: HERMITIAN_TOLERANCE,
        });
    }

    let n = a.rows();
    // Symmetrize exactly so rounding in the input cannot accumulate.
    let mut w = a.clone();
    for r in 0..n {
        for c in 0..r {
            let avg = 0.5 * (w[(r, c)] + w[(c, r)].conj());
            w[(r, c)] = avg;
            w[(c, r)] = avg.conj();
        }
        let d = w[(r, r)].re;
        w[(r, r)] = Complex64::new(d, 0.0);
    }

    let threshold = CONVERGENCE_RELATIVE_TOLERANCE * w.frobenius_norm();
    let mut v = DenseMatrix::identity(n);
    let mut sweeps = 0usize;
    let mut off = off_diagonal_mass(&w);
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(NumericError::NoConvergence {
                off,
                threshold,
                sweeps,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let u = apq / r;
                let tau = (w[(q, q)].re - w[(p, p)].re) / (2.0 * r);
                let t = if tau.abs() > 1e150 {
                    // Asymptotic root; avoids overflow in tau * tau.
                    0.5 / tau
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate_columns(&mut w, p, q, c, s, u);
                rotate_rows(&mut w, p, q, c, s, u);
                rotate_columns(&mut v, p, q, c, s, u);
                // The pivot is eliminated exactly up to rounding.
                w[(p, q)] = Complex64::new(0.0, 0.0);
                w[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
        sweeps += 1;
        off = off_diagonal_mass(&w);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }

    // Reconstruction check: AV = V diag within the contracted residual.
    let av = a.mul(&vectors).expect("shapes agree");
    let mut vl = vectors.clone();
    for c in 0..n {
        for r in 0..n {
            vl[(r, c)] *= values[c];
        }
    }
    let residual = av.sub(&vl).expect("shapes agree").max_abs();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if residual > EIGEN_RESIDUAL_RELATIVE_TOLERANCE * scale.max(1e-300) && residual > 1e-300 {
        return Err(NumericError::NoConvergence {
            off: residual,
            threshold: EIGEN_RESIDUAL_RELATIVE_TOLERANCE * scale,
            sweeps,
        });
    }

    Ok(Eigen { values, vectors })
}

/// The largest singular value: `sqrt(max eig(T*T))`. Works for rectangular
/// input.
pub fn operator_norm(t: &DenseMatrix) -> Result<f64, NumericError> {
    let gram = t.adjoint().mul(t).expect("shapes agree");
    let eig = sym_eigen(&gram)?;
    let top = eig.values.last().copied().unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

/// The modulus `|T| = (T*T)^(1/2)`, a positive square matrix of side
/// `T.cols()`.
pub fn absolute_value(t: &DenseMatrix) -> Result<DenseMatrix, NumericError> {
    let gram = t.adjoint().mul(t).expect("shapes agree");
    let eig = sym_eigen(&gram)?;
    let n = gram.rows();
    // V sqrt(L) V*
    let mut scaled = eig.vectors.clone();
    for c in 0..n {
        let s = eig.values[c].max(0.0).sqrt();
        for r in 0..n {
            scaled[(r, c)] *= s;
        }
    }
    Ok(scaled.mul(&eig.vectors.adjoint()).expect("shapes agree"))
}

/// Polar factorization `T = U |T|` with `U` a partial isometry on the range
/// of `|T|`: singular directions below [`RANK_CUTOFF_RELATIVE`] of the top
/// singular value are dropped from `U`.
pub fn polar(t: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix), NumericError> {
    let gram = t.adjoint().mul(t).expect("shapes agree");
    let eig = sym_eigen(&gram)?;
    let n = gram.rows();
    let singular: Vec<f64> = eig.values.iter().map(|l| l.max(0.0).sqrt()).collect();
    let sigma_max = singular.last().copied().unwrap_or(0.0);

    // |T| = V sqrt(L) V*
    let mut scaled = eig.vectors.clone();
    for c in 0..n {
        for r in 0..n {
            scaled[(r, c)] *= singular[c];
        }
    }
    let abs_t = scaled.mul(&eig.vectors.adjoint()).expect("shapes agree");

    // U = sum over retained j of (T v_j / sigma_j) v_j*
    let mut u = DenseMatrix::zeros(t.rows(), n);
    let cutoff = RANK_CUTOFF_RELATIVE * sigma_max;
    for j in 0..n {
        if singular[j] <= cutoff || singular[j] == 0.0 {
            continue;
        }
        let vj = eig.vectors.column(j);
        let tvj = t.mul_vec(&vj).expect("shapes agree");
        for r in 0..t.rows() {
            let left = tvj[r] / singular[j];
            for c in 0..n {
                u[(r, c)] += left * vj[c].conj();
            }
        }
    }
    Ok((u, abs_t))
}
