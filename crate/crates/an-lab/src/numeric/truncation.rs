//! Finite truncations: materialize a spectrum or a witness plan at size N,
//! measure the restricted norm, and report the gap to the symbolic
//! supremum.
//!
//! The strict inequalities behind a witness subspace have finite shadows:
//! at truncation N the restricted norm equals `gamma_N`, strictly below the
//! supremum, and the gap shrinks like `const/N` for harmonic rules. These
//! reports make that decay observable.

use super::matrix::{fmt_e, DenseMatrix};
use super::subspace::{restricted_norm, SubspaceBasis};
use super::NumericError;
use crate::rational::rat_to_f64;
use crate::spectrum::SpectrumSpec;
use crate::witness::WitnessPlan;
use num_complex::Complex64;

/// One truncation measurement. `gap = sup_value - restricted_norm` must
/// stay above `-1e-10` and shrink as N grows.
#[derive(Debug, Clone)]
pub struct TruncationReport {
    pub n: usize,
    pub restricted_norm: f64,
    pub sup_value: f64,
    pub gap: f64,
    /// Unit attaining vector in subspace coordinates.
    pub attaining_vector: Vec<Complex64>,
}

fn check_sizes(n_list: &[usize]) -> Result<(), NumericError> {
    if n_list.is_empty() || n_list[0] == 0 {
        return Err(NumericError::InvalidTruncationList);
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NumericError::InvalidTruncationList);
    }
    Ok(())
}

/// Truncates a spectrum to its N largest enumerable values, materialized as
/// a diagonal matrix, and measures the norm on the full truncated space.
///
/// For spectra whose supremum is attained the gap is 0 at every N; the
/// interesting decay appears for witness plans, which enumerate a subspace
/// rather than the whole spectrum (see [`truncation_study_plan`]).
pub fn truncation_study_spec(
    spec: &SpectrumSpec,
    n_list: &[usize],
) -> Result<Vec<TruncationReport>, NumericError> {
    check_sizes(n_list)?;
    let sup_value = rat_to_f64(&spec.sup_norm().norm);
    let mut reports = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let values = spec.top_k_values(n);
        if values.is_empty() {
            return Err(NumericError::EmptyTruncation);
        }
        let diag: Vec<f64> = values.iter().map(|(v, _)| rat_to_f64(v)).collect();
        let t = DenseMatrix::diagonal(&diag);
        let basis = SubspaceBasis::identity(diag.len());
        let (norm, attaining_vector) = restricted_norm(&t, &basis)?;
        reports.push(TruncationReport {
            n,
            restricted_norm: norm,
            sup_value,
            gap: sup_value - norm,
            attaining_vector,
        });
    }
    Ok(reports)
}

/// Materializes the first N witness basis vectors of a plan inside the
/// smallest ambient truncation hosting them, and measures the norm of the
/// operator restricted to their span.
///
/// Each basis vector occupies its own one- or two-dimensional coordinate
/// block, so the Gram matrix of `T V` is exactly diagonal with entries
/// `gamma_n^2`; the restricted norm is `gamma_N` up to solver rounding.
pub fn truncation_study_plan(
    plan: &WitnessPlan,
    n_list: &[usize],
) -> Result<Vec<TruncationReport>, NumericError> {
    check_sizes(n_list)?;
    let sup_value = rat_to_f64(&plan.sup_value);
    let mut reports = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let (t, basis) = materialize_plan(plan, n as u64)?;
        let (norm, attaining_vector) = restricted_norm(&t, &basis)?;
        reports.push(TruncationReport {
            n,
            restricted_norm: norm,
            sup_value,
            gap: sup_value - norm,
            attaining_vector,
        });
    }
    Ok(reports)
}

/// The truncated operator (diagonal, holding both eigenvalue families) and
/// the orthonormal witness basis `V` whose n-th column is the coefficient
/// vector of `e_n`.
pub fn materialize_plan(
    plan: &WitnessPlan,
    n_max: u64,
) -> Result<(DenseMatrix, SubspaceBasis), NumericError> {
    assert!(n_max >= 1);
    let dim = plan.ambient_dimension(n_max);
    let n_cols = usize::try_from(n_max).expect("truncation size fits usize");
    let mut diag = vec![0.0f64; dim];
    let mut v = DenseMatrix::zeros(dim, n_cols);
    for n in 1..=n_max {
        let col = usize::try_from(n - 1).expect("column index fits usize");
        let c2 = rat_to_f64(&plan.c_squared(n));
        let c = c2.sqrt();
        let s = (1.0 - c2).max(0.0).sqrt();
        let a = rat_to_f64(&plan.a(n));
        let f_idx = plan.f_index(n);
        match plan.g_index(n) {
            None => {
                diag[f_idx] = a;
                v[(f_idx, col)] = Complex64::new(1.0, 0.0);
            }
            Some(g_idx) => {
                let b = rat_to_f64(&plan.b(n).expect("two-family plan"));
                // a is the c-weighted eigenvalue; f hosts the first family.
                let (f_val, g_val, f_coeff, g_coeff) = if plan.c_weight_on_g() {
                    (b, a, s, c)
                } else {
                    (a, b, c, s)
                };
                diag[f_idx] = f_val;
                diag[g_idx] = g_val;
                v[(f_idx, col)] = Complex64::new(f_coeff, 0.0);
                v[(g_idx, col)] = Complex64::new(g_coeff, 0.0);
            }
        }
    }
    let t = DenseMatrix::diagonal(&diag);
    let basis = SubspaceBasis::new(v)?;
    Ok((t, basis))
}

/// CSV with header `N,restricted_norm,sup_value,gap`, floats in fixed
/// scientific notation for byte-identical output.
pub fn write_truncation_csv(reports: &[TruncationReport]) -> String {
    let mut out = String::from("N,restricted_norm,sup_value,gap\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            fmt_e(r.restricted_norm),
            fmt_e(r.sup_value),
            fmt_e(r.gap)
        ));
    }
    out
}
