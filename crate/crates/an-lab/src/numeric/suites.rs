//! Seeded randomized verification suites over the dense numeric kernel.
//!
//! Each suite draws reproducible random matrices from a [`ChaCha8Rng`],
//! measures a claimed identity, and reports the worst deviation across all
//! trials next to its tolerance. The same checks back both the CLI's
//! `matrix-check --suite` runner and the randomized acceptance coverage.

use super::eigen::{absolute_value, operator_norm, polar, sym_eigen};
use super::matrix::{fmt_e, DenseMatrix};
use super::{
    NumericError, NEGATIVE_THRESHOLD, POLAR_RESIDUAL_RELATIVE_TOLERANCE, PSD_TOLERANCE,
    REPORT_TOLERANCE_DEFAULT,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default seed for randomized suites ("AN0P" in ASCII).
pub const DEFAULT_SEED: u64 = 0x414E_3050;

/// Deterministic RNG used by every randomized suite.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense matrix with independent real and imaginary parts uniform in
/// `[-1, 1]`.
pub fn random_complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        }
    }
    m
}

/// Random unit vector in `C^n`.
pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    loop {
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        let norm = vec_norm(&x);
        if norm > 1e-3 {
            return x.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random Hermitian matrix `(B + B*) / 2`.
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> DenseMatrix {
    let b = random_complex_matrix(rng, n, n);
    b.adjoint().add(&b).expect("shapes agree").scaled(0.5)
}

/// Random positive semidefinite matrix `G G*` with `G` of shape
/// `n x rank`; its rank is at most `rank`.
pub fn random_psd(rng: &mut impl Rng, n: usize, rank: usize) -> DenseMatrix {
    if rank == 0 {
        return DenseMatrix::zeros(n, n);
    }
    let g = random_complex_matrix(rng, n, rank);
    g.mul(&g.adjoint()).expect("shapes agree")
}

/// Random Hermitian matrix of rank at most `signs.len()`, built as the
/// signed sum `sum_j signs[j] * g_j g_j*`. Each sign must be `+1.0` or
/// `-1.0`; the negative terms give the matrix genuinely negative
/// directions.
pub fn random_signed_finite_rank(rng: &mut impl Rng, n: usize, signs: &[f64]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    for &sign in signs {
        assert!(sign == 1.0 || sign == -1.0, "signs must be +1 or -1");
        let g = random_complex_matrix(rng, n, 1);
        let term = g.mul(&g.adjoint()).expect("shapes agree");
        m = m.add(&term.scaled(sign)).expect("shapes agree");
    }
    m
}

fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Counted negative spectrum of a compact-plus-finite-rank truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegativeCount {
    /// Eigenvalues of `K + F` below the negativity threshold.
    pub count: usize,
    /// Eigenvalues of `F` below the threshold — an upper bound for `count`
    /// whenever `K` is positive semidefinite.
    pub bound: usize,
}

/// Counts the negative eigenvalues of `K + F` and of `F` alone, verifying
/// first that `K` is positive semidefinite (within [`PSD_TOLERANCE`]) and
/// both inputs are Hermitian. A positive `K` can only push eigenvalues
/// upward, so `count <= bound` always holds; the pair makes that bound
/// checkable.
pub fn negative_eigenvalue_count(
    k: &DenseMatrix,
    f: &DenseMatrix,
) -> Result<NegativeCount, NumericError> {
    if k.rows() != f.rows() || k.cols() != f.cols() {
        return Err(NumericError::ShapeMismatch(format!(
            "operands are {}x{} and {}x{}",
            k.rows(),
            k.cols(),
            f.rows(),
            f.cols()
        )));
    }
    let k_eig = sym_eigen(k)?;
    if let Some(&min) = k_eig.values.first() {
        if min < -PSD_TOLERANCE {
            return Err(NumericError::NotPsd {
                eigenvalue: min,
                tolerance: PSD_TOLERANCE,
            });
        }
    }
    let f_eig = sym_eigen(f)?;
    let sum = k.add(f).expect("shapes agree");
    let sum_eig = sym_eigen(&sum)?;
    let below = |vals: &[f64]| vals.iter().filter(|&&l| l < -NEGATIVE_THRESHOLD).count();
    Ok(NegativeCount {
        count: below(&sum_eig.values),
        bound: below(&f_eig.values),
    })
}

/// Worst measured deviation of one check against its tolerance.
#[derive(Debug, Clone, Copy)]
pub struct CheckOutcome {
    pub worst: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.worst <= self.tolerance
    }

    fn fold(&mut self, other: CheckOutcome) {
        self.worst = self.worst.max(other.worst);
        self.tolerance = other.tolerance;
    }
}

/// Relative reconstruction error of the polar factorization:
/// `max|U |T| - T| / max(norm, tiny)` against
/// [`POLAR_RESIDUAL_RELATIVE_TOLERANCE`].
pub fn check_polar_roundtrip(t: &DenseMatrix) -> Result<CheckOutcome, NumericError> {
    let (u, modulus) = polar(t)?;
    let residual = u.mul(&modulus).expect("shapes agree").sub(t).expect("shapes agree");
    let norm = operator_norm(t)?;
    let scale = norm.max(1e-300);
    Ok(CheckOutcome {
        worst: residual.max_abs() / scale,
        tolerance: POLAR_RESIDUAL_RELATIVE_TOLERANCE,
    })
}

/// The modulus moves vectors without changing their length:
/// `| ||T x|| - || |T| x || |` over random unit vectors, against
/// [`REPORT_TOLERANCE_DEFAULT`].
pub fn check_modulus_preserves_norms(
    t: &DenseMatrix,
    rng: &mut impl Rng,
    vectors: usize,
) -> Result<CheckOutcome, NumericError> {
    let modulus = absolute_value(t)?;
    let mut worst = 0.0f64;
    for _ in 0..vectors {
        let x = random_unit_vector(rng, t.cols());
        let tx = vec_norm(&t.mul_vec(&x).expect("shapes agree"));
        let mx = vec_norm(&modulus.mul_vec(&x).expect("shapes agree"));
        worst = worst.max((tx - mx).abs());
    }
    Ok(CheckOutcome {
        worst,
        tolerance: REPORT_TOLERANCE_DEFAULT,
    })
}

/// The operator norm appears in the point spectrum of both moduli: distance
/// from `||T||` to the nearest eigenvalue of `|T|` and of `|T*|`, against
/// `1e-9`.
pub fn check_norm_is_modulus_eigenvalue(t: &DenseMatrix) -> Result<CheckOutcome, NumericError> {
    let norm = operator_norm(t)?;
    let mut worst = 0.0f64;
    for side in [t.clone(), t.adjoint()] {
        let modulus = absolute_value(&side)?;
        let eig = sym_eigen(&modulus)?;
        let dist = eig
            .values
            .iter()
            .map(|l| (l - norm).abs())
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(dist);
    }
    Ok(CheckOutcome {
        worst,
        tolerance: 1e-9,
    })
}

/// The negative-eigenvalue bound: excess of `count` over `bound` (zero when
/// the bound holds), against a zero tolerance.
pub fn check_negative_count_bound(
    k: &DenseMatrix,
    f: &DenseMatrix,
) -> Result<CheckOutcome, NumericError> {
    let nc = negative_eigenvalue_count(k, f)?;
    let excess = nc.count.saturating_sub(nc.bound);
    Ok(CheckOutcome {
        worst: excess as f64,
        tolerance: 0.0,
    })
}

/// Aggregated result of one randomized suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub seed: u64,
    pub dim: usize,
    pub trials: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub failures: usize,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    /// Deterministic plain-text rendering, one `key: value` line each.
    pub fn to_text(&self) -> String {
        format!(
            "suite: {}\nseed: {}\ndim: {}\ntrials: {}\nworst deviation: {}\ntolerance: {}\nresult: {}\n",
            self.name,
            self.seed,
            self.dim,
            self.trials,
            fmt_e(self.worst),
            fmt_e(self.tolerance),
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }
}

fn run_matrix_suite(
    name: &'static str,
    seed: u64,
    dim: usize,
    trials: usize,
    mut check: impl FnMut(&DenseMatrix, &mut ChaCha8Rng) -> Result<CheckOutcome, NumericError>,
) -> Result<SuiteReport, NumericError> {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = seeded_rng(seed);
    let mut outcome = CheckOutcome {
        worst: 0.0,
        tolerance: 0.0,
    };
    let mut failures = 0;
    for _ in 0..trials {
        let rows = rng.gen_range(1..=dim);
        let cols = rng.gen_range(1..=dim);
        let t = random_complex_matrix(&mut rng, rows, cols);
        let one = check(&t, &mut rng)?;
        if !one.pass() {
            failures += 1;
        }
        outcome.fold(one);
    }
    Ok(SuiteReport {
        name,
        seed,
        dim,
        trials,
        worst: outcome.worst,
        tolerance: outcome.tolerance,
        failures,
    })
}

/// Polar reconstruction over random rectangular matrices.
pub fn run_polar_suite(seed: u64, dim: usize, trials: usize) -> Result<SuiteReport, NumericError> {
    run_matrix_suite("polar", seed, dim, trials, |t, _| check_polar_roundtrip(t))
}

/// Length preservation by the modulus over random matrices, 100 random
/// vectors each.
pub fn run_absval_suite(seed: u64, dim: usize, trials: usize) -> Result<SuiteReport, NumericError> {
    run_matrix_suite("absval", seed, dim, trials, |t, rng| {
        check_modulus_preserves_norms(t, rng, 100)
    })
}

/// The operator norm against the spectra of both moduli.
pub fn run_norming_suite(
    seed: u64,
    dim: usize,
    trials: usize,
) -> Result<SuiteReport, NumericError> {
    run_matrix_suite("norming", seed, dim, trials, |t, _| {
        check_norm_is_modulus_eigenvalue(t)
    })
}

/// The negative-eigenvalue bound over random positive `K` and random signed
/// finite-rank `F` (rank at most 3, mixed signs).
pub fn run_negcount_suite(
    seed: u64,
    dim: usize,
    trials: usize,
) -> Result<SuiteReport, NumericError> {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = seeded_rng(seed);
    let mut outcome = CheckOutcome {
        worst: 0.0,
        tolerance: 0.0,
    };
    let mut failures = 0;
    for _ in 0..trials {
        let n = rng.gen_range(1..=dim);
        let k_rank = rng.gen_range(0..=n);
        let k = random_psd(&mut rng, n, k_rank);
        let f_rank = rng.gen_range(0..=3usize.min(n));
        let signs: Vec<f64> = (0..f_rank)
            .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
            .collect();
        let f = random_signed_finite_rank(&mut rng, n, &signs);
        let one = check_negative_count_bound(&k, &f)?;
        if !one.pass() {
            failures += 1;
        }
        outcome.fold(one);
    }
    Ok(SuiteReport {
        name: "negcount",
        seed,
        dim,
        trials,
        worst: outcome.worst,
        tolerance: outcome.tolerance,
        failures,
    })
}
