//! Factor a matrix as `T = W * P` with `P = |T|` positive semidefinite.
//!
//! A random complex rectangular matrix is factored through its modulus
//! `|T| = sqrt(T* T)`: `P` is Hermitian positive semidefinite, `W` is a
//! partial isometry on the range of `P`, and the product reassembles `T` to
//! working precision. The operator norm of `T` equals the largest eigenvalue
//! of `P`.
//!
//! Run with:
//!
//! ```text
//! cargo run --example polar_factorization
//! ```

use an_lab::numeric::suites::{random_complex_matrix, seeded_rng};
use an_lab::numeric::{absolute_value, fmt_e, operator_norm, polar, sym_eigen, DenseMatrix};

fn main() {
    let mut rng = seeded_rng(7);
    let t = random_complex_matrix(&mut rng, 5, 3);
    println!("T is a random complex 5 x 3 matrix (seed 7)");

    let (w, p) = polar(&t).expect("every matrix has a polar factorization");

    let reassembled = w.mul(&p).expect("shapes agree");
    let residual = reassembled.sub(&t).expect("shapes agree").max_abs();
    println!("  reconstruction error   max|W P - T|   = {}", fmt_e(residual));
    println!(
        "  Hermitian deviation    max|P - P*|    = {}",
        fmt_e(p.hermitian_deviation())
    );

    let modulus = absolute_value(&t).expect("the modulus exists");
    let modulus_gap = p.sub(&modulus).expect("shapes agree").max_abs();
    println!("  P equals the modulus   max|P - |T||   = {}", fmt_e(modulus_gap));

    let eig = sym_eigen(&p).expect("P is Hermitian");
    let smallest = eig.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let largest = eig.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!("  eigenvalues of P (the singular values of T):");
    for v in &eig.values {
        println!("    {}", fmt_e(*v));
    }
    println!("  smallest eigenvalue    {} (nonnegative up to roundoff)", fmt_e(smallest));

    let norm = operator_norm(&t).expect("the norm exists");
    println!(
        "  operator norm          |T| = {} vs largest eigenvalue {} (difference {})",
        fmt_e(norm),
        fmt_e(largest),
        fmt_e((norm - largest).abs())
    );

    // T has full column rank here, so W is an isometry on all of C^3.
    let gram = w.adjoint().mul(&w).expect("shapes agree");
    let identity_gap = gram.sub(&DenseMatrix::identity(3)).expect("shapes agree").max_abs();
    println!("  isometry check         max|W* W - I|  = {}", fmt_e(identity_gap));
}
