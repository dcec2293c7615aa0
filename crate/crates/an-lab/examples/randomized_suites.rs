//! Run the seeded randomized property suites and count negative eigenvalues.
//!
//! Every numeric kernel ships with a randomized self-check: polar round
//! trips, norm preservation under the modulus, the norm showing up as a
//! modulus eigenvalue, and the bound that `K + F` (positive compact plus
//! self-adjoint finite rank) has at most `rank(F)` negative eigenvalues.
//! Seeds make every run reproducible. This example runs the suites at a
//! small size and then demonstrates the negative-eigenvalue bound on a
//! hand-built matrix pair.
//!
//! Run with:
//!
//! ```text
//! cargo run --example randomized_suites
//! ```

use an_lab::numeric::suites::{
    random_signed_finite_rank, run_absval_suite, run_negcount_suite, run_norming_suite,
    run_polar_suite, seeded_rng, DEFAULT_SEED,
};
use an_lab::numeric::{negative_eigenvalue_count, DenseMatrix};

fn main() {
    println!("seeded randomized suites (seed {DEFAULT_SEED}, dimension 6, 25 trials each)");
    println!();
    for run in [
        run_polar_suite,
        run_absval_suite,
        run_norming_suite,
        run_negcount_suite,
    ] {
        let report = run(DEFAULT_SEED, 6, 25).expect("the suite runs");
        print!("{}", report.to_text());
        println!();
    }

    // The counting bound, concretely: K = diag(4, 1, 0, 0) is positive
    // semidefinite, F has one negative and one positive direction, so K + F
    // can dip below zero in at most one direction — whatever the magnitudes.
    let k = DenseMatrix::diagonal(&[4.0, 1.0, 0.0, 0.0]);
    let mut rng = seeded_rng(11);
    let f = random_signed_finite_rank(&mut rng, 4, &[-1.0, 1.0]);
    let outcome = negative_eigenvalue_count(&k, &f).expect("K is positive semidefinite");
    println!(
        "hand-built check: K + F has {} negative eigenvalue(s); the rank of F allows at most {}",
        outcome.count, outcome.bound
    );
    assert!(outcome.count <= outcome.bound);
}
