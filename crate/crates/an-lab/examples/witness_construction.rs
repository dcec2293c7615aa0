//! Build the explicit subspace that defeats norm attainment.
//!
//! The `two-limit-blocks` model interleaves one eigenvalue sequence
//! decreasing to 1 with another decreasing to 2, so its spectrum has two
//! limit points and the operator cannot attain its norm on every subspace.
//! The classifier returns a witness plan: unit vectors
//! `v_n = c_n f_n + sqrt(1 - c_n^2) g_n` mixing eigenvectors from the two
//! families so that `|T v_n| = gamma_n` climbs strictly toward the supremum
//! without reaching it. All coefficients are exact rationals satisfying
//! `c_n^2 a_n^2 + (1 - c_n^2) b_n^2 = gamma_n^2`.
//!
//! Run with:
//!
//! ```text
//! cargo run --example witness_construction
//! ```

use an_lab::classifier::classify_positive;
use an_lab::models::{find_model, ModelSpec};
use an_lab::rational::format_rat;

fn main() {
    let entry = find_model("two-limit-blocks").expect("a registered model");
    let ModelSpec::Spectrum(spec) = &entry.spec else {
        unreachable!("two-limit-blocks is a plain spectrum model");
    };

    let verdict = classify_positive(spec);
    assert!(!verdict.satisfied, "the model is built to fail");
    let plan = verdict
        .witness
        .expect("a failing spectrum always carries a witness");

    println!("model:   {}", entry.name);
    println!("reason:  {}", verdict.reason.as_str());
    println!("pairing: {}", plan.pairing);
    println!(
        "supremum approached but never reached: {}",
        format_rat(&plan.sup_value)
    );
    println!();

    println!(
        "{:>3}  {:>10}  {:>10}  {:>12}  {:>12}  {:>6}",
        "n", "a_n", "b_n", "gamma_n", "c_n^2", "exact"
    );
    for n in 1..=6 {
        let a = plan.a(n);
        let b = plan
            .b(n)
            .expect("a two-family witness has a second sequence");
        println!(
            "{:>3}  {:>10}  {:>10}  {:>12}  {:>12}  {:>6}",
            n,
            format_rat(&a),
            format_rat(&b),
            format_rat(&plan.gamma(n)),
            format_rat(&plan.c_squared(n)),
            plan.identity_holds_at(n)
        );
    }

    plan.validate_up_to(1000)
        .expect("the mixing identity holds exactly");
    println!();
    println!("mixing identity c^2 a^2 + (1 - c^2) b^2 = gamma^2 verified exactly for n <= 1000");

    println!();
    println!("basis recipe for the first four vectors (column indices into the ambient space):");
    print!("{}", plan.emit_basis_csv(4));
    println!();
    println!(
        "materializing those vectors needs an ambient dimension of {}",
        plan.ambient_dimension(4)
    );
}
