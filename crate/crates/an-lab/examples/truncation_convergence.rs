//! Watch restricted norms converge to the supremum as truncations grow.
//!
//! For an operator that fails to attain its norm, the witness subspace keeps
//! the restricted norm strictly below the supremum at every finite size, with
//! a gap shrinking like `1/N`. For an operator that does attain its norm the
//! gap is zero as soon as the truncation contains an attaining eigenvector.
//! Both behaviours are checked here with the dense eigensolver.
//!
//! Run with:
//!
//! ```text
//! cargo run --example truncation_convergence
//! ```

use an_lab::classifier::classify_positive;
use an_lab::models::{find_model, ModelSpec};
use an_lab::numeric::{fmt_e, truncation_study_plan, truncation_study_spec, write_truncation_csv};

fn spectrum_of(name: &str) -> an_lab::spectrum::SpectrumSpec {
    let entry = find_model(name).expect("a registered model");
    match &entry.spec {
        ModelSpec::Spectrum(s) => s.clone(),
        ModelSpec::Diagonal(_) => unreachable!("{name} is a plain spectrum model"),
    }
}

fn main() {
    // A failing operator: two eigenvalue families with distinct limit points.
    let failing = spectrum_of("two-limit-blocks");
    let plan = classify_positive(&failing)
        .witness
        .expect("the model fails, so a witness exists");

    let sizes = [10, 20, 40, 80, 160, 320];
    let reports = truncation_study_plan(&plan, &sizes).expect("the study runs");

    println!("witness subspace for `two-limit-blocks` (supremum 2, never attained)");
    println!(
        "{:>5}  {:>20}  {:>20}  {:>18}  {:>10}",
        "N", "restricted norm", "supremum", "gap", "gap * N"
    );
    for r in &reports {
        println!(
            "{:>5}  {:>20}  {:>20}  {:>18}  {:>10.6}",
            r.n,
            fmt_e(r.restricted_norm),
            fmt_e(r.sup_value),
            fmt_e(r.gap),
            r.gap * r.n as f64
        );
    }
    println!("the product gap * N settles to a constant: the gap decays like 1/N");

    // An attaining operator: the largest eigenvalue sits inside every
    // truncation, so the gap vanishes identically.
    let attaining = spectrum_of("ramesh-counterexample");
    let flat = truncation_study_spec(&attaining, &[2, 8, 32]).expect("the study runs");

    println!();
    println!("spectrum truncations for `ramesh-counterexample` (norm 1, attained)");
    print!("{}", write_truncation_csv(&flat));
    println!("every gap is zero: the attaining eigenvector lives in each truncation");
}
