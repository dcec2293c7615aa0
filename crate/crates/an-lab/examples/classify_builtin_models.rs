//! Classify every built-in model operator.
//!
//! For each registered model this prints whether the operator attains its
//! norm at all (norming), whether it attains its norm on every nontrivial
//! closed subspace (absolutely norming), the deciding reason, and — when the
//! operator fails — which witness family certifies the failure.
//!
//! Run with:
//!
//! ```text
//! cargo run --example classify_builtin_models
//! ```

use an_lab::classifier::{classify_norming, classify_positive, modulus_spectrum};
use an_lab::models::{builtin_models, ModelSpec};
use an_lab::rational::format_rat;
use an_lab::spectrum::SpectrumSpec;
use an_lab::witness::WitnessKind;

/// Diagonal models are judged through the spectrum of their modulus.
fn positive_part(spec: &ModelSpec) -> SpectrumSpec {
    match spec {
        ModelSpec::Spectrum(s) => s.clone(),
        ModelSpec::Diagonal(d) => modulus_spectrum(d),
    }
}

/// The canonical external name of a witness kind (the one used in JSON).
fn kind_name(kind: WitnessKind) -> String {
    serde_json::to_value(kind)
        .expect("witness kinds serialize")
        .as_str()
        .expect("witness kinds serialize to strings")
        .to_string()
}

fn main() {
    for entry in builtin_models() {
        let spectrum = positive_part(&entry.spec);
        let norming = classify_norming(&spectrum);
        let verdict = classify_positive(&spectrum);

        println!("{}", entry.name);
        println!("  input kind          {}", entry.spec.kind());
        println!("  description         {}", entry.provenance);
        match &norming.attaining_value {
            Some(v) => println!("  norming             yes, attains {}", format_rat(v)),
            None => println!(
                "  norming             no, the supremum {} is never reached",
                format_rat(&spectrum.sup_norm().norm)
            ),
        }
        println!(
            "  absolutely norming  {}",
            if verdict.satisfied { "yes" } else { "no" }
        );
        println!("  reason              {}", verdict.reason.as_str());
        if let Some(d) = &verdict.decomposition {
            println!("  scalar part         alpha = {}", format_rat(&d.alpha));
        }
        if let Some(w) = &verdict.witness {
            println!(
                "  witness             {} — restricted norms approach {} without reaching it",
                kind_name(w.kind),
                format_rat(&w.sup_value)
            );
        }
        println!();
    }
}
