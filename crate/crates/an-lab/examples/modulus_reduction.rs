//! Judge complex diagonal operators through the spectrum of their modulus.
//!
//! A diagonal operator with complex entries attains its norm exactly when its
//! modulus does, so classification first drops every phase and then runs the
//! positive-spectrum test. This example classifies two diagonal operators —
//! one that succeeds and one whose moduli increase toward a supremum — and
//! then re-randomizes all phases to show the verdicts cannot move.
//!
//! Run with:
//!
//! ```text
//! cargo run --example modulus_reduction
//! ```

use an_lab::classifier::{
    classify_diagonal, modulus_spectrum, DiagonalEntry, DiagonalOperatorSpec,
};
use an_lab::rational::{rat, rat_int, Rat};
use an_lab::spectrum::{Multiplicity, TailDirection, TailSequence};

/// Replace every phase in the description without touching any modulus.
fn rephased(spec: &DiagonalOperatorSpec, new_phase: Rat, new_rule: &str) -> DiagonalOperatorSpec {
    let entries = spec
        .entries
        .iter()
        .map(|e| match e {
            DiagonalEntry::FixedComplex {
                modulus,
                multiplicity,
                ..
            } => DiagonalEntry::FixedComplex {
                modulus: modulus.clone(),
                phase_over_pi: new_phase.clone(),
                multiplicity: multiplicity.clone(),
            },
            DiagonalEntry::PhasedTail { modulus_tail, .. } => DiagonalEntry::PhasedTail {
                modulus_tail: modulus_tail.clone(),
                phase_rule: new_rule.to_string(),
            },
            DiagonalEntry::ConstantModulusFamily { modulus } => {
                DiagonalEntry::ConstantModulusFamily {
                    modulus: modulus.clone(),
                }
            }
        })
        .collect();
    DiagonalOperatorSpec::new(entries).expect("rephasing keeps the description valid")
}

fn report(label: &str, spec: &DiagonalOperatorSpec) {
    let moduli = modulus_spectrum(spec);
    let verdict = classify_diagonal(spec);
    println!("{label}");
    println!("  modulus spectrum    {}", moduli.to_json_string());
    println!(
        "  absolutely norming  {}",
        if verdict.satisfied { "yes" } else { "no" }
    );
    println!("  reason              {}", verdict.reason.as_str());
    println!();
}

fn main() {
    // Two copies of 2*exp(-i*pi/3), infinitely many unimodular entries with
    // pairwise distinct phases, and a single entry i/2.
    let good = DiagonalOperatorSpec::new(vec![
        DiagonalEntry::FixedComplex {
            modulus: rat_int(2),
            phase_over_pi: rat(-1, 3),
            multiplicity: Multiplicity::Finite(2),
        },
        DiagonalEntry::ConstantModulusFamily { modulus: rat_int(1) },
        DiagonalEntry::FixedComplex {
            modulus: rat(1, 2),
            phase_over_pi: rat(1, 2),
            multiplicity: Multiplicity::Finite(1),
        },
    ])
    .expect("a valid diagonal description");

    // Moduli 2 - 1/n climbing toward 2 under alternating signs: the modulus
    // spectrum has an increasing approach, so no phase choice can save it.
    let bad = DiagonalOperatorSpec::new(vec![DiagonalEntry::PhasedTail {
        modulus_tail: TailSequence::harmonic(rat_int(2), TailDirection::Increasing, rat_int(1), 1),
        phase_rule: "alternating".to_string(),
    }])
    .expect("a valid diagonal description");

    report("diagonal with mixed phases (flat moduli)", &good);
    report("diagonal with increasing moduli", &bad);

    // Scramble every phase; only the moduli matter.
    for (label, spec) in [("flat moduli", &good), ("increasing moduli", &bad)] {
        let twisted = rephased(spec, rat(5, 7), "scrambled");
        let before = classify_diagonal(spec);
        let after = classify_diagonal(&twisted);
        assert_eq!(before.satisfied, after.satisfied);
        assert_eq!(before.reason, after.reason);
        println!("rephasing the {label} operator leaves the verdict unchanged: {}", after.reason.as_str());
    }
}
