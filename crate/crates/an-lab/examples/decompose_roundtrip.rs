//! Split a positive spectrum into `alpha*I + K + F` and rebuild it.
//!
//! The input mixes an infinite-multiplicity eigenvalue, two finite outliers
//! (one above and one below the essential level), and a tail decreasing to
//! that level. The decomposition routes each piece: the shared level becomes
//! the scalar `alpha`; everything sitting above it — the outlier at `7/2`
//! and the tail, both shifted down by `alpha` — lands in the positive
//! compact part `K`; the outlier below needs a negative shift, which only
//! the self-adjoint finite-rank part `F` may carry. Reconstructing from the
//! parts must give back the same spectrum, exactly.
//!
//! Run with:
//!
//! ```text
//! cargo run --example decompose_roundtrip
//! ```

use an_lab::decompose::{decompose, reconstruct, AlphaDimension, Decomposition};
use an_lab::rational::{format_rat, rat, rat_int, Rat};
use an_lab::spectrum::{EigenvalueAtom, SpectrumSpec, TailDirection, TailSequence};

fn top_values(spec: &SpectrumSpec, k: usize) -> Vec<Rat> {
    spec.top_k_values(k).into_iter().map(|(v, _)| v).collect()
}

fn join_rats(values: &[Rat]) -> String {
    values
        .iter()
        .map(format_rat)
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() {
    let spec = SpectrumSpec::new(
        vec![
            EigenvalueAtom::infinite(rat_int(3)),
            EigenvalueAtom::finite(rat(7, 2), 2),
            EigenvalueAtom::finite(rat(1, 4), 1),
        ],
        vec![TailSequence::harmonic(
            rat_int(3),
            TailDirection::Decreasing,
            rat(1, 2),
            1,
        )],
    )
    .expect("a valid spectrum");

    println!("input spectrum (JSON): {}", spec.to_json_string());
    println!(
        "largest eight eigenvalues: {}",
        join_rats(&top_values(&spec, 8))
    );

    let d = decompose(&spec).expect("this spectrum admits a decomposition");

    println!();
    println!("decomposition alpha*I + K + F");
    match d.alpha_dimension {
        AlphaDimension::Infinite => {
            println!("  alpha = {} on an infinite-dimensional space", format_rat(&d.alpha))
        }
        AlphaDimension::Finite(m) => {
            println!("  alpha = {} with multiplicity {}", format_rat(&d.alpha), m)
        }
    }
    for (shift, m) in &d.f_atoms {
        println!("  F: shift {} with multiplicity {}", format_rat(shift), m);
    }
    for (value, m) in &d.k_atoms {
        println!("  K: eigenvalue {} with multiplicity {}", format_rat(value), m);
    }
    for tail in &d.k_tails {
        let first: Vec<Rat> = (1..=4).map(|n| tail.term(n)).collect();
        println!(
            "  K: tail {}, ... decreasing to {}",
            join_rats(&first),
            format_rat(&tail.limit)
        );
    }

    let json = d.to_json_string();
    println!();
    println!("serialized decomposition: {json}");

    let reparsed = Decomposition::from_json_str(&json).expect("the emitted JSON parses back");
    assert_eq!(reparsed, d, "JSON round trip preserves the decomposition");

    let rebuilt = reconstruct(&reparsed).expect("the parts reassemble into a spectrum");
    assert_eq!(
        rebuilt.canonical(),
        spec.canonical(),
        "reconstruction returns the original spectrum"
    );
    assert_eq!(
        top_values(&rebuilt, 1000),
        top_values(&spec, 1000),
        "eigenvalue enumerations agree far out"
    );
    println!();
    println!("round trip: decompose -> JSON -> parse -> reconstruct gives back the input, exactly");
}
