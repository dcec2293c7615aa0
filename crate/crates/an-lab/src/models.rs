//! Registry of named built-in operator models.
//!
//! Each entry packages a spectrum (or complex diagonal description) that
//! exhibits one classification phenomenon in its simplest form, so the CLI
//! and tests can refer to the interesting operators by a stable name
//! instead of an inline JSON blob.

use crate::classifier::{DiagonalEntry, DiagonalOperatorSpec};
use crate::rational::{rat, rat_int};
use crate::spectrum::{EigenvalueAtom, SpectrumSpec, TailDirection, TailSequence};

/// Underlying operator description of a registry entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    Spectrum(SpectrumSpec),
    Diagonal(DiagonalOperatorSpec),
}

impl ModelSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpec::Spectrum(_) => "spectrum",
            ModelSpec::Diagonal(_) => "diagonal",
        }
    }

    /// JSON in the same schema the `classify` input reader accepts.
    pub fn to_json_string(&self) -> String {
        match self {
            ModelSpec::Spectrum(s) => s.to_json_string(),
            ModelSpec::Diagonal(d) => d.to_json_string(),
        }
    }
}

/// One named model.
#[derive(Debug, Clone)]
pub struct ModelRegistryEntry {
    pub name: &'static str,
    /// Where the model comes from and what it demonstrates.
    pub provenance: &'static str,
    pub spec: ModelSpec,
}

/// All built-in models, in registry order.
pub fn builtin_models() -> Vec<ModelRegistryEntry> {
    vec![
        ModelRegistryEntry {
            name: "ramesh-counterexample",
            provenance: "positive diagonal with one eigenvalue dropped below an \
                         infinite-multiplicity top value; the smallest operator that \
                         separates norm attainment on every subspace from naive \
                         expectations about compact perturbations",
            spec: ModelSpec::Spectrum(
                SpectrumSpec::atoms_only(vec![
                    EigenvalueAtom::finite(rat(1, 2), 1),
                    EigenvalueAtom::infinite(rat_int(1)),
                ])
                .expect("valid built-in spectrum"),
            ),
        },
        ModelRegistryEntry {
            name: "two-limit-blocks",
            provenance: "direct sum of two diagonal blocks whose eigenvalues decrease \
                         to different limits (1 and 2); the canonical failure of the \
                         single-limit-point requirement",
            spec: ModelSpec::Spectrum(
                SpectrumSpec::tails_only(vec![
                    TailSequence::harmonic(rat_int(1), TailDirection::Decreasing, rat(1, 2), 1),
                    TailSequence::harmonic(rat_int(2), TailDirection::Decreasing, rat_int(1), 1),
                ])
                .expect("valid built-in spectrum"),
            ),
        },
        ModelRegistryEntry {
            name: "isometry-phase",
            provenance: "diagonal operator of constant unit modulus with arbitrary \
                         distinct phases; every isometry of this shape attains its \
                         norm on every subspace",
            spec: ModelSpec::Diagonal(
                DiagonalOperatorSpec::new(vec![DiagonalEntry::ConstantModulusFamily {
                    modulus: rat_int(1),
                }])
                .expect("valid built-in diagonal"),
            ),
        },
        ModelRegistryEntry {
            name: "sum-not-an",
            provenance: "eigenvalues increasing to 2 along a harmonic ladder; arises \
                         as the sum of two operators that each attain their norm on \
                         every subspace, showing the property is not closed under \
                         addition",
            spec: ModelSpec::Spectrum(
                SpectrumSpec::tails_only(vec![TailSequence::harmonic(
                    rat_int(2),
                    TailDirection::Increasing,
                    rat_int(1),
                    1,
                )])
                .expect("valid built-in spectrum"),
            ),
        },
        ModelRegistryEntry {
            name: "projection-infinite",
            provenance: "orthogonal projection with infinite rank and infinite \
                         corank; two distinct infinite-multiplicity eigenvalues \
                         (0 and 1)",
            spec: ModelSpec::Spectrum(
                SpectrumSpec::atoms_only(vec![
                    EigenvalueAtom::infinite(rat_int(0)),
                    EigenvalueAtom::infinite(rat_int(1)),
                ])
                .expect("valid built-in spectrum"),
            ),
        },
    ]
}

/// Looks up a model by exact name.
pub fn find_model(name: &str) -> Option<ModelRegistryEntry> {
    builtin_models().into_iter().find(|m| m.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify_diagonal, classify_positive, Reason};
    use crate::witness::WitnessKind;

    #[test]
    fn registry_has_five_unique_named_entries() {
        let models = builtin_models();
        assert_eq!(models.len(), 5);
        let mut names: Vec<&str> = models.iter().map(|m| m.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 5);
        assert!(models.iter().all(|m| !m.provenance.is_empty()));
    }

    #[test]
    fn lookup_is_by_exact_name() {
        assert!(find_model("ramesh-counterexample").is_some());
        assert!(find_model("two-limit-blocks").is_some());
        assert!(find_model("Ramesh-Counterexample").is_none());
        assert!(find_model("unknown").is_none());
    }

    fn classify_entry(entry: &ModelRegistryEntry) -> crate::classifier::ANVerdict {
        match &entry.spec {
            ModelSpec::Spectrum(s) => classify_positive(s),
            ModelSpec::Diagonal(d) => classify_diagonal(d),
        }
    }

    #[test]
    fn each_model_exhibits_its_phenomenon() {
        let expected: Vec<(&str, bool, Reason, Option<WitnessKind>)> = vec![
            (
                "ramesh-counterexample",
                true,
                Reason::FiniteRankPlusScalar,
                None,
            ),
            (
                "two-limit-blocks",
                false,
                Reason::FailTwoLimitPoints,
                Some(WitnessKind::TwoLimitPoints),
            ),
            (
                "isometry-phase",
                true,
                Reason::FiniteRankPlusScalar,
                None,
            ),
            (
                "sum-not-an",
                false,
                Reason::FailIncreasingApproach,
                Some(WitnessKind::IncreasingApproach),
            ),
            (
                "projection-infinite",
                false,
                Reason::FailTwoInfiniteMultiplicities,
                Some(WitnessKind::TwoInfiniteMultiplicities),
            ),
        ];
        for (name, satisfied, reason, witness_kind) in expected {
            let entry = find_model(name).unwrap();
            let verdict = classify_entry(&entry);
            assert_eq!(verdict.satisfied, satisfied, "{name}");
            assert_eq!(verdict.reason, reason, "{name}");
            assert_eq!(verdict.witness.map(|w| w.kind), witness_kind, "{name}");
        }
    }

    #[test]
    fn exported_json_reparses_to_the_same_model() {
        for entry in builtin_models() {
            let json = entry.spec.to_json_string();
            match &entry.spec {
                ModelSpec::Spectrum(s) => {
                    assert_eq!(&SpectrumSpec::from_json_str(&json).unwrap(), s);
                    assert!(!json.contains("entries"));
                }
                ModelSpec::Diagonal(d) => {
                    assert_eq!(&DiagonalOperatorSpec::from_json_str(&json).unwrap(), d);
                    assert!(json.starts_with("{\"entries\""));
                }
            }
        }
    }
}
