//! Verdicts: does an operator attain its norm (N), and does it attain its
//! norm on every nontrivial closed subspace (AN)?
//!
//! For a positive diagonalizable operator the answers are spectral. The N
//! property holds exactly when the supremum of the eigenvalues is itself an
//! eigenvalue. The AN property holds exactly when the four attainment
//! conditions of [`crate::spectrum`] all pass, which is also exactly when
//! the operator splits as `alpha*I + K + F`; a passing spectrum yields that
//! decomposition, a failing one yields an explicit witness subspace plan.
//!
//! Diagonal complex operators reduce to the positive case through their
//! modulus: `T` attains norms exactly as `|T|` does, and for a diagonal
//! matrix the modulus spectrum is just the entrywise absolute values.

use crate::decompose::{decompose, Decomposition};
use crate::rational::{self, Rat};
use crate::spectrum::{
    ConditionFailure, ConditionReport, EigenvalueAtom, Multiplicity, SpecError, SpectrumSpec,
    TailSequence,
};
use crate::witness::{
    witness_increasing, witness_limit_vs_infmult, witness_two_infmult, witness_two_limit_points,
    WitnessPlan,
};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// Why a spectrum is or is not absolutely norming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    /// Satisfied with no compact tail: a scalar plus finite rank.
    FiniteRankPlusScalar,
    /// Satisfied with a compact tail present.
    CompactPlusScalarPlusFiniteRank,
    #[serde(rename = "Fail_IncreasingApproach")]
    FailIncreasingApproach,
    #[serde(rename = "Fail_TwoLimitPoints")]
    FailTwoLimitPoints,
    #[serde(rename = "Fail_TwoInfiniteMultiplicities")]
    FailTwoInfiniteMultiplicities,
    #[serde(rename = "Fail_LimitNeqInfMult")]
    FailLimitNeqInfMult,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::FiniteRankPlusScalar => "FiniteRankPlusScalar",
            Reason::CompactPlusScalarPlusFiniteRank => "CompactPlusScalarPlusFiniteRank",
            Reason::FailIncreasingApproach => "Fail_IncreasingApproach",
            Reason::FailTwoLimitPoints => "Fail_TwoLimitPoints",
            Reason::FailTwoInfiniteMultiplicities => "Fail_TwoInfiniteMultiplicities",
            Reason::FailLimitNeqInfMult => "Fail_LimitNeqInfMult",
        }
    }

    pub fn indicates_satisfied(&self) -> bool {
        matches!(
            self,
            Reason::FiniteRankPlusScalar | Reason::CompactPlusScalarPlusFiniteRank
        )
    }
}

impl From<ConditionFailure> for Reason {
    fn from(f: ConditionFailure) -> Reason {
        match f {
            ConditionFailure::IncreasingApproach => Reason::FailIncreasingApproach,
            ConditionFailure::TwoLimitPoints => Reason::FailTwoLimitPoints,
            ConditionFailure::TwoInfiniteMultiplicities => Reason::FailTwoInfiniteMultiplicities,
            ConditionFailure::LimitNeqInfMult => Reason::FailLimitNeqInfMult,
        }
    }
}

/// Outcome of the absolute-norming classification. Exactly one of
/// `decomposition` (satisfied) and `witness` (not satisfied) is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ANVerdict {
    pub satisfied: bool,
    pub reason: Reason,
    pub decomposition: Option<Decomposition>,
    pub witness: Option<WitnessPlan>,
}

impl ANVerdict {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("verdict serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }
}

/// Outcome of the plain norm-attainment classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormingVerdict {
    pub satisfied: bool,
    #[serde(with = "rational::serde_rat_opt")]
    pub attaining_value: Option<Rat>,
}

/// A positive diagonal operator attains its norm exactly when the supremum
/// of its eigenvalues is an eigenvalue.
pub fn classify_norming(spec: &SpectrumSpec) -> NormingVerdict {
    let sup = spec.sup_norm();
    NormingVerdict {
        satisfied: sup.attained,
        attaining_value: sup.attained.then_some(sup.norm),
    }
}

/// Full AN classification of a positive spectrum: all four conditions pass
/// and the canonical decomposition is returned, or the first failing
/// condition is reported along with a witness subspace plan that exhibits
/// the failure.
pub fn classify_positive(spec: &SpectrumSpec) -> ANVerdict {
    let report = spec.check_conditions();
    match report.first_failure() {
        None => {
            let d = decompose(spec).expect("conditions verified to pass");
            let reason = if d.k_tails.is_empty() {
                Reason::FiniteRankPlusScalar
            } else {
                Reason::CompactPlusScalarPlusFiniteRank
            };
            ANVerdict {
                satisfied: true,
                reason,
                decomposition: Some(d),
                witness: None,
            }
        }
        Some(failure) => ANVerdict {
            satisfied: false,
            reason: failure.into(),
            decomposition: None,
            witness: Some(build_witness(spec, &report, failure)),
        },
    }
}

fn build_witness(
    spec: &SpectrumSpec,
    report: &ConditionReport,
    failure: ConditionFailure,
) -> WitnessPlan {
    match failure {
        ConditionFailure::IncreasingApproach => {
            let idx = report.sup_attained_on_subsets.offending_tails[0];
            witness_increasing(&spec.tails[idx])
        }
        ConditionFailure::TwoLimitPoints => {
            // No increasing tail exists here (that would have failed first),
            // so every limit point is realized by decreasing tails. Take the
            // first tail at the smallest limit and the first at the largest.
            let points = spec.limit_points().points;
            let lo = &points[0];
            let hi = &points[points.len() - 1];
            witness_two_limit_points(&spec.tails[lo.tails[0]], &spec.tails[hi.tails[0]])
                .expect("distinct limit points")
        }
        ConditionFailure::TwoInfiniteMultiplicities => {
            let mut values: Vec<&Rat> = spec
                .atoms
                .iter()
                .filter(|a| a.multiplicity.is_infinite())
                .map(|a| &a.value)
                .collect();
            values.sort();
            values.dedup();
            witness_two_infmult(values[0], values[values.len() - 1])
                .expect("two distinct infinite-multiplicity values")
        }
        ConditionFailure::LimitNeqInfMult => {
            let points = spec.limit_points().points;
            let point = &points[0];
            let inf_value = spec
                .atoms
                .iter()
                .find(|a| a.multiplicity.is_infinite())
                .map(|a| a.value.clone())
                .expect("an infinite-multiplicity atom exists");
            witness_limit_vs_infmult(&point.value, &inf_value, &spec.tails[point.tails[0]])
                .expect("limit and infinite value differ")
        }
    }
}

/// One diagonal entry family of a complex diagonal operator. Only moduli
/// matter for norm attainment; phases are carried for faithful modeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DiagonalEntry {
    /// Finitely or infinitely many copies of one complex value
    /// `modulus * exp(i * pi * phase_over_pi)`.
    FixedComplex {
        #[serde(with = "rational::serde_rat")]
        modulus: Rat,
        #[serde(with = "rational::serde_rat")]
        phase_over_pi: Rat,
        multiplicity: Multiplicity,
    },
    /// Entries whose moduli follow a tail rule while phases vary by an
    /// uninterpreted descriptor (classification ignores it).
    PhasedTail {
        modulus_tail: TailSequence,
        phase_rule: String,
    },
    /// Infinitely many entries of one modulus with pairwise distinct
    /// phases, the shape of a diagonal unitary multiple.
    ConstantModulusFamily {
        #[serde(with = "rational::serde_rat")]
        modulus: Rat,
    },
}

/// A complex diagonal operator described entrywise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalOperatorSpec {
    pub entries: Vec<DiagonalEntry>,
}

impl DiagonalOperatorSpec {
    pub fn new(entries: Vec<DiagonalEntry>) -> Result<Self, SpecError> {
        let spec = DiagonalOperatorSpec { entries };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.entries.is_empty() {
            return Err(SpecError::EmptySpectrum);
        }
        for entry in &self.entries {
            match entry {
                DiagonalEntry::FixedComplex {
                    modulus,
                    multiplicity,
                    ..
                } => {
                    if modulus.is_negative() {
                        return Err(SpecError::NegativeValue("entry modulus".into()));
                    }
                    if *multiplicity == Multiplicity::Finite(0) {
                        return Err(SpecError::ZeroMultiplicity);
                    }
                }
                DiagonalEntry::PhasedTail { modulus_tail, .. } => modulus_tail.validate()?,
                DiagonalEntry::ConstantModulusFamily { modulus } => {
                    if modulus.is_negative() {
                        return Err(SpecError::NegativeValue("entry modulus".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self, String> {
        let spec: DiagonalOperatorSpec = serde_json::from_str(s).map_err(|e| e.to_string())?;
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("diagonal spec serialization cannot fail")
    }
}

/// The eigenvalue multiset of `|T|` for a diagonal `T`: entrywise moduli.
pub fn modulus_spectrum(dspec: &DiagonalOperatorSpec) -> SpectrumSpec {
    let mut atoms = Vec::new();
    let mut tails = Vec::new();
    for entry in &dspec.entries {
        match entry {
            DiagonalEntry::FixedComplex {
                modulus,
                multiplicity,
                ..
            } => atoms.push(EigenvalueAtom::new(modulus.clone(), *multiplicity)),
            DiagonalEntry::PhasedTail { modulus_tail, .. } => tails.push(modulus_tail.clone()),
            DiagonalEntry::ConstantModulusFamily { modulus } => {
                atoms.push(EigenvalueAtom::infinite(modulus.clone()))
            }
        }
    }
    SpectrumSpec::new(atoms, tails).expect("moduli of a valid diagonal spec form a valid spectrum")
}

/// A diagonal operator attains norms exactly as its modulus does.
pub fn classify_diagonal(dspec: &DiagonalOperatorSpec) -> ANVerdict {
    classify_positive(&modulus_spectrum(dspec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::spectrum::{TailDirection, TailRule};
    use crate::witness::WitnessKind;

    fn dec_tail(limit: Rat, c: Rat) -> TailSequence {
        TailSequence::harmonic(limit, TailDirection::Decreasing, c, 1)
    }

    fn inc_tail(limit: Rat, c: Rat) -> TailSequence {
        TailSequence::harmonic(limit, TailDirection::Increasing, c, 1)
    }

    fn flat_with_defect() -> SpectrumSpec {
        SpectrumSpec::atoms_only(vec![
            EigenvalueAtom::finite(rat(1, 2), 1),
            EigenvalueAtom::infinite(rat_int(1)),
        ])
        .unwrap()
    }

    #[test]
    fn norming_verdict_examples() {
        let v = classify_norming(&flat_with_defect());
        assert!(v.satisfied);
        assert_eq!(v.attaining_value, Some(rat_int(1)));

        let v = classify_norming(
            &SpectrumSpec::tails_only(vec![inc_tail(rat_int(2), rat_int(1))]).unwrap(),
        );
        assert!(!v.satisfied);
        assert_eq!(v.attaining_value, None);

        let v = classify_norming(
            &SpectrumSpec::atoms_only(vec![EigenvalueAtom::finite(rat_int(0), 1)]).unwrap(),
        );
        assert!(v.satisfied);
        assert_eq!(v.attaining_value, Some(rat_int(0)));
    }

    #[test]
    fn satisfied_without_tail_is_finite_rank_plus_scalar() {
        let v = classify_positive(&flat_with_defect());
        assert!(v.satisfied);
        assert_eq!(v.reason, Reason::FiniteRankPlusScalar);
        let d = v.decomposition.as_ref().unwrap();
        assert_eq!(d.alpha, rat_int(1));
        assert_eq!(d.f_atoms, vec![(rat(-1, 2), 1)]);
        assert!(d.k_atoms.is_empty() && d.k_tails.is_empty());
        assert!(v.witness.is_none());
    }

    #[test]
    fn satisfied_with_tail_reports_compact_part() {
        let spec = SpectrumSpec::new(
            vec![EigenvalueAtom::finite(rat(1, 4), 1)],
            vec![dec_tail(rat_int(1), rat(1, 2))],
        )
        .unwrap();
        let v = classify_positive(&spec);
        assert!(v.satisfied);
        assert_eq!(v.reason, Reason::CompactPlusScalarPlusFiniteRank);
        assert!(v.decomposition.unwrap().k_tails.len() == 1);
    }

    #[test]
    fn increasing_tail_fails_with_witness() {
        let spec = SpectrumSpec::tails_only(vec![inc_tail(rat_int(2), rat_int(1))]).unwrap();
        let v = classify_positive(&spec);
        assert!(!v.satisfied);
        assert_eq!(v.reason, Reason::FailIncreasingApproach);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::IncreasingApproach);
        assert_eq!(w.sup_value, rat_int(2));
        w.validate_up_to(100).unwrap();
        assert!(v.decomposition.is_none());
    }

    #[test]
    fn two_limit_points_fail_with_witness() {
        let spec = SpectrumSpec::tails_only(vec![
            dec_tail(rat_int(1), rat(1, 2)),
            dec_tail(rat_int(2), rat_int(1)),
        ])
        .unwrap();
        let v = classify_positive(&spec);
        assert!(!v.satisfied);
        assert_eq!(v.reason, Reason::FailTwoLimitPoints);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::TwoLimitPoints);
        assert_eq!(w.sup_value, rat_int(2));
        assert_eq!(w.gamma(1), rat(7, 4));
        w.validate_up_to(100).unwrap();
    }

    #[test]
    fn two_infinite_values_fail_with_witness() {
        let spec = SpectrumSpec::atoms_only(vec![
            EigenvalueAtom::infinite(rat_int(0)),
            EigenvalueAtom::infinite(rat_int(1)),
        ])
        .unwrap();
        let v = classify_positive(&spec);
        assert_eq!(v.reason, Reason::FailTwoInfiniteMultiplicities);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::TwoInfiniteMultiplicities);
        assert_eq!(w.c_squared(1), rat(3, 4));
        w.validate_up_to(100).unwrap();
    }

    #[test]
    fn limit_vs_infinite_fails_both_directions() {
        let spec = SpectrumSpec::new(
            vec![EigenvalueAtom::infinite(rat_int(3))],
            vec![dec_tail(rat_int(1), rat_int(1))],
        )
        .unwrap();
        let v = classify_positive(&spec);
        assert_eq!(v.reason, Reason::FailLimitNeqInfMult);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::LimitVsInfMultLimitBelow);
        assert_eq!(w.sup_value, rat_int(3));
        w.validate_up_to(100).unwrap();

        let spec = SpectrumSpec::new(
            vec![EigenvalueAtom::infinite(rat_int(1))],
            vec![dec_tail(rat_int(2), rat_int(1))],
        )
        .unwrap();
        let v = classify_positive(&spec);
        assert_eq!(v.reason, Reason::FailLimitNeqInfMult);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::LimitVsInfMultLimitAbove);
        assert_eq!(w.sup_value, rat_int(2));
        w.validate_up_to(100).unwrap();
    }

    #[test]
    fn failure_priority_is_condition_order() {
        // Increasing tail beats two limit points.
        let spec = SpectrumSpec::tails_only(vec![
            inc_tail(rat_int(1), rat(1, 2)),
            dec_tail(rat_int(2), rat_int(1)),
        ])
        .unwrap();
        assert_eq!(
            classify_positive(&spec).reason,
            Reason::FailIncreasingApproach
        );

        // Two infinite values beat the limit-mismatch condition.
        let spec = SpectrumSpec::new(
            vec![
                EigenvalueAtom::infinite(rat_int(0)),
                EigenvalueAtom::infinite(rat_int(3)),
            ],
            vec![dec_tail(rat_int(1), rat_int(1))],
        )
        .unwrap();
        assert_eq!(
            classify_positive(&spec).reason,
            Reason::FailTwoInfiniteMultiplicities
        );
    }

    #[test]
    fn absolutely_norming_implies_norming() {
        let specs = [
            flat_with_defect(),
            SpectrumSpec::atoms_only(vec![EigenvalueAtom::finite(rat_int(5), 2)]).unwrap(),
            SpectrumSpec::new(
                vec![EigenvalueAtom::finite(rat(1, 4), 1)],
                vec![dec_tail(rat_int(1), rat(1, 2))],
            )
            .unwrap(),
        ];
        for spec in specs {
            assert!(classify_positive(&spec).satisfied);
            assert!(classify_norming(&spec).satisfied);
        }
    }

    #[test]
    fn scaling_preserves_verdicts() {
        let specs = [
            SpectrumSpec::tails_only(vec![inc_tail(rat_int(2), rat_int(1))]).unwrap(),
            SpectrumSpec::new(
                vec![EigenvalueAtom::finite(rat(1, 4), 1)],
                vec![dec_tail(rat_int(1), rat(1, 2))],
            )
            .unwrap(),
            SpectrumSpec::atoms_only(vec![
                EigenvalueAtom::infinite(rat_int(0)),
                EigenvalueAtom::infinite(rat_int(1)),
            ])
            .unwrap(),
        ];
        for spec in specs {
            let before = classify_positive(&spec);
            for factor in [rat(1, 3), rat(7, 2)] {
                let after = classify_positive(&spec.scaled(&factor));
                assert_eq!(before.satisfied, after.satisfied);
                assert_eq!(before.reason, after.reason);
            }
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify_positive(&flat_with_defect());
        assert_eq!(
            v.to_json_string(),
            r#"{"satisfied":true,"reason":"FiniteRankPlusScalar","decomposition":{"alpha":1,"alpha_infinite":true,"alpha_multiplicity":0,"F":[["-1/2",1]],"K_atoms":[],"K_tail":null},"witness":null}"#
        );
        let back = ANVerdict::from_json_str(&v.to_json_string()).unwrap();
        assert_eq!(back, v);

        let failing = classify_positive(
            &SpectrumSpec::tails_only(vec![
                dec_tail(rat_int(1), rat(1, 2)),
                dec_tail(rat_int(2), rat_int(1)),
            ])
            .unwrap(),
        );
        let json = failing.to_json_string();
        assert!(json.contains(r#""reason":"Fail_TwoLimitPoints""#));
        assert!(json.contains(r#""decomposition":null"#));
        assert_eq!(ANVerdict::from_json_str(&json).unwrap(), failing);
    }

    #[test]
    fn modulus_spectrum_maps_entries() {
        let dspec = DiagonalOperatorSpec::new(vec![DiagonalEntry::ConstantModulusFamily {
            modulus: rat_int(1),
        }])
        .unwrap();
        let spec = modulus_spectrum(&dspec);
        assert_eq!(spec.atoms, vec![EigenvalueAtom::infinite(rat_int(1))]);
        assert!(classify_diagonal(&dspec).satisfied);

        let dspec = DiagonalOperatorSpec::new(vec![DiagonalEntry::FixedComplex {
            modulus: rat_int(2),
            phase_over_pi: rat(1, 2),
            multiplicity: Multiplicity::Finite(1),
        }])
        .unwrap();
        let spec = modulus_spectrum(&dspec);
        assert_eq!(spec.atoms, vec![EigenvalueAtom::finite(rat_int(2), 1)]);
        assert!(classify_diagonal(&dspec).satisfied);

        let tail = inc_tail(rat_int(2), rat_int(1));
        let dspec = DiagonalOperatorSpec::new(vec![DiagonalEntry::PhasedTail {
            modulus_tail: tail.clone(),
            phase_rule: "phase(n) = pi/n".into(),
        }])
        .unwrap();
        let spec = modulus_spectrum(&dspec);
        assert_eq!(spec.tails, vec![tail]);
        assert_eq!(
            classify_diagonal(&dspec).reason,
            Reason::FailIncreasingApproach
        );
    }

    #[test]
    fn two_infinite_moduli_fail_via_reduction() {
        let dspec = DiagonalOperatorSpec::new(vec![
            DiagonalEntry::FixedComplex {
                modulus: rat_int(0),
                phase_over_pi: rat_int(0),
                multiplicity: Multiplicity::Infinite,
            },
            DiagonalEntry::ConstantModulusFamily { modulus: rat_int(1) },
        ])
        .unwrap();
        let v = classify_diagonal(&dspec);
        assert_eq!(v.reason, Reason::FailTwoInfiniteMultiplicities);
    }

    #[test]
    fn classification_is_phase_blind() {
        let with_phase = |p: Rat| {
            DiagonalOperatorSpec::new(vec![
                DiagonalEntry::FixedComplex {
                    modulus: rat(1, 2),
                    phase_over_pi: p,
                    multiplicity: Multiplicity::Finite(2),
                },
                DiagonalEntry::ConstantModulusFamily { modulus: rat_int(1) },
            ])
            .unwrap()
        };
        let base = classify_diagonal(&with_phase(rat_int(0)));
        for p in [rat(1, 2), rat(-3, 4), rat_int(1)] {
            assert_eq!(classify_diagonal(&with_phase(p)), base);
        }
    }

    #[test]
    fn diagonal_spec_json_round_trips() {
        let dspec = DiagonalOperatorSpec::new(vec![
            DiagonalEntry::FixedComplex {
                modulus: rat_int(2),
                phase_over_pi: rat(1, 2),
                multiplicity: Multiplicity::Finite(1),
            },
            DiagonalEntry::PhasedTail {
                modulus_tail: dec_tail(rat_int(1), rat(1, 2)),
                phase_rule: "phase(n) = 2*pi/n".into(),
            },
            DiagonalEntry::ConstantModulusFamily { modulus: rat_int(1) },
        ])
        .unwrap();
        let json = dspec.to_json_string();
        assert!(json.starts_with(r#"{"entries":[{"type":"fixed_complex""#));
        let back = DiagonalOperatorSpec::from_json_str(&json).unwrap();
        assert_eq!(back, dspec);

        assert!(DiagonalOperatorSpec::from_json_str(r#"{"entries":[]}"#).is_err());
    }

    #[test]
    fn geometric_modulus_tail_classifies() {
        let tail = TailSequence {
            limit: rat_int(0),
            direction: TailDirection::Decreasing,
            rule: TailRule::Geometric {
                c: rat_int(1),
                r: rat(1, 2),
            },
            term_multiplicity: 1,
        };
        let dspec = DiagonalOperatorSpec::new(vec![DiagonalEntry::PhasedTail {
            modulus_tail: tail,
            phase_rule: "alternating signs".into(),
        }])
        .unwrap();
        let v = classify_diagonal(&dspec);
        assert!(v.satisfied);
        assert_eq!(v.reason, Reason::CompactPlusScalarPlusFiniteRank);
    }
}
