//! Symbolic eigenvalue spectra and the four norm-attainment conditions.
//!
//! A positive diagonalizable operator is described by a [`SpectrumSpec`]: a
//! finite list of eigenvalue atoms (exact rational value, finite or infinite
//! multiplicity) plus a finite list of monotone eigenvalue tails with exactly
//! evaluable closed-form terms. Every value stays an exact rational, so the
//! equality-sensitive checks (for instance "the limit point coincides with
//! the infinite-multiplicity value") are decidable.
//!
//! The absolute-norming classification rests on four conditions:
//!
//! 1. the supremum is attained on every nonempty subset of the spectrum
//!    (fails exactly when some tail increases),
//! 2. at most one limit point of the distinct values, approached only from
//!    above,
//! 3. at most one distinct eigenvalue of infinite multiplicity,
//! 4. when both a limit point and an infinite-multiplicity value exist, they
//!    coincide.
//!
//! [`SpectrumSpec::check_conditions`] evaluates all four independently and
//! reports the offending atoms/tails so a witness construction can be built
//! from the report.

use crate::rational::{self, format_rat, Rat};
use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Eigenspace dimension of a single eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(m) => ser.serialize_u64(*m),
            Multiplicity::Infinite => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct MultVisitor;

        impl<'de> Visitor<'de> for MultVisitor {
            type Value = Multiplicity;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Multiplicity, E> {
                Ok(Multiplicity::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Multiplicity, E> {
                u64::try_from(v)
                    .map(Multiplicity::Finite)
                    .map_err(|_| de::Error::custom("multiplicity must be nonnegative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Multiplicity, E> {
                if v == "inf" {
                    Ok(Multiplicity::Infinite)
                } else {
                    Err(de::Error::custom(format!(
                        "unknown multiplicity token {v:?} (expected \"inf\")"
                    )))
                }
            }
        }

        de.deserialize_any(MultVisitor)
    }
}

/// One eigenvalue with its eigenspace dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueAtom {
    #[serde(with = "rational::serde_rat")]
    pub value: Rat,
    pub multiplicity: Multiplicity,
}

impl EigenvalueAtom {
    pub fn new(value: Rat, multiplicity: Multiplicity) -> Self {
        EigenvalueAtom {
            value,
            multiplicity,
        }
    }

    pub fn finite(value: Rat, m: u64) -> Self {
        Self::new(value, Multiplicity::Finite(m))
    }

    pub fn infinite(value: Rat) -> Self {
        Self::new(value, Multiplicity::Infinite)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailDirection {
    Decreasing,
    Increasing,
}

/// Closed-form term rule of a tail. The sign of the offset is fixed by the
/// tail direction: `+` for decreasing tails, `-` for increasing ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TailRule {
    /// `term(n) = limit +/- c / n^p`
    Harmonic { c: Rat, p: u32 },
    /// `term(n) = limit +/- c * r^n`
    Geometric { c: Rat, r: Rat },
}

#[derive(Serialize, Deserialize)]
struct RawTailRule {
    #[serde(rename = "type")]
    kind: String,
    #[serde(with = "rational::serde_rat")]
    c: Rat,
    #[serde(default)]
    p: Option<u32>,
    #[serde(default, with = "rational::serde_rat_opt")]
    r: Option<Rat>,
}

impl Serialize for TailRule {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let raw = match self {
            TailRule::Harmonic { c, p } => RawTailRule {
                kind: "harmonic".into(),
                c: c.clone(),
                p: Some(*p),
                r: None,
            },
            TailRule::Geometric { c, r } => RawTailRule {
                kind: "geometric".into(),
                c: c.clone(),
                p: None,
                r: Some(r.clone()),
            },
        };
        raw.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TailRule {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawTailRule::deserialize(de)?;
        match raw.kind.as_str() {
            "harmonic" => {
                let p = raw
                    .p
                    .ok_or_else(|| de::Error::custom("harmonic rule requires \"p\""))?;
                Ok(TailRule::Harmonic { c: raw.c, p })
            }
            "geometric" => {
                let r = raw
                    .r
                    .ok_or_else(|| de::Error::custom("geometric rule requires \"r\""))?;
                Ok(TailRule::Geometric { c: raw.c, r })
            }
            other => Err(de::Error::custom(format!(
                "unknown rule type {other:?} (expected \"harmonic\" or \"geometric\")"
            ))),
        }
    }
}

fn default_term_multiplicity() -> u64 {
    1
}

/// A strictly monotone eigenvalue sequence converging to `limit`, never
/// equal to it, with every term repeated `term_multiplicity` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TailSequence {
    #[serde(with = "rational::serde_rat")]
    pub limit: Rat,
    pub direction: TailDirection,
    pub rule: TailRule,
    #[serde(default = "default_term_multiplicity")]
    pub term_multiplicity: u64,
}

impl TailSequence {
    pub fn new(limit: Rat, direction: TailDirection, rule: TailRule) -> Self {
        TailSequence {
            limit,
            direction,
            rule,
            term_multiplicity: 1,
        }
    }

    pub fn harmonic(limit: Rat, direction: TailDirection, c: Rat, p: u32) -> Self {
        Self::new(limit, direction, TailRule::Harmonic { c, p })
    }

    pub fn geometric(limit: Rat, direction: TailDirection, c: Rat, r: Rat) -> Self {
        Self::new(limit, direction, TailRule::Geometric { c, r })
    }

    /// Exact value of the n-th term, `n >= 1`.
    pub fn term(&self, n: u64) -> Rat {
        debug_assert!(n >= 1, "tail terms are indexed from 1");
        let offset = match &self.rule {
            TailRule::Harmonic { c, p } => {
                let denom = Pow::pow(&BigInt::from(n), *p);
                c / Rat::from_integer(denom)
            }
            TailRule::Geometric { c, r } => {
                let exp = u32::try_from(n).expect("geometric term index exceeds u32");
                let rn = Rat::new(Pow::pow(r.numer(), exp), Pow::pow(r.denom(), exp));
                c * rn
            }
        };
        match self.direction {
            TailDirection::Decreasing => &self.limit + offset,
            TailDirection::Increasing => &self.limit - offset,
        }
    }

    /// The same rule translated by `delta` (used when shifting spectra by
    /// `-alpha` and back).
    pub fn shifted(&self, delta: &Rat) -> TailSequence {
        TailSequence {
            limit: &self.limit + delta,
            direction: self.direction,
            rule: self.rule.clone(),
            term_multiplicity: self.term_multiplicity,
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.limit.is_negative() {
            return Err(SpecError::NegativeValue("tail limit".into()));
        }
        if self.term_multiplicity == 0 {
            return Err(SpecError::ZeroMultiplicity);
        }
        match &self.rule {
            TailRule::Harmonic { c, p } => {
                if !c.is_positive() {
                    return Err(SpecError::InvalidRule("harmonic c must be positive".into()));
                }
                if *p == 0 {
                    return Err(SpecError::InvalidRule("harmonic p must be >= 1".into()));
                }
            }
            TailRule::Geometric { c, r } => {
                if !c.is_positive() {
                    return Err(SpecError::InvalidRule(
                        "geometric c must be positive".into(),
                    ));
                }
                if !r.is_positive() || r >= &Rat::from_integer(BigInt::from(1)) {
                    return Err(SpecError::InvalidRule(
                        "geometric ratio must lie in (0,1)".into(),
                    ));
                }
            }
        }
        // Increasing tails achieve their minimum at n = 1.
        if self.term(1).is_negative() {
            return Err(SpecError::InvalidRule(
                "tail term(1) is negative; eigenvalues must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// Where a value reported by [`SpectrumSpec::top_k_values`] came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueSource {
    Atom { index: usize },
    TailTerm { tail: usize, n: u64 },
}

/// Symbolic eigenvalue multiset of a positive diagonalizable operator.
///
/// Atoms and tails may overlap in value; multiplicities aggregate by
/// multiset union. Listing the same value twice therefore describes one
/// eigenvalue whose eigenspace is the sum of the listed dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSpec {
    #[serde(default)]
    pub atoms: Vec<EigenvalueAtom>,
    #[serde(default)]
    pub tails: Vec<TailSequence>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("{0} must be nonnegative")]
    NegativeValue(String),
    #[error("multiplicities must be >= 1")]
    ZeroMultiplicity,
    #[error("a spectrum needs at least one atom or tail")]
    EmptySpectrum,
    #[error("invalid tail rule: {0}")]
    InvalidRule(String),
}

/// How the distinct values accumulate at a limit point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    FromAbove,
    FromBelow,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitPoint {
    pub value: Rat,
    pub approach: Approach,
    /// Indices into `spec.tails` of every tail converging to this value.
    pub tails: Vec<usize>,
}

/// All limit points of the distinct-value set, sorted ascending.
/// Atoms never contribute: finitely many values cannot accumulate, and an
/// infinite-multiplicity atom still occupies a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitPointReport {
    pub points: Vec<LimitPoint>,
}

/// Outcome of one attainment condition with the elements that violate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub passes: bool,
    pub offending_atoms: Vec<usize>,
    pub offending_tails: Vec<usize>,
}

impl ConditionCheck {
    fn pass() -> Self {
        ConditionCheck {
            passes: true,
            offending_atoms: Vec::new(),
            offending_tails: Vec::new(),
        }
    }

    fn fail(atoms: Vec<usize>, tails: Vec<usize>) -> Self {
        ConditionCheck {
            passes: false,
            offending_atoms: atoms,
            offending_tails: tails,
        }
    }
}

/// First attainment condition that a spectrum violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionFailure {
    IncreasingApproach,
    TwoLimitPoints,
    TwoInfiniteMultiplicities,
    LimitNeqInfMult,
}

/// The four attainment conditions, each evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// (1) Every nonempty subset of eigenvalues attains its supremum.
    pub sup_attained_on_subsets: ConditionCheck,
    /// (2) At most one limit point, approached only from above.
    pub one_limit_from_above: ConditionCheck,
    /// (3) At most one distinct value of infinite multiplicity.
    pub one_infinite_multiplicity: ConditionCheck,
    /// (4) A limit point and an infinite-multiplicity value coincide when
    /// both exist.
    pub limit_equals_infinite_value: ConditionCheck,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.sup_attained_on_subsets.passes
            && self.one_limit_from_above.passes
            && self.one_infinite_multiplicity.passes
            && self.limit_equals_infinite_value.passes
    }

    /// Failures are prioritized in condition order (1) < (2) < (3) < (4).
    pub fn first_failure(&self) -> Option<ConditionFailure> {
        if !self.sup_attained_on_subsets.passes {
            Some(ConditionFailure::IncreasingApproach)
        } else if !self.one_limit_from_above.passes {
            Some(ConditionFailure::TwoLimitPoints)
        } else if !self.one_infinite_multiplicity.passes {
            Some(ConditionFailure::TwoInfiniteMultiplicities)
        } else if !self.limit_equals_infinite_value.passes {
            Some(ConditionFailure::LimitNeqInfMult)
        } else {
            None
        }
    }
}

/// Supremum of the represented values and whether it is an eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupNorm {
    pub norm: Rat,
    pub attained: bool,
}

impl SpectrumSpec {
    pub fn new(atoms: Vec<EigenvalueAtom>, tails: Vec<TailSequence>) -> Result<Self, SpecError> {
        let spec = SpectrumSpec { atoms, tails };
        spec.validate()?;
        Ok(spec)
    }

    pub fn atoms_only(atoms: Vec<EigenvalueAtom>) -> Result<Self, SpecError> {
        Self::new(atoms, Vec::new())
    }

    pub fn tails_only(tails: Vec<TailSequence>) -> Result<Self, SpecError> {
        Self::new(Vec::new(), tails)
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.atoms.is_empty() && self.tails.is_empty() {
            return Err(SpecError::EmptySpectrum);
        }
        for atom in &self.atoms {
            if atom.value.is_negative() {
                return Err(SpecError::NegativeValue("atom value".into()));
            }
            if atom.multiplicity == Multiplicity::Finite(0) {
                return Err(SpecError::ZeroMultiplicity);
            }
        }
        for tail in &self.tails {
            tail.validate()?;
        }
        Ok(())
    }

    /// Parses and validates the JSON schema
    /// `{"atoms": [{"value", "multiplicity"}], "tails": [...]}`.
    pub fn from_json_str(s: &str) -> Result<Self, String> {
        let spec: SpectrumSpec = serde_json::from_str(s).map_err(|e| e.to_string())?;
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("spectrum serialization cannot fail")
    }

    /// All values multiplied by a positive rational factor. Both rule shapes
    /// scale exactly: the harmonic/geometric coefficient absorbs the factor.
    pub fn scaled(&self, factor: &Rat) -> SpectrumSpec {
        assert!(factor.is_positive(), "scaling factor must be positive");
        let atoms = self
            .atoms
            .iter()
            .map(|a| EigenvalueAtom::new(&a.value * factor, a.multiplicity))
            .collect();
        let tails = self
            .tails
            .iter()
            .map(|t| TailSequence {
                limit: &t.limit * factor,
                direction: t.direction,
                rule: match &t.rule {
                    TailRule::Harmonic { c, p } => TailRule::Harmonic { c: c * factor, p: *p },
                    TailRule::Geometric { c, r } => TailRule::Geometric {
                        c: c * factor,
                        r: r.clone(),
                    },
                },
                term_multiplicity: t.term_multiplicity,
            })
            .collect();
        SpectrumSpec { atoms, tails }
    }

    /// The spectrum of the squared operator, when it is exactly expressible:
    /// atoms always square; a tail squares to a single closed form only for
    /// decreasing geometric tails with limit 0, where `(c*r^n)^2 = c^2*(r^2)^n`.
    pub fn squared_exact(&self) -> Option<SpectrumSpec> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| EigenvalueAtom::new(&a.value * &a.value, a.multiplicity))
            .collect();
        let mut tails = Vec::with_capacity(self.tails.len());
        for t in &self.tails {
            match (&t.rule, t.direction) {
                (TailRule::Geometric { c, r }, TailDirection::Decreasing) if t.limit.is_zero() => {
                    tails.push(TailSequence {
                        limit: Rat::zero(),
                        direction: TailDirection::Decreasing,
                        rule: TailRule::Geometric {
                            c: c * c,
                            r: r * r,
                        },
                        term_multiplicity: t.term_multiplicity,
                    });
                }
                _ => return None,
            }
        }
        Some(SpectrumSpec { atoms, tails })
    }

    /// Canonical form for structural comparison: atoms aggregated by value
    /// (infinite absorbs finite), sorted ascending; tails sorted by a
    /// deterministic key. Represents the same multiset.
    pub fn canonical(&self) -> SpectrumSpec {
        let mut grouped: BTreeMap<Rat, Multiplicity> = BTreeMap::new();
        for atom in &self.atoms {
            grouped
                .entry(atom.value.clone())
                .and_modify(|m| {
                    *m = match (*m, atom.multiplicity) {
                        (Multiplicity::Finite(a), Multiplicity::Finite(b)) => {
                            Multiplicity::Finite(a + b)
                        }
                        _ => Multiplicity::Infinite,
                    }
                })
                .or_insert(atom.multiplicity);
        }
        let atoms = grouped
            .into_iter()
            .map(|(value, multiplicity)| EigenvalueAtom {
                value,
                multiplicity,
            })
            .collect();
        let mut tails = self.tails.clone();
        tails.sort_by(|a, b| tail_sort_key(a).cmp(&tail_sort_key(b)));
        SpectrumSpec { atoms, tails }
    }

    /// Limit points of the distinct-value set: exactly the tail limits.
    pub fn limit_points(&self) -> LimitPointReport {
        let mut grouped: BTreeMap<Rat, (bool, bool, Vec<usize>)> = BTreeMap::new();
        for (i, tail) in self.tails.iter().enumerate() {
            let entry = grouped
                .entry(tail.limit.clone())
                .or_insert((false, false, Vec::new()));
            match tail.direction {
                TailDirection::Decreasing => entry.0 = true,
                TailDirection::Increasing => entry.1 = true,
            }
            entry.2.push(i);
        }
        let points = grouped
            .into_iter()
            .map(|(value, (above, below, tails))| LimitPoint {
                value,
                approach: match (above, below) {
                    (true, true) => Approach::Both,
                    (true, false) => Approach::FromAbove,
                    (false, true) => Approach::FromBelow,
                    (false, false) => unreachable!("limit point without a source tail"),
                },
                tails,
            })
            .collect();
        LimitPointReport { points }
    }

    /// Distinct values carrying infinite multiplicity, with the indices of
    /// the atoms that contribute to each.
    fn infinite_value_groups(&self) -> BTreeMap<Rat, Vec<usize>> {
        let mut grouped: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
        for (i, atom) in self.atoms.iter().enumerate() {
            if atom.multiplicity.is_infinite() {
                grouped.entry(atom.value.clone()).or_default().push(i);
            }
        }
        grouped
    }

    /// Evaluates the four attainment conditions independently.
    pub fn check_conditions(&self) -> ConditionReport {
        let increasing: Vec<usize> = self
            .tails
            .iter()
            .enumerate()
            .filter(|(_, t)| t.direction == TailDirection::Increasing)
            .map(|(i, _)| i)
            .collect();

        let limit_report = self.limit_points();
        let distinct_limits = limit_report.points.len();
        let inf_groups = self.infinite_value_groups();

        let sup_attained_on_subsets = if increasing.is_empty() {
            ConditionCheck::pass()
        } else {
            ConditionCheck::fail(Vec::new(), increasing.clone())
        };

        let one_limit_from_above = if distinct_limits > 1 {
            ConditionCheck::fail(Vec::new(), (0..self.tails.len()).collect())
        } else if !increasing.is_empty() {
            ConditionCheck::fail(Vec::new(), increasing)
        } else {
            ConditionCheck::pass()
        };

        let one_infinite_multiplicity = if inf_groups.len() > 1 {
            let atoms = inf_groups.values().flatten().copied().collect();
            ConditionCheck::fail(atoms, Vec::new())
        } else {
            ConditionCheck::pass()
        };

        let limit_equals_infinite_value = if distinct_limits == 1 && inf_groups.len() == 1 {
            let limit = &limit_report.points[0].value;
            let (inf_value, inf_atoms) = inf_groups.iter().next().expect("one group");
            if limit == inf_value {
                ConditionCheck::pass()
            } else {
                ConditionCheck::fail(inf_atoms.clone(), limit_report.points[0].tails.clone())
            }
        } else {
            ConditionCheck::pass()
        };

        ConditionReport {
            sup_attained_on_subsets,
            one_limit_from_above,
            one_infinite_multiplicity,
            limit_equals_infinite_value,
        }
    }

    /// Supremum of all represented values; `attained` records whether some
    /// eigenvalue (atom or tail term) realizes it. An increasing tail
    /// contributes its limit to the supremum without attaining it.
    pub fn sup_norm(&self) -> SupNorm {
        let mut best: Option<(Rat, bool)> = None;
        let mut consider = |value: Rat, attained: bool| match &mut best {
            None => best = Some((value, attained)),
            Some((v, a)) => {
                if value > *v {
                    *v = value;
                    *a = attained;
                } else if value == *v {
                    *a = *a || attained;
                }
            }
        };
        for atom in &self.atoms {
            consider(atom.value.clone(), true);
        }
        for tail in &self.tails {
            match tail.direction {
                TailDirection::Decreasing => consider(tail.term(1), true),
                TailDirection::Increasing => consider(tail.limit.clone(), false),
            }
        }
        let (norm, attained) = best.expect("validated spectra are nonempty");
        SupNorm { norm, attained }
    }

    /// The first `k` values of the canonical non-increasing enumeration of
    /// the spectrum, with provenance.
    ///
    /// The enumeration lists the values strictly above every limit point in
    /// non-increasing order (an infinite stream whenever a decreasing tail
    /// converges to the largest limit); only when that supply is exhausted do
    /// atoms at or below the limits follow, again by descending value.
    /// Increasing tails are never enumerated: their terms have no maximum, so
    /// no non-increasing enumeration can include them. Ties break atoms
    /// before tails, then by declaration order. The result is shorter than
    /// `k` exactly when the enumerable supply runs out.
    pub fn top_k_values(&self, k: usize) -> Vec<(Rat, ValueSource)> {
        assert!(k >= 1, "top_k_values requires k >= 1");
        let max_limit: Option<Rat> = self.tails.iter().map(|t| t.limit.clone()).max();
        let above = |v: &Rat| max_limit.as_ref().map_or(true, |m| v > m);

        struct AtomStream {
            index: usize,
            value: Rat,
            remaining: u64,
        }
        struct TailStream {
            index: usize,
            n: u64,
            head: Rat,
            head_remaining: u64,
        }

        let supply = |m: Multiplicity| match m {
            Multiplicity::Finite(n) => n,
            // An infinite atom can contribute at most k copies.
            Multiplicity::Infinite => k as u64,
        };

        let mut atom_streams: Vec<AtomStream> = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| above(&a.value))
            .map(|(index, a)| AtomStream {
                index,
                value: a.value.clone(),
                remaining: supply(a.multiplicity),
            })
            .collect();
        let mut tail_streams: Vec<TailStream> = self
            .tails
            .iter()
            .enumerate()
            .filter(|(_, t)| t.direction == TailDirection::Decreasing)
            .filter_map(|(index, t)| {
                let head = t.term(1);
                above(&head).then(|| TailStream {
                    index,
                    n: 1,
                    head,
                    head_remaining: t.term_multiplicity,
                })
            })
            .collect();

        let mut out: Vec<(Rat, ValueSource)> = Vec::with_capacity(k);
        while out.len() < k {
            let best_atom = atom_streams
                .iter()
                .enumerate()
                .filter(|(_, s)| s.remaining > 0)
                .max_by(|(ia, a), (ib, b)| a.value.cmp(&b.value).then(ib.cmp(ia)));
            let best_tail = tail_streams
                .iter()
                .enumerate()
                .max_by(|(ia, a), (ib, b)| a.head.cmp(&b.head).then(ib.cmp(ia)));

            let take_atom = match (&best_atom, &best_tail) {
                (Some((_, a)), Some((_, t))) => a.value >= t.head,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };

            if take_atom {
                let (pos, _) = best_atom.expect("checked above");
                let s = &mut atom_streams[pos];
                out.push((s.value.clone(), ValueSource::Atom { index: s.index }));
                s.remaining -= 1;
            } else {
                let (pos, _) = best_tail.expect("checked above");
                let s = &mut tail_streams[pos];
                out.push((
                    s.head.clone(),
                    ValueSource::TailTerm {
                        tail: s.index,
                        n: s.n,
                    },
                ));
                s.head_remaining -= 1;
                if s.head_remaining == 0 {
                    s.n += 1;
                    s.head = self.tails[s.index].term(s.n);
                    s.head_remaining = self.tails[s.index].term_multiplicity;
                    if !above(&s.head) {
                        tail_streams.remove(pos);
                    }
                }
            }
        }

        if out.len() < k {
            // Supply above the limits is exhausted; append the remaining
            // atoms (at or below the limits) by descending value.
            let mut rest: Vec<(usize, &EigenvalueAtom)> = self
                .atoms
                .iter()
                .enumerate()
                .filter(|(_, a)| !above(&a.value))
                .collect();
            rest.sort_by(|(_, a), (_, b)| b.value.cmp(&a.value));
            'outer: for (index, atom) in rest {
                for _ in 0..supply(atom.multiplicity) {
                    if out.len() == k {
                        break 'outer;
                    }
                    out.push((atom.value.clone(), ValueSource::Atom { index }));
                }
            }
        }
        out
    }
}

fn tail_sort_key(t: &TailSequence) -> (Rat, u8, u8, Rat, Rat, u64) {
    match &t.rule {
        TailRule::Harmonic { c, p } => (
            t.limit.clone(),
            t.direction as u8,
            0,
            c.clone(),
            Rat::from_integer(BigInt::from(*p)),
            t.term_multiplicity,
        ),
        TailRule::Geometric { c, r } => (
            t.limit.clone(),
            t.direction as u8,
            1,
            c.clone(),
            r.clone(),
            t.term_multiplicity,
        ),
    }
}

impl fmt::Display for SupNorm {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(
            f,
            "{} ({})",
            format_rat(&self.norm),
            if self.attained {
                "attained"
            } else {
                "not attained"
            }
        )
    }
}
