//! Explicit subspace constructions proving that an operator fails to attain
//! its norm on some closed subspace.
//!
//! Each failure mode of the four attainment conditions has a matching
//! construction. The common shape: pick two orthonormal eigenvector families
//! `f_n` (eigenvalues `a_n`) and `g_n` (eigenvalues `b_n`), choose a target
//! sequence `gamma_n` strictly increasing to the supremum, and form
//!
//! ```text
//! e_n = c_n * f_n + sqrt(1 - c_n^2) * g_n,
//! ```
//!
//! solving `c_n^2 * a_n^2 + (1 - c_n^2) * b_n^2 = gamma_n^2` exactly in
//! rationals. The closed span M of the `e_n` then satisfies
//! `||T x|| < sup_n gamma_n = ||T|_M||` for every unit vector `x` in M, so
//! the restriction never attains its norm. A [`WitnessPlan`] stores the
//! closed-form rules; materialization to a finite matrix happens only at
//! emission time, so exactness is never lost.
//!
//! Convention used throughout: `a_rule` is the family weighted by `c_n`,
//! `b_rule` the family weighted by `sqrt(1 - c_n^2)`. The basis labels `f_n`
//! and `g_n` keep their construction-specific meaning (`f_n` for the first
//! family, `g_n` for the second); in the `LimitVsInfMult_LimitAbove`
//! construction the weight `c_n` sits on `g_n`, not `f_n`.

use crate::rational::{format_rat, parse_rat, rat, Rat};
use crate::spectrum::{TailDirection, TailRule, TailSequence};
use num_bigint::BigInt;
use num_traits::{One, Pow, Signed};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Which attainment failure a plan certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    IncreasingApproach,
    TwoLimitPoints,
    TwoInfiniteMultiplicities,
    #[serde(rename = "LimitVsInfMult_LimitBelow")]
    LimitVsInfMultLimitBelow,
    #[serde(rename = "LimitVsInfMult_LimitAbove")]
    LimitVsInfMultLimitAbove,
}

/// Closed-form term rule for an eigenvalue or target sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SequenceRule {
    Constant {
        #[serde(with = "crate::rational::serde_rat")]
        value: Rat,
    },
    /// `term(n) = base + coeff / (n + offset)^p`; `coeff` may be negative.
    /// The offset implements exact re-indexing of a tail.
    Harmonic {
        #[serde(with = "crate::rational::serde_rat")]
        base: Rat,
        #[serde(with = "crate::rational::serde_rat")]
        coeff: Rat,
        p: u32,
        offset: u64,
    },
    /// `term(n) = base + coeff * r^n`; `coeff` may be negative. Re-indexing
    /// by `s` is absorbed into the coefficient as `coeff * r^s`.
    Geometric {
        #[serde(with = "crate::rational::serde_rat")]
        base: Rat,
        #[serde(with = "crate::rational::serde_rat")]
        coeff: Rat,
        #[serde(with = "crate::rational::serde_rat")]
        r: Rat,
    },
}

impl SequenceRule {
    pub fn constant(value: Rat) -> Self {
        SequenceRule::Constant { value }
    }

    /// The tail's own term rule, `term(n)` for `n >= 1`.
    pub fn from_tail(tail: &TailSequence) -> Self {
        Self::from_tail_reindexed(tail, 0)
    }

    /// The tail re-indexed to start at term `shift + 1`: rule `n`-th value
    /// equals `tail.term(n + shift)`, exactly.
    pub fn from_tail_reindexed(tail: &TailSequence, shift: u64) -> Self {
        let sign = match tail.direction {
            TailDirection::Decreasing => Rat::one(),
            TailDirection::Increasing => -Rat::one(),
        };
        match &tail.rule {
            TailRule::Harmonic { c, p } => SequenceRule::Harmonic {
                base: tail.limit.clone(),
                coeff: c * &sign,
                p: *p,
                offset: shift,
            },
            TailRule::Geometric { c, r } => {
                let exp = u32::try_from(shift).expect("re-index shift exceeds u32");
                let rs = Rat::new(Pow::pow(r.numer(), exp), Pow::pow(r.denom(), exp));
                SequenceRule::Geometric {
                    base: tail.limit.clone(),
                    coeff: c * &sign * rs,
                    r: r.clone(),
                }
            }
        }
    }

    /// Exact value of the n-th term, `n >= 1`.
    pub fn eval(&self, n: u64) -> Rat {
        debug_assert!(n >= 1, "sequence rules are indexed from 1");
        match self {
            SequenceRule::Constant { value } => value.clone(),
            SequenceRule::Harmonic {
                base,
                coeff,
                p,
                offset,
            } => {
                let denom = Pow::pow(&BigInt::from(n + offset), *p);
                base + coeff / Rat::from_integer(denom)
            }
            SequenceRule::Geometric { base, coeff, r } => {
                let exp = u32::try_from(n).expect("term index exceeds u32");
                let rn = Rat::new(Pow::pow(r.numer(), exp), Pow::pow(r.denom(), exp));
                base + coeff * rn
            }
        }
    }

    /// The limit of the sequence as n grows.
    pub fn limit(&self) -> Rat {
        match self {
            SequenceRule::Constant { value } => value.clone(),
            SequenceRule::Harmonic { base, .. } => base.clone(),
            SequenceRule::Geometric { base, .. } => base.clone(),
        }
    }
}

/// How `c_n^2` is computed from the plan's sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CSquaredRule {
    /// Single-family plans: `c_n^2 = 1`.
    One,
    /// Solve the convex combination for the target norm:
    /// `c_n^2 = (b_n^2 - gamma_n^2) / (b_n^2 - a_n^2)`.
    ConvexSolve,
}

const CONVEX_SOLVE_TOKEN: &str = "(b_n^2 - gamma_n^2)/(b_n^2 - a_n^2)";

impl Serialize for CSquaredRule {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            CSquaredRule::One => ser.serialize_str("1"),
            CSquaredRule::ConvexSolve => ser.serialize_str(CONVEX_SOLVE_TOKEN),
        }
    }
}

impl<'de> Deserialize<'de> for CSquaredRule {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct RuleVisitor;

        impl<'de> Visitor<'de> for RuleVisitor {
            type Value = CSquaredRule;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "\"1\" or \"{CONVEX_SOLVE_TOKEN}\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<CSquaredRule, E> {
                match v {
                    "1" => Ok(CSquaredRule::One),
                    CONVEX_SOLVE_TOKEN => Ok(CSquaredRule::ConvexSolve),
                    other => Err(de::Error::custom(format!(
                        "unknown c_squared rule {other:?}"
                    ))),
                }
            }
        }

        de.deserialize_str(RuleVisitor)
    }
}

/// A closed-form recipe for a subspace on which the operator fails to
/// attain its norm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPlan {
    pub kind: WitnessKind,
    /// Eigenvalues of the family weighted by `c_n`.
    pub a_rule: SequenceRule,
    /// Eigenvalues of the family weighted by `sqrt(1 - c_n^2)`; absent for
    /// single-family plans.
    pub b_rule: Option<SequenceRule>,
    /// Target norms: `||T e_n|| = gamma_n`, strictly increasing to
    /// `sup_value` and never reaching it.
    pub gamma_rule: SequenceRule,
    pub c_squared_rule: CSquaredRule,
    /// Human-readable description of which basis indices host `f_n`/`g_n`.
    pub pairing: String,
    /// `||T|_M||`, the supremum the restriction approaches but never attains.
    #[serde(with = "crate::rational::serde_rat")]
    pub sup_value: Rat,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("the two tails share the limit {0}; two distinct limit points are required")]
    DegenerateTails(String),
    #[error("limit point and infinite-multiplicity value coincide at {0}; no witness exists")]
    EqualValues(String),
}

/// One emitted basis vector `e_n`, with the exact coefficient square and the
/// ambient basis indices hosting its two components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVectorPlan {
    pub n: u64,
    pub c_squared: Rat,
    pub f_index: usize,
    pub g_index: Option<usize>,
}

impl WitnessPlan {
    pub fn a(&self, n: u64) -> Rat {
        self.a_rule.eval(n)
    }

    pub fn b(&self, n: u64) -> Option<Rat> {
        self.b_rule.as_ref().map(|r| r.eval(n))
    }

    pub fn gamma(&self, n: u64) -> Rat {
        self.gamma_rule.eval(n)
    }

    /// Exact `c_n^2`.
    pub fn c_squared(&self, n: u64) -> Rat {
        match self.c_squared_rule {
            CSquaredRule::One => Rat::one(),
            CSquaredRule::ConvexSolve => {
                let a = self.a(n);
                let b = self.b(n).expect("two-family plan with ConvexSolve");
                let g = self.gamma(n);
                (&b * &b - &g * &g) / (&b * &b - &a * &a)
            }
        }
    }

    /// True when the `c_n` weight sits on the `g_n` family rather than `f_n`
    /// (only in the LimitAbove construction, where the roles are swapped).
    pub fn c_weight_on_g(&self) -> bool {
        self.kind == WitnessKind::LimitVsInfMultLimitAbove
    }

    pub fn is_two_family(&self) -> bool {
        self.b_rule.is_some()
    }

    /// Ambient dimension needed to host the first `n_max` basis vectors.
    pub fn ambient_dimension(&self, n_max: u64) -> usize {
        let n = usize::try_from(n_max).expect("truncation size fits usize");
        if self.is_two_family() {
            2 * n
        } else {
            n
        }
    }

    /// Ambient index of `f_n` (1-based n).
    pub fn f_index(&self, n: u64) -> usize {
        let n = usize::try_from(n).expect("basis index fits usize");
        if self.is_two_family() {
            2 * (n - 1)
        } else {
            n - 1
        }
    }

    /// Ambient index of `g_n` (1-based n), for two-family plans.
    pub fn g_index(&self, n: u64) -> Option<usize> {
        self.is_two_family().then(|| {
            let n = usize::try_from(n).expect("basis index fits usize");
            2 * n - 1
        })
    }

    /// `c_n^2 a_n^2 + (1 - c_n^2) b_n^2 = gamma_n^2` as exact rationals.
    pub fn identity_holds_at(&self, n: u64) -> bool {
        let c2 = self.c_squared(n);
        let a = self.a(n);
        let g = self.gamma(n);
        let lhs = match self.b(n) {
            Some(b) => &c2 * &a * &a + (Rat::one() - &c2) * &b * &b,
            None => &c2 * &a * &a,
        };
        lhs == &g * &g
    }

    /// Checks every plan invariant for `n = 1..=n_max`: the rational
    /// identity, `c_n^2` in `[0,1]`, `gamma_n` strictly increasing and
    /// strictly below `sup_value`.
    pub fn validate_up_to(&self, n_max: u64) -> Result<(), String> {
        let mut prev: Option<Rat> = None;
        for n in 1..=n_max {
            if !self.identity_holds_at(n) {
                return Err(format!("convex identity fails at n = {n}"));
            }
            let c2 = self.c_squared(n);
            if c2.is_negative() || c2 > Rat::one() {
                return Err(format!("c_{n}^2 = {} outside [0,1]", format_rat(&c2)));
            }
            let g = self.gamma(n);
            if g >= self.sup_value {
                return Err(format!("gamma_{n} does not stay below the supremum"));
            }
            if let Some(p) = prev {
                if g <= p {
                    return Err(format!("gamma is not strictly increasing at n = {n}"));
                }
            }
            prev = Some(g);
        }
        Ok(())
    }

    /// The first `n_max` basis-vector recipes.
    pub fn emit_basis_vectors(&self, n_max: u64) -> Vec<BasisVectorPlan> {
        assert!(n_max >= 1, "at least one basis vector must be emitted");
        (1..=n_max)
            .map(|n| BasisVectorPlan {
                n,
                c_squared: self.c_squared(n),
                f_index: self.f_index(n),
                g_index: self.g_index(n),
            })
            .collect()
    }

    /// CSV with header `n,c_n_squared,f_index,g_index`; the `g_index` cell
    /// is empty for single-family plans.
    pub fn emit_basis_csv(&self, n_max: u64) -> String {
        let mut out = String::from("n,c_n_squared,f_index,g_index\n");
        for row in self.emit_basis_vectors(n_max) {
            let g = row
                .g_index
                .map(|g| g.to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                format_rat(&row.c_squared),
                row.f_index,
                g
            ));
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("witness serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }
}

/// Witness for an increasing tail: the span of the tail's own eigenvectors.
/// The restricted norm is the tail limit, approached but never attained.
pub fn witness_increasing(tail: &TailSequence) -> WitnessPlan {
    assert_eq!(
        tail.direction,
        TailDirection::Increasing,
        "witness_increasing requires an increasing tail"
    );
    let rule = SequenceRule::from_tail(tail);
    WitnessPlan {
        kind: WitnessKind::IncreasingApproach,
        a_rule: rule.clone(),
        b_rule: None,
        gamma_rule: rule,
        c_squared_rule: CSquaredRule::One,
        pairing: "e_n is the eigenvector for the n-th tail term; ambient index n-1".into(),
        sup_value: tail.limit.clone(),
    }
}

/// Smallest re-index shift `s >= 0` such that `tail.term(1 + s) <= bound`
/// (strictly below when `strict`). Terms of a decreasing tail fall below any
/// bound above the limit after finitely many steps.
fn reindex_shift(tail: &TailSequence, bound: &Rat, strict: bool) -> u64 {
    let mut shift = 0u64;
    loop {
        let t = tail.term(1 + shift);
        let ok = if strict { &t < bound } else { &t <= bound };
        if ok {
            return shift;
        }
        shift += 1;
    }
}

/// Witness for two distinct limit points `a < b`: alternate eigenvectors
/// from the two tails and aim the combined norms at `b` from below.
pub fn witness_two_limit_points(
    tail_a: &TailSequence,
    tail_b: &TailSequence,
) -> Result<WitnessPlan, WitnessError> {
    assert_eq!(tail_a.direction, TailDirection::Decreasing);
    assert_eq!(tail_b.direction, TailDirection::Decreasing);
    if tail_a.limit == tail_b.limit {
        return Err(WitnessError::DegenerateTails(format_rat(&tail_a.limit)));
    }
    // Order so that a < b.
    let (tail_a, tail_b) = if tail_a.limit < tail_b.limit {
        (tail_a, tail_b)
    } else {
        (tail_b, tail_a)
    };
    let b = tail_b.limit.clone();
    // Re-index the lower tail so its first term already sits below b; the
    // targets gamma_n then dominate every a_n.
    let shift = reindex_shift(tail_a, &b, true);
    let a_rule = SequenceRule::from_tail_reindexed(tail_a, shift);
    let a1 = a_rule.eval(1);
    let gamma_rule = SequenceRule::Harmonic {
        base: b.clone(),
        coeff: (&a1 - &b) / rat(2, 1),
        p: 1,
        offset: 0,
    };
    Ok(WitnessPlan {
        kind: WitnessKind::TwoLimitPoints,
        a_rule,
        b_rule: Some(SequenceRule::from_tail(tail_b)),
        gamma_rule,
        c_squared_rule: CSquaredRule::ConvexSolve,
        pairing:
            "f_n (lower-tail eigenvector) at ambient index 2(n-1), g_n (upper-tail) at 2n-1"
                .into(),
        sup_value: b,
    })
}

/// Witness for two distinct infinite-multiplicity values `beta1 < beta2`:
/// both families are constant, drawn from the two infinite eigenspaces.
pub fn witness_two_infmult(beta1: &Rat, beta2: &Rat) -> Result<WitnessPlan, WitnessError> {
    if beta1 == beta2 {
        return Err(WitnessError::EqualValues(format_rat(beta1)));
    }
    let (lo, hi) = if beta1 < beta2 {
        (beta1.clone(), beta2.clone())
    } else {
        (beta2.clone(), beta1.clone())
    };
    let gamma_rule = SequenceRule::Harmonic {
        base: hi.clone(),
        coeff: (&lo - &hi) / rat(2, 1),
        p: 1,
        offset: 0,
    };
    Ok(WitnessPlan {
        kind: WitnessKind::TwoInfiniteMultiplicities,
        a_rule: SequenceRule::constant(lo),
        b_rule: Some(SequenceRule::constant(hi.clone())),
        gamma_rule,
        c_squared_rule: CSquaredRule::ConvexSolve,
        pairing: "f_n (lower eigenspace) at ambient index 2(n-1), g_n (upper) at 2n-1".into(),
        sup_value: hi,
    })
}

/// Witness for a lone limit point differing from the lone
/// infinite-multiplicity value. `tail` must be the decreasing tail realizing
/// the limit. The sub-case is picked by the sign of `limit - infmult`.
pub fn witness_limit_vs_infmult(
    limit: &Rat,
    infmult: &Rat,
    tail: &TailSequence,
) -> Result<WitnessPlan, WitnessError> {
    assert_eq!(tail.direction, TailDirection::Decreasing);
    assert_eq!(
        &tail.limit, limit,
        "tail must realize the limit point it witnesses"
    );
    if limit == infmult {
        return Err(WitnessError::EqualValues(format_rat(limit)));
    }
    if limit < infmult {
        // Tail terms are c-weighted and must not exceed the first target
        // gamma_1 = (limit + infmult)/2; re-index until they sit at or
        // below it.
        let gamma1 = (limit + infmult) / rat(2, 1);
        let shift = reindex_shift(tail, &gamma1, false);
        let gamma_rule = SequenceRule::Harmonic {
            base: infmult.clone(),
            coeff: (limit - infmult) / rat(2, 1),
            p: 1,
            offset: 0,
        };
        Ok(WitnessPlan {
            kind: WitnessKind::LimitVsInfMultLimitBelow,
            a_rule: SequenceRule::from_tail_reindexed(tail, shift),
            b_rule: Some(SequenceRule::constant(infmult.clone())),
            gamma_rule,
            c_squared_rule: CSquaredRule::ConvexSolve,
            pairing:
                "f_n (tail eigenvector) at ambient index 2(n-1), g_n (infinite eigenspace) at 2n-1"
                    .into(),
            sup_value: infmult.clone(),
        })
    } else {
        // The infinite-multiplicity vectors carry the c_n weight here: the
        // targets climb to the limit point from below, squeezed between the
        // constant value and the tail terms.
        let gamma_rule = SequenceRule::Harmonic {
            base: limit.clone(),
            coeff: (infmult - limit) / rat(2, 1),
            p: 1,
            offset: 0,
        };
        Ok(WitnessPlan {
            kind: WitnessKind::LimitVsInfMultLimitAbove,
            a_rule: SequenceRule::constant(infmult.clone()),
            b_rule: Some(SequenceRule::from_tail(tail)),
            gamma_rule,
            c_squared_rule: CSquaredRule::ConvexSolve,
            pairing:
                "f_n (tail eigenvector) at ambient index 2(n-1), g_n (infinite eigenspace) at 2n-1; c_n weights g_n"
                    .into(),
            sup_value: limit.clone(),
        })
    }
}

/// Parses a c_n^2 cell of the basis CSV back to an exact rational.
pub fn parse_c_squared_cell(cell: &str) -> Result<Rat, String> {
    parse_rat(cell).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn dec(limit: Rat, c: Rat) -> TailSequence {
        TailSequence::harmonic(limit, TailDirection::Decreasing, c, 1)
    }

    #[test]
    fn increasing_witness_tracks_tail_terms() {
        let tail = TailSequence::harmonic(rat_int(2), TailDirection::Increasing, rat_int(1), 1);
        let plan = witness_increasing(&tail);
        assert_eq!(plan.kind, WitnessKind::IncreasingApproach);
        assert_eq!(plan.sup_value, rat_int(2));
        assert_eq!(plan.gamma(1), rat_int(1));
        assert_eq!(plan.gamma(100), rat(199, 100));
        assert_eq!(plan.c_squared(7), rat_int(1));
        assert!(plan.b_rule.is_none());
        plan.validate_up_to(200).unwrap();
    }

    #[test]
    fn increasing_witness_geometric() {
        let tail = TailSequence::geometric(
            rat_int(1),
            TailDirection::Increasing,
            rat(1, 2),
            rat(1, 2),
        );
        let plan = witness_increasing(&tail);
        assert_eq!(plan.sup_value, rat_int(1));
        assert_eq!(plan.gamma(1), rat(3, 4));
        assert_eq!(plan.gamma(2), rat(7, 8));
        plan.validate_up_to(30).unwrap();
    }

    #[test]
    fn two_limit_points_frozen_example() {
        let tail_a = dec(rat_int(1), rat(1, 2)); // 1 + 1/(2n)
        let tail_b = dec(rat_int(2), rat_int(1)); // 2 + 1/n
        let plan = witness_two_limit_points(&tail_a, &tail_b).unwrap();
        assert_eq!(plan.kind, WitnessKind::TwoLimitPoints);
        assert_eq!(plan.sup_value, rat_int(2));
        assert_eq!(plan.gamma(1), rat(7, 4));
        assert_eq!(plan.c_squared(1), rat(95, 108));
        assert_eq!(plan.a(1), rat(3, 2));
        assert_eq!(plan.b(1).unwrap(), rat_int(3));
        plan.validate_up_to(500).unwrap();
    }

    #[test]
    fn two_limit_points_orders_arguments() {
        let tail_a = dec(rat_int(1), rat(1, 2));
        let tail_b = dec(rat_int(2), rat_int(1));
        let swapped = witness_two_limit_points(&tail_b, &tail_a).unwrap();
        let straight = witness_two_limit_points(&tail_a, &tail_b).unwrap();
        assert_eq!(swapped, straight);
    }

    #[test]
    fn two_limit_points_reindexes_high_first_terms() {
        // term(1) = 1 + 5/2 = 7/2 >= 2, term(2) = 9/4 >= 2, term(3) = 11/6 < 2.
        let tail_a = dec(rat_int(1), rat(5, 2));
        let tail_b = dec(rat_int(2), rat_int(1));
        let plan = witness_two_limit_points(&tail_a, &tail_b).unwrap();
        assert_eq!(plan.a(1), rat(11, 6));
        assert_eq!(
            plan.a_rule,
            SequenceRule::Harmonic {
                base: rat_int(1),
                coeff: rat(5, 2),
                p: 1,
                offset: 2
            }
        );
        plan.validate_up_to(500).unwrap();
    }

    #[test]
    fn two_limit_points_rejects_equal_limits() {
        let t1 = dec(rat_int(1), rat(1, 2));
        let t2 = dec(rat_int(1), rat_int(1));
        assert_eq!(
            witness_two_limit_points(&t1, &t2).unwrap_err(),
            WitnessError::DegenerateTails("1".into())
        );
    }

    #[test]
    fn two_infmult_frozen_example() {
        let plan = witness_two_infmult(&rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(plan.sup_value, rat_int(1));
        assert_eq!(plan.gamma(1), rat(1, 2));
        assert_eq!(plan.c_squared(1), rat(3, 4));
        assert_eq!(plan.c_squared(2), rat(7, 16)); // 1/2 - 1/16
        for n in 1..=50u64 {
            // c_n^2 = 1/n - 1/(4n^2) here.
            let expected = rat(1, n as i64) - rat(1, 4 * (n * n) as i64);
            assert_eq!(plan.c_squared(n), expected);
        }
        plan.validate_up_to(1000).unwrap();
    }

    #[test]
    fn two_infmult_rejects_equal_values() {
        assert_eq!(
            witness_two_infmult(&rat(1, 2), &rat(1, 2)).unwrap_err(),
            WitnessError::EqualValues("1/2".into())
        );
    }

    #[test]
    fn limit_below_frozen_example() {
        // Limit 1 via tail 1 + 1/n, infinite value 3.
        let tail = dec(rat_int(1), rat_int(1));
        let plan = witness_limit_vs_infmult(&rat_int(1), &rat_int(3), &tail).unwrap();
        assert_eq!(plan.kind, WitnessKind::LimitVsInfMultLimitBelow);
        assert_eq!(plan.sup_value, rat_int(3));
        assert_eq!(plan.gamma(1), rat_int(2));
        assert_eq!(plan.gamma(2), rat(5, 2));
        assert_eq!(plan.a(1), rat_int(2)); // no re-index: term(1) = 2 <= 2
        assert_eq!(plan.c_squared(1), rat_int(1));
        assert_eq!(plan.c_squared(2), rat(11, 27));
        assert!(!plan.c_weight_on_g());
        plan.validate_up_to(500).unwrap();
    }

    #[test]
    fn limit_below_reindexes_until_terms_clear_first_target() {
        // Tail 1 + 3/(2n): term(1) = 5/2 > 2 = gamma_1, term(2) = 7/4 <= 2.
        let tail = dec(rat_int(1), rat(3, 2));
        let plan = witness_limit_vs_infmult(&rat_int(1), &rat_int(3), &tail).unwrap();
        assert_eq!(plan.a(1), rat(7, 4));
        assert_eq!(plan.c_squared(1), rat(16, 19));
        plan.validate_up_to(500).unwrap();
    }

    #[test]
    fn limit_above_swaps_weight_onto_constant_family() {
        // Limit 2 via tail 2 + 1/n, infinite value 1.
        let tail = dec(rat_int(2), rat_int(1));
        let plan = witness_limit_vs_infmult(&rat_int(2), &rat_int(1), &tail).unwrap();
        assert_eq!(plan.kind, WitnessKind::LimitVsInfMultLimitAbove);
        assert_eq!(plan.sup_value, rat_int(2));
        assert_eq!(plan.gamma(1), rat(3, 2));
        assert_eq!(plan.a(1), rat_int(1));
        assert_eq!(plan.b(1).unwrap(), rat_int(3));
        assert_eq!(plan.c_squared(1), rat(27, 32));
        assert!(plan.c_weight_on_g());
        plan.validate_up_to(500).unwrap();
    }

    #[test]
    fn limit_vs_infmult_rejects_equal_values() {
        let tail = dec(rat_int(1), rat_int(1));
        assert_eq!(
            witness_limit_vs_infmult(&rat_int(1), &rat_int(1), &tail).unwrap_err(),
            WitnessError::EqualValues("1".into())
        );
    }

    #[test]
    fn emitted_vectors_use_disjoint_indices() {
        let plan = witness_two_infmult(&rat_int(0), &rat_int(1)).unwrap();
        let rows = plan.emit_basis_vectors(4);
        assert_eq!(rows.len(), 4);
        let mut seen = Vec::new();
        for row in &rows {
            seen.push(row.f_index);
            seen.push(row.g_index.unwrap());
            assert!(!row.c_squared.is_negative());
            assert!(row.c_squared <= rat_int(1));
        }
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 8);
        assert_eq!(rows[0].f_index, 0);
        assert_eq!(rows[0].g_index, Some(1));
        assert_eq!(rows[0].c_squared, rat(3, 4));
        assert_eq!(plan.ambient_dimension(4), 8);
    }

    #[test]
    fn basis_csv_is_deterministic() {
        let plan = witness_two_infmult(&rat_int(0), &rat_int(1)).unwrap();
        let csv = plan.emit_basis_csv(2);
        assert_eq!(
            csv,
            "n,c_n_squared,f_index,g_index\n1,3/4,0,1\n2,7/16,2,3\n"
        );
        assert_eq!(parse_c_squared_cell("3/4").unwrap(), rat(3, 4));

        let tail = TailSequence::harmonic(rat_int(2), TailDirection::Increasing, rat_int(1), 1);
        let single = witness_increasing(&tail).emit_basis_csv(2);
        assert_eq!(single, "n,c_n_squared,f_index,g_index\n1,1,0,\n2,1,1,\n");
    }

    #[test]
    fn witness_json_round_trips() {
        let tail = dec(rat_int(2), rat_int(1));
        let plan = witness_limit_vs_infmult(&rat_int(2), &rat_int(1), &tail).unwrap();
        let json = plan.to_json_string();
        assert!(json.contains("\"LimitVsInfMult_LimitAbove\""));
        assert!(json.contains("\"c_squared_rule\":\"(b_n^2 - gamma_n^2)/(b_n^2 - a_n^2)\""));
        let back = WitnessPlan::from_json_str(&json).unwrap();
        assert_eq!(back, plan);

        let single = witness_increasing(&TailSequence::harmonic(
            rat_int(2),
            TailDirection::Increasing,
            rat_int(1),
            1,
        ));
        let json = single.to_json_string();
        assert!(json.contains("\"c_squared_rule\":\"1\""));
        assert!(json.contains("\"b_rule\":null"));
        assert_eq!(WitnessPlan::from_json_str(&json).unwrap(), single);
    }

    #[test]
    fn reindexed_geometric_rule_matches_shifted_terms() {
        let tail = TailSequence::geometric(
            rat_int(1),
            TailDirection::Decreasing,
            rat_int(2),
            rat(1, 3),
        );
        let rule = SequenceRule::from_tail_reindexed(&tail, 2);
        for n in 1..=10u64 {
            assert_eq!(rule.eval(n), tail.term(n + 2));
        }
    }

    #[test]
    fn gap_to_sup_shrinks_like_inverse_n() {
        let plan = witness_two_infmult(&rat_int(0), &rat_int(1)).unwrap();
        for n in [1u64, 10, 100, 1000] {
            let gap = &plan.sup_value - plan.gamma(n);
            assert_eq!(gap, rat(1, 2 * n as i64));
        }
    }
}
