//! Canonical `alpha*I + K + F` decomposition of spectra passing the four
//! attainment conditions, and its inverse.
//!
//! For a positive diagonalizable operator satisfying the conditions, the
//! scalar `alpha` is forced: the tail limit if a tail exists, else the
//! infinite-multiplicity value, else 0. `K` (positive compact) collects the
//! values approaching `alpha` from above together with the finitely many
//! values above `alpha`, shifted by `-alpha` so its eigenvalues decrease to
//! 0. `F` (self-adjoint finite rank) collects the remaining finitely many
//! defect values, also shifted. Values exactly at `alpha` contribute the
//! zero operator to both parts and are recorded only in the dimension of
//! the `alpha`-eigenspace, which makes reconstruction exact.

use crate::rational::{self, format_rat, Rat};
use crate::spectrum::{
    ConditionFailure, EigenvalueAtom, Multiplicity, SpectrumSpec, TailDirection, TailSequence,
};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dimension of the eigenspace at `alpha` in the original operator. The
/// triple `(alpha, K, F)` alone cannot distinguish a finite-dimensional
/// scalar block from an infinite one, so the dimension is stored explicitly
/// to make reconstruction faithful.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaDimension {
    Finite(u64),
    Infinite,
}

impl AlphaDimension {
    pub fn is_infinite(&self) -> bool {
        matches!(self, AlphaDimension::Infinite)
    }
}

/// `alpha*I + K + F` with `K` split into a tail part (eigenvalues decreasing
/// to 0) and finitely many atoms, and `F` a finite list of signed shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub alpha: Rat,
    pub alpha_dimension: AlphaDimension,
    /// Finite-rank part: (signed value, multiplicity); eigenvalue of the
    /// original operator is `alpha + value`.
    pub f_atoms: Vec<(Rat, u64)>,
    /// Finitely many positive compact eigenvalues above the tail.
    pub k_atoms: Vec<(Rat, u64)>,
    /// Tail parts of K: decreasing to limit 0. More than one entry only
    /// arises from summing decompositions.
    pub k_tails: Vec<TailSequence>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("spectrum violates attainment condition {0:?}; no scalar-plus-compact-plus-finite-rank form exists")]
    ConditionViolation(ConditionFailure),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}

#[derive(Serialize, Deserialize)]
struct RawPair(#[serde(with = "rational::serde_rat")] Rat, u64);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum KTailRepr {
    One(Box<TailSequence>),
    Many(Vec<TailSequence>),
}

#[derive(Serialize, Deserialize)]
struct RawDecomposition {
    #[serde(with = "rational::serde_rat")]
    alpha: Rat,
    alpha_infinite: bool,
    #[serde(default)]
    alpha_multiplicity: u64,
    #[serde(rename = "F", default)]
    f: Vec<RawPair>,
    #[serde(rename = "K_atoms", default)]
    k_atoms: Vec<RawPair>,
    #[serde(rename = "K_tail", default)]
    k_tail: Option<KTailRepr>,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let (alpha_infinite, alpha_multiplicity) = match self.alpha_dimension {
            AlphaDimension::Infinite => (true, 0),
            AlphaDimension::Finite(m) => (false, m),
        };
        let k_tail = match self.k_tails.len() {
            0 => None,
            1 => Some(KTailRepr::One(Box::new(self.k_tails[0].clone()))),
            _ => Some(KTailRepr::Many(self.k_tails.clone())),
        };
        RawDecomposition {
            alpha: self.alpha.clone(),
            alpha_infinite,
            alpha_multiplicity,
            f: self
                .f_atoms
                .iter()
                .map(|(v, m)| RawPair(v.clone(), *m))
                .collect(),
            k_atoms: self
                .k_atoms
                .iter()
                .map(|(v, m)| RawPair(v.clone(), *m))
                .collect(),
            k_tail,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawDecomposition::deserialize(de)?;
        let alpha_dimension = if raw.alpha_infinite {
            AlphaDimension::Infinite
        } else {
            AlphaDimension::Finite(raw.alpha_multiplicity)
        };
        let k_tails = match raw.k_tail {
            None => Vec::new(),
            Some(KTailRepr::One(t)) => vec![*t],
            Some(KTailRepr::Many(ts)) => ts,
        };
        Ok(Decomposition {
            alpha: raw.alpha,
            alpha_dimension,
            f_atoms: raw.f.into_iter().map(|RawPair(v, m)| (v, m)).collect(),
            k_atoms: raw.k_atoms.into_iter().map(|RawPair(v, m)| (v, m)).collect(),
            k_tails,
        })
    }
}

impl Decomposition {
    /// Structural invariants: `alpha >= 0`, positive K values, K tails
    /// decreasing to 0, positive multiplicities, and every reconstructed
    /// eigenvalue nonnegative.
    pub fn validate(&self) -> Result<(), DecomposeError> {
        let invalid = |msg: String| Err(DecomposeError::InvalidDecomposition(msg));
        if self.alpha.is_negative() {
            return invalid("alpha must be nonnegative".into());
        }
        for (v, m) in &self.f_atoms {
            if *m == 0 {
                return invalid("finite-rank multiplicities must be >= 1".into());
            }
            if (&self.alpha + v).is_negative() {
                return invalid(format!(
                    "finite-rank shift {} drives the eigenvalue below 0",
                    format_rat(v)
                ));
            }
        }
        for (v, m) in &self.k_atoms {
            if *m == 0 {
                return invalid("compact-part multiplicities must be >= 1".into());
            }
            if !v.is_positive() {
                return invalid(format!(
                    "compact-part value {} must be strictly positive",
                    format_rat(v)
                ));
            }
        }
        for t in &self.k_tails {
            if !t.limit.is_zero() || t.direction != TailDirection::Decreasing {
                return invalid("compact tails must decrease to limit 0".into());
            }
            t.validate()
                .map_err(|e| DecomposeError::InvalidDecomposition(e.to_string()))?;
        }
        Ok(())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("decomposition serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self, String> {
        let d: Decomposition = serde_json::from_str(s).map_err(|e| e.to_string())?;
        d.validate().map_err(|e| e.to_string())?;
        Ok(d)
    }
}

/// Extracts the canonical decomposition from a spectrum passing all four
/// attainment conditions.
///
/// `alpha` is the tail limit when any tail exists, else the value of the
/// infinite-multiplicity atom, else 0. With a tail present, finite atoms
/// above `alpha` join the compact part; without one they are plain
/// finite-rank defects. Values exactly at `alpha` fold into the scalar
/// block's recorded dimension.
pub fn decompose(spec: &SpectrumSpec) -> Result<Decomposition, DecomposeError> {
    let report = spec.check_conditions();
    if let Some(failure) = report.first_failure() {
        return Err(DecomposeError::ConditionViolation(failure));
    }

    // All tails now decrease to a single shared limit, and at most one
    // distinct value carries infinite multiplicity, matching that limit
    // whenever both exist.
    let limit: Option<Rat> = spec.tails.first().map(|t| t.limit.clone());
    let inf_value: Option<Rat> = spec
        .atoms
        .iter()
        .find(|a| a.multiplicity.is_infinite())
        .map(|a| a.value.clone());
    if let (Some(l), Some(m)) = (&limit, &inf_value) {
        debug_assert_eq!(l, m, "condition (iv) guarantees agreement");
    }
    let has_limit = limit.is_some();
    let alpha = limit.or_else(|| inf_value.clone()).unwrap_or_else(Rat::zero);

    let mut alpha_finite_mult = 0u64;
    let mut f_atoms = Vec::new();
    let mut k_atoms = Vec::new();
    for atom in &spec.atoms {
        let m = match atom.multiplicity {
            // Infinite multiplicity sits exactly at alpha and is absorbed
            // into the scalar block.
            Multiplicity::Infinite => continue,
            Multiplicity::Finite(m) => m,
        };
        let shifted = &atom.value - &alpha;
        if shifted.is_zero() {
            alpha_finite_mult += m;
        } else if shifted.is_positive() && has_limit {
            k_atoms.push((shifted, m));
        } else {
            f_atoms.push((shifted, m));
        }
    }

    let alpha_dimension = if inf_value.is_some() {
        AlphaDimension::Infinite
    } else {
        AlphaDimension::Finite(alpha_finite_mult)
    };
    let neg_alpha = -alpha.clone();
    let k_tails = spec.tails.iter().map(|t| t.shifted(&neg_alpha)).collect();

    Ok(Decomposition {
        alpha,
        alpha_dimension,
        f_atoms,
        k_atoms,
        k_tails,
    })
}

/// Rebuilds the spectrum represented by a decomposition: atoms at
/// `alpha + f`, `alpha + k`, the scalar block at `alpha` with its recorded
/// dimension, and the K tails shifted back up to limit `alpha`.
pub fn reconstruct(d: &Decomposition) -> Result<SpectrumSpec, DecomposeError> {
    d.validate()?;
    let mut atoms = Vec::new();
    for (v, m) in &d.f_atoms {
        atoms.push(EigenvalueAtom::finite(&d.alpha + v, *m));
    }
    for (v, m) in &d.k_atoms {
        atoms.push(EigenvalueAtom::finite(&d.alpha + v, *m));
    }
    match d.alpha_dimension {
        AlphaDimension::Infinite => atoms.push(EigenvalueAtom::infinite(d.alpha.clone())),
        AlphaDimension::Finite(0) => {}
        AlphaDimension::Finite(m) => atoms.push(EigenvalueAtom::finite(d.alpha.clone(), m)),
    }
    let tails: Vec<TailSequence> = d.k_tails.iter().map(|t| t.shifted(&d.alpha)).collect();
    SpectrumSpec::new(atoms, tails)
        .map_err(|e| DecomposeError::InvalidDecomposition(e.to_string()))
}

/// Sum of two decompositions on co-diagonal representatives with disjoint
/// defect supports: scalars add, the finite-rank and compact parts
/// concatenate. Merged tails are kept side by side; no closed form exists
/// for the sorted union of two term rules.
pub fn add_decompositions(d1: &Decomposition, d2: &Decomposition) -> Decomposition {
    let alpha_dimension = match (d1.alpha_dimension, d2.alpha_dimension) {
        (AlphaDimension::Finite(a), AlphaDimension::Finite(b)) => AlphaDimension::Finite(a + b),
        _ => AlphaDimension::Infinite,
    };
    let mut f_atoms = d1.f_atoms.clone();
    f_atoms.extend(d2.f_atoms.iter().cloned());
    let mut k_atoms = d1.k_atoms.clone();
    k_atoms.extend(d2.k_atoms.iter().cloned());
    let mut k_tails = d1.k_tails.clone();
    k_tails.extend(d2.k_tails.iter().cloned());
    Decomposition {
        alpha: &d1.alpha + &d2.alpha,
        alpha_dimension,
        f_atoms,
        k_atoms,
        k_tails,
    }
}
