//! Floating-point predictions for a maximally entangled pair.
//!
//! The pair lives in ℝᵈ ⊗ ℝᵈ in the state ψ = (1/√d) Σᵢ |i⟩⊗|i⟩, stored as a
//! d×d amplitude matrix. The spin-one singlet
//! (1/√3)(−|0,0⟩ + |−1,1⟩ + |1,−1⟩) is this state after a fixed local basis
//! change on one side, which does not affect any probability for real rays.
//!
//! The left particle is measured along one ray, the right along another.
//! Classically, a one-zero rule `x → ¬y` forbids both outcomes at once; the
//! entangled pair assigns that event the probability (x̂·ŷ)²/d.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::RuleSet;
use crate::model::{Logic, Ray};

/// Absolute tolerance for probability comparisons.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("entangled pair needs dimension at least 3, got {0}")]
    Dimension(usize),
    #[error("zero vector cannot be normalized")]
    ZeroRay,
    #[error("vector has {found} components, pair dimension is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("abstract logic: atom `{0}` has no ray")]
    AbstractLogic(String),
    #[error("no context labeled `{0}`")]
    UnknownContext(String),
    #[error("context `{context}` has {size} members, completeness needs {dimension}")]
    IncompleteContext { context: String, size: usize, dimension: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntangledPair {
    dimension: usize,
    /// Row-major d×d amplitudes ψ[i][j] of |i⟩⊗|j⟩.
    amplitudes: Vec<f64>,
}

impl EntangledPair {
    /// (1/√d) Σᵢ |i⟩⊗|i⟩.
    pub fn maximally_entangled(d: usize) -> Result<Self, QuantumError> {
        if d < 3 {
            return Err(QuantumError::Dimension(d));
        }
        let mut amplitudes = vec![0.0; d * d];
        let a = 1.0 / (d as f64).sqrt();
        for i in 0..d {
            amplitudes[i * d + i] = a;
        }
        Ok(EntangledPair { dimension: d, amplitudes })
    }

    /// Arbitrary real two-particle state; must have unit norm within 1e-12.
    pub fn from_amplitudes(d: usize, amplitudes: Vec<f64>) -> Result<Self, QuantumError> {
        if d < 3 {
            return Err(QuantumError::Dimension(d));
        }
        if amplitudes.len() != d * d {
            return Err(QuantumError::DimensionMismatch { expected: d * d, found: amplitudes.len() });
        }
        let pair = EntangledPair { dimension: d, amplitudes };
        let norm = pair.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(QuantumError::NotNormalized(norm));
        }
        Ok(pair)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Applies `left ⊗ right` (row-major d×d matrices): ψ ↦ L ψ Rᵀ.
    pub fn transformed(&self, left: &[f64], right: &[f64]) -> Result<Self, QuantumError> {
        let d = self.dimension;
        for m in [left, right] {
            if m.len() != d * d {
                return Err(QuantumError::DimensionMismatch { expected: d * d, found: m.len() });
            }
        }
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0.0;
                for k in 0..d {
                    for l in 0..d {
                        s += left[i * d + k] * right[j * d + l] * self.amplitudes[k * d + l];
                    }
                }
                out[i * d + j] = s;
            }
        }
        Ok(EntangledPair { dimension: d, amplitudes: out })
    }
}

/// What the derived classical rules say about a pair of atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalBound {
    /// One-zero rule: both outcomes never occur together.
    Zero,
    /// Equivalence: the outcomes always coincide.
    Equal,
    Unconstrained,
}

impl ClassicalBound {
    pub fn from_rules(rules: &RuleSet, x: &str, y: &str) -> Self {
        if rules.is_one_zero(x, y) {
            ClassicalBound::Zero
        } else if rules.are_equivalent(x, y) {
            ClassicalBound::Equal
        } else {
            ClassicalBound::Unconstrained
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointPrediction {
    /// Probability that the left particle is found along `a` and the right
    /// along `b`.
    pub prob_both: f64,
    pub marginal_left: f64,
    pub marginal_right: f64,
    pub classical_bound: ClassicalBound,
}

fn unit(v: &[f64], d: usize) -> Result<Vec<f64>, QuantumError> {
    if v.len() != d {
        return Err(QuantumError::DimensionMismatch { expected: d, found: v.len() });
    }
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 0.0 || !n.is_finite() {
        return Err(QuantumError::ZeroRay);
    }
    Ok(v.iter().map(|x| x / n).collect())
}

fn projector(u: &[f64]) -> Vec<f64> {
    let d = u.len();
    let mut p = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            p[i * d + j] = u[i] * u[j];
        }
    }
    p
}

/// ⟨ψ| (P_a ⊗ P_b) |ψ⟩ by explicit contraction over all four indices, with
/// the two marginals ⟨ψ| (P_a ⊗ 1) |ψ⟩ and ⟨ψ| (1 ⊗ P_b) |ψ⟩.
pub fn joint_probability_f64(pair: &EntangledPair, a: &[f64], b: &[f64]) -> Result<JointPrediction, QuantumError> {
    let d = pair.dimension;
    let (pa, pb) = (projector(&unit(a, d)?), projector(&unit(b, d)?));
    let psi = &pair.amplitudes;
    let mut both = 0.0;
    let mut left = 0.0;
    let mut right = 0.0;
    for i in 0..d {
        for j in 0..d {
            let bra = psi[i * d + j];
            if bra == 0.0 {
                continue;
            }
            for k in 0..d {
                for l in 0..d {
                    let ket = psi[k * d + l];
                    both += bra * pa[i * d + k] * pb[j * d + l] * ket;
                }
                left += bra * pa[i * d + k] * psi[k * d + j];
                right += bra * pb[j * d + k] * psi[i * d + k];
            }
        }
    }
    Ok(JointPrediction {
        prob_both: both.max(0.0),
        marginal_left: left,
        marginal_right: right,
        classical_bound: ClassicalBound::Unconstrained,
    })
}

/// [`joint_probability_f64`] for exact rays.
pub fn joint_probability(pair: &EntangledPair, a: &Ray, b: &Ray) -> Result<JointPrediction, QuantumError> {
    joint_probability_f64(pair, &a.to_f64(), &b.to_f64())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    OneZero,
    Equivalence,
}

/// One classical rule confronted with the entangled-pair prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FalsificationRow {
    pub kind: RuleKind,
    pub x: String,
    pub y: String,
    /// The event tested: both true for a one-zero rule, `x` true and `y`
    /// false for an equivalence.
    pub event: String,
    pub classical: f64,
    pub quantum: f64,
    pub violated: bool,
}

fn ray_of<'a>(logic: &'a Logic, label: &str) -> Result<&'a Ray, QuantumError> {
    logic.atom(label).and_then(|a| a.ray.as_ref()).ok_or_else(|| QuantumError::AbstractLogic(label.to_string()))
}

/// Prediction for a single pair of atoms, with the classical bound taken
/// from `rules`.
pub fn predict_pair(
    logic: &Logic,
    rules: &RuleSet,
    pair: &EntangledPair,
    x: &str,
    y: &str,
) -> Result<JointPrediction, QuantumError> {
    let mut p = joint_probability(pair, ray_of(logic, x)?, ray_of(logic, y)?)?;
    p.classical_bound = ClassicalBound::from_rules(rules, x, y);
    Ok(p)
}

/// For every one-zero rule and every equivalence, the classical probability
/// of the forbidden event (always 0) against the entangled-pair prediction.
pub fn falsification_report(
    logic: &Logic,
    rules: &RuleSet,
    pair: &EntangledPair,
) -> Result<Vec<FalsificationRow>, QuantumError> {
    if let Some(a) = logic.atoms().iter().find(|a| a.ray.is_none()) {
        return Err(QuantumError::AbstractLogic(a.label.clone()));
    }
    let mut rows = Vec::with_capacity(rules.one_zero.len() + rules.equivalences.len());
    for (x, y) in &rules.one_zero {
        let p = joint_probability(pair, ray_of(logic, x)?, ray_of(logic, y)?)?;
        rows.push(FalsificationRow {
            kind: RuleKind::OneZero,
            x: x.clone(),
            y: y.clone(),
            event: format!("{x}=1,{y}=1"),
            classical: 0.0,
            quantum: p.prob_both,
            violated: p.prob_both > TOLERANCE,
        });
    }
    for (x, y) in &rules.equivalences {
        let p = joint_probability(pair, ray_of(logic, x)?, ray_of(logic, y)?)?;
        let mismatch = (p.marginal_left - p.prob_both).max(0.0);
        rows.push(FalsificationRow {
            kind: RuleKind::Equivalence,
            x: x.clone(),
            y: y.clone(),
            event: format!("{x}=1,{y}=0"),
            classical: 0.0,
            quantum: mismatch,
            violated: mismatch > TOLERANCE,
        });
    }
    Ok(rows)
}

/// Σ over the members x of context `label` of P(left along x, right along b).
/// For a complete orthogonal context this is the right marginal of `b`.
pub fn context_completeness(pair: &EntangledPair, logic: &Logic, label: &str, b: &[f64]) -> Result<f64, QuantumError> {
    let ctx = logic.context(label).ok_or_else(|| QuantumError::UnknownContext(label.to_string()))?;
    if ctx.members.len() != pair.dimension {
        return Err(QuantumError::IncompleteContext {
            context: label.to_string(),
            size: ctx.members.len(),
            dimension: pair.dimension,
        });
    }
    let mut sum = 0.0;
    for m in &ctx.members {
        sum += joint_probability_f64(pair, &ray_of(logic, m)?.to_f64(), b)?.prob_both;
    }
    Ok(sum)
}
