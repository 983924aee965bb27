use serde::Serialize;

use super::AnalysisError;
use crate::model::{inner_product, Logic, Ray};
use crate::quad::Quad;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffendingPair {
    pub first: String,
    pub second: String,
    pub inner_product: Quad,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextCheck {
    pub label: String,
    pub orthogonal: bool,
    /// First non-orthogonal pair in member order.
    pub offending: Option<OffendingPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub pass: bool,
    pub contexts: Vec<ContextCheck>,
    /// Distinct atoms sharing a ray, as sorted label pairs.
    pub collinear: Vec<(String, String)>,
    pub non_maximal_contexts: Vec<String>,
}

impl RealizationReport {
    pub fn orthogonal_count(&self) -> usize {
        self.contexts.iter().filter(|c| c.orthogonal).count()
    }
}

/// Checks exactly that every context consists of pairwise orthogonal rays
/// and that no two atoms share a ray.
pub fn verify_realization(logic: &Logic) -> Result<RealizationReport, AnalysisError> {
    let ray_of = |label: &str| -> Result<&Ray, AnalysisError> {
        logic
            .atom(label)
            .and_then(|a| a.ray.as_ref())
            .ok_or_else(|| AnalysisError::AbstractLogic { atom: label.to_string() })
    };
    for atom in logic.atoms() {
        ray_of(&atom.label)?;
    }

    let mut contexts = Vec::with_capacity(logic.contexts().len());
    for ctx in logic.contexts() {
        let mut offending = None;
        'pairs: for (i, a) in ctx.members.iter().enumerate() {
            for b in &ctx.members[i + 1..] {
                let ip = inner_product(ray_of(a)?, ray_of(b)?)?;
                if !ip.is_zero() {
                    offending = Some(OffendingPair { first: a.clone(), second: b.clone(), inner_product: ip });
                    break 'pairs;
                }
            }
        }
        contexts.push(ContextCheck { label: ctx.label.clone(), orthogonal: offending.is_none(), offending });
    }

    let collinear = logic.collinear_pairs();
    let pass = collinear.is_empty() && contexts.iter().all(|c| c.orthogonal);
    Ok(RealizationReport {
        pass,
        contexts,
        collinear,
        non_maximal_contexts: logic.non_maximal_contexts().into_iter().map(String::from).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{corpus, parse_logic};

    #[test]
    fn one_zero_configuration_is_realized() {
        let l = parse_logic(corpus::GAMMA1).unwrap();
        let r = verify_realization(&l).unwrap();
        assert!(r.pass);
        assert_eq!(r.orthogonal_count(), 7);
    }

    #[test]
    fn perturbed_ray_fails_in_first_context() {
        let l = parse_logic(corpus::GAMMA1).unwrap();
        let l = l.with_ray("B", Some(Ray::from_ints(&[1, 0, -1]).unwrap())).unwrap();
        let r = verify_realization(&l).unwrap();
        assert!(!r.pass);
        let a = &r.contexts[0];
        assert_eq!(a.label, "a");
        let bad = a.offending.as_ref().unwrap();
        assert_eq!((bad.first.as_str(), bad.second.as_str()), ("A", "B"));
        // (1)(1) + (√2)(0) + (−1)(−1)
        assert_eq!(bad.inner_product, Quad::integer(2));
        // B now coincides with H
        assert_eq!(r.collinear, vec![("B".to_string(), "H".to_string())]);
    }

    #[test]
    fn abstract_logic_is_refused() {
        let l = parse_logic(corpus::TIGHT3).unwrap();
        assert!(matches!(
            verify_realization(&l),
            Err(AnalysisError::AbstractLogic { atom }) if atom == "A"
        ));
    }

    #[test]
    fn non_maximal_contexts_flagged() {
        let l = parse_logic(corpus::TIGHT3_4D).unwrap();
        let r = verify_realization(&l).unwrap();
        assert!(r.pass);
        assert_eq!(r.non_maximal_contexts, vec!["a", "b", "c"]);
    }
}
