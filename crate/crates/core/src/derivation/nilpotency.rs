use super::{Derivation, DerivationError};
use crate::algebra::LaurentPoly;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyCertificate {
    pub element: LaurentPoly,
    /// Least `k` with `∂ᵏ(element) = 0`; equals `iterates.len()`.
    pub index: usize,
    /// `element, ∂element, …` up to the last nonzero iterate.
    pub iterates: Vec<LaurentPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Nilpotency {
    Certified(NilpotencyCertificate),
    /// Still nonzero after `bound` applications. Not a proof of anything.
    NotWithinBound { bound: usize },
}

impl Nilpotency {
    pub fn index(&self) -> Option<usize> {
        match self {
            Nilpotency::Certified(c) => Some(c.index),
            Nilpotency::NotWithinBound { .. } => None,
        }
    }
}

/// Iterates `d` on `p` at most `bound` times.
pub fn nilpotency_index(d: &Derivation, p: &LaurentPoly, bound: usize) -> Result<Nilpotency, DerivationError> {
    let mut iterates = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        if iterates.len() == bound {
            return Ok(Nilpotency::NotWithinBound { bound });
        }
        let next = d.apply(&cur)?;
        iterates.push(cur);
        cur = next;
    }
    Ok(Nilpotency::Certified(NilpotencyCertificate {
        element: p.clone(),
        index: iterates.len(),
        iterates,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ChartPresentation;

    fn chart() -> ChartPresentation {
        ChartPresentation::coordinate_ring(&["x", "y"], &[])
    }

    #[test]
    fn constants_have_index_one() {
        let d = Derivation::from_exprs(chart(), &[("x", "1"), ("y", "x")]).unwrap();
        assert_eq!(nilpotency_index(&d, &LaurentPoly::one(), 5).unwrap().index(), Some(1));
        assert_eq!(nilpotency_index(&d, &LaurentPoly::zero(), 5).unwrap().index(), Some(0));
    }

    #[test]
    fn triangular_derivation() {
        let d = Derivation::from_exprs(chart(), &[("x", "1"), ("y", "x")]).unwrap();
        let y = LaurentPoly::var("y");
        match nilpotency_index(&d, &y, 10).unwrap() {
            Nilpotency::Certified(c) => {
                assert_eq!(c.index, 3);
                assert_eq!(c.iterates.len(), 3);
                assert!(d.apply(c.iterates.last().unwrap()).unwrap().is_zero());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            nilpotency_index(&d, &y, 2).unwrap(),
            Nilpotency::NotWithinBound { bound: 2 }
        );
    }

    #[test]
    fn euler_derivation_is_not_certified() {
        let d = Derivation::from_exprs(chart(), &[("x", "x"), ("y", "0")]).unwrap();
        assert_eq!(
            nilpotency_index(&d, &LaurentPoly::var("x"), 64).unwrap(),
            Nilpotency::NotWithinBound { bound: 64 }
        );
    }
}
