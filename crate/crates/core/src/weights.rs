//! Weights `a + b·ρ` with `ρ` a positive infinitesimal, and the leading forms
//! they induce on Laurent polynomials.
//!
//! Since `ρ` is irrational, `a₁ + b₁ρ = a₂ + b₂ρ` only when the pairs agree;
//! since it is taken arbitrarily small, weights compare lexicographically on
//! `(a, b)`. Both facts together make the comparison a total order that is
//! compatible with addition.

use crate::algebra::{ChartPresentation, LaurentPoly, Monomial};
use crate::rational::{format_rational, int, parse_rational, Rational};
use num_traits::Zero;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("no weight assigned to `{0}`")]
    Unassigned(String),
    #[error("leading form of the zero polynomial")]
    ZeroPolynomial,
    #[error("generator `{0}` has a zero expression")]
    ZeroGenerator(String),
}

/// `a + b·ρ`. Field order matters: the derived `Ord` is the lexicographic
/// order on `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight {
    pub a: Rational,
    pub b: Rational,
}

impl Weight {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn ints(a: i64, b: i64) -> Self {
        Self::new(int(a), int(b))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(&self.a * int(k), &self.b * int(k))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.a.clone(), -self.b.clone())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = format_rational(&self.a);
        if self.b.is_zero() {
            return f.write_str(&a);
        }
        let b = format_rational(&self.b);
        match b.strip_prefix('-') {
            Some(abs) => write!(f, "{a} - {abs}ρ"),
            None => write!(f, "{a} + {b}ρ"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&format_rational(&self.a))?;
        t.serialize_element(&format_rational(&self.b))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PairVisitor;
        impl<'de> Visitor<'de> for PairVisitor {
            type Value = Weight;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a two-element array [a, b] of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Weight, A::Error> {
                let a = seq
                    .next_element::<RationalText>()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let b = seq
                    .next_element::<RationalText>()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(Weight::new(a.0, b.0))
            }
        }
        d.deserialize_seq(PairVisitor)
    }
}

struct RationalText(Rational);

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(RationalText(int(n))),
            Raw::Text(t) => parse_rational(&t).map(RationalText).map_err(de::Error::custom),
        }
    }
}

/// A weight for every ambient variable of a chart.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightAssignment {
    pub weights: BTreeMap<String, Weight>,
}

impl WeightAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: &str, w: Weight) -> Self {
        self.weights.insert(var.to_string(), w);
        self
    }

    pub fn get(&self, var: &str) -> Option<&Weight> {
        self.weights.get(var)
    }

    /// Errors unless every ambient variable of `chart` carries a weight.
    pub fn covers(&self, chart: &ChartPresentation) -> Result<(), WeightError> {
        match chart.ambient_vars().iter().find(|v| !self.weights.contains_key(*v)) {
            Some(v) => Err(WeightError::Unassigned(v.clone())),
            None => Ok(()),
        }
    }
}

/// Linear extension of the variable weights over exponents.
pub fn weight_of(m: &Monomial, w: &WeightAssignment) -> Result<Weight, WeightError> {
    let mut acc = Weight::zero();
    for (v, e) in m.iter() {
        let wv = w.get(v).ok_or_else(|| WeightError::Unassigned(v.to_string()))?;
        acc = &acc + &wv.scale(e);
    }
    Ok(acc)
}

/// Maximal weight over the terms of a nonzero polynomial.
pub fn degree(p: &LaurentPoly, w: &WeightAssignment) -> Result<Weight, WeightError> {
    let mut best: Option<Weight> = None;
    for (m, _) in p.terms() {
        let wm = weight_of(m, w)?;
        if best.as_ref().is_none_or(|b| wm > *b) {
            best = Some(wm);
        }
    }
    best.ok_or(WeightError::ZeroPolynomial)
}

/// Sum of the terms attaining the maximal weight. May have several terms
/// when the weights are commensurable on `p`.
pub fn leading_form(p: &LaurentPoly, w: &WeightAssignment) -> Result<LaurentPoly, WeightError> {
    let top = degree(p, w)?;
    let mut kept = Vec::new();
    for (m, c) in p.terms() {
        if weight_of(m, w)? == top {
            kept.push((m.clone(), c.clone()));
        }
    }
    Ok(LaurentPoly::from_terms(kept))
}

pub fn is_homogeneous(p: &LaurentPoly, w: &WeightAssignment) -> Result<bool, WeightError> {
    let mut first: Option<Weight> = None;
    for (m, _) in p.terms() {
        let wm = weight_of(m, w)?;
        match &first {
            None => first = Some(wm),
            Some(f) if *f != wm => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Weight of each generator, read off its leading form.
pub fn induced_weights(
    chart: &ChartPresentation,
    w: &WeightAssignment,
) -> Result<BTreeMap<String, Weight>, WeightError> {
    w.covers(chart)?;
    chart
        .generators()
        .iter()
        .map(|(name, expr)| {
            if expr.is_zero() {
                return Err(WeightError::ZeroGenerator(name.clone()));
            }
            Ok((name.clone(), degree(expr, w)?))
        })
        .collect()
}
