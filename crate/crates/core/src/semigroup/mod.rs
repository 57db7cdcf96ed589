//! Two-variable monomial algebras as affine semigroups in ℤ², and a sound
//! test for the nonexistence of homogeneous locally nilpotent derivations.
//!
//! A lattice point `(r, s)` stands for the monomial `u^r z^s`.

mod cone;
mod numerical;
mod obstruction;

pub use cone::{cone_rays, Cone, Functional, Ray};
pub use numerical::NumericalSemigroup;
pub use obstruction::{homogeneous_lnd_obstruction, Condition, ObstructionReport, RayCertificate, Verdict};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("duplicate generator {0}")]
    DuplicateGenerator(LatticePoint),
    #[error("no nonzero generators")]
    Empty,
    #[error("generators do not span a full-dimensional cone")]
    NotFullDimensional,
    #[error("the spanned cone is not strictly convex")]
    NotStrictlyConvex,
}

/// Serialized as a two-element array `[r, s]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub r: i64,
    pub s: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { r: 0, s: 0 };

    pub fn new(r: i64, s: i64) -> Self {
        Self { r, s }
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(self.r * k, self.s * k)
    }

    /// `self.r * other.s - self.s * other.r`
    pub fn cross(self, other: LatticePoint) -> i64 {
        self.r * other.s - self.s * other.r
    }

    /// Same direction with coprime coordinates.
    pub fn primitive(self) -> Self {
        let g = self.r.gcd(&self.s);
        if g == 0 {
            self
        } else {
            Self::new(self.r / g, self.s / g)
        }
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from(a: [i64; 2]) -> Self {
        Self::new(a[0], a[1])
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.r, p.s]
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.r + o.r, self.s + o.s)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.r, -self.s)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// Generators of an affine semigroup in ℤ². The origin is implicit and
/// dropped if given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupPresentation {
    generators: Vec<LatticePoint>,
}

impl SemigroupPresentation {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self, SemigroupError> {
        let mut generators = Vec::with_capacity(points.len());
        for p in points {
            if p == LatticePoint::ORIGIN {
                continue;
            }
            if generators.contains(&p) {
                return Err(SemigroupError::DuplicateGenerator(p));
            }
            generators.push(p);
        }
        Ok(Self { generators })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self, SemigroupError> {
        Self::new(pairs.iter().map(|&(r, s)| LatticePoint::new(r, s)).collect())
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }
}

impl<'de> Deserialize<'de> for SemigroupPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bare(Vec<LatticePoint>),
            Wrapped { generators: Vec<LatticePoint> },
        }
        let points = match Raw::deserialize(d)? {
            Raw::Bare(p) | Raw::Wrapped { generators: p } => p,
        };
        Self::new(points).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Membership {
    /// `witness` pairs each used generator with its multiplicity.
    Member { witness: Vec<(LatticePoint, u32)> },
    /// Outside the cone: no bound will ever find it.
    NonMember { violated: Functional },
    /// Not found among sums of at most `bound` generators.
    Unknown { bound: u32 },
}

/// Bounded search for `point` as a sum of at most `bound` generators, after
/// a cone test that refutes membership outright.
pub fn membership(point: LatticePoint, sg: &SemigroupPresentation, bound: u32) -> Membership {
    if let Ok(cone) = cone_rays(sg) {
        if let Some(f) = cone.violated_functional(point) {
            return Membership::NonMember { violated: f };
        }
    }
    if point == LatticePoint::ORIGIN {
        return Membership::Member { witness: Vec::new() };
    }
    let gens = sg.generators();
    // breadth-first over the number of summands; each point remembers how it was first reached
    let mut parent: HashMap<LatticePoint, (LatticePoint, usize)> = HashMap::new();
    let mut frontier = vec![LatticePoint::ORIGIN];
    for _ in 0..bound {
        let mut next = Vec::new();
        for &p in &frontier {
            for (i, &g) in gens.iter().enumerate() {
                let q = p + g;
                if q == LatticePoint::ORIGIN || parent.contains_key(&q) {
                    continue;
                }
                parent.insert(q, (p, i));
                if q == point {
                    return Membership::Member {
                        witness: reconstruct(point, &parent, gens),
                    };
                }
                next.push(q);
            }
        }
        frontier = next;
    }
    Membership::Unknown { bound }
}

fn reconstruct(
    point: LatticePoint,
    parent: &HashMap<LatticePoint, (LatticePoint, usize)>,
    gens: &[LatticePoint],
) -> Vec<(LatticePoint, u32)> {
    let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
    let mut cur = point;
    while cur != LatticePoint::ORIGIN {
        let (prev, i) = parent[&cur];
        *counts.entry(i).or_default() += 1;
        cur = prev;
    }
    counts.into_iter().map(|(i, k)| (gens[i], k)).collect()
}
