//! Necessary conditions for a nonzero homogeneous lnd on a monomial algebra.
//!
//! Such a derivation maps monomials to monomials and has a kernel generated
//! by one monomial `f`, which must sit on a boundary ray of the cone. The
//! primitive functional `d` vanishing on that ray is the induced degree
//! function, and it lowers degrees by exactly one. For each ray we check:
//!
//! * **C1**: some monomial has degree 1, i.e. 1 lies in the numerical
//!   semigroup spanned by the positive generator degrees;
//! * **C2**: every generator `x` off the ray is not in the kernel, so its
//!   image is a monomial of degree `d(x) - 1`, which must be attainable;
//! * **C3**: the degree function cannot be `n·d` with `n ≥ 2`: all degrees
//!   would be multiples of `n` while images need degree `≡ -1 (mod n)`.
//!
//! A ray failing C1 or C2 cannot carry the kernel. If both rays fail, no
//! nonzero homogeneous lnd exists. Otherwise the result is `Undecided`.

use super::{cone_rays, Functional, LatticePoint, NumericalSemigroup, SemigroupError, SemigroupPresentation};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Nonexistent,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    C1,
    C2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C2Violation {
    pub generator: LatticePoint,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayCertificate {
    pub ray: LatticePoint,
    pub functional: Functional,
    /// `d(g)` for every generator, in presentation order.
    pub degrees: Vec<i64>,
    /// Unattainable degrees below the largest generator degree.
    pub gaps: Vec<u64>,
    pub degree_one_attainable: bool,
    pub c2_violations: Vec<C2Violation>,
    pub scaled_functionals_excluded: bool,
    pub failed_conditions: Vec<Condition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub rays: Vec<RayCertificate>,
}

impl ObstructionReport {
    pub fn ray(&self, direction: LatticePoint) -> Option<&RayCertificate> {
        self.rays.iter().find(|c| c.ray == direction)
    }
}

pub fn homogeneous_lnd_obstruction(sg: &SemigroupPresentation) -> Result<ObstructionReport, SemigroupError> {
    let cone = cone_rays(sg)?;
    let rays: Vec<RayCertificate> = cone
        .rays
        .iter()
        .map(|ray| certify_ray(sg, ray.direction, ray.functional))
        .collect();
    let verdict = if rays.iter().all(|c| !c.failed_conditions.is_empty()) {
        Verdict::Nonexistent
    } else {
        Verdict::Undecided
    };
    Ok(ObstructionReport { verdict, rays })
}

fn certify_ray(sg: &SemigroupPresentation, ray: LatticePoint, d: Functional) -> RayCertificate {
    let degrees: Vec<i64> = sg.generators().iter().map(|&g| d.eval(g)).collect();
    let semigroup = NumericalSemigroup::new(degrees.iter().filter(|&&x| x > 0).map(|&x| x as u64));
    let top = degrees.iter().copied().max().unwrap_or(0).max(1) as u64;
    let members = semigroup.members_up_to(top);

    let degree_one_attainable = members[1];
    let c2_violations: Vec<C2Violation> = sg
        .generators()
        .iter()
        .zip(&degrees)
        .filter(|(_, &deg)| deg > 0)
        .filter(|(_, &deg)| !members[(deg - 1) as usize])
        .map(|(&generator, &degree)| C2Violation { generator, degree })
        .collect();

    let mut failed_conditions = Vec::new();
    if !degree_one_attainable {
        failed_conditions.push(Condition::C1);
    }
    if !c2_violations.is_empty() {
        failed_conditions.push(Condition::C2);
    }

    RayCertificate {
        ray,
        functional: d,
        gaps: semigroup.gaps_up_to(top),
        scaled_functionals_excluded: scaled_functionals_excluded(&degrees),
        degrees,
        degree_one_attainable,
        c2_violations,
        failed_conditions,
    }
}

/// Checks C3 for `n = 2, 3`: under `n·d` no off-ray generator can have an
/// image of degree `n·d(x) - 1`.
fn scaled_functionals_excluded(degrees: &[i64]) -> bool {
    let positive: Vec<u64> = degrees.iter().filter(|&&x| x > 0).map(|&x| x as u64).collect();
    if positive.is_empty() {
        return false;
    }
    (2..=3u64).all(|n| {
        let scaled = NumericalSemigroup::new(positive.iter().map(|&x| x * n));
        positive.iter().all(|&x| !scaled.contains(n * x - 1))
    })
}
