//! Picard classes relative to a fibration over a curve, presented by the
//! fiber class `[F]` and the components `E_{i,j}` of the singular fibers,
//! subject to `[F] = Σ_j α_{i,j} [E_{i,j}]` for each `i`.

use crate::algebra::{LaurentPoly, Monomial};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PicardError {
    #[error("fiber {0} has no components")]
    EmptyFiber(usize),
    #[error("fiber {fiber} has a component of multiplicity 0")]
    ZeroMultiplicity { fiber: usize },
    #[error("element has {got} fibers, presentation has {expected}")]
    FiberCount { expected: usize, got: usize },
    #[error("fiber {fiber}: element has {got} components, presentation has {expected}")]
    ComponentCount { fiber: usize, expected: usize, got: usize },
    #[error("N must be positive, got {0}")]
    NonPositive(i64),
    #[error("r = {r} is outside 0..={n}")]
    OutOfRange { n: i64, r: i64 },
    #[error("{0} is not divisible by 4")]
    NotDivisibleByFour(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFibration")]
pub struct FibrationPresentation {
    /// Multiplicities `α_{i,j}` of the components of each singular fiber.
    fibers: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawFibration {
    fibers: Vec<Vec<u64>>,
}

impl TryFrom<RawFibration> for FibrationPresentation {
    type Error = PicardError;
    fn try_from(raw: RawFibration) -> Result<Self, PicardError> {
        FibrationPresentation::new(raw.fibers)
    }
}

impl FibrationPresentation {
    pub fn new(fibers: Vec<Vec<u64>>) -> Result<Self, PicardError> {
        for (i, f) in fibers.iter().enumerate() {
            if f.is_empty() {
                return Err(PicardError::EmptyFiber(i));
            }
            if f.contains(&0) {
                return Err(PicardError::ZeroMultiplicity { fiber: i });
            }
        }
        Ok(Self { fibers })
    }

    pub fn fibers(&self) -> &[Vec<u64>] {
        &self.fibers
    }

    pub fn zero_element(&self) -> PicardElement {
        PicardElement {
            m: 0,
            coeffs: self.fibers.iter().map(|f| vec![0; f.len()]).collect(),
        }
    }

    fn check_shape(&self, l: &PicardElement) -> Result<(), PicardError> {
        if l.coeffs.len() != self.fibers.len() {
            return Err(PicardError::FiberCount {
                expected: self.fibers.len(),
                got: l.coeffs.len(),
            });
        }
        for (i, (c, a)) in l.coeffs.iter().zip(&self.fibers).enumerate() {
            if c.len() != a.len() {
                return Err(PicardError::ComponentCount {
                    fiber: i,
                    expected: a.len(),
                    got: c.len(),
                });
            }
        }
        Ok(())
    }
}

/// `m[F] + Σ m_{i,j} [E_{i,j}]`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardElement {
    pub m: i64,
    pub coeffs: Vec<Vec<i64>>,
}

impl PicardElement {
    /// Adds `k` copies of `[F] - Σ_j α_{i,j}[E_{i,j}]`, which is zero in Pic.
    pub fn add_relation(&self, f: &FibrationPresentation, i: usize, k: i64) -> PicardElement {
        let mut out = self.clone();
        out.m += k;
        for (c, &a) in out.coeffs[i].iter_mut().zip(&f.fibers[i]) {
            *c -= k * a as i64;
        }
        out
    }
}

/// `(Σ nᵢ) − n + 1`
pub fn pic_rank(f: &FibrationPresentation) -> usize {
    f.fibers.iter().map(Vec::len).sum::<usize>() + 1 - f.fibers.len()
}

/// Normal form with `m_{i,j} < α_{i,j}` for all `j` and `m_{i,j} ≥ 0` for
/// some `j`, in every fiber.
pub fn standard_form(l: &PicardElement, f: &FibrationPresentation) -> Result<PicardElement, PicardError> {
    f.check_shape(l)?;
    let mut out = l.clone();
    for i in 0..f.fibers.len() {
        let t = l.coeffs[i]
            .iter()
            .zip(&f.fibers[i])
            .map(|(&c, &a)| c.div_euclid(a as i64))
            .max()
            .expect("fibers are nonempty");
        out = out.add_relation(f, i, t);
    }
    Ok(out)
}

pub fn is_positive(l: &PicardElement, f: &FibrationPresentation) -> Result<bool, PicardError> {
    Ok(standard_form(l, f)?.m >= 0)
}

/// Intersection numbers of the closures of fibers `B_p` of the given
/// fibration with fibers `Φ_q` of a hypothetical second fibration of
/// degree `N`, vanishing to order `r` along the exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    #[serde(rename = "N")]
    pub n: i64,
    pub r: i64,
    pub bp_phiq: i64,
    pub b0_phiq: i64,
    pub bp_phi0: i64,
    pub bp_phiinf: i64,
    pub b0_phiinf: i64,
    pub b0_phi0: i64,
    pub deg_p1: i64,
    pub deg_q1: i64,
    pub h2_target: i64,
    pub h4_target: i64,
    /// Exponent `e` of the leading form `ŷ^e` of the fibration function.
    pub leading_exponent: i64,
}

impl CountTable {
    /// `ŷ^{(N−r)/4} · ŷ^{−N/4}` in the variable `y`.
    pub fn phi_leading_form(&self, y: &str) -> LaurentPoly {
        let numerator = Monomial::var_pow(y, self.deg_p1);
        let denominator = Monomial::var_pow(y, self.deg_q1).inverse();
        LaurentPoly::from(numerator.mul(&denominator))
    }
}

pub fn intersection_counts(n: i64, r: i64) -> Result<CountTable, PicardError> {
    if n <= 0 {
        return Err(PicardError::NonPositive(n));
    }
    if !(0..=n).contains(&r) {
        return Err(PicardError::OutOfRange { n, r });
    }
    if n % 4 != 0 {
        return Err(PicardError::NotDivisibleByFour("N"));
    }
    if (n - r) % 4 != 0 {
        return Err(PicardError::NotDivisibleByFour("N - r"));
    }
    Ok(CountTable {
        n,
        r,
        bp_phiq: n,
        b0_phiq: n / 2,
        bp_phi0: (n - r) / 2,
        bp_phiinf: n / 2,
        b0_phiinf: n / 4,
        b0_phi0: (n - r) / 4,
        deg_p1: (n - r) / 4,
        deg_q1: n / 4,
        h2_target: (n - r) / 2,
        h4_target: n / 2,
        leading_exponent: -r / 4,
    })
}
