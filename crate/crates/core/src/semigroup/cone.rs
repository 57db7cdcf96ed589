use super::{LatticePoint, SemigroupError, SemigroupPresentation};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer linear form `(r, s) ↦ r_coeff·r + s_coeff·s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functional {
    pub r: i64,
    pub s: i64,
}

impl Functional {
    pub fn new(r: i64, s: i64) -> Self {
        Self { r, s }
    }

    pub fn eval(&self, p: LatticePoint) -> i64 {
        self.r * p.r + self.s * p.s
    }

    pub fn content(&self) -> i64 {
        self.r.gcd(&self.s)
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, name) in [(self.r, "r"), (self.s, "s")] {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Extremal ray of the cone together with its primitive vanishing functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub direction: LatticePoint,
    pub functional: Functional,
}

/// A strictly convex two-dimensional cone, rays listed counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub rays: [Ray; 2],
}

impl Cone {
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.violated_functional(p).is_none()
    }

    pub fn violated_functional(&self, p: LatticePoint) -> Option<Functional> {
        self.rays.iter().map(|r| r.functional).find(|f| f.eval(p) < 0)
    }
}

/// Extremal rays of the rational cone spanned by the generators.
pub fn cone_rays(sg: &SemigroupPresentation) -> Result<Cone, SemigroupError> {
    let gens = sg.generators();
    if gens.is_empty() {
        return Err(SemigroupError::Empty);
    }
    let mut rays: Vec<Ray> = Vec::new();
    for &g in gens {
        let dir = g.primitive();
        if rays.iter().any(|r| r.direction == dir) {
            continue;
        }
        // the two primitive normals of the line through g
        for normal in [Functional::new(-dir.s, dir.r), Functional::new(dir.s, -dir.r)] {
            let values: Vec<i64> = gens.iter().map(|&x| normal.eval(x)).collect();
            if values.iter().all(|&v| v >= 0) {
                if values.iter().all(|&v| v == 0) {
                    return Err(SemigroupError::NotFullDimensional);
                }
                rays.push(Ray {
                    direction: dir,
                    functional: normal,
                });
                break;
            }
        }
    }
    match rays.as_slice() {
        [a, b] => {
            if a.direction.cross(b.direction) == 0 {
                // opposite rays: the cone is a half-plane
                return Err(SemigroupError::NotStrictlyConvex);
            }
            let (first, second) = if a.direction.cross(b.direction) > 0 { (*a, *b) } else { (*b, *a) };
            Ok(Cone { rays: [first, second] })
        }
        [] => Err(SemigroupError::NotStrictlyConvex),
        _ => Err(SemigroupError::NotStrictlyConvex),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(points: &[(i64, i64)]) -> SemigroupPresentation {
        SemigroupPresentation::new(points.iter().map(|&(r, s)| LatticePoint::new(r, s)).collect()).unwrap()
    }

    #[test]
    fn first_quadrant() {
        let cone = cone_rays(&sg(&[(1, 0), (0, 1)])).unwrap();
        assert_eq!(cone.rays[0].direction, LatticePoint::new(1, 0));
        assert_eq!(cone.rays[0].functional, Functional::new(0, 1));
        assert_eq!(cone.rays[1].direction, LatticePoint::new(0, 1));
        assert_eq!(cone.rays[1].functional, Functional::new(1, 0));
        assert_eq!(cone.rays[0].functional.to_string(), "s");
    }

    #[test]
    fn convex_hull_of_directions() {
        let cone = cone_rays(&sg(&[(1, 0), (1, 1), (1, -1)])).unwrap();
        let dirs: Vec<_> = cone.rays.iter().map(|r| r.direction).collect();
        assert_eq!(dirs, vec![LatticePoint::new(1, -1), LatticePoint::new(1, 1)]);
        for ray in cone.rays {
            assert_eq!(ray.functional.content(), 1);
            assert_eq!(ray.functional.eval(ray.direction), 0);
        }
    }

    #[test]
    fn non_primitive_generators_share_a_ray() {
        let cone = cone_rays(&sg(&[(2, 0), (4, 0), (0, 3)])).unwrap();
        assert_eq!(cone.rays[0].direction, LatticePoint::new(1, 0));
        assert_eq!(cone.rays[1].direction, LatticePoint::new(0, 1));
    }

    #[test]
    fn degenerate_cones_are_rejected() {
        assert_eq!(cone_rays(&sg(&[(1, 0), (2, 0)])), Err(SemigroupError::NotFullDimensional));
        assert_eq!(cone_rays(&sg(&[(1, 0), (-1, 0)])), Err(SemigroupError::NotFullDimensional));
        assert_eq!(cone_rays(&sg(&[(1, 0), (-1, 0), (0, 1)])), Err(SemigroupError::NotStrictlyConvex));
        assert_eq!(
            cone_rays(&sg(&[(1, 0), (0, 1), (-1, -1)])),
            Err(SemigroupError::NotStrictlyConvex)
        );
        assert_eq!(cone_rays(&sg(&[])), Err(SemigroupError::Empty));
    }

    #[test]
    fn functional_display() {
        assert_eq!(Functional::new(7, 5).to_string(), "7r+5s");
        assert_eq!(Functional::new(-1, 2).to_string(), "-r+2s");
        assert_eq!(Functional::new(0, -3).to_string(), "-3s");
    }
}
