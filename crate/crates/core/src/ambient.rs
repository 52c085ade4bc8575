//! The ambient space R^{4,2} and Minkowski space R^{3,1}.
//!
//! Signature conventions are fixed: the ambient form is
//! `diag(1, 1, 1, -1, 1, -1)` and the Minkowski form is `diag(1, 1, 1, -1)`,
//! with `x4` timelike in both. All approximate comparisons use an absolute
//! tolerance multiplied by `1 + |inputs|^2` (see [`scale`]).

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default tolerance for approximate comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Diagonal of the ambient metric G.
pub const AMBIENT_SIGNS: [f64; 6] = [1.0, 1.0, 1.0, -1.0, 1.0, -1.0];

/// Diagonal of the Minkowski metric eta.
pub const MINKOWSKI_SIGNS: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

/// Tolerance scale `1 + sum of squared components` over all given slices.
pub fn scale(parts: &[&[f64]]) -> f64 {
    1.0 + parts.iter().flat_map(|p| p.iter()).map(|c| c * c).sum::<f64>()
}

/// A point of R^{4,2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientVector(pub [f64; 6]);

/// A point of Minkowski space R^{3,1}.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MinkowskiVector(pub [f64; 4]);

/// Classification of a nonzero ambient vector relative to the null cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Cone,
    DPlus,
    DMinus,
}

/// Ray identification on the cone: nonzero scalars (`Projective`) or
/// positive scalars only (`Oriented`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceRelation {
    Projective,
    Oriented,
}

macro_rules! impl_vector_ops {
    ($ty:ident, $n:expr) => {
        impl $ty {
            pub fn components(&self) -> &[f64; $n] {
                &self.0
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|c| c.is_finite())
            }

            /// Euclidean norm of the components.
            pub fn euclidean_norm(&self) -> f64 {
                self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
            }

            pub fn max_abs(&self) -> f64 {
                self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
            }

            pub fn scaled(&self, c: f64) -> Self {
                *self * c
            }
        }

        impl From<[f64; $n]> for $ty {
            fn from(v: [f64; $n]) -> Self {
                $ty(v)
            }
        }

        impl Index<usize> for $ty {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                $ty(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                $ty(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
            }
        }

        impl Mul<f64> for $ty {
            type Output = $ty;
            fn mul(self, c: f64) -> $ty {
                $ty(self.0.map(|v| v * c))
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(self.0.map(|v| -v))
            }
        }
    };
}

impl_vector_ops!(AmbientVector, 6);
impl_vector_ops!(MinkowskiVector, 4);

impl AmbientVector {
    pub fn new(components: [f64; 6]) -> Self {
        AmbientVector(components)
    }

    /// The Minkowski part `(X1, X2, X3, X4)`.
    pub fn minkowski_part(&self) -> MinkowskiVector {
        MinkowskiVector([self.0[0], self.0[1], self.0[2], self.0[3]])
    }

    /// `X5 - X6`, the coordinate that fixes the section of the cone.
    pub fn light_cone_u(&self) -> f64 {
        self.0[4] - self.0[5]
    }
}

impl MinkowskiVector {
    pub fn new(components: [f64; 4]) -> Self {
        MinkowskiVector(components)
    }

    pub fn zero() -> Self {
        MinkowskiVector([0.0; 4])
    }

    /// Minkowski scalar product with `eta = diag(1, 1, 1, -1)`.
    pub fn dot(&self, other: &MinkowskiVector) -> f64 {
        minkowski_inner(&self.0, &other.0)
    }
}

/// Ambient scalar product `X1Y1 + X2Y2 + X3Y3 - X4Y4 + X5Y5 - X6Y6`.
pub fn inner(x: &AmbientVector, y: &AmbientVector) -> f64 {
    x.0.iter()
        .zip(y.0.iter())
        .zip(AMBIENT_SIGNS.iter())
        .map(|((a, b), s)| s * a * b)
        .sum()
}

/// `Q(X) = (X, X)`.
pub fn quadratic_form(x: &AmbientVector) -> f64 {
    inner(x, x)
}

pub(crate) fn minkowski_inner(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2] - x[3] * y[3]
}

/// `q(x) = (x1)^2 + (x2)^2 + (x3)^2 - (x4)^2`.
pub fn minkowski_q(x: &MinkowskiVector) -> f64 {
    minkowski_inner(&x.0, &x.0)
}

/// Locates `x` on the cone or in one of the two open domains `D+`, `D-`.
pub fn classify(x: &AmbientVector, tol: f64) -> Result<Region> {
    if x.max_abs() <= tol {
        return Err(Error::Apex);
    }
    let q = quadratic_form(x);
    let bound = tol * scale(&[&x.0]);
    Ok(if q.abs() <= bound {
        Region::Cone
    } else if q > 0.0 {
        Region::DPlus
    } else {
        Region::DMinus
    })
}

/// Rescales an off-cone vector to the unit hyperboloid `Q = +1` or `Q = -1`
/// by a positive factor, so the result stays in the same oriented ray.
pub fn normalize_to_sigma(x: &AmbientVector) -> Result<AmbientVector> {
    normalize_to_sigma_tol(x, DEFAULT_TOL)
}

pub fn normalize_to_sigma_tol(x: &AmbientVector, tol: f64) -> Result<AmbientVector> {
    match classify(x, tol)? {
        Region::Cone => Err(Error::OnCone(quadratic_form(x))),
        Region::DPlus | Region::DMinus => Ok(*x * (1.0 / quadratic_form(x).abs().sqrt())),
    }
}

/// Whether `x = c * y` for some admissible scalar `c`.
///
/// `c` is read off the largest-magnitude component of `y`, so the division is
/// never by a near-zero entry.
pub fn ray_equivalent(x: &AmbientVector, y: &AmbientVector, rel: EquivalenceRelation, tol: f64) -> Result<bool> {
    if x.max_abs() <= tol || y.max_abs() <= tol {
        return Err(Error::Apex);
    }
    let k = (0..6)
        .max_by(|&i, &j| y.0[i].abs().total_cmp(&y.0[j].abs()))
        .expect("six components");
    let c = x.0[k] / y.0[k];
    let admissible = match rel {
        EquivalenceRelation::Projective => c != 0.0,
        EquivalenceRelation::Oriented => c > 0.0,
    };
    if !admissible {
        return Ok(false);
    }
    let bound = tol * scale(&[&x.0, &y.0]);
    Ok((0..6).all(|i| (x.0[i] - c * y.0[i]).abs() <= bound))
}
