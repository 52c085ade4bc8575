//! Minkowski space inside the null cone of R^{4,2}.
//!
//! `tau_plus` places `x` on the section `X5 - X6 = 1`, `tau_minus` on the
//! antipodal section `X5 - X6 = -1`. Under oriented ray equivalence the two
//! images are disjoint copies of Minkowski space in the double cover; cone
//! points with `X5 = X6` project to conformal infinity.

use crate::ambient::{
    classify, minkowski_q, quadratic_form, scale, AmbientVector, EquivalenceRelation, MinkowskiVector, Region,
};
use crate::error::{Error, Result};

/// Result of projecting a cone point back to Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConeProjection {
    Finite(MinkowskiVector),
    /// Ray at conformal infinity, carried by a unit-Euclidean-norm
    /// representative.
    AtInfinity(AmbientVector),
}

impl ConeProjection {
    pub fn finite(&self) -> Option<MinkowskiVector> {
        match self {
            ConeProjection::Finite(x) => Some(*x),
            ConeProjection::AtInfinity(_) => None,
        }
    }

    pub fn is_at_infinity(&self) -> bool {
        matches!(self, ConeProjection::AtInfinity(_))
    }
}

/// `(x, (1 - q(x))/2, -(1 + q(x))/2)`.
pub fn tau(x: &MinkowskiVector) -> AmbientVector {
    let q = minkowski_q(x);
    let [x1, x2, x3, x4] = x.0;
    AmbientVector([x1, x2, x3, x4, 0.5 * (1.0 - q), -0.5 * (1.0 + q)])
}

pub fn tau_plus(x: &MinkowskiVector) -> AmbientVector {
    tau(x)
}

pub fn tau_minus(x: &MinkowskiVector) -> AmbientVector {
    -tau(x)
}

fn require_cone(x: &AmbientVector, tol: f64) -> Result<()> {
    match classify(x, tol)? {
        Region::Cone => Ok(()),
        _ => Err(Error::NotOnCone(quadratic_form(x))),
    }
}

/// Quotient map from the cone to compactified Minkowski space.
///
/// Any representative of the ray is accepted; the finite part is
/// `(X1..X4) / (X5 - X6)`.
pub fn cone_to_minkowski(x: &AmbientVector, tol: f64) -> Result<ConeProjection> {
    require_cone(x, tol)?;
    let u = x.light_cone_u();
    if u.abs() > tol * scale(&[&x.0]) {
        Ok(ConeProjection::Finite(x.minkowski_part() * (1.0 / u)))
    } else {
        Ok(ConeProjection::AtInfinity(infinity_representative(
            x,
            EquivalenceRelation::Oriented,
        )))
    }
}

/// Canonical representative of a ray: unit Euclidean norm, and for the
/// projective quotient the first nonzero component made positive.
pub fn infinity_representative(x: &AmbientVector, rel: EquivalenceRelation) -> AmbientVector {
    let mut rep = *x * (1.0 / x.euclidean_norm());
    if rel == EquivalenceRelation::Projective {
        if let Some(first) = rep.0.iter().copied().find(|c| *c != 0.0) {
            if first < 0.0 {
                rep = -rep;
            }
        }
    }
    rep
}

/// True iff the cone point `x` lies over conformal infinity (`X5 = X6`).
pub fn is_conformal_infinity(x: &AmbientVector, tol: f64) -> Result<bool> {
    require_cone(x, tol)?;
    Ok(x.light_cone_u().abs() <= tol * scale(&[&x.0]))
}

/// The deck transformation `X -> -X` of the double cover.
pub fn antipode(x: &AmbientVector) -> Result<AmbientVector> {
    if x.max_abs() == 0.0 {
        return Err(Error::Apex);
    }
    Ok(-*x)
}
