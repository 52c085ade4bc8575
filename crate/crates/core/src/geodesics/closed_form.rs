//! Exact geodesics, used as oracles for the integrators and for plotting.
//!
//! Every non-affine geodesic with `dx/dlambda != 0` has the form
//! `x(lambda) = center + f(lambda) d` for a fixed direction `d`. Writing
//! `e = s * eta(d, d)` (`s` the sign of the lambda entry of the flat
//! metric), the scalar profile solves `f'' = f' (1 + e f'^2) / lambda`:
//!
//! * `e = 0`:  `f = a lambda^2` (parabola)
//! * `e = -1`: `f = sqrt(a^2 + lambda^2)` (hyperbola)
//! * `e = +1`: `f = sqrt(a^2 - lambda^2)`, `0 < lambda <= |a|` (semicircle)
//!
//! On `Sigma-` these are the null, timelike and spacelike classes of `x'`.

use super::{DirectionClass, GeodesicPath, GeodesicState, Parameterization, PathSample, Termination};
use crate::ambient::{minkowski_inner, minkowski_q, MinkowskiVector};
use crate::charts::{ChartPoint, DomainTag, Side};
use crate::error::{Error, Result};

const DIRECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Parabola,
    Hyperbola,
    Semicircle,
}

/// Closed-form geodesic parameterized by lambda.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormGeodesic {
    domain: DomainTag,
    side: Side,
    kind: DirectionClass,
    center: MinkowskiVector,
    direction: [f64; 4],
    a: f64,
}

impl ClosedFormGeodesic {
    /// `x(lambda) = base + a lambda^2 u` with `u` null.
    pub fn null(base: MinkowskiVector, a: f64, u: [f64; 4]) -> Result<Self> {
        Self::new(DomainTag::SigmaMinus, DirectionClass::Null, base, a, u)
    }

    /// `x(lambda) = center + sqrt(a^2 + lambda^2) d` with `eta(d, d) = -1`;
    /// in the `(x4, lambda)` plane this is `(x4 - x4_0)^2 - lambda^2 = a^2`.
    pub fn timelike(center: MinkowskiVector, a: f64, d: [f64; 4]) -> Result<Self> {
        Self::new(DomainTag::SigmaMinus, DirectionClass::Timelike, center, a, d)
    }

    /// `x(lambda) = center + sqrt(a^2 - lambda^2) d` with `eta(d, d) = 1`;
    /// in the `(x1, lambda)` plane this is `(x1 - x1_0)^2 + lambda^2 = a^2`.
    pub fn spacelike(center: MinkowskiVector, a: f64, d: [f64; 4]) -> Result<Self> {
        Self::new(DomainTag::SigmaMinus, DirectionClass::Spacelike, center, a, d)
    }

    /// General constructor. `kind` is the class of `d`, which must be
    /// normalized so that `eta(d, d)` is exactly `0`, `-1` or `+1`.
    pub fn new(domain: DomainTag, kind: DirectionClass, center: MinkowskiVector, a: f64, d: [f64; 4]) -> Result<Self> {
        if !(a.is_finite() && center.is_finite() && d.iter().all(|c| c.is_finite())) {
            return Err(Error::ParamDomain("non-finite parameter".into()));
        }
        let n = minkowski_inner(&d, &d);
        let expected = match kind {
            DirectionClass::Null => 0.0,
            DirectionClass::Timelike => -1.0,
            DirectionClass::Spacelike => 1.0,
        };
        if (n - expected).abs() > DIRECTION_TOL * (1.0 + d.iter().map(|c| c * c).sum::<f64>()) {
            return Err(Error::ParamDomain(format!(
                "direction has eta(d, d) = {n}, expected {expected} for {kind:?}"
            )));
        }
        if kind == DirectionClass::Null && d.iter().all(|c| *c == 0.0) && a != 0.0 {
            return Err(Error::ParamDomain("null direction must be nonzero".into()));
        }
        Ok(ClosedFormGeodesic {
            domain,
            side: Side::Positive,
            kind,
            center,
            direction: d,
            a,
        })
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn domain(&self) -> DomainTag {
        self.domain
    }

    pub fn kind(&self) -> DirectionClass {
        self.kind
    }

    pub fn center(&self) -> MinkowskiVector {
        self.center
    }

    pub fn direction(&self) -> [f64; 4] {
        self.direction
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn profile(&self) -> Profile {
        let e = self.domain.lambda_sign() * minkowski_inner(&self.direction, &self.direction);
        if e.abs() < 0.5 {
            Profile::Parabola
        } else if e < 0.0 {
            Profile::Hyperbola
        } else {
            Profile::Semicircle
        }
    }

    fn check_lambda(&self, lambda: f64, closed_top: bool) -> Result<()> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::ParamDomain(format!("lambda must be positive, got {lambda}")));
        }
        if self.profile() == Profile::Semicircle {
            let top = self.a.abs();
            let outside = if closed_top { lambda > top } else { lambda >= top };
            if outside {
                return Err(Error::ParamDomain(format!(
                    "lambda = {lambda} is outside (0, {top}) for a semicircle of radius {top}"
                )));
            }
        }
        Ok(())
    }

    /// Profile value `f(lambda)`. The top of a semicircle (`lambda = |a|`)
    /// is a valid point, even though `dx/dlambda` diverges there.
    pub fn profile_value(&self, lambda: f64) -> Result<f64> {
        self.check_lambda(lambda, true)?;
        let a2 = self.a * self.a;
        Ok(match self.profile() {
            Profile::Parabola => self.a * lambda * lambda,
            Profile::Hyperbola => (a2 + lambda * lambda).sqrt(),
            Profile::Semicircle => (a2 - lambda * lambda).max(0.0).sqrt(),
        })
    }

    /// `f'(lambda)`.
    pub fn profile_slope(&self, lambda: f64) -> Result<f64> {
        self.check_lambda(lambda, false)?;
        let a2 = self.a * self.a;
        Ok(match self.profile() {
            Profile::Parabola => 2.0 * self.a * lambda,
            Profile::Hyperbola => lambda / (a2 + lambda * lambda).sqrt(),
            Profile::Semicircle => -lambda / (a2 - lambda * lambda).sqrt(),
        })
    }

    /// `f''(lambda)`.
    pub fn profile_curvature(&self, lambda: f64) -> Result<f64> {
        self.check_lambda(lambda, false)?;
        let a2 = self.a * self.a;
        Ok(match self.profile() {
            Profile::Parabola => 2.0 * self.a,
            Profile::Hyperbola => a2 / (a2 + lambda * lambda).powf(1.5),
            Profile::Semicircle => -a2 / (a2 - lambda * lambda).powf(1.5),
        })
    }

    pub fn point_at(&self, lambda: f64) -> Result<ChartPoint> {
        let f = self.profile_value(lambda)?;
        let x = MinkowskiVector(std::array::from_fn(|i| self.center.0[i] + f * self.direction[i]));
        ChartPoint::new(self.domain, x, lambda, self.side)
    }

    /// `dx/dlambda`.
    pub fn velocity_at(&self, lambda: f64) -> Result<[f64; 4]> {
        let f1 = self.profile_slope(lambda)?;
        Ok(self.direction.map(|d| f1 * d))
    }

    /// `d^2x/dlambda^2`.
    pub fn acceleration_at(&self, lambda: f64) -> Result<[f64; 4]> {
        let f2 = self.profile_curvature(lambda)?;
        Ok(self.direction.map(|d| f2 * d))
    }

    /// Lambda-parameterized state at `lambda`, suitable as integrator input.
    pub fn state_at(&self, lambda: f64) -> Result<GeodesicState> {
        Ok(GeodesicState::lambda_parameterized(
            self.point_at(lambda)?,
            self.velocity_at(lambda)?,
        ))
    }

    /// Residual of the algebraic invariant of the family at a chart point.
    ///
    /// Parabola: `max |x - center - a lambda^2 d|`. Hyperbola and semicircle:
    /// `|q(x - center) - eta(d, d) f(lambda)^2|`, which in the coordinate
    /// planes reads `(x4 - x4_0)^2 - lambda^2 - a^2` and
    /// `(x1 - x1_0)^2 + lambda^2 - a^2`.
    pub fn invariant_residual(&self, x: &MinkowskiVector, lambda: f64) -> f64 {
        let rel = *x - self.center;
        let a2 = self.a * self.a;
        let l2 = lambda * lambda;
        match self.profile() {
            Profile::Parabola => (0..4)
                .map(|i| (rel.0[i] - self.a * l2 * self.direction[i]).abs())
                .fold(0.0, f64::max),
            Profile::Hyperbola => {
                let n = minkowski_inner(&self.direction, &self.direction);
                (minkowski_q(&rel) - n * (a2 + l2)).abs()
            }
            Profile::Semicircle => {
                let n = minkowski_inner(&self.direction, &self.direction);
                (minkowski_q(&rel) - n * (a2 - l2)).abs()
            }
        }
    }

    /// Samples the curve at the given lambda values (strictly monotone).
    pub fn sample(&self, lambdas: &[f64]) -> Result<GeodesicPath> {
        let increasing = lambdas.len() < 2 || lambdas[1] > lambdas[0];
        let monotone = lambdas
            .windows(2)
            .all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
        if !monotone {
            return Err(Error::ParamDomain("lambda samples must be strictly monotone".into()));
        }
        let samples = lambdas
            .iter()
            .map(|&l| {
                // the top of a semicircle has no finite lambda-velocity
                let v = self.velocity_at(l).unwrap_or([f64::INFINITY; 4]);
                Ok(PathSample {
                    param: l,
                    state: GeodesicState::lambda_parameterized(self.point_at(l)?, v),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeodesicPath {
            parameterization: Parameterization::Lambda,
            samples,
            termination: Termination::Completed,
        })
    }
}

/// Null line `x(s) = base + s u` at constant lambda, an affine geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullLine {
    domain: DomainTag,
    base: MinkowskiVector,
    lambda: f64,
    direction: [f64; 4],
}

impl NullLine {
    pub fn new(domain: DomainTag, base: MinkowskiVector, lambda: f64, u: [f64; 4]) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidLambda(lambda));
        }
        let n = minkowski_inner(&u, &u);
        if n.abs() > DIRECTION_TOL * (1.0 + u.iter().map(|c| c * c).sum::<f64>()) {
            return Err(Error::ParamDomain(format!("direction is not null: eta(u, u) = {n}")));
        }
        Ok(NullLine {
            domain,
            base,
            lambda,
            direction: u,
        })
    }

    pub fn state_at(&self, s: f64) -> Result<GeodesicState> {
        let x = MinkowskiVector(std::array::from_fn(|i| self.base.0[i] + s * self.direction[i]));
        let [a, b, c, d] = self.direction;
        Ok(GeodesicState::new(
            ChartPoint::new(self.domain, x, self.lambda, Side::Positive)?,
            [a, b, c, d, 0.0],
        ))
    }

    pub fn sample(&self, params: &[f64]) -> Result<GeodesicPath> {
        if params.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::ParamDomain("affine samples must be strictly increasing".into()));
        }
        let samples = params
            .iter()
            .map(|&s| {
                Ok(PathSample {
                    param: s,
                    state: self.state_at(s)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeodesicPath {
            parameterization: Parameterization::Affine,
            samples,
            termination: Termination::Completed,
        })
    }
}
