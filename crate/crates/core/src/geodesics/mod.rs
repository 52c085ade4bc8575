//! Christoffel symbols and geodesic equations of the half-space charts.
//!
//! With `g = (1/lambda^2) diag(eta, s)` (`s = +1` on `Sigma-`, `-1` on
//! `Sigma+`) the nonzero symbols are
//!
//! ```text
//! Gamma^mu_{5 sigma} = -delta^mu_sigma / lambda
//! Gamma^5_{nu sigma} =  s * eta_{nu sigma} / lambda
//! Gamma^5_{55}       = -1 / lambda
//! ```
//!
//! Indices are 0-based in code: `0..4` are `x1..x4`, `4` is `lambda`.

mod closed_form;
mod integrate;
mod plane;

pub use closed_form::{ClosedFormGeodesic, NullLine, Profile};
pub use integrate::{integrate_affine, integrate_lambda, DEFAULT_LAMBDA_FLOOR, DEFAULT_STEP};
pub use plane::{plane_section_residual, singular_values};

use crate::ambient::{minkowski_inner, scale, MINKOWSKI_SIGNS};
use crate::charts::{metric_closed_form, ChartPoint, DomainTag};
use crate::error::{Error, Result};

/// `Gamma^alpha_{beta gamma}` stored as `[alpha][beta][gamma]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelSymbols(pub [[[f64; 5]; 5]; 5]);

impl ChristoffelSymbols {
    pub fn zero() -> Self {
        ChristoffelSymbols([[[0.0; 5]; 5]; 5])
    }

    pub fn get(&self, alpha: usize, beta: usize, gamma: usize) -> f64 {
        self.0[alpha][beta][gamma]
    }

    pub fn max_abs_diff(&self, other: &ChristoffelSymbols) -> f64 {
        let mut m = 0.0_f64;
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    m = m.max((self.0[a][b][c] - other.0[a][b][c]).abs());
                }
            }
        }
        m
    }

    /// Largest violation of symmetry in the lower index pair.
    pub fn symmetry_defect(&self) -> f64 {
        let mut m = 0.0_f64;
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    m = m.max((self.0[a][b][c] - self.0[a][c][b]).abs());
                }
            }
        }
        m
    }

    /// Entries with `|value| > threshold`, as `((alpha, beta, gamma), value)`.
    pub fn nonzero(&self, threshold: f64) -> Vec<((usize, usize, usize), f64)> {
        let mut out = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    if self.0[a][b][c].abs() > threshold {
                        out.push(((a, b, c), self.0[a][b][c]));
                    }
                }
            }
        }
        out
    }
}

/// Position and velocity along a geodesic.
///
/// For affine parameterization `velocity = (dx/ds, dlambda/ds)`. For the
/// lambda parameterization it is `(dx/dlambda, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub point: ChartPoint,
    pub velocity: [f64; 5],
}

impl GeodesicState {
    pub fn new(point: ChartPoint, velocity: [f64; 5]) -> Self {
        GeodesicState { point, velocity }
    }

    pub fn lambda_parameterized(point: ChartPoint, xprime: [f64; 4]) -> Self {
        let [a, b, c, d] = xprime;
        GeodesicState {
            point,
            velocity: [a, b, c, d, 1.0],
        }
    }

    pub fn xprime(&self) -> [f64; 4] {
        [self.velocity[0], self.velocity[1], self.velocity[2], self.velocity[3]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameterization {
    Affine,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Completed,
    LambdaFloorReached,
    StepFailure,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub param: f64,
    pub state: GeodesicState,
}

/// Sampled geodesic. Parameter values are strictly monotone.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub parameterization: Parameterization,
    pub samples: Vec<PathSample>,
    pub termination: Termination,
}

impl GeodesicPath {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &ChartPoint> + '_ {
        self.samples.iter().map(|s| &s.state.point)
    }

    pub fn last(&self) -> Option<&PathSample> {
        self.samples.last()
    }
}

/// Sign class of `x'^2 = eta(x', x')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionClass {
    Null,
    Timelike,
    Spacelike,
}

pub fn christoffel_closed_form(p: &ChartPoint) -> ChristoffelSymbols {
    let inv = 1.0 / p.lambda();
    let s = p.domain().lambda_sign();
    let mut g = ChristoffelSymbols::zero();
    for mu in 0..4 {
        g.0[mu][4][mu] = -inv;
        g.0[mu][mu][4] = -inv;
        g.0[4][mu][mu] = s * MINKOWSKI_SIGNS[mu] * inv;
    }
    g.0[4][4][4] = -inv;
    g
}

/// Christoffel symbols from the Levi-Civita formula, with metric derivatives
/// taken by central differences of [`metric_closed_form`].
pub fn christoffel_numerical(p: &ChartPoint, h: f64) -> Result<ChristoffelSymbols> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let c = p.coords();
    let lam_step = h * c[4].max(1.0);
    if h >= p.lambda() || lam_step >= p.lambda() {
        return Err(Error::StepTooLarge {
            step: h,
            lambda: p.lambda(),
        });
    }
    // dg[d][i][j] = d_d g_ij
    let mut dg = [[[0.0; 5]; 5]; 5];
    for (d, slot) in dg.iter_mut().enumerate() {
        let step = h * c[d].abs().max(1.0);
        let mut fwd = c;
        let mut bwd = c;
        fwd[d] += step;
        bwd[d] -= step;
        let gf = metric_closed_form(&ChartPoint::from_coords(p.domain(), p.side(), fwd)?);
        let gb = metric_closed_form(&ChartPoint::from_coords(p.domain(), p.side(), bwd)?);
        for i in 0..5 {
            for j in 0..5 {
                slot[i][j] = (gf.get(i, j) - gb.get(i, j)) / (2.0 * step);
            }
        }
    }
    let ginv = metric_closed_form(p)
        .inverse()
        .ok_or(Error::NonFinite("singular metric"))?;
    let mut out = ChristoffelSymbols::zero();
    for a in 0..5 {
        for b in 0..5 {
            for cc in 0..5 {
                let mut acc = 0.0;
                for d in 0..5 {
                    acc += ginv[(a, d)] * (dg[b][d][cc] + dg[cc][d][b] - dg[d][b][cc]);
                }
                out.0[a][b][cc] = 0.5 * acc;
            }
        }
    }
    Ok(out)
}

/// Acceleration `-Gamma^alpha_{beta gamma} v^beta v^gamma` in closed form.
pub(crate) fn affine_acceleration(domain: DomainTag, lambda: f64, v: &[f64; 5]) -> [f64; 5] {
    let xdot = [v[0], v[1], v[2], v[3]];
    let ldot = v[4];
    let s = domain.lambda_sign();
    let k = 2.0 * ldot / lambda;
    [
        k * v[0],
        k * v[1],
        k * v[2],
        k * v[3],
        -(s * minkowski_inner(&xdot, &xdot) - ldot * ldot) / lambda,
    ]
}

/// Right-hand side of the affine geodesic system: `(velocity, acceleration)`.
pub fn affine_rhs(state: &GeodesicState) -> [f64; 10] {
    let acc = affine_acceleration(state.point.domain(), state.point.lambda(), &state.velocity);
    let mut out = [0.0; 10];
    out[..5].copy_from_slice(&state.velocity);
    out[5..].copy_from_slice(&acc);
    out
}

/// `x''^mu = x'^mu (1 + s x'^2) / lambda`, geodesics parameterized by lambda.
pub fn lambda_rhs(domain: DomainTag, xprime: &[f64; 4], lambda: f64) -> Result<[f64; 4]> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidLambda(lambda));
    }
    let k = (1.0 + domain.lambda_sign() * minkowski_inner(xprime, xprime)) / lambda;
    Ok(xprime.map(|c| c * k))
}

/// Ties within tolerance are classified as `Null`.
pub fn classify_direction(xprime: &[f64; 4], tol: f64) -> DirectionClass {
    let n = minkowski_inner(xprime, xprime);
    let bound = tol * scale(&[xprime]);
    if n.abs() <= bound {
        DirectionClass::Null
    } else if n < 0.0 {
        DirectionClass::Timelike
    } else {
        DirectionClass::Spacelike
    }
}

/// `g(v, v)` at the state's point.
pub fn metric_speed(state: &GeodesicState) -> f64 {
    metric_closed_form(&state.point).contract(&state.velocity, &state.velocity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::MinkowskiVector;
    use crate::charts::Side;

    fn sm(x: [f64; 4], lambda: f64) -> ChartPoint {
        ChartPoint::positive(DomainTag::SigmaMinus, x, lambda).unwrap()
    }

    #[test]
    fn closed_form_christoffel_examples() {
        let g = christoffel_closed_form(&sm([0.0; 4], 1.0));
        assert_eq!(g.get(0, 4, 0), -1.0);
        assert_eq!(g.get(0, 0, 4), -1.0);
        assert_eq!(g.get(4, 3, 3), -1.0);
        assert_eq!(g.get(4, 0, 0), 1.0);
        assert_eq!(g.get(4, 4, 4), -1.0);
        let g = christoffel_closed_form(&sm([1.0, 2.0, 3.0, 4.0], 0.5));
        assert_eq!(g.get(1, 4, 1), -2.0);
        assert_eq!(g.get(0, 1, 2), 0.0);
        assert_eq!(g.symmetry_defect(), 0.0);
        // 4 + 4 mixed entries, 4 eta entries, one Gamma^5_55
        assert_eq!(g.nonzero(0.0).len(), 13);
    }

    #[test]
    fn numerical_christoffel_matches() {
        let p = sm([0.0; 4], 1.0);
        let d = christoffel_numerical(&p, 1e-5)
            .unwrap()
            .max_abs_diff(&christoffel_closed_form(&p));
        assert!(d <= 1e-6, "{d}");
        let p = sm([0.3, -2.0, 1.0, 0.0], 10.0);
        let num = christoffel_numerical(&p, 1e-5).unwrap();
        assert!(num.max_abs_diff(&christoffel_closed_form(&p)) <= 1e-7);
        assert!(num.symmetry_defect() <= 1e-12);
    }

    #[test]
    fn sigma_plus_christoffel_from_metric() {
        let p = ChartPoint::positive(DomainTag::SigmaPlus, [1.0, -1.0, 0.5, 2.0], 0.8).unwrap();
        let closed = christoffel_closed_form(&p);
        assert_eq!(closed.get(4, 0, 0), -1.0 / 0.8);
        assert_eq!(closed.get(4, 3, 3), 1.0 / 0.8);
        let d = christoffel_numerical(&p, 1e-5).unwrap().max_abs_diff(&closed);
        assert!(d <= 1e-6, "{d}");
    }

    #[test]
    fn christoffel_step_errors() {
        let p = sm([0.0; 4], 0.1);
        assert!(matches!(
            christoffel_numerical(&p, 0.2),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn affine_rhs_examples() {
        let s = GeodesicState::new(sm([0.0; 4], 1.0), [1.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(&affine_rhs(&s)[5..], &[0.0; 5]);
        let s = GeodesicState::new(sm([0.0; 4], 1.0), [0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(affine_rhs(&s)[9], 1.0);
        let s = GeodesicState::new(sm([0.0; 4], 2.0), [1.0, 0.0, 0.0, 0.0, 1.0]);
        let r = affine_rhs(&s);
        assert_eq!(r[5], 1.0);
        assert_eq!(r[9], 0.0);
        assert_eq!(&r[..5], &s.velocity);
    }

    #[test]
    fn affine_rhs_matches_christoffel_contraction() {
        for domain in [DomainTag::SigmaMinus, DomainTag::SigmaPlus] {
            let p = ChartPoint::new(domain, MinkowskiVector([0.2, 1.0, -3.0, 0.4]), 1.7, Side::Negative).unwrap();
            let v = [0.3, -0.7, 1.1, 0.9, -0.25];
            let gamma = christoffel_closed_form(&p);
            let acc = affine_rhs(&GeodesicState::new(p, v));
            for a in 0..5 {
                let mut expected = 0.0;
                for b in 0..5 {
                    for c in 0..5 {
                        expected -= gamma.get(a, b, c) * v[b] * v[c];
                    }
                }
                assert!((acc[5 + a] - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn lambda_rhs_examples() {
        let m = DomainTag::SigmaMinus;
        assert_eq!(lambda_rhs(m, &[0.0; 4], 3.0).unwrap(), [0.0; 4]);
        assert_eq!(lambda_rhs(m, &[1.0, 0.0, 0.0, 1.0], 2.0).unwrap(), [0.5, 0.0, 0.0, 0.5]);
        assert_eq!(lambda_rhs(m, &[1.0, 0.0, 0.0, 0.0], 1.0).unwrap(), [2.0, 0.0, 0.0, 0.0]);
        assert_eq!(lambda_rhs(m, &[1.0; 4], 0.0), Err(Error::InvalidLambda(0.0)));
        // null directions reduce to x'' = x'/lambda
        let u = [0.6, 0.0, 0.8, 1.0];
        assert_eq!(lambda_rhs(m, &u, 4.0).unwrap(), u.map(|c| c / 4.0));
        assert_eq!(
            lambda_rhs(DomainTag::SigmaPlus, &[1.0, 0.0, 0.0, 0.0], 1.0).unwrap(),
            [0.0; 4]
        );
    }

    #[test]
    fn direction_classes() {
        assert_eq!(classify_direction(&[1.0, 0.0, 0.0, 1.0], 1e-9), DirectionClass::Null);
        assert_eq!(
            classify_direction(&[0.0, 0.0, 0.0, 1.0], 1e-9),
            DirectionClass::Timelike
        );
        assert_eq!(
            classify_direction(&[1.0, 0.0, 0.0, 0.0], 1e-9),
            DirectionClass::Spacelike
        );
        assert_eq!(classify_direction(&[0.0; 4], 1e-9), DirectionClass::Null);
        // tie at the tolerance boundary goes to Null
        let eps: f64 = 1e-9 * 2.0;
        assert_eq!(
            classify_direction(&[1.0, 0.0, 0.0, (1.0 - eps).sqrt()], 1e-9),
            DirectionClass::Null
        );
    }

    #[test]
    fn metric_speed_examples() {
        assert_eq!(
            metric_speed(&GeodesicState::new(sm([0.0; 4], 1.0), [1.0, 0.0, 0.0, 1.0, 0.0])),
            0.0
        );
        assert_eq!(
            metric_speed(&GeodesicState::new(sm([0.0; 4], 2.0), [1.0, 0.0, 0.0, 0.0, 0.0])),
            0.25
        );
        assert_eq!(
            metric_speed(&GeodesicState::new(sm([0.0; 4], 1.0), [0.0, 0.0, 0.0, 1.0, 0.0])),
            -1.0
        );
    }
}
