//! Fixed-step classical RK4 for both geodesic parameterizations.

use super::{affine_acceleration, GeodesicPath, GeodesicState, Parameterization, PathSample, Termination};
use crate::ambient::minkowski_inner;
use crate::charts::{ChartPoint, DomainTag, Side};
use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_LAMBDA_FLOOR: f64 = 1e-6;

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidStep(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + a * k[i])
}

fn rk4_step<const N: usize, F>(y: &[f64; N], h: f64, f: F) -> Option<[f64; N]>
where
    F: Fn(&[f64; N], f64) -> Option<[f64; N]>,
{
    let k1 = f(y, 0.0)?;
    let k2 = f(&axpy(y, 0.5 * h, &k1), 0.5 * h)?;
    let k3 = f(&axpy(y, 0.5 * h, &k2), 0.5 * h)?;
    let k4 = f(&axpy(y, h, &k3), h)?;
    Some(std::array::from_fn(|i| {
        y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

/// Integrates the affine geodesic equations on `[0, s_max]`.
///
/// The step count is `ceil(s_max / h)` and the step is shrunk to land on
/// `s_max` exactly. Integration stops with [`Termination::LambdaFloorReached`]
/// when a step would take `lambda` to or below `lambda_floor`, and with
/// [`Termination::StepFailure`] on non-finite values.
pub fn integrate_affine(initial: &GeodesicState, s_max: f64, h: f64, lambda_floor: f64) -> Result<GeodesicPath> {
    check_positive("step", h)?;
    check_positive("s_max", s_max)?;
    check_positive("lambda floor", lambda_floor)?;
    if initial.velocity.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("initial velocity"));
    }
    let p0 = initial.point;
    if p0.lambda() <= lambda_floor {
        return Err(Error::InvalidStep(format!(
            "initial lambda {} is not above the floor {lambda_floor}",
            p0.lambda()
        )));
    }
    let domain = p0.domain();
    let side = p0.side();
    let n = (s_max / h).ceil() as usize;
    let ds = s_max / n as f64;

    let mut y = [0.0; 10];
    y[..5].copy_from_slice(&p0.coords());
    y[5..].copy_from_slice(&initial.velocity);

    let rhs = |y: &[f64; 10], _: f64| -> Option<[f64; 10]> {
        let lambda = y[4];
        if !(lambda > 0.0) {
            return None;
        }
        let v = [y[5], y[6], y[7], y[8], y[9]];
        let a = affine_acceleration(domain, lambda, &v);
        let mut out = [0.0; 10];
        out[..5].copy_from_slice(&v);
        out[5..].copy_from_slice(&a);
        Some(out)
    };

    let mut samples = Vec::with_capacity(n + 1);
    samples.push(PathSample {
        param: 0.0,
        state: *initial,
    });
    let mut termination = Termination::Completed;
    for i in 1..=n {
        let next = match rk4_step(&y, ds, rhs) {
            Some(next) => next,
            None => {
                termination = Termination::LambdaFloorReached;
                break;
            }
        };
        if next.iter().any(|v| !v.is_finite()) {
            termination = Termination::StepFailure;
            break;
        }
        if next[4] <= lambda_floor {
            termination = Termination::LambdaFloorReached;
            break;
        }
        y = next;
        let point = state_point(domain, side, &y)?;
        let s = if i == n { s_max } else { i as f64 * ds };
        samples.push(PathSample {
            param: s,
            state: GeodesicState::new(point, [y[5], y[6], y[7], y[8], y[9]]),
        });
    }
    Ok(GeodesicPath {
        parameterization: Parameterization::Affine,
        samples,
        termination,
    })
}

fn state_point(domain: DomainTag, side: Side, y: &[f64]) -> Result<ChartPoint> {
    ChartPoint::from_coords(domain, side, [y[0], y[1], y[2], y[3], y[4]])
}

/// Integrates `x'' = x'(1 + s x'^2)/lambda` from `start.point.lambda()` to
/// `lambda_end`, in either direction.
///
/// Only the first four velocity components of `start` are used (`dx/dlambda`).
pub fn integrate_lambda(start: &GeodesicState, lambda_end: f64, h: f64) -> Result<GeodesicPath> {
    check_positive("step", h)?;
    if !(lambda_end > 0.0 && lambda_end.is_finite()) {
        return Err(Error::InvalidLambda(lambda_end));
    }
    let xprime0 = start.xprime();
    if xprime0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("initial direction"));
    }
    let p0 = start.point;
    let domain = p0.domain();
    let side = p0.side();
    let s = domain.lambda_sign();
    let lambda0 = p0.lambda();
    let span = lambda_end - lambda0;
    let n = (span.abs() / h).ceil() as usize;

    let first = PathSample {
        param: lambda0,
        state: GeodesicState::lambda_parameterized(p0, xprime0),
    };
    if n == 0 {
        return Ok(GeodesicPath {
            parameterization: Parameterization::Lambda,
            samples: vec![first],
            termination: Termination::Completed,
        });
    }
    let dl = span / n as f64;

    let mut y = [0.0; 8];
    y[..4].copy_from_slice(&p0.x().0);
    y[4..].copy_from_slice(&xprime0);
    let mut lambda = lambda0;

    let mut samples = Vec::with_capacity(n + 1);
    samples.push(first);
    let mut termination = Termination::Completed;
    for i in 1..=n {
        let base = lambda;
        let rhs = |y: &[f64; 8], offset: f64| -> Option<[f64; 8]> {
            let l = base + offset;
            if !(l > 0.0) {
                return None;
            }
            let xp = [y[4], y[5], y[6], y[7]];
            let k = (1.0 + s * minkowski_inner(&xp, &xp)) / l;
            Some([xp[0], xp[1], xp[2], xp[3], k * xp[0], k * xp[1], k * xp[2], k * xp[3]])
        };
        let next = match rk4_step(&y, dl, rhs) {
            Some(next) if next.iter().all(|v| v.is_finite()) => next,
            _ => {
                termination = Termination::StepFailure;
                break;
            }
        };
        y = next;
        lambda = if i == n { lambda_end } else { lambda0 + i as f64 * dl };
        let point = ChartPoint::from_coords(domain, side, [y[0], y[1], y[2], y[3], lambda])?;
        samples.push(PathSample {
            param: lambda,
            state: GeodesicState::lambda_parameterized(point, [y[4], y[5], y[6], y[7]]),
        });
    }
    Ok(GeodesicPath {
        parameterization: Parameterization::Lambda,
        samples,
        termination,
    })
}
