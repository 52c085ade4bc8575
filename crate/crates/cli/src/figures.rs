//! Families of geodesics through the chart point `(0, 1)` in a coordinate
//! plane, sampled from the closed forms.
//!
//! * Figure 1, null, `(x1 = x4, lambda)`: `x = a lambda^2 - a`.
//! * Figure 2, spacelike, `(x1, lambda)`: `(x1 - x0)^2 + lambda^2 = x0^2 + 1`.
//! * Figure 3, timelike, `(x4, lambda)`: `(x4 - x0)^2 - lambda^2 = x0^2 - 1`
//!   for `|x0| >= 1`; `|x0| = 1` gives the straight lines `x4 = +-(1 - lambda)`.
//!
//! Figures 2 and 3 also draw the lambda axis, the geodesic with `x` fixed.

use conformal5::ambient::MinkowskiVector;
use conformal5::geodesics::{ClosedFormGeodesic, DirectionClass};

/// Largest invariant residual a plotted curve may have, at the anchor and
/// at every sample.
pub const CURVE_TOL: f64 = 1e-9;

/// Chart point every family member passes through, as `(x, lambda)`.
pub const ANCHOR: (f64, f64) = (0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub number: u8,
    pub params: Vec<f64>,
    pub x_range: (f64, f64),
    pub lambda_range: (f64, f64),
    pub samples: usize,
}

impl FigureSpec {
    pub fn default_for(number: u8) -> Option<FigureSpec> {
        let linspace = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        };
        let (params, x_range, lambda_range) = match number {
            1 => (linspace(-1.0, 1.0, 11), (-3.0, 3.0), (0.0, 3.0)),
            2 => (linspace(-2.5, 2.5, 11), (-5.0, 5.0), (0.0, 4.0)),
            3 => (
                vec![-5.0, -3.0, -2.0, -1.5, -1.25, -1.0, 1.0, 1.25, 1.5, 2.0, 3.0, 5.0],
                (-4.0, 4.0),
                (0.0, 4.0),
            ),
            _ => return None,
        };
        Some(FigureSpec {
            number,
            params,
            x_range,
            lambda_range,
            samples: 200,
        })
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(1..=3).contains(&self.number) {
            return Err(format!("figure must be 1, 2 or 3, got {}", self.number));
        }
        let (x0, x1) = self.x_range;
        let (l0, l1) = self.lambda_range;
        if !(x0.is_finite() && x1.is_finite() && x0 < x1) {
            return Err(format!("x range {x0},{x1} must be finite and increasing"));
        }
        if !(l0.is_finite() && l1.is_finite() && 0.0 <= l0 && l0 < l1) {
            return Err(format!(
                "lambda range {l0},{l1} must be finite, increasing and nonnegative"
            ));
        }
        if self.samples < 2 {
            return Err("at least 2 samples per curve are required".into());
        }
        if self.params.is_empty() {
            return Err("the family parameter list is empty".into());
        }
        if self.number == 3 {
            if let Some(p) = self.params.iter().find(|p| p.abs() < 1.0) {
                return Err(format!("figure 3 needs |x0| >= 1, got {p}"));
            }
        }
        Ok(())
    }

    pub fn plane_label(&self) -> &'static str {
        match self.number {
            1 => "x1 = x4",
            2 => "x1",
            _ => "x4",
        }
    }
}

/// One plotted family member.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    /// `"a"` or `"x0"`, or `"axis"` for the lambda axis.
    pub family: &'static str,
    pub param: f64,
    /// `(x, lambda)` vertices in plot coordinates.
    pub points: Vec<(f64, f64)>,
    pub anchor_residual: f64,
    pub max_residual: f64,
}

fn unit(i: usize) -> [f64; 4] {
    let mut e = [0.0; 4];
    e[i] = 1.0;
    e
}

fn member(number: u8, p: f64) -> (ClosedFormGeodesic, ClosedFormGeodesic) {
    let at = |i: usize, v: f64| {
        let mut c = [0.0; 4];
        c[i] = v;
        MinkowskiVector(c)
    };
    let geodesic = match number {
        1 => ClosedFormGeodesic::null(MinkowskiVector([-p, 0.0, 0.0, -p]), p, [1.0, 0.0, 0.0, 1.0]),
        2 => ClosedFormGeodesic::spacelike(at(0, p), (p * p + 1.0).sqrt(), unit(0)),
        _ => {
            let d = unit(3).map(|c| -p.signum() * c);
            ClosedFormGeodesic::timelike(at(3, p), (p * p - 1.0).max(0.0).sqrt(), d)
        }
    }
    .expect("normalized direction");
    // left branch of a semicircle
    let mirror = match number {
        2 => ClosedFormGeodesic::spacelike(at(0, p), (p * p + 1.0).sqrt(), unit(0).map(|c| -c)).expect("unit"),
        _ => geodesic,
    };
    (geodesic, mirror)
}

fn lambda_axis() -> ClosedFormGeodesic {
    ClosedFormGeodesic::new(
        conformal5::charts::DomainTag::SigmaMinus,
        DirectionClass::Null,
        MinkowskiVector::zero(),
        0.0,
        [1.0, 0.0, 0.0, 1.0],
    )
    .expect("null direction")
}

fn plot_x(number: u8, x: &MinkowskiVector) -> f64 {
    match number {
        1 | 2 => x.0[0],
        _ => x.0[3],
    }
}

/// Samples of `g` at `lambdas`, as plot coordinates, with the worst residual.
fn trace(
    number: u8,
    g: &ClosedFormGeodesic,
    lambdas: impl Iterator<Item = f64>,
) -> Result<(Vec<(f64, f64)>, f64), String> {
    let mut pts = Vec::new();
    let mut worst: f64 = 0.0;
    for l in lambdas {
        let p = g.point_at(l).map_err(|e| e.to_string())?;
        worst = worst.max(g.invariant_residual(&p.x(), l));
        pts.push((plot_x(number, &p.x()), l));
    }
    Ok((pts, worst))
}

fn lambda_grid(spec: &FigureSpec, hi: f64) -> Vec<f64> {
    let (lo, top) = spec.lambda_range;
    let hi = hi.min(top);
    let n = spec.samples;
    let mut grid: Vec<f64> = if lo > 0.0 {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    } else {
        (1..=n).map(|i| hi * i as f64 / n as f64).collect()
    };
    // the anchor is always a vertex
    if ANCHOR.1 > grid[0] && ANCHOR.1 < hi && !grid.contains(&ANCHOR.1) {
        grid.push(ANCHOR.1);
        grid.sort_by(f64::total_cmp);
    }
    grid.retain(|l| *l > 0.0);
    grid
}

fn anchor_residual(g: &ClosedFormGeodesic, number: u8) -> f64 {
    let x = match number {
        1 => MinkowskiVector([ANCHOR.0, 0.0, 0.0, ANCHOR.0]),
        2 => MinkowskiVector([ANCHOR.0, 0.0, 0.0, 0.0]),
        _ => MinkowskiVector([0.0, 0.0, 0.0, ANCHOR.0]),
    };
    g.invariant_residual(&x, ANCHOR.1)
}

fn build_curve(spec: &FigureSpec, param: Option<f64>) -> Result<Curve, String> {
    let n = spec.number;
    let Some(p) = param else {
        let g = lambda_axis();
        let (points, max_residual) = trace(n, &g, lambda_grid(spec, spec.lambda_range.1).into_iter())?;
        return Ok(Curve {
            family: "axis",
            param: 0.0,
            points,
            anchor_residual: anchor_residual(&g, n),
            max_residual,
        });
    };
    let (g, mirror) = member(n, p);
    let (points, max_residual) = if n == 2 {
        // left foot -> top -> right foot
        let top = g.a();
        if top <= spec.lambda_range.0 {
            return Err(format!("semicircle x0={p} lies below the lambda range"));
        }
        let grid = lambda_grid(spec, top);
        let mut up = grid.clone();
        if spec.lambda_range.1 >= top && up.last() != Some(&top) {
            up.push(top);
        }
        let (mut first, r1) = trace(n, &mirror, up.iter().copied())?;
        let (second, r2) = trace(n, &g, up.iter().rev().copied())?;
        if first.last() == second.first() {
            first.pop();
        }
        first.extend(second);
        (first, r1.max(r2))
    } else {
        trace(n, &g, lambda_grid(spec, spec.lambda_range.1).into_iter())?
    };
    let family = if n == 1 { "a" } else { "x0" };
    Ok(Curve {
        family,
        param: p,
        points,
        anchor_residual: anchor_residual(&g, n),
        max_residual,
    })
}

/// All curves of the figure, in parameter order with the lambda axis last.
/// Fails if any curve misses the anchor or its invariant.
pub fn figure_curves(spec: &FigureSpec, threads: usize) -> Result<Vec<Curve>, String> {
    spec.validate()?;
    let mut members: Vec<Option<f64>> = spec.params.iter().copied().map(Some).collect();
    if spec.number != 1 {
        members.push(None);
    }
    let curves: Vec<Result<Curve, String>> = if threads > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| members.par_iter().map(|m| build_curve(spec, *m)).collect())
    } else {
        members.iter().map(|m| build_curve(spec, *m)).collect()
    };
    let curves = curves.into_iter().collect::<Result<Vec<_>, _>>()?;
    for c in &curves {
        if !(c.anchor_residual <= CURVE_TOL) {
            return Err(format!(
                "curve {}={} misses ({}, {}) by {:e}",
                c.family, c.param, ANCHOR.0, ANCHOR.1, c.anchor_residual
            ));
        }
        if !(c.max_residual <= CURVE_TOL) {
            return Err(format!(
                "curve {}={} violates its invariant by {:e}",
                c.family, c.param, c.max_residual
            ));
        }
    }
    Ok(curves)
}
