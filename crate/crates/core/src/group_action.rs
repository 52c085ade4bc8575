//! The group O(4,2) acting on R^{4,2}, on the charts of `Sigma+-`, and by
//! conformal maps on Minkowski space.
//!
//! Generators are explicit 6x6 matrices. Translations and special conformal
//! transformations are easiest to read in the light-cone pair
//! `u = X5 - X6`, `v = X5 + X6`, for which `Q = q(X1..X4) + u v`:
//!
//! ```text
//! Translation(a):       X -> X + a u,  u -> u,  v -> v - 2 eta(a, X) - q(a) u
//! SpecialConformal(b):  X -> X - b v,  v -> v,  u -> u + 2 eta(b, X) - q(b) v
//! Inversion:            X5 -> -X5      (u <-> -v, so x -> x / q(x))
//! ```

use std::ops::Mul;

use nalgebra::{Matrix5, Matrix6, Vector6};

use crate::ambient::{minkowski_q, scale, AmbientVector, MinkowskiVector, AMBIENT_SIGNS, DEFAULT_TOL, MINKOWSKI_SIGNS};
use crate::charts::{ambient_to_chart, chart_to_ambient, metric_closed_form, ChartPoint};
use crate::compactification::tau_plus;
use crate::error::{Error, Result};

fn ambient_metric() -> Matrix6<f64> {
    Matrix6::from_diagonal(&Vector6::from_row_slice(&AMBIENT_SIGNS))
}

/// `max |M^T G M - G|`.
pub fn conformal_defect(m: &Matrix6<f64>) -> f64 {
    let g = ambient_metric();
    (m.transpose() * g * m - g).abs().max()
}

/// Whether `M^T G M = G` entrywise within `tol`.
pub fn is_conformal_matrix(m: &Matrix6<f64>, tol: f64) -> bool {
    m.iter().all(|v| v.is_finite()) && conformal_defect(m) <= tol
}

/// An element of O(4,2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalMatrix(Matrix6<f64>);

impl ConformalMatrix {
    pub fn new(m: Matrix6<f64>, tol: f64) -> Result<Self> {
        if is_conformal_matrix(&m, tol) {
            Ok(ConformalMatrix(m))
        } else {
            Err(Error::NotConformal(conformal_defect(&m)))
        }
    }

    pub fn identity() -> Self {
        ConformalMatrix(Matrix6::identity())
    }

    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    /// `G^{-1} M^T G`.
    pub fn inverse(&self) -> ConformalMatrix {
        let g = ambient_metric();
        ConformalMatrix(g * self.0.transpose() * g)
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Row-major entries.
    pub fn to_rows(&self) -> [[f64; 6]; 6] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }
}

impl Mul for ConformalMatrix {
    type Output = ConformalMatrix;
    fn mul(self, rhs: ConformalMatrix) -> ConformalMatrix {
        ConformalMatrix(self.0 * rhs.0)
    }
}

/// Named one-parameter subgroups and discrete elements of O(4,2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorSpec {
    /// Rotation or boost in the coordinate plane `(i, j)` of R^{4,2}
    /// (0-based ambient indices). Planes mixing a positive and a negative
    /// direction give hyperbolic rotations with rapidity `angle`.
    Rotation {
        plane: (usize, usize),
        angle: f64,
    },
    /// Hyperbolic rotation in the `(X5, X6)` plane; induces `x -> e^t x`.
    Dilation(f64),
    Translation(MinkowskiVector),
    SpecialConformal(MinkowskiVector),
    /// Reflection `X5 -> -X5`.
    Inversion,
}

fn plane_rotation(i: usize, j: usize, angle: f64) -> Matrix6<f64> {
    let mut m = Matrix6::identity();
    if AMBIENT_SIGNS[i] == AMBIENT_SIGNS[j] {
        let (s, c) = angle.sin_cos();
        m[(i, i)] = c;
        m[(i, j)] = -s;
        m[(j, i)] = s;
        m[(j, j)] = c;
    } else {
        let (s, c) = (angle.sinh(), angle.cosh());
        m[(i, i)] = c;
        m[(i, j)] = s;
        m[(j, i)] = s;
        m[(j, j)] = c;
    }
    m
}

fn translation_matrix(a: &MinkowskiVector) -> Matrix6<f64> {
    let mut m = Matrix6::identity();
    let qa = minkowski_q(a);
    for mu in 0..4 {
        // X^mu += a^mu (X5 - X6)
        m[(mu, 4)] += a.0[mu];
        m[(mu, 5)] -= a.0[mu];
        // X5, X6 -= eta(a, X)
        m[(4, mu)] -= MINKOWSKI_SIGNS[mu] * a.0[mu];
        m[(5, mu)] -= MINKOWSKI_SIGNS[mu] * a.0[mu];
    }
    // X5, X6 -= q(a) u / 2
    for row in [4, 5] {
        m[(row, 4)] -= 0.5 * qa;
        m[(row, 5)] += 0.5 * qa;
    }
    m
}

fn special_conformal_matrix(b: &MinkowskiVector) -> Matrix6<f64> {
    let mut m = Matrix6::identity();
    let qb = minkowski_q(b);
    for mu in 0..4 {
        // X^mu -= b^mu (X5 + X6)
        m[(mu, 4)] -= b.0[mu];
        m[(mu, 5)] -= b.0[mu];
        m[(4, mu)] += MINKOWSKI_SIGNS[mu] * b.0[mu];
        m[(5, mu)] -= MINKOWSKI_SIGNS[mu] * b.0[mu];
    }
    for c in [4, 5] {
        m[(4, c)] -= 0.5 * qb;
        m[(5, c)] += 0.5 * qb;
    }
    m
}

/// The 6x6 matrix of a generator.
pub fn generator(spec: &GeneratorSpec) -> Result<ConformalMatrix> {
    let m = match *spec {
        GeneratorSpec::Rotation { plane: (i, j), angle } => {
            if i >= 6 || j >= 6 || i == j {
                return Err(Error::InvalidSpec(format!(
                    "rotation plane ({i}, {j}) is not a coordinate plane"
                )));
            }
            if !angle.is_finite() {
                return Err(Error::InvalidSpec("rotation angle must be finite".into()));
            }
            plane_rotation(i.min(j), i.max(j), if i < j { angle } else { -angle })
        }
        GeneratorSpec::Dilation(t) => {
            if !t.is_finite() {
                return Err(Error::InvalidSpec("dilation parameter must be finite".into()));
            }
            plane_rotation(4, 5, t)
        }
        GeneratorSpec::Translation(a) => {
            if !a.is_finite() {
                return Err(Error::InvalidSpec("translation vector must be finite".into()));
            }
            translation_matrix(&a)
        }
        GeneratorSpec::SpecialConformal(b) => {
            if !b.is_finite() {
                return Err(Error::InvalidSpec("special conformal vector must be finite".into()));
            }
            special_conformal_matrix(&b)
        }
        GeneratorSpec::Inversion => {
            let mut m = Matrix6::identity();
            m[(4, 4)] = -1.0;
            m
        }
    };
    let tol = 1e-9 * (1.0 + m.abs().max().powi(2));
    ConformalMatrix::new(m, tol)
}

/// Product `g_1 g_2 ... g_n` of generators.
pub fn compose(specs: &[GeneratorSpec]) -> Result<ConformalMatrix> {
    specs
        .iter()
        .try_fold(ConformalMatrix::identity(), |acc, s| Ok(acc * generator(s)?))
}

pub fn act_ambient(m: &ConformalMatrix, x: &AmbientVector) -> AmbientVector {
    let v = m.0 * Vector6::from_row_slice(&x.0);
    AmbientVector(std::array::from_fn(|i| v[i]))
}

/// Action on chart coordinates. Fails with [`Error::AtDomainInfinity`] when
/// the image leaves the chart.
pub fn act_chart(m: &ConformalMatrix, p: &ChartPoint) -> Result<ChartPoint> {
    ambient_to_chart(&act_ambient(m, &chart_to_ambient(p)), DEFAULT_TOL)
}

/// Jacobian (5x5) of `p -> act_chart(m, p)` in chart coordinates, by central
/// differences with step `h * max(1, |c|)`.
pub fn chart_action_jacobian(m: &ConformalMatrix, p: &ChartPoint, h: f64) -> Result<Matrix5<f64>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let c = p.coords();
    if h * c[4].max(1.0) >= p.lambda() {
        return Err(Error::StepTooLarge {
            step: h,
            lambda: p.lambda(),
        });
    }
    let mut jac = Matrix5::zeros();
    for alpha in 0..5 {
        let step = h * c[alpha].abs().max(1.0);
        let mut fwd = c;
        let mut bwd = c;
        fwd[alpha] += step;
        bwd[alpha] -= step;
        let f = act_chart(m, &ChartPoint::from_coords(p.domain(), p.side(), fwd)?)?;
        let b = act_chart(m, &ChartPoint::from_coords(p.domain(), p.side(), bwd)?)?;
        if f.side() != b.side() {
            return Err(Error::AtDomainInfinity(0.0));
        }
        let (fc, bc) = (f.coords(), b.coords());
        for i in 0..5 {
            jac[(i, alpha)] = (fc[i] - bc[i]) / (2.0 * step);
        }
    }
    Ok(jac)
}

/// `max |J^T g(M p) J - g(p)|`: zero for an isometry of the chart metric.
pub fn pullback_metric_residual(m: &ConformalMatrix, p: &ChartPoint, h: f64) -> Result<f64> {
    let image = act_chart(m, p)?;
    let jac = chart_action_jacobian(m, p, h)?;
    let pulled = jac.transpose() * metric_closed_form(&image).matrix() * jac;
    Ok((pulled - metric_closed_form(p).matrix()).abs().max())
}

/// Image of a Minkowski point under the induced conformal map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinkowskiImage {
    /// `conformal_scale` is `1 / (X5 - X6)` of the transformed section
    /// representative.
    Finite {
        x: MinkowskiVector,
        conformal_scale: f64,
    },
    AtInfinity(AmbientVector),
}

impl MinkowskiImage {
    pub fn finite(&self) -> Option<(MinkowskiVector, f64)> {
        match self {
            MinkowskiImage::Finite { x, conformal_scale } => Some((*x, *conformal_scale)),
            MinkowskiImage::AtInfinity(_) => None,
        }
    }
}

pub fn act_minkowski(m: &ConformalMatrix, x: &MinkowskiVector) -> MinkowskiImage {
    let image = act_ambient(m, &tau_plus(x));
    let u = image.light_cone_u();
    if u.abs() <= DEFAULT_TOL * scale(&[&image.0]) {
        MinkowskiImage::AtInfinity(image)
    } else {
        MinkowskiImage::Finite {
            x: image.minkowski_part() * (1.0 / u),
            conformal_scale: 1.0 / u,
        }
    }
}

/// Jacobian (4x4) of the induced Minkowski map by central differences.
pub fn minkowski_action_jacobian(m: &ConformalMatrix, x: &MinkowskiVector, h: f64) -> Result<nalgebra::Matrix4<f64>> {
    let mut jac = nalgebra::Matrix4::zeros();
    for alpha in 0..4 {
        let step = h * x.0[alpha].abs().max(1.0);
        let mut fwd = *x;
        let mut bwd = *x;
        fwd.0[alpha] += step;
        bwd.0[alpha] -= step;
        let (f, _) = act_minkowski(m, &fwd).finite().ok_or(Error::AtDomainInfinity(0.0))?;
        let (b, _) = act_minkowski(m, &bwd).finite().ok_or(Error::AtDomainInfinity(0.0))?;
        for i in 0..4 {
            jac[(i, alpha)] = (f.0[i] - b.0[i]) / (2.0 * step);
        }
    }
    Ok(jac)
}
