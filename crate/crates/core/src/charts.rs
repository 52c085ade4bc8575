//! Half-space charts on the hyperboloids `Sigma- = {Q = -1}` and
//! `Sigma+ = {Q = +1}`.
//!
//! A chart point `(x, lambda)` with `lambda > 0` corresponds to an ambient
//! point with `X5 - X6 = side / lambda`. The `side = -1` region is realized by
//! negating the image of the `side = +1` formula. In these coordinates the
//! induced metric is `(1/lambda^2) diag(1, 1, 1, -1, +-1)`.

use nalgebra::{Matrix5, SMatrix};

use crate::ambient::{minkowski_q, quadratic_form, scale, AmbientVector, MinkowskiVector, AMBIENT_SIGNS};
use crate::error::{Error, Result};

/// Which hyperboloid the chart lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainTag {
    /// `Q = -1`, signature (4,1).
    SigmaMinus,
    /// `Q = +1`, signature (3,2).
    SigmaPlus,
}

impl DomainTag {
    /// The value of `Q` on this hyperboloid.
    pub fn q_value(self) -> f64 {
        match self {
            DomainTag::SigmaMinus => -1.0,
            DomainTag::SigmaPlus => 1.0,
        }
    }

    /// Sign of the `lambda lambda` entry of the flat part of the metric.
    pub fn lambda_sign(self) -> f64 {
        match self {
            DomainTag::SigmaMinus => 1.0,
            DomainTag::SigmaPlus => -1.0,
        }
    }

    /// `(positive, negative)` eigenvalue counts of the metric.
    pub fn signature(self) -> (usize, usize) {
        match self {
            DomainTag::SigmaMinus => (4, 1),
            DomainTag::SigmaPlus => (3, 2),
        }
    }
}

/// Sign of `X5 - X6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }
}

/// Chart coordinates `(x1, x2, x3, x4, lambda)` on one of the two domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    domain: DomainTag,
    x: MinkowskiVector,
    lambda: f64,
    side: Side,
}

impl ChartPoint {
    pub fn new(domain: DomainTag, x: MinkowskiVector, lambda: f64, side: Side) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidLambda(lambda));
        }
        if !x.is_finite() {
            return Err(Error::NonFinite("chart coordinates"));
        }
        Ok(ChartPoint {
            domain,
            x,
            lambda,
            side,
        })
    }

    /// Point on the `side = +1` half of the chart.
    pub fn positive(domain: DomainTag, x: [f64; 4], lambda: f64) -> Result<Self> {
        Self::new(domain, MinkowskiVector(x), lambda, Side::Positive)
    }

    /// Builds a point from the five coordinates `(x1, .., x4, lambda)`.
    pub fn from_coords(domain: DomainTag, side: Side, c: [f64; 5]) -> Result<Self> {
        Self::new(domain, MinkowskiVector([c[0], c[1], c[2], c[3]]), c[4], side)
    }

    pub fn domain(&self) -> DomainTag {
        self.domain
    }

    pub fn x(&self) -> MinkowskiVector {
        self.x
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coords(&self) -> [f64; 5] {
        let [a, b, c, d] = self.x.0;
        [a, b, c, d, self.lambda]
    }

    pub fn with_side(&self, side: Side) -> ChartPoint {
        ChartPoint { side, ..*self }
    }
}

/// Induced metric in chart coordinates, index order `(x1, x2, x3, x4, lambda)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor(pub Matrix5<f64>);

impl MetricTensor {
    pub fn matrix(&self) -> &Matrix5<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..5).all(|i| (0..5).all(|j| (self.0[(i, j)] - self.0[(j, i)]).abs() <= tol))
    }

    /// Counts of positive and negative eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        let eig = self.0.symmetric_eigen();
        let pos = eig.eigenvalues.iter().filter(|v| **v > 0.0).count();
        let neg = eig.eigenvalues.iter().filter(|v| **v < 0.0).count();
        (pos, neg)
    }

    pub fn inverse(&self) -> Option<Matrix5<f64>> {
        self.0.try_inverse()
    }

    /// `g(v, w)`.
    pub fn contract(&self, v: &[f64; 5], w: &[f64; 5]) -> f64 {
        let mut acc = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                acc += self.0[(i, j)] * v[i] * w[j];
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &MetricTensor) -> f64 {
        (self.0 - other.0).abs().max()
    }
}

/// Embeds a chart point into its hyperboloid.
pub fn chart_to_ambient(p: &ChartPoint) -> AmbientVector {
    let lam = p.lambda;
    let q = minkowski_q(&p.x);
    // lambda^2 enters with opposite signs on the two hyperboloids
    let l2 = -p.domain.q_value() * lam * lam;
    let [x1, x2, x3, x4] = p.x.0;
    let inv = 1.0 / lam;
    let v = AmbientVector([
        x1 * inv,
        x2 * inv,
        x3 * inv,
        x4 * inv,
        (1.0 - q - l2) / (2.0 * lam),
        -(1.0 + q + l2) / (2.0 * lam),
    ]);
    match p.side {
        Side::Positive => v,
        Side::Negative => -v,
    }
}

fn sigma_domain(x: &AmbientVector, tol: f64) -> Result<DomainTag> {
    let q = quadratic_form(x);
    let bound = tol * scale(&[&x.0]);
    // the sign of Q decides; the bound can exceed 1 for large X
    let domain = if q < 0.0 {
        DomainTag::SigmaMinus
    } else {
        DomainTag::SigmaPlus
    };
    if (q - domain.q_value()).abs() <= bound {
        Ok(domain)
    } else {
        Err(Error::NotOnSigma(q))
    }
}

/// Chart coordinates `x = X^mu / (X5 - X6)`, `lambda = 1 / |X5 - X6|`.
pub fn ambient_to_chart(x: &AmbientVector, tol: f64) -> Result<ChartPoint> {
    let domain = sigma_domain(x, tol)?;
    let u = x.light_cone_u();
    if u.abs() <= tol * scale(&[&x.0]) {
        return Err(Error::AtDomainInfinity(u));
    }
    let side = if u > 0.0 { Side::Positive } else { Side::Negative };
    ChartPoint::new(domain, x.minkowski_part() * (1.0 / u), 1.0 / u.abs(), side)
}

/// `(1/lambda^2) diag(1, 1, 1, -1, +-1)`.
pub fn metric_closed_form(p: &ChartPoint) -> MetricTensor {
    let c = 1.0 / (p.lambda * p.lambda);
    MetricTensor(Matrix5::from_diagonal(&nalgebra::Vector5::new(
        c,
        c,
        c,
        -c,
        c * p.domain.lambda_sign(),
    )))
}

/// Jacobian `dX^A / dx^alpha` (6 x 5) of [`chart_to_ambient`] by central
/// differences. The step along coordinate `alpha` is `h * max(1, |c_alpha|)`.
pub fn chart_jacobian(p: &ChartPoint, h: f64) -> Result<SMatrix<f64, 6, 5>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let c = p.coords();
    let lam_step = h * c[4].max(1.0);
    if h >= p.lambda || lam_step >= p.lambda {
        return Err(Error::StepTooLarge {
            step: h,
            lambda: p.lambda,
        });
    }
    let mut jac = SMatrix::<f64, 6, 5>::zeros();
    for alpha in 0..5 {
        let step = h * c[alpha].abs().max(1.0);
        let mut fwd = c;
        let mut bwd = c;
        fwd[alpha] += step;
        bwd[alpha] -= step;
        let xf = chart_to_ambient(&ChartPoint::from_coords(p.domain, p.side, fwd)?);
        let xb = chart_to_ambient(&ChartPoint::from_coords(p.domain, p.side, bwd)?);
        for a in 0..6 {
            jac[(a, alpha)] = (xf.0[a] - xb.0[a]) / (2.0 * step);
        }
    }
    Ok(jac)
}

/// Induced metric `J^T G J` with the Jacobian taken numerically.
pub fn metric_numerical(p: &ChartPoint, h: f64) -> Result<MetricTensor> {
    let jac = chart_jacobian(p, h)?;
    let g = nalgebra::Matrix6::from_diagonal(&nalgebra::Vector6::from_row_slice(&AMBIENT_SIGNS));
    Ok(MetricTensor(jac.transpose() * g * jac))
}

/// Whether a point of `Sigma+-` sits on the locus `X5 = X6` missed by the chart.
///
/// There the Minkowski part satisfies `q = Q`: a two-sheeted hyperboloid
/// (`q = -1`) for `Sigma-`, a one-sheeted one (`q = +1`) for `Sigma+`.
pub fn is_domain_infinity(x: &AmbientVector, tol: f64) -> Result<bool> {
    let domain = sigma_domain(x, tol)?;
    let bound = tol * scale(&[&x.0]);
    let u = x.light_cone_u();
    let at_infinity = u.abs() <= bound;
    if at_infinity {
        let q = minkowski_q(&x.minkowski_part());
        let v = x.0[4] + x.0[5];
        debug_assert!(
            (q - domain.q_value()).abs() <= bound * (2.0 + v.abs()),
            "reduced point off the expected hyperboloid: q = {q}"
        );
    }
    Ok(at_infinity)
}

/// Domain of a point on `Sigma+-`, or [`Error::NotOnSigma`].
pub fn domain_of(x: &AmbientVector, tol: f64) -> Result<DomainTag> {
    sigma_domain(x, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::DEFAULT_TOL;

    fn cp(domain: DomainTag, x: [f64; 4], lambda: f64) -> ChartPoint {
        ChartPoint::positive(domain, x, lambda).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let a = chart_to_ambient(&cp(DomainTag::SigmaMinus, [0.0; 4], 1.0));
        assert_eq!(a.0, [0.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
        let b = chart_to_ambient(&cp(DomainTag::SigmaPlus, [0.0; 4], 1.0));
        assert_eq!(b.0, [0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let c = chart_to_ambient(&cp(DomainTag::SigmaMinus, [1.0, 0.0, 0.0, 0.0], 2.0));
        assert_eq!(c.0, [0.5, 0.0, 0.0, 0.0, -1.0, -1.5]);
        assert!((quadratic_form(&c) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_lambda_rejected() {
        assert_eq!(
            ChartPoint::positive(DomainTag::SigmaMinus, [0.0; 4], 0.0),
            Err(Error::InvalidLambda(0.0))
        );
        assert!(ChartPoint::positive(DomainTag::SigmaMinus, [0.0; 4], -1.0).is_err());
        assert!(ChartPoint::positive(DomainTag::SigmaMinus, [0.0; 4], f64::NAN).is_err());
    }

    #[test]
    fn inverse_chart_examples() {
        let p = ambient_to_chart(&AmbientVector([0.0, 0.0, 0.0, 0.0, 0.0, -1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(p, cp(DomainTag::SigmaMinus, [0.0; 4], 1.0));
        let n = ambient_to_chart(&AmbientVector([0.0, 0.0, 0.0, 0.0, 0.0, 1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(n.domain(), DomainTag::SigmaMinus);
        assert_eq!(n.lambda(), 1.0);
        assert_eq!(n.side(), Side::Negative);
        assert_eq!(
            ambient_to_chart(&AmbientVector([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]), DEFAULT_TOL),
            Err(Error::NotOnSigma(0.0))
        );
        assert!(matches!(
            ambient_to_chart(&AmbientVector([0.0, 0.0, 0.0, 1.0, 2.0, 2.0]), DEFAULT_TOL),
            Err(Error::AtDomainInfinity(_))
        ));
    }

    #[test]
    fn negation_flips_side_only() {
        let p = ChartPoint::positive(DomainTag::SigmaPlus, [0.3, -1.2, 2.0, 0.7], 0.4).unwrap();
        let x = chart_to_ambient(&p);
        let back = ambient_to_chart(&-x, DEFAULT_TOL).unwrap();
        assert_eq!(back.side(), Side::Negative);
        assert!((back.lambda() - p.lambda()).abs() < 1e-14);
        for i in 0..4 {
            assert!((back.x().0[i] - p.x().0[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_metric_examples() {
        let g = metric_closed_form(&cp(DomainTag::SigmaMinus, [0.0; 4], 1.0));
        assert_eq!(
            g.0,
            Matrix5::from_diagonal(&nalgebra::Vector5::new(1.0, 1.0, 1.0, -1.0, 1.0))
        );
        let g = metric_closed_form(&cp(DomainTag::SigmaMinus, [0.0; 4], 2.0));
        assert_eq!(
            g.0,
            Matrix5::from_diagonal(&nalgebra::Vector5::new(0.25, 0.25, 0.25, -0.25, 0.25))
        );
        let g = metric_closed_form(&cp(DomainTag::SigmaPlus, [0.0; 4], 1.0));
        assert_eq!(
            g.0,
            Matrix5::from_diagonal(&nalgebra::Vector5::new(1.0, 1.0, 1.0, -1.0, -1.0))
        );
        assert_eq!(g.signature(), (3, 2));
        let g = metric_closed_form(&cp(DomainTag::SigmaMinus, [4.0, 1.0, 0.0, 2.0], 0.3));
        assert_eq!(g.signature(), (4, 1));
        assert!(g.is_symmetric(1e-12));
    }

    #[test]
    fn numerical_metric_examples() {
        let p = cp(DomainTag::SigmaMinus, [0.0; 4], 1.0);
        let d = metric_numerical(&p, 1e-5)
            .unwrap()
            .max_abs_diff(&metric_closed_form(&p));
        assert!(d <= 1e-8, "deviation {d}");
        let p = cp(DomainTag::SigmaPlus, [1.0, 2.0, 3.0, 4.0], 3.0);
        let d = metric_numerical(&p, 1e-5)
            .unwrap()
            .max_abs_diff(&metric_closed_form(&p));
        assert!(d <= 1e-8, "deviation {d}");
        let p = cp(DomainTag::SigmaMinus, [-0.4, 1.5, 0.2, -2.0], 0.7);
        let g = metric_numerical(&p, 1e-5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert!(g.get(i, j).abs() <= 1e-8);
                }
            }
        }
    }

    #[test]
    fn numerical_metric_step_errors() {
        let p = cp(DomainTag::SigmaMinus, [0.0; 4], 0.5);
        assert!(matches!(metric_numerical(&p, 0.5), Err(Error::StepTooLarge { .. })));
        assert!(matches!(metric_numerical(&p, 0.0), Err(Error::InvalidStep(_))));
        let p = cp(DomainTag::SigmaMinus, [0.0; 4], 2.0);
        assert!(matches!(metric_numerical(&p, 1.5), Err(Error::StepTooLarge { .. })));
    }

    #[test]
    fn domain_infinity_examples() {
        for c in [-3.0, 0.0, 1.0, 17.5] {
            let x = AmbientVector([0.0, 0.0, 0.0, 1.0, c, c]);
            assert_eq!(is_domain_infinity(&x, DEFAULT_TOL), Ok(true));
            assert_eq!(domain_of(&x, DEFAULT_TOL), Ok(DomainTag::SigmaMinus));
        }
        let y = AmbientVector([1.0, 0.0, 0.0, 0.0, 2.0, 2.0]);
        assert_eq!(is_domain_infinity(&y, DEFAULT_TOL), Ok(true));
        assert_eq!(domain_of(&y, DEFAULT_TOL), Ok(DomainTag::SigmaPlus));
        let p = cp(DomainTag::SigmaPlus, [0.5, 0.0, 1.0, 3.0], 2.5);
        assert_eq!(is_domain_infinity(&chart_to_ambient(&p), DEFAULT_TOL), Ok(false));
        assert!(is_domain_infinity(&AmbientVector([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]), DEFAULT_TOL).is_err());
    }
}
