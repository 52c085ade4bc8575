//! Points of `Sigma-` as hyperboloids `{x : q(x - y) = -lambda^2}` in
//! Minkowski space.
//!
//! The point with chart coordinates `(y, lambda)` has the representative
//! `Y = (y, (1 - q(y) - lambda^2)/2, -(1 + q(y) + lambda^2)/2)` with
//! `Y5 - Y6 = 1`, and `x` lies on its hyperboloid iff `(tau_plus(x), Y) = 0`.
//! The two tests are tied by the identity
//! `(tau_plus(x), Y) = -(q(x - y) + lambda^2) / 2`.

use crate::ambient::{inner, minkowski_q, scale, AmbientVector, MinkowskiVector};
use crate::charts::{chart_to_ambient, ChartPoint, DomainTag, Side};
use crate::compactification::tau_plus;
use crate::error::{Error, Result};
use crate::geodesics::GeodesicPath;

/// Unoriented hyperboloid `q(x - center) = -radius^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperboloid {
    pub center: MinkowskiVector,
    pub radius: f64,
}

impl Hyperboloid {
    /// The two points on the time axis through the center,
    /// `center +- radius e4`.
    pub fn apexes(&self) -> [MinkowskiVector; 2] {
        let mut up = self.center;
        let mut down = self.center;
        up.0[3] += self.radius;
        down.0[3] -= self.radius;
        [up, down]
    }

    /// The `Sigma-` chart point on the positive side.
    pub fn to_chart_point(&self) -> Result<ChartPoint> {
        ChartPoint::new(DomainTag::SigmaMinus, self.center, self.radius, Side::Positive)
    }
}

fn require_sigma_minus(p: &ChartPoint) -> Result<()> {
    match p.domain() {
        DomainTag::SigmaMinus => Ok(()),
        DomainTag::SigmaPlus => Err(Error::WrongDomain),
    }
}

pub fn sigma_point_to_hyperboloid(p: &ChartPoint) -> Result<Hyperboloid> {
    require_sigma_minus(p)?;
    Ok(Hyperboloid {
        center: p.x(),
        radius: p.lambda(),
    })
}

/// Representative of `p` normalized to `Y5 - Y6 = 1`; both sides of the
/// chart give the same `Y`.
pub fn normalized_representative(p: &ChartPoint) -> Result<AmbientVector> {
    require_sigma_minus(p)?;
    Ok(chart_to_ambient(&p.with_side(Side::Positive)) * p.lambda())
}

/// Both incidence forms: `((tau_plus(x), Y), q(x - y) + lambda^2)`.
pub fn incidence_forms(x: &MinkowskiVector, p: &ChartPoint) -> Result<(f64, f64)> {
    let y = normalized_representative(p)?;
    let bilinear = inner(&tau_plus(x), &y);
    let quadratic = minkowski_q(&(*x - p.x())) + p.lambda() * p.lambda();
    Ok((bilinear, quadratic))
}

/// Whether `x` lies on the hyperboloid of `p`. Both forms are tested and
/// must agree; the quadratic form is twice the bilinear one in magnitude.
pub fn incidence(x: &MinkowskiVector, p: &ChartPoint, tol: f64) -> Result<bool> {
    let (bilinear, quadratic) = incidence_forms(x, p)?;
    let y = normalized_representative(p)?;
    let bound = tol * scale(&[&tau_plus(x).0, &y.0]);
    let by_bilinear = bilinear.abs() <= bound;
    let by_quadratic = quadratic.abs() <= 2.0 * bound;
    Ok(by_bilinear && by_quadratic)
}

/// One hyperboloid per path sample, in order.
pub fn geodesic_to_family(path: &GeodesicPath) -> Result<Vec<Hyperboloid>> {
    path.points().map(sigma_point_to_hyperboloid).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::DEFAULT_TOL;
    use crate::geodesics::ClosedFormGeodesic;

    fn sm(x: [f64; 4], lambda: f64) -> ChartPoint {
        ChartPoint::positive(DomainTag::SigmaMinus, x, lambda).unwrap()
    }

    #[test]
    fn unit_hyperboloid() {
        let h = sigma_point_to_hyperboloid(&sm([0.0; 4], 1.0)).unwrap();
        assert_eq!(h.radius, 1.0);
        let [up, down] = h.apexes();
        assert_eq!(up.0, [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(down.0, [0.0, 0.0, 0.0, -1.0]);
        let h = sigma_point_to_hyperboloid(&sm([1.0, 2.0, 3.0, 4.0], 2.0)).unwrap();
        assert_eq!(h.center.0, [1.0, 2.0, 3.0, 4.0]);
        assert_eq!(h.radius, 2.0);
    }

    #[test]
    fn wrong_domain() {
        let p = ChartPoint::positive(DomainTag::SigmaPlus, [0.0; 4], 1.0).unwrap();
        assert_eq!(sigma_point_to_hyperboloid(&p), Err(Error::WrongDomain));
        assert_eq!(
            incidence(&MinkowskiVector::zero(), &p, DEFAULT_TOL),
            Err(Error::WrongDomain)
        );
    }

    #[test]
    fn normalized_representative_round_trip() {
        let p = sm([0.5, -1.5, 2.0, 3.0], 0.75);
        let y = normalized_representative(&p).unwrap();
        assert!((y.light_cone_u() - 1.0).abs() < 1e-15);
        let q = minkowski_q(&p.x());
        let expected = [0.5, -1.5, 2.0, 3.0, (1.0 - q - 0.5625) / 2.0, -(1.0 + q + 0.5625) / 2.0];
        for i in 0..6 {
            assert!((y.0[i] - expected[i]).abs() < 1e-12);
        }
        let back = Hyperboloid {
            center: y.minkowski_part(),
            radius: (-crate::ambient::quadratic_form(&y)).sqrt(),
        };
        assert!((back.radius - 0.75).abs() < 1e-12);
        assert_eq!(back.center, p.x());
        // the negative side collapses onto the same hyperboloid
        let n = p.with_side(Side::Negative);
        assert_eq!(normalized_representative(&n).unwrap(), y);
        assert_eq!(
            sigma_point_to_hyperboloid(&n).unwrap(),
            sigma_point_to_hyperboloid(&p).unwrap()
        );
    }

    #[test]
    fn incidence_examples() {
        let p = sm([0.0; 4], 1.0);
        assert_eq!(
            incidence(&MinkowskiVector([0.0, 0.0, 0.0, 1.0]), &p, DEFAULT_TOL),
            Ok(true)
        );
        assert_eq!(incidence(&MinkowskiVector::zero(), &p, DEFAULT_TOL), Ok(false));
        // solve q(x - y) = -lambda^2 for x4 given the spatial part
        let p = sm([1.0, -2.0, 0.5, 3.0], 1.7);
        let spatial = [2.5, 0.3, -1.0];
        let r2: f64 = (0..3).map(|i| (spatial[i] - p.x().0[i]).powi(2)).sum();
        let x4 = p.x().0[3] + (r2 + 1.7 * 1.7).sqrt();
        let x = MinkowskiVector([spatial[0], spatial[1], spatial[2], x4]);
        assert_eq!(incidence(&x, &p, DEFAULT_TOL), Ok(true));
        let (b, q) = incidence_forms(&x, &p).unwrap();
        assert!(b.abs() < 1e-12 && q.abs() < 1e-12);
    }

    #[test]
    fn families_from_geodesics() {
        let axis = ClosedFormGeodesic::null(MinkowskiVector([1.0, 1.0, 0.0, 0.0]), 0.0, [1.0, 0.0, 0.0, 1.0])
            .unwrap()
            .sample(&[0.5, 1.0, 1.5, 2.0])
            .unwrap();
        let fam = geodesic_to_family(&axis).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(fam.iter().all(|h| h.center.0 == [1.0, 1.0, 0.0, 0.0]));
        assert_eq!(
            fam.iter().map(|h| h.radius).collect::<Vec<_>>(),
            vec![0.5, 1.0, 1.5, 2.0]
        );

        let semi = ClosedFormGeodesic::spacelike(MinkowskiVector::zero(), 2f64.sqrt(), [1.0, 0.0, 0.0, 0.0])
            .unwrap()
            .sample(&[0.2, 0.6, 1.0, 1.3])
            .unwrap();
        for h in geodesic_to_family(&semi).unwrap() {
            let expected = (2.0 - h.center.0[0].powi(2)).sqrt();
            assert!((h.radius - expected).abs() < 1e-12);
        }
    }
}
