//! Geodesics of `Sigma+-` are the intersections with 2-planes through the
//! origin of R^{4,2}. A sampled path is tested by stacking its ambient images
//! and measuring how far the sample matrix is from rank two.

use nalgebra::DMatrix;

use super::GeodesicPath;
use crate::ambient::AmbientVector;
use crate::charts::chart_to_ambient;
use crate::error::{Error, Result};

/// Singular values (descending) of the matrix whose rows are `rows`.
pub fn singular_values(rows: &[AmbientVector]) -> Vec<f64> {
    let m = DMatrix::from_fn(rows.len(), 6, |i, j| rows[i].0[j]);
    // reduce to a 6x6 triangle first; singular values are unchanged
    let reduced = if rows.len() > 6 { m.qr().r() } else { m };
    let mut sv: Vec<f64> = reduced.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// `sigma_3 / sigma_1` of the ambient sample matrix; zero for a path lying
/// in a 2-plane through the origin.
pub fn plane_section_residual(path: &GeodesicPath) -> Result<f64> {
    if path.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: path.len(),
        });
    }
    let rows: Vec<AmbientVector> = path.points().map(chart_to_ambient).collect();
    let sv = singular_values(&rows);
    if sv[0] == 0.0 {
        return Ok(0.0);
    }
    Ok(sv[2] / sv[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::MinkowskiVector;
    use crate::charts::ChartPoint;
    use crate::charts::DomainTag;
    use crate::geodesics::{ClosedFormGeodesic, GeodesicState, PathSample};

    fn lambdas(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn closed_form_paths_are_plane_sections() {
        let g = ClosedFormGeodesic::spacelike(MinkowskiVector::zero(), 2f64.sqrt(), [1.0, 0.0, 0.0, 0.0]).unwrap();
        let path = g.sample(&lambdas(0.05, 1.4, 50)).unwrap();
        assert!(plane_section_residual(&path).unwrap() <= 1e-10);
    }

    #[test]
    fn perturbed_path_detected() {
        let g = ClosedFormGeodesic::timelike(MinkowskiVector::zero(), 1.0, [0.0, 0.0, 0.0, 1.0]).unwrap();
        let mut path = g.sample(&lambdas(0.5, 2.0, 50)).unwrap();
        let s = path.samples[20];
        let mut x = s.state.point.x();
        x.0[0] += 0.1;
        let moved = ChartPoint::new(DomainTag::SigmaMinus, x, s.state.point.lambda(), s.state.point.side()).unwrap();
        path.samples[20] = PathSample {
            param: s.param,
            state: GeodesicState::new(moved, s.state.velocity),
        };
        assert!(plane_section_residual(&path).unwrap() > 1e-3);
    }

    #[test]
    fn too_few_samples() {
        let g = ClosedFormGeodesic::null(MinkowskiVector::zero(), 1.0, [1.0, 0.0, 0.0, 1.0]).unwrap();
        let path = g.sample(&[1.0, 2.0]).unwrap();
        assert_eq!(
            plane_section_residual(&path),
            Err(Error::TooFewSamples { needed: 3, got: 2 })
        );
    }
}
