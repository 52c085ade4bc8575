use conformal5::ambient::{classify, normalize_to_sigma, AmbientVector, MinkowskiVector};
use conformal5::charts::{ambient_to_chart, metric_numerical, ChartPoint, DomainTag, Side};
use conformal5::compactification::cone_to_minkowski;
use conformal5::geodesics::{
    integrate_affine, integrate_lambda, ClosedFormGeodesic, GeodesicState, NullLine, Termination,
};
use conformal5::group_action::{generator, ConformalMatrix, GeneratorSpec};
use conformal5::hyperboloids::sigma_point_to_hyperboloid;
use conformal5::Error;

fn origin(domain: DomainTag) -> ChartPoint {
    ChartPoint::new(domain, MinkowskiVector::zero(), 1.0, Side::Positive).unwrap()
}

#[test]
fn apex_is_rejected() {
    assert_eq!(classify(&AmbientVector([0.0; 6]), 1e-9), Err(Error::Apex));
}

#[test]
fn cone_points_cannot_be_normalized() {
    let x = AmbientVector([1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    assert!(matches!(normalize_to_sigma(&x), Err(Error::OnCone(_))));
}

#[test]
fn off_cone_vector_has_no_minkowski_image() {
    let x = AmbientVector([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    assert!(matches!(cone_to_minkowski(&x, 1e-9), Err(Error::NotOnCone(_))));
}

#[test]
fn cone_point_at_infinity() {
    let x = AmbientVector([1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    assert!(cone_to_minkowski(&x, 1e-9).unwrap().is_at_infinity());
}

#[test]
fn chart_domain_errors() {
    let infinity = AmbientVector([0.0, 0.0, 0.0, 1.0, 2.0, 2.0]);
    assert!(matches!(
        ambient_to_chart(&infinity, 1e-9),
        Err(Error::AtDomainInfinity(_))
    ));
    let off = AmbientVector([0.0, 0.0, 0.0, 0.0, 0.0, -2.0]);
    assert!(matches!(ambient_to_chart(&off, 1e-9), Err(Error::NotOnSigma(_))));
    for l in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(matches!(
            ChartPoint::positive(DomainTag::SigmaMinus, [0.0; 4], l),
            Err(Error::InvalidLambda(_))
        ));
    }
}

#[test]
fn finite_difference_step_must_be_below_lambda() {
    let p = ChartPoint::positive(DomainTag::SigmaMinus, [0.0; 4], 0.1).unwrap();
    assert!(matches!(metric_numerical(&p, 0.1), Err(Error::StepTooLarge { .. })));
}

#[test]
fn integrator_settings_are_checked() {
    let start = GeodesicState::new(origin(DomainTag::SigmaMinus), [0.0, 0.0, 0.0, 0.0, 1.0]);
    assert!(matches!(
        integrate_affine(&start, 1.0, 0.0, 1e-6),
        Err(Error::InvalidStep(_))
    ));
    assert!(matches!(
        integrate_affine(&start, 1.0, -1e-3, 1e-6),
        Err(Error::InvalidStep(_))
    ));
    assert!(matches!(
        integrate_lambda(&start, 0.0, 1e-3),
        Err(Error::InvalidLambda(_))
    ));
}

#[test]
fn floor_stops_a_descending_run() {
    let start = GeodesicState::new(origin(DomainTag::SigmaMinus), [0.0, 0.0, 0.0, 0.0, -1.0]);
    let path = integrate_affine(&start, 20.0, 1e-3, 1e-3).unwrap();
    assert_eq!(path.termination, Termination::LambdaFloorReached);
    assert!(path.points().all(|p| p.lambda() > 1e-3));
}

#[test]
fn closed_form_domains() {
    let g = ClosedFormGeodesic::spacelike(MinkowskiVector::zero(), 1.0, [1.0, 0.0, 0.0, 0.0]).unwrap();
    assert!(matches!(g.point_at(1.5), Err(Error::ParamDomain(_))));
    assert!(ClosedFormGeodesic::timelike(MinkowskiVector::zero(), 1.0, [1.0, 0.0, 0.0, 0.0]).is_err());
    assert!(NullLine::new(
        DomainTag::SigmaMinus,
        MinkowskiVector::zero(),
        1.0,
        [1.0, 0.0, 0.0, 0.0]
    )
    .is_err());
}

#[test]
fn invalid_generators() {
    assert!(matches!(
        generator(&GeneratorSpec::Rotation {
            plane: (2, 2),
            angle: 0.1
        }),
        Err(Error::InvalidSpec(_))
    ));
    let mut m = nalgebra::Matrix6::identity();
    m[(0, 0)] = 2.0;
    assert!(matches!(ConformalMatrix::new(m, 1e-9), Err(Error::NotConformal(_))));
}

#[test]
fn hyperboloids_need_sigma_minus() {
    assert_eq!(
        sigma_point_to_hyperboloid(&origin(DomainTag::SigmaPlus)),
        Err(Error::WrongDomain)
    );
}
