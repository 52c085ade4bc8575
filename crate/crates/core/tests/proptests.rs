use proptest::prelude::*;

use conformal5::ambient::{
    classify, inner, quadratic_form, ray_equivalent, AmbientVector, EquivalenceRelation, MinkowskiVector, Region,
};
use conformal5::charts::{ambient_to_chart, chart_to_ambient, metric_closed_form, ChartPoint, DomainTag, Side};
use conformal5::compactification::{antipode, cone_to_minkowski, tau_minus, tau_plus};
use conformal5::geodesics::{
    christoffel_closed_form, classify_direction, integrate_lambda, lambda_rhs, DirectionClass, GeodesicState,
};
use conformal5::group_action::{act_ambient, act_chart, compose, conformal_defect, generator, GeneratorSpec};
use conformal5::hyperboloids::{incidence, incidence_forms, sigma_point_to_hyperboloid};

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn minkowski() -> impl Strategy<Value = MinkowskiVector> {
    prop::array::uniform4(coord()).prop_map(MinkowskiVector)
}

fn lambda() -> impl Strategy<Value = f64> {
    (-3.0..3.0f64).prop_map(|e| 10f64.powf(e))
}

fn domain() -> impl Strategy<Value = DomainTag> {
    prop_oneof![Just(DomainTag::SigmaMinus), Just(DomainTag::SigmaPlus)]
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Positive), Just(Side::Negative)]
}

fn chart_point() -> impl Strategy<Value = ChartPoint> {
    (domain(), minkowski(), lambda(), side()).prop_map(|(d, x, l, s)| ChartPoint::new(d, x, l, s).unwrap())
}

fn spec() -> impl Strategy<Value = GeneratorSpec> {
    let small = prop::array::uniform4(-0.5..0.5f64).prop_map(MinkowskiVector);
    prop_oneof![
        ((0usize..6, 1usize..6), -1.0..1.0f64).prop_map(|((i, k), angle)| GeneratorSpec::Rotation {
            plane: (i, (i + k) % 6),
            angle
        }),
        (-1.0..1.0f64).prop_map(GeneratorSpec::Dilation),
        prop::array::uniform4(-2.0..2.0f64).prop_map(|a| GeneratorSpec::Translation(MinkowskiVector(a))),
        small.prop_map(GeneratorSpec::SpecialConformal),
        Just(GeneratorSpec::Inversion),
    ]
}

fn q(x: &MinkowskiVector) -> f64 {
    x.0[0] * x.0[0] + x.0[1] * x.0[1] + x.0[2] * x.0[2] - x.0[3] * x.0[3]
}

fn size(v: &[f64]) -> f64 {
    1.0 + v.iter().map(|c| c * c).sum::<f64>()
}

proptest! {
    #[test]
    fn embeddings_land_on_the_cone(x in minkowski()) {
        let p = tau_plus(&x);
        let m = tau_minus(&x);
        prop_assert!(quadratic_form(&p).abs() <= 1e-9 * (1.0 + q(&x) * q(&x)));
        prop_assert_eq!(classify(&p, 1e-9).unwrap(), Region::Cone);
        prop_assert!(ray_equivalent(&p, &m, EquivalenceRelation::Projective, 1e-9).unwrap());
        prop_assert!(!ray_equivalent(&p, &m, EquivalenceRelation::Oriented, 1e-9).unwrap());
        let back = cone_to_minkowski(&p, 1e-9).unwrap().finite().unwrap();
        for i in 0..4 {
            prop_assert!((back.0[i] - x.0[i]).abs() <= 1e-12 * (1.0 + x.0[i].abs()));
        }
    }

    #[test]
    fn scaled_cone_points_project_to_the_same_point(x in minkowski(), c in prop_oneof![-5.0..-0.2f64, 0.2..5.0f64]) {
        let p = tau_plus(&x) * c;
        let back = cone_to_minkowski(&p, 1e-9).unwrap().finite().unwrap();
        for i in 0..4 {
            prop_assert!((back.0[i] - x.0[i]).abs() <= 1e-9 * (1.0 + x.0[i].abs()));
        }
    }

    #[test]
    fn antipode_is_an_involution(x in minkowski()) {
        let p = tau_plus(&x);
        let a = antipode(&p).unwrap();
        prop_assert_eq!(antipode(&a).unwrap(), p);
    }

    #[test]
    fn chart_round_trip(p in chart_point()) {
        let x = chart_to_ambient(&p);
        prop_assert!((quadratic_form(&x) - p.domain().q_value()).abs() <= 1e-9 * size(&x.0));
        let back = ambient_to_chart(&x, 1e-9).unwrap();
        prop_assert_eq!(back.domain(), p.domain());
        prop_assert_eq!(back.side(), p.side());
        prop_assert!((back.lambda() - p.lambda()).abs() <= 1e-9 * p.lambda());
        for i in 0..4 {
            prop_assert!((back.x().0[i] - p.x().0[i]).abs() <= 1e-9 * (1.0 + p.x().0[i].abs()));
        }
    }

    #[test]
    fn metric_signature_matches_domain(p in chart_point()) {
        let g = metric_closed_form(&p);
        let expected = match p.domain() {
            DomainTag::SigmaMinus => (4, 1),
            DomainTag::SigmaPlus => (3, 2),
        };
        prop_assert_eq!(g.signature(), expected);
        prop_assert!(g.is_symmetric(0.0));
    }

    #[test]
    fn christoffel_lower_indices_are_symmetric(p in chart_point()) {
        prop_assert_eq!(christoffel_closed_form(&p).symmetry_defect(), 0.0);
    }

    #[test]
    fn null_directions_reduce_the_lambda_equation(
        d in domain(),
        s in prop::array::uniform3(-3.0..3.0f64),
        l in lambda(),
    ) {
        let n = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        let u = [s[0], s[1], s[2], n];
        let a = lambda_rhs(d, &u, l).unwrap();
        for i in 0..4 {
            prop_assert!((a[i] - u[i] / l).abs() <= 1e-12 * (1.0 + (u[i] / l).abs()));
        }
        prop_assert_eq!(classify_direction(&u, 1e-9), DirectionClass::Null);
    }

    #[test]
    fn lambda_direction_stays_constant(
        x in minkowski(),
        v in prop::array::uniform4(-0.5..0.5f64),
        end in 0.5..1.5f64,
    ) {
        prop_assume!(v.iter().any(|c| c.abs() > 1e-3));
        let p = ChartPoint::positive(DomainTag::SigmaMinus, x.0, 1.0).unwrap();
        let path = integrate_lambda(&GeodesicState::lambda_parameterized(p, v), end, 1e-3).unwrap();
        let unit = |w: [f64; 4]| {
            let n = w.iter().map(|c| c * c).sum::<f64>().sqrt();
            w.map(|c| c / n)
        };
        let u0 = unit(v);
        for s in &path.samples {
            let u = unit(s.state.xprime());
            for i in 0..4 {
                prop_assert!((u[i] - u0[i]).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn generators_preserve_the_form(specs in prop::collection::vec(spec(), 1..=5)) {
        let m = compose(&specs).unwrap();
        prop_assert!(conformal_defect(m.matrix()) <= 1e-9);
        prop_assert!((m.determinant().abs() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn group_action_preserves_inner_products(
        specs in prop::collection::vec(spec(), 1..=3),
        x in prop::array::uniform6(-3.0..3.0f64),
        y in prop::array::uniform6(-3.0..3.0f64),
    ) {
        let m = compose(&specs).unwrap();
        let (x, y) = (AmbientVector(x), AmbientVector(y));
        let before = inner(&x, &y);
        let after = inner(&act_ambient(&m, &x), &act_ambient(&m, &y));
        let scale = size(&act_ambient(&m, &x).0) + size(&act_ambient(&m, &y).0);
        prop_assert!((before - after).abs() <= 1e-9 * scale);
    }

    #[test]
    fn inverse_undoes_the_chart_action(s in spec(), p in chart_point()) {
        let m = generator(&s).unwrap();
        if let Ok(img) = act_chart(&m, &p) {
            let back = act_chart(&m.inverse(), &img).unwrap();
            prop_assert_eq!(back.domain(), p.domain());
            prop_assert!((back.lambda() - p.lambda()).abs() <= 1e-6 * p.lambda());
        }
    }

    #[test]
    fn incidence_forms_agree(x in minkowski(), y in minkowski(), l in lambda()) {
        let p = ChartPoint::positive(DomainTag::SigmaMinus, y.0, l).unwrap();
        let (bilinear, quadratic) = incidence_forms(&x, &p).unwrap();
        prop_assert!((2.0 * bilinear + quadratic).abs() <= 1e-9 * (size(&x.0) + size(&y.0) + l * l) * 4.0);
        for apex in sigma_point_to_hyperboloid(&p).unwrap().apexes() {
            prop_assert!(incidence(&apex, &p, 1e-9).unwrap());
        }
    }
}
