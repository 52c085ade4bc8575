//! Seeded property suite over every module, reported per property with the
//! worst residual seen. Backs the `verify` command of the CLI.
//!
//! Each property draws from its own generator derived from the run seed and
//! the property name, so properties can run in any order or in parallel and
//! still give identical reports.

use crate::ambient::{
    inner, minkowski_q, normalize_to_sigma, quadratic_form, ray_equivalent, AmbientVector, EquivalenceRelation,
    MinkowskiVector, DEFAULT_TOL,
};
use crate::charts::{
    ambient_to_chart, chart_to_ambient, metric_closed_form, metric_numerical, ChartPoint, DomainTag, Side,
};
use crate::compactification::{cone_to_minkowski, tau_minus, tau_plus};
use crate::geodesics::{
    affine_rhs, christoffel_closed_form, christoffel_numerical, integrate_affine, integrate_lambda, lambda_rhs,
    metric_speed, plane_section_residual, ClosedFormGeodesic, DirectionClass, GeodesicPath, GeodesicState, Profile,
    Termination, DEFAULT_LAMBDA_FLOOR, DEFAULT_STEP,
};
use crate::group_action::{
    act_ambient, act_chart, act_minkowski, generator, is_conformal_matrix, minkowski_action_jacobian,
    pullback_metric_residual, ConformalMatrix, GeneratorSpec,
};
use crate::hyperboloids::{incidence, incidence_forms, sigma_point_to_hyperboloid};
use crate::sampling::{self as smp, SampleRng};

/// Settings of a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Overrides every property's default trial count.
    pub trials: Option<usize>,
    /// Swaps in a sign-flipped Christoffel symbol to check that the suite
    /// can fail.
    pub mutant: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            trials: None,
            mutant: false,
        }
    }
}

/// Result of one property.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    /// Residual at the worst trial.
    pub worst_residual: f64,
    /// Allowed residual at the worst trial.
    pub allowed: f64,
    /// `worst_residual / allowed`; the property passes iff this is <= 1.
    pub ratio: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy)]
struct Worst {
    residual: f64,
    allowed: f64,
    ratio: f64,
}

impl Worst {
    fn new() -> Self {
        Worst {
            residual: 0.0,
            allowed: 1.0,
            ratio: 0.0,
        }
    }

    fn record(&mut self, residual: f64, allowed: f64) {
        let ratio = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual / allowed
        };
        if ratio > self.ratio || (ratio.is_infinite() && !self.ratio.is_infinite()) {
            *self = Worst {
                residual,
                allowed,
                ratio,
            };
        }
    }

    /// Boolean check: a failure counts as an infinite residual.
    fn require(&mut self, ok: bool) {
        if !ok {
            self.record(f64::INFINITY, 1.0);
        }
    }
}

type Check = fn(&mut SampleRng, usize, bool) -> Worst;

/// A named, seeded invariant check.
#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub default_trials: usize,
    check: Check,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("default_trials", &self.default_trials)
            .finish()
    }
}

fn name_seed(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

impl Property {
    pub fn run(&self, cfg: &VerifyConfig) -> PropertyOutcome {
        let trials = cfg.trials.unwrap_or(self.default_trials).max(1);
        let mut rng = smp::seeded(cfg.seed ^ name_seed(self.name));
        let w = (self.check)(&mut rng, trials, cfg.mutant);
        PropertyOutcome {
            name: self.name,
            trials,
            worst_residual: w.residual,
            allowed: w.allowed,
            ratio: w.ratio,
            passed: w.ratio <= 1.0,
        }
    }
}

/// Every property, in report order.
pub fn catalog() -> Vec<Property> {
    macro_rules! prop {
        ($name:expr, $n:expr, $f:expr) => {
            Property {
                name: $name,
                default_trials: $n,
                check: $f,
            }
        };
    }
    vec![
        prop!("ambient/bilinear-symmetric", 10_000, bilinear_symmetric),
        prop!("ambient/normalize-to-sigma", 10_000, normalize_unit),
        prop!("ambient/ray-equivalence", 10_000, ray_equivalence),
        prop!("compactification/nullity", 10_000, nullity),
        prop!("compactification/section", 10_000, section),
        prop!("compactification/scale-invariance", 10_000, scale_invariance),
        prop!("compactification/non-intersection", 10_000, non_intersection),
        prop!("compactification/polarization", 10_000, polarization),
        prop!("charts/embedding", 10_000, chart_embedding),
        prop!("charts/round-trip", 10_000, chart_round_trip),
        prop!("charts/metric-cross-validation", 1_000, metric_cross_validation),
        prop!("charts/side-coverage", 10_000, side_coverage),
        prop!(
            "geodesics/christoffel-cross-validation",
            1_000,
            christoffel_cross_validation
        ),
        prop!("geodesics/affine-conservation", 20, affine_conservation),
        prop!("geodesics/oracle-agreement", 30, oracle_agreement),
        prop!("geodesics/direction-constancy", 30, direction_constancy),
        prop!("geodesics/plane-sections", 30, plane_sections),
        prop!(
            "geodesics/parameterization-consistency",
            20,
            parameterization_consistency
        ),
        prop!("group/closure", 1_000, group_closure),
        prop!("group/q-invariance", 10_000, q_invariance),
        prop!("group/isometry", 100, isometry),
        prop!("group/geodesic-equivariance", 20, geodesic_equivariance),
        prop!("group/minkowski-conformality", 100, minkowski_conformality),
        prop!("hyperboloids/identity", 10_000, hyperboloid_identity),
        prop!("hyperboloids/apex-membership", 10_000, apex_membership),
        prop!("hyperboloids/incidence-equivariance", 1_000, incidence_equivariance),
    ]
}

/// Runs the whole catalog sequentially.
pub fn run_all(cfg: &VerifyConfig) -> Vec<PropertyOutcome> {
    catalog().iter().map(|p| p.run(cfg)).collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum()
}

fn bilinear_symmetric(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (x, y, z) = (
            smp::ambient(rng, 10.0),
            smp::ambient(rng, 10.0),
            smp::ambient(rng, 10.0),
        );
        let (a, b) = (smp::uniform(rng, -5.0, 5.0), smp::uniform(rng, -5.0, 5.0));
        let lhs = inner(&(x * a + y * b), &z);
        let rhs = a * inner(&x, &z) + b * inner(&y, &z);
        let size = 1.0 + (a.abs() * inner_abs(&x, &z) + b.abs() * inner_abs(&y, &z));
        w.record((lhs - rhs).abs(), 1e-12 * size);
        w.record((inner(&x, &y) - inner(&y, &x)).abs(), 1e-12 * (1.0 + inner_abs(&x, &y)));
    }
    w
}

fn inner_abs(x: &AmbientVector, y: &AmbientVector) -> f64 {
    x.0.iter().zip(y.0.iter()).map(|(a, b)| (a * b).abs()).sum()
}

fn normalize_unit(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    let mut done = 0;
    while done < n {
        let x = smp::ambient(rng, 1.0);
        let q = quadratic_form(&x);
        if q.abs() < 0.1 {
            continue;
        }
        done += 1;
        let s = normalize_to_sigma(&x).expect("off the cone");
        w.record((quadratic_form(&s) - q.signum()).abs(), 1e-12 * (1.0 + norm2(&s.0)));
        w.require(ray_equivalent(&s, &x, EquivalenceRelation::Oriented, DEFAULT_TOL) == Ok(true));
    }
    w
}

fn ray_equivalence(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    use EquivalenceRelation::*;
    let mut w = Worst::new();
    for _ in 0..n {
        let x = smp::ambient(rng, 10.0);
        let mut scalar = || {
            let c = smp::log_uniform(rng, 0.01, 100.0);
            if smp::uniform(rng, 0.0, 1.0) < 0.5 {
                -c
            } else {
                c
            }
        };
        let (c1, c2) = (scalar(), scalar());
        let y = x * c1;
        let z = y * c2;
        let t = DEFAULT_TOL;
        for rel in [Projective, Oriented] {
            w.require(ray_equivalent(&x, &x, rel, t) == Ok(true));
            let xy = ray_equivalent(&x, &y, rel, t).unwrap();
            let yx = ray_equivalent(&y, &x, rel, t).unwrap();
            let yz = ray_equivalent(&y, &z, rel, t).unwrap();
            let xz = ray_equivalent(&x, &z, rel, t).unwrap();
            w.require(xy == yx);
            w.require(!(xy && yz) || xz);
            let expected = match rel {
                Projective => true,
                Oriented => c1 > 0.0,
            };
            w.require(xy == expected);
        }
        let oriented = ray_equivalent(&x, &z, Oriented, t).unwrap();
        w.require(!oriented || ray_equivalent(&x, &z, Projective, t).unwrap());
    }
    w
}

fn nullity(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let x = smp::minkowski(rng, 10.0);
        let q = minkowski_q(&x);
        let allowed = 1e-9 * (1.0 + q * q);
        w.record(quadratic_form(&tau_plus(&x)).abs(), allowed);
        w.record(quadratic_form(&tau_minus(&x)).abs(), allowed);
        w.record((tau_plus(&x).light_cone_u() - 1.0).abs(), 1e-12);
        w.record((tau_minus(&x).light_cone_u() + 1.0).abs(), 1e-12);
    }
    w
}

fn section(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let x = smp::minkowski(rng, 10.0);
        match cone_to_minkowski(&tau_plus(&x), DEFAULT_TOL).map(|p| p.finite()) {
            Ok(Some(y)) => {
                for i in 0..4 {
                    w.record((y.0[i] - x.0[i]).abs(), 1e-12 * (1.0 + x.0[i].abs()));
                }
            }
            _ => w.require(false),
        }
    }
    w
}

fn scale_invariance(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let x = smp::minkowski(rng, 10.0);
        let c = smp::log_uniform(rng, 0.01, 100.0);
        let base = tau_plus(&x);
        let a = cone_to_minkowski(&base, DEFAULT_TOL).ok().and_then(|p| p.finite());
        let b = cone_to_minkowski(&(base * c), DEFAULT_TOL)
            .ok()
            .and_then(|p| p.finite());
        match (a, b) {
            (Some(a), Some(b)) => {
                for i in 0..4 {
                    w.record((a.0[i] - b.0[i]).abs(), 1e-12 * (1.0 + a.0[i].abs()));
                }
            }
            _ => w.require(false),
        }
    }
    w
}

fn non_intersection(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let x = smp::minkowski(rng, 10.0);
        let y = if smp::uniform(rng, 0.0, 1.0) < 0.1 {
            x
        } else {
            smp::minkowski(rng, 10.0)
        };
        let eq = ray_equivalent(
            &tau_plus(&x),
            &tau_minus(&y),
            EquivalenceRelation::Oriented,
            DEFAULT_TOL,
        );
        w.require(eq == Ok(false));
    }
    w
}

fn polarization(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let x = smp::minkowski(rng, 10.0);
        let y = smp::minkowski(rng, 10.0);
        let lhs = inner(&tau_plus(&x), &tau_plus(&y));
        w.record((lhs + 0.5 * minkowski_q(&(x - y))).abs(), 1e-9);
    }
    w
}

fn wide_chart_point(rng: &mut SampleRng) -> ChartPoint {
    let d = smp::domain(rng);
    let s = smp::side(rng);
    smp::chart_point(rng, d, s, 10.0, (1e-3, 1e3))
}

fn chart_embedding(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let p = wide_chart_point(rng);
        let q = quadratic_form(&chart_to_ambient(&p));
        let size = norm2(&p.coords());
        w.record((q - p.domain().q_value()).abs(), 1e-9 * (1.0 + size * size));
    }
    w
}

fn chart_round_trip(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let p = wide_chart_point(rng);
        let x = chart_to_ambient(&p);
        match ambient_to_chart(&x, DEFAULT_TOL) {
            Ok(back) => {
                w.require(back.domain() == p.domain() && back.side() == p.side());
                for i in 0..4 {
                    w.record((back.x().0[i] - p.x().0[i]).abs(), 1e-9 * (1.0 + p.x().0[i].abs()));
                }
                w.record((back.lambda() - p.lambda()).abs(), 1e-9 * p.lambda());
                let again = chart_to_ambient(&back);
                for i in 0..6 {
                    w.record((again.0[i] - x.0[i]).abs(), 1e-9 * (1.0 + x.0[i].abs()));
                }
            }
            Err(_) => w.require(false),
        }
    }
    w
}

fn metric_cross_validation(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let d = smp::domain(rng);
        let s = smp::side(rng);
        let p = smp::chart_point(rng, d, s, 3.0, (0.1, 10.0));
        let num = metric_numerical(&p, 1e-5).expect("step below lambda");
        let diff = num.max_abs_diff(&metric_closed_form(&p));
        w.record(diff, 1e-6 / (p.lambda() * p.lambda()));
        w.require(num.signature() == d.signature());
    }
    w
}

fn side_coverage(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let p = wide_chart_point(rng);
        let x = chart_to_ambient(&p);
        match (ambient_to_chart(&x, DEFAULT_TOL), ambient_to_chart(&-x, DEFAULT_TOL)) {
            (Ok(a), Ok(b)) => {
                w.require(a.side() == b.side().flipped());
                w.record((a.lambda() - b.lambda()).abs(), 1e-12 * a.lambda());
                for i in 0..4 {
                    w.record((a.x().0[i] - b.x().0[i]).abs(), 1e-12 * (1.0 + a.x().0[i].abs()));
                }
            }
            _ => w.require(false),
        }
    }
    w
}

fn christoffel_cross_validation(rng: &mut SampleRng, n: usize, mutant: bool) -> Worst {
    let mut w = Worst::new();
    for i in 0..n {
        // Sigma- is the reference domain; every fourth draw covers Sigma+
        let d = if i % 4 == 3 {
            DomainTag::SigmaPlus
        } else {
            DomainTag::SigmaMinus
        };
        let s = smp::side(rng);
        let p = smp::chart_point(rng, d, s, 10.0, (1e-2, 1e2));
        let mut closed = christoffel_closed_form(&p);
        if mutant {
            for mu in 0..4 {
                closed.0[4][mu][mu] = -closed.0[4][mu][mu];
            }
        }
        let num = christoffel_numerical(&p, 1e-5).expect("step below lambda");
        w.record(num.max_abs_diff(&closed), 1e-4 / p.lambda());
        w.record(num.symmetry_defect(), 1e-12);
    }
    w
}

/// Random affine initial data heading toward the boundary, redrawn until
/// the integration completes with lambda in `[1e-4, 1e4]`.
fn completed_affine_path(rng: &mut SampleRng, s_max: f64) -> (GeodesicState, GeodesicPath) {
    loop {
        let d = smp::domain(rng);
        let s = smp::side(rng);
        let p = smp::chart_point(rng, d, s, 1.0, (0.5, 2.0));
        let mut v: [f64; 5] = std::array::from_fn(|_| smp::uniform(rng, -1.0, 1.0));
        v[4] = -v[4].abs();
        let start = GeodesicState::new(p, v);
        let path = integrate_affine(&start, s_max, DEFAULT_STEP, DEFAULT_LAMBDA_FLOOR).expect("valid settings");
        let ok =
            path.termination == Termination::Completed && path.points().all(|p| (1e-4..=1e4).contains(&p.lambda()));
        if ok {
            return (start, path);
        }
    }
}

fn affine_conservation(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (start, path) = completed_affine_path(rng, 10.0);
        let v0 = metric_speed(&start);
        for s in &path.samples {
            w.record((metric_speed(&s.state) - v0).abs(), 1e-8 * (1.0 + v0.abs()));
        }
    }
    w
}

/// Random closed-form geodesic on `Sigma-` or `Sigma+` together with a lambda
/// range on which its lambda-parameterization is regular.
fn random_closed_form(rng: &mut SampleRng) -> (ClosedFormGeodesic, f64, f64) {
    let domain = smp::domain(rng);
    let center = smp::minkowski(rng, 1.0);
    let rapidity = smp::uniform(rng, -1.0, 1.0);
    let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
    let angle = smp::uniform(rng, 0.0, std::f64::consts::TAU);
    let (sn, cs) = angle.sin_cos();
    let (kind, dir) = match rng_index(rng, 3) {
        0 => (DirectionClass::Null, [cs, sn, 0.0, 1.0]),
        1 => (DirectionClass::Timelike, [sh * cs, sh * sn, 0.0, ch]),
        _ => (DirectionClass::Spacelike, [ch * cs, ch * sn, 0.0, sh]),
    };
    let a = smp::uniform(rng, 0.5, 2.0);
    let g = ClosedFormGeodesic::new(domain, kind, center, a, dir).expect("normalized direction");
    let (lo, hi) = match g.profile() {
        Profile::Semicircle => (0.2 * a, 0.95 * a),
        _ => (0.2, 3.0),
    };
    let l0 = smp::uniform(rng, lo, hi);
    let l1 = smp::uniform(rng, lo, hi);
    (g, l0, l1)
}

fn rng_index(rng: &mut SampleRng, n: usize) -> usize {
    (smp::uniform(rng, 0.0, n as f64) as usize).min(n - 1)
}

fn oracle_agreement(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (g, l0, l1) = random_closed_form(rng);
        let path = integrate_lambda(&g.state_at(l0).unwrap(), l1, DEFAULT_STEP).unwrap();
        w.require(path.termination == Termination::Completed);
        for p in path.points() {
            w.record(g.invariant_residual(&p.x(), p.lambda()), 1e-6);
        }
    }
    w
}

fn direction_constancy(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (g, l0, l1) = random_closed_form(rng);
        let path = integrate_lambda(&g.state_at(l0).unwrap(), l1, DEFAULT_STEP).unwrap();
        let unit = |v: [f64; 4]| {
            let n = norm2(&v).sqrt();
            v.map(|c| c / n)
        };
        let d0 = unit(path.samples[0].state.xprime());
        for s in &path.samples {
            let d = unit(s.state.xprime());
            // the direction may pass through zero only at a profile extremum
            let dev = (0..4).map(|i| (d[i] - d0[i]).abs()).fold(0.0, f64::max);
            let flipped = (0..4).map(|i| (d[i] + d0[i]).abs()).fold(0.0, f64::max);
            w.record(dev.min(flipped), 1e-8);
        }
    }
    w
}

fn plane_sections(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (g, l0, l1) = random_closed_form(rng);
        let (lo, hi) = (l0.min(l1), l0.max(l1).max(l0.min(l1) + 1e-3));
        let lambdas: Vec<f64> = (0..50).map(|i| lo + (hi - lo) * i as f64 / 49.0).collect();
        match g.sample(&lambdas) {
            Ok(sampled) => w.record(plane_section_residual(&sampled).unwrap(), 1e-10),
            Err(_) => w.require(false),
        }
        let integrated = integrate_lambda(&g.state_at(l0).unwrap(), l1, DEFAULT_STEP).unwrap();
        if integrated.len() >= 3 {
            w.record(plane_section_residual(&integrated).unwrap(), 1e-7);
        }
        let (_, affine) = completed_affine_path(rng, 10.0);
        w.record(plane_section_residual(&affine).unwrap(), 1e-7);
    }
    w
}

fn parameterization_consistency(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (_, path) = completed_affine_path(rng, 5.0);
        for s in path.samples.iter().step_by(50) {
            let v = s.state.velocity;
            if v[4].abs() < 1e-3 {
                continue;
            }
            let acc = affine_rhs(&s.state);
            let a = &acc[5..];
            let xprime = [v[0] / v[4], v[1] / v[4], v[2] / v[4], v[3] / v[4]];
            let expected = lambda_rhs(s.state.point.domain(), &xprime, s.state.point.lambda()).unwrap();
            for mu in 0..4 {
                let xpp = (a[mu] * v[4] - v[mu] * a[4]) / v[4].powi(3);
                w.record((xpp - expected[mu]).abs(), 1e-6 * (1.0 + expected[mu].abs()));
            }
        }
    }
    w
}

fn group_closure(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (_, a) = smp::group_element(rng, 5, 2.0);
        let (_, b) = smp::group_element(rng, 5, 2.0);
        let size = |m: &ConformalMatrix| m.matrix().abs().max().powi(2);
        for m in [a * b, a.inverse(), b * a.inverse()] {
            let defect = crate::group_action::conformal_defect(m.matrix());
            w.record(defect, 1e-9 * size(&m).max(1.0));
            w.record((m.determinant().abs() - 1.0).abs(), 1e-9 * size(&m).max(1.0).powi(3));
        }
        let id = a * a.inverse();
        let err = (id.matrix() - nalgebra::Matrix6::identity()).abs().max();
        w.record(err, 1e-9 * size(&a).max(1.0));
        w.require(is_conformal_matrix(a.matrix(), 1e-9 * size(&a).max(1.0)));
    }
    w
}

fn q_invariance(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (_, m) = smp::group_element(rng, 5, 2.0);
        let x = smp::ambient(rng, 1.0);
        let y = act_ambient(&m, &x);
        w.record(
            (quadratic_form(&y) - quadratic_form(&x)).abs(),
            1e-9 * (1.0 + norm2(&x.0)).max(1e-7 * norm2(&y.0)),
        );
    }
    w
}

/// A random group element and chart point whose image stays well inside
/// the chart (lambda in `[0.05, 20]`).
fn element_and_point(rng: &mut SampleRng) -> (ConformalMatrix, ChartPoint) {
    loop {
        let (_, m) = smp::group_element(rng, 5, 2.0);
        let d = smp::domain(rng);
        let s = smp::side(rng);
        let p = smp::chart_point(rng, d, s, 1.0, (0.5, 2.0));
        if let Ok(img) = act_chart(&m, &p) {
            if (0.05..=20.0).contains(&img.lambda()) && img.x().max_abs() <= 20.0 {
                return (m, p);
            }
        }
    }
}

fn isometry(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let (m, p) = element_and_point(rng);
        match pullback_metric_residual(&m, &p, 1e-5) {
            Ok(r) => w.record(r, 1e-6),
            Err(_) => w.require(false),
        }
    }
    w
}

fn geodesic_equivariance(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    let mut done = 0;
    while done < n {
        let (_, path) = completed_affine_path(rng, 3.0);
        let (_, m) = smp::group_element(rng, 5, 2.0);
        let mapped: Result<Vec<ChartPoint>, _> = path.points().map(|p| act_chart(&m, p)).collect();
        let Ok(mapped) = mapped else { continue };
        if mapped.iter().any(|p| !(1e-4..=1e4).contains(&p.lambda())) {
            continue;
        }
        done += 1;
        let image = GeodesicPath {
            samples: path
                .samples
                .iter()
                .zip(mapped)
                .map(|(s, p)| crate::geodesics::PathSample {
                    param: s.param,
                    state: GeodesicState::new(p, s.state.velocity),
                })
                .collect(),
            ..path
        };
        w.record(plane_section_residual(&image).unwrap(), 1e-7);
    }
    w
}

/// `max |J^T eta J - c eta| / c` with `c` the mean diagonal ratio, for the
/// numerical differential of an induced Minkowski map.
pub fn conformality_defect(jac: &nalgebra::Matrix4<f64>) -> (f64, f64) {
    let eta = nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    let pulled = jac.transpose() * eta * jac;
    let c = (0..4).map(|i| pulled[(i, i)] * eta[(i, i)]).sum::<f64>() / 4.0;
    ((pulled - eta * c).abs().max() / c.abs(), c)
}

fn minkowski_conformality(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    let mut done = 0;
    while done < n {
        let (_, m) = smp::group_element(rng, 5, 2.0);
        let x = smp::minkowski(rng, 1.0);
        let Some((y, _)) = act_minkowski(&m, &x).finite() else {
            continue;
        };
        if y.max_abs() > 100.0 {
            continue;
        }
        let Ok(jac) = minkowski_action_jacobian(&m, &x, 1e-5) else {
            continue;
        };
        done += 1;
        let (defect, c) = conformality_defect(&jac);
        w.require(c > 0.0);
        w.record(defect, 1e-5);
    }
    w
}

fn hyperboloid_identity(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let x = smp::minkowski(rng, 10.0);
        let p = smp::chart_point(rng, DomainTag::SigmaMinus, Side::Positive, 10.0, (1e-2, 1e2));
        let (bilinear, quadratic) = incidence_forms(&x, &p).unwrap();
        let y = crate::hyperboloids::normalized_representative(&p).unwrap();
        let scale = crate::ambient::scale(&[&tau_plus(&x).0, &y.0]);
        w.record((bilinear + 0.5 * quadratic).abs(), 1e-9 * scale);
    }
    w
}

fn apex_membership(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let s = smp::side(rng);
        let p = smp::chart_point(rng, DomainTag::SigmaMinus, s, 10.0, (1e-2, 1e2));
        let h = sigma_point_to_hyperboloid(&p).unwrap();
        for apex in h.apexes() {
            w.require(incidence(&apex, &p, DEFAULT_TOL) == Ok(true));
        }
    }
    w
}

fn incidence_equivariance(rng: &mut SampleRng, n: usize, _: bool) -> Worst {
    let mut w = Worst::new();
    for _ in 0..n {
        let p = smp::chart_point(rng, DomainTag::SigmaMinus, Side::Positive, 3.0, (0.2, 5.0));
        let spatial: [f64; 3] = std::array::from_fn(|_| smp::uniform(rng, -3.0, 3.0));
        let r2: f64 = (0..3).map(|i| (spatial[i] - p.x().0[i]).powi(2)).sum();
        let sign = if smp::uniform(rng, 0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
        let on = MinkowskiVector([
            spatial[0],
            spatial[1],
            spatial[2],
            p.x().0[3] + sign * (r2 + p.lambda().powi(2)).sqrt(),
        ]);
        let off = on + MinkowskiVector([0.0, 0.0, 0.0, smp::uniform(rng, 0.1, 1.0)]);
        let spec = if smp::uniform(rng, 0.0, 1.0) < 0.5 {
            GeneratorSpec::Translation(smp::minkowski(rng, 2.0))
        } else {
            let i = rng_index(rng, 4);
            let j = (i + 1 + rng_index(rng, 3)) % 4;
            GeneratorSpec::Rotation {
                plane: (i, j),
                angle: smp::uniform(rng, -1.0, 1.0),
            }
        };
        let m = generator(&spec).unwrap();
        let Ok(p2) = act_chart(&m, &p) else {
            w.require(false);
            continue;
        };
        for x in [on, off] {
            let before = incidence(&x, &p, DEFAULT_TOL).unwrap();
            let Some((x2, _)) = act_minkowski(&m, &x).finite() else {
                w.require(false);
                continue;
            };
            let after = incidence(&x2, &p2, DEFAULT_TOL).unwrap();
            w.require(before == after);
        }
        w.require(incidence(&on, &p, DEFAULT_TOL) == Ok(true));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes_small() {
        let cfg = VerifyConfig {
            seed: 3,
            trials: Some(5),
            mutant: false,
        };
        for outcome in run_all(&cfg) {
            assert!(outcome.passed, "{outcome:?}");
        }
    }

    #[test]
    fn mutant_is_detected() {
        let cfg = VerifyConfig {
            seed: 3,
            trials: Some(5),
            mutant: true,
        };
        let outcomes = run_all(&cfg);
        assert!(outcomes.iter().any(|o| !o.passed));
    }

    #[test]
    fn runs_are_reproducible() {
        let cfg = VerifyConfig {
            seed: 11,
            trials: Some(3),
            mutant: false,
        };
        let prop = catalog()[10];
        assert_eq!(prop.run(&cfg), prop.run(&cfg));
    }
}
