//! Seeded random inputs for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ambient::{AmbientVector, MinkowskiVector};
use crate::charts::{ChartPoint, DomainTag, Side};
use crate::group_action::{compose, ConformalMatrix, GeneratorSpec};

pub type SampleRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Log-uniform on `[lo, hi]`.
pub fn log_uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    uniform(rng, lo.ln(), hi.ln()).exp()
}

pub fn minkowski(rng: &mut SampleRng, half_width: f64) -> MinkowskiVector {
    MinkowskiVector(std::array::from_fn(|_| uniform(rng, -half_width, half_width)))
}

pub fn ambient(rng: &mut SampleRng, half_width: f64) -> AmbientVector {
    AmbientVector(std::array::from_fn(|_| uniform(rng, -half_width, half_width)))
}

pub fn domain(rng: &mut SampleRng) -> DomainTag {
    if rng.random_bool(0.5) {
        DomainTag::SigmaMinus
    } else {
        DomainTag::SigmaPlus
    }
}

pub fn side(rng: &mut SampleRng) -> Side {
    if rng.random_bool(0.5) {
        Side::Positive
    } else {
        Side::Negative
    }
}

/// Chart point with `x` uniform in `[-x_half_width, x_half_width]^4` and
/// lambda log-uniform in `lambda_range`.
pub fn chart_point(
    rng: &mut SampleRng,
    domain: DomainTag,
    side: Side,
    x_half_width: f64,
    lambda_range: (f64, f64),
) -> ChartPoint {
    let x = minkowski(rng, x_half_width);
    let lambda = log_uniform(rng, lambda_range.0, lambda_range.1);
    ChartPoint::new(domain, x, lambda, side).expect("sampled lambda is positive")
}

/// A generator with angles and rapidities in `[-1, 1]` and translation or
/// special conformal vectors in `[-vector_bound, vector_bound]^4`.
pub fn generator_spec(rng: &mut SampleRng, vector_bound: f64) -> GeneratorSpec {
    match rng.random_range(0..5u8) {
        0 | 1 => {
            let i = rng.random_range(0..6usize);
            let mut j = rng.random_range(0..5usize);
            if j >= i {
                j += 1;
            }
            GeneratorSpec::Rotation {
                plane: (i, j),
                angle: uniform(rng, -1.0, 1.0),
            }
        }
        2 => GeneratorSpec::Dilation(uniform(rng, -1.0, 1.0)),
        3 => GeneratorSpec::Translation(minkowski(rng, vector_bound)),
        _ => GeneratorSpec::SpecialConformal(minkowski(rng, vector_bound)),
    }
}

/// Product of one to `max_len` random generators.
pub fn group_element(rng: &mut SampleRng, max_len: usize, vector_bound: f64) -> (Vec<GeneratorSpec>, ConformalMatrix) {
    let n = rng.random_range(1..=max_len.max(1));
    let specs: Vec<GeneratorSpec> = (0..n).map(|_| generator_spec(rng, vector_bound)).collect();
    let m = compose(&specs).expect("sampled generators are valid");
    (specs, m)
}
