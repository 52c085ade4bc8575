//! Command bodies. Each returns the text for stdout, or a [`Failure`]
//! carrying the exit code.

use serde_json::{json, Value};

use conformal5::ambient::{quadratic_form, AmbientVector, MinkowskiVector};
use conformal5::charts::{
    ambient_to_chart, chart_to_ambient, domain_of, metric_closed_form, metric_numerical, ChartPoint, DomainTag,
    MetricTensor, Side,
};
use conformal5::compactification::{tau_minus, tau_plus};
use conformal5::geodesics::{
    christoffel_closed_form, christoffel_numerical, integrate_affine, integrate_lambda, metric_speed,
    plane_section_residual, GeodesicPath, GeodesicState, Parameterization, Termination,
};
use conformal5::properties::{catalog, PropertyOutcome, VerifyConfig};
use conformal5::Error;

use crate::args::*;
use crate::exit;
use crate::figures::{figure_curves, FigureSpec};

/// A command that did not succeed. `stdout` is still printed when present.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub stdout: Option<String>,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            stdout: None,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(exit::USAGE, message)
    }
}

/// Exit code for a library error.
pub fn code_for(e: &Error) -> i32 {
    match e {
        Error::AtDomainInfinity(_) => exit::DOMAIN_INFINITY,
        Error::NotOnSigma(_) | Error::NotOnCone(_) | Error::OnCone(_) | Error::Apex => exit::NOT_ON_MANIFOLD,
        Error::StepTooLarge { .. } | Error::InvalidStep(_) => exit::BAD_STEP,
        _ => exit::USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(code_for(&e), e.to_string())
    }
}

/// Successful output; `note` goes to stderr.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Output {
    pub stdout: String,
    pub note: Option<String>,
}

impl From<String> for Output {
    fn from(stdout: String) -> Self {
        Output { stdout, note: None }
    }
}

pub type Outcome = Result<Output, Failure>;

fn envelope(command: &str, inputs: Value, result: Value, diagnostics: Value) -> String {
    let doc = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "diagnostics": diagnostics,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Drops the sign of negative zeros, which negated embeddings produce.
fn tidy<const N: usize>(v: [f64; N]) -> [f64; N] {
    v.map(|c| c + 0.0)
}

fn domain_name(d: DomainTag) -> &'static str {
    match d {
        DomainTag::SigmaMinus => "sigma-minus",
        DomainTag::SigmaPlus => "sigma-plus",
    }
}

fn side_value(s: Side) -> i32 {
    match s {
        Side::Positive => 1,
        Side::Negative => -1,
    }
}

fn chart_json(p: &ChartPoint) -> Value {
    json!({
        "domain": domain_name(p.domain()),
        "x": tidy(p.x().0),
        "lambda": p.lambda(),
        "side": side_value(p.side()),
    })
}

fn chart_point(domain: DomainArg, x: [f64; 4], lambda: f64, side: SideArg) -> Result<ChartPoint, Failure> {
    ChartPoint::new(domain.into(), MinkowskiVector(x), lambda, side.into()).map_err(|e| Failure::usage(e.to_string()))
}

pub fn embed(a: &EmbedArgs) -> Outcome {
    let x = MinkowskiVector(a.x.0);
    let (name, image) = match a.map {
        MapArg::TauPlus => ("tau-plus", tau_plus(&x)),
        MapArg::TauMinus => ("tau-minus", tau_minus(&x)),
    };
    Ok(Output::from(envelope(
        "embed",
        json!({ "x": a.x.0, "map": name }),
        json!({ "X": tidy(image.0) }),
        json!({ "Q": quadratic_form(&image), "X5-X6": image.light_cone_u() }),
    )))
}

pub fn chart_to_ambient_cmd(a: &ToAmbientArgs) -> Outcome {
    let p = chart_point(a.domain, a.x.0, a.lambda, a.side)?;
    let image = chart_to_ambient(&p);
    Ok(Output::from(envelope(
        "chart to-ambient",
        chart_json(&p),
        json!({ "X": tidy(image.0) }),
        json!({ "Q": quadratic_form(&image) }),
    )))
}

pub fn chart_to_chart_cmd(a: &ToChartArgs) -> Outcome {
    if !(a.tol > 0.0) {
        return Err(Failure::usage("tolerance must be positive"));
    }
    let x = AmbientVector(a.ambient.0);
    let inputs = json!({ "X": a.ambient.0, "tol": a.tol });
    match ambient_to_chart(&x, a.tol) {
        Ok(p) => Ok(Output::from(envelope(
            "chart to-chart",
            inputs,
            chart_json(&p),
            json!({ "Q": quadratic_form(&x) }),
        ))),
        Err(Error::AtDomainInfinity(u)) => {
            // at X5 = X6 the quadric reduces to q(X1..X4) = Q
            let domain = domain_of(&x, a.tol)?;
            let sheet = match domain {
                DomainTag::SigmaMinus => "two-sheeted",
                DomainTag::SigmaPlus => "one-sheeted",
            };
            let result = json!({
                "at_infinity": true,
                "domain": domain_name(domain),
                "hyperboloid": sheet,
                "reduced_point": x.minkowski_part().0,
                "X5+X6": x.0[4] + x.0[5],
            });
            let stdout = envelope("chart to-chart", inputs, result, json!({ "X5-X6": u }));
            Err(Failure {
                code: exit::DOMAIN_INFINITY,
                message: format!("point is at domain infinity ({sheet} hyperboloid)"),
                stdout: Some(stdout),
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn matrix_json(m: &MetricTensor) -> Value {
    Value::Array(
        (0..5)
            .map(|i| json!((0..5).map(|j| m.get(i, j)).collect::<Vec<_>>()))
            .collect(),
    )
}

fn tensor_inputs(a: &TensorArgs) -> Value {
    json!({
        "domain": domain_name(a.domain.into()),
        "x": a.x.0,
        "lambda": a.lambda,
        "side": side_value(a.side.into()),
        "numerical": a.numerical,
        "h": a.h,
    })
}

fn check_step(a: &TensorArgs) -> Result<(), Failure> {
    if a.numerical && !(a.h > 0.0 && a.h < a.lambda) {
        return Err(Failure::new(
            exit::BAD_STEP,
            format!("step h = {} must satisfy 0 < h < lambda = {}", a.h, a.lambda),
        ));
    }
    Ok(())
}

pub fn metric(a: &TensorArgs) -> Outcome {
    let p = chart_point(a.domain, a.x.0, a.lambda, a.side)?;
    check_step(a)?;
    let closed = metric_closed_form(&p);
    let mut result = json!({ "metric": matrix_json(&closed) });
    let mut diagnostics = json!({ "signature": closed.signature() });
    if a.numerical {
        let num = metric_numerical(&p, a.h)?;
        result["numerical"] = matrix_json(&num);
        diagnostics["max_deviation"] = json!(num.max_abs_diff(&closed));
    }
    Ok(Output::from(envelope("metric", tensor_inputs(a), result, diagnostics)))
}

pub fn christoffel(a: &TensorArgs) -> Outcome {
    let p = chart_point(a.domain, a.x.0, a.lambda, a.side)?;
    check_step(a)?;
    let closed = christoffel_closed_form(&p);
    // indices are 1-based, upper index first
    let entries: Vec<Value> = closed
        .nonzero(0.0)
        .into_iter()
        .map(|((i, j, k), v)| json!({ "index": [i + 1, j + 1, k + 1], "value": v }))
        .collect();
    let mut diagnostics = json!({});
    if a.numerical {
        let num = christoffel_numerical(&p, a.h)?;
        diagnostics["max_deviation"] = json!(num.max_abs_diff(&closed));
    }
    Ok(Output::from(envelope(
        "christoffel",
        tensor_inputs(a),
        json!({ "nonzero": entries }),
        diagnostics,
    )))
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::Completed => "completed",
        Termination::LambdaFloorReached => "lambda-floor-reached",
        Termination::StepFailure => "step-failure",
    }
}

fn path_diagnostics(path: &GeodesicPath) -> Value {
    let mut d = json!({ "samples": path.len() });
    if path.parameterization == Parameterization::Affine {
        if let Some(first) = path.samples.first() {
            let v0 = metric_speed(&first.state);
            let drift = path
                .samples
                .iter()
                .map(|s| (metric_speed(&s.state) - v0).abs())
                .fold(0.0, f64::max);
            d["metric_speed"] = json!(v0);
            d["speed_drift"] = json!(drift);
        }
    }
    d["plane_residual"] = match plane_section_residual(path) {
        Ok(r) => json!(r),
        Err(e) => json!(e.to_string()),
    };
    d
}

pub fn geodesic(a: &GeodesicArgs) -> Outcome {
    let p = chart_point(a.domain, a.start.0, a.lambda, a.side)?;
    if !(a.h > 0.0 && a.h.is_finite()) {
        return Err(Failure::new(
            exit::BAD_STEP,
            format!("step h = {} must be positive", a.h),
        ));
    }
    let mut inputs = json!({
        "param": match a.param { ParamArg::Affine => "affine", ParamArg::Lambda => "lambda" },
        "domain": domain_name(a.domain.into()),
        "side": side_value(a.side.into()),
        "start": a.start.0,
        "lambda": a.lambda,
        "h": a.h,
    });
    let path = match a.param {
        ParamArg::Affine => {
            let v = a
                .vel
                .ok_or_else(|| Failure::usage("affine runs need --vel with five components"))?;
            if a.dir.is_some() || a.lambda_end.is_some() {
                return Err(Failure::usage("--dir and --lambda-end apply to --param lambda only"));
            }
            inputs["vel"] = json!(v.0);
            inputs["smax"] = json!(a.smax);
            inputs["floor"] = json!(a.floor);
            integrate_affine(&GeodesicState::new(p, v.0), a.smax, a.h, a.floor)?
        }
        ParamArg::Lambda => {
            let dir = a
                .dir
                .ok_or_else(|| Failure::usage("lambda runs need --dir with four components"))?;
            let end = a
                .lambda_end
                .ok_or_else(|| Failure::usage("lambda runs need --lambda-end"))?;
            if !(end > 0.0 && end.is_finite()) {
                return Err(Failure::usage(format!("--lambda-end must be positive, got {end}")));
            }
            inputs["dir"] = json!(dir.0);
            inputs["lambda_end"] = json!(end);
            integrate_lambda(&GeodesicState::lambda_parameterized(p, dir.0), end, a.h)?
        }
    };
    let termination = termination_name(path.termination);
    let diagnostics = if a.check {
        path_diagnostics(&path)
    } else {
        json!({ "samples": path.len() })
    };
    match a.format {
        PathFormat::Csv => {
            let mut s = String::from("param,x1,x2,x3,x4,lambda\n");
            for sample in &path.samples {
                let c = sample.state.point.coords();
                s.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    sample.param, c[0], c[1], c[2], c[3], c[4]
                ));
            }
            let mut note = format!("termination: {termination}");
            if a.check {
                note.push_str(&format!("\ndiagnostics: {diagnostics}"));
            }
            Ok(Output {
                stdout: s,
                note: Some(note),
            })
        }
        PathFormat::Json => {
            let samples: Vec<Value> = path
                .samples
                .iter()
                .map(|s| {
                    json!({
                        "param": s.param,
                        "x": s.state.point.x().0,
                        "lambda": s.state.point.lambda(),
                        "velocity": s.state.velocity,
                    })
                })
                .collect();
            let result = json!({ "termination": termination, "samples": samples });
            Ok(Output::from(envelope("geodesic", inputs, result, diagnostics)))
        }
    }
}

pub fn figure(a: &FigureArgs, command_line: &str) -> Outcome {
    let mut spec = FigureSpec::default_for(a.n).ok_or_else(|| Failure::usage("figure must be 1, 2 or 3"))?;
    if let Some(p) = &a.params {
        spec.params = p.0.clone();
    }
    if let Some(r) = a.x_range {
        spec.x_range = (r.0[0], r.0[1]);
    }
    if let Some(r) = a.lambda_range {
        spec.lambda_range = (r.0[0], r.0[1]);
    }
    spec.samples = a.samples;
    if a.parallel == 0 {
        return Err(Failure::usage("--parallel must be at least 1"));
    }
    let curves = figure_curves(&spec, a.parallel).map_err(Failure::usage)?;
    let svg = crate::svg::render(&spec, &curves, command_line);
    std::fs::write(&a.out, svg)
        .map_err(|e| Failure::new(exit::IO, format!("cannot write {}: {e}", a.out.display())))?;
    let worst = curves
        .iter()
        .map(|c| c.max_residual.max(c.anchor_residual))
        .fold(0.0, f64::max);
    Ok(Output::from(envelope(
        "figure",
        json!({
            "n": spec.number,
            "out": a.out.display().to_string(),
            "params": spec.params,
            "x_range": [spec.x_range.0, spec.x_range.1],
            "lambda_range": [spec.lambda_range.0, spec.lambda_range.1],
            "samples": spec.samples,
        }),
        json!({ "curves": curves.len() }),
        json!({ "max_invariant_residual": worst }),
    )))
}

fn run_properties(cfg: &VerifyConfig, threads: usize) -> Result<Vec<PropertyOutcome>, Failure> {
    let props = catalog();
    if threads > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Failure::usage(e.to_string()))?;
        Ok(pool.install(|| props.par_iter().map(|p| p.run(cfg)).collect()))
    } else {
        Ok(props.iter().map(|p| p.run(cfg)).collect())
    }
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    if a.parallel == 0 {
        return Err(Failure::usage("--parallel must be at least 1"));
    }
    if a.trials == Some(0) {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let cfg = VerifyConfig {
        seed: a.seed,
        trials: a.trials,
        mutant: a.mutant,
    };
    let outcomes = run_properties(&cfg, a.parallel)?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let report = match a.format {
        ReportFormat::Text => {
            let mut s = String::new();
            for o in &outcomes {
                s.push_str(&format!(
                    "{} {:<42} trials={:<6} worst={:.3e} allowed={:.3e}\n",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.trials,
                    o.worst_residual,
                    o.allowed
                ));
            }
            s.push_str(&format!(
                "{} of {} properties passed (seed {})\n",
                outcomes.len() - failed,
                outcomes.len(),
                a.seed
            ));
            s
        }
        ReportFormat::Json => {
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "passed": o.passed,
                        "trials": o.trials,
                        "worst_residual": o.worst_residual,
                        "allowed": o.allowed,
                    })
                })
                .collect();
            envelope(
                "verify",
                json!({ "seed": a.seed, "trials": a.trials }),
                json!({ "properties": rows }),
                json!({ "failed": failed }),
            )
        }
    };
    if failed == 0 {
        Ok(report.into())
    } else {
        Err(Failure {
            code: exit::VERIFY_FAILED,
            message: format!("{failed} properties failed"),
            stdout: Some(report),
        })
    }
}
