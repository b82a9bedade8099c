//! Request-local computations shared by the command line and the service,
//! so both emit the same bytes for the same problem.

use serde::Serialize;

use curvecraft_core::auxiliary::catalog;
use curvecraft_core::interp::{
    c1_feasible_solution, c1_interpolant, c1_s_bound, c2_feasible_solution_appendix, c2_feasible_solution_remark,
    c2_interpolant, c2_s_bound, reference_table, remark_eta_bound, remark_zeta_bound, C1Solution, C2Solution, KnotJump,
    PiecewiseCurve, SlopeSummary, Violation,
};
use curvecraft_core::io::problem::{CurveProblem, InterpMethod, InterpProblem, Reference};
use curvecraft_core::io::svg::{SceneItem, SceneSpec, Style, PALETTE};
use curvecraft_core::{AuxKind, BasisSpec, Error, Family, Polyline, Result};

/// Largest λ or μ accepted from callers; beyond it the endpoint tangents
/// are so steep that sampled output is no longer meaningful.
pub const MAX_SHAPE_PARAMETER: f64 = 1e6;
pub const REFERENCE_POINTS: usize = 1001;
const SLOPE_GRID: usize = 201;

pub fn check_limits(family: &Family) -> Result<()> {
    if let Family::LambdaMu { lambda, mu } = *family {
        for (name, value) in [("lambda", lambda), ("mu", mu)] {
            if value > MAX_SHAPE_PARAMETER {
                return Err(Error::Domain {
                    name,
                    value,
                    lo: 0.0,
                    hi: MAX_SHAPE_PARAMETER,
                });
            }
        }
    }
    Ok(())
}

/// Compact JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(value).expect("response types serialize");
    bytes.push(b'\n');
    bytes
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaPolyline {
    pub sigma: f64,
    pub params: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveResponse {
    pub basis: BasisSpec,
    pub polygon: Vec<Vec<f64>>,
    pub polylines: Vec<SigmaPolyline>,
}

/// One polyline per requested σ, or one at the basis σ when none are listed.
pub fn curve_polylines(problem: &CurveProblem) -> Result<CurveResponse> {
    let basis = problem.curve.basis();
    check_limits(&basis.system().family())?;
    let sigmas = problem.sigmas.clone().unwrap_or_else(|| vec![basis.sigma()]);
    let mut polylines = Vec::with_capacity(sigmas.len());
    for sigma in sigmas {
        let curve = curvecraft_core::ParametricCurve::new(basis.with_sigma(sigma)?, problem.curve.polygon().clone())?;
        let Polyline { params, points } = curve.sample(problem.samples)?;
        polylines.push(SigmaPolyline { sigma, params, points });
    }
    Ok(CurveResponse {
        basis: basis.clone().into(),
        polygon: problem.curve.polygon().points().to_vec(),
        polylines,
    })
}

/// `k ≥ 2` values evenly spaced over [0, 1].
pub fn sweep_sigmas(k: usize) -> Vec<f64> {
    (0..k)
        .map(|j| if j + 1 == k { 1.0 } else { j as f64 / (k - 1) as f64 })
        .collect()
}

fn xy(points: &[Vec<f64>]) -> Vec<[f64; 2]> {
    points
        .iter()
        .map(|p| [p[0], p.get(1).copied().unwrap_or(0.0)])
        .collect()
}

pub fn curve_scene(response: &CurveResponse) -> SceneSpec {
    let mut items = vec![SceneItem {
        points: xy(&response.polygon),
        style: Style::dashed("#7f7f7f", 1.0),
        label: Some("control polygon".into()),
    }];
    for (k, line) in response.polylines.iter().enumerate() {
        items.push(SceneItem {
            points: xy(&line.points),
            style: Style::solid(PALETTE[k % PALETTE.len()], 1.5),
            label: Some(format!("sigma = {}", line.sigma)),
        });
    }
    SceneSpec::new(items).with_title(format!("{} curve", response.basis.system.tag()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Solution {
    C1(C1Solution),
    C2(C2Solution),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Continuity {
    pub order: usize,
    pub max_jump: f64,
    pub jumps: Vec<KnotJump>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorSummary {
    pub reference: Reference,
    pub points: usize,
    pub max_error: f64,
    pub rms_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpReport {
    /// Empty when the solution satisfies every constraint.
    pub violations: Vec<Violation>,
    /// Largest `|p(x_i) − f_i|` over the knots.
    pub knot_residual: f64,
    pub continuity: Vec<Continuity>,
    pub slopes: SlopeSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpResponse {
    pub method: InterpMethod,
    pub sigma: f64,
    pub aux: AuxKind,
    pub bounds: Bounds,
    pub solution: Solution,
    pub samples: Polyline,
    pub report: InterpReport,
}

pub struct Interpolation {
    pub curve: PiecewiseCurve,
    pub response: InterpResponse,
}

pub fn interpolate(problem: &InterpProblem) -> Result<Interpolation> {
    let data = &problem.data;
    let (bounds, solution, curve) = match problem.method {
        InterpMethod::Sol1 { s } => {
            let sol = c1_feasible_solution(data, s)?;
            let curve = c1_interpolant(data, &sol, &problem.aux, problem.sigma)?;
            let bounds = Bounds {
                s: Some(c1_s_bound(data)),
                zeta: None,
                eta: None,
            };
            (bounds, Solution::C1(sol), curve)
        }
        InterpMethod::AppendixC { s } => {
            let sol = c2_feasible_solution_appendix(data, s)?;
            let curve = c2_interpolant(data, &sol, &problem.aux, problem.sigma)?;
            let bounds = Bounds {
                s: Some(c2_s_bound(data)),
                zeta: None,
                eta: None,
            };
            (bounds, Solution::C2(sol), curve)
        }
        InterpMethod::Remark { zeta, eta } => {
            let sol = c2_feasible_solution_remark(data, zeta, eta)?;
            let curve = c2_interpolant(data, &sol, &problem.aux, problem.sigma)?;
            let bounds = Bounds {
                s: None,
                zeta: Some(remark_zeta_bound(data)),
                eta: Some(remark_eta_bound(data)),
            };
            (bounds, Solution::C2(sol), curve)
        }
    };
    let violations = match &solution {
        Solution::C1(sol) => curvecraft_core::interp::c1_constraint_check(data, sol),
        Solution::C2(sol) => curvecraft_core::interp::c2_constraint_check(data, sol),
    };
    let mut knot_residual = 0.0_f64;
    for (x, f) in data.pairs() {
        knot_residual = knot_residual.max((curve.evaluate_as_function(x)? - f).abs());
    }
    let continuity = (1..=curve.smoothness_order())
        .map(|order| {
            let jumps = curve.continuity_report(order)?;
            let max_jump = jumps.iter().map(|j| j.jump).fold(0.0, f64::max);
            Ok(Continuity { order, max_jump, jumps })
        })
        .collect::<Result<Vec<_>>>()?;
    let error = match problem.reference {
        Some(reference) => {
            let x = data.x();
            let table = reference_table(x[0], x[x.len() - 1], REFERENCE_POINTS, |v| reference.eval(v));
            let profile = curve.error_profile(&table)?;
            Some(ErrorSummary {
                reference,
                points: REFERENCE_POINTS,
                max_error: profile.max_error,
                rms_error: profile.rms_error,
            })
        }
        None => None,
    };
    let report = InterpReport {
        violations,
        knot_residual,
        continuity,
        slopes: curve.slope_summary(SLOPE_GRID),
        error,
    };
    let response = InterpResponse {
        method: problem.method,
        sigma: problem.sigma,
        aux: problem.aux.kind(),
        bounds,
        solution,
        samples: curve.sample(problem.samples)?,
        report,
    };
    Ok(Interpolation { curve, response })
}

pub fn interp_scene(problem: &InterpProblem, response: &InterpResponse) -> SceneSpec {
    let data: Vec<[f64; 2]> = problem.data.pairs().into_iter().map(|(x, f)| [x, f]).collect();
    let items = vec![
        SceneItem {
            points: data,
            style: Style::dashed("#7f7f7f", 1.0),
            label: Some("data".into()),
        },
        SceneItem {
            points: xy(&response.samples.points),
            style: Style::solid(PALETTE[0], 1.5),
            label: Some(format!("sigma = {}", response.sigma)),
        },
    ];
    SceneSpec::new(items).with_title(format!("monotone interpolant, sigma = {}", response.sigma))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterDomain {
    pub name: &'static str,
    pub kind: &'static str,
    pub min: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

fn real(name: &'static str, min: f64, max: f64) -> ParameterDomain {
    ParameterDomain {
        name,
        kind: "real",
        min,
        max: Some(max),
        note: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemEntry {
    pub family: &'static str,
    pub parameters: Vec<ParameterDomain>,
    pub default: Family,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasesCatalog {
    pub systems: Vec<SystemEntry>,
    pub sigma: ParameterDomain,
}

pub fn bases_catalog() -> BasesCatalog {
    let systems = vec![
        SystemEntry {
            family: "bernstein",
            parameters: vec![ParameterDomain {
                name: "degree",
                kind: "integer",
                min: 1.0,
                max: None,
                note: None,
            }],
            default: Family::Bernstein { degree: 3 },
        },
        SystemEntry {
            family: "p_bezier",
            parameters: vec![real("gamma", 0.0, 1.0)],
            default: Family::PBezier { gamma: 0.5 },
        },
        SystemEntry {
            family: "lambda_mu",
            parameters: vec![
                real("lambda", 0.0, MAX_SHAPE_PARAMETER),
                real("mu", 0.0, MAX_SHAPE_PARAMETER),
            ],
            default: Family::LambdaMu { lambda: 0.0, mu: 0.0 },
        },
        SystemEntry {
            family: "yan_cubic",
            parameters: vec![real("lambda", -1.0, 1.0)],
            default: Family::YanCubic { lambda: 0.0 },
        },
    ];
    BasesCatalog {
        systems,
        sigma: real("sigma", 0.0, 1.0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxEntry {
    pub id: &'static str,
    pub default: AuxKind,
    pub parameters: Vec<ParameterDomain>,
    pub increasing: bool,
    pub c2_compatible: bool,
    pub strict_partition: bool,
}

pub fn aux_catalog() -> Vec<AuxEntry> {
    catalog()
        .into_iter()
        .map(|aux| {
            let parameters = match aux.kind() {
                AuxKind::BernsteinTail { .. } => vec![ParameterDomain {
                    name: "n",
                    kind: "integer",
                    min: 3.0,
                    max: None,
                    note: Some("odd"),
                }],
                AuxKind::Trig { .. } => vec![ParameterDomain {
                    name: "k",
                    kind: "integer",
                    min: 1.0,
                    max: None,
                    note: Some("odd"),
                }],
                _ => vec![],
            };
            AuxEntry {
                id: aux.id(),
                default: aux.kind(),
                parameters,
                increasing: aux.increasing(),
                c2_compatible: aux.c2_compatible(),
                strict_partition: aux.strict_partition(),
            }
        })
        .collect()
}

/// Structured error for service bodies and CLI diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub field: Option<String>,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
}

/// HTTP status and body: 422 for infeasible parameters, 400 otherwise.
pub fn classify(err: &Error) -> (u16, ErrorBody) {
    let field = err.field();
    let message = err.to_string();
    match err {
        Error::Infeasible {
            value,
            bound,
            violations,
            ..
        } => (
            422,
            ErrorBody {
                code: "infeasible",
                field,
                message,
                value: Some(*value),
                bound: Some(*bound),
                violations: violations.clone(),
            },
        ),
        Error::Schema { .. } => (
            400,
            ErrorBody {
                code: "schema",
                field,
                message,
                value: None,
                bound: None,
                violations: vec![],
            },
        ),
        _ => (
            400,
            ErrorBody {
                code: "domain",
                field,
                message,
                value: None,
                bound: None,
                violations: vec![],
            },
        ),
    }
}
