//! JSON problem documents.
//!
//! Curve problem:
//!
//! ```json
//! {"basis": {"system": {"family": "bernstein", "degree": 3}, "aux": {"aux": "cubic"}, "sigma": 0.5},
//!  "polygon": [[0, 0], [1, 2], [3, 2], [4, 0]], "samples": 101, "sigmas": [0, 1]}
//! ```
//!
//! Interpolation problem:
//!
//! ```json
//! {"dataset": [[0, 0.5], [0.292, 0.572]], "mode": "c1", "solution_strategy": "sol1",
//!  "s": 0.05, "sigma": 0.5, "aux": {"aux": "cubic"}, "samples": 21, "reference": "logistic"}
//! ```
//!
//! Malformed documents fail with [`Error::Schema`] naming the JSON path;
//! well-formed documents with out-of-range values fail with a domain error.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::auxiliary::{AuxKind, AuxiliaryFunction};
use crate::curve::{ControlPolygon, ParametricCurve};
use crate::enhanced::BasisSpec;
use crate::error::{Error, Result};
use crate::interp::MonotoneDataset;

pub const DEFAULT_CURVE_SAMPLES: usize = 101;
pub const DEFAULT_SEGMENT_SAMPLES: usize = 21;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub basis: BasisSpec,
    pub polygon: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigmas: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    C1,
    C2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Sol1,
    AppendixC,
    Remark,
}

/// Reference function for error profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// `1 / (1 + e^{−x})`
    Logistic,
}

impl Reference {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Reference::Logistic => crate::interp::logistic(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpDocument {
    pub dataset: Vec<[f64; 2]>,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution_strategy: Option<Strategy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    pub sigma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Reference>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveProblem {
    pub curve: ParametricCurve,
    pub samples: usize,
    pub sigmas: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum InterpMethod {
    Sol1 { s: f64 },
    AppendixC { s: f64 },
    Remark { zeta: f64, eta: f64 },
}

impl InterpMethod {
    pub fn mode(&self) -> Mode {
        match self {
            InterpMethod::Sol1 { .. } => Mode::C1,
            _ => Mode::C2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterpProblem {
    pub data: MonotoneDataset,
    pub method: InterpMethod,
    pub sigma: f64,
    pub aux: AuxiliaryFunction,
    pub samples: usize,
    pub reference: Option<Reference>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Curve(CurveProblem),
    Interp(InterpProblem),
}

/// A curve problem if the document has `polygon`, an interpolation problem if it has `dataset`.
pub fn parse_problem(json: &[u8]) -> Result<Problem> {
    let value: serde_json::Value = parse_value(json)?;
    let is_interp = value.get("dataset").is_some();
    let is_curve = value.get("polygon").is_some() || value.get("basis").is_some();
    match (is_curve, is_interp) {
        (_, true) => Ok(Problem::Interp(interp_from_value(value)?)),
        (true, false) => Ok(Problem::Curve(curve_from_value(value)?)),
        (false, false) => Err(Error::Schema {
            field: ".".into(),
            message: "expected a curve problem (`basis`, `polygon`) or an interpolation problem (`dataset`)".into(),
        }),
    }
}

pub fn parse_curve_problem(json: &[u8]) -> Result<CurveProblem> {
    curve_from_value(parse_value(json)?)
}

pub fn parse_interp_problem(json: &[u8]) -> Result<InterpProblem> {
    interp_from_value(parse_value(json)?)
}

fn parse_value(json: &[u8]) -> Result<serde_json::Value> {
    serde_json::from_slice(json).map_err(|e| Error::Schema {
        field: ".".into(),
        message: e.to_string(),
    })
}

/// Deserialize with the failing JSON path recorded in the error.
pub fn from_value<T: DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema {
            field: path,
            message: e.into_inner().to_string(),
        }
    })
}

fn field_error(field: &str, err: Error) -> Error {
    match err {
        Error::Schema { .. } | Error::InvalidField { .. } => err,
        Error::InvalidInput(message) => Error::InvalidField {
            field: field.into(),
            message,
        },
        other => other,
    }
}

fn curve_from_value(value: serde_json::Value) -> Result<CurveProblem> {
    let doc: CurveDocument = from_value(value)?;
    curve_from_document(&doc)
}

pub fn curve_from_document(doc: &CurveDocument) -> Result<CurveProblem> {
    let basis = doc.basis.build()?;
    let polygon = ControlPolygon::new(doc.polygon.clone()).map_err(|e| field_error("polygon", e))?;
    let curve = ParametricCurve::new(basis, polygon).map_err(|e| field_error("polygon", e))?;
    let samples = doc.samples.unwrap_or(DEFAULT_CURVE_SAMPLES);
    if samples < 2 {
        return Err(Error::param("samples", samples as f64, "must be at least 2"));
    }
    if let Some(sigmas) = &doc.sigmas {
        if sigmas.is_empty() {
            return Err(Error::InvalidField {
                field: "sigmas".into(),
                message: "must not be empty".into(),
            });
        }
        for &s in sigmas {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::Domain {
                    name: "sigmas",
                    value: s,
                    lo: 0.0,
                    hi: 1.0,
                });
            }
        }
    }
    Ok(CurveProblem {
        curve,
        samples,
        sigmas: doc.sigmas.clone(),
    })
}

fn interp_from_value(value: serde_json::Value) -> Result<InterpProblem> {
    let doc: InterpDocument = from_value(value)?;
    interp_from_document(&doc)
}

fn required(value: Option<f64>, field: &str) -> Result<f64> {
    value.ok_or_else(|| Error::Schema {
        field: field.into(),
        message: format!("missing field `{field}` required by the chosen strategy"),
    })
}

pub fn interp_from_document(doc: &InterpDocument) -> Result<InterpProblem> {
    let data = MonotoneDataset::try_from(doc.dataset.clone()).map_err(|e| field_error("dataset", e))?;
    let strategy = doc.solution_strategy.unwrap_or(match doc.mode {
        Mode::C1 => Strategy::Sol1,
        Mode::C2 => Strategy::AppendixC,
    });
    let method = match (doc.mode, strategy) {
        (Mode::C1, Strategy::Sol1) => InterpMethod::Sol1 {
            s: required(doc.s, "s")?,
        },
        (Mode::C2, Strategy::AppendixC) => InterpMethod::AppendixC {
            s: required(doc.s, "s")?,
        },
        (Mode::C2, Strategy::Remark) => InterpMethod::Remark {
            zeta: required(doc.zeta, "zeta")?,
            eta: required(doc.eta, "eta")?,
        },
        (mode, strategy) => {
            return Err(Error::InvalidField {
                field: "solution_strategy".into(),
                message: format!("strategy {strategy:?} does not apply to mode {mode:?}"),
            })
        }
    };
    let aux_kind = doc.aux.unwrap_or(match doc.mode {
        Mode::C1 => AuxKind::Cubic,
        Mode::C2 => AuxKind::Quintic,
    });
    let aux = AuxiliaryFunction::from_kind(aux_kind)?;
    if !(doc.sigma > 0.0 && doc.sigma <= 1.0) {
        return Err(Error::Domain {
            name: "sigma",
            value: doc.sigma,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let samples = doc.samples.unwrap_or(DEFAULT_SEGMENT_SAMPLES);
    if samples < 2 {
        return Err(Error::param("samples", samples as f64, "must be at least 2"));
    }
    Ok(InterpProblem {
        data,
        method,
        sigma: doc.sigma,
        aux,
        samples,
        reference: doc.reference,
    })
}

impl CurveProblem {
    pub fn to_document(&self) -> CurveDocument {
        CurveDocument {
            basis: self.curve.basis().clone().into(),
            polygon: self.curve.polygon().points().to_vec(),
            samples: Some(self.samples),
            sigmas: self.sigmas.clone(),
        }
    }
}

impl InterpProblem {
    pub fn to_document(&self) -> InterpDocument {
        let (strategy, s, zeta, eta) = match self.method {
            InterpMethod::Sol1 { s } => (Strategy::Sol1, Some(s), None, None),
            InterpMethod::AppendixC { s } => (Strategy::AppendixC, Some(s), None, None),
            InterpMethod::Remark { zeta, eta } => (Strategy::Remark, None, Some(zeta), Some(eta)),
        };
        InterpDocument {
            dataset: self.data.clone().into(),
            mode: self.method.mode(),
            solution_strategy: Some(strategy),
            s,
            zeta,
            eta,
            sigma: self.sigma,
            aux: Some(self.aux.kind()),
            samples: Some(self.samples),
            reference: self.reference,
        }
    }
}
