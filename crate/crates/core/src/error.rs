use thiserror::Error;

use crate::interp::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid degree {0}: must be at least 1")]
    InvalidDegree(usize),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: String,
    },

    #[error("parameter `{name}` = {value} lies outside [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("unsupported derivative order {0}; expected 1 or 2")]
    UnsupportedOrder(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A free parameter of a feasible-solution constructor is out of range,
    /// or the produced solution failed the exact constraint check.
    #[error("infeasible parameter `{name}` = {value}: must satisfy 0 < {name} < {bound}{}", fmt_violations(.violations))]
    Infeasible {
        name: &'static str,
        value: f64,
        bound: f64,
        violations: Vec<Violation>,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("schema error at `{field}`: {message}")]
    Schema { field: String, message: String },

    /// A well-formed document field whose value fails validation.
    #[error("invalid `{field}`: {message}")]
    InvalidField { field: String, message: String },
}

fn fmt_violations(violations: &[Violation]) -> String {
    if violations.is_empty() {
        return String::new();
    }
    let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    format!(" ({})", list.join("; "))
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason: reason.into(),
        }
    }

    /// Name of the offending field or parameter, when the error carries one.
    pub fn field(&self) -> Option<String> {
        match self {
            Error::InvalidDegree(_) => Some("degree".into()),
            Error::InvalidParameter { name, .. } | Error::Domain { name, .. } | Error::Infeasible { name, .. } => {
                Some((*name).to_string())
            }
            Error::Schema { field, .. } | Error::InvalidField { field, .. } => Some(field.clone()),
            _ => None,
        }
    }
}

/// Reject `t` outside the unit interval (NaN included).
pub(crate) fn check_unit(name: &'static str, t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: t,
            lo: 0.0,
            hi: 1.0,
        })
    }
}
