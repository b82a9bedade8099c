use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Array lengths do not match the dataset.
    Shape,
    /// A junction equality fails beyond tolerance.
    Equality,
    /// An ordering inequality fails.
    Ordering,
}

/// One failed constraint. `index` is the segment for orderings and the left
/// segment of the junction for equalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub index: usize,
    pub constraint: String,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::Shape => "shape",
            ViolationKind::Equality => "equality",
            ViolationKind::Ordering => "ordering",
        };
        write!(
            f,
            "{kind} {} at index {} (residual {:e})",
            self.constraint, self.index, self.residual
        )
    }
}

const EQUALITY_TOL: f64 = 1e-12;

/// Collects violations while checking one constraint system.
#[derive(Default)]
pub(crate) struct Checker {
    pub violations: Vec<Violation>,
}

impl Checker {
    pub fn shape(&mut self, name: &str, got: usize, expected: usize) -> bool {
        if got != expected {
            self.violations.push(Violation {
                kind: ViolationKind::Shape,
                index: 0,
                constraint: format!("len({name}) = {expected}"),
                residual: (got as f64 - expected as f64).abs(),
            });
            return false;
        }
        true
    }

    /// `a + b = c` within 1e−12 relative to the operand magnitudes.
    pub fn sum_equals(&mut self, index: usize, label: &str, a: f64, b: f64, c: f64) {
        let scale = 1f64.max(a.abs()).max(b.abs()).max(c.abs());
        let residual = (a + b - c).abs();
        if !(residual <= EQUALITY_TOL * scale) {
            self.push(ViolationKind::Equality, index, label, residual);
        }
    }

    /// `chain[0] < chain[1] < …` (or `≤` when `strict` is false).
    pub fn increasing(&mut self, index: usize, names: &[&str], chain: &[f64], strict: bool) {
        let op = if strict { " < " } else { " <= " };
        for k in 1..chain.len() {
            let (lo, hi) = (chain[k - 1], chain[k]);
            let ok = if strict { lo < hi } else { lo <= hi };
            if !ok {
                let label = format!("{}{op}{}", names[k - 1], names[k]);
                let residual = if (lo - hi).is_nan() { f64::INFINITY } else { lo - hi };
                self.push(ViolationKind::Ordering, index, &label, residual);
            }
        }
    }

    fn push(&mut self, kind: ViolationKind, index: usize, constraint: &str, residual: f64) {
        self.violations.push(Violation {
            kind,
            index,
            constraint: constraint.to_string(),
            residual,
        });
    }
}
