use serde::{Deserialize, Serialize};

/// Outcome of one verified property.
///
/// `residual` is the worst measured deviation (always nonnegative) and
/// `witness` the grid parameter where it occurred.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub witness: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub(crate) fn push(&mut self, name: &str, tracker: MaxTracker, tolerance: f64) {
        self.checks.push(PropertyCheck {
            name: name.to_string(),
            passed: tracker.residual <= tolerance,
            residual: tracker.residual,
            witness: tracker.witness,
            tolerance,
            note: None,
        });
    }

    pub(crate) fn push_note(&mut self, name: &str, tracker: MaxTracker, tolerance: f64, note: impl Into<String>) {
        self.push(name, tracker, tolerance);
        if let Some(last) = self.checks.last_mut() {
            last.note = Some(note.into());
        }
    }
}

/// Running maximum of a residual together with the parameter that produced it.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct MaxTracker {
    pub residual: f64,
    pub witness: f64,
}

impl MaxTracker {
    pub fn observe(&mut self, residual: f64, t: f64) {
        // NaN must register as a failure, never be skipped.
        if residual > self.residual || (residual.is_nan() && !self.residual.is_nan()) {
            self.residual = if residual.is_nan() { f64::INFINITY } else { residual };
            self.witness = t;
        }
    }
}

/// `count` uniformly spaced parameters on [0, 1] including both endpoints.
pub fn uniform_grid(count: usize) -> impl Iterator<Item = f64> + Clone {
    let last = count.saturating_sub(1).max(1) as f64;
    (0..count).map(move |j| if j + 1 == count { 1.0 } else { j as f64 / last })
}

/// `count` cell midpoints of a uniform partition of (0, 1); endpoints excluded.
pub fn interior_grid(count: usize) -> impl Iterator<Item = f64> + Clone {
    let denom = count as f64;
    (0..count).map(move |j| (j as f64 + 0.5) / denom)
}
