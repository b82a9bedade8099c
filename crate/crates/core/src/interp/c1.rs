//! C¹ monotone interpolation with cubic segments.
//!
//! Segment `i` has controls `(x_i, f_i), (h_i, g_i), (t_i, z_i), (x_{i+1}, f_{i+1})`.
//! Tangent continuity at knot `x_{i+1}` reduces to the reflections
//! `t_i + h_{i+1} = 2 x_{i+1}` and `z_i + g_{i+1} = 2 f_{i+1}`; monotonicity to
//! `x_i < h_i < t_i < x_{i+1}` and `f_i ≤ g_i ≤ z_i ≤ f_{i+1}`.

use serde::{Deserialize, Serialize};

use super::check::{Checker, Violation};
use super::dataset::{min_of, MonotoneDataset};
use super::piecewise::{assemble, PiecewiseCurve};
use crate::auxiliary::AuxiliaryFunction;
use crate::blending::BlendingSystem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C1Solution {
    pub s: f64,
    pub h: Vec<f64>,
    pub t: Vec<f64>,
    pub g: Vec<f64>,
    pub z: Vec<f64>,
}

/// `min_i (x_{i+1} − x_i) / 2`.
pub fn c1_s_bound(data: &MonotoneDataset) -> f64 {
    min_of(&data.x_gaps()) / 2.0
}

/// `g_i = f_i`, `z_i = f_{i+1}`, `h_i = x_i + s`, `t_i = x_{i+1} − s`, with
/// `h_0 = x_1 − 2s` and `t_{n−1} = x_{n−1} + 2s`. Requires `0 < s < c1_s_bound`;
/// the result is re-validated with [`c1_constraint_check`].
pub fn c1_feasible_solution(data: &MonotoneDataset, s: f64) -> Result<C1Solution> {
    let bound = c1_s_bound(data);
    if !(s > 0.0 && s < bound) {
        return Err(Error::Infeasible {
            name: "s",
            value: s,
            bound,
            violations: vec![],
        });
    }
    let (x, f) = (data.x(), data.f());
    let n = data.segments();
    let mut h: Vec<f64> = (0..n).map(|i| x[i] + s).collect();
    let mut t: Vec<f64> = (0..n).map(|i| x[i + 1] - s).collect();
    h[0] = x[1] - 2.0 * s;
    t[n - 1] = x[n - 1] + 2.0 * s;
    let sol = C1Solution {
        s,
        h,
        t,
        g: f[..n].to_vec(),
        z: f[1..].to_vec(),
    };
    let violations = c1_constraint_check(data, &sol);
    if !violations.is_empty() {
        return Err(Error::Infeasible {
            name: "s",
            value: s,
            bound,
            violations,
        });
    }
    Ok(sol)
}

/// Every violated constraint; empty iff the solution is feasible.
pub fn c1_constraint_check(data: &MonotoneDataset, sol: &C1Solution) -> Vec<Violation> {
    let n = data.segments();
    let mut c = Checker::default();
    let shapes_ok = [
        ("h", sol.h.len()),
        ("t", sol.t.len()),
        ("g", sol.g.len()),
        ("z", sol.z.len()),
    ]
    .iter()
    .fold(true, |ok, (name, len)| c.shape(name, *len, n) && ok);
    if !shapes_ok {
        return c.violations;
    }
    let (x, f) = (data.x(), data.f());
    for i in 0..n.saturating_sub(1) {
        c.sum_equals(i, "t[i] + h[i+1] = 2x[i+1]", sol.t[i], sol.h[i + 1], 2.0 * x[i + 1]);
        c.sum_equals(i, "z[i] + g[i+1] = 2f[i+1]", sol.z[i], sol.g[i + 1], 2.0 * f[i + 1]);
    }
    for i in 0..n {
        c.increasing(
            i,
            &["x[i]", "h[i]", "t[i]", "x[i+1]"],
            &[x[i], sol.h[i], sol.t[i], x[i + 1]],
            true,
        );
        c.increasing(
            i,
            &["f[i]", "g[i]", "z[i]", "f[i+1]"],
            &[f[i], sol.g[i], sol.z[i], f[i + 1]],
            false,
        );
    }
    c.violations
}

/// Cubic Bernstein segments over the enhanced basis with `aux` and `sigma`.
pub fn c1_interpolant(
    data: &MonotoneDataset,
    sol: &C1Solution,
    aux: &AuxiliaryFunction,
    sigma: f64,
) -> Result<PiecewiseCurve> {
    if !aux.increasing() {
        return Err(Error::Precondition(format!(
            "auxiliary function `{}` is not increasing, so monotonicity is not preserved",
            aux.id()
        )));
    }
    let violations = c1_constraint_check(data, sol);
    if !violations.is_empty() {
        return Err(Error::Infeasible {
            name: "s",
            value: sol.s,
            bound: c1_s_bound(data),
            violations,
        });
    }
    let (x, f) = (data.x(), data.f());
    let controls = (0..data.segments())
        .map(|i| {
            vec![
                vec![x[i], f[i]],
                vec![sol.h[i], sol.g[i]],
                vec![sol.t[i], sol.z[i]],
                vec![x[i + 1], f[i + 1]],
            ]
        })
        .collect();
    assemble(BlendingSystem::bernstein(3)?, aux, sigma, controls, 1)
}
