//! C² monotone interpolation with quintic segments.
//!
//! Segment `i` has controls `(x_i, f_i), (h, g), (t, z), (w, k), (d, c), (x_{i+1}, f_{i+1})`.
//! At each interior knot:
//!
//! ```text
//! d_i + h_{i+1} = 2 x_{i+1}          c_i + g_{i+1} = 2 f_{i+1}
//! 2 d_i − 2 h_{i+1} = w_i − t_{i+1}  2 c_i − 2 g_{i+1} = k_i − z_{i+1}
//! ```
//!
//! with `x_i < h < t < w < d < x_{i+1}` and `f_i ≤ g ≤ z ≤ k ≤ c ≤ f_{i+1}`.

use serde::{Deserialize, Serialize};

use super::check::{Checker, Violation};
use super::dataset::{min_of, MonotoneDataset};
use super::piecewise::{assemble, PiecewiseCurve};
use crate::auxiliary::AuxiliaryFunction;
use crate::blending::BlendingSystem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case", deny_unknown_fields)]
pub enum C2Parameters {
    /// One shift `s` for abscissae; ordinates repeat the knot values.
    AppendixC { s: f64 },
    /// Separate shifts for abscissae (ζ) and ordinates (η).
    Remark { zeta: f64, eta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C2Solution {
    pub parameters: C2Parameters,
    pub h: Vec<f64>,
    pub t: Vec<f64>,
    pub w: Vec<f64>,
    pub d: Vec<f64>,
    pub g: Vec<f64>,
    pub z: Vec<f64>,
    pub k: Vec<f64>,
    pub c: Vec<f64>,
}

/// `min{(x_1 − x_0)/3, (x_2 − x_1)/2, …, (x_{n−1} − x_{n−2})/2, (x_n − x_{n−1})/3}`.
pub fn c2_s_bound(data: &MonotoneDataset) -> f64 {
    let gaps = data.x_gaps();
    let last = gaps.len() - 1;
    gaps.iter()
        .enumerate()
        .map(|(i, g)| if i == 0 || i == last { g / 3.0 } else { g / 2.0 })
        .fold(f64::INFINITY, f64::min)
}

/// Upper bound for ζ: a quarter of the smallest abscissa gap.
pub fn remark_zeta_bound(data: &MonotoneDataset) -> f64 {
    min_of(&data.x_gaps()) / 4.0
}

/// Upper bound for η: a quarter of the smallest gap in either coordinate.
pub fn remark_eta_bound(data: &MonotoneDataset) -> f64 {
    min_of(&data.x_gaps()).min(min_of(&data.f_gaps())) / 4.0
}

/// `w_i = x_{i+1} − s`, `t_i = x_i + s`, then at each interior knot
/// `d_i = x_{i+1} + ¼w_i − ¼t_{i+1}`, `h_{i+1} = x_{i+1} − ¼w_i + ¼t_{i+1}`;
/// boundary rows `t_0 = x_1 − 2s`, `h_0 = x_1 − 3s`, `w_{n−1} = x_{n−1} + 2s`,
/// `d_{n−1} = x_{n−1} + 3s`. Ordinates: `g_i = z_i = f_i`, `k_i = c_i = f_{i+1}`.
pub fn c2_feasible_solution_appendix(data: &MonotoneDataset, s: f64) -> Result<C2Solution> {
    let bound = c2_s_bound(data);
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
    let mut w: Vec<f64> = (0..n).map(|i| x[i + 1] - s).collect();
    let mut t: Vec<f64> = (0..n).map(|i| x[i] + s).collect();
    t[0] = x[1] - 2.0 * s;
    w[n - 1] = x[n - 1] + 2.0 * s;
    let mut h = vec![0.0; n];
    let mut d = vec![0.0; n];
    for i in 0..n - 1 {
        d[i] = x[i + 1] + 0.25 * w[i] - 0.25 * t[i + 1];
        h[i + 1] = x[i + 1] - 0.25 * w[i] + 0.25 * t[i + 1];
    }
    h[0] = x[1] - 3.0 * s;
    d[n - 1] = x[n - 1] + 3.0 * s;
    let sol = C2Solution {
        parameters: C2Parameters::AppendixC { s },
        h,
        t,
        w,
        d,
        g: f[..n].to_vec(),
        z: f[..n].to_vec(),
        k: f[1..].to_vec(),
        c: f[1..].to_vec(),
    };
    let violations = c2_constraint_check(data, &sol);
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

/// Abscissae `h_i = x_i + ζ`, `t_i = x_i + 5ζ/2`, `w_i = x_{i+1} − 3ζ/2`,
/// `d_i = x_{i+1} − ζ` with `h_0 = x_1 − 5ζ/2`, `t_0 = x_1 − 2ζ`,
/// `w_{n−1} = x_{n−1} + 3ζ`, `d_{n−1} = x_{n−1} + 7ζ/2`. Ordinates
/// `g_i = f_i + η`, `z_i = f_i + 3η/2`, `k_i = f_{i+1} − 5η/2`, `c_i = f_{i+1} − η`
/// with `g_0 = f_1 − 7η/2`, `z_0 = f_1 − 3η`, `k_{n−1} = f_{n−1} + 2η`,
/// `c_{n−1} = f_{n−1} + 5η/2`. Strictly monotone data only; the result is
/// re-validated with [`c2_constraint_check`].
pub fn c2_feasible_solution_remark(data: &MonotoneDataset, zeta: f64, eta: f64) -> Result<C2Solution> {
    if !data.strict() {
        return Err(Error::Precondition(
            "the zeta/eta solution requires strictly increasing f".into(),
        ));
    }
    let zeta_bound = remark_zeta_bound(data);
    if !(zeta > 0.0 && zeta < zeta_bound) {
        return Err(Error::Infeasible {
            name: "zeta",
            value: zeta,
            bound: zeta_bound,
            violations: vec![],
        });
    }
    let eta_bound = remark_eta_bound(data);
    if !(eta > 0.0 && eta < eta_bound) {
        return Err(Error::Infeasible {
            name: "eta",
            value: eta,
            bound: eta_bound,
            violations: vec![],
        });
    }
    let (x, f) = (data.x(), data.f());
    let n = data.segments();
    let mut h: Vec<f64> = (0..n).map(|i| x[i] + zeta).collect();
    let mut t: Vec<f64> = (0..n).map(|i| x[i] + 2.5 * zeta).collect();
    let mut w: Vec<f64> = (0..n).map(|i| x[i + 1] - 1.5 * zeta).collect();
    let mut d: Vec<f64> = (0..n).map(|i| x[i + 1] - zeta).collect();
    let mut g: Vec<f64> = (0..n).map(|i| f[i] + eta).collect();
    let mut z: Vec<f64> = (0..n).map(|i| f[i] + 1.5 * eta).collect();
    let mut k: Vec<f64> = (0..n).map(|i| f[i + 1] - 2.5 * eta).collect();
    let mut c: Vec<f64> = (0..n).map(|i| f[i + 1] - eta).collect();
    h[0] = x[1] - 2.5 * zeta;
    t[0] = x[1] - 2.0 * zeta;
    w[n - 1] = x[n - 1] + 3.0 * zeta;
    d[n - 1] = x[n - 1] + 3.5 * zeta;
    g[0] = f[1] - 3.5 * eta;
    z[0] = f[1] - 3.0 * eta;
    k[n - 1] = f[n - 1] + 2.0 * eta;
    c[n - 1] = f[n - 1] + 2.5 * eta;
    let sol = C2Solution {
        parameters: C2Parameters::Remark { zeta, eta },
        h,
        t,
        w,
        d,
        g,
        z,
        k,
        c,
    };
    let violations = c2_constraint_check(data, &sol);
    if !violations.is_empty() {
        let abscissa = violations.iter().any(|v| !is_ordinate_constraint(&v.constraint));
        let (name, value, bound) = if abscissa {
            ("zeta", zeta, zeta_bound)
        } else {
            ("eta", eta, eta_bound)
        };
        return Err(Error::Infeasible {
            name,
            value,
            bound,
            violations,
        });
    }
    Ok(sol)
}

fn is_ordinate_constraint(label: &str) -> bool {
    ["f[", "g[", "z[", "k[", "c["].iter().any(|name| label.contains(name))
}

/// Every violated constraint; empty iff the solution is feasible.
pub fn c2_constraint_check(data: &MonotoneDataset, sol: &C2Solution) -> Vec<Violation> {
    let n = data.segments();
    let mut ch = Checker::default();
    let arrays = [
        ("h", &sol.h),
        ("t", &sol.t),
        ("w", &sol.w),
        ("d", &sol.d),
        ("g", &sol.g),
        ("z", &sol.z),
        ("k", &sol.k),
        ("c", &sol.c),
    ];
    let shapes_ok = arrays
        .iter()
        .fold(true, |ok, (name, v)| ch.shape(name, v.len(), n) && ok);
    if !shapes_ok {
        return ch.violations;
    }
    let (x, f) = (data.x(), data.f());
    for i in 0..n.saturating_sub(1) {
        ch.sum_equals(i, "d[i] + h[i+1] = 2x[i+1]", sol.d[i], sol.h[i + 1], 2.0 * x[i + 1]);
        ch.sum_equals(i, "c[i] + g[i+1] = 2f[i+1]", sol.c[i], sol.g[i + 1], 2.0 * f[i + 1]);
        ch.sum_equals(
            i,
            "2d[i] - 2h[i+1] = w[i] - t[i+1]",
            2.0 * sol.d[i],
            -2.0 * sol.h[i + 1],
            sol.w[i] - sol.t[i + 1],
        );
        ch.sum_equals(
            i,
            "2c[i] - 2g[i+1] = k[i] - z[i+1]",
            2.0 * sol.c[i],
            -2.0 * sol.g[i + 1],
            sol.k[i] - sol.z[i + 1],
        );
    }
    for i in 0..n {
        ch.increasing(
            i,
            &["x[i]", "h[i]", "t[i]", "w[i]", "d[i]", "x[i+1]"],
            &[x[i], sol.h[i], sol.t[i], sol.w[i], sol.d[i], x[i + 1]],
            true,
        );
        ch.increasing(
            i,
            &["f[i]", "g[i]", "z[i]", "k[i]", "c[i]", "f[i+1]"],
            &[f[i], sol.g[i], sol.z[i], sol.k[i], sol.c[i], f[i + 1]],
            false,
        );
    }
    ch.violations
}

/// Quintic Bernstein segments. The auxiliary function must be increasing and
/// have `φ″(0) = φ″(1) = 0` so that second derivatives match at the knots.
pub fn c2_interpolant(
    data: &MonotoneDataset,
    sol: &C2Solution,
    aux: &AuxiliaryFunction,
    sigma: f64,
) -> Result<PiecewiseCurve> {
    if !aux.increasing() {
        return Err(Error::Precondition(format!(
            "auxiliary function `{}` is not increasing, so monotonicity is not preserved",
            aux.id()
        )));
    }
    if !aux.c2_compatible() {
        return Err(Error::Precondition(format!(
            "C2 interpolation needs an auxiliary function with zero second derivative at both ends; `{}` is not c2-compatible",
            aux.id()
        )));
    }
    let violations = c2_constraint_check(data, sol);
    if !violations.is_empty() {
        let (name, value, bound) = match sol.parameters {
            C2Parameters::AppendixC { s } => ("s", s, c2_s_bound(data)),
            C2Parameters::Remark { zeta, .. } => ("zeta", zeta, remark_zeta_bound(data)),
        };
        return Err(Error::Infeasible {
            name,
            value,
            bound,
            violations,
        });
    }
    let system = BlendingSystem::bernstein(5)?;
    if system.curvature_constant().is_none() {
        return Err(Error::Precondition("system has no endpoint curvature constant".into()));
    }
    let (x, f) = (data.x(), data.f());
    let controls = (0..data.segments())
        .map(|i| {
            vec![
                vec![x[i], f[i]],
                vec![sol.h[i], sol.g[i]],
                vec![sol.t[i], sol.z[i]],
                vec![sol.w[i], sol.k[i]],
                vec![sol.d[i], sol.c[i]],
                vec![x[i + 1], f[i + 1]],
            ]
        })
        .collect();
    assemble(system, aux, sigma, controls, 2)
}
