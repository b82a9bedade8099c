//! Initial blending systems: Bernstein, p-Bézier, λμ-Bernstein and the
//! Yan cubic family, with closed-form first and second derivatives.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, Error, Result};
use crate::report::{uniform_grid, MaxTracker, PropertyReport};

/// Parameterized family descriptor. This is also the JSON form of a system:
/// `{"family": "bernstein", "degree": 3}`, `{"family": "lambda_mu", "lambda": 2.0, "mu": 0.0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Bernstein { degree: usize },
    PBezier { gamma: f64 },
    LambdaMu { lambda: f64, mu: f64 },
    YanCubic { lambda: f64 },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Bernstein { .. } => "bernstein",
            Family::PBezier { .. } => "p_bezier",
            Family::LambdaMu { .. } => "lambda_mu",
            Family::YanCubic { .. } => "yan_cubic",
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Family::Bernstein { degree } => *degree,
            _ => 3,
        }
    }

    fn is_polynomial(&self) -> bool {
        matches!(self, Family::Bernstein { .. } | Family::YanCubic { .. })
    }
}

/// A validated blending family `{F_{n,i}}` with its endpoint metadata.
///
/// Tangency magnitudes are kept per endpoint because the λμ family has
/// `3 + λ` at `t = 0` but `3 + μ` at `t = 1`. The curvature constants are
/// `Some(ω)` only when the second derivatives at that endpoint follow the
/// `(ω, −2ω, ω, 0, …)` pattern required for C² interpolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "Family")]
pub struct BlendingSystem {
    family: Family,
    tangency: [f64; 2],
    curvature: [Option<f64>; 2],
    monotonicity_preserving: bool,
}

impl From<BlendingSystem> for Family {
    fn from(system: BlendingSystem) -> Self {
        system.family
    }
}

/// Dense grid used to certify monotonicity preservation of non-Bernstein families.
const MONOTONE_CERT_POINTS: usize = 10_001;
const MONOTONE_CERT_TOL: f64 = 1e-10;
const CURVATURE_PATTERN_TOL: f64 = 1e-9;

impl BlendingSystem {
    pub fn bernstein(degree: usize) -> Result<Self> {
        Self::from_family(Family::Bernstein { degree })
    }

    pub fn p_bezier(gamma: f64) -> Result<Self> {
        Self::from_family(Family::PBezier { gamma })
    }

    pub fn lambda_mu(lambda: f64, mu: f64) -> Result<Self> {
        Self::from_family(Family::LambdaMu { lambda, mu })
    }

    pub fn yan_cubic(lambda: f64) -> Result<Self> {
        Self::from_family(Family::YanCubic { lambda })
    }

    /// Validate a descriptor and derive the endpoint metadata.
    pub fn from_family(family: Family) -> Result<Self> {
        let tangency = match family {
            Family::Bernstein { degree } => {
                if degree < 1 {
                    return Err(Error::InvalidDegree(degree));
                }
                [degree as f64; 2]
            }
            Family::PBezier { gamma } => {
                if !(0.0..=1.0).contains(&gamma) {
                    return Err(Error::param("gamma", gamma, "must lie in [0, 1]"));
                }
                [3.0; 2]
            }
            Family::LambdaMu { lambda, mu } => {
                for (name, v) in [("lambda", lambda), ("mu", mu)] {
                    if !(v >= 0.0 && v.is_finite()) {
                        return Err(Error::param(name, v, "must be finite and nonnegative"));
                    }
                }
                [3.0 + lambda, 3.0 + mu]
            }
            Family::YanCubic { lambda } => {
                if !(-1.0..=1.0).contains(&lambda) {
                    return Err(Error::param("lambda", lambda, "must lie in [-1, 1]"));
                }
                [3.0 + 2.0 * lambda; 2]
            }
        };
        let mut system = BlendingSystem {
            family,
            tangency,
            curvature: [None, None],
            monotonicity_preserving: true,
        };
        system.curvature = system.detect_curvature();
        if !matches!(family, Family::Bernstein { .. }) {
            system.monotonicity_preserving = system.certify_monotonicity();
        }
        Ok(system)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn tag(&self) -> &'static str {
        self.family.tag()
    }

    pub fn degree(&self) -> usize {
        self.family.degree()
    }

    /// Number of basis functions, `degree + 1`.
    pub fn dimension(&self) -> usize {
        self.degree() + 1
    }

    pub fn tangency_start(&self) -> f64 {
        self.tangency[0]
    }

    pub fn tangency_end(&self) -> f64 {
        self.tangency[1]
    }

    pub fn curvature_start(&self) -> Option<f64> {
        self.curvature[0]
    }

    pub fn curvature_end(&self) -> Option<f64> {
        self.curvature[1]
    }

    /// The common ω when both endpoints carry the same second-derivative pattern.
    pub fn curvature_constant(&self) -> Option<f64> {
        match self.curvature {
            [Some(a), Some(b)] if (a - b).abs() <= CURVATURE_PATTERN_TOL * a.abs().max(1.0) => Some(a),
            _ => None,
        }
    }

    pub fn monotonicity_preserving(&self) -> bool {
        self.monotonicity_preserving
    }

    /// Interior parameters where the first derivative is not continuous.
    pub fn derivative_kinks(&self) -> Vec<f64> {
        match self.family {
            Family::PBezier { gamma: 0.0 } => vec![1.0 / 3.0, 2.0 / 3.0],
            _ => vec![],
        }
    }

    /// `(F_{n,0}(t), …, F_{n,n}(t))`.
    pub fn evaluate_all(&self, t: f64) -> Result<Vec<f64>> {
        check_unit("t", t)?;
        let mut out = vec![0.0; self.dimension()];
        self.eval_into(t, &mut out);
        Ok(out)
    }

    /// Analytic derivatives of order 1 or 2 of every basis function.
    pub fn derivative_all(&self, t: f64, order: usize) -> Result<Vec<f64>> {
        check_unit("t", t)?;
        if !(1..=2).contains(&order) {
            return Err(Error::UnsupportedOrder(order));
        }
        let mut out = vec![0.0; self.dimension()];
        self.deriv_into(t, order, &mut out);
        Ok(out)
    }

    pub(crate) fn eval_into(&self, t: f64, out: &mut [f64]) {
        match self.family {
            Family::Bernstein { degree } => bernstein_into(degree, t, out),
            Family::PBezier { gamma } => {
                let [r1, r2] = pbezier_radicals(gamma, t);
                let (r0, r3) = (t, 1.0 - t);
                out[0] = 0.5 + 1.5 * (r1.0 - r0);
                out[1] = 1.5 * (r2.0 - 2.0 * r1.0 + r0);
                out[2] = 1.5 * (r3 - 2.0 * r2.0 + r1.0);
                out[3] = 0.5 - 1.5 * (r3 - r2.0);
            }
            Family::LambdaMu { lambda, mu } => {
                let s = 1.0 - t;
                let a0 = s * s * s * (-lambda * t).exp();
                let a3 = t * t * t * (-mu * s).exp();
                // A1 = (1-t)^2 (1+2t) - A0 and A2 = t^2 (3-2t) - A3.
                out[0] = a0;
                out[1] = s * s * (1.0 + 2.0 * t) - a0;
                out[2] = t * t * (3.0 - 2.0 * t) - a3;
                out[3] = a3;
            }
            Family::YanCubic { lambda } => {
                for (i, slot) in out.iter_mut().enumerate() {
                    let (g, _, _) = yan_factor(i, lambda, t);
                    *slot = monomial(i, 3 - i, t).0 * g;
                }
            }
        }
    }

    pub(crate) fn deriv_into(&self, t: f64, order: usize, out: &mut [f64]) {
        let second = order == 2;
        match self.family {
            Family::Bernstein { degree } => bernstein_deriv_into(degree, t, order, out),
            Family::PBezier { gamma } => {
                let [r1, r2] = pbezier_radicals(gamma, t);
                let (d1, d2) = if second { (r1.2, r2.2) } else { (r1.1, r2.1) };
                // r0 = t and r3 = 1 - t are linear.
                let (d0, d3) = if second { (0.0, 0.0) } else { (1.0, -1.0) };
                out[0] = 1.5 * (d1 - d0);
                out[1] = 1.5 * (d2 - 2.0 * d1 + d0);
                out[2] = 1.5 * (d3 - 2.0 * d2 + d1);
                out[3] = -1.5 * (d3 - d2);
            }
            Family::LambdaMu { lambda, mu } => {
                let s = 1.0 - t;
                let e0 = (-lambda * t).exp();
                let e3 = (-mu * s).exp();
                // u = (1-t)^3 against e^{-λt}; v = t^3 against e^{-μ(1-t)}.
                let (u, du, ddu) = (s * s * s, -3.0 * s * s, 6.0 * s);
                let (v, dv, ddv) = (t * t * t, 3.0 * t * t, 6.0 * t);
                let (a0, a3, p, q) = if second {
                    (
                        e0 * (ddu - 2.0 * lambda * du + lambda * lambda * u),
                        e3 * (ddv + 2.0 * mu * dv + mu * mu * v),
                        -6.0 + 12.0 * t,
                        6.0 - 12.0 * t,
                    )
                } else {
                    (
                        e0 * (du - lambda * u),
                        e3 * (dv + mu * v),
                        -6.0 * t + 6.0 * t * t,
                        6.0 * t - 6.0 * t * t,
                    )
                };
                out[0] = a0;
                out[1] = p - a0;
                out[2] = q - a3;
                out[3] = a3;
            }
            Family::YanCubic { lambda } => {
                for (i, slot) in out.iter_mut().enumerate() {
                    let (g, dg, ddg) = yan_factor(i, lambda, t);
                    let (a, da, dda) = monomial(i, 3 - i, t);
                    *slot = if second {
                        dda * g + 2.0 * da * dg + a * ddg
                    } else {
                        da * g + a * dg
                    };
                }
            }
        }
    }

    fn detect_curvature(&self) -> [Option<f64>; 2] {
        let n = self.degree();
        if n < 2 {
            return [None, None];
        }
        let mut d = vec![0.0; n + 1];
        let mut detect = |t: f64, mirrored: bool| {
            self.deriv_into(t, 2, &mut d);
            let at = |k: usize| if mirrored { d[n - k] } else { d[k] };
            let omega = at(0);
            let tol = CURVATURE_PATTERN_TOL * omega.abs().max(1.0);
            let pattern = (at(1) + 2.0 * omega).abs() <= tol
                && (at(2) - omega).abs() <= tol
                && (3..=n).all(|k| at(k).abs() <= tol);
            pattern.then_some(omega)
        };
        [detect(0.0, false), detect(1.0, true)]
    }

    /// With partition of unity, `Σ β_i F_i = β_0 + Σ_{i≥1} (β_i − β_{i−1}) G_i`
    /// where `G_i` is the tail sum `Σ_{j≥i} F_j`; the system preserves
    /// monotonicity iff every tail sum is nondecreasing.
    fn certify_monotonicity(&self) -> bool {
        let n = self.degree();
        let mut d = vec![0.0; n + 1];
        uniform_grid(MONOTONE_CERT_POINTS).all(|t| {
            self.deriv_into(t, 1, &mut d);
            let mut tail = 0.0;
            for i in (1..=n).rev() {
                tail += d[i];
                if tail < -MONOTONE_CERT_TOL {
                    return false;
                }
            }
            true
        })
    }

    /// Check non-negativity, partition of unity, symmetry, endpoint
    /// interpolation and endpoint tangency on a uniform grid.
    pub fn verify_blending_properties(&self, grid_size: usize) -> Result<PropertyReport> {
        if grid_size < 3 {
            return Err(Error::param("grid_size", grid_size as f64, "must be at least 3"));
        }
        let n = self.degree();
        let mut values = vec![0.0; n + 1];
        let mut mirror = vec![0.0; n + 1];
        let (mut negativity, mut unity, mut symmetry) = Default::default();
        for t in uniform_grid(grid_size) {
            self.eval_into(t, &mut values);
            self.eval_into(1.0 - t, &mut mirror);
            let (min, sum) = min_and_sum(&values);
            MaxTracker::observe(&mut negativity, (-min).max(0.0), t);
            MaxTracker::observe(&mut unity, (sum - 1.0).abs(), t);
            let asym = (0..=n).map(|i| (values[i] - mirror[n - i]).abs()).fold(0.0, f64::max);
            MaxTracker::observe(&mut symmetry, asym, t);
        }

        let mut report = PropertyReport::default();
        report.push("non_negativity", negativity, 1e-12);
        let unity_tol = if self.family.is_polynomial() { 1e-12 } else { 1e-10 };
        report.push("partition_of_unity", unity, unity_tol);
        match self.family {
            Family::LambdaMu { lambda, mu } if lambda != mu => report.push_note(
                "symmetry",
                symmetry,
                1e-10,
                "lambda != mu: symmetry is reported, not required",
            ),
            _ => report.push("symmetry", symmetry, 1e-10),
        }
        report.push("endpoint_interpolation", self.endpoint_residual(), 1e-12);
        report.push("endpoint_tangency", self.tangency_residual(), 1e-8);
        Ok(report)
    }

    fn endpoint_residual(&self) -> MaxTracker {
        let n = self.degree();
        let mut values = vec![0.0; n + 1];
        let mut tracker = MaxTracker::default();
        for (t, hot) in [(0.0, 0), (1.0, n)] {
            self.eval_into(t, &mut values);
            for (i, v) in values.iter().enumerate() {
                let expected = if i == hot { 1.0 } else { 0.0 };
                tracker.observe((v - expected).abs(), t);
            }
        }
        tracker
    }

    fn tangency_residual(&self) -> MaxTracker {
        let n = self.degree();
        let mut d = vec![0.0; n + 1];
        let mut tracker = MaxTracker::default();
        let mut expected = vec![0.0; n + 1];
        for (t, m) in [(0.0, self.tangency[0]), (1.0, self.tangency[1])] {
            self.deriv_into(t, 1, &mut d);
            expected.iter_mut().for_each(|e| *e = 0.0);
            if t == 0.0 {
                expected[0] = -m;
                expected[1] += m;
            } else {
                expected[n] = m;
                expected[n - 1] -= m;
            }
            for (a, b) in d.iter().zip(&expected) {
                tracker.observe((a - b).abs(), t);
            }
        }
        tracker
    }
}

pub(crate) fn min_and_sum(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, 0.0), |(m, s), &v| (m.min(v), s + v))
}

/// Bernstein values `B_{n,0..=n}(t)` by the triangular recurrence.
pub fn bernstein_values(n: usize, t: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    bernstein_into(n, t, &mut out);
    out
}

pub(crate) fn bernstein_into(n: usize, t: f64, out: &mut [f64]) {
    let s = 1.0 - t;
    out[..=n].iter_mut().for_each(|v| *v = 0.0);
    out[0] = 1.0;
    for k in 1..=n {
        for j in (1..=k).rev() {
            out[j] = s * out[j] + t * out[j - 1];
        }
        out[0] *= s;
    }
}

fn bernstein_deriv_into(n: usize, t: f64, order: usize, out: &mut [f64]) {
    out[..=n].iter_mut().for_each(|v| *v = 0.0);
    if order > n {
        return;
    }
    let lower = bernstein_values(n - order, t);
    let scale: f64 = (0..order).map(|k| (n - k) as f64).product();
    // Finite-difference stencil of the lowered basis: (1, -1) or (1, -2, 1).
    let stencil: &[f64] = if order == 1 { &[1.0, -1.0] } else { &[1.0, -2.0, 1.0] };
    for (i, slot) in out.iter_mut().enumerate().take(n + 1) {
        let mut acc = 0.0;
        for (k, w) in stencil.iter().enumerate() {
            // B_{n,i}^{(r)} = n…(n−r+1) Σ_k w_k B_{n−r, i−r+k}
            if let Some(j) = (i + k).checked_sub(order) {
                if j <= n - order {
                    acc += w * lower[j];
                }
            }
        }
        *slot = scale * acc;
    }
}

/// `(r, r', r'')` for the two nonlinear p-Bézier radicals.
///
/// The r₂ radicand uses `t − 2/3`, the shift that makes `r₂(0) = 2/3` for every
/// γ and hence `M₁(0) = 0`; with it `r₂(t) = r₁(1 − t)` and γ = 1 recovers the
/// cubic Bernstein basis.
fn pbezier_radicals(gamma: f64, t: f64) -> [(f64, f64, f64); 2] {
    let s = 1.0 - t;
    let w = 1.0 - gamma;
    let u1 = t - 1.0 / 3.0 + 2.0 / 3.0 * s * s * s;
    let du1 = 1.0 - 2.0 * s * s;
    let ddu1 = 4.0 * s;
    let u2 = t - 2.0 / 3.0 + 2.0 / 3.0 * (2.0 * s * s * s + 3.0 * t * s * s);
    let du2 = 2.0 * t * t - 1.0;
    let ddu2 = 4.0 * t;
    let radical = |c: f64, u: f64, du: f64, ddu: f64| {
        let a = c - t;
        let q = w * a * a + gamma * u * u;
        let dq = -2.0 * w * a + 2.0 * gamma * u * du;
        let ddq = 2.0 * w + 2.0 * gamma * (du * du + u * ddu);
        let r = q.max(0.0).sqrt();
        if r > 0.0 {
            let dr = dq / (2.0 * r);
            (r, dr, (ddq - 2.0 * dr * dr) / (2.0 * r))
        } else {
            // Only reachable for γ = 0 at the kink t = 1/3 or 2/3.
            (0.0, 0.0, 0.0)
        }
    };
    [radical(1.0 / 3.0, u1, du1, ddu1), radical(2.0 / 3.0, u2, du2, ddu2)]
}

/// `(a, a', a'')` for `a(t) = t^i (1 − t)^j`.
fn monomial(i: usize, j: usize, t: f64) -> (f64, f64, f64) {
    let s = 1.0 - t;
    let p = |x: f64, k: i32| if k < 0 { 0.0 } else { x.powi(k) };
    let (i, j) = (i as i32, j as i32);
    let (fi, fj) = (i as f64, j as f64);
    let a = p(t, i) * p(s, j);
    let da = fi * p(t, i - 1) * p(s, j) - fj * p(t, i) * p(s, j - 1);
    let dda = fi * (fi - 1.0) * p(t, i - 2) * p(s, j) - 2.0 * fi * fj * p(t, i - 1) * p(s, j - 1)
        + fj * (fj - 1.0) * p(t, i) * p(s, j - 2);
    (a, da, dda)
}

/// Quadratic shape factor multiplying `t^i (1 − t)^{3−i}` in the Yan cubic basis.
fn yan_factor(i: usize, lambda: f64, t: f64) -> (f64, f64, f64) {
    let l = lambda;
    let (c0, c1, c2) = match i {
        0 => (1.0, -2.0 * l, l),
        1 => (3.0 + 2.0 * l, -4.0 * l, 3.0 * l),
        2 => (3.0 + l, -2.0 * l, 3.0 * l),
        _ => (1.0 - l, 0.0, l),
    };
    (c0 + c1 * t + c2 * t * t, c1 + 2.0 * c2 * t, 2.0 * c2)
}
