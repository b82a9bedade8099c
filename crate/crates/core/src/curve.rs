//! Curves `C^σ(t) = Σ T_{n,i}(t) P_i` over an enhanced basis.

use serde::{Deserialize, Serialize};

use crate::auxiliary::AuxiliaryFunction;
use crate::blending::BlendingSystem;
use crate::enhanced::EnhancedBasis;
use crate::error::{check_unit, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::report::uniform_grid;

/// Control points `P_0 … P_n` in ℝ^δ, δ ≥ 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct ControlPolygon {
    points: Vec<Vec<f64>>,
}

impl TryFrom<Vec<Vec<f64>>> for ControlPolygon {
    type Error = Error;

    fn try_from(points: Vec<Vec<f64>>) -> Result<Self> {
        ControlPolygon::new(points)
    }
}

impl From<ControlPolygon> for Vec<Vec<f64>> {
    fn from(p: ControlPolygon) -> Self {
        p.points
    }
}

impl ControlPolygon {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a control polygon needs at least 2 points, got {}",
                points.len()
            )));
        }
        let dim = points[0].len();
        if dim < 2 {
            return Err(Error::InvalidInput(format!(
                "points need at least 2 coordinates, got {dim}"
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!("point {i} has a non-finite coordinate")));
            }
        }
        Ok(ControlPolygon { points })
    }

    pub fn from_xy(points: &[[f64; 2]]) -> Result<Self> {
        Self::new(points.iter().map(|p| p.to_vec()).collect())
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn first(&self) -> &[f64] {
        &self.points[0]
    }

    pub fn last(&self) -> &[f64] {
        &self.points[self.points.len() - 1]
    }

    /// Side vectors `P_{i+1} − P_i`.
    pub fn sides(&self) -> Vec<Vec<f64>> {
        self.points
            .windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(b, a)| b - a).collect())
            .collect()
    }

    /// Σ ‖P_{i+1} − P_i‖.
    pub fn length(&self) -> f64 {
        self.sides().iter().map(|s| norm(s)).sum()
    }

    /// Image under `x ↦ A x + b`.
    pub fn map_affine(&self, a: &[Vec<f64>], b: &[f64]) -> Result<Self> {
        Self::new(self.points.iter().map(|p| affine(a, b, p)).collect())
    }
}

pub fn polygon_length(polygon: &ControlPolygon) -> f64 {
    polygon.length()
}

/// Parameters and points of a sampled curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub params: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

impl Polyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametricCurve {
    basis: EnhancedBasis,
    polygon: ControlPolygon,
}

/// Default Gauss–Legendre order per subinterval for arc length.
pub const LENGTH_QUADRATURE_ORDER: usize = 8;
const LENGTH_SUBINTERVALS: usize = 16;

impl ParametricCurve {
    pub fn new(basis: EnhancedBasis, polygon: ControlPolygon) -> Result<Self> {
        if polygon.len() != basis.dimension() {
            return Err(Error::InvalidInput(format!(
                "basis of degree {} needs {} control points, got {}",
                basis.degree(),
                basis.dimension(),
                polygon.len()
            )));
        }
        Ok(ParametricCurve { basis, polygon })
    }

    pub fn basis(&self) -> &EnhancedBasis {
        &self.basis
    }

    pub fn polygon(&self) -> &ControlPolygon {
        &self.polygon
    }

    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        check_unit("t", t)?;
        Ok(self.point_at(t))
    }

    /// First derivative `Σ T′_{n,i}(t) P_i`.
    pub fn hodograph(&self, t: f64) -> Result<Vec<f64>> {
        check_unit("t", t)?;
        Ok(self.derivative_at(t, 1))
    }

    pub fn second_derivative(&self, t: f64) -> Result<Vec<f64>> {
        check_unit("t", t)?;
        Ok(self.derivative_at(t, 2))
    }

    pub(crate) fn point_at(&self, t: f64) -> Vec<f64> {
        let mut w = vec![0.0; self.basis.dimension()];
        self.basis.eval_into(t, &mut w);
        self.combine(&w)
    }

    pub(crate) fn derivative_at(&self, t: f64, order: usize) -> Vec<f64> {
        let mut w = vec![0.0; self.basis.dimension()];
        self.basis.deriv_into(t, order, &mut w);
        self.combine(&w)
    }

    fn combine(&self, weights: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.polygon.dim()];
        for (w, p) in weights.iter().zip(self.polygon.points()) {
            for (o, c) in out.iter_mut().zip(p) {
                *o += w * c;
            }
        }
        out
    }

    /// `m` samples on the uniform grid `j / (m − 1)`, endpoints included.
    pub fn sample(&self, m: usize) -> Result<Polyline> {
        if m < 2 {
            return Err(Error::param("samples", m as f64, "must be at least 2"));
        }
        let params: Vec<f64> = uniform_grid(m).collect();
        let points = params.iter().map(|&t| self.point_at(t)).collect();
        Ok(Polyline { params, points })
    }

    /// ∫‖C′(t)‖ dt by composite Gauss–Legendre (16 subintervals, also split
    /// at any derivative kink of the system).
    pub fn length(&self, quadrature_points: usize) -> Result<f64> {
        if quadrature_points < 8 {
            return Err(Error::param(
                "quadrature_points",
                quadrature_points as f64,
                "must be at least 8",
            ));
        }
        let rule = GaussLegendre::new(quadrature_points);
        let mut cuts: Vec<f64> = uniform_grid(LENGTH_SUBINTERVALS + 1).collect();
        cuts.extend(self.basis.system().derivative_kinks());
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        Ok(cuts
            .windows(2)
            .map(|w| rule.integrate(w[0], w[1], |t| norm(&self.derivative_at(t, 1))))
            .sum())
    }

    /// Whether `C′(t)` lies in the cone spanned by the polygon sides, at `grid_size` points.
    pub fn hodograph_cone_check(&self, grid_size: usize) -> ConeCheck {
        if self.polygon.dim() != 2 {
            return ConeCheck::NotChecked("cone test is only defined in the plane".into());
        }
        let sides: Vec<[f64; 2]> = self
            .polygon
            .sides()
            .into_iter()
            .filter(|s| norm(s) > 0.0)
            .map(|s| [s[0] / norm(&s), s[1] / norm(&s)])
            .collect();
        let Some((a, b)) = extreme_rays(&sides) else {
            return ConeCheck::NotChecked("polygon sides do not span a proper cone".into());
        };
        let mut min_slack = f64::INFINITY;
        let mut witness = 0.0;
        for t in uniform_grid(grid_size) {
            let d = self.derivative_at(t, 1);
            let len = norm(&d);
            if len == 0.0 {
                continue;
            }
            let v = [d[0] / len, d[1] / len];
            let slack = cone_slack(a, b, v);
            if slack < min_slack {
                min_slack = slack;
                witness = t;
            }
        }
        ConeCheck::Checked { min_slack, witness }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeCheck {
    /// Smallest coefficient (of unit tangent on unit extreme rays) over the grid.
    Checked {
        min_slack: f64,
        witness: f64,
    },
    NotChecked(String),
}

/// Extreme rays of the cone spanned by unit vectors, if it is pointed (< π).
fn extreme_rays(units: &[[f64; 2]]) -> Option<([f64; 2], [f64; 2])> {
    let (sx, sy) = units.iter().fold((0.0, 0.0), |acc, u| (acc.0 + u[0], acc.1 + u[1]));
    let mean_len = sx.hypot(sy);
    if units.is_empty() || mean_len <= 1e-12 {
        return None;
    }
    let mean = [sx / mean_len, sy / mean_len];
    let angle = |u: &[f64; 2]| (mean[0] * u[1] - mean[1] * u[0]).atan2(mean[0] * u[0] + mean[1] * u[1]);
    let mut lo = (f64::INFINITY, units[0]);
    let mut hi = (f64::NEG_INFINITY, units[0]);
    for u in units {
        let a = angle(u);
        if a < lo.0 {
            lo = (a, *u);
        }
        if a > hi.0 {
            hi = (a, *u);
        }
    }
    if hi.0 - lo.0 >= std::f64::consts::PI - 1e-12 {
        return None;
    }
    Some((lo.1, hi.1))
}

/// Minimum coefficient of `v = α a + β b`; for a single ray, the
/// off-ray component enters as a negative slack.
fn cone_slack(a: [f64; 2], b: [f64; 2], v: [f64; 2]) -> f64 {
    let det = a[0] * b[1] - a[1] * b[0];
    if det.abs() <= 1e-12 {
        let along = a[0] * v[0] + a[1] * v[1];
        let across = (a[0] * v[1] - a[1] * v[0]).abs();
        return along.min(-across);
    }
    let alpha = (v[0] * b[1] - v[1] * b[0]) / det;
    let beta = (a[0] * v[1] - a[1] * v[0]) / det;
    alpha.min(beta)
}

/// ‖C^σ(t) − [(1 − σ) C⁰(t) + σ C¹(t)]‖, with the three curves evaluated independently.
pub fn convex_combination_residual(
    system: &BlendingSystem,
    aux: &AuxiliaryFunction,
    polygon: &ControlPolygon,
    sigma: f64,
    t: f64,
) -> Result<f64> {
    let at = |s: f64| -> Result<Vec<f64>> {
        let basis = EnhancedBasis::build(system.clone(), aux.clone(), s)?;
        ParametricCurve::new(basis, polygon.clone())?.evaluate(t)
    };
    let mid = at(sigma)?;
    let c0 = at(0.0)?;
    let c1 = at(1.0)?;
    let diff: Vec<f64> = (0..mid.len())
        .map(|k| mid[k] - ((1.0 - sigma) * c0[k] + sigma * c1[k]))
        .collect();
    Ok(norm(&diff))
}

/// Locus of `C^σ(t)` for σ uniform in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointPath {
    pub points: Vec<Vec<f64>>,
    /// Largest distance of a path point from the line through the σ = 0 and σ = 1 points.
    pub collinearity_residual: f64,
}

pub fn point_path(
    system: &BlendingSystem,
    aux: &AuxiliaryFunction,
    polygon: &ControlPolygon,
    t: f64,
    sigma_samples: usize,
) -> Result<PointPath> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if sigma_samples < 2 {
        return Err(Error::param(
            "sigma_samples",
            sigma_samples as f64,
            "must be at least 2",
        ));
    }
    let mut points = Vec::with_capacity(sigma_samples);
    for sigma in uniform_grid(sigma_samples) {
        let basis = EnhancedBasis::build(system.clone(), aux.clone(), sigma)?;
        points.push(ParametricCurve::new(basis, polygon.clone())?.point_at(t));
    }
    let start = points[0].clone();
    let end = points[points.len() - 1].clone();
    let dir: Vec<f64> = end.iter().zip(&start).map(|(e, s)| e - s).collect();
    let dir_len = norm(&dir);
    if dir_len == 0.0 {
        return Ok(PointPath {
            points: vec![start],
            collinearity_residual: 0.0,
        });
    }
    let unit: Vec<f64> = dir.iter().map(|d| d / dir_len).collect();
    let collinearity_residual = points
        .iter()
        .map(|p| {
            let rel: Vec<f64> = p.iter().zip(&start).map(|(a, b)| a - b).collect();
            let along = dot(&rel, &unit);
            let perp: Vec<f64> = rel.iter().zip(&unit).map(|(r, u)| r - along * u).collect();
            norm(&perp)
        })
        .fold(0.0, f64::max);
    Ok(PointPath {
        points,
        collinearity_residual,
    })
}

/// Minimum over the grid of `d/dt Σ β_i T_{n,i}(t)` for nondecreasing β.
pub fn monotone_combination_min_slope(basis: &EnhancedBasis, betas: &[f64], grid_size: usize) -> Result<f64> {
    if betas.len() != basis.dimension() {
        return Err(Error::InvalidInput(format!(
            "expected {} coefficients, got {}",
            basis.dimension(),
            betas.len()
        )));
    }
    if betas.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Precondition("coefficients must be nondecreasing".into()));
    }
    if !basis.system().monotonicity_preserving() {
        return Err(Error::Precondition("system is not monotonicity_preserving".into()));
    }
    if !basis.aux().increasing() {
        return Err(Error::Precondition("auxiliary function is not increasing".into()));
    }
    if grid_size < 2 {
        return Err(Error::param("grid_size", grid_size as f64, "must be at least 2"));
    }
    let mut d = vec![0.0; basis.dimension()];
    let mut min = f64::INFINITY;
    for t in uniform_grid(grid_size) {
        basis.deriv_into(t, 1, &mut d);
        min = min.min(dot(&d, betas));
    }
    Ok(min)
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn affine(a: &[Vec<f64>], b: &[f64], p: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(row, off)| dot(row, p) + off).collect()
}
