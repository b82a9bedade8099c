use serde::Serialize;

use crate::auxiliary::AuxiliaryFunction;
use crate::blending::BlendingSystem;
use crate::curve::{ControlPolygon, ParametricCurve, Polyline};
use crate::enhanced::EnhancedBasis;
use crate::error::{Error, Result};
use crate::report::uniform_grid;

/// Planar segments over `[x_i, x_{i+1}]`, each a curve over the same basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseCurve {
    knots: Vec<f64>,
    segments: Vec<ParametricCurve>,
    smoothness_order: usize,
}

/// Difference of one-sided `d^k y / dx^k` at an interior knot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnotJump {
    pub knot: usize,
    pub x: f64,
    pub left: f64,
    pub right: f64,
    pub jump: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorProfile {
    pub max_error: f64,
    pub rms_error: f64,
    pub errors: Vec<f64>,
}

/// Smallest `x′(t)` and `y′(t)` found on a per-segment grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeSummary {
    pub min_dx: f64,
    pub min_dy: f64,
}

const INVERSION_TOL: f64 = 1e-12;

pub(crate) fn assemble(
    system: BlendingSystem,
    aux: &AuxiliaryFunction,
    sigma: f64,
    controls: Vec<Vec<Vec<f64>>>,
    smoothness_order: usize,
) -> Result<PiecewiseCurve> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::param("sigma", sigma, "interpolation needs sigma in (0, 1]"));
    }
    let basis = EnhancedBasis::build(system, aux.clone(), sigma)?;
    let mut knots = vec![controls[0][0][0]];
    let mut segments = Vec::with_capacity(controls.len());
    for pts in controls {
        knots.push(pts[pts.len() - 1][0]);
        segments.push(ParametricCurve::new(basis.clone(), ControlPolygon::new(pts)?)?);
    }
    Ok(PiecewiseCurve {
        knots,
        segments,
        smoothness_order,
    })
}

impl PiecewiseCurve {
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn segments(&self) -> &[ParametricCurve] {
        &self.segments
    }

    pub fn smoothness_order(&self) -> usize {
        self.smoothness_order
    }

    pub fn sigma(&self) -> f64 {
        self.segments[0].basis().sigma()
    }

    /// `samples_per_segment` points per segment; the shared knot is emitted
    /// once. The parameter column is `i + t` for local parameter `t` of segment `i`.
    pub fn sample(&self, samples_per_segment: usize) -> Result<Polyline> {
        if samples_per_segment < 2 {
            return Err(Error::param(
                "samples",
                samples_per_segment as f64,
                "must be at least 2",
            ));
        }
        let mut params = Vec::new();
        let mut points = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            for (j, t) in uniform_grid(samples_per_segment).enumerate() {
                if i > 0 && j == 0 {
                    continue;
                }
                params.push(i as f64 + t);
                points.push(seg.point_at(t));
            }
        }
        Ok(Polyline { params, points })
    }

    /// `p(x)`: locate the segment, invert its increasing `x(t)` by safeguarded
    /// Newton iteration, and return `y(t*)`.
    pub fn evaluate_as_function(&self, x: f64) -> Result<f64> {
        Ok(self.solve(x)?.1)
    }

    /// `(x(t*) − x, p(x))` exposing the inversion residual.
    pub fn solve(&self, x: f64) -> Result<(f64, f64)> {
        let lo = self.knots[0];
        let hi = self.knots[self.knots.len() - 1];
        if !(x >= lo && x <= hi) {
            return Err(Error::Domain {
                name: "x",
                value: x,
                lo,
                hi,
            });
        }
        let k = self.knots[1..self.knots.len() - 1].partition_point(|&knot| knot <= x);
        let seg = &self.segments[k];
        let t = invert(seg, x, self.knots[k], self.knots[k + 1]);
        let p = seg.point_at(t);
        Ok((p[0] - x, p[1]))
    }

    /// Jumps of `d^order y / dx^order` at interior knots.
    pub fn continuity_report(&self, order: usize) -> Result<Vec<KnotJump>> {
        if !(1..=2).contains(&order) {
            return Err(Error::UnsupportedOrder(order));
        }
        if order > self.smoothness_order {
            return Err(Error::param(
                "order",
                order as f64,
                format!("exceeds the curve's smoothness order {}", self.smoothness_order),
            ));
        }
        let jumps = (1..self.segments.len())
            .map(|j| {
                let left = x_derivative(&self.segments[j - 1], 1.0, order);
                let right = x_derivative(&self.segments[j], 0.0, order);
                KnotJump {
                    knot: j,
                    x: self.knots[j],
                    left,
                    right,
                    jump: (left - right).abs(),
                }
            })
            .collect();
        Ok(jumps)
    }

    /// `|p(x) − y|` at each reference point.
    pub fn error_profile(&self, reference: &[(f64, f64)]) -> Result<ErrorProfile> {
        if reference.is_empty() {
            return Err(Error::InvalidInput("reference table is empty".into()));
        }
        let errors = reference
            .iter()
            .map(|&(x, y)| Ok((self.evaluate_as_function(x)? - y).abs()))
            .collect::<Result<Vec<f64>>>()?;
        let max_error = errors.iter().copied().fold(0.0, f64::max);
        let rms_error = (errors.iter().map(|e| e * e).sum::<f64>() / errors.len() as f64).sqrt();
        Ok(ErrorProfile {
            max_error,
            rms_error,
            errors,
        })
    }

    pub fn slope_summary(&self, grid_size: usize) -> SlopeSummary {
        let mut min_dx = f64::INFINITY;
        let mut min_dy = f64::INFINITY;
        for seg in &self.segments {
            for t in uniform_grid(grid_size) {
                let d = seg.derivative_at(t, 1);
                min_dx = min_dx.min(d[0]);
                min_dy = min_dy.min(d[1]);
            }
        }
        SlopeSummary { min_dx, min_dy }
    }
}

/// `(x, f(x))` on `count` uniformly spaced abscissae over `[lo, hi]`.
pub fn reference_table(lo: f64, hi: f64, count: usize, f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    uniform_grid(count)
        .map(|u| {
            let x = if u == 1.0 { hi } else { lo + u * (hi - lo) };
            (x, f(x))
        })
        .collect()
}

pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// `dy/dx = y′/x′`, `d²y/dx² = (y″x′ − y′x″)/x′³`.
fn x_derivative(seg: &ParametricCurve, t: f64, order: usize) -> f64 {
    let d1 = seg.derivative_at(t, 1);
    if order == 1 {
        return d1[1] / d1[0];
    }
    let d2 = seg.derivative_at(t, 2);
    (d2[1] * d1[0] - d1[1] * d2[0]) / d1[0].powi(3)
}

fn invert(seg: &ParametricCurve, x: f64, x_lo: f64, x_hi: f64) -> f64 {
    if x == x_lo {
        return 0.0;
    }
    if x == x_hi {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut t = (x - x_lo) / (x_hi - x_lo);
    for _ in 0..200 {
        let r = seg.point_at(t)[0] - x;
        if r.abs() <= INVERSION_TOL {
            return t;
        }
        if r < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let slope = seg.derivative_at(t, 1)[0];
        let newton = t - r / slope;
        t = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * 0.5 {
            break;
        }
    }
    t
}
