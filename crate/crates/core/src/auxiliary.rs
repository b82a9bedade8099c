//! Auxiliary functions φ: [0, 1] → [0, 1] that blend the chord into a basis.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::blending::bernstein_values;
use crate::error::{check_unit, Error, Result};
use crate::report::{uniform_grid, MaxTracker, PropertyReport};

/// JSON descriptor: `{"aux": "cubic"}`, `{"aux": "bernstein_tail", "n": 5}`, `{"aux": "trig", "k": 1}`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "aux", rename_all = "snake_case", deny_unknown_fields)]
pub enum AuxKind {
    Cubic,
    Quintic,
    BernsteinTail { n: usize },
    Trig { k: usize },
    ExpoRational,
    PseudoPsi,
}

impl AuxKind {
    pub fn id(&self) -> &'static str {
        match self {
            AuxKind::Cubic => "cubic",
            AuxKind::Quintic => "quintic",
            AuxKind::BernsteinTail { .. } => "bernstein_tail",
            AuxKind::Trig { .. } => "trig",
            AuxKind::ExpoRational => "expo_rational",
            AuxKind::PseudoPsi => "pseudo_psi",
        }
    }
}

/// A validated auxiliary function with capability flags.
///
/// * `increasing`: φ′ ≥ 0 on [0, 1]; required for monotonicity preservation.
/// * `c2_compatible`: φ″(0) = φ″(1) = 0; required for C² interpolation.
/// * `strict_partition`: φ(t) + φ(1 − t) = 1 holds; false for the pseudo-auxiliary ψ.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "AuxKind")]
pub struct AuxiliaryFunction {
    kind: AuxKind,
    increasing: bool,
    c2_compatible: bool,
    strict_partition: bool,
}

impl From<AuxiliaryFunction> for AuxKind {
    fn from(aux: AuxiliaryFunction) -> Self {
        aux.kind
    }
}

const INCREASING_SWEEP: usize = 10_001;
const INCREASING_TOL: f64 = 1e-10;
const C2_TOL: f64 = 1e-8;

impl AuxiliaryFunction {
    /// φ(t) = 3t² − 2t³.
    pub fn cubic_smoothstep() -> Self {
        Self::build(AuxKind::Cubic)
    }

    /// φ(t) = 6t⁵ − 15t⁴ + 10t³.
    pub fn quintic_smoothstep() -> Self {
        Self::build(AuxKind::Quintic)
    }

    /// φ = Σ_{j=k+1}^{n} B_{n,j} with k = ⌊n/2⌋, for odd n ≥ 3.
    pub fn bernstein_tail(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::param("n", n as f64, "must be an odd integer >= 3"));
        }
        Ok(Self::build(AuxKind::BernsteinTail { n }))
    }

    /// φ_k(t) = sin²(kπt/2) for odd k ≥ 1. Only k = 1 is increasing.
    pub fn trig(k: usize) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::param("k", k as f64, "must be an odd integer >= 1"));
        }
        Ok(Self::build(AuxKind::Trig { k }))
    }

    /// φ(t) = t² / (t² + (1 − t)² e^{1−2t}).
    pub fn expo_rational() -> Self {
        Self::build(AuxKind::ExpoRational)
    }

    /// ψ(t) = t² (2(e − 2)t + 4 − e)^{2(1−t)}: meets φ(0) = 0, φ(1) = 1 and
    /// φ′(0) = φ′(1) = 0, but ψ(t) + ψ(1 − t) only approximately equals 1.
    pub fn pseudo_psi() -> Self {
        Self::build(AuxKind::PseudoPsi)
    }

    pub fn from_kind(kind: AuxKind) -> Result<Self> {
        match kind {
            AuxKind::BernsteinTail { n } => Self::bernstein_tail(n),
            AuxKind::Trig { k } => Self::trig(k),
            _ => Ok(Self::build(kind)),
        }
    }

    fn build(kind: AuxKind) -> Self {
        let mut aux = AuxiliaryFunction {
            kind,
            increasing: false,
            c2_compatible: false,
            strict_partition: kind != AuxKind::PseudoPsi,
        };
        aux.increasing = uniform_grid(INCREASING_SWEEP).all(|t| aux.d1(t) >= -INCREASING_TOL);
        aux.c2_compatible = aux.d2(0.0).abs() <= C2_TOL && aux.d2(1.0).abs() <= C2_TOL;
        aux
    }

    pub fn kind(&self) -> AuxKind {
        self.kind
    }

    pub fn id(&self) -> &'static str {
        self.kind.id()
    }

    pub fn increasing(&self) -> bool {
        self.increasing
    }

    pub fn c2_compatible(&self) -> bool {
        self.c2_compatible
    }

    pub fn strict_partition(&self) -> bool {
        self.strict_partition
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        check_unit("t", t)?;
        Ok(self.phi(t))
    }

    pub fn deriv1(&self, t: f64) -> Result<f64> {
        check_unit("t", t)?;
        Ok(self.d1(t))
    }

    pub fn deriv2(&self, t: f64) -> Result<f64> {
        check_unit("t", t)?;
        Ok(self.d2(t))
    }

    pub(crate) fn phi(&self, t: f64) -> f64 {
        self.eval(t).0
    }

    pub(crate) fn d1(&self, t: f64) -> f64 {
        self.eval(t).1
    }

    pub(crate) fn d2(&self, t: f64) -> f64 {
        self.eval(t).2
    }

    /// `(φ, φ′, φ″)` at `t`.
    pub(crate) fn eval(&self, t: f64) -> (f64, f64, f64) {
        match self.kind {
            AuxKind::Cubic => (t * t * (3.0 - 2.0 * t), 6.0 * t * (1.0 - t), 6.0 - 12.0 * t),
            AuxKind::Quintic => {
                let t2 = t * t;
                (
                    t2 * t * (10.0 + t * (-15.0 + 6.0 * t)),
                    30.0 * t2 * (1.0 - t) * (1.0 - t),
                    60.0 * t * (1.0 - t) * (1.0 - 2.0 * t),
                )
            }
            AuxKind::BernsteinTail { n } => {
                let k = n / 2;
                let value: f64 = bernstein_values(n, t)[k + 1..].iter().sum();
                // The tail sum telescopes: φ′ = n B_{n−1,k}.
                let first = n as f64 * bernstein_values(n - 1, t)[k];
                let lower = bernstein_values(n - 2, t);
                let second = (n * (n - 1)) as f64 * (lower[k - 1] - lower[k]);
                (value, first, second)
            }
            AuxKind::Trig { k } => {
                let w = k as f64 * PI;
                let s = (0.5 * w * t).sin();
                (s * s, 0.5 * w * (w * t).sin(), 0.5 * w * w * (w * t).cos())
            }
            AuxKind::ExpoRational => {
                let s = 1.0 - t;
                let e = (1.0 - 2.0 * t).exp();
                let (n, dn, ddn) = (t * t, 2.0 * t, 2.0);
                let g = s * s * e;
                let dg = -2.0 * s * (2.0 - t) * e;
                let ddg = 2.0 * e * ((3.0 - 2.0 * t) + 2.0 * s * (2.0 - t));
                let (d, dd, ddd) = (n + g, dn + dg, ddn + ddg);
                let num1 = dn * d - n * dd;
                let first = num1 / (d * d);
                let second = (ddn * d - n * ddd) / (d * d) - 2.0 * dd * num1 / (d * d * d);
                (n / d, first, second)
            }
            AuxKind::PseudoPsi => {
                // ψ = t² h with h = B^{2(1−t)}, B = 2(e−2)t + 4 − e ∈ [4−e, e].
                let slope = 2.0 * (E - 2.0);
                let base = slope * t + 4.0 - E;
                let ln_b = base.ln();
                let l1 = -2.0 * ln_b + 2.0 * (1.0 - t) * slope / base;
                let l2 = -4.0 * slope / base - 2.0 * (1.0 - t) * slope * slope / (base * base);
                let h = (2.0 * (1.0 - t) * ln_b).exp();
                let dh = l1 * h;
                let ddh = (l2 + l1 * l1) * h;
                (
                    t * t * h,
                    2.0 * t * h + t * t * dh,
                    2.0 * h + 4.0 * t * dh + t * t * ddh,
                )
            }
        }
    }

    /// Check conditions (i)–(iii), the codomain, monotonicity and the C²
    /// endpoint condition φ″(0) = φ″(1) = 0. Residuals above `tol` fail.
    pub fn validate(&self, grid_size: usize, tol: f64) -> Result<PropertyReport> {
        if grid_size < 3 {
            return Err(Error::param("grid_size", grid_size as f64, "must be at least 3"));
        }
        if !(tol > 0.0) {
            return Err(Error::param("tol", tol, "must be positive"));
        }
        let mut endpoints = MaxTracker::default();
        endpoints.observe(self.phi(0.0).abs(), 0.0);
        endpoints.observe((self.phi(1.0) - 1.0).abs(), 1.0);

        let (mut partition, mut codomain, mut monotone) = Default::default();
        let mut prev = self.phi(0.0);
        for t in uniform_grid(grid_size) {
            let v = self.phi(t);
            MaxTracker::observe(&mut partition, (v + self.phi(1.0 - t) - 1.0).abs(), t);
            MaxTracker::observe(&mut codomain, (-v).max(v - 1.0).max(0.0), t);
            MaxTracker::observe(&mut monotone, (prev - v).max(0.0), t);
            prev = v;
        }

        let mut flat = MaxTracker::default();
        flat.observe(self.d1(0.0).abs(), 0.0);
        flat.observe(self.d1(1.0).abs(), 1.0);

        let mut curvature = MaxTracker::default();
        curvature.observe(self.d2(0.0).abs(), 0.0);
        curvature.observe(self.d2(1.0).abs(), 1.0);

        let mut report = PropertyReport::default();
        report.push("endpoint_values", endpoints, tol);
        if self.strict_partition {
            report.push("symmetric_partition", partition, tol);
        } else {
            report.push_note(
                "symmetric_partition",
                partition,
                tol,
                format!("pseudo-auxiliary: partition deficit {:.6}", partition.residual),
            );
        }
        report.push("flat_endpoints", flat, tol.max(1e-8));
        report.push("codomain", codomain, tol);
        if self.increasing {
            report.push("nondecreasing", monotone, tol);
        } else {
            report.push_note("nondecreasing", monotone, tol, "oscillating auxiliary function");
        }
        report.push("c2_endpoints", curvature, C2_TOL);
        Ok(report)
    }
}

/// Max |L − R| over a grid for `½B_{n,k} + Σ_{j>k} B_{n,j} = Σ_{j=k}^{n−1} B_{n−1,j}`
/// (even n, k = n/2): the even-degree candidate collapses to degree n − 1.
pub fn even_degree_reduction_residual(n: usize, grid_size: usize) -> Result<f64> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::param("n", n as f64, "must be an even integer >= 2"));
    }
    if grid_size < 2 {
        return Err(Error::param("grid_size", grid_size as f64, "must be at least 2"));
    }
    let k = n / 2;
    let residual = uniform_grid(grid_size)
        .map(|t| {
            let high = bernstein_values(n, t);
            let low = bernstein_values(n - 1, t);
            let lhs = 0.5 * high[k] + high[k + 1..].iter().sum::<f64>();
            let rhs: f64 = low[k..].iter().sum();
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max);
    Ok(residual)
}

/// Every auxiliary function with default parameters, for catalogs.
pub fn catalog() -> Vec<AuxiliaryFunction> {
    vec![
        AuxiliaryFunction::cubic_smoothstep(),
        AuxiliaryFunction::quintic_smoothstep(),
        AuxiliaryFunction::bernstein_tail(5).expect("odd degree"),
        AuxiliaryFunction::trig(1).expect("odd k"),
        AuxiliaryFunction::expo_rational(),
        AuxiliaryFunction::pseudo_psi(),
    ]
}
