//! Shape-parameterized basis `T = {T_{n,i}}` built from a blending system,
//! an auxiliary function φ and a global parameter σ ∈ [0, 1]:
//!
//! ```text
//! T_{n,0} = (1 − σ)(1 − φ) + σ F_{n,0}
//! T_{n,i} = σ F_{n,i}                    0 < i < n
//! T_{n,n} = (1 − σ) φ + σ F_{n,n}
//! ```

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::auxiliary::{AuxKind, AuxiliaryFunction};
use crate::blending::{BlendingSystem, Family};
use crate::error::{check_unit, Error, Result};
use crate::report::{uniform_grid, MaxTracker, PropertyReport};

/// Serialized form of a basis: `{"system": {...}, "aux": {...}, "sigma": 0.5}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub system: Family,
    pub aux: AuxKind,
    pub sigma: f64,
}

impl BasisSpec {
    pub fn build(&self) -> Result<EnhancedBasis> {
        let system = BlendingSystem::from_family(self.system)?;
        let aux = AuxiliaryFunction::from_kind(self.aux)?;
        EnhancedBasis::build(system, aux, self.sigma)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "BasisSpec")]
pub struct EnhancedBasis {
    system: BlendingSystem,
    aux: AuxiliaryFunction,
    sigma: f64,
}

impl From<EnhancedBasis> for BasisSpec {
    fn from(b: EnhancedBasis) -> Self {
        BasisSpec {
            system: b.system.family(),
            aux: b.aux.kind(),
            sigma: b.sigma,
        }
    }
}

const RANK_CUTOFF: f64 = 1e-10;

impl EnhancedBasis {
    /// Fails only when σ lies outside [0, 1]. A σ = 0 basis is accepted but
    /// flagged [`degenerate`](Self::degenerate); a pseudo-auxiliary is flagged
    /// through [`pseudo`](Self::pseudo).
    pub fn build(system: BlendingSystem, aux: AuxiliaryFunction, sigma: f64) -> Result<Self> {
        check_unit("sigma", sigma)?;
        Ok(EnhancedBasis { system, aux, sigma })
    }

    pub fn system(&self) -> &BlendingSystem {
        &self.system
    }

    pub fn aux(&self) -> &AuxiliaryFunction {
        &self.aux
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn degree(&self) -> usize {
        self.system.degree()
    }

    pub fn dimension(&self) -> usize {
        self.system.dimension()
    }

    /// σ = 0: only `1 − φ` and `φ` survive, so the functions are dependent.
    pub fn degenerate(&self) -> bool {
        self.sigma == 0.0
    }

    /// The auxiliary function breaks φ(t) + φ(1 − t) = 1.
    pub fn pseudo(&self) -> bool {
        !self.aux.strict_partition()
    }

    /// Same system and auxiliary function at another σ.
    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::build(self.system.clone(), self.aux.clone(), sigma)
    }

    pub fn evaluate_all(&self, t: f64) -> Result<Vec<f64>> {
        check_unit("t", t)?;
        let mut out = vec![0.0; self.dimension()];
        self.eval_into(t, &mut out);
        Ok(out)
    }

    pub fn derivative_all(&self, t: f64, order: usize) -> Result<Vec<f64>> {
        if !(1..=2).contains(&order) {
            return Err(Error::UnsupportedOrder(order));
        }
        check_unit("t", t)?;
        let mut out = vec![0.0; self.dimension()];
        self.deriv_into(t, order, &mut out);
        Ok(out)
    }

    pub(crate) fn eval_into(&self, t: f64, out: &mut [f64]) {
        self.system.eval_into(t, out);
        let phi = self.aux.phi(t);
        self.mix(1.0 - phi, phi, out);
    }

    pub(crate) fn deriv_into(&self, t: f64, order: usize, out: &mut [f64]) {
        self.system.deriv_into(t, order, out);
        let (_, d1, d2) = self.aux.eval(t);
        let dphi = if order == 1 { d1 } else { d2 };
        self.mix(-dphi, dphi, out);
    }

    fn mix(&self, first: f64, last: f64, out: &mut [f64]) {
        let s = self.sigma;
        for v in out.iter_mut() {
            *v *= s;
        }
        let n = out.len() - 1;
        out[0] += (1.0 - s) * first;
        out[n] += (1.0 - s) * last;
    }

    /// Residuals for non-negativity, partition of unity, symmetry
    /// `T_i(t) = T_{n−i}(1 − t)`, endpoint interpolation and endpoint tangency.
    pub fn verify_theorem1(&self, grid_size: usize) -> Result<PropertyReport> {
        if grid_size < 3 {
            return Err(Error::param("grid_size", grid_size as f64, "must be at least 3"));
        }
        let dim = self.dimension();
        let n = dim - 1;
        let mut vals = vec![0.0; dim];
        let mut mirror = vec![0.0; dim];
        let (mut negativity, mut unity, mut symmetry) = Default::default();
        for t in uniform_grid(grid_size) {
            self.eval_into(t, &mut vals);
            self.eval_into(1.0 - t, &mut mirror);
            let (min, sum) = crate::blending::min_and_sum(&vals);
            MaxTracker::observe(&mut negativity, (-min).max(0.0), t);
            MaxTracker::observe(&mut unity, (sum - 1.0).abs(), t);
            for i in 0..dim {
                MaxTracker::observe(&mut symmetry, (vals[i] - mirror[n - i]).abs(), t);
            }
        }

        let mut endpoints = MaxTracker::default();
        self.eval_into(0.0, &mut vals);
        for (i, v) in vals.iter().enumerate() {
            let expected = if i == 0 { 1.0 } else { 0.0 };
            endpoints.observe((v - expected).abs(), 0.0);
        }
        self.eval_into(1.0, &mut vals);
        for (i, v) in vals.iter().enumerate() {
            let expected = if i == n { 1.0 } else { 0.0 };
            endpoints.observe((v - expected).abs(), 1.0);
        }

        let mut tangency = MaxTracker::default();
        let m0 = self.sigma * self.system.tangency_start();
        let m1 = self.sigma * self.system.tangency_end();
        self.deriv_into(0.0, 1, &mut vals);
        for (i, v) in vals.iter().enumerate() {
            let expected = match i {
                0 => -m0,
                1 => m0,
                _ => 0.0,
            };
            tangency.observe((v - expected).abs(), 0.0);
        }
        self.deriv_into(1.0, 1, &mut vals);
        for (i, v) in vals.iter().enumerate() {
            let expected = if i == n {
                m1
            } else if i + 1 == n {
                -m1
            } else {
                0.0
            };
            tangency.observe((v - expected).abs(), 1.0);
        }

        let mut report = PropertyReport::default();
        report.push("non_negativity", negativity, 1e-12);
        report.push("partition_of_unity", unity, 1e-10);
        if self.pseudo() {
            // 1 − ψ and ψ still sum to one; the lost identity ψ(t) + ψ(1 − t) = 1 shows up here.
            let deficit = uniform_grid(grid_size)
                .map(|t| (1.0 - self.aux.phi(t) - self.aux.phi(1.0 - t)).abs())
                .fold(0.0, f64::max);
            report.push_note(
                "symmetry",
                symmetry,
                1e-10,
                format!("pseudo-auxiliary function: partition deficit {deficit:.6}"),
            );
        } else if self.system_is_symmetric() {
            report.push("symmetry", symmetry, 1e-10);
        } else {
            report.push_note("symmetry", symmetry, 1e-10, "underlying system is not symmetric");
        }
        report.push("endpoint_interpolation", endpoints, 1e-12);
        report.push("endpoint_tangency", tangency, 1e-8);
        Ok(report)
    }

    fn system_is_symmetric(&self) -> bool {
        match self.system.family() {
            Family::LambdaMu { lambda, mu } => lambda == mu,
            _ => true,
        }
    }

    /// Numerical rank of the collocation matrix `[T_i(node_j)]` (singular
    /// values above 1e−10 times the largest) and its 2-norm condition number.
    pub fn collocation_rank(&self, nodes: &[f64]) -> Result<(usize, f64)> {
        let dim = self.dimension();
        if nodes.len() != dim {
            return Err(Error::InvalidInput(format!(
                "expected {dim} collocation nodes, got {}",
                nodes.len()
            )));
        }
        for &x in nodes {
            check_unit("node", x)?;
        }
        let mut sorted = nodes.to_vec();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("collocation nodes must be distinct".into()));
        }
        let mut row = vec![0.0; dim];
        let mut matrix = DMatrix::zeros(dim, dim);
        for (j, &x) in nodes.iter().enumerate() {
            self.eval_into(x, &mut row);
            for (i, v) in row.iter().enumerate() {
                matrix[(j, i)] = *v;
            }
        }
        let singular = matrix.singular_values();
        let largest = singular.max();
        let smallest = singular.min();
        let rank = singular.iter().filter(|&&v| v > RANK_CUTOFF * largest).count();
        let condition = if smallest > 0.0 {
            largest / smallest
        } else {
            f64::INFINITY
        };
        Ok((rank, condition))
    }
}

/// Chebyshev points of the second kind mapped to [0, 1], ascending.
pub fn chebyshev_nodes(count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.5];
    }
    let last = (count - 1) as f64;
    (0..count)
        .map(|j| 0.5 - 0.5 * (std::f64::consts::PI * j as f64 / last).cos())
        .collect()
}
