use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples `(x_i, f_i)`, `i = 0 … n`, with strictly increasing `x` and
/// nondecreasing `f`. Serialized as an array of `[x, f]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct MonotoneDataset {
    x: Vec<f64>,
    f: Vec<f64>,
}

impl TryFrom<Vec<[f64; 2]>> for MonotoneDataset {
    type Error = Error;

    fn try_from(pairs: Vec<[f64; 2]>) -> Result<Self> {
        MonotoneDataset::new(
            pairs.iter().map(|p| p[0]).collect(),
            pairs.iter().map(|p| p[1]).collect(),
        )
    }
}

impl From<MonotoneDataset> for Vec<[f64; 2]> {
    fn from(d: MonotoneDataset) -> Self {
        d.x.iter().zip(&d.f).map(|(&x, &f)| [x, f]).collect()
    }
}

impl MonotoneDataset {
    pub fn new(x: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if x.len() != f.len() {
            return Err(Error::InvalidInput(format!(
                "{} abscissae but {} ordinates",
                x.len(),
                f.len()
            )));
        }
        if x.len() < 2 {
            return Err(Error::InvalidInput("a dataset needs at least 2 samples".into()));
        }
        if x.iter().chain(&f).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("dataset values must be finite".into()));
        }
        if let Some(i) = (1..x.len()).find(|&i| !(x[i] > x[i - 1])) {
            return Err(Error::InvalidInput(format!(
                "x is not strictly increasing at sample {i}"
            )));
        }
        if let Some(i) = (1..f.len()).find(|&i| f[i] < f[i - 1]) {
            return Err(Error::InvalidInput(format!("f decreases at sample {i}")));
        }
        Ok(MonotoneDataset { x, f })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
    }

    /// Eight samples of the logistic function `1 / (1 + e^{−x})` on [0, 2],
    /// rounded to three decimals.
    pub fn logistic_sample() -> Self {
        Self::new(
            vec![0.0, 0.292, 0.461, 0.799, 1.172, 1.409, 1.798, 2.0],
            vec![0.5, 0.572, 0.613, 0.690, 0.763, 0.804, 0.858, 0.881],
        )
        .expect("valid sample data")
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Number of segments `n`.
    pub fn segments(&self) -> usize {
        self.x.len() - 1
    }

    /// `f` strictly increasing.
    pub fn strict(&self) -> bool {
        self.f.windows(2).all(|w| w[1] > w[0])
    }

    pub fn x_gaps(&self) -> Vec<f64> {
        self.x.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn f_gaps(&self) -> Vec<f64> {
        self.f.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.x.iter().copied().zip(self.f.iter().copied()).collect()
    }
}

pub(crate) fn min_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Deterministic random dataset with `n + 1` samples. Gaps in `x` are drawn
/// from [0.05, 1], gaps in `f` from [0.01, 1]; when `strict` is false about a
/// third of the `f` gaps are zero.
pub fn random_monotone_dataset(seed: u64, n: usize, strict: bool) -> Result<MonotoneDataset> {
    if n < 1 {
        return Err(Error::param("n", n as f64, "must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![rng.random_range(-1.0..1.0)];
    let mut f = vec![rng.random_range(-1.0..1.0)];
    for i in 0..n {
        let dx: f64 = rng.random_range(0.05..=1.0);
        let flat = !strict && rng.random_bool(1.0 / 3.0);
        let df: f64 = if flat { 0.0 } else { rng.random_range(0.01..=1.0) };
        x.push(x[i] + dx);
        f.push(f[i] + df);
    }
    MonotoneDataset::new(x, f)
}
