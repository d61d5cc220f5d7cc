//! Empirical CDFs and the summary statistics used to compare them.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CdfCurve {
    /// Sample values in ascending order.
    pub values: Vec<f64>,
    /// `probs[i] = (i + 1) / n`.
    pub probs: Vec<f64>,
}

pub fn empirical_cdf(samples: &[f64]) -> Result<CdfCurve> {
    if samples.is_empty() {
        return Err(Error::argument("empirical CDF of an empty sample"));
    }
    if samples.iter().any(|v| v.is_nan()) {
        return Err(Error::argument("empirical CDF sample contains NaN"));
    }
    let mut values = samples.to_vec();
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    let probs = (1..=values.len()).map(|i| i as f64 / n).collect();
    Ok(CdfCurve { values, probs })
}

impl CdfCurve {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        let idx = self.values.partition_point(|v| *v <= x);
        if idx == 0 {
            0.0
        } else {
            self.probs[idx - 1]
        }
    }

    /// Smallest sample whose cumulative probability reaches `p`.
    pub fn quantile(&self, p: f64) -> f64 {
        let idx = self.probs.partition_point(|q| *q < p - 1e-12);
        self.values[idx.min(self.values.len() - 1)]
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    pub fn iqr(&self) -> f64 {
        self.quantile(0.75) - self.quantile(0.25)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Unbiased sample variance; zero for a single sample.
    pub fn variance(&self) -> f64 {
        sample_variance(&self.values)
    }

    /// Largest vertical gap between the two step functions.
    pub fn max_vertical_distance(&self, other: &CdfCurve) -> f64 {
        self.values
            .iter()
            .chain(&other.values)
            .map(|&x| (self.eval(x) - other.eval(x)).abs())
            .fold(0.0, f64::max)
    }
}

pub fn sample_variance(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
}
