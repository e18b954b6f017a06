//! Product-integration weights of the fractional Adams-Bashforth-Moulton
//! family.
//!
//! With exponent `n` and step `h`, for the step from `t_k` to `t_{k+1}`:
//!
//! ```text
//! corrector b_i = h^n / (n (n+1)) * | k^(n+1) - (k+1)^n (k-n)                    i = 0
//!                                   | (k-i+2)^(n+1) - 2(k-i+1)^(n+1) + (k-i)^(n+1) 1 <= i <= k
//!                                   | 1                                          i = k+1
//! predictor d_i = h^n / n * ((k-i+1)^n - (k-i)^n)                                0 <= i <= k
//! ```
//!
//! At `n = 1` these are the trapezoid and left-rectangle rules.

use super::FdeError;

/// Weights for a single step index `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureWeights {
    pub step_index: usize,
    /// `b_{i,k+1}`, `k + 2` entries.
    pub corrector: Vec<f64>,
    /// `d_{i,k+1}`, `k + 1` entries.
    pub predictor: Vec<f64>,
}

impl QuadratureWeights {
    pub fn new(k: usize, exponent: f64, step: f64) -> Result<Self, FdeError> {
        Ok(Self {
            step_index: k,
            corrector: corrector_weights(k, exponent, step)?,
            predictor: predictor_weights(k, exponent, step)?,
        })
    }
}

fn validate(exponent: f64, step: f64) -> Result<(), FdeError> {
    if step.is_finite() && step > 0.0 && exponent.is_finite() && exponent > 0.0 {
        Ok(())
    } else {
        Err(FdeError::InvalidWeights { step, exponent })
    }
}

pub fn corrector_weights(k: usize, exponent: f64, step: f64) -> Result<Vec<f64>, FdeError> {
    validate(exponent, step)?;
    let kernel = WeightKernel::new(exponent, step);
    let mut w = Vec::with_capacity(k + 2);
    w.push(kernel.corrector_first(k));
    w.extend((1..=k).map(|i| kernel.corrector_interior(k - i)));
    w.push(kernel.corrector_last());
    Ok(w)
}

pub fn predictor_weights(k: usize, exponent: f64, step: f64) -> Result<Vec<f64>, FdeError> {
    validate(exponent, step)?;
    let kernel = WeightKernel::new(exponent, step);
    Ok((0..=k).map(|i| kernel.predictor(k - i)).collect())
}

/// Scalar weight formulas, indexed by the lag `m = k - i` wherever the
/// weight depends only on the lag.
#[derive(Debug, Clone, Copy)]
pub(crate) struct WeightKernel {
    n: f64,
    corrector_scale: f64,
    predictor_scale: f64,
}

impl WeightKernel {
    pub(crate) fn new(n: f64, h: f64) -> Self {
        let hn = h.powf(n);
        Self {
            n,
            corrector_scale: hn / (n * (n + 1.0)),
            predictor_scale: hn / n,
        }
    }

    pub(crate) fn corrector_first(&self, k: usize) -> f64 {
        let k = k as f64;
        let n = self.n;
        self.corrector_scale * (k.powf(n + 1.0) - (k + 1.0).powf(n) * (k - n))
    }

    pub(crate) fn corrector_interior(&self, lag: usize) -> f64 {
        let m = lag as f64;
        let p = self.n + 1.0;
        self.corrector_scale * ((m + 2.0).powf(p) - 2.0 * (m + 1.0).powf(p) + m.powf(p))
    }

    pub(crate) fn corrector_last(&self) -> f64 {
        self.corrector_scale
    }

    pub(crate) fn predictor(&self, lag: usize) -> f64 {
        let m = lag as f64;
        self.predictor_scale * ((m + 1.0).powf(self.n) - m.powf(self.n))
    }
}

/// Lag-indexed weights precomputed for a whole run of `steps` steps.
pub(crate) struct WeightTable {
    kernel: WeightKernel,
    pub(crate) interior: Vec<f64>,
    pub(crate) predictor: Vec<f64>,
}

impl WeightTable {
    pub(crate) fn new(n: f64, h: f64, steps: usize) -> Self {
        let kernel = WeightKernel::new(n, h);
        Self {
            kernel,
            interior: (0..steps).map(|m| kernel.corrector_interior(m)).collect(),
            predictor: (0..steps).map(|m| kernel.predictor(m)).collect(),
        }
    }

    pub(crate) fn corrector_first(&self, k: usize) -> f64 {
        self.kernel.corrector_first(k)
    }

    pub(crate) fn corrector_last(&self) -> f64 {
        self.kernel.corrector_last()
    }
}
