//! Fixed-step fractional initial-value problem solvers.
//!
//! Both fractional integrators share one predict-evaluate-correct-evaluate
//! engine over the full solution history; they differ only in the exponent
//! of the product-integration weights and in the prefactor applied to the
//! history sums:
//!
//! | operator | weight exponent | prefactor        |
//! |----------|-----------------|------------------|
//! | Caputo   | `alpha`         | `1 / Gamma(alpha)` |
//! | CF       | `1`             | `alpha / M`      |
//!
//! The CF scheme additionally has a [`CfMode`] switch for the non-integral
//! `((1 - alpha) / M) (g(t) - g(0))` term of the CF integral.

mod exact;
mod pece;
mod rk4;
mod weights;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use exact::linear_cf_exact;
pub use pece::{integrate_caputo, integrate_cf};
pub use rk4::reference_rk4;
pub use weights::{corrector_weights, predictor_weights, QuadratureWeights};

/// Any state component whose magnitude exceeds this aborts the run.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

#[derive(Debug, Error)]
pub enum FdeError {
    #[error("fractional order must lie in (0, 1], got {0}")]
    InvalidOrder(f64),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "quadrature weights need step > 0 and exponent > 0 (step = {step}, exponent = {exponent})"
    )]
    InvalidWeights { step: f64, exponent: f64 },
    #[error("vector field has dimension {field} but the initial state has {initial}")]
    DimensionMismatch { field: usize, initial: usize },
    #[error("solution diverged at step {step} (t = {time})")]
    Diverged {
        step: usize,
        time: f64,
        /// Everything computed up to (but excluding) the offending step.
        partial: Box<Trajectory>,
    },
    #[error("exact CF linear solution is singular: (1 - alpha) * lambda = 1")]
    SingularLinearProblem,
}

/// Differentiation order `alpha` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self, FdeError> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(FdeError::InvalidOrder(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `alpha == 1`, where both operators reduce to the ordinary derivative.
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = FdeError;

    fn try_from(alpha: f64) -> Result<Self, Self::Error> {
        Self::new(alpha)
    }
}

impl From<FractionalOrder> for f64 {
    fn from(order: FractionalOrder) -> f64 {
        order.0
    }
}

/// Which discretisation of the CF integral to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CfMode {
    /// History integral only (`x0 + alpha/M * integral`).
    #[default]
    Standard,
    /// Adds the non-integral term `((1 - alpha)/M) (g(t) - g(0))`.
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Caputo,
    Cf,
    /// Integer-order reference runs.
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    step: f64,
    horizon: f64,
    normalization: f64,
    cf_mode: CfMode,
}

impl SolverConfig {
    pub fn new(step: f64, horizon: f64) -> Result<Self, FdeError> {
        Self::with_options(step, horizon, 1.0, CfMode::default())
    }

    pub fn with_options(
        step: f64,
        horizon: f64,
        normalization: f64,
        cf_mode: CfMode,
    ) -> Result<Self, FdeError> {
        if !(step.is_finite() && step > 0.0) {
            return Err(FdeError::InvalidConfig(format!(
                "step must be > 0, got {step}"
            )));
        }
        if !(horizon.is_finite() && horizon >= step) {
            return Err(FdeError::InvalidConfig(format!(
                "horizon must be >= step ({step}), got {horizon}"
            )));
        }
        if !(normalization.is_finite() && normalization > 0.0) {
            return Err(FdeError::InvalidConfig(format!(
                "normalization must be > 0, got {normalization}"
            )));
        }
        Ok(Self {
            step,
            horizon,
            normalization,
            cf_mode,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn cf_mode(&self) -> CfMode {
        self.cf_mode
    }

    /// Number of steps `floor(horizon / step)`, robust to the representation
    /// error of decimal step sizes (50 / 0.01 is 5000, not 4999).
    pub fn num_steps(&self) -> usize {
        let ratio = self.horizon / self.step;
        let rounded = ratio.round();
        let n = if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
            rounded
        } else {
            ratio.floor()
        };
        (n as usize).max(1)
    }
}

/// Right-hand side `g(t, x)` of a first-order system.
pub trait VectorField {
    fn dimension(&self) -> usize;

    /// Writes `g(t, state)` into `derivative`. Must be deterministic.
    fn evaluate(&self, t: f64, state: &[f64], derivative: &mut [f64]);
}

impl<T: VectorField + ?Sized> VectorField for &T {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn evaluate(&self, t: f64, state: &[f64], derivative: &mut [f64]) {
        (**self).evaluate(t, state, derivative)
    }
}

/// Adapts a closure `|t, x, dx|` into a [`VectorField`].
pub struct FnField<F> {
    dimension: usize,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    pub fn new(dimension: usize, f: F) -> Self {
        Self { dimension, f }
    }
}

impl<F> VectorField for FnField<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn evaluate(&self, t: f64, state: &[f64], derivative: &mut [f64]) {
        (self.f)(t, state, derivative)
    }
}

/// Solution on a fixed time grid `t_k = k * step`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    dimension: usize,
    step: f64,
    operator: Operator,
    order: FractionalOrder,
    times: Vec<f64>,
    /// Row-major, `dimension` values per time point.
    states: Vec<f64>,
}

impl Trajectory {
    pub(crate) fn with_capacity(
        initial: &[f64],
        step: f64,
        operator: Operator,
        order: FractionalOrder,
        capacity: usize,
    ) -> Self {
        let mut times = Vec::with_capacity(capacity);
        let mut states = Vec::with_capacity(capacity * initial.len());
        times.push(0.0);
        states.extend_from_slice(initial);
        Self {
            dimension: initial.len(),
            step,
            operator,
            order,
            times,
            states,
        }
    }

    pub(crate) fn push(&mut self, time: f64, state: &[f64]) {
        debug_assert_eq!(state.len(), self.dimension);
        self.times.push(time);
        self.states.extend_from_slice(state);
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn operator(&self) -> Operator {
        self.operator
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn state(&self, k: usize) -> &[f64] {
        &self.states[k * self.dimension..(k + 1) * self.dimension]
    }

    pub fn states(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.states.chunks_exact(self.dimension)
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    pub fn last_time(&self) -> f64 {
        self.times[self.len() - 1]
    }

    /// Max-norm distance between two trajectories over their common grid
    /// points whose time does not exceed `until`.
    pub fn max_deviation(&self, other: &Trajectory, until: f64) -> f64 {
        self.times
            .iter()
            .zip(self.states())
            .zip(other.states())
            .take_while(|((t, _), _)| **t <= until + 1e-12)
            .flat_map(|((_, a), b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_dimensions(field: &dyn VectorField, initial: &[f64]) -> Result<(), FdeError> {
    if field.dimension() != initial.len() || initial.is_empty() {
        return Err(FdeError::DimensionMismatch {
            field: field.dimension(),
            initial: initial.len(),
        });
    }
    Ok(())
}

pub(crate) fn is_divergent(state: &[f64]) -> bool {
    state
        .iter()
        .any(|v| !v.is_finite() || v.abs() > DIVERGENCE_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_range() {
        assert!(FractionalOrder::new(1.0).unwrap().is_classical());
        assert!(FractionalOrder::new(0.5).is_ok());
        for bad in [0.0, -0.1, 1.0000001, f64::NAN, f64::INFINITY] {
            assert!(FractionalOrder::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn config_invariants() {
        assert!(SolverConfig::new(0.0, 1.0).is_err());
        assert!(SolverConfig::new(-0.1, 1.0).is_err());
        assert!(SolverConfig::new(0.1, 0.05).is_err());
        assert!(SolverConfig::with_options(0.1, 1.0, 0.0, CfMode::Standard).is_err());
        assert_eq!(SolverConfig::new(0.01, 50.0).unwrap().num_steps(), 5000);
        assert_eq!(SolverConfig::new(0.01, 100.0).unwrap().num_steps(), 10000);
        assert_eq!(SolverConfig::new(0.3, 1.0).unwrap().num_steps(), 3);
        assert_eq!(SolverConfig::new(0.1, 0.1).unwrap().num_steps(), 1);
    }

    #[test]
    fn order_deserialization_validates() {
        let ok: FractionalOrder = serde_json::from_str("0.6").unwrap();
        assert_eq!(ok.value(), 0.6);
        assert!(serde_json::from_str::<FractionalOrder>("1.5").is_err());
    }
}
