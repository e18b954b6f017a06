//! Three-species Lotka-Volterra system (one prey `x`, two predators `y`, `z`):
//!
//! ```text
//! D x = x (a1 - a2 x - y - z)
//! D y = y ((1 - a3) + a4 x)
//! D z = z ((1 - a5) + a6 x + a7 y)
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fde::VectorField;

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("coefficient a{index} must be finite and > 0, got {value}")]
    NonPositive { index: usize, value: f64 },
}

/// The seven positive rate coefficients `a1..a7`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NamedCoefficients", into = "NamedCoefficients")]
pub struct ModelParams([f64; 7]);

impl ModelParams {
    pub fn new(coefficients: [f64; 7]) -> Result<Self, ParamsError> {
        for (i, &value) in coefficients.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(ParamsError::NonPositive {
                    index: i + 1,
                    value,
                });
            }
        }
        Ok(Self(coefficients))
    }

    /// `[a1, a2, a3, a4, a5, a6, a7]`.
    pub fn coefficients(&self) -> [f64; 7] {
        self.0
    }

    pub fn max_coefficient(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedCoefficients {
    a1: f64,
    a2: f64,
    a3: f64,
    a4: f64,
    a5: f64,
    a6: f64,
    a7: f64,
}

impl TryFrom<NamedCoefficients> for ModelParams {
    type Error = ParamsError;

    fn try_from(n: NamedCoefficients) -> Result<Self, Self::Error> {
        ModelParams::new([n.a1, n.a2, n.a3, n.a4, n.a5, n.a6, n.a7])
    }
}

impl From<ModelParams> for NamedCoefficients {
    fn from(p: ModelParams) -> Self {
        let [a1, a2, a3, a4, a5, a6, a7] = p.0;
        NamedCoefficients {
            a1,
            a2,
            a3,
            a4,
            a5,
            a6,
            a7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl StateVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_slice(s: &[f64]) -> Self {
        Self {
            x: s[0],
            y: s[1],
            z: s[2],
        }
    }

    pub fn max_distance(&self, other: &StateVector) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// The vector field of the system.
pub fn rhs(params: &ModelParams, state: &StateVector) -> [f64; 3] {
    let [a1, a2, a3, a4, a5, a6, a7] = params.0;
    let StateVector { x, y, z } = *state;
    [
        x * (a1 - a2 * x - y - z),
        y * ((1.0 - a3) + a4 * x),
        z * ((1.0 - a5) + a6 * x + a7 * y),
    ]
}

/// [`rhs`] as a [`VectorField`] for the integrators.
#[derive(Debug, Clone, Copy)]
pub struct LotkaVolterra {
    pub params: ModelParams,
}

impl LotkaVolterra {
    pub fn new(params: ModelParams) -> Self {
        Self { params }
    }
}

impl VectorField for LotkaVolterra {
    fn dimension(&self) -> usize {
        3
    }

    fn evaluate(&self, _t: f64, state: &[f64], derivative: &mut [f64]) {
        derivative.copy_from_slice(&rhs(&self.params, &StateVector::from_slice(state)));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EquilibriumKind {
    E0,
    E1,
    E2,
    E3,
    E4,
}

impl EquilibriumKind {
    pub const ALL: [EquilibriumKind; 5] = [Self::E0, Self::E1, Self::E2, Self::E3, Self::E4];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "eps{}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceCondition {
    pub kind: EquilibriumKind,
    pub name: &'static str,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equilibrium {
    pub kind: EquilibriumKind,
    pub point: StateVector,
    /// Every component is non-negative.
    pub admissible: bool,
    pub conditions: Vec<ExistenceCondition>,
}

fn closed_form(params: &ModelParams, kind: EquilibriumKind) -> StateVector {
    let [a1, a2, a3, a4, a5, a6, a7] = params.0;
    match kind {
        EquilibriumKind::E0 => StateVector::new(0.0, 0.0, 0.0),
        EquilibriumKind::E1 => StateVector::new(a1 / a2, 0.0, 0.0),
        EquilibriumKind::E2 => {
            StateVector::new((a5 - 1.0) / a6, 0.0, (a1 * a6 - a2 * (a5 - 1.0)) / a6)
        }
        EquilibriumKind::E3 => {
            StateVector::new((a3 - 1.0) / a4, (a1 * a4 - a2 * (a3 - 1.0)) / a4, 0.0)
        }
        EquilibriumKind::E4 => StateVector::new(
            (a3 - 1.0) / a4,
            (a4 * (a5 - 1.0) - a6 * (a3 - 1.0)) / (a7 * a4),
            (a4 * (1.0 + a1 * a7 - a5) + (a6 - a2 * a7) * (a3 - 1.0)) / (a7 * a4),
        ),
    }
}

/// Symbolic existence conditions (non-negativity of each closed form).
pub fn existence_report(params: &ModelParams) -> Vec<ExistenceCondition> {
    let [a1, a2, a3, a4, a5, a6, a7] = params.0;
    use EquilibriumKind::*;
    let cond = |kind, name, satisfied| ExistenceCondition {
        kind,
        name,
        satisfied,
    };

    let mut out = vec![
        cond(E2, "a5 >= 1", a5 >= 1.0),
        cond(E2, "a1*a6 >= a2*(a5 - 1)", a1 * a6 >= a2 * (a5 - 1.0)),
        cond(E3, "a3 >= 1", a3 >= 1.0),
        cond(E3, "a1*a4 >= a2*(a3 - 1)", a1 * a4 >= a2 * (a3 - 1.0)),
        cond(E4, "a3 >= 1", a3 >= 1.0),
        cond(
            E4,
            "a4*(a5 - 1) >= a6*(a3 - 1)",
            a4 * (a5 - 1.0) >= a6 * (a3 - 1.0),
        ),
    ];
    // z-component of eps4: a4*s + (a6 - a2*a7)(a3 - 1) >= 0 with s = 1 + a1*a7 - a5.
    let s = 1.0 + a1 * a7 - a5;
    let lever = (a2 * a7 - a6) * (a3 - 1.0);
    out.push(if s > 0.0 {
        cond(
            E4,
            "a4 >= (a2*a7 - a6)(a3 - 1)/(1 + a1*a7 - a5)",
            a4 >= lever / s,
        )
    } else if s < 0.0 {
        cond(
            E4,
            "a4 <= (a2*a7 - a6)(a3 - 1)/(1 + a1*a7 - a5)",
            a4 <= lever / s,
        )
    } else {
        cond(E4, "(a6 - a2*a7)(a3 - 1) >= 0", -lever >= 0.0)
    });
    out
}

/// The five equilibria in fixed order `eps0..eps4`, admissible or not.
pub fn equilibria(params: &ModelParams) -> Vec<Equilibrium> {
    let report = existence_report(params);
    EquilibriumKind::ALL
        .iter()
        .map(|&kind| {
            let point = closed_form(params, kind);
            Equilibrium {
                kind,
                point,
                admissible: point.to_array().iter().all(|&c| c >= 0.0),
                conditions: report.iter().filter(|c| c.kind == kind).cloned().collect(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobianMatrix(pub [[f64; 3]; 3]);

impl JacobianMatrix {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.0
    }
}

pub fn jacobian(params: &ModelParams, point: &StateVector) -> JacobianMatrix {
    let [a1, a2, a3, a4, a5, a6, a7] = params.0;
    let StateVector { x, y, z } = *point;
    JacobianMatrix([
        [a1 - 2.0 * a2 * x - y - z, -x, -x],
        [a4 * y, 1.0 - a3 + a4 * x, 0.0],
        [a6 * z, a7 * z, a6 * x - a5 + a7 * y + 1.0],
    ])
}
