//! Fractional-order dynamics of the three-species Lotka-Volterra system.
//!
//! The crate is organised bottom-up:
//!
//! * [`fde`] - fixed-step predictor-corrector integrators for fractional
//!   initial-value problems under the Caputo and Caputo-Fabrizio (CF)
//!   operators, plus exact and classical reference solutions.
//! * [`lotka`] - the vector field, its five closed-form equilibria and the
//!   Jacobian.
//! * [`spectral`] - characteristic cubics, closed-form cubic roots and the
//!   Routh-Hurwitz test.
//! * [`stability`] - Caputo cone and CF criteria, the region taxonomy and
//!   per-equilibrium reports.
//! * [`registry`] and [`table2`] - the three published example systems and a
//!   harness that re-derives their summary table.

pub mod fde;
pub mod lotka;
pub mod registry;
pub mod spectral;
pub mod stability;
pub mod table2;

pub use fde::{
    integrate_caputo, integrate_cf, linear_cf_exact, reference_rk4, CfMode, FdeError, FnField,
    FractionalOrder, Operator, SolverConfig, Trajectory, VectorField,
};
pub use lotka::{
    equilibria, existence_report, jacobian, rhs, Equilibrium, EquilibriumKind, JacobianMatrix,
    LotkaVolterra, ModelParams, StateVector,
};
pub use spectral::{
    characteristic_cubic, cubic_analysis, cubic_roots, eigenvalues, routh_hurwitz_cubic,
    CubicAnalysis, CubicBranch, CubicCoefficients, Spectrum,
};
pub use stability::{
    caputo_stable, cf_stable_disk, cf_stable_theorem, classify_region, equilibrium_report,
    table1_conditions, Criterion, EquilibriumReport, RegionClass, StabilityVerdict,
};
