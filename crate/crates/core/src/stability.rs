//! Linearised stability under the Caputo and Caputo-Fabrizio operators.
//!
//! * Caputo: an eigenvalue is stable iff `|arg l| > alpha pi / 2`. The
//!   unstable set is a closed cone around the positive real axis.
//! * CF, sufficient conditions (any one per eigenvalue):
//!   1. `|l| >= 1/(1-alpha)` and `l != 1/(1-alpha)`
//!   2. `Re l > 1/(1-alpha)`
//!   3. `Re l < 0`
//!   4. `|Im l| > 1/(2(1-alpha))`
//! * CF, disk form: stable iff `l` lies outside the closed disk of radius
//!   `c = 1/(2(1-alpha))` centred at `c` on the real axis.
//!
//! Boundaries (cone edge, circle) count as unstable.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::fde::FractionalOrder;
use crate::lotka::{equilibria, jacobian, Equilibrium, EquilibriumKind, ModelParams};
use crate::spectral::{eigenvalues, routh_hurwitz_cubic, Spectrum};

#[derive(Debug, Error, PartialEq)]
pub enum StabilityError {
    #[error("CF stability criteria need alpha < 1 (1/(1-alpha) is undefined at alpha = 1)")]
    UnitOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityTest {
    Caputo,
    CfTheorem,
    CfDisk,
}

/// A single condition that can certify an eigenvalue as stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criterion {
    /// `|arg l| > alpha pi / 2`.
    CaputoCone,
    /// `Re l < 0`, used for the Caputo test at `alpha = 1`.
    Classical,
    /// CF condition 1.
    CfModulus,
    /// CF condition 2.
    CfRealAbove,
    /// CF condition 3.
    CfLeftHalfPlane,
    /// CF condition 4.
    CfImaginary,
    CfOutsideDisk,
}

impl Criterion {
    pub fn id(self) -> &'static str {
        match self {
            Criterion::CaputoCone => "cone",
            Criterion::Classical => "re<0",
            Criterion::CfModulus => "1",
            Criterion::CfRealAbove => "2",
            Criterion::CfLeftHalfPlane => "3",
            Criterion::CfImaginary => "4",
            Criterion::CfOutsideDisk => "disk",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueCheck {
    pub eigenvalue: Complex64,
    /// Every criterion this eigenvalue satisfies; empty means unstable.
    pub satisfied: Vec<Criterion>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub test: StabilityTest,
    pub alpha: f64,
    pub stable: bool,
    pub per_eigenvalue: Vec<EigenvalueCheck>,
}

impl StabilityVerdict {
    fn collect(
        test: StabilityTest,
        order: FractionalOrder,
        spectrum: &[Complex64],
        check: impl Fn(Complex64) -> Vec<Criterion>,
    ) -> Self {
        let per_eigenvalue: Vec<_> = spectrum
            .iter()
            .map(|&eigenvalue| EigenvalueCheck {
                eigenvalue,
                satisfied: check(eigenvalue),
            })
            .collect();
        let stable = per_eigenvalue.iter().all(|e| !e.satisfied.is_empty());
        Self {
            test,
            alpha: order.value(),
            stable,
            per_eigenvalue,
        }
    }
}

/// Single-eigenvalue Caputo test. At `alpha = 1` this is `Re l < 0`.
pub fn caputo_cone_stable(lambda: Complex64, order: FractionalOrder) -> bool {
    if lambda.re < 0.0 {
        return true;
    }
    if order.is_classical() || lambda == Complex64::new(0.0, 0.0) {
        return false;
    }
    lambda.im.atan2(lambda.re).abs() > order.value() * FRAC_PI_2
}

pub fn caputo_stable(spectrum: &[Complex64], order: FractionalOrder) -> StabilityVerdict {
    let criterion = if order.is_classical() {
        Criterion::Classical
    } else {
        Criterion::CaputoCone
    };
    StabilityVerdict::collect(StabilityTest::Caputo, order, spectrum, |l| {
        if caputo_cone_stable(l, order) {
            vec![criterion]
        } else {
            vec![]
        }
    })
}

fn cf_threshold(order: FractionalOrder) -> Result<f64, StabilityError> {
    if order.is_classical() {
        Err(StabilityError::UnitOrder)
    } else {
        Ok(1.0 / (1.0 - order.value()))
    }
}

/// The four sufficient CF conditions satisfied by `lambda`.
pub fn cf_conditions(
    lambda: Complex64,
    order: FractionalOrder,
) -> Result<Vec<Criterion>, StabilityError> {
    let threshold = cf_threshold(order)?;
    let mut out = Vec::new();
    if lambda.norm() >= threshold && lambda != Complex64::new(threshold, 0.0) {
        out.push(Criterion::CfModulus);
    }
    if lambda.re > threshold {
        out.push(Criterion::CfRealAbove);
    }
    if lambda.re < 0.0 {
        out.push(Criterion::CfLeftHalfPlane);
    }
    if lambda.im.abs() > threshold / 2.0 {
        out.push(Criterion::CfImaginary);
    }
    Ok(out)
}

pub fn cf_stable_theorem(
    spectrum: &[Complex64],
    order: FractionalOrder,
) -> Result<StabilityVerdict, StabilityError> {
    cf_threshold(order)?;
    Ok(StabilityVerdict::collect(
        StabilityTest::CfTheorem,
        order,
        spectrum,
        |l| cf_conditions(l, order).expect("order checked above"),
    ))
}

/// `|l - c| > c` with `c = 1/(2(1-alpha))`, evaluated as
/// `(1 - alpha) |l|^2 > Re l` so that it is exactly monotone in `alpha`.
pub fn cf_stable_disk(lambda: Complex64, order: FractionalOrder) -> Result<bool, StabilityError> {
    cf_threshold(order)?;
    Ok((1.0 - order.value()) * lambda.norm_sqr() > lambda.re)
}

pub fn cf_disk_verdict(
    spectrum: &[Complex64],
    order: FractionalOrder,
) -> Result<StabilityVerdict, StabilityError> {
    cf_threshold(order)?;
    Ok(StabilityVerdict::collect(
        StabilityTest::CfDisk,
        order,
        spectrum,
        |l| {
            if cf_stable_disk(l, order).expect("order checked above") {
                vec![Criterion::CfOutsideDisk]
            } else {
                vec![]
            }
        },
    ))
}

/// Position of an eigenvalue relative to both stability regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionClass {
    /// Stable under both operators.
    A,
    /// Caputo-stable only.
    B,
    /// Unstable under both.
    C,
    /// CF-stable only.
    D,
}

pub fn classify_region(
    lambda: Complex64,
    order: FractionalOrder,
) -> Result<RegionClass, StabilityError> {
    let cf = cf_stable_disk(lambda, order)?;
    Ok(match (caputo_cone_stable(lambda, order), cf) {
        (true, true) => RegionClass::A,
        (true, false) => RegionClass::B,
        (false, false) => RegionClass::C,
        (false, true) => RegionClass::D,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Condition {
    pub name: &'static str,
    pub satisfied: bool,
}

/// Name of the aggregated Caputo row in [`table1_conditions`].
pub const CAPUTO_ROW: &str = "caputo row";
/// Name of the aggregated CF row in [`table1_conditions`].
pub const CF_ROW: &str = "cf row";

/// Closed-form stability conditions of the summary table, as raw booleans.
///
/// Each entry is one inequality; the two aggregated rows combine them the
/// way the table does. Nothing here is cross-checked against the spectrum.
pub fn table1_conditions(
    params: &ModelParams,
    order: FractionalOrder,
    kind: EquilibriumKind,
) -> Vec<Table1Condition> {
    let [a1, a2, a3, a4, a5, a6, a7] = params.coefficients();
    let alpha = order.value();
    let threshold = 1.0 / (1.0 - alpha);
    let cond = |name, satisfied| Table1Condition { name, satisfied };
    // Both roots of l^2 - s l + p real and above the CF threshold.
    let pair_above = |sum: f64, disc: f64, denom: f64| {
        disc >= 0.0
            && (sum - disc.sqrt()) / denom > threshold
            && (sum + disc.sqrt()) / denom > threshold
    };

    match kind {
        EquilibriumKind::E0 => {
            let cf = a1 > threshold;
            vec![
                cond("a1 > 1/(1-alpha)", cf),
                cond(CAPUTO_ROW, false),
                cond(CF_ROW, cf),
            ]
        }
        EquilibriumKind::E1 => {
            let y_stable = a1 * a4 < a2 * a3 - a2;
            let z_stable = a1 * a6 < a2 * a5 - a2;
            let y_cf = (a1 * a4 - a2 * a3) / a2 > alpha / (1.0 - alpha);
            let z_cf = (a1 * a6 - a2 * a5) / a2 > alpha / (1.0 - alpha);
            vec![
                cond("a1*a4 < a2*a3 - a2", y_stable),
                cond("a1*a6 < a2*a5 - a2", z_stable),
                cond("(a1*a4 - a2*a3)/a2 > alpha/(1-alpha)", y_cf),
                cond("(a1*a6 - a2*a5)/a2 > alpha/(1-alpha)", z_cf),
                cond(CAPUTO_ROW, y_stable && z_stable),
                cond(CF_ROW, (y_stable && z_stable) || (y_cf && z_cf)),
            ]
        }
        EquilibriumKind::E2 => {
            let chain = (a5 - 1.0) / a6 < a1 / a2 && a1 / a2 < (a3 - 1.0) / a4;
            let lambda1 = 1.0 - a3 - a4 / a6 * (1.0 - a5);
            let l1 = lambda1 > threshold;
            let disc =
                a2 * a2 * (1.0 - a5).powi(2) + 4.0 * a6 * (1.0 - a5) * (a1 * a6 + a2 * (1.0 - a5));
            let l23 = pair_above(a2 * (1.0 - a5), disc, 2.0 * a6);
            vec![
                cond("(a5-1)/a6 < a1/a2 < (a3-1)/a4", chain),
                cond("1 - a3 - (a4/a6)(1-a5) > 1/(1-alpha)", l1),
                cond("lambda_2,3 real and > 1/(1-alpha)", l23),
                cond(CAPUTO_ROW, chain),
                cond(CF_ROW, chain || (l1 && l23)),
            ]
        }
        EquilibriumKind::E3 => {
            let chain = (a3 - 1.0) / a4 < a1 / a2 && a1 / a2 < (a5 - 1.0) / a6;
            let w = 1.0 - a5 - a6 / a4 * (1.0 - a3) + a7 / a4 * (a1 * a4 + a2 * (1.0 - a3));
            let l1 = w > threshold;
            let disc =
                a2 * a2 * (1.0 - a3).powi(2) + 4.0 * a4 * (1.0 - a3) * (a1 * a4 + a2 * (1.0 - a3));
            let l23 = pair_above(a2 * (1.0 - a3), disc, 2.0 * a4);
            vec![
                cond("(a3-1)/a4 < a1/a2 < (a5-1)/a6", chain),
                cond(
                    "w = 1 - a5 - (a6/a4)(1-a3) + (a7/a4)[a1*a4 + a2(1-a3)] > 1/(1-alpha)",
                    l1,
                ),
                cond("lambda_2,3 real and > 1/(1-alpha)", l23),
                cond(CAPUTO_ROW, chain),
                cond(CF_ROW, chain || (l1 && l23)),
            ]
        }
        EquilibriumKind::E4 => {
            let w = a4 * (1.0 + a1 * a7 - a5) + (a6 - a2 * a7) * (a3 - 1.0);
            let bound = a2 * a4 * (a3 - 1.0) * (w + a2 * (a3 - 1.0))
                / (w * (a2 + a4) + a2 * a4 * (a3 - 1.0));
            let surrogate = a6 > bound;
            let point = equilibria(params)[EquilibriumKind::E4.index()].point;
            let spectrum = eigenvalues(&jacobian(params, &point));
            let all_above = spectrum
                .eigenvalues
                .iter()
                .all(|l| l.im == 0.0 && l.re > threshold);
            vec![
                cond(
                    "a6 > a2*a4*(a3-1)[w + a2(a3-1)] / (w(a2+a4) + a2*a4*(a3-1))",
                    surrogate,
                ),
                cond(
                    "routh-hurwitz on the characteristic cubic",
                    routh_hurwitz_cubic(&spectrum.coefficients),
                ),
                cond("lambda_1,2,3 real and > 1/(1-alpha)", all_above),
                cond(CAPUTO_ROW, surrogate),
                cond(CF_ROW, surrogate || all_above),
            ]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub equilibrium: Equilibrium,
    pub spectrum: Spectrum,
    pub caputo: StabilityVerdict,
    /// `None` at `alpha = 1`, where the CF criteria do not apply.
    pub cf_theorem: Option<StabilityVerdict>,
    pub cf_disk: Option<StabilityVerdict>,
    pub table1: Vec<Table1Condition>,
    pub regions: Option<Vec<RegionClass>>,
}

pub fn equilibrium_report(params: &ModelParams, order: FractionalOrder) -> Vec<EquilibriumReport> {
    equilibria(params)
        .into_iter()
        .map(|equilibrium| {
            let spectrum = eigenvalues(&jacobian(params, &equilibrium.point));
            let ev = &spectrum.eigenvalues;
            let regions = ev
                .iter()
                .map(|&l| classify_region(l, order))
                .collect::<Result<Vec<_>, _>>()
                .ok();
            EquilibriumReport {
                caputo: caputo_stable(ev, order),
                cf_theorem: cf_stable_theorem(ev, order).ok(),
                cf_disk: cf_disk_verdict(ev, order).ok(),
                table1: table1_conditions(params, order, equilibrium.kind),
                regions,
                spectrum,
                equilibrium,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    fn row(conds: &[Table1Condition], name: &str) -> bool {
        conds.iter().find(|c| c.name == name).unwrap().satisfied
    }

    #[test]
    fn caputo_examples() {
        assert!(
            caputo_stable(
                &[c(-0.083, 2.914), c(-0.083, -2.914), c(-2.0, 0.0)],
                order(0.98)
            )
            .stable
        );
        assert!(!caputo_stable(&[c(-1.0, 0.0), c(15.0, 0.0), c(-2.0, 0.0)], order(0.3)).stable);
        assert!(
            caputo_stable(
                &[c(0.276, 4.123), c(0.276, -4.123), c(-1.053, 0.0)],
                order(0.6)
            )
            .stable
        );
        // Zero eigenvalue and the cone edge are unstable.
        assert!(!caputo_stable(&[c(0.0, 0.0)], order(0.5)).stable);
        // arg(1 + i) = pi/4 = 0.5 * pi/2 exactly.
        assert!(!caputo_cone_stable(c(1.0, 1.0), order(0.5)));
        assert!(caputo_cone_stable(c(1.0, 1.0), order(0.4999)));
    }

    #[test]
    fn caputo_classical_limit() {
        let v = caputo_stable(&[c(-1e-9, 100.0), c(1e-9, 100.0)], order(1.0));
        assert_eq!(v.per_eigenvalue[0].satisfied, vec![Criterion::Classical]);
        assert!(v.per_eigenvalue[1].satisfied.is_empty());
    }

    #[test]
    fn cf_theorem_examples() {
        let v = cf_stable_theorem(&[c(-3.0, 0.0), c(-3.0, 0.0), c(3.0, 0.0)], order(0.6)).unwrap();
        assert!(v.stable);
        assert_eq!(
            v.per_eigenvalue[2].satisfied,
            vec![Criterion::CfModulus, Criterion::CfRealAbove]
        );
        assert_eq!(
            v.per_eigenvalue[0].satisfied,
            vec![Criterion::CfModulus, Criterion::CfLeftHalfPlane]
        );
        let v = cf_stable_theorem(&[c(-1.0, 0.0)], order(0.6)).unwrap();
        assert_eq!(
            v.per_eigenvalue[0].satisfied,
            vec![Criterion::CfLeftHalfPlane]
        );
        assert!(
            cf_stable_theorem(&[c(-1.0, 0.0); 3], order(0.2))
                .unwrap()
                .stable
        );
        let v = cf_stable_theorem(
            &[c(-0.25, 2.727), c(-0.25, -2.727), c(16.0, 0.0)],
            order(0.66),
        )
        .unwrap();
        assert!(v.stable);
        assert!(v.per_eigenvalue[0]
            .satisfied
            .contains(&Criterion::CfImaginary));
        assert!(v.per_eigenvalue[2]
            .satisfied
            .contains(&Criterion::CfModulus));
        assert_eq!(
            cf_stable_theorem(&[c(1.0, 0.0)], order(1.0)),
            Err(StabilityError::UnitOrder)
        );
    }

    #[test]
    fn cf_threshold_point_excluded_from_condition_one() {
        let v = cf_conditions(c(2.0, 0.0), order(0.5)).unwrap();
        assert!(v.is_empty(), "{v:?}");
    }

    #[test]
    fn disk_examples() {
        assert!(cf_stable_disk(c(6.0, 0.0), order(0.6)).unwrap());
        for a in [0.1, 0.5, 0.9] {
            let centre = 1.0 / (2.0 * (1.0 - a));
            assert!(!cf_stable_disk(c(centre, 0.0), order(a)).unwrap());
            assert!(!cf_stable_disk(c(0.0, 0.0), order(a)).unwrap());
            assert!(!cf_stable_disk(c(2.0 * centre * (1.0 - 1e-9), 0.0), order(a)).unwrap());
            assert!(cf_stable_disk(c(2.0 * centre * (1.0 + 1e-9), 0.0), order(a)).unwrap());
            assert!(cf_stable_disk(c(-1e-9, 0.0), order(a)).unwrap());
        }
        assert!(cf_stable_disk(c(1.0, 0.0), order(1.0)).is_err());
    }

    #[test]
    fn region_examples() {
        assert_eq!(
            classify_region(c(-1.0, 5.0), order(0.5)).unwrap(),
            RegionClass::A
        );
        assert_eq!(
            classify_region(c(1.333, 0.0), order(0.6)).unwrap(),
            RegionClass::C
        );
        assert_eq!(
            classify_region(c(6.0, 0.0), order(0.6)).unwrap(),
            RegionClass::D
        );
        // Inside the disk but outside the cone.
        assert_eq!(
            classify_region(c(0.2, 0.5), order(0.5)).unwrap(),
            RegionClass::B
        );
    }

    #[test]
    fn table1_example1() {
        let ex1 = ModelParams::new([3.0, 0.5, 4.0, 3.0, 4.0, 9.0, 4.0]).unwrap();
        let e0 = table1_conditions(&ex1, order(0.98), EquilibriumKind::E0);
        assert!(!row(&e0, "a1 > 1/(1-alpha)"));
        assert!(!row(&e0, CAPUTO_ROW));
        let e0 = table1_conditions(&ex1, order(0.66), EquilibriumKind::E0);
        assert!(row(&e0, "a1 > 1/(1-alpha)"));
        assert!(row(&e0, CF_ROW));
        // 3/9 < 6 holds but 6 < (4-1)/3 = 1 does not.
        let e2 = table1_conditions(&ex1, order(0.98), EquilibriumKind::E2);
        assert!(!row(&e2, "(a5-1)/a6 < a1/a2 < (a3-1)/a4"));
        assert!(!row(&e2, CAPUTO_ROW));
    }

    #[test]
    fn table1_eps1_matches_spectrum() {
        // Both predator invasion rates negative: the Caputo row holds and
        // the spectrum is in the left half plane.
        let p = ModelParams::new([1.0, 2.0, 3.0, 1.0, 2.5, 1.0, 1.0]).unwrap();
        let rows = table1_conditions(&p, order(0.5), EquilibriumKind::E1);
        assert!(row(&rows, CAPUTO_ROW));
        let rep = &equilibrium_report(&p, order(0.5))[1];
        assert!(rep.spectrum.max_real_part() < 0.0);
    }

    #[test]
    fn reports_at_unit_order() {
        let ex1 = ModelParams::new([3.0, 0.5, 4.0, 3.0, 4.0, 9.0, 4.0]).unwrap();
        let reps = equilibrium_report(&ex1, order(1.0));
        assert_eq!(reps.len(), 5);
        assert!(reps
            .iter()
            .all(|r| r.cf_theorem.is_none() && r.cf_disk.is_none() && r.regions.is_none()));
        assert!(reps[2].caputo.stable);
    }
}
