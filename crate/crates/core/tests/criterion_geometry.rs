use lvfrac::stability::{caputo_cone_stable, cf_conditions};
use lvfrac::{
    caputo_stable, cf_stable_disk, cf_stable_theorem, classify_region, FractionalOrder, RegionClass,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

/// Eigenvalues scaled to the disk radius so that every region is sampled.
fn lambda_and_alpha() -> impl Strategy<Value = (Complex64, f64)> {
    (-3.0f64..3.0, -3.0f64..3.0, 0.001f64..0.999).prop_map(|(x, y, a)| {
        let c = 1.0 / (2.0 * (1.0 - a));
        (Complex64::new(x * c, y * c), a)
    })
}

fn distance_to_circle(l: Complex64, a: f64) -> f64 {
    let c = 1.0 / (2.0 * (1.0 - a));
    ((l - c).norm() - c).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4096))]

    #[test]
    fn theorem_conditions_imply_outside_disk((l, a) in lambda_and_alpha()) {
        prop_assume!(distance_to_circle(l, a) >= 1e-12);
        if !cf_conditions(l, order(a)).unwrap().is_empty() {
            prop_assert!(cf_stable_disk(l, order(a)).unwrap());
        }
    }

    #[test]
    fn cone_shrinks_with_alpha((l, a1) in lambda_and_alpha(), frac in 0.0f64..1.0) {
        let a2 = a1 * frac;
        prop_assume!(a2 > 0.0);
        if caputo_cone_stable(l, order(a1)) {
            prop_assert!(caputo_cone_stable(l, order(a2)));
        }
    }

    #[test]
    fn disks_are_nested((l, a1) in lambda_and_alpha(), frac in 0.0f64..1.0) {
        let a2 = a1 * frac;
        prop_assume!(a2 > 0.0);
        if !cf_stable_disk(l, order(a2)).unwrap() {
            prop_assert!(!cf_stable_disk(l, order(a1)).unwrap());
        }
    }

    #[test]
    fn left_half_plane_is_stable_for_both(re in -50.0f64..-1e-300, im in -50.0f64..50.0, a in 0.001f64..0.999) {
        let l = Complex64::new(re, im);
        prop_assert!(caputo_stable(&[l], order(a)).stable);
        prop_assert!(cf_stable_theorem(&[l], order(a)).unwrap().stable);
        prop_assert!(cf_stable_disk(l, order(a)).unwrap());
        prop_assert_eq!(classify_region(l, order(a)).unwrap(), RegionClass::A);
    }

    #[test]
    fn regions_partition_the_plane((l, a) in lambda_and_alpha()) {
        let cone = caputo_cone_stable(l, order(a));
        let disk = cf_stable_disk(l, order(a)).unwrap();
        let expected = match (cone, disk) {
            (true, true) => RegionClass::A,
            (true, false) => RegionClass::B,
            (false, false) => RegionClass::C,
            (false, true) => RegionClass::D,
        };
        prop_assert_eq!(classify_region(l, order(a)).unwrap(), expected);
    }

    #[test]
    fn verdict_is_conjunction_of_eigenvalue_checks(
        ls in proptest::collection::vec(lambda_and_alpha(), 3),
    ) {
        let a = ls[0].1;
        let spectrum: Vec<Complex64> = ls.iter().map(|(l, _)| *l).collect();
        for v in [caputo_stable(&spectrum, order(a)), cf_stable_theorem(&spectrum, order(a)).unwrap()] {
            prop_assert_eq!(v.stable, v.per_eigenvalue.iter().all(|e| !e.satisfied.is_empty()));
            prop_assert_eq!(v.per_eigenvalue.len(), 3);
        }
    }
}

#[test]
fn classical_order_uses_left_half_plane() {
    let one = order(1.0);
    assert!(caputo_stable(&[Complex64::new(-1e-12, 1e6)], one).stable);
    assert!(!caputo_stable(&[Complex64::new(0.0, 1.0)], one).stable);
    assert!(cf_stable_disk(Complex64::new(-1.0, 0.0), one).is_err());
    assert!(classify_region(Complex64::new(-1.0, 0.0), one).is_err());
}
