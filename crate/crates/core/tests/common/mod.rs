//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use lvfrac::{CubicBranch, CubicCoefficients};
use nalgebra::{Matrix3, Schur};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Relative spreads below which companion eigenvalues are treated as a
/// triple or double root. Eigenvalue error for a defective root grows like
/// the cube or square root of machine precision.
const TRIPLE: f64 = 1e-4;
const DOUBLE: f64 = 1e-6;

fn newton(
    z: Complex64,
    f: impl Fn(Complex64) -> Complex64,
    df: impl Fn(Complex64) -> Complex64,
) -> Complex64 {
    let mut z = z;
    for _ in 0..8 {
        let d = df(z);
        if d.norm() == 0.0 {
            break;
        }
        let candidate = z - f(z) / d;
        if f(candidate).norm() < f(z).norm() {
            z = candidate;
        } else {
            break;
        }
    }
    z
}

/// Roots of `l^3 + a l^2 + b l + c` as eigenvalues of the companion
/// matrix, refined by Newton's method. A double root is refined as a root
/// of `L'` and a triple root is `-a/3`, since eigenvalues of defective
/// matrices are only accurate to the square or cube root of machine
/// precision.
pub fn companion_roots(coeffs: &CubicCoefficients) -> [Complex64; 3] {
    let CubicCoefficients { a, b, c } = *coeffs;
    let companion = Matrix3::new(0.0, 0.0, -c, 1.0, 0.0, -b, 0.0, 1.0, -a);
    let mut roots = schur_eigenvalues(companion);

    let l = |z: Complex64| ((z + a) * z + b) * z + c;
    let dl = |z: Complex64| (3.0 * z + 2.0 * a) * z + b;
    let ddl = |z: Complex64| 6.0 * z + 2.0 * a;
    let scale = 1f64.max(a.abs()).max(b.abs().sqrt()).max(c.abs().cbrt());
    let close = |i: usize, j: usize, tol: f64| (roots[i] - roots[j]).norm() <= tol * scale;

    if close(0, 1, TRIPLE) && close(1, 2, TRIPLE) && close(0, 2, TRIPLE) {
        let z = Complex64::new(-a / 3.0, 0.0);
        return [z; 3];
    }
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if close(i, j, DOUBLE) {
            let mean = (roots[i] + roots[j]) / 2.0;
            let double = Complex64::new(newton(Complex64::new(mean.re, 0.0), dl, ddl).re, 0.0);
            roots[i] = double;
            roots[j] = double;
            roots[k] = newton(roots[k], l, dl);
            return roots;
        }
    }
    roots.map(|z| newton(z, l, dl))
}

/// The unbounded QR iteration behind `complex_eigenvalues` never returns
/// on some nilpotent matrices, so iterations are capped and a failed
/// decomposition is retried on a shifted matrix.
fn schur_eigenvalues(m: Matrix3<f64>) -> [Complex64; 3] {
    for shift in [0.0, 1.0, -2.5, 0.375] {
        let shifted = m + Matrix3::identity() * shift;
        if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, 10_000) {
            let ev = schur.complex_eigenvalues();
            return [ev[0], ev[1], ev[2]].map(|z| z - shift);
        }
    }
    panic!("Schur decomposition failed for {m}");
}

fn from_roots(r: [Complex64; 3]) -> CubicCoefficients {
    let a = -(r[0] + r[1] + r[2]);
    let b = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
    let c = -(r[0] * r[1] * r[2]);
    CubicCoefficients::new(a.re, b.re, c.re)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A random cubic aimed at `branch`. Repeated roots are drawn from small
/// dyadic values so that the coefficients are exact.
pub fn cubic_for_branch(rng: &mut impl Rng, branch: CubicBranch) -> CubicCoefficients {
    match branch {
        CubicBranch::ThreeReal => from_roots([
            real(rng.gen_range(-10.0..10.0)),
            real(rng.gen_range(-10.0..10.0)),
            real(rng.gen_range(-10.0..10.0)),
        ]),
        CubicBranch::OneRealPair => {
            let re = rng.gen_range(-10.0..10.0);
            let im = rng.gen_range(0.01..10.0);
            from_roots([
                real(rng.gen_range(-10.0..10.0)),
                Complex64::new(re, im),
                Complex64::new(re, -im),
            ])
        }
        CubicBranch::Repeated => {
            fn dyadic(rng: &mut impl Rng) -> f64 {
                f64::from(rng.gen_range(-64..=64)) / 8.0
            }
            let double = dyadic(rng);
            let single = if rng.gen_bool(0.2) {
                double
            } else {
                dyadic(rng)
            };
            from_roots([real(double), real(double), real(single)])
        }
    }
}

pub fn random_coefficients(rng: &mut impl Rng) -> CubicCoefficients {
    CubicCoefficients::new(
        rng.gen_range(-10.0..10.0),
        rng.gen_range(-10.0..10.0),
        rng.gen_range(-10.0..10.0),
    )
}

/// A mix of branch-targeted and unstructured cubics.
pub fn random_cubic(rng: &mut impl Rng) -> CubicCoefficients {
    match rng.gen_range(0..4) {
        0 => cubic_for_branch(rng, CubicBranch::ThreeReal),
        1 => cubic_for_branch(rng, CubicBranch::OneRealPair),
        2 => cubic_for_branch(rng, CubicBranch::Repeated),
        _ => random_coefficients(rng),
    }
}

/// `(a, b, c)` of `det(l I - J)` recovered from three determinant
/// evaluations at `l = 0, 1, -1`.
pub fn determinant_cubic(j: &[[f64; 3]; 3]) -> CubicCoefficients {
    let m = Matrix3::from_fn(|r, c| j[r][c]);
    let p = |l: f64| (Matrix3::identity() * l - m).determinant();
    let (p0, p1, pm1) = (p(0.0), p(1.0), p(-1.0));
    let c = p0;
    let a = (p1 + pm1) / 2.0 - c;
    let b = (p1 - pm1) / 2.0 - 1.0;
    CubicCoefficients::new(a, b, c)
}
