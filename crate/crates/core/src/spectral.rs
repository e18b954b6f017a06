//! Closed-form spectra of 3x3 real matrices via their characteristic cubic
//! `L(l) = l^3 + a l^2 + b l + c`.
//!
//! The cubic is depressed with `l = t - a/3` to `t^3 + p t + q`, where
//!
//! ```text
//! p = b - a^2/3
//! q = 2a^3/27 - ab/3 + c
//! D = q^2/4 + p^3/27
//! ```
//!
//! and the sign of the discriminant `D` selects the root formulas.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

use num_complex::Complex64;
use serde::Serialize;

use crate::lotka::JacobianMatrix;

/// Relative width of the band around `D = 0` treated as a repeated root.
pub const REPEATED_ROOT_TOLERANCE: f64 = 1e-12;

/// Monic cubic `l^3 + a l^2 + b l + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CubicCoefficients {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn evaluate(&self, lambda: Complex64) -> Complex64 {
        ((lambda + self.a) * lambda + self.b) * lambda + self.c
    }

    /// `max(1, |a|, |b|, |c|)`, the yardstick for root residuals.
    pub fn scale(&self) -> f64 {
        1f64.max(self.a.abs()).max(self.b.abs()).max(self.c.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CubicBranch {
    /// `D > 0`: one real root and a complex-conjugate pair.
    OneRealPair,
    /// `D = 0` (within tolerance): a double or triple real root.
    Repeated,
    /// `D < 0`: three distinct real roots.
    ThreeReal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicAnalysis {
    pub p: f64,
    pub q: f64,
    pub delta: f64,
    /// `|D|` at or below this selects [`CubicBranch::Repeated`].
    pub band: f64,
    pub branch: CubicBranch,
}

/// Three eigenvalues sorted by (real part, imaginary part), with the cubic
/// they were solved from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: [Complex64; 3],
    pub coefficients: CubicCoefficients,
    pub analysis: CubicAnalysis,
}

impl Spectrum {
    pub fn max_real_part(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| l.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest `|L(l)|` over the three eigenvalues.
    pub fn max_residual(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|&l| self.coefficients.evaluate(l).norm())
            .fold(0.0, f64::max)
    }
}

pub fn compare_complex(x: &Complex64, y: &Complex64) -> Ordering {
    x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
}

/// Smallest max-abs difference over all pairings of two 3-element
/// multisets.
pub fn multiset_distance(x: &[Complex64; 3], y: &[Complex64; 3]) -> f64 {
    const PERMUTATIONS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMUTATIONS
        .iter()
        .map(|p| (0..3).map(|i| (x[i] - y[p[i]]).norm()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

/// `a = -trace`, `b = sum of principal 2x2 minors`, `c = -det`.
pub fn characteristic_cubic(jacobian: &JacobianMatrix) -> CubicCoefficients {
    let m = jacobian.entries();
    let trace = m[0][0] + m[1][1] + m[2][2];
    let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CubicCoefficients {
        a: -trace,
        b: minors,
        c: -det,
    }
}

pub fn cubic_analysis(coeffs: &CubicCoefficients) -> CubicAnalysis {
    let CubicCoefficients { a, b, c } = *coeffs;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let delta = q * q / 4.0 + p * p * p / 27.0;
    // Rounding in p and q alone can move D by this much, which for a
    // cluster of roots far from the origin dwarfs the relative band.
    let p_size = b.abs() + a * a / 3.0;
    let q_size = 2.0 * (a * a * a).abs() / 27.0 + (a * b).abs() / 3.0 + c.abs();
    let rounding = 16.0 * f64::EPSILON * (q.abs() * q_size / 2.0 + p * p * p_size / 9.0);
    let band = (REPEATED_ROOT_TOLERANCE * (q * q).max(p.abs().powi(3))).max(rounding);
    let branch = if delta.abs() <= band {
        CubicBranch::Repeated
    } else if delta > 0.0 {
        CubicBranch::OneRealPair
    } else {
        CubicBranch::ThreeReal
    };
    CubicAnalysis {
        p,
        q,
        delta,
        band,
        branch,
    }
}

/// Roots of a monic cubic by the Cardano / trigonometric formulas.
pub fn cubic_roots(coeffs: &CubicCoefficients) -> Spectrum {
    let analysis = cubic_analysis(coeffs);
    let CubicAnalysis {
        p,
        q,
        delta,
        branch,
        ..
    } = analysis;
    let shift = -coeffs.a / 3.0;

    let mut roots = match branch {
        CubicBranch::OneRealPair => {
            // l = cbrt(-q/2 + sqrt(D)) + cbrt(-q/2 - sqrt(D)) - a/3. The larger
            // cube root is taken first and the other recovered from
            // u v = -p/3, which avoids cancellation between the two terms.
            let root_delta = delta.sqrt();
            let big = if q > 0.0 {
                -q / 2.0 - root_delta
            } else {
                -q / 2.0 + root_delta
            };
            let u = big.cbrt();
            let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
            // Deflating t^3 + p t + q by (t - (u+v)) leaves
            // t^2 + (u+v) t + (u^2 - uv + v^2), with roots
            // -(u+v)/2 +- i sqrt(3)/2 (u - v).
            let real = polish(coeffs, u + v + shift);
            let pair_re = -(u + v) / 2.0 + shift;
            let pair_im = (3f64.sqrt() / 2.0 * (u - v)).abs();
            [
                Complex64::new(real, 0.0),
                Complex64::new(pair_re, -pair_im),
                Complex64::new(pair_re, pair_im),
            ]
        }
        CubicBranch::Repeated => {
            // l1 = -2 cbrt(q/2) - a/3, l2 = l3 = cbrt(q/2) - a/3.
            let r = (q / 2.0).cbrt();
            [
                Complex64::new(polish(coeffs, -2.0 * r + shift), 0.0),
                Complex64::new(r + shift, 0.0),
                Complex64::new(r + shift, 0.0),
            ]
        }
        CubicBranch::ThreeReal => {
            // t = 2 sqrt(-p/3) sin(theta + 2 pi j / 3),
            // sin(3 theta) = 3 sqrt(3) q / (2 sqrt(-p)^3).
            let m = (-p / 3.0).sqrt();
            let s = (3.0 * 3f64.sqrt() * q / (2.0 * (-p).sqrt().powi(3))).clamp(-1.0, 1.0);
            let theta = s.asin() / 3.0;
            let t1 = 2.0 * m * theta.sin();
            let t2 = -2.0 * m * (theta + FRAC_PI_3).sin();
            let t3 = 2.0 * m * (theta + FRAC_PI_6).cos();
            [t1, t2, t3].map(|t| Complex64::new(polish(coeffs, t + shift), 0.0))
        }
    };
    roots.sort_by(compare_complex);
    Spectrum {
        eigenvalues: roots,
        coefficients: *coeffs,
        analysis,
    }
}

/// One Newton step on a simple real root, kept only if it lowers `|L|`.
fn polish(coeffs: &CubicCoefficients, x: f64) -> f64 {
    let CubicCoefficients { a, b, c } = *coeffs;
    let value = |x: f64| ((x + a) * x + b) * x + c;
    let slope = (3.0 * x + 2.0 * a) * x + b;
    let fx = value(x);
    if fx == 0.0 || slope == 0.0 {
        return x;
    }
    let refined = x - fx / slope;
    if refined.is_finite() && value(refined).abs() < fx.abs() {
        refined
    } else {
        x
    }
}

pub fn eigenvalues(jacobian: &JacobianMatrix) -> Spectrum {
    cubic_roots(&characteristic_cubic(jacobian))
}

/// All roots in the open left half-plane iff `a > 0`, `c > 0`, `a b > c`.
pub fn routh_hurwitz_cubic(coeffs: &CubicCoefficients) -> bool {
    coeffs.a > 0.0 && coeffs.c > 0.0 && coeffs.a * coeffs.b > coeffs.c
}
