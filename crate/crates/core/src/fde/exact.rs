use num_complex::Complex64;

use super::{FdeError, FractionalOrder};

/// Exact solution of the scalar CF problem `D x = lambda x`, `x(0) = x0`,
/// with `M = 1`, in its integral form
/// `x(t) = x0 + (1 - a)(g(t) - g(0)) + a * integral g`:
///
/// ```text
/// x(t) = x0 * exp(a * lambda * t / (1 - (1 - a) * lambda))
/// ```
pub fn linear_cf_exact(
    lambda: Complex64,
    order: FractionalOrder,
    x0: Complex64,
    t: f64,
) -> Result<Complex64, FdeError> {
    let alpha = order.value();
    let denominator = Complex64::new(1.0, 0.0) - (1.0 - alpha) * lambda;
    if denominator.norm() <= f64::EPSILON {
        return Err(FdeError::SingularLinearProblem);
    }
    Ok(x0 * (alpha * lambda * t / denominator).exp())
}
