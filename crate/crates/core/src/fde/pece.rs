use statrs::function::gamma::gamma;

use super::weights::WeightTable;
use super::{
    check_dimensions, is_divergent, CfMode, FdeError, FractionalOrder, Operator, SolverConfig,
    Trajectory, VectorField,
};

/// One member of the product-integration PECE family.
struct Scheme {
    operator: Operator,
    /// Exponent of the weight kernel.
    exponent: f64,
    /// Multiplies both history sums.
    prefactor: f64,
    /// Coefficient of `g(t) - g(0)`; zero unless the CF non-integral term
    /// is enabled.
    local: f64,
}

/// Caputo-Fabrizio PECE integration with trapezoid corrector and
/// rectangle predictor:
///
/// ```text
/// x^p_{k+1} = x0 + (a/M) sum_i d_i g_i                 [+ ((1-a)/M)(g_k - g_0)]
/// x_{k+1}   = x0 + (a/M) [sum_i b_i g_i + b_{k+1} g^p]  [+ ((1-a)/M)(g^p - g_0)]
/// ```
///
/// The bracketed terms are only present in [`CfMode::Corrected`].
pub fn integrate_cf<F: VectorField + ?Sized>(
    field: &F,
    initial: &[f64],
    order: FractionalOrder,
    config: &SolverConfig,
) -> Result<Trajectory, FdeError> {
    let alpha = order.value();
    let m = config.normalization();
    let local = match config.cf_mode() {
        CfMode::Standard => 0.0,
        CfMode::Corrected => (1.0 - alpha) / m,
    };
    let scheme = Scheme {
        operator: Operator::Cf,
        exponent: 1.0,
        prefactor: alpha / m,
        local,
    };
    run(field, initial, order, config, &scheme)
}

/// Fractional Adams-Bashforth-Moulton integration for the Caputo operator.
pub fn integrate_caputo<F: VectorField + ?Sized>(
    field: &F,
    initial: &[f64],
    order: FractionalOrder,
    config: &SolverConfig,
) -> Result<Trajectory, FdeError> {
    let alpha = order.value();
    let prefactor = if order.is_classical() {
        1.0
    } else {
        1.0 / gamma(alpha)
    };
    let scheme = Scheme {
        operator: Operator::Caputo,
        exponent: alpha,
        prefactor,
        local: 0.0,
    };
    run(field, initial, order, config, &scheme)
}

fn run<F: VectorField + ?Sized>(
    field: &F,
    initial: &[f64],
    order: FractionalOrder,
    config: &SolverConfig,
    scheme: &Scheme,
) -> Result<Trajectory, FdeError> {
    check_dimensions(&field, initial)?;
    let d = initial.len();
    let h = config.step();
    let steps = config.num_steps();
    let weights = WeightTable::new(scheme.exponent, h, steps);

    let mut trajectory = Trajectory::with_capacity(initial, h, scheme.operator, order, steps + 1);
    // g(t_i, x_i) for every accepted step, row-major.
    let mut history = Vec::with_capacity((steps + 1) * d);
    history.resize(d, 0.0);
    field.evaluate(0.0, initial, &mut history[..d]);
    let g0 = history[..d].to_vec();

    let mut acc = vec![0.0; d];
    let mut predicted = vec![0.0; d];
    let mut g_pred = vec![0.0; d];
    let mut next = vec![0.0; d];

    for k in 0..steps {
        let t_next = (k + 1) as f64 * h;

        acc.fill(0.0);
        for (i, g) in history.chunks_exact(d).enumerate() {
            let w = weights.predictor[k - i];
            for (a, gi) in acc.iter_mut().zip(g) {
                *a += w * gi;
            }
        }
        let g_k = &history[k * d..(k + 1) * d];
        for c in 0..d {
            predicted[c] = initial[c] + scheme.prefactor * acc[c];
            if scheme.local != 0.0 {
                predicted[c] += scheme.local * (g_k[c] - g0[c]);
            }
        }
        field.evaluate(t_next, &predicted, &mut g_pred);

        let first = weights.corrector_first(k);
        for (a, gi) in acc.iter_mut().zip(&g0) {
            *a = first * gi;
        }
        for (i, g) in history.chunks_exact(d).enumerate().skip(1) {
            let w = weights.interior[k - i];
            for (a, gi) in acc.iter_mut().zip(g) {
                *a += w * gi;
            }
        }
        let last = weights.corrector_last();
        for c in 0..d {
            next[c] = initial[c] + scheme.prefactor * (acc[c] + last * g_pred[c]);
            if scheme.local != 0.0 {
                next[c] += scheme.local * (g_pred[c] - g0[c]);
            }
        }

        if is_divergent(&next) {
            return Err(FdeError::Diverged {
                step: k + 1,
                time: t_next,
                partial: Box::new(trajectory),
            });
        }
        trajectory.push(t_next, &next);
        let offset = history.len();
        history.resize(offset + d, 0.0);
        field.evaluate(t_next, &next, &mut history[offset..]);
    }
    Ok(trajectory)
}
