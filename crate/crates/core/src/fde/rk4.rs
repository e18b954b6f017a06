use super::{
    check_dimensions, is_divergent, FdeError, FractionalOrder, Operator, SolverConfig, Trajectory,
    VectorField,
};

/// Classical fixed-step fourth-order Runge-Kutta, the integer-order
/// reference for both fractional integrators at `alpha = 1`.
pub fn reference_rk4<F: VectorField + ?Sized>(
    field: &F,
    initial: &[f64],
    config: &SolverConfig,
) -> Result<Trajectory, FdeError> {
    check_dimensions(&field, initial)?;
    let d = initial.len();
    let h = config.step();
    let steps = config.num_steps();
    let unit = FractionalOrder::new(1.0)?;
    let mut trajectory =
        Trajectory::with_capacity(initial, h, Operator::Classical, unit, steps + 1);

    let mut x = initial.to_vec();
    let mut stage = vec![0.0; d];
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d]);

    for k in 0..steps {
        let t = k as f64 * h;
        field.evaluate(t, &x, &mut k1);
        for c in 0..d {
            stage[c] = x[c] + 0.5 * h * k1[c];
        }
        field.evaluate(t + 0.5 * h, &stage, &mut k2);
        for c in 0..d {
            stage[c] = x[c] + 0.5 * h * k2[c];
        }
        field.evaluate(t + 0.5 * h, &stage, &mut k3);
        for c in 0..d {
            stage[c] = x[c] + h * k3[c];
        }
        field.evaluate(t + h, &stage, &mut k4);
        for c in 0..d {
            x[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }

        let t_next = (k + 1) as f64 * h;
        if is_divergent(&x) {
            return Err(FdeError::Diverged {
                step: k + 1,
                time: t_next,
                partial: Box::new(trajectory),
            });
        }
        trajectory.push(t_next, &x);
    }
    Ok(trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fde::FnField;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exponential_decay() {
        let field = FnField::new(1, |_, x, dx| dx[0] = -x[0]);
        let tr = reference_rk4(&field, &[1.0], &SolverConfig::new(0.01, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(tr.last_state()[0], 0.367879441171, epsilon = 1e-8);
    }

    #[test]
    fn zero_field_is_constant() {
        let field = FnField::new(3, |_, _, dx| dx.fill(0.0));
        let tr = reference_rk4(
            &field,
            &[1.5, -2.0, 0.25],
            &SolverConfig::new(0.1, 2.0).unwrap(),
        )
        .unwrap();
        assert!(tr.states().all(|x| x == [1.5, -2.0, 0.25]));
    }
}
