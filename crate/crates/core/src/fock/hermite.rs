use std::f64::consts::PI;

/// Oscillator eigenfunctions `psi_0(x) .. psi_n_max(x)`,
/// `psi_n(x) = pi^(-1/4) (2^n n!)^(-1/2) H_n(x) exp(-x^2/2)`, by the
/// normalized three-term recurrence.
pub fn oscillator_functions(x: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let psi0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(psi0);
    if n_max == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * psi0);
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    #[test]
    fn explicit_low_orders() {
        let x = 0.7f64;
        let psi = oscillator_functions(x, 3);
        let g = PI.powf(-0.25) * (-x * x / 2.0).exp();
        assert!((psi[2] - g * (4.0 * x * x - 2.0) / 8f64.sqrt()).abs() < 1e-15);
        assert!((psi[3] - g * (8.0 * x.powi(3) - 12.0 * x) / 48f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn orthonormal() {
        for (m, n) in [(0, 0), (5, 5), (30, 30), (3, 5), (12, 30)] {
            let v = integrate(
                |x| {
                    let p = oscillator_functions(x, 30);
                    p[m] * p[n]
                },
                -14.0,
                14.0,
                1e-13,
            );
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-11, "({m},{n}) {v}");
        }
    }
}
