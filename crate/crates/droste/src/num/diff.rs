//! Central finite differences.
//!
//! All derivative estimates in the crate go through the same scheme: 4th-order
//! central stencils with per-coordinate step `1e-4 * max(1, |x|)`, plus one
//! Richardson level when a derivative of an already-differenced quantity is
//! taken (so that second derivatives of metric components keep roughly eight
//! significant digits on analytic inputs).

/// Step size for differencing with respect to a coordinate of magnitude `x`.
pub fn step_for(x: f64) -> f64 {
    1e-4 * x.abs().max(1.0)
}

/// 4th-order central first derivative of a scalar function.
pub fn central4<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

/// One Richardson extrapolation level on top of [`central4`].
///
/// The 4th-order stencil has error `c·h⁴ + O(h⁶)`; combining evaluations at
/// `h` and `h/2` cancels the `h⁴` term.
pub fn central4_richardson<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d_h = central4(&f, x, h);
    let d_half = central4(&f, x, 0.5 * h);
    (16.0 * d_half - d_h) / 15.0
}

/// Partial derivative of a vector-valued map along coordinate `axis`.
///
/// `f` receives a full coordinate tuple; the returned vector has the same
/// length as `f`'s output.
pub fn partial_vec<F>(f: F, x: &[f64], axis: usize, h: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let eval = |offset: f64| {
        let mut y = x.to_vec();
        y[axis] += offset;
        f(&y)
    };
    let p1 = eval(h);
    let m1 = eval(-h);
    let p2 = eval(2.0 * h);
    let m2 = eval(-2.0 * h);
    p1.iter()
        .zip(&m1)
        .zip(p2.iter().zip(&m2))
        .map(|((a, b), (c, d))| (8.0 * (a - b) - (c - d)) / (12.0 * h))
        .collect()
}

/// Jacobian `J[i][j] = ∂f_i/∂x_j` of a vector-valued map, 4th-order stencils.
pub fn jacobian<F>(f: F, x: &[f64]) -> Vec<Vec<f64>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = x.len();
    let m = f(x).len();
    let mut jt: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        jt.push(partial_vec(&f, x, j, step_for(x[j])));
    }
    (0..m).map(|i| (0..n).map(|j| jt[j][i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_derivative_of_exp_is_exp() {
        let d = central4(|x| x.exp(), 1.0, step_for(1.0));
        assert!((d - 1f64.exp()).abs() < 1e-11, "got {d}");
    }

    #[test]
    fn richardson_sharpens_oscillatory_derivative() {
        // Step chosen large enough that truncation (not rounding) dominates
        // the plain stencil, so the extrapolation has something to remove.
        let f = |x: f64| (3.0 * x).sin();
        let exact = 3.0 * (3.0f64 * 0.7).cos();
        let h = 1e-2;
        let plain = central4(f, 0.7, h);
        let refined = central4_richardson(f, 0.7, h);
        assert!((plain - exact).abs() > 1e-11);
        assert!(
            (refined - exact).abs() < 1e-12,
            "refined err {}",
            (refined - exact).abs()
        );
        assert!((refined - exact).abs() < (plain - exact).abs());
    }

    #[test]
    fn jacobian_of_polar_map() {
        // (r, phi) -> (r cos phi, r sin phi)
        let f = |x: &[f64]| vec![x[0] * x[1].cos(), x[0] * x[1].sin()];
        let x = [2.0, 0.6];
        let j = jacobian(f, &x);
        let (c, s) = (0.6f64.cos(), 0.6f64.sin());
        let expect = [[c, -2.0 * s], [s, 2.0 * c]];
        for i in 0..2 {
            for k in 0..2 {
                assert!((j[i][k] - expect[i][k]).abs() < 1e-10);
            }
        }
    }
}
