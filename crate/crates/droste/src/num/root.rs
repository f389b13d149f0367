//! Safeguarded Newton iteration on a bracketing interval.
//!
//! The iterate is clamped to a maintained sign-change bracket; any Newton step
//! that leaves the bracket, meets a vanishing derivative, or fails to shrink
//! the interval falls back to bisection for that step. After a fixed number of
//! Newton attempts the solver switches to pure bisection, so convergence is
//! guaranteed for any continuous monotone residual.

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    /// f(lo) and f(hi) do not straddle zero.
    NoBracket {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },
    /// Function value became non-finite during iteration.
    NonFinite { x: f64 },
    /// Iteration budget exhausted (pathological input).
    IterationLimit { last: f64 },
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NoBracket { lo, hi, flo, fhi } => write!(
                f,
                "no sign change on [{lo:e}, {hi:e}]: f(lo)={flo:e}, f(hi)={fhi:e}"
            ),
            RootError::NonFinite { x } => write!(f, "non-finite residual at x={x:e}"),
            RootError::IterationLimit { last } => {
                write!(f, "iteration limit reached near x={last:e}")
            }
        }
    }
}

impl std::error::Error for RootError {}

/// Solve `f(x) = 0` for `x` in `[lo, hi]` with derivative `df`.
///
/// `rel_tol` bounds the accepted step relative to `scale + |x|`; `scale`
/// protects roots arbitrarily close to zero.
pub fn newton_bisect<F, D>(
    f: F,
    df: D,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    scale: f64,
) -> Result<f64, RootError>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    const NEWTON_STEPS: usize = 50;
    const MAX_STEPS: usize = 250;

    let mut flo = f(lo);
    let fhi = f(hi);
    if !flo.is_finite() {
        return Err(RootError::NonFinite { x: lo });
    }
    if !fhi.is_finite() {
        return Err(RootError::NonFinite { x: hi });
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoBracket { lo, hi, flo, fhi });
    }

    let mut x = 0.5 * (lo + hi);
    for iter in 0..MAX_STEPS {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(RootError::NonFinite { x });
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }

        let mut next = f64::NAN;
        if iter < NEWTON_STEPS {
            let dfx = df(x);
            if dfx != 0.0 && dfx.is_finite() {
                let cand = x - fx / dfx;
                if cand > lo && cand < hi {
                    next = cand;
                }
            }
        }
        if !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= rel_tol * (scale + x.abs()) || hi - lo <= rel_tol * (scale + x.abs()) {
            return Ok(x);
        }
    }
    Err(RootError::IterationLimit { last: x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let r = newton_bisect(|x| x * x * x - 2.0, |x| 3.0 * x * x, 0.0, 2.0, 1e-14, 1.0).unwrap();
        assert!((r - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn survives_flat_derivative_near_endpoint() {
        // f'(0) = 0; pure Newton from the midpoint works, but start the
        // bracket tight around the flat region to exercise the bisection path.
        let f = |x: f64| x * x * x - 1e-9;
        let r = newton_bisect(f, |x| 3.0 * x * x, -1.0, 1.0, 1e-13, 1.0).unwrap();
        assert!((r - 1e-3).abs() < 1e-9, "got {r}");
    }

    #[test]
    fn rejects_unbracketed_interval() {
        let r = newton_bisect(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0, 1e-13, 1.0);
        assert!(matches!(r, Err(RootError::NoBracket { .. })));
    }

    #[test]
    fn exact_endpoint_root_returns_immediately() {
        let r = newton_bisect(|x| x - 1.0, |_| 1.0, 1.0, 2.0, 1e-13, 1.0).unwrap();
        assert_eq!(r, 1.0);
    }
}
