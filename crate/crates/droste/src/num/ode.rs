//! Embedded Dormand–Prince 5(4) integrator with event location.
//!
//! The right-hand side reports whether it could be evaluated (a geodesic
//! right-hand side fails outside its chart's domain); a failed evaluation
//! rejects the step and shrinks it, so the solution approaches a domain
//! boundary geometrically instead of stepping across it. Events are located
//! by bisection on the cubic Hermite interpolant of each accepted step.

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            max_step: 0.1,
            max_steps: 200_000,
        }
    }
}

/// An event function; a root of it along the solution is an event.
pub type EventFn<'a> = Box<dyn Fn(f64, &[f64]) -> f64 + 'a>;

/// A named event watched during integration.
pub struct EventSpec<'a> {
    pub name: String,
    pub func: EventFn<'a>,
    /// Stop integration at the event (otherwise record and continue).
    pub stop: bool,
}

#[derive(Debug, Clone)]
pub struct EventHit {
    pub name: String,
    pub lambda: f64,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StopReason {
    ReachedEnd,
    /// A stopping event fired (index into the event list).
    EventStop(usize),
    /// The right-hand side became unevaluable and the step underflowed
    /// against that boundary.
    RhsRejected,
    /// Error control forced the step below the representable floor.
    StepUnderflow,
    /// `max_steps` accepted steps without reaching the end.
    StepBudget,
}

#[derive(Debug, Clone)]
pub struct OdeSolution {
    pub lambdas: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub events: Vec<EventHit>,
    pub reason: StopReason,
    pub steps: usize,
}

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
/// 5th-order weights (row 6 of A: the FSAL property).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn hermite(theta: f64, h: f64, y0: &[f64], f0: &[f64], y1: &[f64], f1: &[f64]) -> Vec<f64> {
    let t2 = theta * theta;
    let t3 = t2 * theta;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + theta;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    (0..y0.len())
        .map(|i| h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i])
        .collect()
}

/// Integrate `dy/dλ = rhs(λ, y)` from `lambda0` to `lambda_end` (forward).
pub fn integrate<F>(
    rhs: F,
    y0: &[f64],
    lambda0: f64,
    lambda_end: f64,
    opts: &OdeOptions,
    events: &[EventSpec<'_>],
) -> OdeSolution
where
    F: Fn(f64, &[f64], &mut [f64]) -> bool,
{
    let n = y0.len();
    let span = lambda_end - lambda0;
    assert!(span > 0.0, "integration span must be positive");

    let mut lambdas = vec![lambda0];
    let mut states = vec![y0.to_vec()];
    let mut hits = Vec::new();

    let mut y = y0.to_vec();
    let mut lambda = lambda0;
    let mut f_cur = vec![0.0; n];
    if !rhs(lambda, &y, &mut f_cur) {
        return OdeSolution {
            lambdas,
            states,
            events: hits,
            reason: StopReason::RhsRejected,
            steps: 0,
        };
    }

    let mut e_cur: Vec<f64> = events.iter().map(|ev| (ev.func)(lambda, &y)).collect();

    let mut h = (opts.max_step * 1e-2).min(span);
    let mut steps = 0usize;
    let underflow = |h: f64, lambda: f64| h < 1e-13 * lambda.abs().max(1.0);

    let mut k = vec![vec![0.0; n]; 7];
    while lambda < lambda_end {
        if steps >= opts.max_steps {
            return OdeSolution {
                lambdas,
                states,
                events: hits,
                reason: StopReason::StepBudget,
                steps,
            };
        }
        h = h.min(opts.max_step).min(lambda_end - lambda);
        if underflow(h, lambda) {
            return OdeSolution {
                lambdas,
                states,
                events: hits,
                reason: StopReason::StepUnderflow,
                steps,
            };
        }

        k[0].copy_from_slice(&f_cur);
        let mut ok = true;
        let mut ytmp = vec![0.0; n];
        for stage in 0..6 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    acc += A[stage][j] * kj[i];
                }
                ytmp[i] = y[i] + h * acc;
            }
            let k_next = &mut k.split_at_mut(stage + 1).1[0];
            if !rhs(lambda + C[stage] * h, &ytmp, k_next) {
                ok = false;
                break;
            }
        }
        if !ok {
            h *= 0.5;
            if underflow(h, lambda) {
                return OdeSolution {
                    lambdas,
                    states,
                    events: hits,
                    reason: StopReason::RhsRejected,
                    steps,
                };
            }
            continue;
        }

        // 5th-order candidate (= last stage state thanks to FSAL) and error.
        let mut y5 = vec![0.0; n];
        let mut err_norm_sq = 0.0;
        for i in 0..n {
            let mut s5 = 0.0;
            let mut s4 = 0.0;
            for j in 0..7 {
                s5 += B5[j] * k[j][i];
                s4 += B4[j] * k[j][i];
            }
            y5[i] = y[i] + h * s5;
            let e = h * (s5 - s4);
            let sc = opts.atol + opts.rtol * y[i].abs().max(y5[i].abs());
            err_norm_sq += (e / sc) * (e / sc);
        }
        let err = (err_norm_sq / n as f64).sqrt();

        if !(err <= 1.0) {
            // Rejected; a non-finite error estimate gets the harshest cut.
            h *= if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.2, 1.0)
            } else {
                0.2
            };
            continue;
        }

        // Accepted. k[6] is the derivative at (lambda + h, y5).
        let lambda_new = lambda + h;
        let e_new: Vec<f64> = events.iter().map(|ev| (ev.func)(lambda_new, &y5)).collect();
        let mut stop_at: Option<(usize, f64, Vec<f64>)> = None;
        for (ie, ev) in events.iter().enumerate() {
            let (e0, e1) = (e_cur[ie], e_new[ie]);
            let crossed = (e0 != 0.0 && e1 == 0.0) || e0 * e1 < 0.0;
            if !crossed {
                continue;
            }
            // Bisect the Hermite interpolant for the crossing.
            let (mut t_lo, mut t_hi) = (0.0f64, 1.0f64);
            let mut v_lo = e0;
            for _ in 0..80 {
                let tm = 0.5 * (t_lo + t_hi);
                let ym = hermite(tm, h, &y, &k[0], &y5, &k[6]);
                let vm = (ev.func)(lambda + tm * h, &ym);
                if vm == 0.0 {
                    t_lo = tm;
                    t_hi = tm;
                    break;
                }
                if vm.signum() == v_lo.signum() {
                    t_lo = tm;
                    v_lo = vm;
                } else {
                    t_hi = tm;
                }
                if t_hi - t_lo < 1e-14 {
                    break;
                }
            }
            let t_star = 0.5 * (t_lo + t_hi);
            let y_star = hermite(t_star, h, &y, &k[0], &y5, &k[6]);
            let l_star = lambda + t_star * h;
            hits.push(EventHit {
                name: ev.name.clone(),
                lambda: l_star,
                y: y_star.clone(),
            });
            if ev.stop {
                match &stop_at {
                    Some((_, l_prev, _)) if *l_prev <= l_star => {}
                    _ => stop_at = Some((ie, l_star, y_star)),
                }
            }
        }

        if let Some((ie, l_star, y_star)) = stop_at {
            lambdas.push(l_star);
            states.push(y_star);
            return OdeSolution {
                lambdas,
                states,
                events: hits,
                reason: StopReason::EventStop(ie),
                steps: steps + 1,
            };
        }

        lambda = lambda_new;
        y.copy_from_slice(&y5);
        f_cur.copy_from_slice(&k[6]);
        e_cur = e_new;
        lambdas.push(lambda);
        states.push(y.clone());
        steps += 1;
        h *= (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
    }

    OdeSolution {
        lambdas,
        states,
        events: hits,
        reason: StopReason::ReachedEnd,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        // y'' = -y as a first-order system; solution (cos λ, -sin λ).
        let rhs = |_l: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
            true
        };
        let sol = integrate(
            rhs,
            &[1.0, 0.0],
            0.0,
            2.0 * std::f64::consts::PI,
            &OdeOptions {
                max_step: 0.3,
                ..Default::default()
            },
            &[],
        );
        assert_eq!(sol.reason, StopReason::ReachedEnd);
        let yf = sol.states.last().unwrap();
        assert!((yf[0] - 1.0).abs() < 1e-9, "cos end {yf:?}");
        assert!(yf[1].abs() < 1e-9, "sin end {yf:?}");
    }

    #[test]
    fn event_located_on_zero_crossing() {
        let rhs = |_l: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
            true
        };
        let ev = EventSpec {
            name: "y0_zero".into(),
            func: Box::new(|_l, y: &[f64]| y[0]),
            stop: true,
        };
        let sol = integrate(rhs, &[1.0, 0.0], 0.0, 10.0, &OdeOptions::default(), &[ev]);
        assert_eq!(sol.reason, StopReason::EventStop(0));
        let l = *sol.lambdas.last().unwrap();
        assert!(
            (l - std::f64::consts::FRAC_PI_2).abs() < 1e-8,
            "crossing at {l}"
        );
    }

    #[test]
    fn rhs_rejection_stops_at_boundary() {
        // dy/dλ = 1 but the RHS refuses y >= 1: the solver must stall at the wall.
        let rhs = |_l: f64, y: &[f64], dy: &mut [f64]| {
            if y[0] >= 1.0 {
                return false;
            }
            dy[0] = 1.0;
            true
        };
        let sol = integrate(rhs, &[0.0], 0.0, 5.0, &OdeOptions::default(), &[]);
        assert_eq!(sol.reason, StopReason::RhsRejected);
        let yf = sol.states.last().unwrap()[0];
        assert!(yf <= 1.0 && yf > 0.999, "stalled at {yf}");
    }

    #[test]
    fn non_stopping_event_is_recorded_and_integration_continues() {
        let rhs = |_l: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
            true
        };
        let ev = EventSpec {
            name: "mark".into(),
            func: Box::new(|_l, y: &[f64]| y[0]),
            stop: false,
        };
        let sol = integrate(rhs, &[1.0, 0.0], 0.0, 10.0, &OdeOptions::default(), &[ev]);
        assert_eq!(sol.reason, StopReason::ReachedEnd);
        // cos crosses zero at pi/2, 3pi/2, 5pi/2 within [0, 10]
        assert_eq!(sol.events.len(), 3, "events: {:?}", sol.events);
    }
}
