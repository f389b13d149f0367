//! Batch geodesic experiments: capture inside the trapped regions, the
//! non-traversability of the interior, and a maximality sweep.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charts::ks::{self, KsProfile, Region};
use crate::charts::{self};

use super::{integrate, GeodesicError, IntegrationConfig, Termination};

/// Tolerance for strict radial monotonicity between consecutive samples.
const MONOTONE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct CaptureReport {
    pub mass: f64,
    pub trials: usize,
    /// Launches in the trapped wedge (u > 0, v < 0) whose area radius
    /// decreased strictly to the end of the trajectory.
    pub captured: usize,
    /// Launches in the anti-trapped wedge (u < 0, v > 0) whose area radius
    /// increased strictly until the trajectory left through the horizon.
    pub expelled: usize,
    /// Diagnostics for any launch that violated its monotonicity claim.
    pub violations: Vec<String>,
}

fn radius_series(profile: &KsProfile, traj: &super::Trajectory) -> Vec<f64> {
    traj.samples
        .iter()
        .filter_map(|s| profile.f_inv(s.position[0] * s.position[1]).ok())
        .collect()
}

/// Launch `trials` future-pointing null geodesics from each interior wedge
/// and check radial monotonicity: strictly decreasing in the trapped wedge,
/// strictly increasing (until exit) in the anti-trapped one.
pub fn capture_check(mass: f64, trials: usize, seed: u64) -> Result<CaptureReport, GeodesicError> {
    let chart = charts::build_chart("ks", mass)?;
    // Escapees from the anti-trapped wedge coast outward forever; cut them
    // off well outside the horizon (uv = 10μ, i.e. r ≈ 2.1μ) so the fast
    // ones do not run the coordinates toward overflow.
    let escape_chart = charts::build_chart("ks", mass)?
        .with_wall(Box::new(move |p: &[f64]| 10.0 * mass - p[0] * p[1]));
    let profile = KsProfile::new(mass);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CaptureReport {
        mass,
        trials,
        captured: 0,
        expelled: 0,
        violations: Vec::new(),
    };

    for trial in 0..trials {
        let r = mass * rng.gen_range(0.05..0.95);
        let t = mass * rng.gen_range(-2.0..2.0);
        let phi_dot = rng.gen_range(-0.8..0.8f64);
        let family_u = trial % 2 == 0;
        let primary = if family_u {
            rng.gen_range(0.2..1.0)
        } else {
            rng.gen_range(-1.0..-0.2)
        };

        for region in [Region::RIPlus, Region::RIMinus] {
            let (u, v) = ks::hd_to_ks(mass, region, t, r)?;
            let big_f = profile.big_f(r)?;
            // Equatorial null: F u̇v̇ + r²φ̇² = 0, future-pointing (v̇ < u̇).
            let (du, dv) = if family_u {
                (primary, -(r * r * phi_dot * phi_dot) / (big_f * primary))
            } else {
                (-(r * r * phi_dot * phi_dot) / (big_f * primary), primary)
            };
            let position = [u, v, std::f64::consts::FRAC_PI_2, 0.0];
            let velocity = [du, dv, 0.0, phi_dot];
            let cfg = IntegrationConfig::new(250.0 * mass);
            let wedge_chart = match region {
                Region::RIPlus => &chart,
                _ => &escape_chart,
            };
            let traj = integrate(wedge_chart, &position, &velocity, &cfg)?;
            let radii = radius_series(&profile, &traj);

            match region {
                Region::RIPlus => {
                    let monotone = radii.windows(2).all(|w| w[1] < w[0] + MONOTONE_TOL * mass);
                    let stays_inside = traj.events.is_empty();
                    if monotone && stays_inside {
                        report.captured += 1;
                    } else {
                        report.violations.push(format!(
                            "trial {trial} trapped wedge: monotone={monotone} crossings={} \
                             termination={}",
                            traj.events.len(),
                            traj.termination.tag()
                        ));
                    }
                }
                Region::RIMinus => {
                    let exit = traj
                        .events
                        .first()
                        .map(|e| e.lambda)
                        .unwrap_or(f64::INFINITY);
                    let monotone =
                        traj.samples
                            .windows(2)
                            .filter(|w| w[1].lambda <= exit)
                            .all(|w| {
                                let r0 = profile.f_inv(w[0].position[0] * w[0].position[1]);
                                let r1 = profile.f_inv(w[1].position[0] * w[1].position[1]);
                                match (r0, r1) {
                                    (Ok(r0), Ok(r1)) => r1 > r0 - MONOTONE_TOL * mass,
                                    _ => false,
                                }
                            });
                    let escaped = !traj.events.is_empty();
                    if monotone && escaped {
                        report.expelled += 1;
                    } else {
                        report.violations.push(format!(
                            "trial {trial} anti-trapped wedge: monotone={monotone} \
                             escaped={escaped} termination={}",
                            traj.termination.tag()
                        ));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct NoTraversalReport {
    pub mass: f64,
    /// u·v of the analytic infalling ray evaluated at its endpoint; lands on
    /// the singularity value −μ exactly in floating point.
    pub analytic_uv_end: f64,
    /// Smallest area radius reached by the numerically integrated ray.
    pub min_radius: f64,
    /// Whether the ray ever entered the far wedge u < 0 ∧ v < 0.
    pub reached_far_wedge: bool,
    pub termination: Termination,
}

/// The ray u ≡ 1, v(s) = −(s+μ)e^{−s/μ} runs into the singularity rather
/// than out to the second asymptotic region: its endpoint satisfies
/// u·v = −μ exactly, and the numerical twin launched at s₀ = −2μ terminates
/// at the blow-up sentinel without ever reaching u < 0 ∧ v < 0.
pub fn no_traversal_demo(mass: f64) -> Result<NoTraversalReport, GeodesicError> {
    let chart = charts::build_chart("ks", mass)?;
    let profile = KsProfile::new(mass);

    let v_of = |s: f64| -(s + mass) * (-s / mass).exp();
    let analytic_uv_end = 1.0 * v_of(0.0);

    let s0 = -2.0 * mass;
    let position = [1.0, v_of(s0), std::f64::consts::FRAC_PI_2, 0.0];
    let v_dot = (-s0 / mass).exp() * s0 / mass;
    let velocity = [0.0, v_dot, 0.0, 0.0];
    let cfg = IntegrationConfig::new(10.0 * mass);
    let traj = integrate(&chart, &position, &velocity, &cfg)?;

    let mut min_radius = f64::INFINITY;
    let mut reached_far_wedge = false;
    for s in &traj.samples {
        let (u, v) = (s.position[0], s.position[1]);
        if let Ok(r) = profile.f_inv(u * v) {
            min_radius = min_radius.min(r);
        }
        if u < 0.0 && v < 0.0 {
            reached_far_wedge = true;
        }
    }

    Ok(NoTraversalReport {
        mass,
        analytic_uv_end,
        min_radius,
        reached_far_wedge,
        termination: traj.termination,
    })
}

#[derive(Debug, Clone)]
pub struct MaximalityReport {
    pub mass: f64,
    pub launches: usize,
    pub blowups: usize,
    pub exhausted_budget: usize,
    /// Launches that ended any other way, with their terminations.
    pub offenders: Vec<(usize, Termination)>,
}

impl MaximalityReport {
    pub fn all_inextendible(&self) -> bool {
        self.offenders.is_empty() && self.launches == self.blowups + self.exhausted_budget
    }
}

fn null_directions(big_f: f64, r: f64) -> [[f64; 4]; 8] {
    let phi_dot = 0.2;
    let q = r * r * phi_dot * phi_dot / big_f;
    [
        [1.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [1.0, -q, 0.0, phi_dot],
        [1.0, -q, 0.0, -phi_dot],
        [-1.0, q, 0.0, phi_dot],
        [-1.0, q, 0.0, -phi_dot],
    ]
}

/// Launch null geodesics from a deterministic grid across all four wedges
/// and both horizon legs. Every launch must either run out its affine budget
/// or terminate at the curvature sentinel — never at a chart boundary, which
/// is what inextendibility within the double-null chart means in practice.
pub fn maximality_sweep(mass: f64) -> Result<MaximalityReport, GeodesicError> {
    let chart = charts::build_chart("ks", mass)?;
    let profile = KsProfile::new(mass);

    // Ordered so the first 25 admissible pairs cover all four wedges, both
    // horizon legs, and the bifurcation point. Coordinates scale as √μ so
    // that u·v stays a fixed fraction of the singularity bound uv = −μ.
    let lattice = [0.7, -0.6, 2.2, -2.1, 0.0, 1.4, -1.3];
    let mut positions = Vec::new();
    'outer: for &u in &lattice {
        for &v in &lattice {
            if u * v <= -0.95 {
                continue; // too close to (or past) the singularity
            }
            positions.push((u * mass.sqrt(), v * mass.sqrt()));
            if positions.len() == 25 {
                break 'outer;
            }
        }
    }

    let mut report = MaximalityReport {
        mass,
        launches: 0,
        blowups: 0,
        exhausted_budget: 0,
        offenders: Vec::new(),
    };
    for &(u, v) in &positions {
        let r = profile.f_inv(u * v)?;
        let big_f = profile.big_f(r)?;
        for dir in null_directions(big_f, r) {
            let position = [u, v, std::f64::consts::FRAC_PI_2, 0.0];
            let traj = integrate(
                &chart,
                &position,
                &dir,
                &IntegrationConfig::new(25.0 * mass),
            )?;
            report.launches += 1;
            match traj.termination {
                Termination::CurvatureBlowup => report.blowups += 1,
                Termination::AffineBudget => report.exhausted_budget += 1,
                other => report.offenders.push((report.launches - 1, other)),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_capture_batch_is_clean() {
        let report = capture_check(1.0, 6, 42).unwrap();
        assert_eq!(report.captured, 6, "{:?}", report.violations);
        assert_eq!(report.expelled, 6, "{:?}", report.violations);
    }

    #[test]
    fn no_traversal_lands_on_the_singularity_value_exactly() {
        for mass in [1.0, 2.5] {
            let report = no_traversal_demo(mass).unwrap();
            assert_eq!(report.analytic_uv_end, -mass, "exact endpoint value");
            assert!(
                report.min_radius < 0.05 * mass,
                "min r {}",
                report.min_radius
            );
            assert!(!report.reached_far_wedge);
            assert_eq!(report.termination, Termination::CurvatureBlowup);
        }
    }

    #[test]
    fn maximality_sweep_never_exits_the_chart() {
        let report = maximality_sweep(1.0).unwrap();
        assert_eq!(report.launches, 200);
        assert!(
            report.all_inextendible(),
            "offenders: {:?}",
            report.offenders
        );
        assert!(report.blowups > 0, "some launches must reach the sentinel");
    }
}
