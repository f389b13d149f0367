//! Geodesic integration in any registered chart.
//!
//! The integrator solves `ẍ^a + Γ^a_{bc} ẋ^b ẋ^c = 0` with the adaptive 5(4)
//! pair from [`crate::num::ode`], using closed-form Christoffel symbols when
//! the chart carries them. Along the way it tracks the velocity norm and the
//! Killing energy, detects horizon crossings (recorded, not stopping) and
//! curvature blow-up (stopping), and classifies how each trajectory ends.

pub mod experiments;

use crate::charts::{self, ks::HORIZON_TOL};
use crate::geometry::{self, metric_eval, ChartSpec, GeometryError};
use crate::num::ode::{self, EventSpec, OdeOptions, StopReason};

/// Stop radius for the curvature blow-up event: the plane sectional
/// curvature μ/r³ crosses 10⁸/μ² at r = μ·10^(−8/3), which lies above the
/// auxiliary floor 10⁻³μ, so a single radius threshold realizes
/// "|S| > 10⁸/μ² or r < 10⁻³μ, whichever first".
pub const BLOWUP_RADIUS_FACTOR: f64 = 2.154_434_690_031_884e-3; // 10^(−8/3)

/// Distance (in units of μ) below which a stalled trajectory endpoint is
/// attributed to a chart wall rather than an interior integration failure.
const WALL_ATTRIBUTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum GeodesicError {
    Geometry(GeometryError),
    Chart(charts::ChartError),
    BadInput {
        what: String,
    },
    /// The geodesic left the chart before reaching the requested parameter.
    LeftDomain {
        lambda: f64,
        position: Vec<f64>,
    },
}

impl std::fmt::Display for GeodesicError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeodesicError::Geometry(e) => e.fmt(f),
            GeodesicError::Chart(e) => e.fmt(f),
            GeodesicError::BadInput { what } => write!(f, "bad input: {what}"),
            GeodesicError::LeftDomain { lambda, position } => {
                write!(
                    f,
                    "geodesic left the chart at lambda={lambda} near {position:?}"
                )
            }
        }
    }
}

impl std::error::Error for GeodesicError {}

impl From<GeometryError> for GeodesicError {
    fn from(e: GeometryError) -> Self {
        GeodesicError::Geometry(e)
    }
}

impl From<charts::ChartError> for GeodesicError {
    fn from(e: charts::ChartError) -> Self {
        GeodesicError::Chart(e)
    }
}

/// How an integrated trajectory ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Ran the full requested affine span.
    AffineBudget,
    /// Reached a chart boundary (wall crossing, or stall at a wall).
    DomainExit,
    /// Stopped by the curvature blow-up sentinel.
    CurvatureBlowup,
    /// Steps collapsed away from any identified boundary.
    StepUnderflow,
}

impl Termination {
    pub fn tag(self) -> &'static str {
        match self {
            Termination::AffineBudget => "affine_budget",
            Termination::DomainExit => "domain_exit",
            Termination::CurvatureBlowup => "curvature_blowup",
            Termination::StepUnderflow => "step_underflow",
        }
    }
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone)]
pub struct Sample {
    pub lambda: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    /// Killing energy −g(∂t, γ′) where the chart defines it.
    pub energy: Option<f64>,
    /// g(γ′, γ′) at this point.
    pub norm: f64,
}

/// A named event hit (currently only horizon crossings) at its parameter.
#[derive(Debug, Clone)]
pub struct CrossingEvent {
    pub name: String,
    pub lambda: f64,
    pub position: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub chart: String,
    pub samples: Vec<Sample>,
    pub events: Vec<CrossingEvent>,
    pub termination: Termination,
    pub steps: usize,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory has at least the initial sample")
    }

    /// Maximum |g(γ′,γ′) − g₀| over the trajectory.
    pub fn norm_drift(&self) -> f64 {
        let n0 = self.samples[0].norm;
        self.samples
            .iter()
            .fold(0.0f64, |m, s| m.max((s.norm - n0).abs()))
    }

    /// Maximum |E − E₀| over samples where the energy is defined.
    pub fn energy_drift(&self) -> Option<f64> {
        let e0 = self.samples[0].energy?;
        let mut drift = 0.0f64;
        for s in &self.samples {
            drift = drift.max((s.energy? - e0).abs());
        }
        Some(drift)
    }
}

#[derive(Debug, Clone)]
pub struct IntegrationConfig {
    pub affine_span: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Maximum step; `None` selects 0.1·μ.
    pub max_step: Option<f64>,
    pub max_steps: usize,
}

impl IntegrationConfig {
    pub fn new(affine_span: f64) -> IntegrationConfig {
        IntegrationConfig {
            affine_span,
            rtol: 1e-10,
            atol: 1e-12,
            max_step: None,
            max_steps: 200_000,
        }
    }
}

/// Killing energy −g(∂t, γ′) at a point.
///
/// Static charts use their designated time coordinate. The KS charts lift
/// ∂t = (u∂u − v∂v)/2μ through the branch maps, which leaves the energy
/// undefined (`None`) on the horizon itself, where no HD chart exists.
pub fn killing_energy(
    chart: &ChartSpec,
    position: &[f64],
    velocity: &[f64],
) -> Result<Option<f64>, GeometryError> {
    if let Some(t_idx) = chart.static_time {
        let g = metric_eval(chart, position)?;
        let mut e = 0.0;
        for j in 0..chart.dim {
            e -= g[(t_idx, j)] * velocity[j];
        }
        return Ok(Some(e));
    }
    if chart.id.starts_with("ks") {
        let (u, v) = (position[0], position[1]);
        if (u * v).abs() <= HORIZON_TOL * chart.mass * std::f64::consts::E {
            return Ok(None);
        }
        let g = metric_eval(chart, position)?;
        let g_uv = g[(0, 1)];
        let e = -(g_uv / (2.0 * chart.mass)) * (u * velocity[1] - v * velocity[0]);
        return Ok(Some(e));
    }
    Ok(None)
}

fn sample_at(chart: &ChartSpec, lambda: f64, state: &[f64]) -> Result<Sample, GeometryError> {
    let dim = chart.dim;
    let position = state[..dim].to_vec();
    let velocity = state[dim..].to_vec();
    let g = metric_eval(chart, &position)?;
    let mut norm = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            norm += g[(i, j)] * velocity[i] * velocity[j];
        }
    }
    let energy = killing_energy(chart, &position, &velocity)?;
    Ok(Sample {
        lambda,
        position,
        velocity,
        energy,
        norm,
    })
}

/// Integrate the geodesic with initial data `(position, velocity)` at λ = 0
/// over `cfg.affine_span`.
pub fn integrate(
    chart: &ChartSpec,
    position: &[f64],
    velocity: &[f64],
    cfg: &IntegrationConfig,
) -> Result<Trajectory, GeodesicError> {
    let dim = chart.dim;
    if position.len() != dim || velocity.len() != dim {
        return Err(GeodesicError::BadInput {
            what: format!(
                "chart '{}' needs {dim} position and velocity components",
                chart.id
            ),
        });
    }
    if !chart.contains(position) {
        return Err(GeodesicError::Geometry(GeometryError::Domain {
            chart: chart.id.clone(),
            point: position.to_vec(),
        }));
    }
    if !(cfg.affine_span > 0.0) {
        return Err(GeodesicError::BadInput {
            what: "affine span must be positive".into(),
        });
    }

    let rhs = |_lambda: f64, y: &[f64], dy: &mut [f64]| -> bool {
        let p = &y[..dim];
        let v = &y[dim..];
        let gamma = match geometry::christoffel(chart, p, None) {
            Ok(set) => set.gamma,
            Err(_) => return false,
        };
        dy[..dim].copy_from_slice(v);
        for a in 0..dim {
            let mut acc = 0.0;
            for b in 0..dim {
                for c in 0..dim {
                    acc += gamma[a][(b, c)] * v[b] * v[c];
                }
            }
            dy[dim + a] = -acc;
        }
        true
    };

    // Events: chart walls stop with DomainExit; the KS charts additionally
    // get the horizon recorder and the blow-up stopper.
    let mut event_specs: Vec<EventSpec> = Vec::new();
    let mut spec_kind: Vec<&'static str> = Vec::new();
    for wall in chart.walls() {
        event_specs.push(EventSpec {
            name: "wall".into(),
            func: Box::new(move |_l, y: &[f64]| wall(&y[..dim])),
            stop: true,
        });
        spec_kind.push("wall");
    }
    if chart.id.starts_with("ks") {
        event_specs.push(EventSpec {
            name: "horizon".into(),
            func: Box::new(move |_l, y: &[f64]| y[0] * y[1]),
            stop: false,
        });
        spec_kind.push("horizon");
        let profile = charts::ks::KsProfile::new(chart.mass);
        let r_stop = BLOWUP_RADIUS_FACTOR * chart.mass;
        event_specs.push(EventSpec {
            name: "blowup".into(),
            func: Box::new(move |_l, y: &[f64]| {
                let uv = y[0] * y[1];
                match profile.f_inv(uv) {
                    Ok(r) => r - r_stop,
                    Err(_) => -1.0, // beyond the fundamental singularity bound
                }
            }),
            stop: true,
        });
        spec_kind.push("blowup");
    }

    let mut y0 = Vec::with_capacity(2 * dim);
    y0.extend_from_slice(position);
    y0.extend_from_slice(velocity);
    let opts = OdeOptions {
        rtol: cfg.rtol,
        atol: cfg.atol,
        max_step: cfg.max_step.unwrap_or(0.1 * chart.mass),
        max_steps: cfg.max_steps,
    };
    let sol = ode::integrate(rhs, &y0, 0.0, cfg.affine_span, &opts, &event_specs);

    let termination = match sol.reason {
        StopReason::ReachedEnd | StopReason::StepBudget => Termination::AffineBudget,
        StopReason::EventStop(idx) => match spec_kind[idx] {
            "blowup" => Termination::CurvatureBlowup,
            _ => Termination::DomainExit,
        },
        StopReason::RhsRejected | StopReason::StepUnderflow => {
            let last = sol.states.last().expect("at least initial state");
            if near_wall(chart, &last[..dim]) {
                Termination::DomainExit
            } else {
                Termination::StepUnderflow
            }
        }
    };

    let mut samples = Vec::with_capacity(sol.lambdas.len());
    for (l, state) in sol.lambdas.iter().zip(sol.states.iter()) {
        // Sample points sit inside the domain by construction; a final
        // interpolated point may graze the boundary, where the metric is
        // still evaluable for every registered chart.
        match sample_at(chart, *l, state) {
            Ok(s) => samples.push(s),
            Err(_) => break,
        }
    }
    if samples.is_empty() {
        samples.push(sample_at(chart, 0.0, &y0)?);
    }

    let crossings = sol
        .events
        .iter()
        .filter(|e| e.name == "horizon")
        .map(|e| CrossingEvent {
            name: e.name.clone(),
            lambda: e.lambda,
            position: e.y[..dim].to_vec(),
        })
        .collect();

    Ok(Trajectory {
        chart: chart.id.clone(),
        samples,
        events: crossings,
        termination,
        steps: sol.steps,
    })
}

fn near_wall(chart: &ChartSpec, p: &[f64]) -> bool {
    let tol = WALL_ATTRIBUTION_TOL * chart.mass;
    chart.walls().iter().any(|w| w(p).abs() < tol)
}

/// The exponential map: integrate the geodesic with initial data `(p, x)` to
/// affine parameter 1 and return the endpoint.
pub fn exp_map(chart: &ChartSpec, p: &[f64], x: &[f64]) -> Result<Vec<f64>, GeodesicError> {
    if x.iter().all(|c| *c == 0.0) {
        return Ok(p.to_vec());
    }
    let cfg = IntegrationConfig::new(1.0);
    let traj = integrate(chart, p, x, &cfg)?;
    match traj.termination {
        Termination::AffineBudget => Ok(traj.last().position.clone()),
        _ => Err(GeodesicError::LeftDomain {
            lambda: traj.last().lambda,
            position: traj.last().position.clone(),
        }),
    }
}

/// The inextendible radial null geodesics of the t–r plane in closed form:
/// `r = εs`, `t = s + εμ·log|μ − εs|`, valid wherever `εs > 0`, `εs ≠ μ`.
pub fn radial_null_closed_form(
    mass: f64,
    epsilon: i32,
    s: f64,
) -> Result<(f64, f64), GeodesicError> {
    if epsilon != 1 && epsilon != -1 {
        return Err(GeodesicError::BadInput {
            what: format!("epsilon must be ±1, got {epsilon}"),
        });
    }
    let eps = f64::from(epsilon);
    let r = eps * s;
    if r <= 0.0 {
        return Err(GeodesicError::BadInput {
            what: format!("epsilon*s must be positive, got {r}"),
        });
    }
    if r == mass {
        return Err(GeodesicError::Chart(charts::ChartError::AtHorizonRadius {
            r,
            mass,
        }));
    }
    let t = s + eps * mass * (mass - r).abs().ln();
    Ok((t, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::build_chart;

    #[test]
    fn closed_form_radial_null_examples() {
        let (t, r) = radial_null_closed_form(1.0, -1, -2.0).unwrap();
        assert_eq!((t, r), (-2.0, 2.0));
        let (t, r) = radial_null_closed_form(1.0, 1, 2.0).unwrap();
        assert_eq!((t, r), (2.0, 2.0));
        let (t, r) = radial_null_closed_form(1.0, -1, -0.5).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
        assert!((t - (-0.5 - 0.5f64.ln())).abs() < 1e-15);
        assert!(radial_null_closed_form(1.0, -1, 1.0).is_err());
        assert!(radial_null_closed_form(1.0, 1, 1.0).is_err());
    }

    #[test]
    fn ks_null_start_preserves_norm() {
        let chart = build_chart("ks", 1.0).unwrap();
        let cfg = IntegrationConfig::new(3.0);
        let traj = integrate(
            &chart,
            &[1.0, 1.0, std::f64::consts::FRAC_PI_2, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
            &cfg,
        )
        .unwrap();
        assert_eq!(traj.termination, Termination::AffineBudget);
        assert!(traj.norm_drift() < 1e-9, "drift {}", traj.norm_drift());
        // This ingoing null ray crosses uv = 0 exactly once.
        assert_eq!(traj.events.len(), 1);
        assert!((traj.events[0].position[1]).abs() < 1e-9);
    }

    #[test]
    fn hd_ingoing_null_exits_at_the_horizon_wall() {
        let chart = build_chart("hd", 1.0).unwrap();
        let r0 = 3.0;
        let f0 = 1.0 - 1.0 / r0;
        let cfg = IntegrationConfig::new(10.0);
        let traj = integrate(
            &chart,
            &[0.0, r0, std::f64::consts::FRAC_PI_2, 0.0],
            &[1.0 / f0, -1.0, 0.0, 0.0],
            &cfg,
        )
        .unwrap();
        assert_eq!(traj.termination, Termination::DomainExit);
        let r_end = traj.last().position[1];
        assert!(
            (r_end - 1.0).abs() < 1e-6,
            "expected stall at the r=mu wall, got r={r_end}"
        );
        // Killing energy stays conserved over the well-conditioned stretch;
        // the last decade before the wall is dominated by the chart's own
        // degeneracy, not by the integration.
        let e0 = traj.samples[0].energy.unwrap();
        let drift = traj
            .samples
            .iter()
            .filter(|s| s.position[1] > 1.001)
            .map(|s| (s.energy.unwrap() - e0).abs())
            .fold(0.0f64, f64::max);
        assert!(drift < 1e-8, "energy drift {drift}");
    }

    #[test]
    fn same_ray_in_ks_crosses_and_blows_up() {
        let chart = build_chart("ks", 1.0).unwrap();
        // Ingoing null ray u ≡ 1 entering from the exterior.
        let cfg = IntegrationConfig::new(40.0);
        let traj = integrate(
            &chart,
            &[1.0, 3.0, std::f64::consts::FRAC_PI_2, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
            &cfg,
        )
        .unwrap();
        assert_eq!(traj.termination, Termination::CurvatureBlowup);
        assert_eq!(traj.events.len(), 1, "one horizon crossing");
        let profile = crate::charts::ks::KsProfile::new(1.0);
        let last = traj.last();
        let r_end = profile.f_inv(last.position[0] * last.position[1]).unwrap();
        assert!(r_end < 3e-3, "stopped at r={r_end}");
        assert!(r_end < 0.01, "blow-up sentinel fired before r = 0.01mu");
    }

    #[test]
    fn killing_energy_examples() {
        let chart = build_chart("hd", 1.0).unwrap();
        let r = 3.0;
        let f = 1.0 - 1.0 / r;
        let p = [0.0, r, 1.1, 0.3];
        // Radial null: E = f·(1/f) = 1.
        let e = killing_energy(&chart, &p, &[1.0 / f, -1.0, 0.0, 0.0])
            .unwrap()
            .unwrap();
        assert!((e - 1.0).abs() < 1e-14);
        // Normalized static observer: E = √f.
        let e = killing_energy(&chart, &p, &[1.0 / f.sqrt(), 0.0, 0.0, 0.0])
            .unwrap()
            .unwrap();
        assert!((e - f.sqrt()).abs() < 1e-14);

        // KS horizon: flagged absent.
        let ks = build_chart("ks", 1.0).unwrap();
        let absent = killing_energy(&ks, &[1.0, 0.0, 1.1, 0.3], &[0.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(absent, None);
        // Off the horizon it matches the HD value through the branch map.
        let (u, v) = crate::charts::hd_to_ks(1.0, crate::charts::Region::RIIPlus, 0.0, r).unwrap();
        let du = u / (2.0 * 1.0) * (1.0 / f) - u / (2.0 * 1.0) / (r - 1.0);
        let dv = v / (2.0 * 1.0) * (-(1.0 / f)) - v / (2.0 * 1.0) / (r - 1.0);
        let e = killing_energy(&ks, &[u, v, 1.1, 0.3], &[du, dv, 0.0, 0.0])
            .unwrap()
            .unwrap();
        assert!((e - 1.0).abs() < 1e-9, "lifted radial-null energy {e}");
    }

    #[test]
    fn exp_map_segment_additivity() {
        let chart = build_chart("hd", 1.0).unwrap();
        let p = [0.0, 5.0, std::f64::consts::FRAC_PI_2, 0.0];
        let x = [0.3, -0.2, 0.0, 0.07];
        assert_eq!(exp_map(&chart, &p, &[0.0; 4]).unwrap(), p.to_vec());

        // exp_p(x) equals integrating to λ = 1/2 and continuing with the
        // transported velocity for another unit of the halved tangent.
        let full = exp_map(&chart, &p, &x).unwrap();
        let half_cfg = IntegrationConfig::new(0.5);
        let half = integrate(&chart, &p, &x, &half_cfg).unwrap();
        let mid = half.last();
        let rest = exp_map(
            &chart,
            &mid.position,
            &mid.velocity.iter().map(|v| v * 0.5).collect::<Vec<_>>(),
        )
        .unwrap();
        for (a, b) in full.iter().zip(rest.iter()) {
            assert!((a - b).abs() < 1e-8, "{full:?} vs {rest:?}");
        }
    }

    #[test]
    fn affine_reparametrization_matches_point_set() {
        let chart = build_chart("ks", 1.0).unwrap();
        let p = [1.5, 0.8, std::f64::consts::FRAC_PI_2, 0.0];
        let x = [0.4, -0.3, 0.0, 0.1];
        let cfg = IntegrationConfig::new(2.0);
        let slow = integrate(&chart, &p, &x, &cfg).unwrap();
        let fast_x: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let fast_cfg = IntegrationConfig::new(1.0);
        let fast = integrate(&chart, &p, &fast_x, &fast_cfg).unwrap();
        // Position at λ=2 (slow) equals position at λ=1 (fast).
        let a = slow.last();
        let b = fast.last();
        assert!((a.lambda - 2.0).abs() < 1e-12 && (b.lambda - 1.0).abs() < 1e-12);
        for (ai, bi) in a.position.iter().zip(b.position.iter()) {
            assert!((ai - bi).abs() < 1e-8);
        }
    }

    #[test]
    fn closed_form_agreement_exterior_and_interior() {
        let chart = build_chart("hd", 1.0).unwrap();
        // Exterior ingoing: r = −s, E = 1, start at r=3 on the closed form.
        let r0 = 3.0;
        let t0 = -r0 - (r0 - 1.0f64).ln();
        let f0 = 1.0 - 1.0 / r0;
        let cfg = IntegrationConfig::new(1.5);
        let traj = integrate(
            &chart,
            &[t0, r0, std::f64::consts::FRAC_PI_2, 0.0],
            &[1.0 / f0, -1.0, 0.0, 0.0],
            &cfg,
        )
        .unwrap();
        for s in &traj.samples {
            let r = s.position[1];
            let t_expect = -r - (r - 1.0f64).ln();
            assert!(
                (s.position[0] - t_expect).abs() < 1e-7,
                "exterior at r={r}: t={} vs {t_expect}",
                s.position[0]
            );
        }

        // Interior branch: r = −s ∈ (0, μ), t = −r − μ·log(μ − r).
        let r0 = 0.8f64;
        let t0 = -r0 - (1.0 - r0).ln();
        let f0 = 1.0 - 1.0 / r0; // negative inside
        let cfg = IntegrationConfig::new(0.55);
        let traj = integrate(
            &chart,
            &[t0, r0, std::f64::consts::FRAC_PI_2, 0.0],
            &[1.0 / f0, -1.0, 0.0, 0.0],
            &cfg,
        )
        .unwrap();
        for s in &traj.samples {
            let r = s.position[1];
            let t_expect = -r - (1.0 - r).ln();
            assert!(
                (s.position[0] - t_expect).abs() < 1e-6,
                "interior at r={r}: t={} vs {t_expect}",
                s.position[0]
            );
        }
    }

    #[test]
    fn future_classification_is_constant_along_causal_geodesics() {
        let chart = build_chart("ks", 1.0).unwrap();
        let p = [1.2, 0.9, std::f64::consts::FRAC_PI_2, 0.0];
        // Future-pointing timelike start.
        let x = [0.5, -0.5, 0.0, 0.05];
        let cfg = IntegrationConfig::new(3.0);
        let traj = integrate(&chart, &p, &x, &cfg).unwrap();
        let mut futures = Vec::new();
        for s in &traj.samples {
            let class = crate::geometry::causal_class(&chart, &s.position, &s.velocity).unwrap();
            futures.push(class.future);
        }
        assert!(futures.iter().all(|f| *f == Some(true)), "{futures:?}");
    }
}
