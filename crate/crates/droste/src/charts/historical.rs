//! Historical charts registered with their printed metrics, plus the
//! transitions that connect them to Hilbert–Droste coordinates.
//!
//! Each chart here is registered exactly as printed in its source form so the
//! curvature machinery can *measure* it. Where a printed formula disagrees
//! with the direct pullback computation (the Eddington cross-term sign, the
//! Lemaître constant, the ER bridge denominator), both variants ship under
//! distinct ids and the conformance suite records which one passes.

use nalgebra::DMatrix;

use super::{ks::KsProfile, ChartError};
use crate::geometry::ChartSpec;

fn sphere_domain(theta: f64) -> bool {
    theta > 0.0 && theta < std::f64::consts::PI
}

/// `(z, r, θ, φ)` with `−(1−μ/r)dz⊗dz + (dz⊗dr + dr⊗dz) + r²ζ_{S²}`,
/// regular through the horizon; `z = t + r + μ·log|r/μ − 1|`.
pub fn painleve_gullstrand(mass: f64) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let domain: crate::geometry::DomainFn =
        Box::new(move |p: &[f64]| p[1] > 0.0 && sphere_domain(p[2]));
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let (r, th) = (p[1], p[2]);
        let st = th.sin();
        let mut g = DMatrix::zeros(4, 4);
        g[(0, 0)] = -(1.0 - mass / r);
        g[(0, 1)] = 1.0;
        g[(1, 0)] = 1.0;
        g[(2, 2)] = r * r;
        g[(3, 3)] = r * r * st * st;
        g
    });
    // ∂z − ((1+μ/r)/2)·∂r has norm −2 everywhere: a global future reference.
    let orientation: crate::geometry::OrientationFn =
        Box::new(move |p: &[f64]| Some(vec![1.0, -0.5 * (1.0 + mass / p[1]), 0.0, 0.0]));
    Ok(
        ChartSpec::new("painleve_gullstrand", 4, mass, domain, metric)
            .with_orientation(orientation)
            .with_wall(Box::new(|p: &[f64]| p[1])),
    )
}

/// Cross-term sign of the Eddington-style chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EddingtonVariant {
    /// `+μ/r` cross term, as printed in the source.
    Paper,
    /// `−μ/r` cross term, the sign the pullback of `t̃ = t − μ·log|r−μ|`
    /// actually produces.
    Derived,
}

/// `(t̃, r, θ, φ)` with `−(1−μ/r)dt̃² ± (μ/r)(dt̃⊗dr + dr⊗dt̃) + (1+μ/r)dr²`
/// plus the round sphere; horizon-regular for either cross-term sign.
pub fn eddington(mass: f64, variant: EddingtonVariant) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let id = match variant {
        EddingtonVariant::Paper => "eddington_paper",
        EddingtonVariant::Derived => "eddington_derived",
    };
    let sign = match variant {
        EddingtonVariant::Paper => 1.0,
        EddingtonVariant::Derived => -1.0,
    };
    let domain: crate::geometry::DomainFn =
        Box::new(move |p: &[f64]| p[1] > 0.0 && sphere_domain(p[2]));
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let (r, th) = (p[1], p[2]);
        let st = th.sin();
        let mut g = DMatrix::zeros(4, 4);
        g[(0, 0)] = -(1.0 - mass / r);
        g[(0, 1)] = sign * mass / r;
        g[(1, 0)] = sign * mass / r;
        g[(1, 1)] = 1.0 + mass / r;
        g[(2, 2)] = r * r;
        g[(3, 3)] = r * r * st * st;
        g
    });
    // ∂t̃ − sign·(μ/(r+μ))·∂r sits strictly between the two radial null
    // slopes at every r > 0, hence is timelike everywhere.
    let orientation: crate::geometry::OrientationFn =
        Box::new(move |p: &[f64]| Some(vec![1.0, -sign * mass / (p[1] + mass), 0.0, 0.0]));
    Ok(ChartSpec::new(id, 4, mass, domain, metric)
        .with_orientation(orientation)
        .with_wall(Box::new(|p: &[f64]| p[1])))
}

/// Constant in the Lemaître radius profile `r = [c·√μ·(ρ−τ)]^{2/3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemaitreVariant {
    /// `c = 2/3` as printed in the source.
    Paper,
    /// `c = 3/2`, the alternative the residual harness scores.
    Alt,
}

/// `(τ, ρ, θ, φ)` with `−dτ² + (μ/r)dρ² + r²ζ_{S²}` and the radius profile
/// `r = [c·√μ·(ρ−τ)]^{2/3}` on `ρ > τ`.
///
/// No closed-form symbols: the warp depends on both τ and ρ, so this chart
/// exercises the fully generic curvature path.
pub fn lemaitre(mass: f64, variant: LemaitreVariant) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let (id, c) = match variant {
        LemaitreVariant::Paper => ("lemaitre_paper", 2.0 / 3.0),
        LemaitreVariant::Alt => ("lemaitre_alt", 1.5),
    };
    let radius = move |tau: f64, rho: f64| (c * mass.sqrt() * (rho - tau)).powf(2.0 / 3.0);
    let domain: crate::geometry::DomainFn =
        Box::new(move |p: &[f64]| p[1] > p[0] && sphere_domain(p[2]));
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let r = radius(p[0], p[1]);
        let st = p[2].sin();
        let mut g = DMatrix::zeros(4, 4);
        g[(0, 0)] = -1.0;
        g[(1, 1)] = mass / r;
        g[(2, 2)] = r * r;
        g[(3, 3)] = r * r * st * st;
        g
    });
    let orientation: crate::geometry::OrientationFn =
        Box::new(|_p: &[f64]| Some(vec![1.0, 0.0, 0.0, 0.0]));
    Ok(ChartSpec::new(id, 4, mass, domain, metric)
        .with_orientation(orientation)
        .with_wall(Box::new(|p: &[f64]| p[1] - p[0])))
}

/// Radius profile of the `(x, y)` chart: `r = f̃⁻¹(x² − y²)` with
/// `f̃(r) = (r/μ − 1)e^{r/μ} = f(r)/μ`, defined for `x² − y² > −1`.
pub fn kruskal_xy_radius(mass: f64, x: f64, y: f64) -> Result<f64, ChartError> {
    super::check_mass(mass)?;
    let w = x * x - y * y;
    if w <= -1.0 {
        return Err(ChartError::BelowRange { w, mass: 1.0 });
    }
    KsProfile::new(mass).f_inv(mass * w)
}

/// `(x, y, θ, φ)` with the printed metric `−F̃ dx⊗dx + F̃ dy⊗dy + r²ζ_{S²}`,
/// `F̃² = (16μ/r)e^{−r/μ}`, `r = f̃⁻¹(x²−y²)`.
///
/// Registered exactly as printed; the curvature harness measures (rather
/// than assumes) its vacuum residual.
pub fn kruskal_xy(mass: f64) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let profile = KsProfile::new(mass);
    let domain: crate::geometry::DomainFn =
        Box::new(move |p: &[f64]| p[0] * p[0] - p[1] * p[1] > -1.0 && sphere_domain(p[2]));
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let w = p[0] * p[0] - p[1] * p[1];
        let r = profile.f_inv(mass * w).expect("domain-checked w");
        let big_f = ((16.0 * mass / r) * (-r / mass).exp()).sqrt();
        let st = p[2].sin();
        let mut g = DMatrix::zeros(4, 4);
        g[(0, 0)] = -big_f;
        g[(1, 1)] = big_f;
        g[(2, 2)] = r * r;
        g[(3, 3)] = r * r * st * st;
        g
    });
    Ok(ChartSpec::new("kruskal_xy", 4, mass, domain, metric)
        .with_wall(Box::new(|p: &[f64]| p[0] * p[0] - p[1] * p[1] + 1.0)))
}

/// Denominator in the Einstein–Rosen throat profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErVariant {
    /// `u² + μ²` as printed in the source.
    Paper,
    /// `u² + μ`, which the substitution `r = u² + μ` actually yields.
    Derived,
}

/// `(t, u, θ, φ)` double-sheeted bridge chart. The substitution
/// `r = u² + μ` yields `−u²/S dt² + 4S du² + S²ζ_{S²}` with `S = u² + μ`
/// (the derived variant); the printed variant carries the source text's
/// exact line `−u²/(u²+μ²) dt² + 4(u²+μ²) du² + (u²+μ²) ζ_{S²}` — squared
/// shift, first-power sphere factor. Both live on `u ≠ 0`.
pub fn er_bridge(mass: f64, variant: ErVariant) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let id = match variant {
        ErVariant::Paper => "er_bridge_paper",
        ErVariant::Derived => "er_bridge",
    };
    let shift = match variant {
        ErVariant::Paper => mass * mass,
        ErVariant::Derived => mass,
    };
    let domain: crate::geometry::DomainFn =
        Box::new(move |p: &[f64]| p[1] != 0.0 && sphere_domain(p[2]));
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let u = p[1];
        let s = u * u + shift;
        let warp = match variant {
            ErVariant::Paper => s,
            ErVariant::Derived => s * s,
        };
        let st = p[2].sin();
        let mut g = DMatrix::zeros(4, 4);
        g[(0, 0)] = -u * u / s;
        g[(1, 1)] = 4.0 * s;
        g[(2, 2)] = warp;
        g[(3, 3)] = warp * st * st;
        g
    });
    let orientation: crate::geometry::OrientationFn =
        Box::new(|_p: &[f64]| Some(vec![1.0, 0.0, 0.0, 0.0]));
    Ok(ChartSpec::new(id, 4, mass, domain, metric)
        .with_orientation(orientation)
        .with_wall(Box::new(|p: &[f64]| p[1])))
}

/// The flat 3-D chart `(R, θ, φ)` with `dR⊗dR + (R−μ)²ζ_{S²}` on
/// `R ∈ (0, ∞) − {μ}`: Euclidean space with its origin spread over the
/// sphere `R = μ`, plus the disconnected ball-like second component `R < μ`.
pub fn euclid_shifted(mass: f64) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let domain: crate::geometry::DomainFn =
        Box::new(move |p: &[f64]| p[0] > 0.0 && p[0] != mass && sphere_domain(p[1]));
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let (big_r, th) = (p[0], p[1]);
        let rho = big_r - mass;
        let st = th.sin();
        let mut g = DMatrix::zeros(3, 3);
        g[(0, 0)] = 1.0;
        g[(1, 1)] = rho * rho;
        g[(2, 2)] = rho * rho * st * st;
        g
    });
    Ok(ChartSpec::new("euclid_shifted", 3, mass, domain, metric)
        .with_wall(Box::new(|p: &[f64]| p[0]))
        .with_wall(Box::new(move |p: &[f64]| p[0] - mass)))
}

/// `z = t + r + μ·log|r/μ − 1|` (the Painlevé–Gullstrand time), r > μ.
pub fn pg_time(mass: f64, t: f64, r: f64) -> Result<f64, ChartError> {
    require_exterior(mass, r)?;
    Ok(t + r + mass * (r / mass - 1.0).abs().ln())
}

/// `t̃ = t − μ·log|r − μ|` (the Eddington time), r > μ.
pub fn eddington_time(mass: f64, t: f64, r: f64) -> Result<f64, ChartError> {
    require_exterior(mass, r)?;
    Ok(t - mass * (r - mass).abs().ln())
}

/// `(x, y)` of the historical Kruskal chart:
/// `x = √(r/μ−1)·e^{r/2μ}·cosh(t/2μ)`, `y = … sinh(t/2μ)`, r > μ.
pub fn kruskal_xy_map(mass: f64, t: f64, r: f64) -> Result<(f64, f64), ChartError> {
    require_exterior(mass, r)?;
    let amp = (r / mass - 1.0).sqrt() * (r / (2.0 * mass)).exp();
    let arg = t / (2.0 * mass);
    Ok((amp * arg.cosh(), amp * arg.sinh()))
}

fn require_exterior(mass: f64, r: f64) -> Result<(), ChartError> {
    super::check_mass(mass)?;
    if r <= 0.0 || !r.is_finite() {
        Err(ChartError::NonPositiveRadius { r })
    } else if r == mass {
        Err(ChartError::AtHorizonRadius { r, mass })
    } else if r < mass {
        Err(ChartError::RegionMismatch {
            region: super::ks::Region::RIPlus,
            r,
            mass,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transition_times_match_committed_values() {
        // z = 0 + 2 + log 1 = 2 at μ=1, r=2.
        assert!((pg_time(1.0, 0.0, 2.0).unwrap() - 2.0).abs() < 1e-14);
        // t̃ = −log 1 = 0.
        assert!(eddington_time(1.0, 0.0, 2.0).unwrap().abs() < 1e-14);
        let (x, y) = kruskal_xy_map(1.0, 0.0, 2.0).unwrap();
        assert!((x - std::f64::consts::E).abs() < 1e-12);
        assert_eq!(y, 0.0);
        // x² − y² = f̃(r) = (r/μ−1)e^{r/μ}
        let (x, y) = kruskal_xy_map(1.0, 1.3, 2.0).unwrap();
        let w = x * x - y * y;
        assert!((w - std::f64::consts::E.powi(2)).abs() < 1e-11);
        assert!((kruskal_xy_radius(1.0, x, y).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn transitions_reject_the_horizon_and_interior() {
        for r in [1.0, 0.5] {
            assert!(pg_time(1.0, 0.0, r).is_err());
            assert!(eddington_time(1.0, 0.0, r).is_err());
            assert!(kruskal_xy_map(1.0, 0.0, r).is_err());
        }
    }

    #[test]
    fn er_variants_share_the_plane_block_only_at_unit_mass() {
        // At mu = 1 the shifts u^2 + mu and u^2 + mu^2 coincide, so the
        // (t, u) block agrees; the sphere factors still differ (first
        // power as printed versus the squared areal radius).
        let derived = er_bridge(1.0, ErVariant::Derived).unwrap();
        let paper = er_bridge(1.0, ErVariant::Paper).unwrap();
        let p = [0.0, 1.0, 1.1, 0.3];
        let gd = crate::geometry::metric_eval(&derived, &p).unwrap();
        let gp = crate::geometry::metric_eval(&paper, &p).unwrap();
        assert_eq!(gd[(0, 0)], gp[(0, 0)]);
        assert_eq!(gd[(1, 1)], gp[(1, 1)]);
        assert_eq!(gd[(2, 2)], 4.0); // (1 + 1)^2
        assert_eq!(gp[(2, 2)], 2.0); // 1 + 1 as printed

        let derived = er_bridge(3.0, ErVariant::Derived).unwrap();
        let paper = er_bridge(3.0, ErVariant::Paper).unwrap();
        let gd = crate::geometry::metric_eval(&derived, &p).unwrap();
        let gp = crate::geometry::metric_eval(&paper, &p).unwrap();
        assert!((gd[(0, 0)] - gp[(0, 0)]).abs() > 0.05);
        assert!((gd - gp).abs().max() > 1.0);
    }

    #[test]
    fn euclid_shifted_excludes_the_spread_origin() {
        let chart = euclid_shifted(1.0).unwrap();
        assert!(chart.contains(&[2.0, 1.1, 0.3]));
        assert!(chart.contains(&[0.5, 1.1, 0.3])); // disconnected inner piece
        assert!(!chart.contains(&[1.0, 1.1, 0.3]));
        assert!(!chart.contains(&[-0.2, 1.1, 0.3]));
    }

    #[test]
    fn orientation_references_are_timelike_everywhere() {
        use crate::geometry::{causal_class, CausalKind};
        let charts = [
            painleve_gullstrand(1.0).unwrap(),
            eddington(1.0, EddingtonVariant::Paper).unwrap(),
            eddington(1.0, EddingtonVariant::Derived).unwrap(),
        ];
        for chart in &charts {
            for r in [0.05, 0.3, 0.9, 1.0, 1.5, 10.0] {
                let p = [0.0, r, 1.1, 0.3];
                let x = chart.orientation_at(&p).unwrap();
                let class = causal_class(chart, &p, &x).unwrap();
                assert_eq!(class.kind, CausalKind::Timelike, "{} at r={r}", chart.id);
                assert_eq!(class.future, Some(true));
            }
        }
    }
}
