//! The Kruskal–Szekeres plane: profile functions, region decomposition, and
//! the transitions to and from Hilbert–Droste coordinates.
//!
//! Everything here is organized around the profile `f(r) = (r−μ)·e^{r/μ}`:
//! the KS chart carries `r = f⁻¹(uv)` implicitly, the four regions are cut
//! out by the sign of `u` and the position of `r` relative to μ, and the
//! branch maps `(t, r) ↦ (u, v)` are fixed by `uv = f(r)`.

use nalgebra::DMatrix;

use super::ChartError;
use crate::geometry::ChartSpec;
use crate::num::root::{self, RootError};

/// Horizon classification tolerance: `|uv| ≤ HORIZON_TOL·μ·e`.
pub const HORIZON_TOL: f64 = 1e-12;

/// Open subsets of the KS plane, split by `sign(u)` and by `f⁻¹(uv) ≷ μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Interior hole, u > 0.
    RIPlus,
    /// Interior hole, u < 0.
    RIMinus,
    /// Static exterior, u > 0.
    RIIPlus,
    /// Static exterior, u < 0.
    RIIMinus,
    /// The locus uv = 0.
    Horizon,
}

impl Region {
    pub fn tag(self) -> &'static str {
        match self {
            Region::RIPlus => "R_I_plus",
            Region::RIMinus => "R_I_minus",
            Region::RIIPlus => "R_II_plus",
            Region::RIIMinus => "R_II_minus",
            Region::Horizon => "Horizon",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Region> {
        Some(match tag {
            "R_I_plus" => Region::RIPlus,
            "R_I_minus" => Region::RIMinus,
            "R_II_plus" => Region::RIIPlus,
            "R_II_minus" => Region::RIIMinus,
            "Horizon" => Region::Horizon,
            _ => return None,
        })
    }

    /// Is this one of the two interior (hole) regions?
    pub fn is_interior(self) -> bool {
        matches!(self, Region::RIPlus | Region::RIMinus)
    }

    /// Signs `(s_u, s_v)` of the branch map into this region.
    fn branch_signs(self) -> Option<(f64, f64)> {
        Some(match self {
            Region::RIIPlus => (1.0, 1.0),
            Region::RIIMinus => (-1.0, -1.0),
            Region::RIPlus => (1.0, -1.0),
            Region::RIMinus => (-1.0, 1.0),
            Region::Horizon => return None,
        })
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// The KS profile pair `f(r) = (r−μ)e^{r/μ}`, `F(r) = (4μ²/r)e^{−r/μ}` and
/// the numeric inversion of `f`.
#[derive(Debug, Clone, Copy)]
pub struct KsProfile {
    pub mass: f64,
}

impl KsProfile {
    pub fn new(mass: f64) -> KsProfile {
        KsProfile { mass }
    }

    fn check_r(&self, r: f64) -> Result<(), ChartError> {
        if r > 0.0 && r.is_finite() {
            Ok(())
        } else {
            Err(ChartError::NonPositiveRadius { r })
        }
    }

    /// `f(r) = (r−μ)·e^{r/μ}`, strictly increasing from −μ onto (−μ, ∞).
    pub fn f(&self, r: f64) -> Result<f64, ChartError> {
        self.check_r(r)?;
        Ok(self.f_raw(r))
    }

    pub(crate) fn f_raw(&self, r: f64) -> f64 {
        (r - self.mass) * (r / self.mass).exp()
    }

    fn f_deriv_raw(&self, r: f64) -> f64 {
        // d/dr (r−μ)e^{r/μ} = e^{r/μ}·r/μ
        (r / self.mass).exp() * r / self.mass
    }

    /// Conformal factor `F(r) = (4μ²/r)·e^{−r/μ}` of the KS plane metric.
    pub fn big_f(&self, r: f64) -> Result<f64, ChartError> {
        self.check_r(r)?;
        Ok(self.big_f_raw(r))
    }

    pub(crate) fn big_f_raw(&self, r: f64) -> f64 {
        let mu = self.mass;
        (4.0 * mu * mu / r) * (-r / mu).exp()
    }

    /// Invert `w = f(r)` by safeguarded Newton on a sign-change bracket.
    ///
    /// Bracket: `[0, μ]` for w ≤ 0 (f is −μ at r=0 and 0 at r=μ), and
    /// `[μ, μ·(2 + log(1+w/μ))]` for w > 0, expanded geometrically should
    /// the upper end ever fall short.
    pub fn f_inv(&self, w: f64) -> Result<f64, ChartError> {
        let mu = self.mass;
        if !w.is_finite() || w <= -mu {
            return Err(ChartError::BelowRange { w, mass: mu });
        }
        if w == 0.0 {
            return Ok(mu);
        }
        if w > 1e6 * mu {
            // Far out, e^{r/μ} would overflow; solve in log space instead:
            // x + log(x−1) = log(w/μ) for x = r/μ.
            let target = (w / mu).ln();
            let phi = |x: f64| x + (x - 1.0).ln() - target;
            let dphi = |x: f64| 1.0 + 1.0 / (x - 1.0);
            let lo = (target - target.ln()).max(1.0 + 1e-9);
            let x = root::newton_bisect(phi, dphi, lo, target, 1e-14, 1.0).map_err(|e| {
                ChartError::RootFailure {
                    what: "f_inv",
                    detail: e.to_string(),
                }
            })?;
            return Ok(mu * x);
        }
        let (lo, hi) = if w < 0.0 {
            (0.0, mu)
        } else {
            let mut hi = mu * (2.0 + (1.0 + w / mu).ln());
            while self.f_raw(hi) < w {
                hi = mu + 2.0 * (hi - mu);
            }
            (mu, hi)
        };
        let r = root::newton_bisect(
            |r| self.f_raw(r) - w,
            |r| self.f_deriv_raw(r),
            lo,
            hi,
            1e-13,
            mu,
        )
        .map_err(|e| match e {
            RootError::NoBracket { .. } => ChartError::BelowRange { w, mass: mu },
            other => ChartError::RootFailure {
                what: "f_inv",
                detail: other.to_string(),
            },
        })?;
        Ok(r.max(f64::MIN_POSITIVE))
    }

    /// Partial derivatives of `r = f⁻¹(uv)`; finite on the horizon.
    ///
    /// From `uv = f(r)`: `∂r/∂u = v/f′(r) = vμe^{−r/μ}/r` and symmetrically
    /// for v.
    pub(crate) fn r_partials(&self, u: f64, v: f64, r: f64) -> (f64, f64) {
        let mu = self.mass;
        let common = mu * (-r / mu).exp() / r;
        (v * common, u * common)
    }
}

/// `(f(r), F(r))` for the KS construction at mass μ.
pub fn ks_profile(mass: f64, r: f64) -> Result<(f64, f64), ChartError> {
    super::check_mass(mass)?;
    let p = KsProfile::new(mass);
    Ok((p.f(r)?, p.big_f(r)?))
}

/// `r = f⁻¹(w)`, defined for w > −μ.
pub fn ks_f_inv(mass: f64, w: f64) -> Result<f64, ChartError> {
    super::check_mass(mass)?;
    KsProfile::new(mass).f_inv(w)
}

/// Region of the KS plane containing `(u, v)`.
pub fn classify_region(mass: f64, u: f64, v: f64) -> Result<Region, ChartError> {
    super::check_mass(mass)?;
    let uv = u * v;
    if uv <= -mass {
        return Err(ChartError::BelowRange { w: uv, mass });
    }
    if uv.abs() <= HORIZON_TOL * mass * std::f64::consts::E {
        return Ok(Region::Horizon);
    }
    // uv > 0 ⇔ r = f⁻¹(uv) > μ (exterior); uv < 0 ⇔ interior.
    Ok(if uv > 0.0 {
        if u > 0.0 {
            Region::RIIPlus
        } else {
            Region::RIIMinus
        }
    } else if u > 0.0 {
        Region::RIPlus
    } else {
        Region::RIMinus
    })
}

/// Branch map `(t, r) ↦ (u, v)` into the requested region:
/// `u = s_u·√|r−μ|·e^{(r+t)/2μ}`, `v = s_v·√|r−μ|·e^{(r−t)/2μ}`.
pub fn hd_to_ks(mass: f64, region: Region, t: f64, r: f64) -> Result<(f64, f64), ChartError> {
    super::check_mass(mass)?;
    let (su, sv) = region
        .branch_signs()
        .ok_or(ChartError::RegionMismatch { region, r, mass })?;
    if r <= 0.0 || !r.is_finite() {
        return Err(ChartError::NonPositiveRadius { r });
    }
    if r == mass {
        return Err(ChartError::AtHorizonRadius { r, mass });
    }
    let ok = if region.is_interior() {
        r < mass
    } else {
        r > mass
    };
    if !ok {
        return Err(ChartError::RegionMismatch { region, r, mass });
    }
    let root = (r - mass).abs().sqrt();
    let u = su * root * ((r + t) / (2.0 * mass)).exp();
    let v = sv * root * ((r - t) / (2.0 * mass)).exp();
    Ok((u, v))
}

/// Inverse of the branch maps: recover `(region, t, r)` from `(u, v)`.
///
/// `r = f⁻¹(uv)` and `t = μ·log|u/v|`, which is the ratio of the two branch
/// exponentials on every branch.
pub fn ks_to_hd(mass: f64, u: f64, v: f64) -> Result<(Region, f64, f64), ChartError> {
    let region = classify_region(mass, u, v)?;
    if region == Region::Horizon {
        return Err(ChartError::HorizonPoint { u, v });
    }
    let profile = KsProfile::new(mass);
    let r = profile.f_inv(u * v)?;
    let t = mass * (u / v).abs().ln();
    Ok((region, t, r))
}

fn sphere_domain(theta: f64) -> bool {
    theta > 0.0 && theta < std::f64::consts::PI
}

/// The 4-D KS chart `(u, v, θ, φ)` with metric
/// `(F/2)(du⊗dv + dv⊗du) + r²ζ_{S²}`, `r = f⁻¹(uv)`, on `uv > −μ`.
///
/// Carries closed-form Christoffel symbols that stay finite on the horizon,
/// and the time orientation `∂u − ∂v`.
pub fn chart_4d(mass: f64) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let profile = KsProfile::new(mass);
    let domain: crate::geometry::DomainFn =
        Box::new(move |p: &[f64]| p[0] * p[1] > -mass && sphere_domain(p[2]));
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let r = profile.f_inv(p[0] * p[1]).expect("domain-checked uv");
        let big_f = profile.big_f_raw(r);
        let st = p[2].sin();
        let mut g = DMatrix::zeros(4, 4);
        g[(0, 1)] = 0.5 * big_f;
        g[(1, 0)] = 0.5 * big_f;
        g[(2, 2)] = r * r;
        g[(3, 3)] = r * r * st * st;
        g
    });
    let christoffel: crate::geometry::ChristoffelFn = Box::new(move |p: &[f64]| {
        let (u, v, th) = (p[0], p[1], p[2]);
        let r = profile.f_inv(u * v).expect("domain-checked uv");
        let big_f = profile.big_f_raw(r);
        let (ru, rv) = profile.r_partials(u, v, r);
        let c = 1.0 / r + 1.0 / mass;
        let (st, ct) = (th.sin(), th.cos());
        let mut gam = vec![DMatrix::zeros(4, 4); 4];
        let mut set = |a: usize, b: usize, cc: usize, val: f64| {
            gam[a][(b, cc)] = val;
            gam[a][(cc, b)] = val;
        };
        // Plane block: conformal null form, Γ^u_uu = F_u/F, Γ^v_vv = F_v/F.
        set(0, 0, 0, -c * ru);
        set(1, 1, 1, -c * rv);
        // Sphere–plane coupling through the warp r(u, v).
        set(0, 2, 2, -2.0 * r * rv / big_f);
        set(0, 3, 3, -2.0 * r * rv * st * st / big_f);
        set(1, 2, 2, -2.0 * r * ru / big_f);
        set(1, 3, 3, -2.0 * r * ru * st * st / big_f);
        set(2, 0, 2, ru / r);
        set(2, 1, 2, rv / r);
        set(3, 0, 3, ru / r);
        set(3, 1, 3, rv / r);
        // Round-sphere block.
        set(2, 3, 3, -st * ct);
        set(3, 2, 3, ct / st);
        gam
    });
    let orientation: crate::geometry::OrientationFn =
        Box::new(|_p: &[f64]| Some(vec![1.0, -1.0, 0.0, 0.0]));
    Ok(ChartSpec::new("ks", 4, mass, domain, metric)
        .with_christoffel(christoffel)
        .with_orientation(orientation))
}

/// The KS t–r plane `(u, v)` alone: metric `(F/2)(du⊗dv + dv⊗du)` with the
/// closed-form sectional curvature `μ/r³` attached.
pub fn chart_plane(mass: f64) -> Result<ChartSpec, ChartError> {
    super::check_mass(mass)?;
    let profile = KsProfile::new(mass);
    let domain: crate::geometry::DomainFn = Box::new(move |p: &[f64]| p[0] * p[1] > -mass);
    let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
        let r = profile.f_inv(p[0] * p[1]).expect("domain-checked uv");
        let big_f = profile.big_f_raw(r);
        let mut g = DMatrix::zeros(2, 2);
        g[(0, 1)] = 0.5 * big_f;
        g[(1, 0)] = 0.5 * big_f;
        g
    });
    let christoffel: crate::geometry::ChristoffelFn = Box::new(move |p: &[f64]| {
        let (u, v) = (p[0], p[1]);
        let r = profile.f_inv(u * v).expect("domain-checked uv");
        let (ru, rv) = profile.r_partials(u, v, r);
        let c = 1.0 / r + 1.0 / mass;
        let mut gam = vec![DMatrix::zeros(2, 2); 2];
        gam[0][(0, 0)] = -c * ru;
        gam[1][(1, 1)] = -c * rv;
        gam
    });
    let sectional: crate::geometry::SectionalFn = Box::new(move |p: &[f64]| {
        let r = profile.f_inv(p[0] * p[1]).expect("domain-checked uv");
        mass / (r * r * r)
    });
    let orientation: crate::geometry::OrientationFn = Box::new(|_p: &[f64]| Some(vec![1.0, -1.0]));
    Ok(ChartSpec::new("ks_plane", 2, mass, domain, metric)
        .with_christoffel(christoffel)
        .with_sectional(sectional)
        .with_orientation(orientation))
}
