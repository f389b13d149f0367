//! Chart registry and chart-to-chart transitions.
//!
//! Twelve stable chart identifiers form the external contract:
//! `hd`, `schwarzschild_unimodular`, `uniquely2`, `ks`, `painleve_gullstrand`,
//! `eddington_paper`, `eddington_derived`, `lemaitre_paper`, `lemaitre_alt`,
//! `kruskal_xy`, `er_bridge`, `euclid_shifted`. A few auxiliary ids
//! (`er_bridge_paper` and the 2-D planes `hd_plane`, `ks_plane`) ship beside
//! them for measurement work.

pub mod historical;
pub mod ks;

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::geometry::model::StaticModel;
use crate::geometry::{metric_eval, ChartSpec, GeometryError};
use crate::num::diff;

pub use historical::{EddingtonVariant, ErVariant, LemaitreVariant};
pub use ks::{classify_region, hd_to_ks, ks_f_inv, ks_profile, ks_to_hd, KsProfile, Region};

/// The chart identifiers that form the CLI contract.
pub const CHART_IDS: [&str; 12] = [
    "hd",
    "schwarzschild_unimodular",
    "uniquely2",
    "ks",
    "painleve_gullstrand",
    "eddington_paper",
    "eddington_derived",
    "lemaitre_paper",
    "lemaitre_alt",
    "kruskal_xy",
    "er_bridge",
    "euclid_shifted",
];

/// Additional registered ids used by the measurement suites.
pub const EXTRA_CHART_IDS: [&str; 3] = ["er_bridge_paper", "hd_plane", "ks_plane"];

#[derive(Debug, Clone, PartialEq)]
pub enum ChartError {
    UnknownChart {
        id: String,
    },
    UnknownTransition {
        source: String,
        target: String,
        branch: String,
    },
    InvalidMass {
        mass: f64,
    },
    NonPositiveRadius {
        r: f64,
    },
    /// Argument at or below the range infimum −μ of the profile f.
    BelowRange {
        w: f64,
        mass: f64,
    },
    /// HD coordinates are undefined on the horizon uv = 0.
    HorizonPoint {
        u: f64,
        v: f64,
    },
    /// r = μ is excluded from every static chart.
    AtHorizonRadius {
        r: f64,
        mass: f64,
    },
    /// Radius on the wrong side of μ for the requested region.
    RegionMismatch {
        region: ks::Region,
        r: f64,
        mass: f64,
    },
    /// Inverse transition evaluated outside its image (e.g. R ≤ μ).
    NoPreimage {
        value: f64,
        mass: f64,
    },
    /// The source prints no transition for this chart.
    NoPrintedTransition {
        kind: String,
    },
    RootFailure {
        what: &'static str,
        detail: String,
    },
    Geometry(GeometryError),
}

impl std::fmt::Display for ChartError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChartError::UnknownChart { id } => write!(f, "unknown chart id '{id}'"),
            ChartError::UnknownTransition {
                source,
                target,
                branch,
            } => {
                write!(f, "no transition {source} -> {target} (branch '{branch}')")
            }
            ChartError::InvalidMass { mass } => write!(f, "mass must be positive, got {mass}"),
            ChartError::NonPositiveRadius { r } => write!(f, "radius must be positive, got {r}"),
            ChartError::BelowRange { w, mass } => {
                write!(f, "{w} is at or below the range infimum -mu = {}", -mass)
            }
            ChartError::HorizonPoint { u, v } => {
                write!(f, "HD coordinates undefined on the horizon (u={u}, v={v})")
            }
            ChartError::AtHorizonRadius { r, mass } => {
                write!(f, "r = {r} is the excluded radius mu = {mass}")
            }
            ChartError::RegionMismatch { region, r, mass } => {
                write!(f, "r = {r} lies outside region {region} (mu = {mass})")
            }
            ChartError::NoPreimage { value, mass } => {
                write!(f, "value {value} has no preimage (image is ({mass}, inf))")
            }
            ChartError::NoPrintedTransition { kind } => {
                write!(
                    f,
                    "'{kind}' is a standalone chart: no transition is printed"
                )
            }
            ChartError::RootFailure { what, detail } => write!(f, "{what}: {detail}"),
            ChartError::Geometry(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ChartError {}

impl From<GeometryError> for ChartError {
    fn from(e: GeometryError) -> Self {
        ChartError::Geometry(e)
    }
}

pub(crate) fn check_mass(mass: f64) -> Result<(), ChartError> {
    if mass > 0.0 && mass.is_finite() {
        Ok(())
    } else {
        Err(ChartError::InvalidMass { mass })
    }
}

/// Build the chart registered under `id` at mass μ.
pub fn build_chart(id: &str, mass: f64) -> Result<ChartSpec, ChartError> {
    check_mass(mass)?;
    match id {
        "hd" => Ok(Arc::new(StaticModel::hilbert_droste(mass)).chart_4d("hd")),
        "hd_plane" => Ok(Arc::new(StaticModel::hilbert_droste(mass)).chart_plane("hd_plane")),
        "schwarzschild_unimodular" => {
            Ok(Arc::new(StaticModel::unimodular(mass)).chart_4d("schwarzschild_unimodular"))
        }
        "uniquely2" => Ok(Arc::new(StaticModel::uniquely2(mass)).chart_4d("uniquely2")),
        "ks" => ks::chart_4d(mass),
        "ks_plane" => ks::chart_plane(mass),
        "painleve_gullstrand" => historical::painleve_gullstrand(mass),
        "eddington_paper" => historical::eddington(mass, EddingtonVariant::Paper),
        "eddington_derived" => historical::eddington(mass, EddingtonVariant::Derived),
        "lemaitre_paper" => historical::lemaitre(mass, LemaitreVariant::Paper),
        "lemaitre_alt" => historical::lemaitre(mass, LemaitreVariant::Alt),
        "kruskal_xy" => historical::kruskal_xy(mass),
        "er_bridge" => historical::er_bridge(mass, ErVariant::Derived),
        "er_bridge_paper" => historical::er_bridge(mass, ErVariant::Paper),
        "euclid_shifted" => historical::euclid_shifted(mass),
        _ => Err(ChartError::UnknownChart { id: id.to_string() }),
    }
}

/// Forward the unimodular radial coordinate: `h ↦ R = (3h + μ³)^{1/3}`,
/// mapping (0, ∞) onto (μ, ∞) — the image never reaches R ≤ μ.
pub fn unimodular_transition(mass: f64, h: f64) -> Result<f64, ChartError> {
    check_mass(mass)?;
    if h <= 0.0 || !h.is_finite() {
        return Err(ChartError::NonPositiveRadius { r: h });
    }
    Ok((3.0 * h + mass.powi(3)).cbrt())
}

/// Inverse of [`unimodular_transition`]: `R ↦ h = (R³ − μ³)/3`, defined only
/// on the image R > μ.
pub fn unimodular_transition_inverse(mass: f64, big_r: f64) -> Result<f64, ChartError> {
    check_mass(mass)?;
    if !(big_r > mass) || !big_r.is_finite() {
        return Err(ChartError::NoPreimage { value: big_r, mass });
    }
    Ok((big_r.powi(3) - mass.powi(3)) / 3.0)
}

type CoordMap = Box<dyn Fn(&[f64]) -> Result<Vec<f64>, ChartError> + Send + Sync>;
type DomainPredicate = Box<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// A named coordinate transition between two registered charts.
pub struct TransitionMap {
    pub source: String,
    pub target: String,
    pub branch: String,
    pub forward: CoordMap,
    pub inverse: CoordMap,
    pub domain: DomainPredicate,
}

impl std::fmt::Debug for TransitionMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TransitionMap({} -> {}, branch {})",
            self.source, self.target, self.branch
        )
    }
}

/// The `(source, target, branch)` triples [`transition`] recognizes.
pub fn transition_catalog() -> Vec<(&'static str, &'static str, &'static str)> {
    let mut list = Vec::new();
    for branch in ["R_II_plus", "R_II_minus", "R_I_plus", "R_I_minus"] {
        list.push(("hd", "ks", branch));
        list.push(("hd_plane", "ks_plane", branch));
    }
    list.push(("schwarzschild_unimodular", "hd", "exterior"));
    list.push(("hd", "painleve_gullstrand", "exterior"));
    list.push(("hd", "eddington_derived", "exterior"));
    list.push(("hd", "eddington_paper", "exterior"));
    list.push(("hd", "kruskal_xy", "exterior"));
    list
}

/// Build the transition from `source` to `target` along `branch`.
pub fn transition(
    source: &str,
    target: &str,
    branch: &str,
    mass: f64,
) -> Result<TransitionMap, ChartError> {
    check_mass(mass)?;
    let unknown = || ChartError::UnknownTransition {
        source: source.to_string(),
        target: target.to_string(),
        branch: branch.to_string(),
    };
    match (source, target) {
        ("hd", "ks") | ("hd_plane", "ks_plane") => {
            let region = Region::from_tag(branch).ok_or_else(unknown)?;
            if region == Region::Horizon {
                return Err(unknown());
            }
            let plane = source == "hd_plane";
            Ok(hd_ks_transition(mass, region, plane))
        }
        ("schwarzschild_unimodular", "hd") => {
            if branch != "exterior" {
                return Err(unknown());
            }
            Ok(unimodular_hd_transition(mass))
        }
        ("hd", "painleve_gullstrand") if branch == "exterior" => {
            Ok(exterior_time_transition(
                mass,
                source,
                target,
                historical::pg_time,
                |mass, z, r| {
                    // invert z = t + r + μ log|r/μ − 1| at fixed r
                    Ok(z - r - mass * (r / mass - 1.0).abs().ln())
                },
            ))
        }
        ("hd", "eddington_derived") | ("hd", "eddington_paper") if branch == "exterior" => {
            Ok(exterior_time_transition(
                mass,
                source,
                target,
                historical::eddington_time,
                |mass, tt, r| Ok(tt + mass * (r - mass).abs().ln()),
            ))
        }
        ("hd", "kruskal_xy") if branch == "exterior" => Ok(hd_kruskal_xy_transition(mass)),
        _ => Err(unknown()),
    }
}

fn hd_ks_transition(mass: f64, region: Region, plane: bool) -> TransitionMap {
    let (source, target) = if plane {
        ("hd_plane", "ks_plane")
    } else {
        ("hd", "ks")
    };
    let forward: CoordMap = Box::new(move |p: &[f64]| {
        let (u, v) = hd_to_ks(mass, region, p[0], p[1])?;
        let mut out = vec![u, v];
        out.extend_from_slice(&p[2..]);
        Ok(out)
    });
    let inverse: CoordMap = Box::new(move |p: &[f64]| {
        let (found, t, r) = ks_to_hd(mass, p[0], p[1])?;
        if found != region {
            return Err(ChartError::RegionMismatch { region, r, mass });
        }
        let mut out = vec![t, r];
        out.extend_from_slice(&p[2..]);
        Ok(out)
    });
    let interior = region.is_interior();
    let domain = Box::new(move |p: &[f64]| {
        let r = p[1];
        r > 0.0 && if interior { r < mass } else { r > mass }
    });
    TransitionMap {
        source: source.into(),
        target: target.into(),
        branch: region.tag().into(),
        forward,
        inverse,
        domain,
    }
}

fn unimodular_hd_transition(mass: f64) -> TransitionMap {
    let forward: CoordMap = Box::new(move |p: &[f64]| {
        let big_r = unimodular_transition(mass, p[1])?;
        let mut out = p.to_vec();
        out[1] = big_r;
        Ok(out)
    });
    let inverse: CoordMap = Box::new(move |p: &[f64]| {
        let h = unimodular_transition_inverse(mass, p[1])?;
        let mut out = p.to_vec();
        out[1] = h;
        Ok(out)
    });
    TransitionMap {
        source: "schwarzschild_unimodular".into(),
        target: "hd".into(),
        branch: "exterior".into(),
        forward,
        inverse,
        domain: Box::new(move |p: &[f64]| p[1] > 0.0),
    }
}

fn exterior_time_transition(
    mass: f64,
    source: &str,
    target: &str,
    time_fwd: fn(f64, f64, f64) -> Result<f64, ChartError>,
    time_inv: fn(f64, f64, f64) -> Result<f64, ChartError>,
) -> TransitionMap {
    let forward: CoordMap = Box::new(move |p: &[f64]| {
        let z = time_fwd(mass, p[0], p[1])?;
        let mut out = p.to_vec();
        out[0] = z;
        Ok(out)
    });
    let inverse: CoordMap = Box::new(move |p: &[f64]| {
        let t = time_inv(mass, p[0], p[1])?;
        let mut out = p.to_vec();
        out[0] = t;
        Ok(out)
    });
    TransitionMap {
        source: source.into(),
        target: target.into(),
        branch: "exterior".into(),
        forward,
        inverse,
        domain: Box::new(move |p: &[f64]| p[1] > mass),
    }
}

fn hd_kruskal_xy_transition(mass: f64) -> TransitionMap {
    let forward: CoordMap = Box::new(move |p: &[f64]| {
        let (x, y) = historical::kruskal_xy_map(mass, p[0], p[1])?;
        let mut out = vec![x, y];
        out.extend_from_slice(&p[2..]);
        Ok(out)
    });
    let inverse: CoordMap = Box::new(move |p: &[f64]| {
        let (x, y) = (p[0], p[1]);
        let r = historical::kruskal_xy_radius(mass, x, y)?;
        if r <= mass {
            return Err(ChartError::AtHorizonRadius { r, mass });
        }
        // x, y > 0 branch: t = 2μ·artanh(y/x)
        let t = 2.0 * mass * (y / x).atanh();
        let mut out = vec![t, r];
        out.extend_from_slice(&p[2..]);
        Ok(out)
    });
    TransitionMap {
        source: "hd".into(),
        target: "kruskal_xy".into(),
        branch: "exterior".into(),
        forward,
        inverse,
        domain: Box::new(move |p: &[f64]| p[1] > mass),
    }
}

/// Jacobian of the forward map by 4th-order central differences, with error
/// propagation when a stencil point leaves the transition domain.
pub fn transition_jacobian(map: &TransitionMap, p: &[f64]) -> Result<Vec<Vec<f64>>, ChartError> {
    let base = (map.forward)(p)?;
    let (n, m) = (p.len(), base.len());
    let mut jac = vec![vec![0.0; n]; m];
    let mut q = p.to_vec();
    for axis in 0..n {
        let h = diff::step_for(p[axis]);
        let mut eval = |off: f64| -> Result<Vec<f64>, ChartError> {
            q[axis] = p[axis] + off;
            let out = (map.forward)(&q);
            q[axis] = p[axis];
            out
        };
        let p1 = eval(h)?;
        let m1 = eval(-h)?;
        let p2 = eval(2.0 * h)?;
        let m2 = eval(-2.0 * h)?;
        for i in 0..m {
            jac[i][axis] = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h);
        }
    }
    Ok(jac)
}

/// Componentwise max-abs difference between the source metric at `p` and the
/// pullback `Jᵀ·g_target(forward(p))·J` of the target metric.
pub fn pullback_residual(
    source: &ChartSpec,
    target: &ChartSpec,
    map: &TransitionMap,
    p: &[f64],
) -> Result<f64, ChartError> {
    let g_src = metric_eval(source, p)?;
    let image = (map.forward)(p)?;
    let g_tgt = metric_eval(target, &image)?;
    let jac = transition_jacobian(map, p)?;
    let (n, m) = (p.len(), image.len());
    let mut pulled = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for a in 0..m {
                for b in 0..m {
                    s += jac[a][i] * g_tgt[(a, b)] * jac[b][j];
                }
            }
            pulled[(i, j)] = s;
        }
    }
    Ok((pulled - g_src).abs().max())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_builds_every_contract_chart() {
        for id in CHART_IDS.iter().chain(EXTRA_CHART_IDS.iter()) {
            let chart = build_chart(id, 1.0).unwrap();
            assert_eq!(&chart.id, id);
        }
        assert!(matches!(
            build_chart("nope", 1.0),
            Err(ChartError::UnknownChart { .. })
        ));
        assert!(matches!(
            build_chart("hd", -1.0),
            Err(ChartError::InvalidMass { .. })
        ));
    }

    #[test]
    fn unimodular_image_is_exactly_the_exterior() {
        assert!((unimodular_transition(1.0, 21.0).unwrap() - 4.0).abs() < 1e-14);
        // h → 0⁺ approaches R = μ from above but never attains it.
        for h in [1e-12, 1e-6, 0.01, 1.0, 1e6] {
            let r = unimodular_transition(1.0, h).unwrap();
            assert!(r > 1.0);
        }
        assert!(matches!(
            unimodular_transition_inverse(1.0, 0.5),
            Err(ChartError::NoPreimage { .. })
        ));
        assert!(matches!(
            unimodular_transition_inverse(1.0, 1.0),
            Err(ChartError::NoPreimage { .. })
        ));
        let h = unimodular_transition_inverse(1.0, 4.0).unwrap();
        assert!((h - 21.0).abs() < 1e-12);
    }

    #[test]
    fn every_cataloged_transition_round_trips() {
        let mass = 1.0;
        for (source, target, branch) in transition_catalog() {
            let map = transition(source, target, branch, mass).unwrap();
            let interior = branch.starts_with("R_I_");
            let r = if interior { 0.55 } else { 2.3 };
            let p = if source.ends_with("_plane") {
                vec![0.4, r]
            } else {
                vec![0.4, r, 1.1, 0.3]
            };
            assert!((map.domain)(&p), "{source}->{target} {branch}");
            let image = (map.forward)(&p).unwrap();
            let back = (map.inverse)(&image).unwrap();
            for (a, b) in p.iter().zip(back.iter()) {
                assert!(
                    (a - b).abs() < 1e-10 * (1.0 + a.abs()),
                    "{source}->{target} {branch}: {p:?} vs {back:?}"
                );
            }
        }
    }

    #[test]
    fn ks_plane_pullback_reproduces_hd_plane() {
        let mass = 1.0;
        let source = build_chart("hd_plane", mass).unwrap();
        let target = build_chart("ks_plane", mass).unwrap();
        for branch in ["R_II_plus", "R_II_minus", "R_I_plus", "R_I_minus"] {
            let map = transition("hd_plane", "ks_plane", branch, mass).unwrap();
            let interior = branch.starts_with("R_I_");
            for frac in [0.2, 0.6, 0.9] {
                let r = if interior { frac } else { 1.0 + 2.0 * frac };
                let p = [0.7, r];
                let res = pullback_residual(&source, &target, &map, &p).unwrap();
                assert!(res < 1e-8, "{branch} at r={r}: residual {res}");
            }
        }
    }

    #[test]
    fn historical_pullbacks_identify_the_isometric_variants() {
        let mass = 1.0;
        let hd = build_chart("hd", mass).unwrap();
        let p = [0.4, 2.7, 1.1, 0.3];

        let pg = build_chart("painleve_gullstrand", mass).unwrap();
        let map = transition("hd", "painleve_gullstrand", "exterior", mass).unwrap();
        assert!(pullback_residual(&hd, &pg, &map, &p).unwrap() < 1e-8);

        let derived = build_chart("eddington_derived", mass).unwrap();
        let map = transition("hd", "eddington_derived", "exterior", mass).unwrap();
        assert!(pullback_residual(&hd, &derived, &map, &p).unwrap() < 1e-8);

        let paper = build_chart("eddington_paper", mass).unwrap();
        let map = transition("hd", "eddington_paper", "exterior", mass).unwrap();
        let res = pullback_residual(&hd, &paper, &map, &p).unwrap();
        assert!(res > 1e-2, "printed cross-term sign should fail: {res}");
    }
}
