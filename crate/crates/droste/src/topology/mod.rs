//! Finite, sampled realizations of chart gluing: Hausdorff-violation
//! witness search over boundary-approach sequences, the two-sheet bridge
//! construction glued along its degenerate throat, and connectivity queries
//! that tell the one-region, two-region, and maximally extended manifolds
//! apart by broken-geodesic search.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::charts::{self, ChartError, ErVariant};
use crate::geodesics::{self, GeodesicError};
use crate::geometry::{ChartSpec, DomainFn};

#[derive(Debug, Clone, PartialEq)]
pub enum TopologyError {
    UnknownSpace { space: String },
    Chart(ChartError),
    Geodesic(GeodesicError),
    BadInput { what: String },
}

impl std::fmt::Display for TopologyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TopologyError::UnknownSpace { space } => write!(f, "unknown space '{space}'"),
            TopologyError::Chart(e) => e.fmt(f),
            TopologyError::Geodesic(e) => e.fmt(f),
            TopologyError::BadInput { what } => write!(f, "bad input: {what}"),
        }
    }
}

impl std::error::Error for TopologyError {}

impl From<ChartError> for TopologyError {
    fn from(e: ChartError) -> Self {
        TopologyError::Chart(e)
    }
}

impl From<GeodesicError> for TopologyError {
    fn from(e: GeodesicError) -> Self {
        TopologyError::Geodesic(e)
    }
}

/// A point-to-point identification between two chart regions.
pub type PointMapFn = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
/// Produces, per sequence index, a candidate limit point and an approach
/// direction; the search walks `limit + direction·decayⁿ`.
pub type ProbeFn = Box<dyn Fn(usize, &SearchConfig) -> (Vec<f64>, Vec<f64>) + Send + Sync>;

/// Two chart regions M, N with subsets U, V identified by a homeomorphism ξ.
pub struct GluingStructure {
    pub name: String,
    pub dim: usize,
    pub m_domain: DomainFn,
    pub n_domain: DomainFn,
    pub u_domain: DomainFn,
    pub v_domain: DomainFn,
    pub xi: PointMapFn,
    pub xi_inverse: PointMapFn,
    /// Boundary-approach sampler driving the witness search.
    pub probe: ProbeFn,
}

impl std::fmt::Debug for GluingStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GluingStructure")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Number of boundary-approach sequences to examine.
    pub sequences: usize,
    /// Geometric decay ratio of the approach steps.
    pub decay: f64,
    /// Agreement tolerance between successive limit extrapolations.
    pub matching_tol: f64,
    /// Smallest approach step; sets the certification resolution.
    pub resolution: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            sequences: 10_000,
            decay: 0.5,
            matching_tol: 1e-6,
            resolution: 1e-4,
        }
    }
}

/// A certified non-Hausdorff witness: a sequence inside U whose limit left
/// M−U while its identified image sequence converged in N−V.
#[derive(Debug, Clone)]
pub struct Witness {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    /// The identified sample pairs (pₙ, ξ(pₙ)) that approach (p, q).
    pub pairs: Vec<(Vec<f64>, Vec<f64>)>,
    pub sequence_index: usize,
}

impl Witness {
    /// Every δ-neighborhood of both limit points contains identified pairs.
    pub fn sound_at(&self, radii: &[f64]) -> bool {
        radii.iter().all(|&delta| {
            self.pairs
                .iter()
                .any(|(a, b)| dist(a, &self.p) < delta && dist(b, &self.q) < delta)
        })
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Search the gluing for a pair of unseparated limit points.
///
/// Walks each probe sequence `limit + dir·decayⁿ` down to the resolution,
/// keeping only sequences that stay inside U with images inside V. A hit
/// requires the declared limit to sit in M−U and the geometrically
/// extrapolated image limit to sit in N−V, with two successive
/// extrapolations agreeing within the matching tolerance. `None` certifies
/// nothing beyond the sampled resolution.
pub fn hausdorff_witness(g: &GluingStructure, cfg: &SearchConfig) -> Option<Witness> {
    for j in 0..cfg.sequences {
        let (limit, dir) = (g.probe)(j, cfg);
        let dir_norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if dir_norm == 0.0 {
            continue;
        }
        if (g.u_domain)(&limit) || !(g.m_domain)(&limit) {
            continue; // limit must sit in M−U for a violation
        }
        let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
        let mut scale = 1.0f64;
        let mut inside = true;
        // Descend one step past the resolution so certified witnesses have
        // identified pairs strictly inside resolution-sized neighborhoods.
        while scale * dir_norm >= cfg.resolution * cfg.decay {
            let p_n: Vec<f64> = limit.iter().zip(&dir).map(|(l, d)| l + d * scale).collect();
            if !(g.u_domain)(&p_n) {
                inside = false;
                break;
            }
            let q_n = (g.xi)(&p_n);
            if !(g.v_domain)(&q_n) {
                inside = false;
                break;
            }
            pairs.push((p_n, q_n));
            scale *= cfg.decay;
        }
        if !inside || pairs.len() < 3 {
            continue;
        }
        let extrapolate = |a: &[f64], b: &[f64]| -> Vec<f64> {
            // Geometric-series limit from two consecutive images.
            a.iter()
                .zip(b)
                .map(|(x0, x1)| x1 + (x1 - x0) * cfg.decay / (1.0 - cfg.decay))
                .collect()
        };
        let n = pairs.len();
        let q_est = extrapolate(&pairs[n - 2].1, &pairs[n - 1].1);
        let q_prev = extrapolate(&pairs[n - 3].1, &pairs[n - 2].1);
        if dist(&q_est, &q_prev) > cfg.matching_tol {
            continue; // image sequence not convergent at this resolution
        }
        if (g.v_domain)(&q_est) || !(g.n_domain)(&q_est) {
            continue;
        }
        return Some(Witness {
            p: limit,
            q: q_est,
            pairs,
            sequence_index: j,
        });
    }
    None
}

/// Max round-trip defect |ξ⁻¹(ξ(x)) − x| over sampled points of U.
pub fn identification_roundtrip_defect(
    g: &GluingStructure,
    cfg: &SearchConfig,
    samples: usize,
) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..samples {
        let (limit, dir) = (g.probe)(j, cfg);
        let mut scale = 1.0;
        for _ in 0..8 {
            let x: Vec<f64> = limit.iter().zip(&dir).map(|(l, d)| l + d * scale).collect();
            scale *= cfg.decay;
            if !(g.u_domain)(&x) {
                continue;
            }
            let back = (g.xi_inverse)((g.xi)(&x).as_slice());
            worst = worst.max(dist(&back, &x));
        }
    }
    worst
}

/// The doubled-origin line: two copies of ℝ glued along ℝ⁺ by the identity.
/// The classic non-Hausdorff quotient; the witness is the origin pair.
pub fn doubled_line() -> GluingStructure {
    GluingStructure {
        name: "doubled_line".into(),
        dim: 1,
        m_domain: Box::new(|_p: &[f64]| true),
        n_domain: Box::new(|_p: &[f64]| true),
        u_domain: Box::new(|p: &[f64]| p[0] > 0.0),
        v_domain: Box::new(|p: &[f64]| p[0] > 0.0),
        xi: Box::new(|p: &[f64]| p.to_vec()),
        xi_inverse: Box::new(|p: &[f64]| p.to_vec()),
        probe: Box::new(|j, cfg| {
            let frac = j as f64 / cfg.sequences as f64;
            let base = -2.0 + 4.0 * frac;
            let dir = if j % 2 == 0 { 1.0 } else { -1.0 };
            (vec![base], vec![dir])
        }),
    }
}

/// A gluing with U = M (total identification): the violation condition is
/// vacuous, so the search must come back empty.
pub fn totally_identified_line() -> GluingStructure {
    let mut g = doubled_line();
    g.name = "totally_identified_line".into();
    g.u_domain = Box::new(|_p: &[f64]| true);
    g.v_domain = Box::new(|_p: &[f64]| true);
    g
}

/// The two-sheet bridge space: sheets u ≥ 0 and u ≤ 0 with the degenerate
/// throat u = 0 identified pointwise, each sheet carrying the bridge metric.
pub struct GluedSpace {
    pub structure: GluingStructure,
    /// The metric carried by each sheet.
    pub side_charts: [ChartSpec; 2],
    /// Region-graph nodes: sheet 1 bulk, the throat, sheet 2 bulk.
    pub nodes: [&'static str; 3],
    /// Identification edges between nodes.
    pub edges: [(usize, usize); 2],
}

impl GluedSpace {
    /// Node of a sampled point on the given side (0 or 1). Points of the
    /// identified subset map to the shared throat node from either side.
    pub fn node_of(&self, side: usize, p: &[f64]) -> Option<usize> {
        let in_side = match side {
            0 => (self.structure.m_domain)(p),
            1 => (self.structure.n_domain)(p),
            _ => return None,
        };
        if !in_side {
            return None;
        }
        let in_glued = match side {
            0 => (self.structure.u_domain)(p),
            _ => (self.structure.v_domain)(p),
        };
        Some(if in_glued { 1 } else { side * 2 })
    }
}

/// Build the bridge space at mass μ: metric from the substitution
/// r = u² + μ, so g_tt = −u²/(u²+μ), g_uu = 4(u²+μ), spheres (u²+μ)²ζ_{S²};
/// the throat u = 0 carries the degenerate slice where g_tt vanishes.
pub fn er_bridge(mass: f64) -> Result<GluedSpace, TopologyError> {
    let chart_a = charts::build_chart("er_bridge", mass)?;
    let chart_b = charts::build_chart("er_bridge", mass)?;
    let structure = GluingStructure {
        name: "er_bridge".into(),
        dim: 4,
        m_domain: Box::new(|p: &[f64]| p[1] >= 0.0),
        n_domain: Box::new(|p: &[f64]| p[1] <= 0.0),
        u_domain: Box::new(|p: &[f64]| p[1] == 0.0),
        v_domain: Box::new(|p: &[f64]| p[1] == 0.0),
        xi: Box::new(|p: &[f64]| p.to_vec()),
        xi_inverse: Box::new(|p: &[f64]| p.to_vec()),
        probe: Box::new(|j, cfg| {
            // Throat points with transverse approach directions: every
            // sequence leaves the identified slice immediately, so the
            // search (correctly) never certifies a violation.
            let frac = j as f64 / cfg.sequences as f64;
            let t = -2.0 + 4.0 * frac;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            (vec![t, 0.0, 1.1, 0.3], vec![0.0, sign, 0.0, 0.0])
        }),
    };
    Ok(GluedSpace {
        structure,
        side_charts: [chart_a, chart_b],
        nodes: ["sheet_plus", "throat", "sheet_minus"],
        edges: [(0, 1), (1, 2)],
    })
}

/// Componentwise metric jump across the throat, sampled at mirrored points
/// u = ±ε for a decade of ε; the formula is even in u, so this vanishes.
pub fn bridge_metric_jump(mass: f64, variant: ErVariant) -> Result<f64, TopologyError> {
    let chart = charts::historical::er_bridge(mass, variant)?;
    let mut worst = 0.0f64;
    for k in 1..=10 {
        let eps = 1e-6 * k as f64;
        for t in [0.0, 1.3] {
            let plus = chart.metric_unchecked(&[t, eps, 1.1, 0.3]);
            let minus = chart.metric_unchecked(&[t, -eps, 1.1, 0.3]);
            worst = worst.max((plus - minus).abs().max());
        }
    }
    Ok(worst)
}

/// Measured homothety coefficient of the throat sphere: the square root of
/// the ratio between induced sphere lengths at u = 0 and unit-sphere
/// lengths. Both variants give μ — the printed first-power factor also
/// evaluates to μ² on the throat — so the radius-μ statement survives the
/// printed metric even though its vacuum property does not.
pub fn bridge_homothety(mass: f64, variant: ErVariant) -> Result<f64, TopologyError> {
    let chart = charts::historical::er_bridge(mass, variant)?;
    let mut ratio = 0.0f64;
    let mut count = 0usize;
    for theta in [0.6, 1.1, 2.2] {
        let g = chart.metric_unchecked(&[0.0, 0.0, theta, 0.3]);
        // Sphere-tangent directions (a ∂θ + b ∂φ) against the unit sphere.
        for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.6, -0.8)] {
            let num = g[(2, 2)] * a * a + g[(3, 3)] * b * b;
            let den = a * a + b * b * theta.sin() * theta.sin();
            ratio += num / den;
            count += 1;
        }
    }
    Ok((ratio / count as f64).sqrt())
}

/// One verified leg of a broken-geodesic path.
#[derive(Debug, Clone)]
pub struct Hop {
    pub chart: String,
    pub from: Vec<f64>,
    pub tangent: Vec<f64>,
    pub to: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum Connectivity {
    Path {
        hops: Vec<Hop>,
    },
    NotFound {
        budget_exhausted: bool,
        /// Analytic disconnection certificate, when one exists.
        certificate: Option<String>,
    },
}

impl Connectivity {
    pub fn found(&self) -> bool {
        matches!(self, Connectivity::Path { .. })
    }
}

fn atlas_for(space: &str) -> Option<&'static [&'static str]> {
    Some(match space {
        "schwarzschild" => &["schwarzschild_unimodular"],
        "hd" => &["hd"],
        "ks" => &["ks"],
        "er" => &["er_bridge"],
        _ => return None,
    })
}

/// Certificate that no chart of the atlas can carry a path between points
/// on opposite sides of an excluded locus: a decidable scan of the finite
/// atlas's domain predicates.
fn disconnection_certificate(
    space: &str,
    charts_list: &[ChartSpec],
    p: &[f64],
    q: &[f64],
) -> Option<String> {
    let (axis, wall, locus): (usize, f64, &str) = match space {
        "hd" => (1, charts_list[0].mass, "r = mass"),
        "er" => (1, 0.0, "u = 0"),
        _ => return None,
    };
    if (p[axis] - wall).signum() == (q[axis] - wall).signum() {
        return None;
    }
    let mut probe = p.to_vec();
    probe[axis] = wall;
    if charts_list.iter().any(|c| c.contains(&probe)) {
        return None;
    }
    Some(format!(
        "points lie on opposite sides of {locus} and every chart of the \
         '{space}' atlas excludes that locus, so no chart admits a crossing"
    ))
}

fn quantize(p: &[f64], cell: f64) -> Vec<i64> {
    p.iter().map(|x| (x / cell).round() as i64).collect()
}

/// Breadth-first search for a broken-geodesic path from `p` to `q` inside
/// the named space's atlas. Every hop is an integrated geodesic segment
/// (the exponential map with a bounded tangent), so a returned path is a
/// concrete piecewise-geodesic curve staying inside chart domains.
pub fn connectivity(
    space: &str,
    mass: f64,
    p: &[f64],
    q: &[f64],
    budget: usize,
) -> Result<Connectivity, TopologyError> {
    let ids = atlas_for(space).ok_or_else(|| TopologyError::UnknownSpace {
        space: space.into(),
    })?;
    let charts_list: Vec<ChartSpec> = ids
        .iter()
        .map(|id| charts::build_chart(id, mass))
        .collect::<Result<_, _>>()?;
    let chart = &charts_list[0];
    let dim = chart.dim;
    if p.len() != dim || q.len() != dim {
        return Err(TopologyError::BadInput {
            what: format!("points must have {dim} coordinates"),
        });
    }
    if !chart.contains(p) || !chart.contains(q) {
        return Err(TopologyError::BadInput {
            what: "endpoints must lie in the atlas".into(),
        });
    }

    let scale = if chart.id.starts_with("ks") {
        mass.sqrt()
    } else {
        mass
    };
    let step = 0.3 * scale;
    let cell = 0.5 * step;

    // Hop axes: angular axes join only when the endpoints disagree there.
    let mut axes: Vec<usize> = vec![0, 1];
    for axis in 2..dim {
        if (p[axis] - q[axis]).abs() > 1e-9 {
            axes.push(axis);
        }
    }

    // Bounding box around the endpoints keeps the search finite.
    let margin = 1.5 * scale;
    let in_box = |x: &[f64]| {
        x.iter().enumerate().all(|(i, xi)| {
            let lo = p[i].min(q[i]) - margin;
            let hi = p[i].max(q[i]) + margin;
            *xi >= lo && *xi <= hi
        })
    };

    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    let mut parents: HashMap<Vec<i64>, (Vec<i64>, Hop)> = HashMap::new();
    let mut frontier: VecDeque<(Vec<i64>, Vec<f64>)> = VecDeque::new();
    let start_key = quantize(p, cell);
    visited.insert(start_key.clone());
    frontier.push_back((start_key.clone(), p.to_vec()));
    let mut expansions = 0usize;

    let assemble =
        |parents: &HashMap<Vec<i64>, (Vec<i64>, Hop)>, mut key: Vec<i64>, closing: Option<Hop>| {
            let mut hops = Vec::new();
            if let Some(h) = closing {
                hops.push(h);
            }
            while let Some((prev, hop)) = parents.get(&key) {
                hops.push(hop.clone());
                key = prev.clone();
            }
            hops.reverse();
            Connectivity::Path { hops }
        };

    while let Some((key, x)) = frontier.pop_front() {
        if expansions >= budget {
            return Ok(Connectivity::NotFound {
                budget_exhausted: true,
                certificate: disconnection_certificate(space, &charts_list, p, q),
            });
        }
        expansions += 1;

        // Close enough for a direct shooting refinement onto q?
        if dist(&x, q) <= 1.5 * step {
            if let Some(hop) = shoot(chart, &x, q) {
                return Ok(assemble(&parents, key, Some(hop)));
            }
        }

        for &axis in &axes {
            for sign in [1.0, -1.0] {
                let mut tangent = vec![0.0; dim];
                tangent[axis] = sign * step;
                let Ok(end) = geodesics::exp_map(chart, &x, &tangent) else {
                    continue;
                };
                if !in_box(&end) {
                    continue;
                }
                let end_key = quantize(&end, cell);
                if visited.contains(&end_key) {
                    continue;
                }
                visited.insert(end_key.clone());
                parents.insert(
                    end_key.clone(),
                    (
                        key.clone(),
                        Hop {
                            chart: chart.id.clone(),
                            from: x.clone(),
                            tangent: tangent.clone(),
                            to: end.clone(),
                        },
                    ),
                );
                frontier.push_back((end_key, end));
            }
        }
    }

    Ok(Connectivity::NotFound {
        budget_exhausted: false,
        certificate: disconnection_certificate(space, &charts_list, p, q),
    })
}

/// Solve exp_x(ξ) = q for short distances by fixed-point shooting.
fn shoot(chart: &ChartSpec, x: &[f64], q: &[f64]) -> Option<Hop> {
    let mut tangent: Vec<f64> = q.iter().zip(x).map(|(a, b)| a - b).collect();
    for _ in 0..15 {
        let landed = geodesics::exp_map(chart, x, &tangent).ok()?;
        let err = dist(&landed, q);
        if err < 1e-9 * (1.0 + dist(q, &vec![0.0; q.len()])) {
            return Some(Hop {
                chart: chart.id.clone(),
                from: x.to_vec(),
                tangent,
                to: landed,
            });
        }
        for i in 0..tangent.len() {
            tangent[i] += q[i] - landed[i];
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubled_origin_witness_is_found_and_sound() {
        let g = doubled_line();
        let cfg = SearchConfig::default();
        let w = hausdorff_witness(&g, &cfg).expect("witness expected");
        assert_eq!(w.p, vec![0.0], "limit in the first copy");
        assert_eq!(w.q, vec![0.0], "limit in the second copy");
        assert!(w.sound_at(&[1e-2, 1e-3, 1e-4]), "soundness radii");
        assert!(identification_roundtrip_defect(&g, &cfg, 50) < 1e-12);
    }

    #[test]
    fn vacuous_and_full_slice_gluings_have_no_witness() {
        let cfg = SearchConfig::default();
        assert!(hausdorff_witness(&totally_identified_line(), &cfg).is_none());
        let bridge = er_bridge(1.0).unwrap();
        assert!(hausdorff_witness(&bridge.structure, &cfg).is_none());
    }

    #[test]
    fn bridge_space_is_quotient_consistent_and_continuous() {
        let space = er_bridge(1.5).unwrap();
        // Quotient consistency: throat points get the shared node from
        // either side; bulk points get their sheet's node.
        let throat = [0.7, 0.0, 1.1, 0.3];
        assert_eq!(space.node_of(0, &throat), Some(1));
        assert_eq!(space.node_of(1, &throat), Some(1));
        assert_eq!(space.node_of(0, &[0.7, 0.4, 1.1, 0.3]), Some(0));
        assert_eq!(space.node_of(1, &[0.7, -0.4, 1.1, 0.3]), Some(2));
        assert_eq!(space.node_of(1, &[0.7, 0.4, 1.1, 0.3]), None);

        for variant in [ErVariant::Derived, ErVariant::Paper] {
            assert!(bridge_metric_jump(1.5, variant).unwrap() < 1e-12);
        }
        // The time-time component vanishes on the throat.
        let g0 = space.side_charts[0].metric_unchecked(&[0.0, 0.0, 1.1, 0.3]);
        assert_eq!(g0[(0, 0)], 0.0);
    }

    #[test]
    fn throat_sphere_homothety_coefficients() {
        for mass in [1.0, 3.0] {
            let c = bridge_homothety(mass, ErVariant::Derived).unwrap();
            assert!((c - mass).abs() < 1e-9, "derived at {mass}: {c}");
            // The printed first-power sphere factor still evaluates to mu^2
            // on the throat, so the radius-mu statement holds there too.
            let printed = bridge_homothety(mass, ErVariant::Paper).unwrap();
            assert!(
                (printed - mass).abs() < 1e-9,
                "printed at {mass}: {printed}"
            );
        }
    }

    #[test]
    fn one_region_space_is_connected() {
        let p = [0.0, 0.5, 1.1, 0.3];
        let q = [0.4, 2.0, 1.1, 0.3];
        let res = connectivity("schwarzschild", 1.0, &p, &q, 4000).unwrap();
        let Connectivity::Path { hops } = res else {
            panic!("expected a path");
        };
        assert!(!hops.is_empty());
        let last = hops.last().unwrap();
        assert!(dist(&last.to, &q) < 1e-7, "lands on q: {:?}", last.to);
    }

    #[test]
    fn two_region_chart_cannot_cross_while_the_extension_can() {
        let mass = 1.0;
        // Interior and exterior of the static chart: no path, plus the
        // analytic atlas certificate.
        let p = [0.0, 0.5, 1.1, 0.3];
        let q = [0.0, 2.0, 1.1, 0.3];
        let res = connectivity("hd", mass, &p, &q, 4000).unwrap();
        let Connectivity::NotFound {
            budget_exhausted,
            certificate,
        } = res
        else {
            panic!("expected not_found");
        };
        assert!(!budget_exhausted, "search space is finite");
        assert!(certificate.unwrap().contains("excludes"));

        // The same two physical points in the extended chart are joined.
        let (u1, v1) = charts::hd_to_ks(mass, charts::Region::RIPlus, 0.0, 0.5).unwrap();
        let (u2, v2) = charts::hd_to_ks(mass, charts::Region::RIIPlus, 0.0, 2.0).unwrap();
        let pk = [u1, v1, 1.1, 0.3];
        let qk = [u2, v2, 1.1, 0.3];
        let res = connectivity("ks", mass, &pk, &qk, 6000).unwrap();
        let Connectivity::Path { hops } = res else {
            panic!("expected a cross-horizon path");
        };
        // The path crosses uv = 0 somewhere.
        let crossed = hops
            .iter()
            .any(|h| (h.from[0] * h.from[1]) * (h.to[0] * h.to[1]) <= 0.0);
        assert!(crossed, "path should cross the horizon");
    }

    #[test]
    fn bridge_sheets_are_not_geodesically_joined() {
        let p = [0.0, 1.0, 1.1, 0.3];
        let q = [0.0, -1.0, 1.1, 0.3];
        let res = connectivity("er", 1.0, &p, &q, 2500).unwrap();
        let Connectivity::NotFound { certificate, .. } = res else {
            panic!("expected not_found across the throat");
        };
        assert!(certificate.unwrap().contains("u = 0"));
    }
}
