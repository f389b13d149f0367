//! Flat 6-dimensional embeddings of the static exterior and of the full
//! two-region manifold: the trigonometric (Kasner) map with its periodic
//! time circle, and the hyperbolic (Fronsdal) pair covering both sides of
//! the horizon, together with their radial quadratures, hypersurface
//! constraints, pullback checks, and the horizon homothety measurement.

use nalgebra::DMatrix;

use crate::charts;
use crate::num::diff;
use crate::num::quad::{self, QuadError};

/// Ambient signature of the trigonometric embedding's target space.
pub const KASNER_SIGNATURE: [f64; 6] = [-1.0, -1.0, 1.0, 1.0, 1.0, 1.0];
/// Ambient signature of the hyperbolic embedding's target space.
pub const FRONSDAL_SIGNATURE: [f64; 6] = [-1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
/// The signature the trigonometric isometry conditions actually use: they
/// count the first two slots positive and the quadrature slot negative,
/// contradicting the declared ambient form. Both readings are measured.
pub const KASNER_PROOF_SIGNATURE: [f64; 6] = [1.0, 1.0, -1.0, 1.0, 1.0, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub enum EmbeddingError {
    Domain { what: String },
    Quadrature(QuadError),
}

impl std::fmt::Display for EmbeddingError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EmbeddingError::Domain { what } => write!(f, "embedding domain error: {what}"),
            EmbeddingError::Quadrature(e) => write!(f, "embedding quadrature failed: {e}"),
        }
    }
}

impl std::error::Error for EmbeddingError {}

impl From<QuadError> for EmbeddingError {
    fn from(e: QuadError) -> Self {
        EmbeddingError::Quadrature(e)
    }
}

fn check_mass(mass: f64) -> Result<(), EmbeddingError> {
    if mass > 0.0 && mass.is_finite() {
        Ok(())
    } else {
        Err(EmbeddingError::Domain {
            what: format!("mass must be positive and finite, got {mass}"),
        })
    }
}

/// Radial profile selection for [`w_integral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WIntegralKind {
    /// Trigonometric embedding profile √(1 + 16μ⁴/(s²+4μ²)³), based at 0.
    Kasner,
    /// Hyperbolic profile as printed, √((h+μ)(h²+μ²)/h³).
    Fronsdal,
    /// Hyperbolic profile the isometry actually requires,
    /// √(μ(h²+μh+μ²)/h³); satisfies printed² = 1 + required².
    FronsdalDerived,
}

impl WIntegralKind {
    pub fn tag(self) -> &'static str {
        match self {
            WIntegralKind::Kasner => "kasner",
            WIntegralKind::Fronsdal => "fronsdal",
            WIntegralKind::FronsdalDerived => "fronsdal_derived",
        }
    }

    pub fn from_tag(tag: &str) -> Option<WIntegralKind> {
        Some(match tag {
            "kasner" => WIntegralKind::Kasner,
            "fronsdal" => WIntegralKind::Fronsdal,
            "fronsdal_derived" => WIntegralKind::FronsdalDerived,
            _ => return None,
        })
    }
}

/// Integrand of the trigonometric profile; equals √1.25 at s = 0 when μ = 1.
pub fn kasner_integrand(mass: f64, s: f64) -> f64 {
    let d = s * s + 4.0 * mass * mass;
    (1.0 + 16.0 * mass.powi(4) / (d * d * d)).sqrt()
}

/// Hyperbolic radial integrand as printed; equals 2 at h = μ for any μ.
pub fn fronsdal_integrand_printed(mass: f64, h: f64) -> f64 {
    ((h + mass) * (h * h + mass * mass) / (h * h * h)).sqrt()
}

/// Hyperbolic radial integrand required by the pullback identity; equals √3
/// at h = μ for any μ.
pub fn fronsdal_integrand_derived(mass: f64, h: f64) -> f64 {
    (mass * (h * h + mass * h + mass * mass) / (h * h * h)).sqrt()
}

/// Radial quadrature `∫_base^x` of the selected profile, absolute tolerance
/// 1e-11.
///
/// The trigonometric profile is regular at 0 and keeps the printed base 0.
/// Both hyperbolic profiles diverge like h^{−3/2} at the origin, so their
/// antiderivative is anchored at a positive base (the horizon radius μ by
/// convention); additive constants in the u₃ slot are ambient translations
/// and change nothing geometric.
pub fn w_integral(
    mass: f64,
    kind: WIntegralKind,
    x: f64,
    base: f64,
) -> Result<f64, EmbeddingError> {
    check_mass(mass)?;
    match kind {
        WIntegralKind::Kasner => {
            if x < 0.0 || !x.is_finite() {
                return Err(EmbeddingError::Domain {
                    what: format!("trigonometric profile needs x >= 0, got {x}"),
                });
            }
            if base != 0.0 {
                return Err(EmbeddingError::Domain {
                    what: format!("trigonometric profile is based at 0, got base {base}"),
                });
            }
            let f = |s: f64| kasner_integrand(mass, s);
            Ok(quad::adaptive(&f, 0.0, x, 1e-11)?.value)
        }
        WIntegralKind::Fronsdal | WIntegralKind::FronsdalDerived => {
            if x <= 0.0 || !x.is_finite() || base <= 0.0 || !base.is_finite() {
                return Err(EmbeddingError::Domain {
                    what: format!(
                        "hyperbolic profile needs x > 0 and base > 0, got x={x}, base={base}"
                    ),
                });
            }
            let f = |h: f64| match kind {
                WIntegralKind::Fronsdal => fronsdal_integrand_printed(mass, h),
                _ => fronsdal_integrand_derived(mass, h),
            };
            Ok(quad::adaptive(&f, base, x, 1e-11)?.value)
        }
    }
}

fn unit_radial(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// Trigonometric embedding of the static exterior in the Kasner chart
/// `(t, H)`, `H = √(4μ(R−μ))`: a point of the flat 6-space with two
/// timelike slots. Periodic in t with period 2π.
pub fn kasner_embed(
    mass: f64,
    t: f64,
    big_h: f64,
    theta: f64,
    phi: f64,
) -> Result<[f64; 6], EmbeddingError> {
    check_mass(mass)?;
    if !(big_h > 0.0) || !big_h.is_finite() {
        return Err(EmbeddingError::Domain {
            what: format!("H must be positive, got {big_h}"),
        });
    }
    let rho = big_h / (big_h * big_h + 4.0 * mass * mass).sqrt();
    let u3 = w_integral(mass, WIntegralKind::Kasner, big_h, 0.0)?;
    let n = unit_radial(theta, phi);
    Ok([
        rho * t.sin(),
        rho * t.cos(),
        u3,
        big_h * n[0],
        big_h * n[1],
        big_h * n[2],
    ])
}

/// Which leaf of the hyperbolic embedding to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FronsdalBranch {
    /// Static region r > μ.
    Exterior,
    /// Hole region 0 < r < μ (hyperbolic roles of u₁, u₂ swap).
    Interior,
}

/// Hyperbolic embedding of either region into the flat 6-space with one
/// timelike slot. The u₃ profile is the derived (isometric) one, anchored
/// so that u₃ = 0 on the horizon sphere.
pub fn fronsdal_embed(
    mass: f64,
    branch: FronsdalBranch,
    t: f64,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<[f64; 6], EmbeddingError> {
    fronsdal_embed_with_profile(
        mass,
        branch,
        t,
        r,
        theta,
        phi,
        WIntegralKind::FronsdalDerived,
    )
}

/// Same map with a caller-selected u₃ profile; the as-printed profile is
/// kept selectable for the conformance dossier, which measures how far it
/// is from an isometry.
pub fn fronsdal_embed_with_profile(
    mass: f64,
    branch: FronsdalBranch,
    t: f64,
    r: f64,
    theta: f64,
    phi: f64,
    kind: WIntegralKind,
) -> Result<[f64; 6], EmbeddingError> {
    check_mass(mass)?;
    if !r.is_finite() || r <= 0.0 {
        return Err(EmbeddingError::Domain {
            what: format!("radius must be positive, got {r}"),
        });
    }
    let ok = match branch {
        FronsdalBranch::Exterior => r > mass,
        FronsdalBranch::Interior => r < mass,
    };
    if !ok || r == mass {
        return Err(EmbeddingError::Domain {
            what: format!("radius {r} outside the {branch:?} leaf at mass {mass}"),
        });
    }
    if kind == WIntegralKind::Kasner {
        return Err(EmbeddingError::Domain {
            what: "the trigonometric profile does not apply to the hyperbolic map".into(),
        });
    }
    let arg = t / (2.0 * mass);
    let factor = 2.0 * mass * (1.0 - mass / r).abs().sqrt();
    let (u1, u2) = match branch {
        FronsdalBranch::Exterior => (factor * arg.sinh(), factor * arg.cosh()),
        FronsdalBranch::Interior => (factor * arg.cosh(), factor * arg.sinh()),
    };
    let u3 = w_integral(mass, kind, r, mass)?;
    let n = unit_radial(theta, phi);
    Ok([u1, u2, u3, r * n[0], r * n[1], r * n[2]])
}

/// The ambient reflection negating the two hyperbolic slots; it maps the
/// embedded double onto its second copy and preserves every hypersurface
/// constraint exactly (the constraints only see squares of u₁, u₂).
pub fn mirror(q: &[f64; 6]) -> [f64; 6] {
    [-q[0], -q[1], q[2], q[3], q[4], q[5]]
}

/// Hypersurface constraint residuals at an ambient point: membership in the
/// embedded double of the static manifold.
///
/// c₁ = |u₂² − u₁² − 4μ²(1−μ/r)|, c₂ = |u₃ − W(r)|,
/// c₃ = |u₄²+u₅²+u₆² − r²| with r the spatial norm (so c₃ = 0 identically;
/// it is reported for completeness).
pub fn fronsdal_constraints(mass: f64, q: &[f64; 6]) -> Result<(f64, f64, f64), EmbeddingError> {
    check_mass(mass)?;
    let r2 = q[3] * q[3] + q[4] * q[4] + q[5] * q[5];
    let r = r2.sqrt();
    if !(r > 0.0) {
        return Err(EmbeddingError::Domain {
            what: "ambient point has zero spatial norm".into(),
        });
    }
    let c1 = (q[1] * q[1] - q[0] * q[0] - 4.0 * mass * mass * (1.0 - mass / r)).abs();
    let w = w_integral(mass, WIntegralKind::FronsdalDerived, r, mass)?;
    let c2 = (q[2] - w).abs();
    let c3 = (r2 - r * r).abs();
    Ok((c1, c2, c3))
}

/// A named branch of one of the two embeddings, with its ambient signature
/// and the 4-D chart metric it is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    KasnerExterior,
    FronsdalExterior,
    FronsdalInterior,
    /// Reflection-composed exterior map (the second copy of the double).
    FronsdalMirror,
    /// Exterior map with the as-printed u₃ profile; kept for the
    /// conformance dossier, which reports its pullback defect.
    FronsdalExteriorPrintedU3,
}

impl Branch {
    pub fn tag(self) -> &'static str {
        match self {
            Branch::KasnerExterior => "kasner_exterior",
            Branch::FronsdalExterior => "fronsdal_exterior",
            Branch::FronsdalInterior => "fronsdal_interior",
            Branch::FronsdalMirror => "fronsdal_mirror",
            Branch::FronsdalExteriorPrintedU3 => "fronsdal_exterior_printed_u3",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Branch> {
        Some(match tag {
            "kasner_exterior" => Branch::KasnerExterior,
            "fronsdal_exterior" => Branch::FronsdalExterior,
            "fronsdal_interior" => Branch::FronsdalInterior,
            "fronsdal_mirror" => Branch::FronsdalMirror,
            "fronsdal_exterior_printed_u3" => Branch::FronsdalExteriorPrintedU3,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddingMap {
    pub branch: Branch,
    pub mass: f64,
}

impl EmbeddingMap {
    pub fn new(branch: Branch, mass: f64) -> Result<EmbeddingMap, EmbeddingError> {
        check_mass(mass)?;
        Ok(EmbeddingMap { branch, mass })
    }

    pub fn signature(&self) -> [f64; 6] {
        match self.branch {
            Branch::KasnerExterior => KASNER_SIGNATURE,
            _ => FRONSDAL_SIGNATURE,
        }
    }

    /// Evaluate the map at a chart point `(t, radial, θ, φ)`; the radial
    /// coordinate is H for the trigonometric branch and r otherwise.
    pub fn map_point(&self, p: &[f64; 4]) -> Result<[f64; 6], EmbeddingError> {
        let [t, x, theta, phi] = *p;
        match self.branch {
            Branch::KasnerExterior => kasner_embed(self.mass, t, x, theta, phi),
            Branch::FronsdalExterior => {
                fronsdal_embed(self.mass, FronsdalBranch::Exterior, t, x, theta, phi)
            }
            Branch::FronsdalInterior => {
                fronsdal_embed(self.mass, FronsdalBranch::Interior, t, x, theta, phi)
            }
            Branch::FronsdalMirror => {
                fronsdal_embed(self.mass, FronsdalBranch::Exterior, t, x, theta, phi)
                    .map(|q| mirror(&q))
            }
            Branch::FronsdalExteriorPrintedU3 => fronsdal_embed_with_profile(
                self.mass,
                FronsdalBranch::Exterior,
                t,
                x,
                theta,
                phi,
                WIntegralKind::Fronsdal,
            ),
        }
    }

    /// The 4-D chart metric this branch is checked against.
    ///
    /// The hyperbolic branches target the static warped metric
    /// diag(−f, 1/f, r², r² sin²θ), f = 1−μ/r. The trigonometric branch
    /// targets the chart metric exactly as printed,
    /// −H²/(H²+4μ²) dt⊗dt − dH⊗dH + ζ_{ℝ³}, which in spherical terms is
    /// diag(−H²/(H²+4μ²), 0, H², H² sin²θ) — degenerate in the radial slot;
    /// its residual is a measurement, not an assertion.
    pub fn chart_metric(&self, p: &[f64; 4]) -> DMatrix<f64> {
        let mu = self.mass;
        let [_, x, theta, _] = *p;
        let mut g = DMatrix::zeros(4, 4);
        match self.branch {
            Branch::KasnerExterior => {
                g[(0, 0)] = -x * x / (x * x + 4.0 * mu * mu);
                g[(1, 1)] = 0.0;
                g[(2, 2)] = x * x;
                g[(3, 3)] = x * x * theta.sin().powi(2);
            }
            _ => {
                let f = 1.0 - mu / x;
                g[(0, 0)] = -f;
                g[(1, 1)] = 1.0 / f;
                g[(2, 2)] = x * x;
                g[(3, 3)] = x * x * theta.sin().powi(2);
            }
        }
        g
    }
}

/// Pullback `Jᵀ·diag(signature)·J` of the ambient form through the map at
/// `p`, with a 4th-order numeric Jacobian.
pub fn pullback_with_signature(
    map: &EmbeddingMap,
    p: &[f64; 4],
    signature: &[f64; 6],
) -> Result<DMatrix<f64>, EmbeddingError> {
    // Vet the stencil neighborhood before handing an infallible closure to
    // the differentiator.
    let radial_margin = 0.05 * map.mass;
    match map.branch {
        Branch::KasnerExterior => {
            if p[1] < radial_margin {
                return Err(EmbeddingError::Domain {
                    what: format!("H = {} too close to the axis for stencils", p[1]),
                });
            }
        }
        _ => {
            if (p[1] - map.mass).abs() < radial_margin || p[1] < radial_margin {
                return Err(EmbeddingError::Domain {
                    what: format!("r = {} within the stencil margin of the horizon", p[1]),
                });
            }
        }
    }
    map.map_point(p)?;
    let f = |x: &[f64]| -> Vec<f64> {
        let q = map
            .map_point(&[x[0], x[1], x[2], x[3]])
            .expect("stencil stays inside the vetted margin");
        q.to_vec()
    };
    let j = diff::jacobian(f, p);
    let mut pb = DMatrix::zeros(4, 4);
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = 0.0;
            for (i, sign) in signature.iter().enumerate() {
                acc += sign * j[i][a] * j[i][b];
            }
            pb[(a, b)] = acc;
        }
    }
    Ok(pb)
}

/// Max componentwise difference between the pulled-back ambient form and the
/// branch's chart metric at `p`, under the branch's own signature.
pub fn pullback_residual(map: &EmbeddingMap, p: &[f64; 4]) -> Result<f64, EmbeddingError> {
    let pb = pullback_with_signature(map, p, &map.signature())?;
    let g = map.chart_metric(p);
    Ok((pb - g).abs().max())
}

#[derive(Debug, Clone)]
pub struct HomothetyReport {
    pub mass: f64,
    /// The expected squared-length ratio μ².
    pub expected: f64,
    pub ks_max_deviation: f64,
    pub fronsdal_max_deviation: f64,
    pub samples: usize,
}

impl HomothetyReport {
    pub fn within(&self, ks_tol: f64, fronsdal_tol: f64) -> bool {
        self.ks_max_deviation < ks_tol && self.fronsdal_max_deviation < fronsdal_tol
    }
}

/// Measure sphere-tangent squared lengths on both horizons and compare with
/// the unit-sphere lengths: the common ratio μ² exhibits each horizon as a
/// homothetic copy of S², hence the two horizons as isometric.
///
/// The double-null side samples points on both horizon legs and evaluates
/// the full chart metric there; the embedded side takes the horizon sphere
/// (u₁ = u₂ = u₃ = 0, spatial norm μ) and measures through the ambient form
/// with a numeric Jacobian in the angles.
pub fn horizon_homothety_check(
    mass: f64,
    samples: usize,
) -> Result<HomothetyReport, EmbeddingError> {
    check_mass(mass)?;
    if samples == 0 {
        return Err(EmbeddingError::Domain {
            what: "need at least one sample".into(),
        });
    }
    let chart = charts::build_chart("ks", mass).map_err(|e| EmbeddingError::Domain {
        what: e.to_string(),
    })?;
    let expected = mass * mass;
    let tangents: [(f64, f64); 3] = [(1.0, 0.0), (0.0, 1.0), (0.6, -0.8)];

    let mut ks_dev = 0.0f64;
    let mut fronsdal_dev = 0.0f64;
    for k in 0..samples {
        let frac = k as f64 / samples as f64;
        let theta = 0.4 + 2.3 * frac;
        let phi = 0.3 + 5.6 * frac;
        let leg = mass.sqrt() * (-1.5 + 3.0 * frac);

        // Double-null horizon legs {v = 0} and {u = 0}.
        for point in [[leg, 0.0, theta, phi], [0.0, leg, theta, phi]] {
            let g = crate::geometry::metric_eval(&chart, &point).map_err(|e| {
                EmbeddingError::Domain {
                    what: e.to_string(),
                }
            })?;
            for &(a, b) in &tangents {
                let num = g[(2, 2)] * a * a + g[(3, 3)] * b * b + 2.0 * g[(2, 3)] * a * b;
                let den = a * a + b * b * theta.sin().powi(2);
                ks_dev = ks_dev.max((num / den - expected).abs());
            }
        }

        // Embedded horizon sphere: ambient (0, 0, 0, μ·n̂(θ, φ)).
        let sphere = |ang: &[f64]| -> Vec<f64> {
            let n = unit_radial(ang[0], ang[1]);
            vec![0.0, 0.0, 0.0, mass * n[0], mass * n[1], mass * n[2]]
        };
        let j = diff::jacobian(sphere, &[theta, phi]);
        for &(a, b) in &tangents {
            let mut num = 0.0;
            for (i, sign) in FRONSDAL_SIGNATURE.iter().enumerate() {
                let w = j[i][0] * a + j[i][1] * b;
                num += sign * w * w;
            }
            let den = a * a + b * b * theta.sin().powi(2);
            fronsdal_dev = fronsdal_dev.max((num / den - expected).abs());
        }
    }
    Ok(HomothetyReport {
        mass,
        expected,
        ks_max_deviation: ks_dev,
        fronsdal_max_deviation: fronsdal_dev,
        samples,
    })
}
