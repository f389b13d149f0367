//! Charts, metrics, and curvature.
//!
//! A [`ChartSpec`] is a concrete coordinate chart: a domain predicate, a
//! metric closure, and optional closed-form extras (Christoffel symbols, a
//! time orientation, a sectional-curvature formula). Everything downstream —
//! Ricci residuals, geodesic flows, isometry checks — consumes charts through
//! this one interface, so a suspect printed metric can be registered verbatim
//! and measured on exactly the same footing as a trusted one.

pub mod model;

use nalgebra::DMatrix;

use crate::num::diff;

pub type MetricFn = Box<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;
pub type ChristoffelFn = Box<dyn Fn(&[f64]) -> Vec<DMatrix<f64>> + Send + Sync>;
pub type DomainFn = Box<dyn Fn(&[f64]) -> bool + Send + Sync>;
pub type OrientationFn = Box<dyn Fn(&[f64]) -> Option<Vec<f64>> + Send + Sync>;
pub type SectionalFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type WallFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Determinant magnitude below which the metric is treated as singular.
pub const SINGULAR_DET: f64 = 1e-12;

/// Relative tolerance for classifying a tangent vector as null.
pub const EPS_NULL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Point (or a finite-difference stencil around it) outside the chart domain.
    Domain { chart: String, point: Vec<f64> },
    /// |det g| below [`SINGULAR_DET`] where an inverse metric is required.
    SingularMetric {
        chart: String,
        point: Vec<f64>,
        det: f64,
    },
    /// Coordinate tuple of the wrong length, or an operation that needs a
    /// specific chart dimension (for example sectional curvature on a plane).
    Dimension {
        chart: String,
        expected: usize,
        got: usize,
    },
    /// A closed-form quantity was requested from a chart that only carries a
    /// numeric path.
    NoClosedForm { chart: String },
}

impl std::fmt::Display for GeometryError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeometryError::Domain { chart, point } => {
                write!(f, "point {point:?} outside domain of chart '{chart}'")
            }
            GeometryError::SingularMetric { chart, point, det } => {
                write!(f, "singular metric (det {det:e}) in '{chart}' at {point:?}")
            }
            GeometryError::Dimension {
                chart,
                expected,
                got,
            } => write!(f, "chart '{chart}' expects dimension {expected}, got {got}"),
            GeometryError::NoClosedForm { chart } => {
                write!(f, "chart '{chart}' has no closed-form derivatives")
            }
        }
    }
}

impl std::error::Error for GeometryError {}

/// A concrete coordinate chart with its metric and optional closed forms.
pub struct ChartSpec {
    pub id: String,
    pub dim: usize,
    pub mass: f64,
    domain: DomainFn,
    metric: MetricFn,
    christoffel: Option<ChristoffelFn>,
    orientation: Option<OrientationFn>,
    sectional: Option<SectionalFn>,
    /// Signed boundary indicators: a sign change along a curve marks an exit
    /// through the corresponding piece of the chart boundary.
    walls: Vec<WallFn>,
    /// Index of the static Killing coordinate, where one exists.
    pub static_time: Option<usize>,
}

impl ChartSpec {
    pub fn new(
        id: impl Into<String>,
        dim: usize,
        mass: f64,
        domain: DomainFn,
        metric: MetricFn,
    ) -> Self {
        ChartSpec {
            id: id.into(),
            dim,
            mass,
            domain,
            metric,
            christoffel: None,
            orientation: None,
            sectional: None,
            walls: Vec::new(),
            static_time: None,
        }
    }

    pub fn with_christoffel(mut self, f: ChristoffelFn) -> Self {
        self.christoffel = Some(f);
        self
    }

    pub fn with_orientation(mut self, f: OrientationFn) -> Self {
        self.orientation = Some(f);
        self
    }

    pub fn with_sectional(mut self, f: SectionalFn) -> Self {
        self.sectional = Some(f);
        self
    }

    pub fn with_static_time(mut self, index: usize) -> Self {
        self.static_time = Some(index);
        self
    }

    pub fn with_wall(mut self, f: WallFn) -> Self {
        self.walls.push(f);
        self
    }

    pub fn walls(&self) -> &[WallFn] {
        &self.walls
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim && (self.domain)(p)
    }

    pub fn has_closed_christoffel(&self) -> bool {
        self.christoffel.is_some()
    }

    /// Future-pointing reference vector at `p`, where the chart orients time.
    pub fn orientation_at(&self, p: &[f64]) -> Option<Vec<f64>> {
        self.orientation.as_ref().and_then(|f| f(p))
    }

    fn check_point(&self, p: &[f64]) -> Result<(), GeometryError> {
        if p.len() != self.dim {
            return Err(GeometryError::Dimension {
                chart: self.id.clone(),
                expected: self.dim,
                got: p.len(),
            });
        }
        if !(self.domain)(p) {
            return Err(GeometryError::Domain {
                chart: self.id.clone(),
                point: p.to_vec(),
            });
        }
        Ok(())
    }

    /// Metric without the domain check (used on stencil points already vetted).
    pub(crate) fn metric_unchecked(&self, p: &[f64]) -> DMatrix<f64> {
        (self.metric)(p)
    }
}

impl std::fmt::Debug for ChartSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChartSpec")
            .field("id", &self.id)
            .field("dim", &self.dim)
            .field("mass", &self.mass)
            .field("closed_christoffel", &self.christoffel.is_some())
            .finish()
    }
}

/// Metric components at a point.
pub fn metric_eval(chart: &ChartSpec, p: &[f64]) -> Result<DMatrix<f64>, GeometryError> {
    chart.check_point(p)?;
    Ok(chart.metric_unchecked(p))
}

/// Which derivative path produced a Christoffel set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    ClosedForm,
    FiniteDifference,
}

/// Christoffel symbols at a point: `gamma[a][(b, c)]` is `Γ^a_{bc}`.
#[derive(Debug, Clone)]
pub struct ChristoffelSet {
    pub gamma: Vec<DMatrix<f64>>,
    pub scheme: Scheme,
}

/// Verify that the full ±2h stencil around `p` stays inside the domain.
fn check_stencil(chart: &ChartSpec, p: &[f64]) -> Result<(), GeometryError> {
    let mut q = p.to_vec();
    for i in 0..chart.dim {
        let h = diff::step_for(p[i]);
        for mult in [-2.0, -1.0, 1.0, 2.0] {
            q[i] = p[i] + mult * h;
            if !(chart.domain)(&q) {
                return Err(GeometryError::Domain {
                    chart: chart.id.clone(),
                    point: q,
                });
            }
        }
        q[i] = p[i];
    }
    Ok(())
}

fn christoffel_fd(chart: &ChartSpec, p: &[f64]) -> Result<Vec<DMatrix<f64>>, GeometryError> {
    chart.check_point(p)?;
    check_stencil(chart, p)?;
    let n = chart.dim;
    let g = chart.metric_unchecked(p);
    let det = g.determinant();
    if det.abs() < SINGULAR_DET {
        return Err(GeometryError::SingularMetric {
            chart: chart.id.clone(),
            point: p.to_vec(),
            det,
        });
    }
    let ginv = g
        .clone()
        .try_inverse()
        .ok_or(GeometryError::SingularMetric {
            chart: chart.id.clone(),
            point: p.to_vec(),
            det,
        })?;

    // dg[c] = ∂_c g (4th-order central)
    let mut dg: Vec<DMatrix<f64>> = Vec::with_capacity(n);
    let mut q = p.to_vec();
    for c in 0..n {
        let h = diff::step_for(p[c]);
        let mut eval = |offset: f64| {
            q[c] = p[c] + offset;
            let m = chart.metric_unchecked(&q);
            q[c] = p[c];
            m
        };
        let p1 = eval(h);
        let m1 = eval(-h);
        let p2 = eval(2.0 * h);
        let m2 = eval(-2.0 * h);
        dg.push((8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h));
    }

    Ok(assemble_gamma(&ginv, &dg, n))
}

fn assemble_gamma(ginv: &DMatrix<f64>, dg: &[DMatrix<f64>], n: usize) -> Vec<DMatrix<f64>> {
    let mut gamma = vec![DMatrix::zeros(n, n); n];
    for b in 0..n {
        for c in b..n {
            for a in 0..n {
                let mut s = 0.0;
                for d in 0..n {
                    s += ginv[(a, d)] * (dg[b][(d, c)] + dg[c][(d, b)] - dg[d][(b, c)]);
                }
                let v = 0.5 * s;
                gamma[a][(b, c)] = v;
                gamma[a][(c, b)] = v;
            }
        }
    }
    gamma
}

/// Christoffel symbols, closed-form when the chart provides them.
///
/// `scheme = None` prefers closed form; `Some(Scheme::ClosedForm)` errors if
/// the chart carries none; `Some(Scheme::FiniteDifference)` forces the
/// numeric path (used to cross-validate printed derivatives).
pub fn christoffel(
    chart: &ChartSpec,
    p: &[f64],
    scheme: Option<Scheme>,
) -> Result<ChristoffelSet, GeometryError> {
    let want_closed = match scheme {
        Some(Scheme::ClosedForm) => {
            if chart.christoffel.is_none() {
                return Err(GeometryError::NoClosedForm {
                    chart: chart.id.clone(),
                });
            }
            true
        }
        Some(Scheme::FiniteDifference) => false,
        None => chart.christoffel.is_some(),
    };
    if want_closed {
        chart.check_point(p)?;
        let f = chart.christoffel.as_ref().expect("checked above");
        Ok(ChristoffelSet {
            gamma: f(p),
            scheme: Scheme::ClosedForm,
        })
    } else {
        Ok(ChristoffelSet {
            gamma: christoffel_fd(chart, p)?,
            scheme: Scheme::FiniteDifference,
        })
    }
}

/// The curvature tensor `R^a_{bcd}` at a point (coordinate formula
/// `∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce}Γ^e_{db} − Γ^a_{de}Γ^e_{cb}`).
#[derive(Debug, Clone)]
pub struct RiemannTensor {
    pub dim: usize,
    comp: Vec<f64>,
}

impl RiemannTensor {
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let n = self.dim;
        self.comp[((a * n + b) * n + c) * n + d]
    }

    pub fn max_abs(&self) -> f64 {
        self.comp.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn riemann(chart: &ChartSpec, p: &[f64]) -> Result<RiemannTensor, GeometryError> {
    let n = chart.dim;
    let gamma0 = christoffel(chart, p, None)?.gamma;

    // dgamma[c][a][(d, b)] = ∂_c Γ^a_{db}, one Richardson level on the
    // 4th-order stencil (these are second derivatives of the metric when the
    // chart has no closed-form symbols).
    let mut dgamma: Vec<Vec<DMatrix<f64>>> = Vec::with_capacity(n);
    let mut q = p.to_vec();
    for c in 0..n {
        let h = diff::step_for(p[c]);
        let mut gamma_at = |offset: f64| -> Result<Vec<DMatrix<f64>>, GeometryError> {
            q[c] = p[c] + offset;
            let g = christoffel(chart, &q, None)?.gamma;
            q[c] = p[c];
            Ok(g)
        };
        let mut stencil = |hh: f64| -> Result<Vec<DMatrix<f64>>, GeometryError> {
            let p1 = gamma_at(hh)?;
            let m1 = gamma_at(-hh)?;
            let p2 = gamma_at(2.0 * hh)?;
            let m2 = gamma_at(-2.0 * hh)?;
            Ok((0..n)
                .map(|a| (8.0 * (&p1[a] - &m1[a]) - (&p2[a] - &m2[a])) / (12.0 * hh))
                .collect())
        };
        let d_h = stencil(h)?;
        let d_half = stencil(0.5 * h)?;
        dgamma.push(
            (0..n)
                .map(|a| (16.0 * &d_half[a] - &d_h[a]) / 15.0)
                .collect(),
        );
    }

    let mut comp = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut v = dgamma[c][a][(d, b)] - dgamma[d][a][(c, b)];
                    for e in 0..n {
                        v += gamma0[a][(c, e)] * gamma0[e][(d, b)]
                            - gamma0[a][(d, e)] * gamma0[e][(c, b)];
                    }
                    comp[((a * n + b) * n + c) * n + d] = v;
                }
            }
        }
    }
    Ok(RiemannTensor { dim: n, comp })
}

/// Ricci tensor (first/third contraction of [`riemann`]) and the max-abs
/// residual against the vacuum equations.
pub fn ricci_and_residual(
    chart: &ChartSpec,
    p: &[f64],
) -> Result<(DMatrix<f64>, f64), GeometryError> {
    let r = riemann(chart, p)?;
    let n = r.dim;
    let mut ric = DMatrix::zeros(n, n);
    for b in 0..n {
        for d in 0..n {
            let mut s = 0.0;
            for a in 0..n {
                s += r.get(a, b, a, d);
            }
            ric[(b, d)] = s;
        }
    }
    let residual = ric.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok((ric, residual))
}

/// Sectional curvature of a 2-dimensional chart at `p`.
///
/// Closed-form when the chart carries one; otherwise from the numeric
/// curvature tensor via `K = g(R(∂₀,∂₁)∂₁, ∂₀) / Q(∂₀,∂₁)` with
/// `Q(x,y) = g(x,x)g(y,y) − g(x,y)²`.
pub fn sectional_curvature_plane(chart: &ChartSpec, p: &[f64]) -> Result<f64, GeometryError> {
    if chart.dim != 2 {
        return Err(GeometryError::Dimension {
            chart: chart.id.clone(),
            expected: 2,
            got: chart.dim,
        });
    }
    if let Some(s) = &chart.sectional {
        chart.check_point(p)?;
        return Ok(s(p));
    }
    let g = metric_eval(chart, p)?;
    let r = riemann(chart, p)?;
    let numerator = g[(0, 0)] * r.get(0, 1, 0, 1) + g[(0, 1)] * r.get(1, 1, 0, 1);
    let q = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(0, 1)];
    if q.abs() < SINGULAR_DET {
        return Err(GeometryError::SingularMetric {
            chart: chart.id.clone(),
            point: p.to_vec(),
            det: q,
        });
    }
    Ok(numerator / q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalKind {
    Timelike,
    Null,
    Spacelike,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalClass {
    pub kind: CausalKind,
    /// `Some(true)` future-pointing, `Some(false)` past-pointing, `None` when
    /// the chart provides no time orientation at `p` (or for spacelike x).
    pub future: Option<bool>,
}

/// Causal classification of tangent vector `x` at `p`.
pub fn causal_class(chart: &ChartSpec, p: &[f64], x: &[f64]) -> Result<CausalClass, GeometryError> {
    let g = metric_eval(chart, p)?;
    if x.len() != chart.dim {
        return Err(GeometryError::Dimension {
            chart: chart.id.clone(),
            expected: chart.dim,
            got: x.len(),
        });
    }
    let n = chart.dim;
    let mut q = 0.0;
    let mut scale = 0.0;
    for i in 0..n {
        for j in 0..n {
            q += g[(i, j)] * x[i] * x[j];
            scale += g[(i, j)].abs() * x[i].abs() * x[j].abs();
        }
    }
    let kind = if q.abs() <= EPS_NULL * scale {
        CausalKind::Null
    } else if q < 0.0 {
        CausalKind::Timelike
    } else {
        CausalKind::Spacelike
    };
    let future = if kind == CausalKind::Spacelike {
        None
    } else {
        chart.orientation_at(p).and_then(|reference| {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += g[(i, j)] * reference[i] * x[j];
                }
            }
            if s < 0.0 {
                Some(true)
            } else if s > 0.0 {
                Some(false)
            } else {
                None
            }
        })
    };
    Ok(CausalClass { kind, future })
}
