//! Static warped-product models `−f dt² + g dh² + α²·(round sphere)`.
//!
//! A [`StaticModel`] packages the three radial profiles and their derivatives
//! in closed form, so vacuum membership can be scored through the warped
//! curvature identities without any numeric differentiation, and so the 4-D
//! and t–h plane charts it spawns carry exact Christoffel symbols.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::{ChartSpec, GeometryError};

type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Static spherically symmetric model on an h-interval.
pub struct StaticModel {
    pub name: String,
    pub mass: f64,
    /// Open h-interval on which the profiles are defined.
    pub interval: (f64, f64),
    /// Radius excluded from chart domains (metric degenerates there).
    pub excluded: Option<f64>,
    f: ScalarFn,
    fp: ScalarFn,
    fpp: ScalarFn,
    g: ScalarFn,
    gp: ScalarFn,
    alpha: ScalarFn,
    alphap: ScalarFn,
    alphapp: ScalarFn,
}

/// Residuals of the three warped vacuum identities at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumResiduals {
    /// `|K − α′f′/(αfg)|`
    pub rho1: f64,
    /// `|K − (2/(αg))·(α″ − (g′/(2g))·α′)|`
    pub rho2: f64,
    /// `|ℑ(α) − 1/α²|` where ℑ is the radial warp Laplacian term.
    pub rho3: f64,
}

impl VacuumResiduals {
    pub fn max(&self) -> f64 {
        self.rho1.max(self.rho2).max(self.rho3)
    }
}

impl StaticModel {
    pub fn f(&self, h: f64) -> f64 {
        (self.f)(h)
    }
    pub fn fp(&self, h: f64) -> f64 {
        (self.fp)(h)
    }
    pub fn fpp(&self, h: f64) -> f64 {
        (self.fpp)(h)
    }
    pub fn g(&self, h: f64) -> f64 {
        (self.g)(h)
    }
    pub fn gp(&self, h: f64) -> f64 {
        (self.gp)(h)
    }
    pub fn alpha(&self, h: f64) -> f64 {
        (self.alpha)(h)
    }
    pub fn alphap(&self, h: f64) -> f64 {
        (self.alphap)(h)
    }
    pub fn alphapp(&self, h: f64) -> f64 {
        (self.alphapp)(h)
    }

    /// `−f dt² + dh²/f + h²·(sphere)` with `f = 1 − μ/h` on `h ∈ (0, ∞)`,
    /// degenerate at `h = μ`.
    pub fn hilbert_droste(mass: f64) -> StaticModel {
        let mu = mass;
        StaticModel {
            name: "hd".into(),
            mass,
            interval: (0.0, f64::INFINITY),
            excluded: Some(mu),
            f: Box::new(move |h| 1.0 - mu / h),
            fp: Box::new(move |h| mu / (h * h)),
            fpp: Box::new(move |h| -2.0 * mu / (h * h * h)),
            g: Box::new(move |h| h / (h - mu)),
            gp: Box::new(move |h| -mu / ((h - mu) * (h - mu))),
            alpha: Box::new(|h| h),
            alphap: Box::new(|_| 1.0),
            alphapp: Box::new(|_| 0.0),
        }
    }

    /// Exterior-only solution with `f = (h − μ)/(h + μ)`, `g = 1/f`,
    /// `α = h + μ` on `h ∈ (μ, ∞)`. Substituting `r = h + μ` gives
    /// `f = 1 − 2μ/r`: the same family at doubled mass parameter, covering
    /// exactly the static exterior `r > 2μ`.
    pub fn uniquely2(mass: f64) -> StaticModel {
        let mu = mass;
        StaticModel {
            name: "uniquely2".into(),
            mass,
            interval: (mu, f64::INFINITY),
            excluded: None,
            f: Box::new(move |h| (h - mu) / (h + mu)),
            fp: Box::new(move |h| 2.0 * mu / ((h + mu) * (h + mu))),
            fpp: Box::new(move |h| -4.0 * mu / ((h + mu) * (h + mu) * (h + mu))),
            g: Box::new(move |h| (h + mu) / (h - mu)),
            gp: Box::new(move |h| -2.0 * mu / ((h - mu) * (h - mu))),
            alpha: Box::new(move |h| h + mu),
            alphap: Box::new(|_| 1.0),
            alphapp: Box::new(|_| 0.0),
        }
    }

    /// Unimodular gauge: `α = (3h + μ³)^{1/3}`, `f = 1 − μ/α`, `g = 1/(α⁴f)`
    /// on `h ∈ (0, ∞)`; the 4-metric determinant is `−sin²θ` at every h.
    pub fn unimodular(mass: f64) -> StaticModel {
        let mu = mass;
        let a = move |h: f64| (3.0 * h + mu * mu * mu).cbrt();
        StaticModel {
            name: "schwarzschild_unimodular".into(),
            mass,
            interval: (0.0, f64::INFINITY),
            excluded: None,
            f: Box::new(move |h| 1.0 - mu / a(h)),
            // df/dh = (μ/α²)·α′ with α′ = 1/α², so f′ = μ/α⁴
            fp: Box::new(move |h| {
                let al = a(h);
                mu / al.powi(4)
            }),
            fpp: Box::new(move |h| -4.0 * mu / a(h).powi(7)),
            g: Box::new(move |h| {
                let al = a(h);
                1.0 / (al.powi(3) * (al - mu))
            }),
            // g′ = −(4α − 3μ)/(α⁶(α − μ)²)
            gp: Box::new(move |h| {
                let al = a(h);
                let d = al - mu;
                -(4.0 * al - 3.0 * mu) / (al.powi(6) * d * d)
            }),
            alpha: Box::new(a),
            alphap: Box::new(move |h| 1.0 / a(h).powi(2)),
            alphapp: Box::new(move |h| -2.0 / a(h).powi(5)),
        }
    }

    fn check_h(&self, h: f64) -> Result<(), GeometryError> {
        let inside = h > self.interval.0 && h < self.interval.1 && Some(h) != self.excluded;
        if inside {
            Ok(())
        } else {
            Err(GeometryError::Domain {
                chart: self.name.clone(),
                point: vec![h],
            })
        }
    }

    /// Gauss curvature of the t–h plane:
    /// `K = −(1/(2√(fg)))·d/dh [ f′/√(fg) ]`, expanded through the quotient
    /// rule so only f, f′, f″, g, g′ appear (valid for either sign of f).
    pub fn plane_curvature(&self, h: f64) -> f64 {
        let f = self.f(h);
        let fp = self.fp(h);
        let fpp = self.fpp(h);
        let g = self.g(h);
        let gp = self.gp(h);
        let fg = f * g;
        -fpp / (2.0 * fg) + fp * (fp * g + f * gp) / (4.0 * fg * fg)
    }

    /// Radial warp Laplacian term
    /// `ℑ(α) = (1/α)·[ α″/g + (α′/(2g))(f′/f − g′/g) + α′²/(gα) ]`.
    pub fn warp_laplacian_term(&self, h: f64) -> f64 {
        let f = self.f(h);
        let fp = self.fp(h);
        let g = self.g(h);
        let gp = self.gp(h);
        let al = self.alpha(h);
        let alp = self.alphap(h);
        let alpp = self.alphapp(h);
        (alpp / g + (alp / (2.0 * g)) * (fp / f - gp / g) + alp * alp / (g * al)) / al
    }

    /// The three identities a static warped product must satisfy to solve the
    /// vacuum equations, returned as absolute residuals. A model is vacuum on
    /// its interval iff all three vanish identically.
    pub fn vacuum_residuals(&self, h: f64) -> Result<VacuumResiduals, GeometryError> {
        self.check_h(h)?;
        let f = self.f(h);
        let fp = self.fp(h);
        let g = self.g(h);
        let gp = self.gp(h);
        let al = self.alpha(h);
        let alp = self.alphap(h);
        let alpp = self.alphapp(h);
        let k = self.plane_curvature(h);

        let rho1 = (k - alp * fp / (al * f * g)).abs();
        let rho2 = (k - (2.0 / (al * g)) * (alpp - (gp / (2.0 * g)) * alp)).abs();
        let rho3 = (self.warp_laplacian_term(h) - 1.0 / (al * al)).abs();
        Ok(VacuumResiduals { rho1, rho2, rho3 })
    }

    /// 4-D chart `(t, h, θ, φ)` with metric `diag(−f, g, α², α²sin²θ)` and
    /// exact Christoffel symbols. Time-oriented by `∂t` where `f > 0`.
    pub fn chart_4d(self: &Arc<Self>, id: impl Into<String>) -> ChartSpec {
        let id = id.into();
        let m = self.clone();
        let domain: super::DomainFn = Box::new(move |p: &[f64]| {
            let (h, th) = (p[1], p[2]);
            h > m.interval.0
                && h < m.interval.1
                && Some(h) != m.excluded
                && th > 0.0
                && th < std::f64::consts::PI
        });
        let m = self.clone();
        let metric: super::MetricFn = Box::new(move |p: &[f64]| {
            let (h, th) = (p[1], p[2]);
            let al = m.alpha(h);
            let mut g = DMatrix::zeros(4, 4);
            g[(0, 0)] = -m.f(h);
            g[(1, 1)] = m.g(h);
            g[(2, 2)] = al * al;
            g[(3, 3)] = al * al * th.sin() * th.sin();
            g
        });
        let m = self.clone();
        let christoffel: super::ChristoffelFn = Box::new(move |p: &[f64]| {
            let (h, th) = (p[1], p[2]);
            let (f, fp) = (m.f(h), m.fp(h));
            let (g, gp) = (m.g(h), m.gp(h));
            let (al, alp) = (m.alpha(h), m.alphap(h));
            let (st, ct) = (th.sin(), th.cos());
            let mut gam = vec![DMatrix::zeros(4, 4); 4];
            let mut set = |a: usize, b: usize, c: usize, v: f64| {
                gam[a][(b, c)] = v;
                gam[a][(c, b)] = v;
            };
            set(0, 0, 1, fp / (2.0 * f));
            set(1, 0, 0, fp / (2.0 * g));
            set(1, 1, 1, gp / (2.0 * g));
            set(1, 2, 2, -al * alp / g);
            set(1, 3, 3, -al * alp * st * st / g);
            set(2, 1, 2, alp / al);
            set(2, 3, 3, -st * ct);
            set(3, 1, 3, alp / al);
            set(3, 2, 3, ct / st);
            gam
        });
        let m = self.clone();
        let orientation: super::OrientationFn = Box::new(move |p: &[f64]| {
            if m.f(p[1]) > 0.0 {
                Some(vec![1.0, 0.0, 0.0, 0.0])
            } else {
                None
            }
        });
        let mut chart = ChartSpec::new(id, 4, self.mass, domain, metric)
            .with_christoffel(christoffel)
            .with_orientation(orientation)
            .with_static_time(0);
        for w in self.radial_walls() {
            chart = chart.with_wall(Box::new(move |p: &[f64]| p[1] - w));
        }
        chart
    }

    /// Radial boundary values of the h-interval (finite endpoints plus the
    /// excluded radius), used as exit detectors by the geodesic integrator.
    fn radial_walls(&self) -> Vec<f64> {
        let mut walls = Vec::new();
        if self.interval.0.is_finite() {
            walls.push(self.interval.0);
        }
        if self.interval.1.is_finite() {
            walls.push(self.interval.1);
        }
        if let Some(x) = self.excluded {
            walls.push(x);
        }
        walls
    }

    /// t–h plane chart with metric `diag(−f, g)`, exact Christoffel symbols,
    /// and the closed-form Gauss curvature attached.
    pub fn chart_plane(self: &Arc<Self>, id: impl Into<String>) -> ChartSpec {
        let id = id.into();
        let m = self.clone();
        let domain: super::DomainFn = Box::new(move |p: &[f64]| {
            let h = p[1];
            h > m.interval.0 && h < m.interval.1 && Some(h) != m.excluded
        });
        let m = self.clone();
        let metric: super::MetricFn = Box::new(move |p: &[f64]| {
            let h = p[1];
            let mut g = DMatrix::zeros(2, 2);
            g[(0, 0)] = -m.f(h);
            g[(1, 1)] = m.g(h);
            g
        });
        let m = self.clone();
        let christoffel: super::ChristoffelFn = Box::new(move |p: &[f64]| {
            let h = p[1];
            let (f, fp) = (m.f(h), m.fp(h));
            let (g, gp) = (m.g(h), m.gp(h));
            let mut gam = vec![DMatrix::zeros(2, 2); 2];
            gam[0][(0, 1)] = fp / (2.0 * f);
            gam[0][(1, 0)] = fp / (2.0 * f);
            gam[1][(0, 0)] = fp / (2.0 * g);
            gam[1][(1, 1)] = gp / (2.0 * g);
            gam
        });
        let m = self.clone();
        let orientation: super::OrientationFn = Box::new(move |p: &[f64]| {
            if m.f(p[1]) > 0.0 {
                Some(vec![1.0, 0.0])
            } else {
                None
            }
        });
        let m = self.clone();
        let sectional: super::SectionalFn = Box::new(move |p: &[f64]| m.plane_curvature(p[1]));
        let mut chart = ChartSpec::new(id, 2, self.mass, domain, metric)
            .with_christoffel(christoffel)
            .with_orientation(orientation)
            .with_sectional(sectional)
            .with_static_time(0);
        for w in self.radial_walls() {
            chart = chart.with_wall(Box::new(move |p: &[f64]| p[1] - w));
        }
        chart
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{self, Scheme};

    #[test]
    fn vacuum_residuals_vanish_for_all_three_models() {
        for mu in [1.0, 2.5] {
            let models = [
                StaticModel::hilbert_droste(mu),
                StaticModel::uniquely2(mu),
                StaticModel::unimodular(mu),
            ];
            for model in &models {
                let lo = model.interval.0;
                for k in 1..40 {
                    let h = lo + 0.37 * k as f64;
                    if Some(h) == model.excluded {
                        continue;
                    }
                    let r = model.vacuum_residuals(h).unwrap();
                    assert!(r.max() < 1e-11, "{} at h={h}: {r:?}", model.name);
                }
            }
        }
    }

    #[test]
    fn vacuum_residuals_vanish_inside_the_hole() {
        let mu = 1.0;
        for model in [StaticModel::hilbert_droste(mu), StaticModel::unimodular(mu)] {
            for h in [0.05, 0.3, 0.7, 0.95] {
                let r = model.vacuum_residuals(h).unwrap();
                assert!(r.max() < 1e-11, "{} at h={h}: {r:?}", model.name);
            }
        }
    }

    #[test]
    fn plane_curvature_closed_forms() {
        let mu = 1.3;
        let hd = StaticModel::hilbert_droste(mu);
        let u2 = StaticModel::uniquely2(mu);
        let un = StaticModel::unimodular(mu);
        for h in [0.4, 2.0, 7.5] {
            assert!((hd.plane_curvature(h) - mu / h.powi(3)).abs() < 1e-13);
            assert!((un.plane_curvature(h) - mu / (3.0 * h + mu.powi(3))).abs() < 1e-13);
        }
        for h in [2.0, 7.5] {
            let expect = 2.0 * mu / (h + mu).powi(3);
            assert!((u2.plane_curvature(h) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn unimodular_profiles_are_consistent() {
        let mu = 1.7;
        let m = StaticModel::unimodular(mu);
        for h in [0.2, 1.0, 4.0, 20.0] {
            let al = m.alpha(h);
            // det normalization: g·α⁴ = 1/f exactly
            assert!((m.g(h) * al.powi(4) * m.f(h) - 1.0).abs() < 1e-12);
            // α′ = 1/α²
            assert!((m.alphap(h) - 1.0 / (al * al)).abs() < 1e-14);
            // derivative closures against central differences
            let step = 1e-5 * h.max(1.0);
            let fd = (m.f(h + step) - m.f(h - step)) / (2.0 * step);
            assert!((fd - m.fp(h)).abs() < 1e-7, "fp mismatch at h={h}");
            let gd = (m.g(h + step) - m.g(h - step)) / (2.0 * step);
            assert!((gd - m.gp(h)).abs() < 1e-6 * m.gp(h).abs().max(1.0));
        }
    }

    #[test]
    fn closed_christoffels_match_finite_differences() {
        let model = std::sync::Arc::new(StaticModel::hilbert_droste(1.0));
        let chart = model.chart_4d("hd");
        let p = [0.0, 3.0, 1.1, 0.3];
        let closed = geometry::christoffel(&chart, &p, Some(Scheme::ClosedForm)).unwrap();
        let fd = geometry::christoffel(&chart, &p, Some(Scheme::FiniteDifference)).unwrap();
        for a in 0..4 {
            let diff = (&closed.gamma[a] - &fd.gamma[a]).abs().max();
            assert!(diff < 1e-9, "component {a} differs by {diff}");
        }
    }

    #[test]
    fn plane_chart_sectional_matches_numeric_tensor() {
        let model = std::sync::Arc::new(StaticModel::hilbert_droste(1.0));
        let closed = model.chart_plane("hd_plane");
        // Same chart without the attached closed form exercises the tensor path.
        let numeric = {
            let m = model.clone();
            let domain: crate::geometry::DomainFn =
                Box::new(move |p: &[f64]| p[1] > 0.0 && p[1] != m.mass);
            let m = model.clone();
            let metric: crate::geometry::MetricFn = Box::new(move |p: &[f64]| {
                let mut g = DMatrix::zeros(2, 2);
                g[(0, 0)] = -m.f(p[1]);
                g[(1, 1)] = m.g(p[1]);
                g
            });
            ChartSpec::new("hd_plane_numeric", 2, 1.0, domain, metric)
        };
        for h in [0.5, 2.0, 6.0] {
            let p = [0.3, h];
            let kc = geometry::sectional_curvature_plane(&closed, &p).unwrap();
            let kn = geometry::sectional_curvature_plane(&numeric, &p).unwrap();
            assert!((kc - 1.0 / (h * h * h)).abs() < 1e-13);
            assert!(
                (kc - kn).abs() < 1e-6 * kc.abs().max(1.0),
                "h={h}: {kc} vs {kn}"
            );
        }
    }

    #[test]
    fn domain_violations_are_reported() {
        let m = StaticModel::hilbert_droste(2.0);
        assert!(matches!(
            m.vacuum_residuals(2.0),
            Err(GeometryError::Domain { .. })
        ));
        assert!(matches!(
            m.vacuum_residuals(-1.0),
            Err(GeometryError::Domain { .. })
        ));
        assert!(m.vacuum_residuals(1.9).is_ok());
    }
}
