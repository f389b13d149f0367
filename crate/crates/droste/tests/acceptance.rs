//! Release gate for the toolkit: eight acceptance criteria plus four
//! cross-cutting properties, each reported on its own line.
//!
//! The target uses its own harness so that `cargo test` prints one
//! `criterion N (...): pass` line per criterion instead of a single
//! aggregated test name.  Any failure flips the line to `FAIL` with a
//! diagnostic and the process exits non-zero.

use droste::charts::{self, ErVariant, KsProfile, Region};
use droste::conformance;
use droste::embeddings::{self, Branch, EmbeddingMap, WIntegralKind};
use droste::geodesics::{self, experiments, IntegrationConfig};
use droste::geometry::{self, model::StaticModel, CausalKind, ChartSpec};
use droste::topology::{self, Connectivity, SearchConfig};
use std::process::Command;

type Check = fn() -> Result<(), String>;

fn main() {
    let criteria: &[(&str, Check)] = &[
        ("criterion 1 (vacuum suite)", vacuum_suite),
        ("criterion 2 (isometry suite)", isometry_suite),
        ("criterion 3 (curvature invariance)", curvature_invariance),
        ("criterion 4 (geodesic suite)", geodesic_suite),
        ("criterion 5 (embedding suite)", embedding_suite),
        ("criterion 6 (topology suite)", topology_suite),
        ("criterion 7 (conformance dossier)", conformance_dossier),
        ("criterion 8 (determinism)", determinism),
        (
            "property (affine reparametrization)",
            affine_reparametrization,
        ),
        (
            "property (future classification constancy)",
            future_constancy,
        ),
        ("property (exponential segment additivity)", exp_additivity),
        ("property (quadrature oracle)", quadrature_oracle),
    ];

    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("{name}: pass"),
            Err(msg) => {
                println!("{name}: FAIL — {msg}");
                failures += 1;
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
}

fn es<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lin(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

// ---------------------------------------------------------------- criterion 1

/// Max numeric Ricci residual over a 10³-point interior grid.
fn max_ricci(chart: &ChartSpec, points: &[Vec<f64>]) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for p in points {
        let (_, residual) = geometry::ricci_and_residual(chart, p)
            .map_err(|e| format!("{} at {:?}: {}", chart.id, p, e))?;
        worst = worst.max(residual);
    }
    Ok(worst)
}

fn vacuum_suite() -> Result<(), String> {
    let mu = 1.0;
    let ts = lin(-2.0, 2.0, 10);
    let thetas = lin(0.4, 2.7, 10);
    let phi = 0.3;

    // (chart id, radial samples, radial coordinate slot stays index 1)
    let mut hd_r = lin(0.2, 0.9, 5);
    hd_r.extend(lin(1.2, 8.0, 5));
    let radial_grids: [(&str, Vec<f64>); 4] = [
        ("hd", hd_r),
        ("schwarzschild_unimodular", lin(0.3, 9.0, 10)),
        ("painleve_gullstrand", lin(0.25, 8.0, 10)),
        ("eddington_derived", lin(0.25, 8.0, 10)),
    ];
    for (id, rs) in &radial_grids {
        let chart = charts::build_chart(id, mu).map_err(es)?;
        let mut pts = Vec::with_capacity(1000);
        for &t in &ts {
            for &r in rs {
                for &th in &thetas {
                    pts.push(vec![t, r, th, phi]);
                }
            }
        }
        assert_count(id, pts.len())?;
        let worst = max_ricci(&chart, &pts)?;
        bounded(id, worst, 1e-5)?;
    }

    // Double-null chart: grid over both wedges and across the horizon.
    {
        let chart = charts::build_chart("ks", mu).map_err(es)?;
        let uv = lin(-0.8, 0.8, 10);
        let mut pts = Vec::with_capacity(1000);
        for &u in &uv {
            for &v in &uv {
                for &th in &thetas {
                    pts.push(vec![u, v, th, phi]);
                }
            }
        }
        assert_count("ks", pts.len())?;
        let worst = max_ricci(&chart, &pts)?;
        bounded("ks", worst, 1e-5)?;
    }

    // Bridge chart: both sheets, clear of the degenerate throat slice.
    {
        let chart = charts::build_chart("er_bridge", mu).map_err(es)?;
        let half = [0.3, 0.55, 0.9, 1.4, 2.0];
        let mut us: Vec<f64> = half.iter().map(|u| -u).collect();
        us.extend_from_slice(&half);
        let mut pts = Vec::with_capacity(1000);
        for &t in &ts {
            for &u in &us {
                for &th in &thetas {
                    pts.push(vec![t, u, th, phi]);
                }
            }
        }
        assert_count("er_bridge", pts.len())?;
        let worst = max_ricci(&chart, &pts)?;
        bounded("er_bridge", worst, 1e-5)?;
    }

    // Exterior-only solution through the closed-form field equations; its
    // interval is h ∈ (μ, ∞).
    {
        let model = StaticModel::uniquely2(mu);
        let mut worst = 0.0f64;
        for h in lin(1.01 * mu, 15.0 * mu, 1000) {
            let res = model.vacuum_residuals(h).map_err(es)?;
            worst = worst.max(res.max());
        }
        bounded("uniquely2 closed-form", worst, 1e-12)?;
    }

    // Shifted-radius chart of flat space: full curvature tensor vanishes.
    {
        let chart = charts::build_chart("euclid_shifted", mu).map_err(es)?;
        let mut worst = 0.0f64;
        let mut count = 0;
        for &big_r in &lin(0.25, 3.0, 10) {
            for &th in &lin(0.5, 2.6, 10) {
                for &ph in &lin(0.3, 6.0, 10) {
                    let r = geometry::riemann(&chart, &[big_r, th, ph]).map_err(es)?;
                    worst = worst.max(r.max_abs());
                    count += 1;
                }
            }
        }
        assert_count("euclid_shifted", count)?;
        bounded("euclid_shifted flatness", worst, 1e-5)?;
    }

    Ok(())
}

fn assert_count(id: &str, n: usize) -> Result<(), String> {
    if n == 1000 {
        Ok(())
    } else {
        Err(format!("{id}: grid has {n} points, wanted 1000"))
    }
}

fn bounded(what: &str, value: f64, tol: f64) -> Result<(), String> {
    if value.is_finite() && value < tol {
        Ok(())
    } else {
        Err(format!("{what}: {value:.3e} exceeds {tol:.0e}"))
    }
}

// ---------------------------------------------------------------- criterion 2

fn isometry_suite() -> Result<(), String> {
    let mu = 1.0;
    let hd = charts::build_chart("hd", mu).map_err(es)?;
    let ks = charts::build_chart("ks", mu).map_err(es)?;
    let ts = [-1.5, 0.4, 2.0];
    let interior = [0.3, 0.55, 0.85];
    let exterior = [1.4, 2.5, 6.0];

    for branch in ["R_II_plus", "R_II_minus", "R_I_plus", "R_I_minus"] {
        let map = charts::transition("hd", "ks", branch, mu).map_err(es)?;
        let rs = if branch.starts_with("R_I_") {
            &interior
        } else {
            &exterior
        };
        for &t in &ts {
            for &r in rs {
                let p = [t, r, 1.1, 0.3];
                if !(map.domain)(&p) {
                    return Err(format!("{branch}: {p:?} rejected by domain"));
                }
                let res = charts::pullback_residual(&hd, &ks, &map, &p).map_err(es)?;
                bounded(&format!("pullback {branch} r={r}"), res, 1e-8)?;

                let image = (map.forward)(&p).map_err(es)?;
                let back = (map.inverse)(&image).map_err(es)?;
                let mut round = 0.0f64;
                for i in 0..4 {
                    round = round.max((back[i] - p[i]).abs());
                }
                bounded(&format!("round-trip {branch} r={r}"), round, 1e-9)?;
            }
        }
    }

    // u·v = f(r) as an identity of the transition, relative error.
    let profile = KsProfile::new(mu);
    let mut rs = lin(0.15, 0.9, 20);
    rs.extend(lin(1.1, 9.0, 20));
    for &r in &rs {
        let region = if r < mu {
            Region::RIPlus
        } else {
            Region::RIIPlus
        };
        let (u, v) = charts::hd_to_ks(mu, region, 0.7, r).map_err(es)?;
        let f = profile.f(r).map_err(es)?;
        let rel = (u * v - f).abs() / f.abs();
        bounded(&format!("uv=f(r) at r={r}"), rel, 1e-10)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- criterion 3

fn curvature_invariance() -> Result<(), String> {
    let mu = 1.0;
    let hd_plane = charts::build_chart("hd_plane", mu).map_err(es)?;
    let ks_plane = charts::build_chart("ks_plane", mu).map_err(es)?;

    let mut rs = lin(0.1, 0.9, 50);
    rs.extend(lin(1.1, 10.0, 50));
    for &r in &rs {
        let k_hd = geometry::sectional_curvature_plane(&hd_plane, &[0.4, r]).map_err(es)?;
        let region = if r < mu {
            Region::RIPlus
        } else {
            Region::RIIPlus
        };
        let (u, v) = charts::hd_to_ks(mu, region, 0.4, r).map_err(es)?;
        let s_ks = geometry::sectional_curvature_plane(&ks_plane, &[u, v]).map_err(es)?;
        bounded(&format!("|S∘ξ − K| at r={r}"), (s_ks - k_hd).abs(), 1e-6)?;
    }

    // Sectional curvature passes 10⁶ no later than the radius passes 0.01μ
    // along a radial ingoing null ray in the double-null chart.
    let ks = charts::build_chart("ks", mu).map_err(es)?;
    let profile = KsProfile::new(mu);
    let cfg = IntegrationConfig::new(20.0);
    let traj = geodesics::integrate(&ks, &[1.0, 1.0, 1.1, 0.3], &[0.0, -1.0, 0.0, 0.0], &cfg)
        .map_err(es)?;
    if traj.termination.tag() != "curvature_blowup" {
        return Err(format!(
            "radial ray ended with {} instead of the curvature sentinel",
            traj.termination.tag()
        ));
    }
    let mut crossed = false;
    let mut max_s = 0.0f64;
    for sample in &traj.samples {
        let uv = sample.position[0] * sample.position[1];
        let r = profile.f_inv(uv).map_err(es)?;
        let s = geometry::sectional_curvature_plane(
            &ks_plane,
            &[sample.position[0], sample.position[1]],
        )
        .map_err(es)?
        .abs();
        max_s = max_s.max(s);
        if !crossed && r <= 0.01 * mu {
            crossed = true;
            if s < 1e6 * (1.0 - 1e-3) {
                return Err(format!(
                    "at first sample with r={r:.3e} the sectional curvature is only {s:.3e}"
                ));
            }
        }
    }
    if !crossed {
        return Err("ray never reached r = 0.01μ".into());
    }
    if max_s <= 1e6 {
        return Err(format!("sectional curvature peaked at {max_s:.3e} ≤ 1e6"));
    }
    Ok(())
}

// ---------------------------------------------------------------- criterion 4

/// Time rate making `(dt, spatial)` null for a static diagonal-time chart.
fn null_time_rate(chart: &ChartSpec, p: &[f64], spatial: &[f64; 3]) -> Result<f64, String> {
    let g = geometry::metric_eval(chart, p).map_err(es)?;
    let mut q = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            q += g[(i + 1, j + 1)] * spatial[i] * spatial[j];
        }
    }
    Ok((q / -g[(0, 0)]).sqrt())
}

fn drift_scale(chart: &ChartSpec, p: &[f64], v: &[f64]) -> Result<f64, String> {
    let g = geometry::metric_eval(chart, p).map_err(es)?;
    let mut scale = 0.0;
    for i in 0..v.len() {
        for j in 0..v.len() {
            scale += (g[(i, j)] * v[i] * v[j]).abs();
        }
    }
    Ok(scale.max(1.0))
}

fn geodesic_suite() -> Result<(), String> {
    let mu = 1.0;
    let hd = charts::build_chart("hd", mu).map_err(es)?;
    let ks = charts::build_chart("ks", mu).map_err(es)?;
    let cfg = IntegrationConfig::new(10.0);

    // Conservation over affine span 10: outgoing null with angular motion.
    {
        let p = [0.0, 6.0, 1.2, 0.3];
        let spatial = [0.5, 0.0, 0.05];
        let td = null_time_rate(&hd, &p, &spatial)?;
        let v = [td, 0.5, 0.0, 0.05];
        let traj = geodesics::integrate(&hd, &p, &v, &cfg).map_err(es)?;
        expect_budget("hd null", &traj)?;
        let scale = drift_scale(&hd, &p, &v)?;
        bounded("hd null norm drift", traj.norm_drift(), 1e-7 * scale)?;
        bounded(
            "hd null energy drift",
            traj.energy_drift().ok_or("hd energy undefined")?,
            1e-8,
        )?;
    }

    // Same in the double-null chart, staying in the right exterior wedge.
    {
        let e = std::f64::consts::E;
        let p = [e, e, 1.1, 0.3];
        let g = geometry::metric_eval(&ks, &p).map_err(es)?;
        let (thd, phd) = (0.0, 0.1);
        let angular = g[(2, 2)] * thd * thd + g[(3, 3)] * phd * phd;
        let vdot = -angular / (2.0 * g[(0, 1)]);
        let v = [1.0, vdot, thd, phd];
        let traj = geodesics::integrate(&ks, &p, &v, &cfg).map_err(es)?;
        expect_budget("ks null", &traj)?;
        let scale = drift_scale(&ks, &p, &v)?;
        bounded("ks null norm drift", traj.norm_drift(), 1e-7 * scale)?;
        bounded(
            "ks null energy drift",
            traj.energy_drift().ok_or("ks energy undefined")?,
            1e-8,
        )?;
    }

    // Timelike conservation for good measure.
    {
        let p = [0.0, 8.0, 1.2, 0.3];
        let v = [1.2, 0.1, 0.0, 0.03];
        let traj = geodesics::integrate(&hd, &p, &v, &cfg).map_err(es)?;
        expect_budget("hd timelike", &traj)?;
        bounded(
            "hd timelike energy drift",
            traj.energy_drift().ok_or("energy undefined")?,
            1e-8,
        )?;
    }

    // Closed-form radial null rays against the integrator, exterior then
    // interior, matching t at equal radius (the radius is affine).
    {
        let (t0, r0) = geodesics::radial_null_closed_form(mu, 1, 2.0).map_err(es)?;
        let v = [r0 / (r0 - mu), 1.0, 0.0, 0.0];
        let cfg4 = IntegrationConfig::new(4.0);
        let traj = geodesics::integrate(&hd, &[t0, r0, 1.1, 0.3], &v, &cfg4).map_err(es)?;
        expect_budget("closed-form exterior", &traj)?;
        for sample in &traj.samples {
            let r = sample.position[1];
            let (t_closed, _) = geodesics::radial_null_closed_form(mu, 1, r).map_err(es)?;
            bounded(
                &format!("exterior closed-form at r={r:.3}"),
                (sample.position[0] - t_closed).abs(),
                1e-6,
            )?;
        }

        let (t0, r0) = geodesics::radial_null_closed_form(mu, -1, -0.8).map_err(es)?;
        let v = [-r0 / (mu - r0), -1.0, 0.0, 0.0];
        let cfg_in = IntegrationConfig::new(0.6);
        let traj = geodesics::integrate(&hd, &[t0, r0, 1.1, 0.3], &v, &cfg_in).map_err(es)?;
        expect_budget("closed-form interior", &traj)?;
        for sample in &traj.samples {
            let r = sample.position[1];
            let (t_closed, _) = geodesics::radial_null_closed_form(mu, -1, -r).map_err(es)?;
            bounded(
                &format!("interior closed-form at r={r:.3}"),
                (sample.position[0] - t_closed).abs(),
                1e-6,
            )?;
        }
    }

    // Trapped-wedge capture and anti-trapped expulsion, 100 launches each.
    {
        let report = experiments::capture_check(mu, 100, 7).map_err(es)?;
        if report.captured != 100 || report.expelled != 100 {
            return Err(format!(
                "capture {}/100, expulsion {}/100; violations: {:?}",
                report.captured, report.expelled, report.violations
            ));
        }
    }

    // 200-launch maximality sweep: nothing exits through a chart wall.
    {
        let report = experiments::maximality_sweep(mu).map_err(es)?;
        if report.launches != 200 {
            return Err(format!(
                "sweep ran {} launches, wanted 200",
                report.launches
            ));
        }
        if !report.all_inextendible() {
            return Err(format!("offending terminations: {:?}", report.offenders));
        }
    }

    // The analytically extended infalling ray ends on the singularity value
    // -μ exactly and never reaches the far wedge.
    for mass in [1.0, 2.5] {
        let report = experiments::no_traversal_demo(mass).map_err(es)?;
        if report.analytic_uv_end != -mass {
            return Err(format!(
                "analytic endpoint {} != -{mass}",
                report.analytic_uv_end
            ));
        }
        if report.reached_far_wedge {
            return Err(format!("μ={mass}: ray crossed into the far wedge"));
        }
        if report.min_radius >= 0.05 * mass {
            return Err(format!(
                "μ={mass}: numeric twin stopped at r={}",
                report.min_radius
            ));
        }
    }
    Ok(())
}

fn expect_budget(what: &str, traj: &geodesics::Trajectory) -> Result<(), String> {
    if traj.termination.tag() == "affine_budget" {
        Ok(())
    } else {
        Err(format!(
            "{what}: ended early with {} at λ={}",
            traj.termination.tag(),
            traj.last().lambda
        ))
    }
}

// ---------------------------------------------------------------- criterion 5

fn embedding_suite() -> Result<(), String> {
    let mu = 1.0;
    let ts = [-5.0, -2.5, 0.0, 2.5, 5.0];

    // Hyperbolic embedding is an isometry on both branches.
    for (branch, rs) in [
        (Branch::FronsdalExterior, vec![1.3, 2.0, 3.5, 6.0]),
        (Branch::FronsdalInterior, vec![0.25, 0.5, 0.85]),
    ] {
        let map = EmbeddingMap::new(branch, mu).map_err(es)?;
        for &t in &ts {
            for &r in &rs {
                let p = [t, r, 1.1, 0.3];
                let res = embeddings::pullback_residual(&map, &p).map_err(es)?;
                bounded(&format!("{} pullback r={r}", branch.tag()), res, 1e-6)?;

                // Hypersurface constraints, and their exact preservation
                // under the mirror map.
                let q = map.map_point(&p).map_err(es)?;
                let c = embeddings::fronsdal_constraints(mu, &q).map_err(es)?;
                for (i, v) in [c.0, c.1, c.2].iter().enumerate() {
                    bounded(&format!("constraint {i} r={r}"), v.abs(), 1e-9)?;
                }
                let cm =
                    embeddings::fronsdal_constraints(mu, &embeddings::mirror(&q)).map_err(es)?;
                if cm != c {
                    return Err(format!(
                        "mirror changed constraints at r={r}: {c:?} vs {cm:?}"
                    ));
                }
            }
        }
    }

    // Both horizons are homothetic spheres with coefficient μ².
    for mass in [1.0, 2.0] {
        let rep = embeddings::horizon_homothety_check(mass, 16).map_err(es)?;
        if (rep.expected - mass * mass).abs() > 1e-15 {
            return Err(format!("expected coefficient {} at μ={mass}", rep.expected));
        }
        if !rep.within(1e-8, 1e-8) {
            return Err(format!(
                "μ={mass}: deviations ks={:.3e} fronsdal={:.3e}",
                rep.ks_max_deviation, rep.fronsdal_max_deviation
            ));
        }
    }

    // Trigonometric embedding is 2π-periodic in t, component by component.
    let tau = std::f64::consts::TAU;
    for &t in &[0.0, 1.7, -3.0] {
        for &h in &[0.5, 2.0, 5.0] {
            let a = embeddings::kasner_embed(mu, t, h, 1.1, 0.3).map_err(es)?;
            let b = embeddings::kasner_embed(mu, t + tau, h, 1.1, 0.3).map_err(es)?;
            let mut diff = 0.0f64;
            for i in 0..6 {
                diff = diff.max((a[i] - b[i]).abs());
            }
            bounded(&format!("periodicity t={t} H={h}"), diff, 1e-12)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- criterion 6

fn topology_suite() -> Result<(), String> {
    let mu = 1.0;

    // Static two-region chart: no broken geodesic joins the regions, and the
    // refusal comes with the analytic certificate rather than an exhausted
    // budget.
    let p = [0.0, 0.5, 1.1, 0.3];
    let q = [0.0, 2.0, 1.1, 0.3];
    match topology::connectivity("hd", mu, &p, &q, 4000).map_err(es)? {
        Connectivity::NotFound {
            budget_exhausted,
            certificate,
        } => {
            if budget_exhausted {
                return Err("hd search gave up on budget, not on the certificate".into());
            }
            let cert = certificate.ok_or("hd refusal carries no certificate")?;
            if !cert.contains("excludes") {
                return Err(format!("unexpected certificate: {cert}"));
            }
        }
        Connectivity::Path { .. } => {
            return Err("found a path across the static chart boundary".into())
        }
    }

    // The same two physical points connect in the extended chart.
    let (u1, v1) = charts::hd_to_ks(mu, Region::RIPlus, 0.0, 0.5).map_err(es)?;
    let (u2, v2) = charts::hd_to_ks(mu, Region::RIIPlus, 0.0, 2.0).map_err(es)?;
    match topology::connectivity("ks", mu, &[u1, v1, 1.1, 0.3], &[u2, v2, 1.1, 0.3], 6000)
        .map_err(es)?
    {
        Connectivity::Path { hops } => {
            let crossed = hops
                .iter()
                .any(|h| (h.from[0] * h.from[1]) * (h.to[0] * h.to[1]) <= 0.0);
            if !crossed {
                return Err("extended-chart path never crossed the horizon".into());
            }
        }
        Connectivity::NotFound { .. } => {
            return Err("extended chart failed to join the two regions".into())
        }
    }

    // The connected one-region solution.
    let res = topology::connectivity(
        "schwarzschild",
        mu,
        &[0.0, 0.5, 1.1, 0.3],
        &[0.4, 2.0, 1.1, 0.3],
        4000,
    )
    .map_err(es)?;
    if !res.found() {
        return Err("one-region solution reported disconnected".into());
    }

    // Doubled-origin line: non-Hausdorff witness at resolution 1e-4.
    let cfg = SearchConfig::default();
    if (cfg.resolution - 1e-4).abs() > 0.0 {
        return Err(format!("default resolution is {}", cfg.resolution));
    }
    let witness = topology::hausdorff_witness(&topology::doubled_line(), &cfg)
        .ok_or("no witness found on the doubled line")?;
    if witness.p[0].abs() > 1e-6 || witness.q[0].abs() > 1e-6 {
        return Err(format!(
            "witness away from the doubled origin: {:?} / {:?}",
            witness.p, witness.q
        ));
    }
    if !witness.sound_at(&[1e-2, 1e-3, 1e-4]) {
        return Err("witness pairs do not approach both limits at 1e-4".into());
    }

    // Bridge metric continuity across the throat, and the derived-chart
    // throat sphere has homothety coefficient μ.
    for mass in [1.0, 2.0] {
        for variant in [ErVariant::Derived, ErVariant::Paper] {
            let jump = topology::bridge_metric_jump(mass, variant).map_err(es)?;
            bounded(
                &format!("bridge continuity μ={mass} {variant:?}"),
                jump,
                1e-12,
            )?;
        }
        let coeff = topology::bridge_homothety(mass, ErVariant::Derived).map_err(es)?;
        bounded(
            &format!("derived throat coefficient μ={mass}"),
            (coeff - mass).abs(),
            1e-9,
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------- criterion 7

fn render_dossier(entries: &[conformance::Entry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!(
            "{}|{}|{}|{:e}|{:e}|{}\n",
            e.id, e.printed_form, e.instrument, e.printed_residual, e.derived_residual, e.note
        ));
    }
    out
}

fn conformance_dossier() -> Result<(), String> {
    let entries = conformance::dossier(1.0).map_err(es)?;
    let required = [
        "eddington_cross_sign",
        "lemaitre_constant",
        "kruskal_xy_profile",
        "er_factor",
        "coderivatives_sign",
        "kasner_signature",
    ];
    for id in required {
        let entry = entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| format!("missing entry {id}"))?;
        if entry.printed_form.is_empty() {
            return Err(format!("{id}: no printed form recorded"));
        }
        if !entry.printed_residual.is_finite() || !entry.derived_residual.is_finite() {
            return Err(format!(
                "{id}: non-finite measurement {} / {}",
                entry.printed_residual, entry.derived_residual
            ));
        }
    }

    // Reproducibility of the measurements, bit for bit.
    let again = conformance::dossier(1.0).map_err(es)?;
    if render_dossier(&entries) != render_dossier(&again) {
        return Err("two dossiers of the same configuration differ".into());
    }
    Ok(())
}

// ---------------------------------------------------------------- criterion 8

fn determinism() -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_droste");
    let dir = tempfile::tempdir().map_err(es)?;
    let suite: &[(&[&str], i32)] = &[
        (
            &[
                "verify",
                "--chart",
                "hd",
                "--mu",
                "1",
                "--grid",
                "r=1.5:10:50,t=0:1:3",
            ],
            0,
        ),
        (&["verify", "--chart", "lemaitre_paper", "--mu", "1"], 1),
        (
            &[
                "trace",
                "--chart",
                "ks",
                "--mu",
                "1",
                "--init",
                "u=1,v=1,du=0,dv=-1",
                "--null",
                "--affine-max",
                "3",
                "--events",
            ],
            0,
        ),
        (
            &[
                "transform",
                "--from",
                "hd",
                "--to",
                "ks",
                "--mu",
                "1",
                "--region",
                "R_II_plus",
                "--point",
                "t=0,r=2",
            ],
            0,
        ),
        (&["embed", "--map", "kasner", "--mu", "1"], 0),
        (
            &[
                "embed", "--map", "fronsdal", "--mu", "1", "--branch", "interior",
            ],
            0,
        ),
        (&["curvature", "--mu", "1"], 0),
        (
            &[
                "topology",
                "--query",
                "connectivity",
                "--space",
                "hd",
                "--from",
                "t=0,r=0.5",
                "--to",
                "t=0,r=2",
            ],
            0,
        ),
        (
            &[
                "topology",
                "--query",
                "hausdorff",
                "--space",
                "doubled_line",
            ],
            0,
        ),
        (
            &[
                "topology", "--query", "bridge", "--space", "er", "--mu", "2",
            ],
            0,
        ),
        (&["conformance", "--mu", "1"], 0),
    ];

    for (i, (args, want_code)) in suite.iter().enumerate() {
        let mut outputs = Vec::new();
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("report_{i}_{run}.json"));
            let out = Command::new(bin)
                .args(*args)
                .arg("--out")
                .arg(&path)
                .output()
                .map_err(es)?;
            let code = out.status.code().unwrap_or(-1);
            if code != *want_code {
                return Err(format!(
                    "{:?} exited {code}, wanted {want_code}; stderr: {}",
                    args,
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            outputs.push(out.stdout);
            files.push(std::fs::read(&path).map_err(es)?);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{args:?}: stdout differs between runs"));
        }
        if files[0] != files[1] {
            return Err(format!("{args:?}: report files differ between runs"));
        }
        if files[0].is_empty() {
            return Err(format!("{args:?}: empty report"));
        }
    }
    Ok(())
}

// ----------------------------------------------------------------- properties

fn affine_reparametrization() -> Result<(), String> {
    let mu = 1.0;
    let hd = charts::build_chart("hd", mu).map_err(es)?;
    let p = [0.0, 6.0, 1.2, 0.3];
    let spatial = [0.5, 0.0, 0.05];
    let td = null_time_rate(&hd, &p, &spatial)?;
    let runs: [Vec<f64>; 2] = [vec![td, 0.5, 0.0, 0.05], vec![1.2, 0.1, 0.0, 0.03]];
    for v in &runs {
        let full = geodesics::integrate(&hd, &p, v, &IntegrationConfig::new(5.0)).map_err(es)?;
        expect_budget("unit rate", &full)?;
        let doubled: Vec<f64> = v.iter().map(|c| 2.0 * c).collect();
        let half =
            geodesics::integrate(&hd, &p, &doubled, &IntegrationConfig::new(2.5)).map_err(es)?;
        expect_budget("doubled rate", &half)?;
        let a = &full.last().position;
        let b = &half.last().position;
        let mut diff = 0.0f64;
        for i in 0..4 {
            diff = diff.max((a[i] - b[i]).abs());
        }
        bounded("reparametrized endpoint", diff, 1e-8)?;
    }
    Ok(())
}

fn future_constancy() -> Result<(), String> {
    let mu = 1.0;
    let hd = charts::build_chart("hd", mu).map_err(es)?;
    let p = [0.0, 8.0, 1.2, 0.3];

    let spatial = [-0.4, 0.0, 0.04];
    let td = null_time_rate(&hd, &p, &spatial)?;
    let launches: [(Vec<f64>, CausalKind); 2] = [
        (vec![1.2, 0.1, 0.0, 0.03], CausalKind::Timelike),
        (vec![td, -0.4, 0.0, 0.04], CausalKind::Null),
    ];
    for (v, kind) in &launches {
        let start = geometry::causal_class(&hd, &p, v).map_err(es)?;
        if start.kind != *kind {
            return Err(format!("launch classified as {:?}", start.kind));
        }
        if start.future != Some(true) {
            return Err(format!("launch not future-pointing: {:?}", start.future));
        }
        let traj = geodesics::integrate(&hd, &p, v, &IntegrationConfig::new(10.0)).map_err(es)?;
        for sample in &traj.samples {
            let class =
                geometry::causal_class(&hd, &sample.position, &sample.velocity).map_err(es)?;
            if class != start {
                return Err(format!("class changed to {class:?} at λ={}", sample.lambda));
            }
        }
    }
    Ok(())
}

fn exp_additivity() -> Result<(), String> {
    let mu = 1.0;
    let hd = charts::build_chart("hd", mu).map_err(es)?;
    let p = [0.0, 5.0, 1.1, 0.3];
    let x = [0.9, -0.12, 0.03, 0.05];

    let direct = geodesics::exp_map(&hd, &p, &x).map_err(es)?;

    // γ(1/2) with velocity x/2: the final state of integrating (p, x/2) to
    // λ = 1 is exactly the midpoint with the transported half-vector.
    let half: Vec<f64> = x.iter().map(|c| 0.5 * c).collect();
    let traj = geodesics::integrate(&hd, &p, &half, &IntegrationConfig::new(1.0)).map_err(es)?;
    expect_budget("half segment", &traj)?;
    let mid = traj.last();
    let two_step = geodesics::exp_map(&hd, &mid.position, &mid.velocity).map_err(es)?;

    let mut diff = 0.0f64;
    for i in 0..4 {
        diff = diff.max((direct[i] - two_step[i]).abs());
    }
    bounded("segment additivity", diff, 1e-8)
}

fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..panels {
        sum += f(a + h * i as f64);
    }
    sum * h
}

fn quadrature_oracle() -> Result<(), String> {
    const PANELS: usize = 10_000_000;
    // (kind, μ, base, x, value frozen from a high-precision evaluation)
    let instances = [
        (
            WIntegralKind::Kasner,
            1.0,
            0.0,
            1.0,
            1.096_186_144_123_151_2,
        ),
        (
            WIntegralKind::Fronsdal,
            1.0,
            1.0,
            2.0,
            1.593_106_694_063_907_4,
        ),
        (
            WIntegralKind::FronsdalDerived,
            2.0,
            2.0,
            3.0,
            1.417_401_320_773_496_2,
        ),
    ];
    for (kind, mass, base, x, frozen) in instances {
        let value = embeddings::w_integral(mass, kind, x, base).map_err(es)?;
        let integrand = |s: f64| match kind {
            WIntegralKind::Kasner => embeddings::kasner_integrand(mass, s),
            WIntegralKind::Fronsdal => embeddings::fronsdal_integrand_printed(mass, s),
            WIntegralKind::FronsdalDerived => embeddings::fronsdal_integrand_derived(mass, s),
        };
        let oracle = trapezoid(integrand, base, x, PANELS);
        bounded(
            &format!("{} vs trapezoid", kind.tag()),
            (value - oracle).abs(),
            1e-9,
        )?;
        bounded(
            &format!("{} vs frozen value", kind.tag()),
            (value - frozen).abs(),
            1e-9,
        )?;
    }
    Ok(())
}
