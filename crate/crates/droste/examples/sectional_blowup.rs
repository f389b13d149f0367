//! Follow a radial ingoing null ray across the horizon and watch the
//! sectional curvature S = μ/r³ of the double-null plane diverge until the
//! integrator stops at its curvature sentinel.
//!
//! Run with: cargo run --release -p droste --example sectional_blowup

use droste::charts::{self, KsProfile};
use droste::geodesics::{self, IntegrationConfig};
use droste::geometry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu = 1.0;
    let ks = charts::build_chart("ks", mu)?;
    let plane = charts::build_chart("ks_plane", mu)?;
    let profile = KsProfile::new(mu);

    // u ≡ 1 and v decreasing: starts in the exterior wedge, crosses the
    // horizon at uv = 0 and runs into the hole region.
    let traj = geodesics::integrate(
        &ks,
        &[1.0, 1.0, 1.1, 0.3],
        &[0.0, -1.0, 0.0, 0.0],
        &IntegrationConfig::new(20.0),
    )?;

    println!(
        "{:>10} {:>10} {:>10} {:>12} {:>12}",
        "lambda", "u", "v", "r/μ", "S"
    );
    let stride = (traj.samples.len() / 12).max(1);
    for sample in traj
        .samples
        .iter()
        .step_by(stride)
        .chain(traj.samples.last())
    {
        let (u, v) = (sample.position[0], sample.position[1]);
        let r = profile.f_inv(u * v)?;
        let s = geometry::sectional_curvature_plane(&plane, &[u, v])?;
        println!(
            "{:>10.5} {u:>10.5} {v:>10.5} {r:>12.6} {s:>12.4e}",
            sample.lambda
        );
    }

    for event in &traj.events {
        println!("event: {} at lambda = {:.6}", event.name, event.lambda);
    }
    println!("termination: {}", traj.termination.tag());
    Ok(())
}
