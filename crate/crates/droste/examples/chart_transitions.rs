//! Move points between charts: the catalog of transitions, a static-chart
//! point pushed into double-null coordinates and back, and the defining
//! identity u·v = f(r) = (r − μ)e^{r/μ} of the extension.
//!
//! Run with: cargo run --release -p droste --example chart_transitions

use droste::charts::{self, KsProfile, Region};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu = 1.0;

    println!("registered transitions:");
    for (source, target, branch) in charts::transition_catalog() {
        println!("  {source} -> {target}  [{branch}]");
    }

    // The static exterior point (t, r) = (0, 2μ) lands on the diagonal
    // u = v = e of the double-null plane.
    let (u, v) = charts::hd_to_ks(mu, Region::RIIPlus, 0.0, 2.0)?;
    println!("\n(t, r) = (0, 2)  ->  (u, v) = ({u:.6}, {v:.6})");

    let (region, t, r) = charts::ks_to_hd(mu, u, v)?;
    println!(
        "(u, v) back to {} at (t, r) = ({t:.2e}, {r:.12})",
        region.tag()
    );

    // Pullback residual and round trip through the full 4-D transition map.
    let hd = charts::build_chart("hd", mu)?;
    let ks = charts::build_chart("ks", mu)?;
    let map = charts::transition("hd", "ks", "R_II_plus", mu)?;
    let p = [0.7, 3.2, 1.1, 0.3];
    let residual = charts::pullback_residual(&hd, &ks, &map, &p)?;
    let image = (map.forward)(&p)?;
    let back = (map.inverse)(&image)?;
    let round: f64 = p
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("\nisometry residual at {p:?}: {residual:.3e}");
    println!("round-trip defect:          {round:.3e}");

    // u·v = f(r) across the horizon: the product is negative in the hole
    // region, zero on the horizon and positive outside.
    let profile = KsProfile::new(mu);
    println!("\n{:>6} {:>14} {:>14}", "r/μ", "u·v", "f(r)");
    for r in [0.4, 0.9, 1.0001, 1.5, 3.0] {
        let region = if r < mu {
            Region::RIPlus
        } else {
            Region::RIIPlus
        };
        let (u, v) = charts::hd_to_ks(mu, region, 0.4, r)?;
        println!("{r:>6.4} {:>14.6e} {:>14.6e}", u * v, profile.f(r)?);
    }
    Ok(())
}
