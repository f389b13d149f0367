//! Broken-geodesic connectivity: the static two-region chart cannot join a
//! hole point to an exterior point (and says why), while the double-null
//! extension of the very same field walks across the horizon.
//!
//! Run with: cargo run --release -p droste --example connectivity_probe

use droste::charts::{self, Region};
use droste::topology::{self, Connectivity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu = 1.0;
    let inside = [0.0, 0.5, 1.1, 0.3];
    let outside = [0.0, 2.0, 1.1, 0.3];

    match topology::connectivity("hd", mu, &inside, &outside, 4000)? {
        Connectivity::NotFound {
            budget_exhausted,
            certificate,
        } => {
            println!("static chart: not found (budget exhausted: {budget_exhausted})");
            if let Some(cert) = certificate {
                println!("  certificate: {cert}");
            }
        }
        Connectivity::Path { hops } => {
            println!("static chart: unexpectedly joined in {} hops", hops.len())
        }
    }

    // Same two physical points, seen through the extension.
    let (u1, v1) = charts::hd_to_ks(mu, Region::RIPlus, inside[0], inside[1])?;
    let (u2, v2) = charts::hd_to_ks(mu, Region::RIIPlus, outside[0], outside[1])?;
    match topology::connectivity("ks", mu, &[u1, v1, 1.1, 0.3], &[u2, v2, 1.1, 0.3], 6000)? {
        Connectivity::Path { hops } => {
            println!("\nextension: joined in {} geodesic segments", hops.len());
            for (i, hop) in hops.iter().enumerate() {
                let uv_from = hop.from[0] * hop.from[1];
                let uv_to = hop.to[0] * hop.to[1];
                let marker = if uv_from * uv_to <= 0.0 {
                    "  <- crosses the horizon"
                } else {
                    ""
                };
                println!("  hop {i}: u·v {uv_from:>8.4} -> {uv_to:>8.4}{marker}");
            }
        }
        Connectivity::NotFound { .. } => println!("\nextension: not found"),
    }

    // The one-region solution is connected outright.
    let res = topology::connectivity("schwarzschild", mu, &inside, &[0.4, 2.0, 1.1, 0.3], 4000)?;
    println!("\none-region solution connected: {}", res.found());
    Ok(())
}
