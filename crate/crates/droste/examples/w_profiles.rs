//! The radial profile integrals behind the flat embeddings: the printed
//! hyperbolic integrand, the derived one the isometry actually needs, their
//! pointwise relation printed² = 1 + derived², and smooth quadrature across
//! the horizon (the only singularity sits at h = 0).
//!
//! Run with: cargo run --release -p droste --example w_profiles

use droste::embeddings::{self, WIntegralKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu = 1.0;

    println!(
        "{:>6} {:>12} {:>12} {:>14}",
        "h/μ", "printed", "derived", "p² − 1 − d²"
    );
    for h in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let p = embeddings::fronsdal_integrand_printed(mu, h);
        let d = embeddings::fronsdal_integrand_derived(mu, h);
        println!(
            "{h:>6.2} {p:>12.6} {d:>12.6} {:>14.3e}",
            p * p - 1.0 - d * d
        );
    }
    println!(
        "at the horizon: printed = 2, derived = √3 = {:.6}",
        3f64.sqrt()
    );

    // Anchored at the horizon, the profile integral crosses h = μ smoothly.
    println!("\n{:>6} {:>14}", "x/μ", "W(x), derived");
    for x in [0.5, 0.9, 0.99, 1.01, 1.5, 3.0] {
        let w = embeddings::w_integral(mu, WIntegralKind::FronsdalDerived, x, mu)?;
        println!("{x:>6.2} {w:>14.9}");
    }

    // The trigonometric profile for the exterior embedding is bounded on
    // [0, x] and integrable from the axis.
    println!("\n{:>6} {:>14}", "x/μ", "W(x), trig");
    for x in [0.5, 1.0, 3.0] {
        let w = embeddings::w_integral(mu, WIntegralKind::Kasner, x, 0.0)?;
        println!("{x:>6.2} {w:>14.9}");
    }
    println!(
        "\ntrig integrand at the axis: {:.6} (= √1.25 at μ = 1)",
        embeddings::kasner_integrand(mu, 0.0)
    );
    Ok(())
}
