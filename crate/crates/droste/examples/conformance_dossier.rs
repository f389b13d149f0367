//! Print the conformance dossier: for each formula measured in its printed
//! form and in the derived form, the two residuals under the same
//! instrument, and whether the printed form materially deviates.
//!
//! Run with: cargo run --release -p droste --example conformance_dossier

use droste::conformance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let entries = conformance::dossier(1.0)?;
    println!(
        "{:<22} {:>13} {:>13}  deviates  instrument",
        "id", "printed", "derived"
    );
    for e in &entries {
        println!(
            "{:<22} {:>13.3e} {:>13.3e}  {:<8}  {}",
            e.id,
            e.printed_residual,
            e.derived_residual,
            e.printed_deviates(),
            e.instrument
        );
    }

    println!("\nnotes:");
    for e in &entries {
        println!("  {:<22} {}", e.id, e.note);
    }
    Ok(())
}
