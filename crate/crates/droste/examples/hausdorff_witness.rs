//! Search gluing structures for Hausdorff-separation failures: the line
//! with a doubled origin yields a witness pair (the two copies of 0 share
//! every neighborhood), while the vacuous and total identifications do not.
//!
//! Run with: cargo run --release -p droste --example hausdorff_witness

use droste::topology::{self, SearchConfig};

fn main() {
    let cfg = SearchConfig::default();

    let doubled = topology::doubled_line();
    println!("structure '{}':", doubled.name);
    match topology::hausdorff_witness(&doubled, &cfg) {
        Some(w) => {
            println!(
                "  witness p = {:?} (kept copy), q = {:?} (other sheet)",
                w.p, w.q
            );
            println!("  approach pairs recorded: {}", w.pairs.len());
            for radius in [1e-2, 1e-3, 1e-4] {
                println!(
                    "  some pair within {radius:.0e} of both limits: {}",
                    w.sound_at(&[radius])
                );
            }
        }
        None => println!("  no witness — space is Hausdorff at this resolution"),
    }

    let total = topology::totally_identified_line();
    let found = topology::hausdorff_witness(&total, &cfg).is_some();
    println!("structure '{}': witness found = {found}", total.name);

    // The same machinery applied to the bridge gluing: every candidate
    // sequence enters the identified slice itself, so no witness survives.
    let bridge = topology::er_bridge(1.0).expect("bridge structure");
    let found = topology::hausdorff_witness(&bridge.structure, &cfg).is_some();
    println!(
        "structure '{}': witness found = {found}",
        bridge.structure.name
    );
}
