//! Construct one coincidence site lattice two independent ways.
//!
//! ```bash
//! cargo run --example build_csl
//! ```

use mcsl::csl;
use mcsl::lattice::Lattice;
use mcsl::quat::{self, Quaternion};

fn main() {
    let q = Quaternion::lipschitz(1, 1, 1, 0);

    // route 1: project the left ideal qH into 3-space
    let algebraic = csl::csl_from_quaternion(&q).unwrap();
    // route 2: intersect the bcc lattice with its rotated copy
    let geometric = csl::csl_geometric(&q);
    assert_eq!(algebraic, geometric);

    println!("q = {q}");
    println!("CSL basis (doubled coordinates, canonical HNF):");
    for row in algebraic.basis() {
        println!("    {row:?}");
    }
    println!(
        "index in the bcc lattice: {}",
        algebraic.index_in(&Lattice::bcc()).unwrap()
    );
    println!("both construction routes agree: true");

    // the ideal key deduplicates associates: q and q·u generate the same CSL
    let assoc = q * Quaternion::OMEGA;
    assert_eq!(quat::ideal_hnf(&q), quat::ideal_hnf(&assoc));
    assert_eq!(algebraic, csl::csl_from_quaternion(&assoc).unwrap());
    println!("associate generator {assoc} gives the same lattice: true");

    // machine-readable record
    let record = csl::CslRecord::new(&q).unwrap();
    println!("\nJSON record:\n{}", record.to_json());
}
