//! Multiple CSLs: intersections of several coincidence site lattices,
//! their indices, and their unique prime-power decomposition.
//!
//! ```bash
//! cargo run --example intersect_csls
//! ```

use mcsl::csl;
use mcsl::quat::Quaternion;

fn main() {
    let a = Quaternion::lipschitz(1, 1, 1, 0); // sigma 3
    let b = Quaternion::lipschitz(1, 1, -1, 0); // sigma 3, different ideal
    let c = Quaternion::lipschitz(1, 2, 0, 0); // sigma 5

    // two distinct index-3 CSLs meet in an index-9 lattice
    let pair = csl::mcsl(&[a, b]).unwrap();
    println!("sigma(a) = 3, sigma(b) = 3, sigma(a,b) = {}", pair.sigma);
    println!(
        "sum index (gcld norm): {}",
        csl::sigma_plus(&a, &b).unwrap()
    );

    // a third rotation with coprime index multiplies in exactly
    let triple = csl::mcsl(&[a, b, c]).unwrap();
    println!("sigma(a,b,c) = {}", triple.sigma);
    println!(
        "recursion agrees: {}",
        csl::sigma_multi(&[a, b, c]).unwrap() == triple.sigma
    );

    // index 45 = 9 · 5 splits into prime-power pieces that intersect back
    println!("\nprime-power decomposition of the index-45 lattice:");
    for part in &triple.decomposition {
        println!(
            "    p = {}, alpha = {}, piece index {}",
            part.p,
            part.alpha,
            part.p.pow(part.alpha)
        );
    }

    // coprime intersections collapse to an ordinary CSL
    let composed = csl::compose_coprime(&a, &c).unwrap();
    println!(
        "\nlcrm of the coprime pair generates the intersection directly: {}",
        csl::csl_from_quaternion(&composed).unwrap() == csl::mcsl(&[a, c]).unwrap().lattice
    );

    // the two explicit presentations of a two-fold intersection
    let direct = pair.lattice;
    let linked = csl::pair_lattice_from_linking(&a, &b).unwrap();
    let two_sided = csl::pair_lattice_from_two_sided(&a, &b).unwrap();
    println!("single-vector extension matches: {}", linked == direct);
    println!(
        "two-sided module projection matches: {}",
        two_sided == direct
    );

    println!("\nJSON record:\n{}", pair.to_json());
}
