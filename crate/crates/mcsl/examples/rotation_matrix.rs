//! Exact rotation matrices from integer quaternions, and back.
//!
//! ```bash
//! cargo run --example rotation_matrix
//! ```

use mcsl::quat::Quaternion;
use mcsl::rot;

fn show(q: &Quaternion) {
    let r = rot::rotation_matrix(q).unwrap();
    println!(
        "q = {q}   norm {}   sigma {}",
        q.norm(),
        rot::sigma(q).unwrap()
    );
    for row in r.entry_strings() {
        println!("    [{:>6} {:>6} {:>6}]", row[0], row[1], row[2]);
    }
    let back = rot::quaternion_from_rotation(&r);
    println!("    recovered generator: {back}\n");
}

fn main() {
    // the identity, a cubic symmetry, and two genuine coincidence rotations
    show(&Quaternion::ONE);
    show(&Quaternion::lipschitz(0, 1, 1, 0));
    show(&Quaternion::lipschitz(1, 1, 1, 0));
    show(&Quaternion::lipschitz(1, 2, 3, 1));

    // R(q) is a homomorphic image of quaternion multiplication
    let a = Quaternion::lipschitz(1, 1, 1, 0);
    let b = Quaternion::lipschitz(1, 2, 0, 0);
    let lhs = rot::rotation_matrix(&(a * b)).unwrap();
    let rhs = rot::rotation_matrix(&a)
        .unwrap()
        .mul(&rot::rotation_matrix(&b).unwrap());
    println!("R(ab) == R(a)R(b): {}", lhs == rhs);

    // the 24 rotations fixing the cube never change a CSL
    println!("cubic group order: {}", rot::cubic_group().len());
    println!(
        "strongly equivalent (1,0,0,0) ~ (1,1,0,0): {}",
        rot::strongly_equivalent(&Quaternion::ONE, &Quaternion::lipschitz(1, 1, 0, 0))
    );
}
