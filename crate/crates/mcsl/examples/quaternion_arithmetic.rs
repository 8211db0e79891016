//! One-sided Euclidean arithmetic in the ring of integer quaternions:
//! division with remainder, greatest common left divisors, least common
//! right multiples, and left prime factorization.
//!
//! ```bash
//! cargo run --example quaternion_arithmetic
//! ```

use mcsl::quat::{self, Quaternion};

fn main() {
    let a = Quaternion::lipschitz(1, 2, 3, 1); // norm 15
    let b = Quaternion::lipschitz(1, 1, 1, 0); // norm 3

    let (s, r) = quat::right_divmod(&a, &b).unwrap();
    println!("a = {a}  (norm {})", a.norm());
    println!("b = {b}  (norm {})", b.norm());
    println!(
        "a = b*s + r with s = {s}, r = {r}, N(r) = {} < N(b)",
        r.norm()
    );

    let g = quat::gcld(&a, &b).unwrap();
    let m = quat::lcrm(&a, &b).unwrap();
    println!("\ngcld(a, b) = {g}  (norm {})", g.norm());
    println!("lcrm(a, b) = {m}  (norm {})", m.norm());
    println!(
        "norm identity N(gcld)·N(lcrm) = N(a)·N(b): {}",
        g.norm() * m.norm() == a.norm() * b.norm()
    );

    // left prime factorization: norms in ascending prime order,
    // product reproduces the quaternion exactly
    let factors = quat::left_prime_decomposition(&a).unwrap();
    println!("\nleft prime factorization of a:");
    for f in &factors {
        println!("    {f}  (norm {})", f.norm());
    }
    let product = factors.iter().fold(Quaternion::ONE, |acc, f| acc.mul(f));
    println!("product reproduces a exactly: {}", product == a);

    // even norms strip down to an odd-norm representative with the same CSL
    let even = Quaternion::lipschitz(1, 3, 1, 1); // norm 12
    let odd = quat::make_odd(&even);
    println!("\nmake_odd({even}) = {odd}  (norm {})", odd.norm());

    // one canonical generator per left ideal of a given norm
    for n in [3i128, 9, 45] {
        println!(
            "left ideals of norm {n}: {}",
            quat::enumerate_ideals(n).unwrap().len()
        );
    }
}
