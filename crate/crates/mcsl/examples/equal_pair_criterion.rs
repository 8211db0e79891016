//! When do two pairs of CSLs intersect to the same lattice? A criterion on
//! the p-adic valuations of the norms and pairwise gcld norms decides this;
//! here it is compared exhaustively against direct lattice equality.
//!
//! ```bash
//! cargo run --release --example equal_pair_criterion
//! ```

use mcsl::census;
use mcsl::csl;
use mcsl::quat::Quaternion;

fn main() {
    // a hand-picked tuple: same pair listed in both orders is equal ...
    let q1 = Quaternion::lipschitz(1, 1, 1, 0);
    let q2 = Quaternion::lipschitz(1, 1, -1, 0);
    println!(
        "criterion on (q1,q2) vs (q2,q1): {}",
        census::pairs_equal_by_valuations(&q1, &q2, &q2, &q1, 3).unwrap()
    );

    // ... while replacing one factor by a different ideal is not
    let q3 = Quaternion::lipschitz(1, -1, 1, 0);
    let by_criterion = census::pairs_equal_by_valuations(&q1, &q2, &q1, &q3, 3).unwrap();
    let by_lattices =
        csl::mcsl(&[q1, q2]).unwrap().lattice == csl::mcsl(&[q1, q3]).unwrap().lattice;
    println!("criterion on (q1,q2) vs (q1,q3): {by_criterion} (lattice oracle: {by_lattices})");

    // exhaustive comparison over all admissible 4-tuples of ideal
    // representatives with norms 3 and 9
    for max_alpha in [1u32, 2] {
        let report = census::pair_equality_report(3, max_alpha).unwrap();
        println!(
            "\np = 3, alpha <= {max_alpha}: {} tuples, {} agreements, {} mismatches, oracle consistent: {}",
            report.tuples,
            report.agreements,
            report.mismatches.len(),
            report.oracle_consistent
        );
    }
}
