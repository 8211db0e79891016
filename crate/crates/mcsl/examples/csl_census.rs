//! Count the distinct CSLs of every odd index up to a bound and compare
//! with the multiplicative closed form (p+1)p^(r-1) at odd prime powers.
//!
//! ```bash
//! cargo run --release --example csl_census
//! ```

use mcsl::census;

fn main() {
    println!(
        "{:>6} {:>10} {:>10} {:>6}",
        "sigma", "count", "formula", "match"
    );
    for sigma in (1..=45i128).step_by(2) {
        let report = census::csl_census(sigma).unwrap();
        println!(
            "{:>6} {:>10} {:>10} {:>6}",
            report.sigma,
            report.count,
            census::ratio_string(&report.formula),
            report.matched
        );
        assert!(report.matched);
    }
    println!("\nevery odd index up to 45 matches the closed form");
}
