//! Self-verification suite: every structural identity the crate is built
//! on, checked by exhaustive enumeration or deterministic sampling against
//! independent routes, with machine-readable results.
//!
//! The checks come in two kinds. Authoritative checks compare two exact
//! computations and must agree bit for bit; any failure fails the suite.
//! Documented anomalies (the non-integral values of the printed pair-count
//! closed form at odd exponents) are *reported* with their exact values but
//! do not fail the suite, because the enumeration is the ground truth there
//! and its internal consistency is what gets asserted.

use num_rational::Ratio;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};

use crate::arith;
use crate::census;
use crate::csl;
use crate::lattice::Lattice;
use crate::quat::{self, Quaternion};
use crate::rot;

/// Verification depth. `Desk` covers the pinned acceptance ranges; `Deep`
/// widens the exhaustive bounds for longer runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Desk,
    Deep,
}

impl Level {
    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "desk" => Some(Level::Desk),
            "deep" => Some(Level::Deep),
            _ => None,
        }
    }
}

/// Result of one numbered check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: serde_json::Value,
}

impl CheckResult {
    pub fn summary_line(&self) -> String {
        format!(
            "check {:2} [{}] {}",
            self.id,
            if self.passed { "pass" } else { "FAIL" },
            self.name
        )
    }
}

/// Check 1: the enumerated number of distinct CSLs equals the multiplicative
/// closed form for every odd index up to the bound.
pub fn check_csl_census(level: Level) -> CheckResult {
    let max = match level {
        Level::Desk => 201,
        Level::Deep => 501,
    };
    let failures: Vec<i128> = (1..=max)
        .step_by(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&sigma| {
            let report = census::csl_census(sigma).unwrap();
            !(report.matched && report.count >= 1)
        })
        .collect();
    CheckResult {
        id: 1,
        name: "CSL census equals the multiplicative closed form",
        passed: failures.is_empty(),
        details: json!({
            "max_sigma": max as i64,
            "spot": {
                "f(3)": census::csl_count_formula(3) as i64,
                "f(9)": census::csl_count_formula(9) as i64,
                "f(45)": census::csl_count_formula(45) as i64,
            },
            "failures": failures.iter().map(|&s| s as i64).collect::<Vec<_>>(),
        }),
    }
}

fn oracle_norm_bound(level: Level) -> i128 {
    match level {
        Level::Desk => 99,
        Level::Deep => 201,
    }
}

/// Check 2: ideal projection and geometric intersection build the same lattice,
/// with index equal to the norm, for every primitive odd-norm quaternion up
/// to the bound.
pub fn check_oracle_equivalence(level: Level) -> CheckResult {
    let max = oracle_norm_bound(level);
    let gamma = Lattice::bcc();
    let results: Vec<(i128, u64, u64)> = (1..=max)
        .step_by(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let mut checked = 0u64;
            let mut bad = 0u64;
            for q in quat::primitive_with_norm(n) {
                checked += 1;
                let a = csl::csl_from_quaternion(&q).unwrap();
                let b = csl::csl_geometric(&q);
                if a != b || a.index_in(&gamma) != Ok(n) {
                    bad += 1;
                }
            }
            (n, checked, bad)
        })
        .collect();
    let checked: u64 = results.iter().map(|r| r.1).sum();
    let bad: u64 = results.iter().map(|r| r.2).sum();
    CheckResult {
        id: 2,
        name: "ideal and geometric CSL constructions agree exactly",
        passed: bad == 0,
        details: json!({ "max_norm": max as i64, "quaternions_checked": checked, "disagreements": bad }),
    }
}

/// Check 3: ideal keys and CSL lattices partition the primitive quaternions
/// identically in both directions (the ideal–CSL bijection).
pub fn check_ideal_bijection(level: Level) -> CheckResult {
    let max = oracle_norm_bound(level);
    let violations: Vec<i128> = (1..=max)
        .step_by(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&n| {
            let mut by_ideal: BTreeMap<quat::IdealHnf, BTreeSet<Lattice>> = BTreeMap::new();
            let mut by_lattice: BTreeMap<Lattice, BTreeSet<quat::IdealHnf>> = BTreeMap::new();
            for q in quat::primitive_with_norm(n) {
                let key = quat::ideal_hnf(&q);
                let lat = csl::csl_from_quaternion(&q).unwrap();
                by_ideal.entry(key).or_default().insert(lat);
                by_lattice.entry(lat).or_default().insert(key);
            }
            let forward = by_ideal.values().all(|s| s.len() == 1);
            let backward = by_lattice.values().all(|s| s.len() == 1);
            !(forward && backward)
        })
        .collect();
    CheckResult {
        id: 3,
        name: "ideal equality and CSL equality coincide in both directions",
        passed: violations.is_empty(),
        details: json!({
            "max_norm": max as i64,
            "violating_norms": violations.iter().map(|&n| n as i64).collect::<Vec<_>>(),
        }),
    }
}

fn primitive_pool(max_norm: i128) -> Vec<Quaternion> {
    (1..=max_norm)
        .step_by(2)
        .flat_map(quat::primitive_with_norm)
        .collect()
}

/// Check 4: index identities: `Σ(R1,R2) Σ₊ = Σ(R1) Σ(R2)` with `Σ₊ = N(gcld)` on
/// sampled pairs, and the m-fold sum-index recursion against the direct
/// intersection index.
pub fn check_index_identities(level: Level) -> CheckResult {
    let (pairs, lists) = match level {
        Level::Desk => (500usize, 150usize),
        Level::Deep => (1500, 400),
    };
    let pool = primitive_pool(49);
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5177);
    let mut pair_failures = 0u64;
    for _ in 0..pairs {
        let a = pool[rng.gen_range(0..pool.len())];
        let b = pool[rng.gen_range(0..pool.len())];
        let s1 = rot::sigma(&a).unwrap();
        let s2 = rot::sigma(&b).unwrap();
        let sp = csl::sigma_plus(&a, &b).unwrap();
        let s12 = csl::sigma_multi(&[a, b]).unwrap();
        let g = quat::gcld(&a, &b).unwrap();
        if s12 * sp != s1 * s2 || sp != g.norm() {
            pair_failures += 1;
        }
    }
    let mut list_failures = 0u64;
    for i in 0..lists {
        let m = 2 + i % 3; // lengths 2, 3, 4
        let qs: Vec<Quaternion> = (0..m).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        let recursive = csl::sigma_multi(&qs).unwrap();
        let direct = csl::mcsl(&qs).unwrap().sigma;
        if recursive != direct || direct % 2 == 0 {
            list_failures += 1;
        }
    }
    CheckResult {
        id: 4,
        name: "sum-index identities and the m-fold recursion hold exactly",
        passed: pair_failures == 0 && list_failures == 0,
        details: json!({
            "pairs_sampled": pairs,
            "pair_failures": pair_failures,
            "lists_sampled": lists,
            "list_failures": list_failures,
        }),
    }
}

/// Check 5: two-fold census at prime squares agrees with the closed form:
/// `3 p (p + 1) / 2` lattices at index `p²` (deep adds the fourth power).
pub fn check_pair_census_squares(level: Level) -> CheckResult {
    let mut cases = vec![(3i128, 2u32), (5, 2), (7, 2)];
    if level == Level::Deep {
        cases.push((3, 4));
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for (p, r) in cases {
        let report = census::pair_census(arith::pow(p, r)).unwrap();
        let formula = census::pair_count_formula(p, r);
        let good = formula.is_integer() && report.count == *formula.numer() && report.matched;
        ok &= good;
        rows.push(json!({
            "sigma": arith::pow(p, r) as i64,
            "count": report.count as i64,
            "formula": census::ratio_string(&formula),
            "ok": good,
        }));
    }
    CheckResult {
        id: 5,
        name: "two-fold census at even prime powers matches the closed form",
        passed: ok,
        details: json!({ "rows": rows }),
    }
}

/// Check 6: multiplicativity of the two-fold count on coprime factorizations.
pub fn check_multiplicativity(_level: Level) -> CheckResult {
    let rows = census::multiplicativity_check(&[(9, 5), (3, 5)]).unwrap();
    let passed = rows.iter().all(|r| r.ok) && rows[0].count_mn == 108 && rows[1].count_mn == 24;
    CheckResult {
        id: 6,
        name: "two-fold counts are multiplicative over coprime factors",
        passed,
        details: json!({
            "rows": rows.iter().map(|r| json!({
                "m": r.m as i64, "n": r.n as i64,
                "f2(m)": r.count_m as i64, "f2(n)": r.count_n as i64,
                "f2(mn)": r.count_mn as i64, "ok": r.ok,
            })).collect::<Vec<_>>(),
        }),
    }
}

/// Check 7: the printed pair-count closed form is non-integral at odd exponents;
/// the enumeration stands as ground truth and must itself stay consistent
/// (multiplicative against an independent factor). Deep level also records
/// the fifth power, where the printed value is integral yet still disagrees.
pub fn check_formula_anomalies(level: Level) -> CheckResult {
    let non_integral = [
        (3i128, 1u32, Ratio::new(109i128, 27)),
        (3, 3, Ratio::new(229, 3)),
    ];
    let integral = [(3i128, 2u32), (5, 2), (7, 2), (3, 4)];
    let mut anomalies = Vec::new();
    let mut ok = true;
    for (p, r, expect) in non_integral {
        let v = census::pair_count_formula(p, r);
        ok &= v == expect && !v.is_integer();
        anomalies.push(json!({
            "p": p as i64, "r": r,
            "printed_value": census::ratio_string(&v),
            "integral": v.is_integer(),
        }));
    }
    for (p, r) in integral {
        let v = census::pair_count_formula(p, r);
        ok &= v.is_integer();
    }
    // ground truth for the cube: record the enumerated value and check it
    // multiplicatively against an independent prime
    let f27 = census::pair_census(27).unwrap().count;
    let f5 = census::pair_census(5).unwrap().count;
    let f135 = census::pair_census(135).unwrap().count;
    let consistent = f27 * f5 == f135;
    ok &= consistent;
    let mut details = json!({
        "anomalies": anomalies,
        "enumerated_f2_27": f27 as i64,
        "consistency": { "f2(27)*f2(5)": (f27 * f5) as i64, "f2(135)": f135 as i64,
                         "ok": consistent },
    });
    if level == Level::Deep {
        let printed = census::pair_count_formula(3, 5);
        let enumerated = census::pair_census(243).unwrap().count;
        details["fifth_power"] = json!({
            "sigma": 243,
            "printed_value": census::ratio_string(&printed),
            "enumerated": enumerated as i64,
            "printed_matches": printed == Ratio::from_integer(enumerated),
        });
    }
    CheckResult {
        id: 7,
        name: "printed pair-count anomalies flagged; enumeration self-consistent",
        passed: ok,
        details,
    }
}

/// Check 8: constructive identities: coprime composition via the least common
/// right multiple, prime decomposition round trips, and the two explicit
/// two-fold representations with their cyclic quotient.
pub fn check_constructive_identities(level: Level) -> CheckResult {
    let gamma = Lattice::bcc();

    // (a) coprime composition on every coprime norm pair with product <= 225
    let mut norm_pairs = Vec::new();
    for n1 in (1..=225i128).step_by(2) {
        for n2 in (n1..=225).step_by(2) {
            if n1 * n2 <= 225 && arith::gcd(n1, n2) == 1 {
                norm_pairs.push((n1, n2));
            }
        }
    }
    let compose_failures: u64 = norm_pairs
        .par_iter()
        .map(|&(n1, n2)| {
            let reps1 = quat::enumerate_ideals(n1).unwrap();
            let reps2 = quat::enumerate_ideals(n2).unwrap();
            let mut bad = 0u64;
            for a in &reps1 {
                let la = csl::csl_from_quaternion(a).unwrap();
                for b in &reps2 {
                    let m = csl::compose_coprime(a, b).unwrap();
                    let direct = la.intersect(&csl::csl_from_quaternion(b).unwrap());
                    if m.norm() != n1 * n2 || csl::csl_from_quaternion(&m).unwrap() != direct {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    let compose_pairs: usize = norm_pairs
        .iter()
        .map(|&(n1, n2)| {
            census::csl_count_formula(n1) as usize * census::csl_count_formula(n2) as usize
        })
        .sum();

    // (b) decomposition round trips on sampled mixed norms <= 2025
    let samples = match level {
        Level::Desk => 100usize,
        Level::Deep => 250,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xDEC0);
    let mut sampled: Vec<Quaternion> = Vec::new();
    let mut seen = BTreeSet::new();
    while sampled.len() < samples {
        let d: [i128; 4] = std::array::from_fn(|_| 2 * rng.gen_range(-22i128..=22));
        let q = match Quaternion::from_doubled(d) {
            Ok(q) if !q.is_zero() => q.primitive_part(),
            _ => continue,
        };
        let n = q.norm();
        if n % 2 == 1 && n > 1 && n <= 2025 && seen.insert(q) {
            sampled.push(q);
        }
    }
    let decompose_failures: u64 = sampled
        .par_iter()
        .map(|q| {
            let parts = csl::decompose_csl(q).unwrap();
            let meet = parts.iter().fold(gamma, |acc, part| {
                acc.intersect(&csl::csl_from_quaternion(part).unwrap())
            });
            let csl_ok = meet == csl::csl_from_quaternion(q).unwrap();
            let norms_ok = parts
                .iter()
                .all(|part| arith::factorize(part.norm()).len() == 1);
            // feed the same lattice through the MCSL decomposition
            let rec = csl::mcsl(&[*q]).unwrap();
            let meet2 = rec
                .decomposition
                .iter()
                .fold(gamma, |acc, part| acc.intersect(&part.lattice));
            u64::from(!(csl_ok && norms_ok && meet2 == rec.lattice))
        })
        .sum();

    // (c) the two explicit pair representations, exhaustively at p = 3 for
    // norms in {3, 9, 27}, plus the cyclic quotient order
    let reps3: Vec<Quaternion> = [3i128, 9, 27]
        .iter()
        .flat_map(|&n| quat::enumerate_ideals(n).unwrap())
        .collect();
    let pair_indices: Vec<(usize, usize)> = (0..reps3.len())
        .flat_map(|i| (0..reps3.len()).map(move |j| (i, j)))
        .collect();
    let pair_outcomes: Vec<(u64, u64)> = pair_indices
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&reps3[i], &reps3[j]);
            if quat::is_right_multiple(a, b) || quat::is_right_multiple(b, a) {
                return (0, 0);
            }
            let direct = csl::csl_from_quaternion(a)
                .unwrap()
                .intersect(&csl::csl_from_quaternion(b).unwrap());
            let linked = csl::pair_lattice_from_linking(a, b).unwrap();
            let two_sided = csl::pair_lattice_from_two_sided(a, b).unwrap();
            let q = quat::lcrm(a, b).unwrap();
            let inner = csl::projected_ideal_lattice(&q);
            let order = q.norm() / a.norm().max(b.norm());
            let smith = inner.smith_quotient(&direct).unwrap();
            let ok = linked == direct && two_sided == direct && smith == [1, 1, order];
            (1, u64::from(!ok))
        })
        .collect();
    let pair_checked: u64 = pair_outcomes.iter().map(|o| o.0).sum();
    let pair_failures: u64 = pair_outcomes.iter().map(|o| o.1).sum();

    let passed = compose_failures == 0 && decompose_failures == 0 && pair_failures == 0;
    CheckResult {
        id: 8,
        name: "composition, decomposition, and pair representations are exact",
        passed,
        details: json!({
            "coprime_pairs_checked": compose_pairs,
            "coprime_failures": compose_failures,
            "decomposition_samples": samples,
            "decomposition_failures": decompose_failures,
            "pair_representations_checked": pair_checked,
            "pair_representation_failures": pair_failures,
        }),
    }
}

/// Check 9: the valuation criterion harness completes its exhaustive comparison
/// and the lattice-equality oracle behaves as an equivalence relation.
pub fn check_pair_equality_harness(level: Level) -> CheckResult {
    let max_alpha = match level {
        Level::Desk => 2,
        Level::Deep => 3,
    };
    let report = census::pair_equality_report(3, max_alpha).unwrap();
    let passed = report.oracle_consistent && report.tuples > 0;
    CheckResult {
        id: 9,
        name: "pair-equality criterion compared against the lattice oracle",
        passed,
        details: report.to_json(),
    }
}

/// Check 10: property suites: ring identities, HNF idempotence and order
/// independence, duality involution, and spectrum oddness on at least 10^4
/// deterministic cases.
pub fn check_property_suites(_level: Level) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9907);
    let mut cases = 0u64;
    let mut failures = 0u64;

    let random_quat = |rng: &mut ChaCha8Rng| -> Quaternion {
        loop {
            let parity = rng.gen_range(0..2i128);
            let d: [i128; 4] = std::array::from_fn(|_| 2 * rng.gen_range(-9i128..=9) + parity);
            if let Ok(q) = Quaternion::from_doubled(d) {
                if !q.is_zero() {
                    return q;
                }
            }
        }
    };

    // ring identities
    for _ in 0..5000 {
        let a = random_quat(&mut rng);
        let b = random_quat(&mut rng);
        let c = random_quat(&mut rng);
        cases += 1;
        let ok = (a * b).norm() == a.norm() * b.norm()
            && a * a.conj() == Quaternion::scalar(a.norm())
            && (a * b) * c == a * (b * c)
            && (a * b).conj() == b.conj() * a.conj();
        failures += u64::from(!ok);
    }

    // rotation homomorphism
    for _ in 0..1000 {
        let a = random_quat(&mut rng);
        let b = random_quat(&mut rng);
        cases += 1;
        let lhs = rot::rotation_matrix(&(a * b)).unwrap();
        let rhs = rot::rotation_matrix(&a)
            .unwrap()
            .mul(&rot::rotation_matrix(&b).unwrap());
        failures += u64::from(lhs != rhs);
    }

    // HNF idempotence and generator-order independence
    for _ in 0..2000 {
        let gens: Vec<[i128; 3]> = (0..4)
            .map(|_| std::array::from_fn(|_| rng.gen_range(-20i128..=20)))
            .collect();
        let Ok(l) = Lattice::from_generators(&gens) else {
            continue;
        };
        cases += 1;
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let again = Lattice::from_generators(&shuffled).unwrap();
        let idem = Lattice::from_generators(l.basis()).unwrap();
        failures += u64::from(l != again || l != idem);
    }

    // duality involution
    for _ in 0..2000 {
        let gens: Vec<[i128; 3]> = (0..4)
            .map(|_| std::array::from_fn(|_| rng.gen_range(-15i128..=15)))
            .collect();
        let Ok(l) = Lattice::from_generators(&gens) else {
            continue;
        };
        cases += 1;
        failures += u64::from(l.dual().dual().integral() != Some(l));
    }

    // spectrum oddness of multiple intersections
    let pool = primitive_pool(49);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=3);
        let qs: Vec<Quaternion> = (0..m).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        cases += 1;
        failures += u64::from(csl::sigma_multi(&qs).unwrap() % 2 != 1);
    }

    CheckResult {
        id: 10,
        name: "ring, HNF, duality, and spectrum properties on random cases",
        passed: failures == 0 && cases >= 10_000,
        details: json!({ "cases": cases, "failures": failures }),
    }
}

/// Runs all checks in order.
pub fn run_all(level: Level) -> Vec<CheckResult> {
    vec![
        check_csl_census(level),
        check_oracle_equivalence(level),
        check_ideal_bijection(level),
        check_index_identities(level),
        check_pair_census_squares(level),
        check_multiplicativity(level),
        check_formula_anomalies(level),
        check_constructive_identities(level),
        check_pair_equality_harness(level),
        check_property_suites(level),
    ]
}

/// Assembles the JSON verification report.
pub fn report_json(level: Level, results: &[CheckResult]) -> serde_json::Value {
    json!({
        "level": match level { Level::Desk => "desk", Level::Deep => "deep" },
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "details": r.details,
        })).collect::<Vec<_>>(),
        "all_passed": results.iter().all(|r| r.passed),
    })
}
