//! Full-rank sublattices of 3-space in doubled bcc coordinates.
//!
//! Coordinates are "doubled": one unit is half the conventional cubic edge,
//! which turns the bcc lattice into the set of integer triples whose
//! components share one parity. Its canonical basis is
//! `[[1,1,1],[0,2,0],[0,0,2]]` with determinant 4, and every CSL index comes
//! out as `det / 4`.
//!
//! A [`Lattice`] is always stored by its canonical Hermite normal form
//! (upper triangular rows, positive diagonal, above-diagonal entries reduced
//! into `[0, diagonal)`), so lattice equality is matrix equality.
//! [`RationalLattice`] adds one positive denominator for intermediates such
//! as a rotated copy `RΓ`.

use serde_json::json;

use crate::arith;
use crate::linalg;
use crate::{Error, Result};

/// A full-rank integer lattice in doubled coordinates, canonical HNF basis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lattice {
    rows: [[i128; 3]; 3],
}

impl Lattice {
    /// The ambient bcc lattice `Γ`.
    pub fn bcc() -> Lattice {
        Lattice {
            rows: [[1, 1, 1], [0, 2, 0], [0, 0, 2]],
        }
    }

    /// Canonical basis of the lattice generated by `generators`; fails when
    /// they do not span rank 3.
    pub fn from_generators(generators: &[[i128; 3]]) -> Result<Lattice> {
        let rows = linalg::hnf_rows(generators);
        if rows.len() < 3 {
            return Err(Error::RankDeficient(rows.len()));
        }
        Ok(Lattice {
            rows: rows.try_into().unwrap(),
        })
    }

    pub fn basis(&self) -> &[[i128; 3]; 3] {
        &self.rows
    }

    pub fn det(&self) -> i128 {
        linalg::diag_product(&self.rows)
    }

    /// The scaled lattice `k L`, `k > 0`.
    pub fn scaled(&self, k: i128) -> Lattice {
        assert!(k > 0);
        Lattice {
            rows: self.rows.map(|r| r.map(|x| x * k)),
        }
    }

    pub fn contains(&self, v: [i128; 3]) -> bool {
        linalg::solve_upper(&self.rows, &v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.rows.iter().all(|&r| other.contains(r))
    }

    /// Exact index `[other : self]`; fails unless `self ⊆ other`.
    pub fn index_in(&self, other: &Lattice) -> Result<i128> {
        if !self.is_sublattice_of(other) {
            return Err(Error::NotSublattice);
        }
        debug_assert_eq!(self.det() % other.det(), 0);
        Ok(self.det() / other.det())
    }

    /// Smallest lattice containing both.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens: Vec<[i128; 3]> = self.rows.to_vec();
        gens.extend_from_slice(&other.rows);
        Lattice::from_generators(&gens).expect("sum of full-rank lattices is full rank")
    }

    /// Largest common sublattice, via dual-sum duality.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let meet = self.dual().sum(&other.dual()).dual();
        meet.integral()
            .expect("intersection of integer lattices is integral")
    }

    /// The dual lattice `{y : y·x ∈ ℤ for all x}`.
    pub fn dual(&self) -> RationalLattice {
        RationalLattice::new(&linalg::cofactor3(&self.rows), self.det())
            .expect("dual of a full-rank lattice is full rank")
    }

    /// Invariant factors `d1 | d2 | d3` of the quotient `other / self`.
    pub fn smith_quotient(&self, other: &Lattice) -> Result<[i128; 3]> {
        let mut coeffs = [[0i128; 3]; 3];
        for (i, row) in self.rows.iter().enumerate() {
            coeffs[i] = linalg::solve_upper(&other.rows, row).ok_or(Error::NotSublattice)?;
        }
        Ok(linalg::smith3(coeffs))
    }

    /// JSON form: `{"hnf": [[..],[..],[..]], "den": 1, "coords": "doubled-bcc"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let hnf: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| i64::try_from(x).expect("entry fits i64"))
                    .collect()
            })
            .collect();
        json!({ "hnf": hnf, "den": 1, "coords": "doubled-bcc" })
    }
}

/// A full-rank lattice with rational basis `rows / den`, normalized so that
/// the rows are a canonical HNF and `gcd(content(rows), den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RationalLattice {
    rows: [[i128; 3]; 3],
    den: i128,
}

impl RationalLattice {
    pub fn new(generators: &[[i128; 3]], den: i128) -> Result<RationalLattice> {
        assert!(den > 0);
        let rows = linalg::hnf_rows(generators);
        if rows.len() < 3 {
            return Err(Error::RankDeficient(rows.len()));
        }
        let rows: [[i128; 3]; 3] = rows.try_into().unwrap();
        let mut g = den;
        for row in &rows {
            for &x in row {
                g = arith::gcd(g, x);
            }
        }
        Ok(RationalLattice {
            rows: rows.map(|r| r.map(|x| x / g)),
            den: den / g,
        })
    }

    pub fn from_lattice(l: &Lattice) -> RationalLattice {
        RationalLattice {
            rows: *l.basis(),
            den: 1,
        }
    }

    /// The underlying integer lattice, when the denominator is 1.
    pub fn integral(&self) -> Option<Lattice> {
        (self.den == 1).then_some(Lattice { rows: self.rows })
    }

    pub fn sum(&self, other: &RationalLattice) -> RationalLattice {
        let l = arith::lcm(self.den, other.den);
        let mut gens: Vec<[i128; 3]> = Vec::with_capacity(6);
        for r in &self.rows {
            gens.push(r.map(|x| x * (l / self.den)));
        }
        for r in &other.rows {
            gens.push(r.map(|x| x * (l / other.den)));
        }
        RationalLattice::new(&gens, l).expect("sum of full-rank lattices is full rank")
    }

    pub fn dual(&self) -> RationalLattice {
        let det = linalg::diag_product(&self.rows);
        let cof = linalg::cofactor3(&self.rows);
        let scaled = cof.map(|r| r.map(|x| x * self.den));
        RationalLattice::new(&scaled, det).expect("dual of a full-rank lattice is full rank")
    }

    pub fn intersect(&self, other: &RationalLattice) -> RationalLattice {
        self.dual().sum(&other.dual()).dual()
    }
}
