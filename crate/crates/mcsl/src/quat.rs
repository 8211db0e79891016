//! The ring `H` of integer (Hurwitz) quaternions in exact arithmetic.
//!
//! A Hurwitz quaternion has components that are either all integers or all
//! half-odd-integers. We store the *doubled* components `d = 2q` as plain
//! integers, so every ring operation stays integer-exact; the represented
//! quaternion is `(d0 + d1 i + d2 j + d3 k) / 2`.
//!
//! `H` is left/right Euclidean with respect to the norm, which gives the
//! one-sided gcd/lcm machinery (`gcld`, `lcrm`), exact prime-power
//! factorization for odd norms, and a canonical Hermite-normal-form key for
//! every left ideal `qH`. Left ideals are what coincidence site lattices of
//! the bcc lattice correspond to, so most of the crate is built on this
//! module.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use crate::arith;
use crate::linalg;
use crate::{Error, Result};

/// An integer (Hurwitz) quaternion, stored as doubled components.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quaternion {
    d: [i128; 4],
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { d: [0, 0, 0, 0] };
    pub const ONE: Quaternion = Quaternion { d: [2, 0, 0, 0] };
    pub const I: Quaternion = Quaternion { d: [0, 2, 0, 0] };
    pub const J: Quaternion = Quaternion { d: [0, 0, 2, 0] };
    pub const K: Quaternion = Quaternion { d: [0, 0, 0, 2] };
    /// `(1 + i + j + k) / 2`, the half-integer unit; `{1, i, j, ω}` is a
    /// module basis of `H`.
    pub const OMEGA: Quaternion = Quaternion { d: [1, 1, 1, 1] };

    /// Builds a quaternion from doubled components. All four must have the
    /// same parity (all even = integer components, all odd = half-integers).
    pub fn from_doubled(d: [i128; 4]) -> Result<Quaternion> {
        let parity = d[0].rem_euclid(2);
        if d.iter().any(|x| x.rem_euclid(2) != parity) {
            return Err(Error::MixedParity);
        }
        Ok(Quaternion { d })
    }

    /// The quaternion `a + b i + c j + d k` with integer components.
    pub fn lipschitz(a: i128, b: i128, c: i128, d: i128) -> Quaternion {
        Quaternion {
            d: [2 * a, 2 * b, 2 * c, 2 * d],
        }
    }

    pub fn scalar(n: i128) -> Quaternion {
        Quaternion {
            d: [2 * n, 0, 0, 0],
        }
    }

    pub fn doubled(&self) -> [i128; 4] {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d == [0; 4]
    }

    /// `N(q) = q q̄`, a nonnegative integer; zero only for the zero quaternion.
    pub fn norm(&self) -> i128 {
        let s: i128 = self.d.iter().map(|x| x * x).sum();
        debug_assert_eq!(s % 4, 0);
        s / 4
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion {
            d: [self.d[0], -self.d[1], -self.d[2], -self.d[3]],
        }
    }

    /// All components integral (as opposed to half-odd-integral).
    pub fn is_lipschitz(&self) -> bool {
        self.d.iter().all(|x| x % 2 == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Largest natural number `m` with `q / m` still in `H`.
    pub fn content(&self) -> i128 {
        assert!(!self.is_zero(), "content of zero is undefined");
        let g = arith::gcd_all(&self.d);
        let all_odd = self.d.iter().all(|x| (x / g) % 2 != 0);
        if all_odd {
            g
        } else {
            // d/g has mixed parity, so only g/2 keeps a valid element.
            debug_assert_eq!(g % 2, 0);
            g / 2
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content() == 1
    }

    pub fn primitive_part(&self) -> Quaternion {
        let c = self.content();
        Quaternion {
            d: self.d.map(|x| x / c),
        }
    }

    pub fn scale(&self, k: i128) -> Quaternion {
        Quaternion {
            d: self.d.map(|x| x * k),
        }
    }

    /// Exact division by a natural number; `None` if any component drops out
    /// of `H`.
    pub fn div_exact(&self, k: i128) -> Option<Quaternion> {
        assert!(k > 0);
        if self.d.iter().any(|x| x % k != 0) {
            return None;
        }
        Quaternion::from_doubled(self.d.map(|x| x / k)).ok()
    }

    pub fn mul(&self, rhs: &Quaternion) -> Quaternion {
        let a = &self.d;
        let b = &rhs.d;
        // Hamilton product of doubled components comes out doubled twice.
        let p = [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ];
        debug_assert!(p.iter().all(|x| x % 2 == 0));
        Quaternion {
            d: p.map(|x| x / 2),
        }
    }

    /// The 24 units of `H`: `±1, ±i, ±j, ±k` and `(±1 ±i ±j ±k)/2`.
    pub fn units() -> &'static [Quaternion; 24] {
        static UNITS: LazyLock<[Quaternion; 24]> = LazyLock::new(|| {
            let mut us = Vec::with_capacity(24);
            for axis in 0..4 {
                for sign in [2i128, -2] {
                    let mut d = [0i128; 4];
                    d[axis] = sign;
                    us.push(Quaternion { d });
                }
            }
            for s0 in [1i128, -1] {
                for s1 in [1i128, -1] {
                    for s2 in [1i128, -1] {
                        for s3 in [1i128, -1] {
                            us.push(Quaternion {
                                d: [s0, s1, s2, s3],
                            });
                        }
                    }
                }
            }
            us.try_into().unwrap()
        });
        &UNITS
    }

    /// Canonical representative of the right-associate class `{q u}`:
    /// the lexicographically smallest doubled 4-tuple whose first nonzero
    /// component is positive. Two quaternions generate the same left ideal
    /// exactly when they share this representative.
    pub fn canonical_associate(&self) -> Quaternion {
        assert!(!self.is_zero());
        Quaternion::units()
            .iter()
            .map(|u| self.mul(u))
            .filter(|c| c.d.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
            .min()
            .unwrap()
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion::mul(&self, &rhs)
    }
}

impl std::ops::Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            d: std::array::from_fn(|k| self.d[k] + rhs.d[k]),
        }
    }
}

impl std::ops::Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            d: std::array::from_fn(|k| self.d[k] - rhs.d[k]),
        }
    }
}

impl std::ops::Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion {
            d: self.d.map(|x| -x),
        }
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_lipschitz() {
            let h = self.d.map(|x| x / 2);
            write!(f, "({} {} {} {})", h[0], h[1], h[2], h[3])
        } else {
            write!(
                f,
                "({} {} {} {})/2",
                self.d[0], self.d[1], self.d[2], self.d[3]
            )
        }
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quaternion{}", self)
    }
}

impl FromStr for Quaternion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Quaternion> {
        parse_quaternion(s, false)
    }
}

/// Parses `"d0,d1,d2,d3"` (doubled components) or `"(a b c d)"` with an
/// optional `"/2"` suffix. With `half` set, the comma form is read as
/// integer components instead of doubled ones.
pub fn parse_quaternion(s: &str, half: bool) -> Result<Quaternion> {
    let bad = || Error::ParseQuaternion(s.to_string());
    let t = s.trim();
    if let Some(body) = t.strip_prefix('(') {
        let (inner, halved) = match body.rsplit_once(')') {
            Some((inner, rest)) if rest.trim().is_empty() => (inner, false),
            Some((inner, rest)) if rest.trim() == "/2" => (inner, true),
            _ => return Err(bad()),
        };
        let parts: Vec<i128> = inner
            .split_whitespace()
            .map(|p| p.parse::<i128>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let parts: [i128; 4] = parts.try_into().map_err(|_| bad())?;
        let d = if halved { parts } else { parts.map(|x| 2 * x) };
        Quaternion::from_doubled(d).map_err(|_| bad())
    } else {
        let parts: Vec<i128> = t
            .split(',')
            .map(|p| p.trim().parse::<i128>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let parts: [i128; 4] = parts.try_into().map_err(|_| bad())?;
        let d = if half { parts.map(|x| 2 * x) } else { parts };
        Quaternion::from_doubled(d).map_err(|_| bad())
    }
}

fn nearest_tie_down(p: i128, q: i128) -> i128 {
    // nearest integer to p/q (q > 0), ties toward -infinity
    debug_assert!(q > 0);
    (2 * p + q - 1).div_euclid(2 * q)
}

/// Right division with remainder: `a = b s + r` with `N(r) < N(b)`.
///
/// The quotient candidate `b̄ a / N(b)` is rounded to the nearest point of
/// each of the two component classes of `H` (all-integer and
/// all-half-integer); the closer one wins, ties going to the
/// lexicographically smaller doubled tuple. The Hurwitz covering bound
/// guarantees `N(r) <= N(b)/2`.
pub fn right_divmod(a: &Quaternion, b: &Quaternion) -> Result<(Quaternion, Quaternion)> {
    if b.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    let x = b.conj().mul(a);
    let den = b.norm();
    // Doubled components of the exact quotient are x.d[i] / den.
    let even: [i128; 4] = x.d.map(|xi| 2 * nearest_tie_down(xi, 2 * den));
    let odd: [i128; 4] = x.d.map(|xi| 2 * nearest_tie_down(xi - den, 2 * den) + 1);
    let dist = |s: &[i128; 4]| -> i128 {
        s.iter()
            .zip(&x.d)
            .map(|(&si, &xi)| (xi - den * si) * (xi - den * si))
            .sum()
    };
    let (de, do_) = (dist(&even), dist(&odd));
    let s_d = if de < do_ || (de == do_ && even < odd) {
        even
    } else {
        odd
    };
    let s = Quaternion { d: s_d };
    let r = *a - b.mul(&s);
    debug_assert!(r.norm() < b.norm(), "Euclidean bound violated");
    Ok((s, r))
}

/// Greatest common left divisor, canonicalized over right associates.
///
/// `d = gcld(a, b)` left-divides `a` and `b`, and every common left divisor
/// of the pair left-divides `d`.
pub fn gcld(a: &Quaternion, b: &Quaternion) -> Result<Quaternion> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut x, mut y) = (*a, *b);
    while !y.is_zero() {
        let (_, r) = right_divmod(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(x.canonical_associate())
}

/// Does `r` exist in `H` with `a = b r`?
pub fn is_right_multiple(a: &Quaternion, b: &Quaternion) -> bool {
    if b.is_zero() {
        return a.is_zero();
    }
    let x = b.conj().mul(a);
    x.div_exact(b.norm()).is_some()
}

/// Rows of the rank-4 module `qH` over the module basis `{1, i, j, ω}`,
/// in doubled components.
fn ideal_rows(q: &Quaternion) -> [[i128; 4]; 4] {
    [
        q.d,
        q.mul(&Quaternion::I).d,
        q.mul(&Quaternion::J).d,
        q.mul(&Quaternion::OMEGA).d,
    ]
}

/// Canonical Hermite normal form of the left ideal `qH`, viewed as a rank-4
/// sublattice of doubled 4-space. Equal matrices characterize equal ideals,
/// and the determinant is `8 N(q)^2` (the doubled copy of `H` itself has
/// determinant 8).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IdealHnf(pub [[i128; 4]; 4]);

pub fn ideal_hnf(q: &Quaternion) -> IdealHnf {
    assert!(!q.is_zero());
    let rows = linalg::hnf_rows(&ideal_rows(q));
    debug_assert_eq!(rows.len(), 4);
    let m: [[i128; 4]; 4] = rows.try_into().unwrap();
    debug_assert_eq!(linalg::diag_product(&m), 8 * q.norm() * q.norm());
    IdealHnf(m)
}

/// Intersection `aH ∩ bH` as a canonical 4x4 basis, computed by dual-sum
/// duality on the doubled coordinate lattice.
fn ideal_intersection(a: &Quaternion, b: &Quaternion) -> [[i128; 4]; 4] {
    // content-reduced dual basis (rows, den); the true denominator of the
    // dual of an ideal lattice divides twice the norm
    fn dual_basis(m: &[[i128; 4]; 4]) -> ([[i128; 4]; 4], i128) {
        let det = linalg::diag_product(m);
        let cof = linalg::cofactor4(m);
        let mut g = det;
        for r in &cof {
            for &x in r {
                g = arith::gcd(g, x);
            }
        }
        (cof.map(|r| r.map(|x| x / g)), det / g)
    }
    let (ca, da) = dual_basis(&ideal_hnf(a).0);
    let (cb, db) = dual_basis(&ideal_hnf(b).0);
    // both duals contain Z^4 (the ideals are integer lattices), so the sum
    // scaled by the common denominator l contains l Z^4: entries may be
    // reduced mod l and the modulus rows keep the elimination bounded
    let l = arith::lcm(da, db);
    let mut stacked: Vec<[i128; 4]> = Vec::with_capacity(12);
    for r in &ca {
        stacked.push(r.map(|x| (x * (l / da)).rem_euclid(l)));
    }
    for r in &cb {
        stacked.push(r.map(|x| (x * (l / db)).rem_euclid(l)));
    }
    for i in 0..4 {
        let mut e = [0i128; 4];
        e[i] = l;
        stacked.push(e);
    }
    let sum = linalg::hnf_rows(&stacked);
    debug_assert_eq!(sum.len(), 4);
    let sm: [[i128; 4]; 4] = sum.try_into().unwrap();
    let ds = linalg::diag_product(&sm);
    let cs = linalg::cofactor4(&sm);
    // dual of (sm / l) has basis l * cs / ds; the result must be integral
    let mut rows: Vec<[i128; 4]> = Vec::with_capacity(4);
    for r in &cs {
        rows.push(r.map(|x| {
            let num = x * l;
            debug_assert_eq!(num % ds, 0);
            num / ds
        }));
    }
    let out = linalg::hnf_rows(&rows);
    let m: [[i128; 4]; 4] = out.try_into().expect("intersection has rank 4");
    m
}

/// Least common right multiple: the canonical generator `m` of
/// `aH ∩ bH = mH`, with `N(m) = N(a) N(b) / N(gcld(a, b))`.
///
/// The generator is found as a shortest nonzero vector of the intersection
/// module under the norm form; `N(m x) >= N(m)` makes every shortest vector
/// an associate of the generator.
pub fn lcrm(a: &Quaternion, b: &Quaternion) -> Result<Quaternion> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    let g = gcld(a, b)?;
    let target = a.norm() * b.norm() / g.norm();
    let basis = ideal_intersection(a, b);
    let bound = 4 * target; // doubled squared length of a norm-target vector
    let mut best: Option<[i128; 4]> = None;
    // back-substitution enumeration over the upper-triangular basis
    let limit0 = bound.isqrt() / basis[0][0];
    for c0 in -limit0..=limit0 {
        let v0 = c0 * basis[0][0];
        let rem0 = bound - v0 * v0;
        if rem0 < 0 {
            continue;
        }
        let s1 = rem0.isqrt();
        let base1 = c0 * basis[0][1];
        let lo1 = (-s1 - base1).div_euclid(basis[1][1]);
        let hi1 = (s1 - base1).div_euclid(basis[1][1]);
        for c1 in lo1..=hi1 {
            let v1 = base1 + c1 * basis[1][1];
            let rem1 = rem0 - v1 * v1;
            if rem1 < 0 {
                continue;
            }
            let s2 = rem1.isqrt();
            let base2 = c0 * basis[0][2] + c1 * basis[1][2];
            let lo2 = (-s2 - base2).div_euclid(basis[2][2]);
            let hi2 = (s2 - base2).div_euclid(basis[2][2]);
            for c2 in lo2..=hi2 {
                let v2 = base2 + c2 * basis[2][2];
                let rem2 = rem1 - v2 * v2;
                if rem2 < 0 {
                    continue;
                }
                let s3 = rem2.isqrt();
                let base3 = c0 * basis[0][3] + c1 * basis[1][3] + c2 * basis[2][3];
                let lo3 = (-s3 - base3).div_euclid(basis[3][3]);
                let hi3 = (s3 - base3).div_euclid(basis[3][3]);
                for c3 in lo3..=hi3 {
                    let v3 = base3 + c3 * basis[3][3];
                    let len = v0 * v0 + v1 * v1 + v2 * v2 + v3 * v3;
                    if len == 0 {
                        continue;
                    }
                    debug_assert!(len >= bound, "vector below the lcrm norm bound");
                    if len == bound && best.is_none_or(|b| [v0, v1, v2, v3] < b) {
                        best = Some([v0, v1, v2, v3]);
                    }
                }
            }
        }
    }
    let v = best.expect("intersection module contains a vector of the target norm");
    let m = Quaternion::from_doubled(v).expect("module vectors satisfy the parity invariant");
    debug_assert_eq!(m.norm(), target);
    Ok(m.canonical_associate())
}

/// Left factor of `q` of norm `p^a`, where `a` is the multiplicity of the
/// odd prime `p` in `N(q)`; computed as `gcld(q, p^a)`.
pub fn left_prime_part(q: &Quaternion, p: i128) -> Result<Quaternion> {
    if !q.is_primitive() {
        return Err(Error::NotPrimitive(if q.is_zero() {
            0
        } else {
            q.content()
        }));
    }
    if p < 3 || p % 2 == 0 || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let n = q.norm();
    if n % p != 0 {
        return Err(Error::PrimeDoesNotDivide { p, norm: n });
    }
    let a = arith::valuation(n, p);
    let part = gcld(q, &Quaternion::scalar(arith::pow(p, a)))?;
    debug_assert_eq!(part.norm(), arith::pow(p, a));
    Ok(part)
}

/// Ordered left prime-power factorization of a primitive odd-norm
/// quaternion: `q = a_1 a_2 ... a_l` exactly, with `N(a_i) = p_i^{α_i}` in
/// ascending prime order. Units factor into the empty product.
pub fn left_prime_decomposition(q: &Quaternion) -> Result<Vec<Quaternion>> {
    if !q.is_primitive() {
        return Err(Error::NotPrimitive(if q.is_zero() {
            0
        } else {
            q.content()
        }));
    }
    let n = q.norm();
    if n % 2 == 0 {
        return Err(Error::EvenNorm(n));
    }
    let mut factors = Vec::new();
    let mut rest = *q;
    for (p, a) in arith::factorize(n) {
        let pa = arith::pow(p, a);
        let part = gcld(&rest, &Quaternion::scalar(pa))?;
        debug_assert_eq!(part.norm(), pa);
        rest = part
            .conj()
            .mul(&rest)
            .div_exact(pa)
            .expect("left factor divides exactly");
        factors.push(part);
    }
    debug_assert!(rest.is_unit());
    // absorb the residual unit so the product reproduces q exactly
    if let Some(last) = factors.last_mut() {
        *last = last.mul(&rest);
    }
    Ok(factors)
}

/// Strongly equivalent odd-norm representative: returns a primitive `q'`
/// with `N(q')` odd generating the same CSL as `q` (the rotations differ by
/// a cubic symmetry). Even norms are stripped by right division by the
/// norm-2 prime `1 + i`.
pub fn make_odd(q: &Quaternion) -> Quaternion {
    assert!(!q.is_zero());
    let pi_bar = Quaternion::lipschitz(1, -1, 0, 0);
    let mut r = q.primitive_part();
    while r.norm() % 2 == 0 {
        r = r
            .mul(&pi_bar)
            .div_exact(2)
            .expect("even-norm quaternions are right multiples of 1 + i");
        r = r.primitive_part();
    }
    r
}

/// All Hurwitz quaternions of norm `n`, in lexicographic doubled order.
pub fn hurwitz_with_norm(n: i128) -> Vec<Quaternion> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let bound = (4 * n).isqrt();
    // all-even doubled tuples (integer components)
    let ib = n.isqrt();
    for a in -ib..=ib {
        for b in -ib..=ib {
            let ab = a * a + b * b;
            if ab > n {
                continue;
            }
            for c in -ib..=ib {
                let abc = ab + c * c;
                if abc > n {
                    continue;
                }
                let d2 = n - abc;
                let d = d2.isqrt();
                if d * d == d2 {
                    if d == 0 {
                        out.push(Quaternion::lipschitz(a, b, c, 0));
                    } else {
                        out.push(Quaternion::lipschitz(a, b, c, d));
                        out.push(Quaternion::lipschitz(a, b, c, -d));
                    }
                }
            }
        }
    }
    // all-odd doubled tuples (half-integer components); need sum of squares 4n
    let mut x0 = -bound;
    if x0 % 2 == 0 {
        x0 += 1;
    }
    let mut a = x0;
    while a <= bound {
        let mut b = x0;
        while b <= bound {
            let ab = a * a + b * b;
            if ab <= 4 * n {
                let mut c = x0;
                while c <= bound {
                    let abc = ab + c * c;
                    if abc <= 4 * n {
                        let d2 = 4 * n - abc;
                        let d = d2.isqrt();
                        if d * d == d2 && d % 2 != 0 {
                            out.push(Quaternion { d: [a, b, c, d] });
                            out.push(Quaternion { d: [a, b, c, -d] });
                        }
                    }
                    c += 2;
                }
            }
            b += 2;
        }
        a += 2;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All primitive Hurwitz quaternions of norm `n`.
pub fn primitive_with_norm(n: i128) -> Vec<Quaternion> {
    hurwitz_with_norm(n)
        .into_iter()
        .filter(|q| q.is_primitive())
        .collect()
}

/// One canonical primitive generator per left ideal of reduced norm `n`
/// (`n` odd), ordered by the lexicographic order of their ideal HNF keys.
/// The length realizes the multiplicative function with value
/// `(p + 1) p^{r-1}` at odd prime powers.
pub fn enumerate_ideals(n: i128) -> Result<Vec<Quaternion>> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::EvenInput(n));
    }
    // Every Hurwitz quaternion has a Lipschitz right associate generating
    // the same left ideal, so scanning integer 4-tuples covers all ideals.
    let mut found: std::collections::BTreeMap<IdealHnf, Quaternion> = Default::default();
    let ib = n.isqrt();
    for a in -ib..=ib {
        for b in -ib..=ib {
            let ab = a * a + b * b;
            if ab > n {
                continue;
            }
            for c in -ib..=ib {
                let abc = ab + c * c;
                if abc > n {
                    continue;
                }
                let d2 = n - abc;
                let dd = d2.isqrt();
                if dd * dd != d2 {
                    continue;
                }
                let signs: &[i128] = if dd == 0 { &[0] } else { &[dd, -dd] };
                for &d in signs {
                    let q = Quaternion::lipschitz(a, b, c, d);
                    if q.is_primitive() {
                        found
                            .entry(ideal_hnf(&q))
                            .or_insert_with(|| q.canonical_associate());
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}
