//! Exact rational rotations of 3-space parameterized by integer quaternions.
//!
//! Every coincidence rotation of the bcc lattice has rational entries and
//! arises from an integer quaternion; conversely every nonzero quaternion
//! `q = (κ, λ, μ, ν)` determines the proper rotation
//!
//! ```text
//!            1   ⎛ κ²+λ²−μ²−ν²   −2κν+2λμ      2κμ+2λν    ⎞
//! R(q) =  ────── ⎜ 2κν+2λμ       κ²−λ²+μ²−ν²  −2κλ+2μν    ⎟
//!          |q|²  ⎝ −2κμ+2λν      2κλ+2μν       κ²−λ²−μ²+ν² ⎠
//! ```
//!
//! which is scale-invariant in `q`. Matrices are stored as an integer
//! numerator matrix plus one positive denominator, always in lowest terms,
//! so equality is plain structural equality.

use std::fmt;
use std::sync::LazyLock;

use crate::arith;
use crate::linalg;
use crate::quat::Quaternion;
use crate::{Error, Result};

/// A 3x3 rotation with exact rational entries `num / den`, reduced, `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rotation {
    num: [[i128; 3]; 3],
    den: i128,
}

impl Rotation {
    pub fn identity() -> Rotation {
        Rotation {
            num: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            den: 1,
        }
    }

    fn reduced(num: [[i128; 3]; 3], den: i128) -> Rotation {
        assert!(den != 0);
        let (num, den) = if den < 0 {
            (num.map(|r| r.map(|x| -x)), -den)
        } else {
            (num, den)
        };
        let mut g = den;
        for row in &num {
            for &x in row {
                g = arith::gcd(g, x);
            }
        }
        Rotation {
            num: num.map(|r| r.map(|x| x / g)),
            den: den / g,
        }
    }

    /// Validates a raw numerator/denominator pair as an exact proper
    /// rotation: `MᵀM = den²·I` and `det M = den³`.
    pub fn from_raw(num: [[i128; 3]; 3], den: i128) -> Result<Rotation> {
        if den == 0 {
            return Err(Error::NotARotation);
        }
        let r = Rotation::reduced(num, den);
        let d = r.den;
        for i in 0..3 {
            for j in 0..3 {
                let dot: i128 = (0..3).map(|k| r.num[k][i] * r.num[k][j]).sum();
                if dot != if i == j { d * d } else { 0 } {
                    return Err(Error::NotARotation);
                }
            }
        }
        if linalg::det3(&r.num) != d * d * d {
            return Err(Error::NotARotation);
        }
        Ok(r)
    }

    pub fn numerators(&self) -> &[[i128; 3]; 3] {
        &self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn mul(&self, rhs: &Rotation) -> Rotation {
        let num = std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| self.num[i][k] * rhs.num[k][j]).sum())
        });
        Rotation::reduced(num, self.den * rhs.den)
    }

    pub fn transpose(&self) -> Rotation {
        let num = std::array::from_fn(|i| std::array::from_fn(|j| self.num[j][i]));
        Rotation { num, den: self.den }
    }

    /// For a rotation the inverse is the transpose.
    pub fn inverse(&self) -> Rotation {
        self.transpose()
    }

    /// Image of a (row) vector under the rotation, as `(integer vector, den)`.
    pub fn apply(&self, v: [i128; 3]) -> ([i128; 3], i128) {
        let out = std::array::from_fn(|i| (0..3).map(|k| self.num[i][k] * v[k]).sum());
        (out, self.den)
    }

    /// Row-major entries as reduced rational strings, `"a/b"` or `"a"`.
    pub fn entry_strings(&self) -> [[String; 3]; 3] {
        self.num.map(|row| {
            row.map(|x| {
                let g = arith::gcd(x, self.den);
                let (n, d) = (x / g, self.den / g);
                if d == 1 {
                    format!("{n}")
                } else {
                    format!("{n}/{d}")
                }
            })
        })
    }
}

impl fmt::Debug for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rotation({:?} / {})", self.num, self.den)
    }
}

/// The rotation `R(q)` of a nonzero quaternion, exact and in lowest terms.
pub fn rotation_matrix(q: &Quaternion) -> Result<Rotation> {
    if q.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    let d = q.doubled();
    let (d0, d1, d2, d3) = (d[0], d[1], d[2], d[3]);
    let num = [
        [
            d0 * d0 + d1 * d1 - d2 * d2 - d3 * d3,
            2 * (d1 * d2 - d0 * d3),
            2 * (d0 * d2 + d1 * d3),
        ],
        [
            2 * (d0 * d3 + d1 * d2),
            d0 * d0 - d1 * d1 + d2 * d2 - d3 * d3,
            2 * (d2 * d3 - d0 * d1),
        ],
        [
            2 * (d1 * d3 - d0 * d2),
            2 * (d0 * d1 + d2 * d3),
            d0 * d0 - d1 * d1 - d2 * d2 + d3 * d3,
        ],
    ];
    let den: i128 = d.iter().map(|x| x * x).sum();
    Ok(Rotation::reduced(num, den))
}

/// Content of `q` in the rotation parameterization: the component gcd of
/// the smallest integral quaternion on the ray of `q`. This differs from
/// the Hurwitz content only at even norms (`(1,1,1,1) = 2ω` is primitive
/// here), matching the convention that integral quaternions with coprime
/// components parameterize the coincidence rotations.
fn rotation_content(q: &Quaternion) -> i128 {
    let d = q.doubled();
    let g = arith::gcd_all(&d);
    if d.iter().all(|x| x % 2 == 0) {
        g / 2
    } else {
        g
    }
}

/// Coincidence index of the rotation generated by a primitive quaternion:
/// the odd part of `N(q)`.
pub fn sigma(q: &Quaternion) -> Result<i128> {
    if q.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    let c = rotation_content(q);
    if c > 1 {
        return Err(Error::NotPrimitive(c));
    }
    Ok(arith::odd_part(q.norm()))
}

/// The primitive quaternion generating a rotation, unique up to sign; the
/// returned representative has a positive leading doubled component.
pub fn quaternion_from_rotation(m: &Rotation) -> Quaternion {
    let a = m.numerators();
    let den = m.denominator();
    let t = [
        den + a[0][0] + a[1][1] + a[2][2],
        den + a[0][0] - a[1][1] - a[2][2],
        den - a[0][0] + a[1][1] - a[2][2],
        den - a[0][0] - a[1][1] + a[2][2],
    ];
    let axis = (0..4).max_by_key(|&i| t[i]).unwrap();
    // each case lists (4 d_axis d_0, ..., 4 d_axis d_3) up to the common factor
    let v: [i128; 4] = match axis {
        0 => [
            t[0],
            a[2][1] - a[1][2],
            a[0][2] - a[2][0],
            a[1][0] - a[0][1],
        ],
        1 => [
            a[2][1] - a[1][2],
            t[1],
            a[0][1] + a[1][0],
            a[0][2] + a[2][0],
        ],
        2 => [
            a[0][2] - a[2][0],
            a[0][1] + a[1][0],
            t[2],
            a[1][2] + a[2][1],
        ],
        _ => [
            a[1][0] - a[0][1],
            a[0][2] + a[2][0],
            a[1][2] + a[2][1],
            t[3],
        ],
    };
    let g = arith::gcd_all(&v);
    let u = v.map(|x| x / g);
    // u is proportional to the doubled components; rescale to the primitive
    // Hurwitz element (mixed parity means the true doubled tuple is 2u)
    let parity = u[0].rem_euclid(2);
    let doubled = if u.iter().all(|x| x.rem_euclid(2) == parity) {
        u
    } else {
        u.map(|x| 2 * x)
    };
    let mut q = Quaternion::from_doubled(doubled).expect("reconstructed tuple is parity-valid");
    if q.doubled()
        .iter()
        .find(|&&x| x != 0)
        .is_some_and(|&x| x < 0)
    {
        q = -q;
    }
    debug_assert_eq!(rotation_matrix(&q).unwrap(), *m);
    q
}

/// The 24 proper rotations of the cube, realized as `R(q)` over the 24
/// units together with the norm-2 quaternions such as `1 + i`.
pub fn cubic_group() -> &'static [Rotation; 24] {
    static GROUP: LazyLock<[Rotation; 24]> = LazyLock::new(|| {
        let mut mats: Vec<Rotation> = Quaternion::units()
            .iter()
            .map(|u| rotation_matrix(u).unwrap())
            .collect();
        for q in crate::quat::hurwitz_with_norm(2) {
            mats.push(rotation_matrix(&q).unwrap());
        }
        mats.sort_unstable();
        mats.dedup();
        mats.try_into()
            .expect("the cubic rotation group has order 24")
    });
    &GROUP
}

pub fn in_cubic_group(m: &Rotation) -> bool {
    cubic_group().contains(m)
}

/// Do two quaternions generate the same CSL? True exactly when
/// `R(q1) = R(q2) Q` for a cubic rotation `Q`, which happens when the
/// primitive part of `q̄2 q1` has norm 1 or 2. Scale-invariant in both
/// arguments.
pub fn strongly_equivalent(q1: &Quaternion, q2: &Quaternion) -> bool {
    assert!(!q1.is_zero() && !q2.is_zero());
    let w = q2.conj().mul(q1).primitive_part();
    matches!(w.norm(), 1 | 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lip(a: i128, b: i128, c: i128, d: i128) -> Quaternion {
        Quaternion::lipschitz(a, b, c, d)
    }

    #[test]
    fn identity_from_one() {
        assert_eq!(
            rotation_matrix(&Quaternion::ONE).unwrap(),
            Rotation::identity()
        );
        assert_eq!(
            rotation_matrix(&Quaternion::scalar(7)).unwrap(),
            Rotation::identity()
        );
    }

    #[test]
    fn axis_swap_rotation() {
        let r = rotation_matrix(&lip(0, 1, 1, 0)).unwrap();
        assert_eq!(*r.numerators(), [[0, 1, 0], [1, 0, 0], [0, 0, -1]]);
        assert_eq!(r.denominator(), 1);
    }

    #[test]
    fn norm3_rotation() {
        let r = rotation_matrix(&lip(1, 1, 1, 0)).unwrap();
        assert_eq!(*r.numerators(), [[1, 2, 2], [2, 1, -2], [-2, 2, -1]]);
        assert_eq!(r.denominator(), 3);
    }

    #[test]
    fn zero_quaternion_rejected() {
        assert_eq!(
            rotation_matrix(&Quaternion::ZERO),
            Err(Error::ZeroQuaternion)
        );
    }

    #[test]
    fn rotation_is_homomorphism() {
        let qs = [
            lip(1, 1, 1, 0),
            lip(1, 2, 3, 1),
            lip(0, 1, 1, 0),
            Quaternion::OMEGA,
        ];
        for a in &qs {
            for b in &qs {
                let lhs = rotation_matrix(&a.mul(b)).unwrap();
                let rhs = rotation_matrix(a)
                    .unwrap()
                    .mul(&rotation_matrix(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(&lip(1, 1, 1, 0)).unwrap(), 3);
        assert_eq!(sigma(&lip(1, 1, 0, 0)).unwrap(), 1);
        assert_eq!(sigma(&lip(1, 3, 1, 1)).unwrap(), 3); // norm 12 = 4·3
        assert_eq!(sigma(&lip(3, 0, 0, 0)), Err(Error::NotPrimitive(3)));
    }

    #[test]
    fn denominator_equals_sigma_for_odd_norms() {
        for n in [3, 5, 9, 15, 25, 45] {
            for q in crate::quat::primitive_with_norm(n) {
                let r = rotation_matrix(&q).unwrap();
                assert_eq!(r.denominator(), sigma(&q).unwrap());
            }
        }
    }

    #[test]
    fn cubic_group_properties() {
        let group = cubic_group();
        assert_eq!(group.len(), 24);
        assert!(group.contains(&Rotation::identity()));
        for a in group.iter() {
            assert!(in_cubic_group(&a.inverse()));
            for b in group.iter() {
                assert!(in_cubic_group(&a.mul(b)));
            }
        }
    }

    #[test]
    fn from_rotation_round_trips() {
        assert_eq!(
            quaternion_from_rotation(&Rotation::identity()),
            Quaternion::ONE
        );
        let m = Rotation::from_raw([[0, 1, 0], [1, 0, 0], [0, 0, -1]], 1).unwrap();
        assert_eq!(quaternion_from_rotation(&m), lip(0, 1, 1, 0));
        let m = Rotation::from_raw([[1, 2, 2], [2, 1, -2], [-2, 2, -1]], 3).unwrap();
        assert_eq!(quaternion_from_rotation(&m), lip(1, 1, 1, 0));
    }

    #[test]
    fn from_rotation_round_trips_all_odd_norms_to_99() {
        for n in (1..=99i128).step_by(2) {
            for q in crate::quat::primitive_with_norm(n) {
                let m = rotation_matrix(&q).unwrap();
                let back = quaternion_from_rotation(&m);
                assert!(back == q || back == -q, "round trip changed {q} to {back}");
            }
        }
    }

    #[test]
    fn from_raw_rejects_non_rotations() {
        assert_eq!(
            Rotation::from_raw([[1, 0, 0], [0, 1, 0], [0, 0, 2]], 1),
            Err(Error::NotARotation)
        );
        assert_eq!(
            Rotation::from_raw([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 1),
            Err(Error::NotARotation) // determinant -1
        );
    }

    #[test]
    fn strong_equivalence() {
        let q = lip(1, 1, 1, 0);
        for u in Quaternion::units() {
            assert!(strongly_equivalent(&q, &q.mul(u)));
        }
        assert!(strongly_equivalent(&Quaternion::ONE, &lip(1, 1, 0, 0)));
        assert!(!strongly_equivalent(&q, &Quaternion::ONE));
        assert!(!strongly_equivalent(&q, &lip(1, 1, -1, 0)));
    }

    #[test]
    fn strong_equivalence_matches_matrix_route() {
        let pool: Vec<Quaternion> = [1, 2, 3, 5, 9]
            .iter()
            .flat_map(|&n| crate::quat::primitive_with_norm(n))
            .collect();
        for a in pool.iter().step_by(5) {
            for b in pool.iter().step_by(7) {
                let fast = strongly_equivalent(a, b);
                let ra = rotation_matrix(a).unwrap();
                let rb = rotation_matrix(b).unwrap();
                let slow = in_cubic_group(&rb.inverse().mul(&ra));
                assert_eq!(fast, slow, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn entry_strings_reduced() {
        let r = rotation_matrix(&lip(1, 1, 1, 0)).unwrap();
        let s = r.entry_strings();
        assert_eq!(s[0][0], "1/3");
        assert_eq!(s[0][1], "2/3");
        let id = Rotation::identity().entry_strings();
        assert_eq!(id[0][0], "1");
        assert_eq!(id[0][1], "0");
    }
}
