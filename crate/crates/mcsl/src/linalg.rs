//! Exact integer matrix kernels shared by the lattice and quaternion layers:
//! row-style Hermite normal form, Smith normal form, and cofactor matrices.
//!
//! Conventions, fixed once for the whole crate: basis vectors are matrix
//! *rows*; the canonical Hermite normal form is upper triangular with
//! positive diagonal and every above-diagonal entry reduced into
//! `[0, diagonal of its column)`.

use crate::arith;

/// Hermite normal form of the row span of `input`. Returns one row per
/// pivot (the rank); zero rows are dropped.
#[allow(clippy::needless_range_loop)] // row pairs of one vec resist iterator splitting
pub(crate) fn hnf_rows<const W: usize>(input: &[[i128; W]]) -> Vec<[i128; W]> {
    let mut rows: Vec<[i128; W]> = input
        .iter()
        .copied()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut pivot = 0usize;
    for col in 0..W {
        if pivot >= rows.len() {
            break;
        }
        // Euclidean elimination below the pivot slot in this column.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot..rows.len() {
                if rows[i][col] != 0 && best.is_none_or(|b| rows[i][col].abs() < rows[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot, b);
            let mut cleared = true;
            for i in pivot + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(rows[pivot][col]);
                    for k in col..W {
                        rows[i][k] -= q * rows[pivot][k];
                    }
                    if rows[i][col] != 0 {
                        cleared = false;
                    }
                }
            }
            if cleared {
                break;
            }
        }
        if rows[pivot][col] == 0 {
            continue; // no pivot in this column
        }
        if rows[pivot][col] < 0 {
            for k in col..W {
                rows[pivot][k] = -rows[pivot][k];
            }
        }
        let d = rows[pivot][col];
        for j in 0..pivot {
            let q = rows[j][col].div_euclid(d);
            if q != 0 {
                for k in col..W {
                    rows[j][k] -= q * rows[pivot][k];
                }
            }
        }
        pivot += 1;
    }
    rows.truncate(pivot);
    rows
}

/// Determinant of a square upper-triangular basis.
pub(crate) fn diag_product<const W: usize>(rows: &[[i128; W]]) -> i128 {
    debug_assert_eq!(rows.len(), W);
    (0..W).map(|i| rows[i][i]).product()
}

/// Exact integer coordinates of `v` over an upper-triangular full-rank
/// basis, or `None` if `v` is not in the row span.
pub(crate) fn solve_upper<const W: usize>(rows: &[[i128; W]], v: &[i128; W]) -> Option<[i128; W]> {
    debug_assert_eq!(rows.len(), W);
    let mut rem = *v;
    let mut coeffs = [0i128; W];
    for i in 0..W {
        let d = rows[i][i];
        if rem[i] % d != 0 {
            return None;
        }
        let c = rem[i] / d;
        coeffs[i] = c;
        for k in i..W {
            rem[k] -= c * rows[i][k];
        }
    }
    (rem == [0; W]).then_some(coeffs)
}

pub(crate) fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cofactor matrix `C` of a 3x3 matrix: `M^{-T} = C / det(M)`.
pub(crate) fn cofactor3(m: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let minor = |r: usize, c: usize| -> i128 {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        m[rs[0]][cs[0]] * m[rs[1]][cs[1]] - m[rs[0]][cs[1]] * m[rs[1]][cs[0]]
    };
    let mut c = [[0i128; 3]; 3];
    for (r, row) in c.iter_mut().enumerate() {
        for (cidx, entry) in row.iter_mut().enumerate() {
            let sign = if (r + cidx) % 2 == 0 { 1 } else { -1 };
            *entry = sign * minor(r, cidx);
        }
    }
    c
}

fn minor3_of4(m: &[[i128; 4]; 4], skip_r: usize, skip_c: usize) -> i128 {
    let rs: Vec<usize> = (0..4).filter(|&i| i != skip_r).collect();
    let cs: Vec<usize> = (0..4).filter(|&j| j != skip_c).collect();
    let sub = [
        [m[rs[0]][cs[0]], m[rs[0]][cs[1]], m[rs[0]][cs[2]]],
        [m[rs[1]][cs[0]], m[rs[1]][cs[1]], m[rs[1]][cs[2]]],
        [m[rs[2]][cs[0]], m[rs[2]][cs[1]], m[rs[2]][cs[2]]],
    ];
    det3(&sub)
}

/// Cofactor matrix of a 4x4 matrix: `M^{-T} = C / det(M)`.
pub(crate) fn cofactor4(m: &[[i128; 4]; 4]) -> [[i128; 4]; 4] {
    let mut c = [[0i128; 4]; 4];
    for (r, row) in c.iter_mut().enumerate() {
        for (cidx, entry) in row.iter_mut().enumerate() {
            let sign = if (r + cidx) % 2 == 0 { 1 } else { -1 };
            *entry = sign * minor3_of4(m, r, cidx);
        }
    }
    c
}

/// Invariant factors `d1 | d2 | d3` of a full-rank integer 3x3 matrix.
#[allow(clippy::needless_range_loop)] // row pairs of one matrix resist iterator splitting
pub(crate) fn smith3(mut a: [[i128; 3]; 3]) -> [i128; 3] {
    for t in 0..3 {
        loop {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..3 {
                for j in t..3 {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (pi, pj) = best.expect("smith3 requires a full-rank matrix");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..3 {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for k in 0..3 {
                        a[i][k] -= q * a[t][k];
                    }
                    dirty |= a[i][t] != 0;
                }
            }
            for j in t + 1..3 {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    dirty |= a[t][j] != 0;
                }
            }
            let cleared = (t + 1..3).all(|i| a[i][t] == 0) && (t + 1..3).all(|j| a[t][j] == 0);
            if cleared && !dirty {
                break;
            }
        }
    }
    let mut d = [a[0][0].abs(), a[1][1].abs(), a[2][2].abs()];
    // diag(a, b) is equivalent to diag(gcd, lcm); sweep until divisibility holds.
    loop {
        let mut changed = false;
        for i in 0..2 {
            for j in i + 1..3 {
                if d[j] % d[i] != 0 {
                    let g = arith::gcd(d[i], d[j]);
                    let l = d[i] / g * d[j];
                    d[i] = g;
                    d[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d.sort_unstable();
    d
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_bcc_generators() {
        let rows = hnf_rows(&[[2, 0, 0], [0, 2, 0], [1, 1, 1]]);
        assert_eq!(rows, vec![[1, 1, 1], [0, 2, 0], [0, 0, 2]]);
    }

    #[test]
    fn hnf_is_order_independent() {
        let a = hnf_rows(&[[2, 2, 0], [2, 0, -2], [0, 2, 2], [3, 1, 1]]);
        let b = hnf_rows(&[[3, 1, 1], [0, 2, 2], [2, 0, -2], [2, 2, 0]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![[1, 1, 3], [0, 2, 2], [0, 0, 6]]);
    }

    #[test]
    fn hnf_drops_dependent_rows() {
        let rows = hnf_rows(&[[1, 0, 0], [2, 0, 0], [0, 1, 0]]);
        assert_eq!(rows.len(), 2);
    }

    #[test]
    fn solve_roundtrip() {
        let basis = [[1, 1, 3], [0, 2, 2], [0, 0, 6]];
        let v = [1, 3, 11];
        let c = solve_upper(&basis, &v).unwrap();
        assert_eq!(c, [1, 1, 1]);
        assert_eq!(solve_upper(&basis, &[1, 0, 0]), None);
    }

    #[test]
    fn cofactor_inverts() {
        let m = [[1, 1, 3], [0, 2, 2], [0, 0, 6]];
        let c = cofactor3(&m);
        let d = det3(&m);
        // M * C^T = det * I
        for i in 0..3 {
            for j in 0..3 {
                let dot: i128 = (0..3).map(|k| m[i][k] * c[j][k]).sum();
                assert_eq!(dot, if i == j { d } else { 0 });
            }
        }
    }

    #[test]
    fn cofactor4_inverts() {
        let m = [[1, 1, 1, 1], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]];
        let c = cofactor4(&m);
        let d = diag_product(&m);
        assert_eq!(d, 8);
        for i in 0..4 {
            for j in 0..4 {
                let dot: i128 = (0..4).map(|k| m[i][k] * c[j][k]).sum();
                assert_eq!(dot, if i == j { d } else { 0 });
            }
        }
    }

    #[test]
    fn smith_of_scaled_identity() {
        assert_eq!(smith3([[3, 0, 0], [0, 3, 0], [0, 0, 3]]), [3, 3, 3]);
        assert_eq!(smith3([[1, 0, 0], [0, 2, 0], [0, 0, 4]]), [1, 2, 4]);
        assert_eq!(smith3([[2, 0, 0], [0, 3, 0], [0, 0, 5]]), [1, 1, 30]);
    }
}
