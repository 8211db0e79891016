//! Scalar integer helpers: factorization, primality, odd parts.

use num_integer::Integer;

/// Trial-division factorization into `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: i128) -> Vec<(i128, u32)> {
    assert!(n >= 1, "factorize expects a positive integer");
    let mut out = Vec::new();
    let mut p = 2i128;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2i128;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Largest odd divisor of `n`.
pub fn odd_part(mut n: i128) -> i128 {
    assert!(n != 0);
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

/// 2-adic valuation of `n`.
pub fn two_valuation(mut n: i128) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    v
}

/// p-adic valuation of `n`.
pub fn valuation(mut n: i128, p: i128) -> u32 {
    assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn pow(base: i128, exp: u32) -> i128 {
    base.checked_pow(exp).expect("integer power overflow")
}

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub fn lcm(a: i128, b: i128) -> i128 {
    a.lcm(&b)
}

/// gcd of a slice, 0 for an all-zero slice.
pub fn gcd_all(xs: &[i128]) -> i128 {
    xs.iter().fold(0i128, |g, &x| g.gcd(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(45), vec![(3, 2), (5, 1)]);
        assert_eq!(factorize(2025), vec![(3, 4), (5, 2)]);
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part(12), 3);
        assert_eq!(odd_part(7), 7);
        assert_eq!(two_valuation(12), 2);
        assert_eq!(valuation(45, 3), 2);
    }

    #[test]
    fn primality() {
        let primes: Vec<i128> = (2..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
    }
}
