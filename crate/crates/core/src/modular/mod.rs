//! Exact integer and modular arithmetic.
//!
//! The coloring system of a diagram is an integer matrix; everything about
//! its solutions mod `r` is read off a Smith normal form computed with
//! overflow-checked `i128` arithmetic.

mod matrix;
mod snf;
mod solve;

pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SnfDecomposition};
pub use solve::{count_solutions_mod, enumerate_solutions_mod, SolutionStream, DEFAULT_CAP};

use crate::error::{Error, Result};

/// Greatest common divisor of two positive integers.
pub fn gcd(l: i64, m: i64) -> Result<u64> {
    if l < 1 || m < 1 {
        return Err(Error::domain(format!("gcd requires positive arguments, got ({l}, {m})")));
    }
    Ok(gcd_u64(l as u64, m as u64))
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Smallest prime factor of `n >= 2`, by trial division.
pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// `⟨l, m⟩`: 1 when `l` and `m` are coprime, otherwise the least prime
/// dividing both.
pub fn least_common_prime_divisor(l: i64, m: i64) -> Result<u64> {
    if l < 1 || m < 1 {
        return Err(Error::domain(format!(
            "least common prime divisor requires positive arguments, got ({l}, {m})"
        )));
    }
    let g = gcd_u64(l as u64, m as u64);
    Ok(if g == 1 { 1 } else { smallest_prime_factor(g) })
}

/// Reduce an integer into `[0, r)`.
pub fn reduce(x: i128, r: u64) -> u64 {
    x.rem_euclid(r as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(4, 6).unwrap(), 2);
        assert_eq!(gcd(5, 5).unwrap(), 5);
        assert_eq!(gcd(9, 8).unwrap(), 1);
    }

    #[test]
    fn gcd_rejects_non_positive() {
        assert!(matches!(gcd(0, 4), Err(Error::Domain(_))));
        assert!(matches!(gcd(3, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn lcpd_examples() {
        assert_eq!(least_common_prime_divisor(3, 5).unwrap(), 1);
        assert_eq!(least_common_prime_divisor(6, 4).unwrap(), 2);
        assert_eq!(least_common_prime_divisor(15, 10).unwrap(), 5);
        assert!(least_common_prime_divisor(0, 10).is_err());
    }

    #[test]
    fn lcpd_matches_trial_division_oracle() {
        for l in 1..60i64 {
            for m in 1..60i64 {
                let expected = (2..=l.min(m)).find(|p| l % p == 0 && m % p == 0).unwrap_or(1);
                assert_eq!(least_common_prime_divisor(l, m).unwrap(), expected as u64, "({l},{m})");
            }
        }
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(73));
        assert!(!is_prime(49));
    }

    #[test]
    fn reduce_is_euclidean() {
        assert_eq!(reduce(-1, 5), 4);
        assert_eq!(reduce(12, 5), 2);
    }

    proptest::proptest! {
        #[test]
        fn gcd_and_lcpd_are_symmetric(l in 1i64..500, m in 1i64..500) {
            proptest::prop_assert_eq!(gcd(l, m).unwrap(), gcd(m, l).unwrap());
            proptest::prop_assert_eq!(
                least_common_prime_divisor(l, m).unwrap(),
                least_common_prime_divisor(m, l).unwrap()
            );
        }
    }
}
