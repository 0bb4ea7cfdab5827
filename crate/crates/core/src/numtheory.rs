//! Small number-theoretic helpers used across the crate.

use crate::error::AnalysisError;

/// `base^exp mod m` by binary exponentiation. `m` must be nonzero.
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m != 0);
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p` (Fermat). `a` must not be divisible
/// by `p`.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a, p - 2, p)
}

/// Trial-division primality test, adequate for the small moduli in use.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The least positive quadratic non-residue modulo an odd prime `p`.
pub fn smallest_nonresidue(p: u64) -> Result<u64, AnalysisError> {
    if p == 2 {
        return Err(AnalysisError::EvenPrime);
    }
    debug_assert!(is_prime(p));
    for a in 2..p {
        if mod_pow(a, (p - 1) / 2, p) == p - 1 {
            return Ok(a);
        }
    }
    unreachable!("every odd prime has a non-residue below p")
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_matches_naive() {
        for base in 0..12u64 {
            for exp in 0..10u64 {
                let m = 17;
                let naive = (0..exp).fold(1u64, |acc, _| acc * base % m);
                assert_eq!(mod_pow(base, exp, m), naive);
            }
        }
    }

    #[test]
    fn mod_inv_is_inverse() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!(a * mod_inv(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn nonresidues_for_small_primes() {
        assert_eq!(smallest_nonresidue(3).unwrap(), 2);
        assert_eq!(smallest_nonresidue(5).unwrap(), 2);
        assert_eq!(smallest_nonresidue(7).unwrap(), 3);
        assert_eq!(smallest_nonresidue(11).unwrap(), 2);
        assert_eq!(smallest_nonresidue(13).unwrap(), 2);
        assert_eq!(smallest_nonresidue(17).unwrap(), 3);
        assert_eq!(smallest_nonresidue(19).unwrap(), 2);
        assert!(matches!(
            smallest_nonresidue(2),
            Err(AnalysisError::EvenPrime)
        ));
    }

    #[test]
    fn nonresidue_really_is_one() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let nr = smallest_nonresidue(p).unwrap();
            // No square equals nr, and everything below nr is a square.
            assert!((1..p).all(|x| x * x % p != nr));
            for below in 2..nr {
                assert!((1..p).any(|x| x * x % p == below));
            }
        }
    }

    #[test]
    fn primality_check() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(19));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(!is_prime(91));
    }

    #[test]
    fn gcd_lcm_basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(5, 7), 35);
    }
}
