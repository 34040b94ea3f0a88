//! Small integer helpers shared across the crate.

use crate::error::{GroupError, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Decompose an odd prime power `q = r^k` with `r` an odd prime and `k >= 1`.
pub fn odd_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 3 || q % 2 == 0 {
        return Err(GroupError::BadPrimePower(q));
    }
    let mut r = 3u64;
    while r * r <= q {
        if q % r == 0 {
            let mut rest = q;
            let mut k = 0u32;
            while rest % r == 0 {
                rest /= r;
                k += 1;
            }
            if rest == 1 {
                return Ok((r, k));
            }
            return Err(GroupError::BadPrimePower(q));
        }
        r += 2;
    }
    Ok((q, 1))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1u64;
    while n % p == 0 {
        part *= p;
        n /= p;
    }
    part
}

/// The odd part of `n`: what remains after dividing out all twos.
pub fn odd_part(mut n: u64) -> u64 {
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_on_small_values() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn odd_prime_powers_decompose() {
        assert_eq!(odd_prime_power(3).unwrap(), (3, 1));
        assert_eq!(odd_prime_power(27).unwrap(), (3, 3));
        assert_eq!(odd_prime_power(121).unwrap(), (11, 2));
        assert!(odd_prime_power(15).is_err());
        assert!(odd_prime_power(8).is_err());
        assert!(odd_prime_power(1).is_err());
    }

    #[test]
    fn parts_factor_out_correctly() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 3), 3);
        assert_eq!(p_part(35, 2), 1);
        assert_eq!(odd_part(96), 3);
        assert_eq!(odd_part(7), 7);
    }
}
