//! Random primes in dyadic intervals, avoiding the divisors of a given integer.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("no suitable prime found among {0} candidates")]
    NoPrimeFound(usize),
    #[error("interval lower bound must be at least 2")]
    BoundTooSmall,
    #[error("the integer to avoid must be nonzero")]
    ZeroAvoid,
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin test. Below `2^64` the first twelve prime bases make it
/// deterministic; above, 40 further bases are drawn from a generator seeded
/// by `n`, so the answer is reproducible.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for p in SMALL_PRIMES {
            if small == p {
                return true;
            }
            if small % p == 0 {
                return false;
            }
        }
    } else if SMALL_PRIMES.iter().any(|&p| (n % p).is_zero()) {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let twos = n_minus_one.trailing_zeros().unwrap();
    let odd = &n_minus_one >> twos;
    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&odd, n);
        if x == one || x == n_minus_one {
            return false;
        }
        for _ in 1..twos {
            x = (&x * &x) % n;
            if x == n_minus_one {
                return false;
            }
        }
        true
    };
    if SMALL_PRIMES.iter().any(|&a| witness(&BigUint::from(a))) {
        return false;
    }
    if n.bits() <= 64 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(n.iter_u64_digits().next().unwrap_or(0));
    let two = BigUint::from(2u32);
    (0..40).all(|_| !witness(&rng.gen_biguint_range(&two, &n_minus_one)))
}

/// Default number of candidates drawn before giving up: generous enough that
/// failure is negligible given the density of primes near `bound`.
pub fn default_candidate_budget(bound: &BigUint) -> usize {
    (8 * bound.bits() as usize).max(64)
}

/// A uniformly random prime `p` with `bound < p <= 2 * bound` and `p ∤ avoid`.
///
/// Candidates are uniform odd integers of the interval; at most `budget` of
/// them are tested. Pass `avoid = 1` for no constraint.
pub fn random_prime_avoiding<G: Rng + ?Sized>(
    bound: &BigUint,
    budget: usize,
    avoid: &BigUint,
    rng: &mut G,
) -> Result<BigUint, PrimeError> {
    if *bound < BigUint::from(2u32) {
        return Err(PrimeError::BoundTooSmall);
    }
    if avoid.is_zero() {
        return Err(PrimeError::ZeroAvoid);
    }
    let high = bound << 1;
    let first_odd = (bound + 1u32) | BigUint::one();
    let count = ((&high - &first_odd) >> 1) + 1u32;
    for _ in 0..budget {
        let candidate = &first_odd + (rng.gen_biguint_below(&count) << 1);
        if is_probable_prime(&candidate) && !avoid.is_multiple_of(&candidate) {
            return Ok(candidate);
        }
    }
    Err(PrimeError::NoPrimeFound(budget))
}

/// A random prime in `[low, high)`; the interval must contain primes.
pub fn random_prime_in_range<G: Rng + ?Sized>(low: &BigUint, high: &BigUint, rng: &mut G) -> BigUint {
    loop {
        let candidate = rng.gen_biguint_range(low, high) | BigUint::one();
        if candidate < *high && is_probable_prime(&candidate) {
            return candidate;
        }
    }
}

/// Closed interval `[12 h + 1, 24 h]` of admissible primes for a prime budget `h`.
pub fn prime_interval(height_budget: &BigUint) -> (BigUint, BigUint) {
    let bound = height_budget * 12u32;
    (&bound + 1u32, bound << 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_of_small_numbers() {
        let primes: Vec<u64> = (0..100u64)
            .filter(|&n| is_probable_prime(&BigUint::from(n)))
            .collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
        // Carmichael numbers and a strong pseudoprime to base 2
        for n in [561u64, 41041, 2047, 3215031751] {
            assert!(!is_probable_prime(&BigUint::from(n)));
        }
        assert!(is_probable_prime(&BigUint::from((1u128 << 89) - 1)));
        assert!(!is_probable_prime(&(BigUint::from((1u128 << 89) - 1) * 3u32)));
    }
}
