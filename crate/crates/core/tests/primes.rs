use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kronecker_core::primes::{
    is_probable_prime, prime_interval, random_prime_avoiding, random_prime_in_range, PrimeError,
};

fn b(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn small_intervals() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let seen: BTreeSet<BigUint> = (0..300)
        .map(|_| random_prime_avoiding(&b(10), 100, &b(11), &mut rng).unwrap())
        .collect();
    assert_eq!(seen, [13, 17, 19].into_iter().map(b).collect());
    for _ in 0..20 {
        assert_eq!(random_prime_avoiding(&b(2), 100, &b(1), &mut rng).unwrap(), b(3));
    }
}

#[test]
fn large_interval_without_constraint() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let p = random_prime_avoiding(&b(1_000_000), 1000, &b(1), &mut rng).unwrap();
        assert!(p > b(1_000_000) && p <= b(2_000_000));
        assert!(is_probable_prime(&p));
    }
}

#[test]
fn invalid_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert_eq!(random_prime_avoiding(&b(1), 10, &b(1), &mut rng), Err(PrimeError::BoundTooSmall));
    assert_eq!(random_prime_avoiding(&b(10), 10, &b(0), &mut rng), Err(PrimeError::ZeroAvoid));
    // every prime in (10, 20] divides the avoided product
    assert_eq!(
        random_prime_avoiding(&b(10), 50, &b(11 * 13 * 17 * 19), &mut rng),
        Err(PrimeError::NoPrimeFound(50))
    );
}

#[test]
fn primality_against_sieve() {
    let limit = 5000usize;
    let mut composite = vec![false; limit];
    for i in 2..limit {
        if !composite[i] {
            for j in (i * i..limit).step_by(i) {
                composite[j] = true;
            }
        }
    }
    for (i, &c) in composite.iter().enumerate().skip(2) {
        assert_eq!(is_probable_prime(&b(i as u64)), !c, "{i}");
    }
    // Carmichael numbers and a large known prime
    for n in [561u64, 41041, 825265, 3215031751] {
        assert!(!is_probable_prime(&b(n)));
    }
    assert!(is_probable_prime(&((BigUint::from(1u32) << 127) - 1u32)));
    assert!(!is_probable_prime(&((BigUint::from(1u32) << 128) + 1u32)));
}

#[test]
fn interval_and_range_sampling() {
    assert_eq!(prime_interval(&b(1000)), (b(12001), b(24000)));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let low = b(1 << 59);
    let high = b(1 << 62);
    for _ in 0..20 {
        let p = random_prime_in_range(&low, &high, &mut rng);
        assert!(p >= low && p < high && is_probable_prime(&p));
    }
}

#[test]
fn draws_cover_the_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // 143 primes lie in (1000, 2000]
    let seen: BTreeSet<BigUint> = (0..2000)
        .map(|_| random_prime_avoiding(&b(1000), 1000, &b(1), &mut rng).unwrap())
        .collect();
    assert!(seen.len() * 2 >= 143, "only {} distinct primes", seen.len());
}
