use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// `floor(sqrt(m / 2))`, the largest bound for which reconstruction is unique.
pub fn default_bound(m: &BigInt) -> BigInt {
    (m >> 1u32).sqrt()
}

/// Finds `num / den` with `|num| <= bound`, `0 < den <= bound`,
/// `gcd(den, m) = 1` and `num = a * den (mod m)`.
///
/// The bound defaults to [`default_bound`]; with `2 bound^2 < m` the answer
/// is unique when it exists.
pub fn rational_reconstruct(
    a: &BigInt,
    m: &BigInt,
    bound: Option<&BigInt>,
) -> Result<(BigInt, BigInt), AlgebraError> {
    let bound = bound.cloned().unwrap_or_else(|| default_bound(m));
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound {
        return Err(AlgebraError::NoReconstruction);
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if !den.gcd(m).is_one() {
        return Err(AlgebraError::NoReconstruction);
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_examples() {
        let m = big(10007);
        assert_eq!(rational_reconstruct(&big(3336), &m, None), Ok((big(1), big(3))));
        assert_eq!(
            rational_reconstruct(&big(5), &big(1000003), None),
            Ok((big(5), big(1)))
        );
        // floor(m/2) is -1/2 modulo an odd m
        assert_eq!(rational_reconstruct(&big(5003), &m, None), Ok((big(-1), big(2))));
    }

    #[test]
    fn residue_without_small_fraction() {
        // Smallest residue above m/2 that no fraction with |num|, den <= 70 hits.
        let m = big(10007);
        assert_eq!(
            rational_reconstruct(&big(5039), &m, None),
            Err(AlgebraError::NoReconstruction)
        );
    }
}
