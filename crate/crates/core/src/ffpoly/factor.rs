use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::poly::{Poly, PolyRing};
use crate::ring::{FiniteField, Ring};

/// Complete factorization of a monic squarefree polynomial over a finite
/// field of odd characteristic: distinct-degree splitting followed by
/// Cantor–Zassenhaus equal-degree splitting.
///
/// Factors are returned sorted by degree, then by coefficients as produced
/// by the splitting; the randomness comes from `rng` only.
pub fn factor_squarefree<F: FiniteField, G: Rng + ?Sized>(
    field: &F,
    f: &Poly<F::Elem>,
    rng: &mut G,
) -> Vec<Poly<F::Elem>> {
    let ring = PolyRing::new(field.clone());
    let q = field.order();
    let mut rest = ring.monic(f);
    let mut out = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let x = ring.x();
    let mut h = ring.rem(&x, &rest);
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        h = ring.pow_mod(&h, &q, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if g.degree().unwrap() > 0 {
            equal_degree_split(&ring, &g, d, &q, rng, &mut out);
            rest = ring.divrem(&rest, &g).unwrap().0;
            h = ring.rem(&h, &rest);
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        out.push(rest);
    }
    out.sort_by_key(|p| p.degree());
    out
}

fn equal_degree_split<F: FiniteField, G: Rng + ?Sized>(
    ring: &PolyRing<F>,
    g: &Poly<F::Elem>,
    d: usize,
    q: &BigUint,
    rng: &mut G,
    out: &mut Vec<Poly<F::Elem>>,
) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (num_traits::pow(q.clone(), d) - BigUint::one()) >> 1;
    loop {
        let a = ring.from_coeffs((0..n).map(|_| ring.base.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = ring.sub(&ring.pow_mod(&a, &e, g), &ring.one());
        let u = ring.gcd(&b, g);
        let du = u.degree().unwrap_or(0);
        if du > 0 && du < n {
            let v = ring.divrem(g, &u).unwrap().0;
            equal_degree_split(ring, &u, d, q, rng, out);
            equal_degree_split(ring, &v, d, q, rng, out);
            return;
        }
    }
}

/// Irreducibility test: `gcd(x^{q^k} - x, f) = 1` for every `k < deg f`
/// and `x^{q^{deg f}} = x` modulo `f`.
pub fn is_irreducible<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> bool {
    let ring = PolyRing::new(field.clone());
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = ring.monic(f);
    let q = field.order();
    let x = ring.x();
    let mut h = ring.rem(&x, &f);
    for _ in 1..n {
        h = ring.pow_mod(&h, &q, &f);
        if ring.gcd(&ring.sub(&h, &x), &f).degree() != Some(0) {
            return false;
        }
    }
    h = ring.pow_mod(&h, &q, &f);
    h == ring.rem(&x, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn splits_into_linear_factors() {
        let f = PrimeField::new(7);
        let ring = PolyRing::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = ring.from_ints(&[4, 0, -5, 0, 1]);
        let factors = factor_squarefree(&f, &p, &mut rng);
        assert_eq!(factors.len(), 4);
        let product = factors.iter().fold(ring.one(), |acc, g| ring.mul(&acc, g));
        assert_eq!(product, p);
    }

    #[test]
    fn irreducible_quadratic_stays_whole() {
        let f = PrimeField::new(3);
        let ring = PolyRing::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = ring.from_ints(&[1, 0, 1]);
        assert_eq!(factor_squarefree(&f, &p, &mut rng), vec![p.clone()]);
        assert!(is_irreducible(&f, &p));
        assert!(!is_irreducible(&f, &ring.from_ints(&[-1, 0, 1])));
    }
}
