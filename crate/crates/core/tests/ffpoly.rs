use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kronecker_core::ffpoly::{
    determinant, factor_squarefree, is_irreducible, rational_reconstruct, AlgebraError, ExtField, Poly,
    PolyRing, PrimeField, QuotientRing, RationalField, ResidueRing,
};
use kronecker_core::ring::Ring;

fn f7() -> (PrimeField, PolyRing<PrimeField>) {
    let f = PrimeField::new(7);
    (f, PolyRing::new(f))
}

#[test]
fn gcd_examples() {
    let (_, r) = f7();
    assert_eq!(r.gcd(&r.from_ints(&[-1, 0, 1]), &r.from_ints(&[-1, 1])), r.from_ints(&[-1, 1]));
    assert_eq!(r.gcd(&r.from_ints(&[-1, 0, 1]), &r.from_ints(&[1, 0, 1])), r.one());
    assert_eq!(r.gcd(&r.from_ints(&[2, 4]), &Poly::zero()), r.from_ints(&[4, 1]));
}

#[test]
fn inverse_examples() {
    let (_, r) = f7();
    let q = r.from_ints(&[-1, 0, 1]);
    assert_eq!(r.inverse_mod(&r.from_ints(&[0, 2]), &q), Ok(r.from_ints(&[0, 4])));
    assert_eq!(r.inverse_mod(&r.one(), &q), Ok(r.one()));
    assert_eq!(r.inverse_mod(&r.from_ints(&[-1, 1]), &q), Err(AlgebraError::NotInvertible));
    let quotient = QuotientRing::new(PrimeField::new(7), q);
    assert_eq!(quotient.inv(&r.from_ints(&[-1, 1])), None);
}

#[test]
fn resultant_example() {
    let r = PolyRing::new(RationalField);
    let q = |v: &[i64]| r.from_coeffs(v.iter().map(|&c| BigRational::from_integer(c.into())).collect());
    assert_eq!(
        r.resultant(&q(&[-1, 0, 1]), &q(&[-3, 1])),
        BigRational::from_integer(8.into())
    );
}

#[test]
fn squarefree_part_examples() {
    let f = PrimeField::new(10007);
    let r = PolyRing::new(f);
    // (T - 1)^2 (T + 2) = T^3 - 3T + 2
    let g = r.from_ints(&[2, -3, 0, 1]);
    assert_eq!(r.squarefree_part(&g), Ok(r.from_ints(&[-2, 1, 1])));
    let sf = r.from_ints(&[6, 3]);
    assert_eq!(r.squarefree_part(&sf), Ok(r.from_ints(&[2, 1])));
    assert_eq!(r.squarefree_part(&r.from_ints(&[5])), Ok(r.one()));
}

#[test]
fn factor_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (f, r) = f7();
    let mut factors = factor_squarefree(&f, &r.from_ints(&[-1, 0, 1]), &mut rng);
    factors.sort_by_key(|p| p.coeffs().to_vec());
    assert_eq!(factors, vec![r.from_ints(&[1, 1]), r.from_ints(&[-1, 1])]);

    let f3 = PrimeField::new(3);
    let r3 = PolyRing::new(f3);
    let g = r3.from_ints(&[1, 0, 1]);
    assert_eq!(factor_squarefree(&f3, &g, &mut rng), vec![g.clone()]);
    assert!(is_irreducible(&f3, &g));

    let mut roots: Vec<u64> = factor_squarefree(&f, &r.from_ints(&[4, 0, -5, 0, 1]), &mut rng)
        .iter()
        .map(|p| {
            assert_eq!(p.degree(), Some(1));
            f.neg(&p.coeffs()[0])
        })
        .collect();
    roots.sort_unstable();
    assert_eq!(roots, vec![1, 2, 5, 6]);
}

#[test]
fn factor_over_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f3 = PrimeField::new(3);
    let ext = ExtField::new(f3, PolyRing::new(f3).from_ints(&[1, 0, 1]));
    let r = PolyRing::new(ext.clone());
    // T^2 + 1 splits over F_9
    let g = r.from_coeffs(vec![ext.one(), ext.zero(), ext.one()]);
    let factors = factor_squarefree(&ext, &g, &mut rng);
    assert_eq!(factors.len(), 2);
    assert!(factors.iter().all(|p| p.degree() == Some(1)));
}

#[test]
fn interpolation_examples() {
    let (_, r) = f7();
    assert_eq!(r.interpolate(&[(0, 1), (1, 2)]), Ok(r.from_ints(&[1, 1])));
    assert_eq!(r.interpolate(&[(1, 2), (2, 3)]), Ok(r.from_ints(&[1, 1])));
    assert_eq!(r.interpolate(&[(4, 5)]), Ok(r.from_ints(&[5])));
    assert_eq!(r.interpolate(&[(1, 2), (1, 3)]), Err(AlgebraError::DuplicateNode));
}

#[test]
fn crt_examples() {
    let (_, r) = f7();
    let residues = [(r.from_ints(&[2]), r.from_ints(&[-1, 1])), (r.from_ints(&[3]), r.from_ints(&[-2, 1]))];
    assert_eq!(r.crt(&residues), Ok(r.from_ints(&[1, 1])));
    let single = [(r.from_ints(&[3, 1]), r.from_ints(&[0, 0, 1]))];
    assert_eq!(r.crt(&single), Ok(r.from_ints(&[3, 1])));
    let zeros = [(Poly::zero(), r.from_ints(&[-1, 1])), (Poly::zero(), r.from_ints(&[-2, 1]))];
    assert_eq!(r.crt(&zeros), Ok(Poly::zero()));
}

#[test]
fn reconstruction_examples() {
    let b = |v: i64| BigInt::from(v);
    assert_eq!(rational_reconstruct(&b(3336), &b(10007), None), Ok((b(1), b(3))));
    assert_eq!(rational_reconstruct(&b(5), &b(1000003), None), Ok((b(5), b(1))));
    assert_eq!(rational_reconstruct(&b(5039), &b(10007), None), Err(AlgebraError::NoReconstruction));
    // 1/3 modulo 10007^3
    let m = b(10007).pow(3);
    let a = b(3).modinv(&m).unwrap();
    assert_eq!(rational_reconstruct(&a, &m, None), Ok((b(1), b(3))));
}

#[test]
fn residue_ring_units() {
    let ring = ResidueRing::new(PrimeField::new(7), 2);
    assert_eq!(ring.modulus(), &BigUint::from(49u32));
    assert_eq!(ring.inv(&BigUint::from(7u32)), None);
    let inv = ring.inv(&BigUint::from(3u32)).unwrap();
    assert_eq!(ring.mul(&inv, &BigUint::from(3u32)), BigUint::from(1u32));
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0u64..101, 1..=max_deg + 1)
}

fn sylvester(f: &PrimeField, a: &Poly<u64>, b: &Poly<u64>) -> u64 {
    let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![0; size];
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            row[i + k] = *c;
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![0; size];
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            row[i + k] = *c;
        }
        rows.push(row);
    }
    determinant(f, &rows)
}

proptest! {
    #[test]
    fn resultant_is_sylvester_determinant(a in poly_strategy(5), b in poly_strategy(5)) {
        let f = PrimeField::new(101);
        let r = PolyRing::new(f);
        let (a, b) = (r.from_coeffs(a), r.from_coeffs(b));
        prop_assume!(a.degree().unwrap_or(0) >= 1 && b.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(r.resultant(&a, &b), sylvester(&f, &a, &b));
    }

    #[test]
    fn factors_multiply_back(a in poly_strategy(8), seed in 0u64..1000) {
        let f = PrimeField::new(101);
        let r = PolyRing::new(f);
        let a = r.from_coeffs(a);
        prop_assume!(a.degree().unwrap_or(0) >= 1);
        let sf = r.squarefree_part(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factors = factor_squarefree(&f, &sf, &mut rng);
        let product = factors.iter().fold(r.one(), |acc, p| r.mul(&acc, p));
        prop_assert_eq!(product, sf);
        prop_assert!(factors.iter().all(|p| is_irreducible(&f, p)));
    }

    #[test]
    fn crt_satisfies_every_congruence(values in proptest::collection::vec(0u64..101, 1..6)) {
        let f = PrimeField::new(101);
        let r = PolyRing::new(f);
        let residues: Vec<_> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| (r.from_ints(&[v as i64]), r.from_ints(&[-(i as i64), 1])))
            .collect();
        let v = r.crt(&residues).unwrap();
        for (i, &value) in values.iter().enumerate() {
            prop_assert_eq!(r.eval(&v, &(i as u64)), value);
        }
    }

    #[test]
    fn reconstruction_inverts_reduction(num in -(1i64 << 40)..(1i64 << 40), den in 1i64..(1 << 40)) {
        let m = BigInt::from(1_000_000_007u64).pow(3);
        let (num, den) = (BigInt::from(num), BigInt::from(den));
        prop_assume!(num_integer::Integer::gcd(&den, &BigInt::from(1_000_000_007u64)) == BigInt::from(1));
        let g = num_integer::Integer::gcd(&num, &den);
        let (num, den) = (&num / &g, &den / &g);
        let a = (&num * den.modinv(&m).unwrap()) % &m;
        prop_assert_eq!(rational_reconstruct(&a, &m, None), Ok((num, den)));
    }
}
