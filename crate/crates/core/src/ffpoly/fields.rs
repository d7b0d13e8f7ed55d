//! Concrete coefficient domains: prime fields, the rationals, residue rings
//! `Z/p^k` and truncated power series over a field.

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::poly::Poly;
use crate::ring::{Field, FiniteField, LocalRing, PrecisionRing, PrimeFieldLike, Ring};

/// `F_p` for an odd prime `p < 2^63`, elements stored as canonical `u64` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// The caller is responsible for `p` being prime.
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 63), "prime field modulus out of range");
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn dot<'a, I>(&self, terms: I) -> u64
    where
        I: IntoIterator<Item = (&'a u64, &'a u64)>,
    {
        let p = self.p as u128;
        let mut acc: u128 = 0;
        for (a, b) in terms {
            let prod = *a as u128 * *b as u128;
            acc = match acc.checked_add(prod) {
                Some(sum) => sum,
                None => acc % p + prod,
            };
        }
        (acc % p) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
}

impl LocalRing for PrimeField {
    type Residue = PrimeField;

    fn residue_field(&self) -> Self {
        *self
    }

    fn reduce(&self, a: &u64) -> u64 {
        *a
    }

    fn lift(&self, a: &u64) -> u64 {
        *a
    }

    fn precision(&self) -> usize {
        1
    }
}

impl Field for PrimeField {
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.p)
    }
}

impl PrimeFieldLike for PrimeField {
    fn modulus(&self) -> BigUint {
        BigUint::from(self.p)
    }

    fn to_biguint(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }

    fn from_biguint(&self, a: &BigUint) -> u64 {
        (a % self.p).to_u64().unwrap()
    }
}

/// `F_p` for an arbitrary-precision odd prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigPrimeField {
    p: BigUint,
}

impl BigPrimeField {
    pub fn new(p: BigUint) -> Self {
        assert!(p > BigUint::from(2u32), "prime field modulus out of range");
        BigPrimeField { p }
    }
}

pub(crate) fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&m).to_biguint()
}

impl Ring for BigPrimeField {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn from_int(&self, n: &BigInt) -> BigUint {
        n.mod_floor(&BigInt::from(self.p.clone()))
            .to_biguint()
            .unwrap()
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.p - b
        }
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }

    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if a.is_zero() {
            None
        } else {
            mod_inverse(a, &self.p)
        }
    }
}

impl LocalRing for BigPrimeField {
    type Residue = BigPrimeField;

    fn residue_field(&self) -> Self {
        self.clone()
    }

    fn reduce(&self, a: &BigUint) -> BigUint {
        a.clone()
    }

    fn lift(&self, a: &BigUint) -> BigUint {
        a.clone()
    }

    fn precision(&self) -> usize {
        1
    }
}

impl Field for BigPrimeField {
    fn characteristic(&self) -> BigUint {
        self.p.clone()
    }
}

impl FiniteField for BigPrimeField {
    fn order(&self) -> BigUint {
        self.p.clone()
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> BigUint {
        rng.gen_biguint_below(&self.p)
    }
}

impl PrimeFieldLike for BigPrimeField {
    fn modulus(&self) -> BigUint {
        self.p.clone()
    }

    fn to_biguint(&self, a: &BigUint) -> BigUint {
        a.clone()
    }

    fn from_biguint(&self, a: &BigUint) -> BigUint {
        a % &self.p
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

impl LocalRing for RationalField {
    type Residue = RationalField;

    fn residue_field(&self) -> Self {
        *self
    }

    fn reduce(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn lift(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn precision(&self) -> usize {
        1
    }
}

impl Field for RationalField {
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
}

/// The ring of integers. Only `1` and `-1` are invertible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn dot<'a, I>(&self, terms: I) -> BigInt
    where
        I: IntoIterator<Item = (&'a BigInt, &'a BigInt)>,
    {
        let mut acc = BigInt::zero();
        for (a, b) in terms {
            acc += a * b;
        }
        acc
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
}

/// The residue ring `Z/p^k`, with the prime field `F_p` as residue field.
///
/// Elements are canonical representatives in `[0, p^k)`; representatives
/// produced at a lower precision remain valid at a higher one.
#[derive(Clone, Debug)]
pub struct ResidueRing<F> {
    field: F,
    p: BigUint,
    exponent: usize,
    modulus: BigUint,
}

impl<F: PrimeFieldLike> ResidueRing<F> {
    pub fn new(field: F, exponent: usize) -> Self {
        assert!(exponent >= 1, "residue ring exponent must be positive");
        let p = field.modulus();
        let modulus = num_traits::pow(p.clone(), exponent);
        ResidueRing {
            field,
            p,
            exponent,
            modulus,
        }
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn prime(&self) -> &BigUint {
        &self.p
    }

    /// Symmetric representative in `(-p^k/2, p^k/2]`.
    pub fn signed(&self, a: &BigUint) -> BigInt {
        let half = &self.modulus >> 1;
        if a > &half {
            BigInt::from_biguint(Sign::Plus, a.clone()) - BigInt::from(self.modulus.clone())
        } else {
            BigInt::from(a.clone())
        }
    }
}

impl<F: PrimeFieldLike> Ring for ResidueRing<F> {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn from_int(&self, n: &BigInt) -> BigUint {
        n.mod_floor(&BigInt::from(self.modulus.clone()))
            .to_biguint()
            .unwrap()
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.modulus {
            s - &self.modulus
        } else {
            s
        }
    }

    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.modulus - b
        }
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.modulus
    }

    fn dot<'a, I>(&self, terms: I) -> BigUint
    where
        I: IntoIterator<Item = (&'a BigUint, &'a BigUint)>,
    {
        let mut acc = BigUint::zero();
        for (a, b) in terms {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc % &self.modulus
    }

    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if (a % &self.p).is_zero() {
            None
        } else {
            mod_inverse(a, &self.modulus)
        }
    }
}

impl<F: PrimeFieldLike> LocalRing for ResidueRing<F> {
    type Residue = F;

    fn residue_field(&self) -> F {
        self.field.clone()
    }

    fn reduce(&self, a: &BigUint) -> F::Elem {
        self.field.from_biguint(a)
    }

    fn lift(&self, a: &F::Elem) -> BigUint {
        self.field.to_biguint(a)
    }

    fn precision(&self) -> usize {
        self.exponent
    }
}

impl<F: PrimeFieldLike> PrecisionRing for ResidueRing<F> {
    fn with_precision(&self, precision: usize) -> Self {
        ResidueRing::new(self.field.clone(), precision)
    }

    fn truncate(&self, a: &BigUint) -> BigUint {
        a % &self.modulus
    }
}

/// Truncated power series `K[[t]]/(t^m)`.
///
/// Elements are trimmed coefficient vectors of length at most `m`, so a
/// series computed at a low precision is a valid element at any higher one.
#[derive(Clone, Debug)]
pub struct SeriesRing<K> {
    pub field: K,
    precision: usize,
}

impl<K: Field> SeriesRing<K> {
    pub fn new(field: K, precision: usize) -> Self {
        assert!(precision >= 1);
        SeriesRing { field, precision }
    }

    fn trim(&self, mut v: Vec<K::Elem>) -> Poly<K::Elem> {
        v.truncate(self.precision);
        while v.last().is_some_and(|c| self.field.is_zero(c)) {
            v.pop();
        }
        Poly::from_trimmed(v)
    }

    /// `c + t`.
    pub fn shifted_variable(&self, c: K::Elem) -> Poly<K::Elem> {
        self.trim(vec![c, self.field.one()])
    }

    pub fn constant(&self, c: K::Elem) -> Poly<K::Elem> {
        self.trim(vec![c])
    }
}

impl<K: Field> Ring for SeriesRing<K> {
    type Elem = Poly<K::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.field.one())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.field.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| match (a.coeff(i), b.coeff(i)) {
                (Some(x), Some(y)) => self.field.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.trim(v)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| match (a.coeff(i), b.coeff(i)) {
                (Some(x), Some(y)) => self.field.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.field.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.trim(v)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let n = (a.len() + b.len() - 1).min(self.precision);
        let mut out = vec![self.field.zero(); n];
        for (i, x) in a.coeffs().iter().enumerate().take(n) {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs().iter().enumerate().take(n - i) {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.trim(out)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let a0 = a.coeff(0)?;
        let u0 = self.field.inv(a0)?;
        // b_k = -u0 * sum_{i=1..k} a_i b_{k-i}
        let mut b = vec![u0.clone()];
        for k in 1..self.precision {
            let mut s = self.field.zero();
            for i in 1..=k.min(a.len().saturating_sub(1)) {
                s = self.field.add(&s, &self.field.mul(&a.coeffs()[i], &b[k - i]));
            }
            b.push(self.field.neg(&self.field.mul(&s, &u0)));
        }
        Some(self.trim(b))
    }
}

impl<K: Field> LocalRing for SeriesRing<K> {
    type Residue = K;

    fn residue_field(&self) -> K {
        self.field.clone()
    }

    fn reduce(&self, a: &Self::Elem) -> K::Elem {
        a.coeff(0).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn lift(&self, a: &K::Elem) -> Self::Elem {
        self.constant(a.clone())
    }

    fn precision(&self) -> usize {
        self.precision
    }
}

impl<K: Field> PrecisionRing for SeriesRing<K> {
    fn with_precision(&self, precision: usize) -> Self {
        SeriesRing::new(self.field.clone(), precision)
    }

    fn truncate(&self, a: &Self::Elem) -> Self::Elem {
        self.trim(a.coeffs().to_vec())
    }
}

/// Bit length of `|n|`, at least 1.
pub fn bit_height(n: &BigInt) -> u64 {
    n.abs().bits().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(10007);
        for a in 1..200u64 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn residue_ring_units_are_nonzero_mod_p() {
        let r = ResidueRing::new(PrimeField::new(7), 2);
        assert_eq!(r.inv(&BigUint::from(14u32)), None);
        let u = r.inv(&BigUint::from(6u32)).unwrap();
        assert_eq!(u, BigUint::from(41u32));
        assert_eq!(r.signed(&BigUint::from(48u32)), BigInt::from(-1));
    }

    #[test]
    fn series_inverse() {
        let f = PrimeField::new(101);
        let s = SeriesRing::new(f, 6);
        let a = s.shifted_variable(1); // 1 + t
        let inv = s.inv(&a).unwrap();
        // 1 - t + t^2 - ...
        assert_eq!(inv.coeffs(), &[1, 100, 1, 100, 1, 100]);
        assert_eq!(s.mul(&a, &inv), s.one());
    }
}
