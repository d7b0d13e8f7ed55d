use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use rand::Rng;

use super::poly::{Poly, PolyRing};
use crate::ring::{Field, FiniteField, LocalRing, Ring};

/// The quotient algebra `R[T]/(Q)` for a monic `Q` over a local ring.
///
/// Elements are polynomials of degree below `deg Q`. An element is a unit
/// exactly when its image over the residue field is coprime to `Q`; inverses
/// are computed there and lifted by Newton iteration.
#[derive(Clone, Debug)]
pub struct QuotientRing<R: Ring> {
    pub polys: PolyRing<R>,
    modulus: Poly<R::Elem>,
    // fold[j][i] is the coefficient of T^j in T^(deg Q + i) mod Q
    fold: Arc<Vec<Vec<R::Elem>>>,
}

impl<R: LocalRing> QuotientRing<R> {
    pub fn new(base: R, modulus: Poly<R::Elem>) -> Self {
        let polys = PolyRing::new(base);
        assert!(
            polys.is_monic(&modulus) && modulus.degree().unwrap_or(0) >= 1,
            "quotient modulus must be monic of positive degree"
        );
        let fold = Arc::new(fold_table(&polys, &modulus));
        QuotientRing {
            polys,
            modulus,
            fold,
        }
    }

    pub fn base(&self) -> &R {
        &self.polys.base
    }

    pub fn modulus(&self) -> &Poly<R::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn reduce(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.polys.rem(p, &self.modulus)
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.polys.constant(c)
    }

    /// The class of `T`.
    pub fn generator(&self) -> Poly<R::Elem> {
        self.reduce(&self.polys.x())
    }

    fn residue_image(&self, p: &Poly<R::Elem>) -> Poly<<R::Residue as Ring>::Elem> {
        let k = PolyRing::new(self.base().residue_field());
        self.polys.map_into(p, &k, |c| self.base().reduce(c))
    }
}

impl<R: LocalRing> Ring for QuotientRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.polys.one()
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.polys.from_int(n)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.polys.add(a, b)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.polys.sub(a, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree();
        if a.len() > d || b.len() > d {
            return self.polys.mul_mod(a, b, &self.modulus);
        }
        let prod = self.polys.mul(a, b);
        if prod.len() <= d {
            return prod;
        }
        let (low, high) = prod.coeffs().split_at(d);
        let base = self.base();
        let out = (0..d)
            .map(|j| base.add(&low[j], &base.dot(high.iter().zip(self.fold[j].iter()))))
            .collect();
        self.polys.from_coeffs(out)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.polys.neg(a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let base = self.base();
        let k = PolyRing::new(base.residue_field());
        let a0 = self.residue_image(a);
        let q0 = self.residue_image(&self.modulus);
        let u0 = k.inverse_mod(&a0, &q0).ok()?;
        let mut u = k.map_into(&u0, &self.polys, |c| base.lift(c));
        let two = self.from_i64(2);
        let mut reached = 1;
        while reached < base.precision() {
            u = self.mul(&u, &self.sub(&two, &self.mul(a, &u)));
            reached *= 2;
        }
        Some(u)
    }
}

fn fold_table<R: LocalRing>(polys: &PolyRing<R>, q: &Poly<R::Elem>) -> Vec<Vec<R::Elem>> {
    let base = &polys.base;
    let d = q.degree().unwrap();
    let mut rows = Vec::with_capacity(d.saturating_sub(1));
    // T^d = -(Q - T^d)
    let mut cur: Vec<R::Elem> = q.coeffs()[..d].iter().map(|c| base.neg(c)).collect();
    for i in 0..d.saturating_sub(1) {
        if i > 0 {
            let top = cur[d - 1].clone();
            let mut next = Vec::with_capacity(d);
            next.push(base.neg(&base.mul(&top, &q.coeffs()[0])));
            for j in 1..d {
                next.push(base.sub(&cur[j - 1], &base.mul(&top, &q.coeffs()[j])));
            }
            cur = next;
        }
        rows.push(cur.clone());
    }
    (0..d).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// A finite extension field `F[x]/(q)` for an irreducible `q`.
#[derive(Clone, Debug)]
pub struct ExtField<F: Field> {
    pub quotient: QuotientRing<F>,
}

impl<F: Field> ExtField<F> {
    /// The caller is responsible for `q` being irreducible.
    pub fn new(base: F, q: Poly<F::Elem>) -> Self {
        ExtField {
            quotient: QuotientRing::new(base, q),
        }
    }

    pub fn base(&self) -> &F {
        self.quotient.base()
    }

    pub fn embed(&self, c: &F::Elem) -> Poly<F::Elem> {
        self.quotient.constant(c.clone())
    }

    pub fn generator(&self) -> Poly<F::Elem> {
        self.quotient.generator()
    }

    pub fn degree(&self) -> usize {
        self.quotient.degree()
    }
}

impl<F: Field> Ring for ExtField<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.quotient.zero()
    }

    fn one(&self) -> Self::Elem {
        self.quotient.one()
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.quotient.from_int(n)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.quotient.add(a, b)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.quotient.sub(a, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.quotient.mul(a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.quotient.neg(a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        self.quotient.polys.inverse_mod(a, self.quotient.modulus()).ok()
    }
}

impl<F: Field> LocalRing for ExtField<F> {
    type Residue = Self;

    fn residue_field(&self) -> Self {
        self.clone()
    }

    fn reduce(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    fn lift(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    fn precision(&self) -> usize {
        1
    }
}

impl<F: Field> Field for ExtField<F> {
    fn characteristic(&self) -> BigUint {
        self.base().characteristic()
    }
}

impl<F: FiniteField> FiniteField for ExtField<F> {
    fn order(&self) -> BigUint {
        num_traits::pow(self.base().order(), self.degree())
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        let coeffs = (0..self.degree()).map(|_| self.base().random(rng)).collect();
        self.quotient.polys.from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{PrimeField, ResidueRing, SeriesRing};

    #[test]
    fn inverse_in_quotient_over_residue_ring() {
        let zp = ResidueRing::new(PrimeField::new(7), 4);
        let polys = PolyRing::new(zp.clone());
        let q = polys.from_ints(&[-2, 0, 1]);
        let a = QuotientRing::new(zp, q);
        let x = polys.from_ints(&[3, 5]);
        let inv = a.inv(&x).unwrap();
        assert_eq!(a.mul(&x, &inv), a.one());
    }

    #[test]
    fn inverse_in_quotient_over_series() {
        let s = SeriesRing::new(PrimeField::new(101), 5);
        let polys = PolyRing::new(s.clone());
        // T^2 - (1 + t)
        let q = polys.from_coeffs(vec![s.neg(&s.shifted_variable(1)), s.zero(), s.one()]);
        let a = QuotientRing::new(s.clone(), q);
        let two_t = polys.from_coeffs(vec![s.zero(), s.from_i64(2)]);
        let inv = a.inv(&two_t).unwrap();
        assert_eq!(a.mul(&two_t, &inv), a.one());
    }

    #[test]
    fn non_units_are_detected() {
        let f = PrimeField::new(7);
        let polys = PolyRing::new(f);
        let a = QuotientRing::new(f, polys.from_ints(&[-1, 0, 1]));
        assert_eq!(a.inv(&polys.from_ints(&[-1, 1])), None);
        assert_eq!(a.inv(&polys.from_ints(&[0, 2])), Some(polys.from_ints(&[0, 4])));
    }

    #[test]
    fn extension_field_of_degree_two() {
        let f = PrimeField::new(3);
        let polys = PolyRing::new(f);
        let l = ExtField::new(f, polys.from_ints(&[1, 0, 1]));
        let i = l.generator();
        assert_eq!(l.mul(&i, &i), l.from_i64(-1));
        assert_eq!(l.order(), BigUint::from(9u32));
        for a in 0..3 {
            for b in 0..3 {
                let z = polys.from_ints(&[a, b]);
                if !z.is_zero() {
                    assert_eq!(l.mul(&z, &l.inv(&z).unwrap()), l.one());
                }
            }
        }
    }
}
