//! Ring abstractions shared by every coefficient domain in the solver.
//!
//! Rings are *context objects*: the modulus (prime, prime power, minimal
//! polynomial, truncation order) lives in the ring value and elements are
//! plain data. All arithmetic goes through the context, which lets the same
//! generic code run over `F_p`, `Z/p^k`, `F_p[[t]]/(t^m)`, extension fields,
//! quotient algebras and the rationals.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use rand::Rng;

/// A commutative ring with unity.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse of `a`, or `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `sum a_i b_i`. Rings with lazy reduction override this to reduce once.
    fn dot<'a, I>(&self, terms: I) -> Self::Elem
    where
        I: IntoIterator<Item = (&'a Self::Elem, &'a Self::Elem)>,
        Self::Elem: 'a,
    {
        terms
            .into_iter()
            .fold(self.zero(), |acc, (a, b)| self.add(&acc, &self.mul(a, b)))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}

/// A local ring whose maximal ideal is nilpotent, e.g. `Z/p^k` or `F_p[[t]]/(t^m)`.
///
/// Units are exactly the elements whose residue is nonzero, and inverses can
/// be lifted from the residue field by Newton iteration.
pub trait LocalRing: Ring {
    type Residue: Field;

    fn residue_field(&self) -> Self::Residue;
    fn reduce(&self, a: &Self::Elem) -> <Self::Residue as Ring>::Elem;
    fn lift(&self, a: &<Self::Residue as Ring>::Elem) -> Self::Elem;
    /// Nilpotency index of the maximal ideal; 1 for a field.
    fn precision(&self) -> usize;
}

/// A field, viewed as a local ring of precision one.
pub trait Field: LocalRing<Residue = Self> {
    fn characteristic(&self) -> BigUint;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero in a field");
        self.mul(a, &inv)
    }
}

/// A finite field of odd characteristic.
pub trait FiniteField: Field {
    fn order(&self) -> BigUint;
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;
}

/// A prime field `F_p`, regardless of how its elements are stored.
pub trait PrimeFieldLike: FiniteField {
    fn modulus(&self) -> BigUint;
    fn to_biguint(&self, a: &Self::Elem) -> BigUint;
    fn from_biguint(&self, a: &BigUint) -> Self::Elem;
}

/// Local rings whose precision can be raised or lowered with compatible
/// element representations, so that Newton iteration can double it in place.
pub trait PrecisionRing: LocalRing {
    fn with_precision(&self, precision: usize) -> Self;
    fn truncate(&self, a: &Self::Elem) -> Self::Elem;
}

/// First-order dual numbers `R[e]/(e^2)` used for forward-mode differentiation.
#[derive(Clone, Debug)]
pub struct Dual<R> {
    pub base: R,
}

impl<R: Ring> Dual<R> {
    pub fn new(base: R) -> Self {
        Dual { base }
    }

    pub fn constant(&self, a: R::Elem) -> (R::Elem, R::Elem) {
        (a, self.base.zero())
    }

    pub fn variable(&self, a: R::Elem) -> (R::Elem, R::Elem) {
        (a, self.base.one())
    }
}

impl<R: Ring> Ring for Dual<R> {
    type Elem = (R::Elem, R::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        (self.base.from_int(n), self.base.zero())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let value = self.base.mul(&a.0, &b.0);
        let d = self
            .base
            .add(&self.base.mul(&a.0, &b.1), &self.base.mul(&a.1, &b.0));
        (value, d)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.0) && self.base.is_zero(&a.1)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let u = self.base.inv(&a.0)?;
        let d = self.base.neg(&self.base.mul(&a.1, &self.base.mul(&u, &u)));
        Some((u, d))
    }
}

/// Fractions `num / den^k` over a ring with one fixed denominator.
///
/// Evaluating a program over this ring computes `den^k * f(x / den)` style
/// clearings without ever inverting `den`; an element is zero exactly when
/// its numerator is, provided `den` is not a zero divisor.
#[derive(Clone, Debug)]
pub struct FractionRing<R: Ring> {
    pub base: R,
    pub den: R::Elem,
}

impl<R: Ring> FractionRing<R> {
    pub fn new(base: R, den: R::Elem) -> Self {
        FractionRing { base, den }
    }

    pub fn fraction(&self, num: R::Elem, exponent: u32) -> (R::Elem, u32) {
        (num, exponent)
    }

    fn raise(&self, a: &(R::Elem, u32), to: u32) -> R::Elem {
        if a.1 == to {
            a.0.clone()
        } else {
            let f = self.base.pow(&self.den, (to - a.1) as u64);
            self.base.mul(&a.0, &f)
        }
    }
}

impl<R: Ring> Ring for FractionRing<R> {
    type Elem = (R::Elem, u32);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), 0)
    }

    fn one(&self) -> Self::Elem {
        (self.base.one(), 0)
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        (self.base.from_int(n), 0)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let e = a.1.max(b.1);
        (self.base.add(&self.raise(a, e), &self.raise(b, e)), e)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let e = a.1.max(b.1);
        (self.base.sub(&self.raise(a, e), &self.raise(b, e)), e)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.mul(&a.0, &b.0), a.1 + b.1)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.0)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.1 != 0 {
            return None;
        }
        self.base.inv(&a.0).map(|u| (u, 0))
    }
}
