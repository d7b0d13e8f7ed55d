use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};

use super::AlgebraError;
use crate::ring::{Field, Ring};

/// Dense univariate polynomial, coefficients in ascending degree order.
///
/// The zero polynomial has no coefficients and the leading coefficient of a
/// nonzero polynomial is never zero. The invariant is maintained by
/// [`PolyRing`], which knows how to test coefficients for zero.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    /// Wraps coefficients that are already trimmed.
    pub(crate) fn from_trimmed(coeffs: Vec<E>) -> Self {
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of coefficients (degree + 1, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

/// The polynomial ring `R[T]` over a coefficient ring.
#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    pub base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// The indeterminate `T`.
    pub fn x(&self) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.zero(), self.base.one()])
    }

    /// `c * T^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); k];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn coeff_or_zero(&self, p: &Poly<R::Elem>, i: usize) -> R::Elem {
        p.coeff(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, p: &Poly<R::Elem>) -> bool {
        p.leading().is_some_and(|c| *c == self.base.one())
    }

    pub fn scale(&self, p: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(p.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        let coeffs = p
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(c, &self.base.from_i64(i as i64)))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// Horner evaluation at a point of the coefficient ring.
    pub fn eval(&self, p: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in p.coeffs.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    /// Horner evaluation in an algebra `S` over the coefficient ring.
    pub fn eval_in<S: Ring>(
        &self,
        p: &Poly<R::Elem>,
        algebra: &S,
        x: &S::Elem,
        embed: impl Fn(&R::Elem) -> S::Elem,
    ) -> S::Elem {
        let mut acc = algebra.zero();
        for c in p.coeffs.iter().rev() {
            acc = algebra.add(&algebra.mul(&acc, x), &embed(c));
        }
        acc
    }

    /// Applies a ring morphism coefficient-wise.
    pub fn map_into<S: Ring>(
        &self,
        p: &Poly<R::Elem>,
        target: &PolyRing<S>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        target.from_coeffs(p.coeffs.iter().map(f).collect())
    }

    /// Division with remainder by a polynomial whose leading coefficient is a unit.
    pub fn divrem(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>), AlgebraError> {
        let db = b.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = self
            .base
            .inv(b.leading().unwrap())
            .ok_or(AlgebraError::NotInvertible)?;
        let Some(da) = a.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if da < db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.base.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &rem[k + db];
            if self.base.is_zero(c) {
                continue;
            }
            let q = self.base.mul(c, &lc_inv);
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(&q, bj);
                rem[k + j] = self.base.sub(&rem[k + j], &t);
            }
            quot[k] = q;
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    /// Remainder modulo a monic (or unit-leading) polynomial.
    pub fn rem(&self, a: &Poly<R::Elem>, m: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.divrem(a, m)
            .expect("modulus must have a unit leading coefficient")
            .1
    }

    pub fn mul_mod(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
        m: &Poly<R::Elem>,
    ) -> Poly<R::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<R::Elem>, e: &BigUint, m: &Poly<R::Elem>) -> Poly<R::Elem> {
        let base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base, m);
            }
        }
        acc
    }

    /// `p(q(T))`.
    pub fn compose(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = Poly::zero();
        for c in p.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, q), &self.constant(c.clone()));
        }
        acc
    }
}

impl<F: Field> PolyRing<F> {
    /// Divides by the leading coefficient; the zero polynomial is returned unchanged.
    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("nonzero field element");
                self.scale(p, &inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = self.rem(&r0, &r1);
            r0 = r1;
            r1 = r;
        }
        self.monic(&r0)
    }

    /// Extended Euclid: returns `(g, s, t)` with `s a + t b = g` and `g` monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("field division");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("nonzero field element");
                (
                    self.scale(&r0, &inv),
                    self.scale(&s0, &inv),
                    self.scale(&t0, &inv),
                )
            }
        }
    }

    /// Inverse of `f` modulo `m`, with degree below `deg m`.
    pub fn inverse_mod(
        &self,
        f: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>, AlgebraError> {
        let (g, s, _) = self.xgcd(&self.rem(f, m), m);
        if g.degree() != Some(0) {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(self.rem(&s, m))
    }

    /// Resultant with the convention `Res(f, g) = lc(f)^deg(g) * prod g(alpha)`
    /// over the roots `alpha` of `f`, computed along the Euclidean remainder
    /// sequence.
    pub fn resultant(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> F::Elem {
        let k = &self.base;
        let (mut f, mut g) = (f.clone(), g.clone());
        let mut acc = k.one();
        loop {
            let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
                return k.zero();
            };
            let lc = f.leading().unwrap().clone();
            if df == 0 {
                return k.mul(&acc, &k.pow(&lc, dg as u64));
            }
            let r = self.rem(&g, &f);
            let Some(dr) = r.degree() else {
                return k.zero();
            };
            acc = k.mul(&acc, &k.pow(&lc, (dg - dr) as u64));
            if (df * dr) % 2 == 1 {
                acc = k.neg(&acc);
            }
            g = f;
            f = r;
        }
    }

    /// `f / gcd(f, f')`, made monic.
    pub fn squarefree_part(&self, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>, AlgebraError> {
        let Some(d) = f.degree() else {
            return Ok(Poly::zero());
        };
        let ch = self.base.characteristic();
        if ch != BigUint::from(0u32) && ch <= BigUint::from(d) {
            return Err(AlgebraError::CharacteristicTooSmall);
        }
        if d == 0 {
            return Ok(self.one());
        }
        let g = self.gcd(f, &self.derivative(f));
        let (q, _) = self.divrem(f, &g)?;
        Ok(self.monic(&q))
    }

    pub fn is_squarefree(&self, f: &Poly<F::Elem>) -> bool {
        self.gcd(f, &self.derivative(f)).degree() == Some(0)
    }

    /// Newton-form interpolation through `(node, value)` pairs.
    pub fn interpolate(&self, points: &[(F::Elem, F::Elem)]) -> Result<Poly<F::Elem>, AlgebraError> {
        let k = &self.base;
        let m = points.len();
        // divided differences, in place
        let mut dd: Vec<F::Elem> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..m {
            for i in (level..m).rev() {
                let den = k.sub(&points[i].0, &points[i - level].0);
                let inv = k.inv(&den).ok_or(AlgebraError::DuplicateNode)?;
                dd[i] = k.mul(&k.sub(&dd[i], &dd[i - 1]), &inv);
            }
        }
        let mut acc = Poly::zero();
        for i in (0..m).rev() {
            let factor = self.from_coeffs(vec![k.neg(&points[i].0), k.one()]);
            acc = self.add(&self.mul(&acc, &factor), &self.constant(dd[i].clone()));
        }
        Ok(acc)
    }

    /// Chinese remaindering for pairwise coprime moduli.
    pub fn crt(&self, residues: &[(Poly<F::Elem>, Poly<F::Elem>)]) -> Result<Poly<F::Elem>, AlgebraError> {
        let mut iter = residues.iter();
        let Some((v0, q0)) = iter.next() else {
            return Ok(Poly::zero());
        };
        let mut value = self.rem(v0, q0);
        let mut modulus = q0.clone();
        for (v, q) in iter {
            let inv = self
                .inverse_mod(&modulus, q)
                .map_err(|_| AlgebraError::ModuliNotCoprime)?;
            let diff = self.sub(v, &value);
            let k = self.mul_mod(&diff, &inv, q);
            value = self.add(&value, &self.mul(&modulus, &k));
            modulus = self.mul(&modulus, q);
        }
        Ok(value)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = self.base.add(o, s);
        }
        self.from_coeffs(out)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.coeff(i), b.coeff(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(out)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let (la, lb) = (a.len(), b.len());
        let out = (0..la + lb - 1)
            .map(|k| {
                let lo = k.saturating_sub(lb - 1);
                let hi = k.min(la - 1);
                self.base
                    .dot(a.coeffs[lo..=hi].iter().zip(b.coeffs[k - hi..=k - lo].iter().rev()))
            })
            .collect();
        self.from_coeffs(out)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly::from_trimmed(a.coeffs.iter().map(|c| self.base.neg(c)).collect())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.degree() == Some(0) {
            self.base.inv(&a.coeffs[0]).map(|u| self.constant(u))
        } else {
            None
        }
    }
}

/// Debug-friendly rendering used in error messages and tests.
pub fn render<E: Debug>(p: &Poly<E>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .map(|(i, c)| match i {
            0 => format!("{c:?}"),
            1 => format!("{c:?}*T"),
            _ => format!("{c:?}*T^{i}"),
        })
        .collect();
    terms.join(" + ")
}
