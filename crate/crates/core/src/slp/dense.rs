//! Sparse multivariate polynomials over the rationals, used to extract
//! degrees and heights from parsed inputs and as a symbolic reference in tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::Ring;

/// Exponent vector to coefficient; zero coefficients are never stored.
pub type DensePoly = BTreeMap<Vec<u32>, BigRational>;

/// `Q[X_1..X_n]` as a [`Ring`], so a program can be expanded by evaluation.
#[derive(Clone, Debug)]
pub struct DenseRing {
    pub n_vars: usize,
}

impl DenseRing {
    pub fn new(n_vars: usize) -> Self {
        DenseRing { n_vars }
    }

    pub fn variable(&self, i: usize) -> DensePoly {
        let mut e = vec![0; self.n_vars];
        e[i] = 1;
        BTreeMap::from([(e, BigRational::one())])
    }

    pub fn total_degree(&self, p: &DensePoly) -> Option<u32> {
        p.keys().map(|e| e.iter().sum()).max()
    }

    /// Partial derivative with respect to `X_i`.
    pub fn derivative(&self, p: &DensePoly, i: usize) -> DensePoly {
        let mut out = DensePoly::new();
        for (e, c) in p {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert(e2, c * BigRational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Evaluation at a point of any ring that receives rational coefficients.
    pub fn eval<R: Ring>(
        &self,
        p: &DensePoly,
        ring: &R,
        point: &[R::Elem],
        embed: impl Fn(&BigRational) -> R::Elem,
    ) -> R::Elem {
        let mut acc = ring.zero();
        for (e, c) in p {
            let mut term = embed(c);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term = ring.mul(&term, &ring.pow(x, k as u64));
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }

    fn combine(&self, a: &DensePoly, b: &DensePoly, negate: bool) -> DensePoly {
        let mut out = a.clone();
        for (e, c) in b {
            let c = if negate { -c } else { c.clone() };
            let entry = out.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(e);
            }
        }
        out
    }
}

impl Ring for DenseRing {
    type Elem = DensePoly;

    fn zero(&self) -> DensePoly {
        DensePoly::new()
    }

    fn one(&self) -> DensePoly {
        self.from_int(&BigInt::one())
    }

    fn from_int(&self, n: &BigInt) -> DensePoly {
        if n.is_zero() {
            return DensePoly::new();
        }
        BTreeMap::from([(vec![0; self.n_vars], BigRational::from_integer(n.clone()))])
    }

    fn add(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        self.combine(a, b, false)
    }

    fn sub(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        self.combine(a, b, true)
    }

    fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        let mut out = DensePoly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = out.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn is_zero(&self, a: &DensePoly) -> bool {
        a.is_empty()
    }

    fn inv(&self, a: &DensePoly) -> Option<DensePoly> {
        if a.len() == 1 {
            let (e, c) = a.iter().next().unwrap();
            if e.iter().all(|&k| k == 0) {
                return Some(BTreeMap::from([(e.clone(), c.recip())]));
            }
        }
        None
    }
}
