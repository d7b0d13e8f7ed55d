//! Brute-force references for tests: exhaustive fiber enumeration over
//! small finite fields and characteristic polynomials of multiplication
//! matrices. Size guards keep them at toy scale.

use num_bigint::BigInt;
use thiserror::Error;

use crate::ffpoly::{determinant, ExtField, Poly, PolyRing, PrimeField};
use crate::ring::{FiniteField, Ring};
use crate::slp::{AffineChange, SlpError, StraightLineProgram};

/// Largest search space an enumeration may visit.
pub const MAX_SEARCH: u64 = 100_000_000;

/// Largest quotient dimension accepted by [`mulmat_charpoly`].
pub const MAX_MULMAT_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space too large: {0}")]
    SizeGuard(String),
    #[error("prime {0} is above the oracle limit 101")]
    PrimeTooLarge(u64),
    #[error("{0} variables is above the oracle limit 4")]
    TooManyVariables(usize),
    #[error("modulus must be monic of positive degree")]
    BadModulus,
    #[error("coordinate change is singular modulo the characteristic")]
    SingularChange,
    #[error(transparent)]
    Program(#[from] SlpError),
}

/// Finite fields whose elements can be listed.
pub trait Enumerable: FiniteField {
    fn elements(&self) -> Vec<Self::Elem>;
}

impl Enumerable for PrimeField {
    fn elements(&self) -> Vec<u64> {
        (0..self.p()).collect()
    }
}

impl Enumerable for ExtField<PrimeField> {
    fn elements(&self) -> Vec<Poly<u64>> {
        let base = self.base().elements();
        let polys = &self.quotient.polys;
        let mut out = vec![Vec::new()];
        for _ in 0..self.degree() {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    base.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(*c);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|c| polys.from_coeffs(c)).collect()
    }
}

/// All `x` in `F_p^n` with `F_1(x) = ... = F_stage(x) = 0` and
/// `(change x)_j = fixed_j` for the first `n - stage` coordinates.
pub fn brute_force_fiber(
    program: &StraightLineProgram,
    change: &AffineChange,
    fixed: &[BigInt],
    stage: usize,
    p: u64,
) -> Result<Vec<Vec<u64>>, OracleError> {
    if p > 101 {
        return Err(OracleError::PrimeTooLarge(p));
    }
    if program.n_vars() > 4 {
        return Err(OracleError::TooManyVariables(program.n_vars()));
    }
    fiber_points(program, change, fixed, stage, &PrimeField::new(p))
}

/// [`brute_force_fiber`] over an arbitrary enumerable field, e.g. an
/// extension of `F_p`, so that fibers can be counted over the closure.
///
/// Only the `stage` free coordinates `Y` are enumerated; each candidate is
/// mapped back to `X` through the inverse change.
pub fn fiber_points<F: Enumerable>(
    program: &StraightLineProgram,
    change: &AffineChange,
    fixed: &[BigInt],
    stage: usize,
    field: &F,
) -> Result<Vec<Vec<F::Elem>>, OracleError> {
    let n = program.n_vars();
    assert!(stage >= 1 && stage <= n.min(program.n_outputs()));
    assert_eq!(fixed.len(), n - stage);
    let size = num_traits::pow(field.order(), stage);
    if size > MAX_SEARCH.into() {
        return Err(OracleError::SizeGuard(format!("{size} points")));
    }
    let det_inv = field
        .inv(&field.from_int(change.det()))
        .ok_or(OracleError::SingularChange)?;
    let adj: Vec<Vec<F::Elem>> = change
        .adjugate()
        .iter()
        .map(|row| row.iter().map(|a| field.mul(&field.from_int(a), &det_inv)).collect())
        .collect();
    let elements = field.elements();
    let which: Vec<usize> = (0..stage).collect();
    let mut y: Vec<F::Elem> = fixed.iter().map(|c| field.from_int(c)).collect();
    y.resize(n, field.zero());
    let mut digits = vec![0usize; stage];
    let mut out = Vec::new();
    loop {
        for (k, &d) in digits.iter().enumerate() {
            y[n - stage + k] = elements[d].clone();
        }
        let x: Vec<F::Elem> = adj
            .iter()
            .map(|row| field.dot(row.iter().zip(&y)))
            .collect();
        let values = program.evaluate_outputs(field, &x, &which)?;
        if values.iter().all(|v| field.is_zero(v)) {
            out.push(x);
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == stage {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < elements.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Characteristic polynomial `det(S I - M_h)` of multiplication by `h` on
/// `R[T]/(q)` in the monomial basis, expanded without divisions.
///
/// `q` must be monic; the result is monic of degree `deg q`.
pub fn mulmat_charpoly<R: Ring>(
    ring: &R,
    h: &Poly<R::Elem>,
    q: &Poly<R::Elem>,
) -> Result<Poly<R::Elem>, OracleError> {
    let polys = PolyRing::new(ring.clone());
    let d = match q.degree() {
        Some(d) if d >= 1 && polys.is_monic(q) => d,
        _ => return Err(OracleError::BadModulus),
    };
    if d > MAX_MULMAT_DEGREE {
        return Err(OracleError::SizeGuard(format!("degree {d}")));
    }
    let matrix = multiplication_matrix(ring, h, q);
    let in_s = PolyRing::new(ring.clone());
    let shifted: Vec<Vec<Poly<R::Elem>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let diag = if i == j { ring.one() } else { ring.zero() };
                    in_s.from_coeffs(vec![ring.neg(&matrix[i][j]), diag])
                })
                .collect()
        })
        .collect();
    Ok(determinant(&in_s, &shifted))
}

/// Column `j` holds the coordinates of `h T^j mod q`.
pub fn multiplication_matrix<R: Ring>(
    ring: &R,
    h: &Poly<R::Elem>,
    q: &Poly<R::Elem>,
) -> Vec<Vec<R::Elem>> {
    let polys = PolyRing::new(ring.clone());
    let d = q.degree().expect("nonzero modulus");
    let mut column = polys.rem(h, q);
    let mut matrix = vec![vec![ring.zero(); d]; d];
    for j in 0..d {
        for (i, row) in matrix.iter_mut().enumerate() {
            row[j] = polys.coeff_or_zero(&column, i);
        }
        column = polys.rem(&polys.mul(&column, &polys.x()), q);
    }
    matrix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slp::parse_system;

    #[test]
    fn companion_matrix() {
        let f = PrimeField::new(101);
        let polys = PolyRing::new(f);
        let q = polys.from_ints(&[-1, 0, 1]);
        let chi = mulmat_charpoly(&f, &polys.x(), &q).unwrap();
        assert_eq!(chi, polys.from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn guard_rejects_large_moduli() {
        let f = PrimeField::new(101);
        let polys = PolyRing::new(f);
        let q = polys.monomial(1, 9);
        assert!(matches!(
            mulmat_charpoly(&f, &polys.x(), &q),
            Err(OracleError::SizeGuard(_))
        ));
    }

    #[test]
    fn fiber_of_a_line() {
        let program = parse_system("vars x, y; x + y - 1;").unwrap();
        let change = AffineChange::identity(2);
        let pts = brute_force_fiber(&program, &change, &[BigInt::from(3)], 1, 5).unwrap();
        assert_eq!(pts, vec![vec![3, 3]]);
    }
}
