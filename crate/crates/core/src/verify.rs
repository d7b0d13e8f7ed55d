//! Runtime certification of representations: residual checks and the
//! per-stage conditions that a lucky prime and lucky random choices
//! guarantee.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ffpoly::{determinant, IntegerRing, Poly, PolyRing, PrimeField, QuotientRing, RationalField};
use crate::primes::random_prime_in_range;
use crate::ring::{Field, FractionRing, LocalRing, Ring};
use crate::slp::{SlpError, StraightLineProgram};
use crate::solver::{embed_point, fiber_point, FiberRepresentation, ParamForm, UnluckyCause};

/// One failed clause of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum CheckFailure {
    NotMonic,
    NotSquarefree,
    DegreeAboveBudget { degree: usize, budget: usize },
    SingularJacobian,
    /// Equation numbers are 1-based.
    Residual { equation: usize },
    WrongParamCount { expected: usize, found: usize },
    /// The coordinate change cannot be applied over the checking ring.
    SingularChange,
}

impl CheckFailure {
    pub fn cause(&self) -> UnluckyCause {
        match self {
            CheckFailure::NotMonic | CheckFailure::Residual { .. } => UnluckyCause::ResidualNonzero,
            CheckFailure::WrongParamCount { .. } => UnluckyCause::ResidualNonzero,
            CheckFailure::NotSquarefree => UnluckyCause::NotSquarefree,
            CheckFailure::DegreeAboveBudget { .. } => UnluckyCause::BudgetExceeded,
            CheckFailure::SingularJacobian => UnluckyCause::JacobianNotInvertible,
            CheckFailure::SingularChange => UnluckyCause::SingularChange,
        }
    }
}

/// Outcome of a check; it passes when no clause failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub failures: Vec<CheckFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_cause(&self) -> Option<UnluckyCause> {
        self.failures.first().map(CheckFailure::cause)
    }
}

/// Stage invariants over a field: degree within the Bezout `budget`,
/// squarefree monic `Q`, invertible Jacobian of `F_1..F_s` with respect to
/// `Y_{n-s+1}..Y_n` modulo `Q`, and vanishing residual.
///
/// `program` is the composed program in the `Y` coordinates.
pub fn check_stage<F: Field>(
    program: &StraightLineProgram,
    field: &F,
    rep: &FiberRepresentation<F::Elem>,
    budget: usize,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let polys = PolyRing::new(field.clone());
    let q = &rep.minimal_poly;
    if rep.degree() > budget {
        report.failures.push(CheckFailure::DegreeAboveBudget {
            degree: rep.degree(),
            budget,
        });
    }
    if !polys.is_monic(q) || rep.degree() == 0 {
        report.failures.push(CheckFailure::NotMonic);
        return report;
    }
    if !polys.is_squarefree(q) {
        report.failures.push(CheckFailure::NotSquarefree);
        return report;
    }
    let Ok(rep) = rep.to_univariate(field) else {
        report.failures.push(CheckFailure::NotSquarefree);
        return report;
    };
    let n = program.n_vars();
    let s = rep.stage;
    let algebra = QuotientRing::new(field.clone(), q.clone());
    let fixed = embed_point(field, rep.fixed_point());
    let point = fiber_point(&algebra, &fixed, &rep.params);
    let wrt: Vec<usize> = (n - s..n).collect();
    match program.evaluate_jacobian(&algebra, &point, s, &wrt) {
        Err(_) => report.failures.push(CheckFailure::SingularChange),
        Ok((values, jacobian)) => {
            if algebra.inv(&determinant(&algebra, &jacobian)).is_none() {
                report.failures.push(CheckFailure::SingularJacobian);
            }
            for (i, v) in values.iter().enumerate() {
                if !v.is_zero() {
                    report.failures.push(CheckFailure::Residual { equation: i + 1 });
                }
            }
        }
    }
    report
}

fn shape_failure<R: LocalRing>(
    program: &StraightLineProgram,
    polys: &PolyRing<R>,
    rep: &FiberRepresentation<R::Elem>,
) -> Option<CheckFailure> {
    let n = program.n_vars();
    let s = rep.stage;
    if s == 0 || s > program.n_outputs() || s > n {
        return Some(CheckFailure::WrongParamCount {
            expected: program.n_outputs(),
            found: s,
        });
    }
    if rep.params.len() != s - 1 {
        return Some(CheckFailure::WrongParamCount {
            expected: s - 1,
            found: rep.params.len(),
        });
    }
    if !polys.is_monic(&rep.minimal_poly) || rep.degree() == 0 {
        return Some(CheckFailure::NotMonic);
    }
    None
}

/// Residual of a representation over a local ring: `Q` monic and the first
/// `stage` equations vanish at the parametrization modulo `Q`.
///
/// Kronecker parametrizations are substituted as fractions `W_j / Q'`, so
/// no inverse of `Q'` is needed; this is sound whenever `Q'` is a unit
/// modulo `Q`, which the squarefreeness clause of the callers establishes.
/// `program` is the input program; it is composed with `rep.change` here.
pub fn residual_report<R: LocalRing>(
    program: &StraightLineProgram,
    ring: &R,
    rep: &FiberRepresentation<R::Elem>,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let polys = PolyRing::new(ring.clone());
    if let Some(failure) = shape_failure(program, &polys, rep) {
        report.failures.push(failure);
        return report;
    }
    let s = rep.stage;
    let composed = match program.compose_affine(&rep.change) {
        Ok(p) => p,
        Err(_) => {
            report.failures.push(CheckFailure::SingularChange);
            return report;
        }
    };
    let algebra = QuotientRing::new(ring.clone(), rep.minimal_poly.clone());
    let fixed = embed_point(ring, rep.fixed_point());
    let which: Vec<usize> = (0..s).collect();
    let values: Result<Vec<bool>, SlpError> = match rep.form {
        ParamForm::Univariate => {
            let point = fiber_point(&algebra, &fixed, &rep.params);
            composed
                .evaluate_outputs(&algebra, &point, &which)
                .map(|v| v.iter().map(|x| x.is_zero()).collect())
        }
        ParamForm::Kronecker => {
            let dq = algebra.reduce(&polys.derivative(&rep.minimal_poly));
            let fractions = FractionRing::new(algebra.clone(), dq);
            let mut point: Vec<_> = fixed
                .iter()
                .map(|c| (polys.constant(c.clone()), 0))
                .collect();
            point.push((algebra.generator(), 0));
            point.extend(rep.params.iter().map(|w| (algebra.reduce(w), 1)));
            composed
                .evaluate_outputs(&fractions, &point, &which)
                .map(|v| v.iter().map(|x| x.0.is_zero()).collect())
        }
    };
    match values {
        Err(_) => report.failures.push(CheckFailure::SingularChange),
        Ok(zero) => {
            for (i, ok) in zero.iter().enumerate() {
                if !ok {
                    report.failures.push(CheckFailure::Residual { equation: i + 1 });
                }
            }
        }
    }
    report
}

/// Full check over a field: monic, squarefree and vanishing residual.
pub fn check_representation<F: Field>(
    program: &StraightLineProgram,
    field: &F,
    rep: &FiberRepresentation<F::Elem>,
) -> VerificationReport {
    let polys = PolyRing::new(field.clone());
    if rep.degree() > 0 && !polys.is_squarefree(&rep.minimal_poly) {
        return VerificationReport {
            failures: vec![CheckFailure::NotSquarefree],
        };
    }
    residual_report(program, field, rep)
}

/// Image of a rational number in `F_p`, or `None` if `p` divides the denominator.
pub fn reduce_rational(field: &PrimeField, x: &BigRational) -> Option<u64> {
    let den = field.from_int(x.denom());
    let inv = field.inv(&den)?;
    Some(field.mul(&field.from_int(x.numer()), &inv))
}

/// Reduces a rational representation modulo `p`; `None` when a denominator
/// or the determinant of the coordinate change vanishes there.
pub fn reduce_representation(
    rep: &FiberRepresentation<BigRational>,
    p: u64,
) -> Option<FiberRepresentation<u64>> {
    let field = PrimeField::new(p);
    let all_coeffs = std::iter::once(&rep.minimal_poly)
        .chain(&rep.params)
        .flat_map(|q| q.coeffs());
    for c in all_coeffs {
        reduce_rational(&field, c)?;
    }
    if field.is_zero(&field.from_int(rep.change.det())) {
        return None;
    }
    Some(rep.map_into(&field, |c| reduce_rational(&field, c).unwrap()))
}

/// Exact check over the rationals.
///
/// Squarefreeness is certified by finding a prime modulo which `Q` stays
/// squarefree (its degree is preserved since `Q` is monic); Euclid over the
/// rationals is the fallback.
pub fn check_rational_exact<G: Rng + ?Sized>(
    program: &StraightLineProgram,
    rep: &FiberRepresentation<BigRational>,
    rng: &mut G,
) -> VerificationReport {
    if !rational_squarefree(rep, rng) {
        return VerificationReport {
            failures: vec![CheckFailure::NotSquarefree],
        };
    }
    let mut report = VerificationReport::default();
    if let Some(failure) = shape_failure(program, &PolyRing::new(RationalField), rep) {
        report.failures.push(failure);
        return report;
    }
    match integer_residuals(program, rep) {
        Err(_) => report.failures.push(CheckFailure::SingularChange),
        Ok(zero) => {
            for (i, ok) in zero.iter().enumerate() {
                if !ok {
                    report.failures.push(CheckFailure::Residual { equation: i + 1 });
                }
            }
        }
    }
    report
}

/// Evaluates the first `stage` equations at a rational representation using
/// integer arithmetic only.
///
/// With `b` a common denominator of `Q`, `U = b T` has the monic integer
/// minimal polynomial `b^d Q(U / b)`. Every coordinate becomes an integer
/// polynomial in `U` over one common denominator, and the original
/// program is evaluated at `X = adj(lambda) Y / det(lambda)` in the ring of
/// fractions of `Z[U]/(Q(U))`.
fn integer_residuals(
    program: &StraightLineProgram,
    rep: &FiberRepresentation<BigRational>,
) -> Result<Vec<bool>, SlpError> {
    let n = rep.n_vars();
    let s = rep.stage;
    let d = rep.degree();
    let zz = PolyRing::new(IntegerRing);
    let qq = PolyRing::new(RationalField);
    let params: Vec<_> = rep.params.iter().map(|w| qq.rem(w, &rep.minimal_poly)).collect();
    let q = rep.minimal_poly.coeffs();
    let b = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let powers: Vec<BigInt> = (0..=d).map(|k| num_traits::pow(b.clone(), k)).collect();
    let q_int: Vec<BigInt> = (0..=d)
        .map(|i| (&q[i] * BigRational::from_integer(powers[d - i].clone())).to_integer())
        .collect();
    let q_int = zz.from_coeffs(q_int);
    let algebra = IntegerQuotient {
        polys: zz.clone(),
        modulus: q_int.clone(),
    };

    // params as rational polynomials in U over the common factor `g`
    let (g, scaled): (Poly<BigInt>, Vec<Vec<BigRational>>) = match rep.form {
        ParamForm::Kronecker => (
            zz.derivative(&q_int),
            params
                .iter()
                .map(|w| {
                    w.coeffs()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c * BigRational::from_integer(powers[d - 1 - i].clone()))
                        .collect()
                })
                .collect(),
        ),
        ParamForm::Univariate => (
            zz.one(),
            params
                .iter()
                .map(|v| {
                    v.coeffs()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c / BigRational::from_integer(powers[i].clone()))
                        .collect()
                })
                .collect(),
        ),
    };
    let c = scaled
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let to_int = |coeffs: &[BigRational]| {
        zz.from_coeffs(
            coeffs
                .iter()
                .map(|x| (x * BigRational::from_integer(c.clone())).to_integer())
                .collect(),
        )
    };

    // Y_j = num_j / e with e = b c g
    let e = algebra.reduce(&zz.scale(&g, &(&b * &c)));
    let mut y_nums: Vec<Poly<BigInt>> = rep
        .fixed_point()
        .iter()
        .map(|y| zz.scale(&e, y))
        .collect();
    y_nums.push(algebra.mul(&zz.scale(&g, &c), &zz.x()));
    y_nums.extend(scaled.iter().map(|v| algebra.reduce(&zz.scale(&to_int(v), &b))));
    debug_assert_eq!(y_nums.len(), n);

    let det = rep.change.det();
    let fractions = IntegerFractions {
        den: zz.scale(&e, det),
        base: algebra,
    };
    let adj = rep.change.adjugate();
    let point: Vec<_> = (0..n)
        .map(|i| {
            let num = (0..n).fold(zz.zero(), |acc, j| {
                zz.add(&acc, &zz.scale(&y_nums[j], &adj[i][j]))
            });
            (num, 1, BigInt::one())
        })
        .collect();
    let which: Vec<usize> = (0..s).collect();
    let values = program.evaluate_outputs(&fractions, &point, &which)?;
    Ok(values.iter().map(|v| v.0.is_zero()).collect())
}

/// `Z[U]/(Q)` for a monic integer `Q`.
#[derive(Clone, Debug)]
struct IntegerQuotient {
    polys: PolyRing<IntegerRing>,
    modulus: Poly<BigInt>,
}

impl IntegerQuotient {
    fn reduce(&self, a: &Poly<BigInt>) -> Poly<BigInt> {
        self.polys.rem(a, &self.modulus)
    }
}

impl Ring for IntegerQuotient {
    type Elem = Poly<BigInt>;

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
        self.polys.mul_mod(a, b, &self.modulus)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() != 1 {
            return None;
        }
        IntegerRing.inv(&a.coeffs()[0]).map(|u| self.polys.constant(u))
    }
}

/// Elements `num / (den^k * scale)` for a fixed non-zero-divisor `den` and a
/// positive integer `scale`, which only grows through inverted constants.
#[derive(Clone, Debug)]
struct IntegerFractions {
    base: IntegerQuotient,
    den: Poly<BigInt>,
}

impl IntegerFractions {
    fn align(&self, a: &(Poly<BigInt>, u32, BigInt), k: u32, scale: &BigInt) -> Poly<BigInt> {
        let polys = &self.base.polys;
        let mut num = polys.scale(&a.0, &(scale / &a.2));
        if a.1 < k {
            num = self.base.mul(&num, &self.base.pow(&self.den, (k - a.1) as u64));
        }
        num
    }

    fn combine(
        &self,
        a: &(Poly<BigInt>, u32, BigInt),
        b: &(Poly<BigInt>, u32, BigInt),
        negate: bool,
    ) -> (Poly<BigInt>, u32, BigInt) {
        let k = a.1.max(b.1);
        let scale = a.2.lcm(&b.2);
        let x = self.align(a, k, &scale);
        let y = self.align(b, k, &scale);
        let polys = &self.base.polys;
        let num = if negate { polys.sub(&x, &y) } else { polys.add(&x, &y) };
        (num, k, scale)
    }
}

impl Ring for IntegerFractions {
    type Elem = (Poly<BigInt>, u32, BigInt);

    fn zero(&self) -> Self::Elem {
        (Poly::zero(), 0, BigInt::one())
    }

    fn one(&self) -> Self::Elem {
        (self.base.one(), 0, BigInt::one())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        (self.base.from_int(n), 0, BigInt::one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.combine(a, b, false)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.combine(a, b, true)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.mul(&a.0, &b.0), a.1 + b.1, &a.2 * &b.2)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.0.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.1 != 0 || a.0.len() != 1 {
            return None;
        }
        let c = &a.0.coeffs()[0];
        let sign = c.signum();
        Some((self.base.polys.constant(&a.2 * sign), 0, c.abs()))
    }
}

fn rational_squarefree<G: Rng + ?Sized>(rep: &FiberRepresentation<BigRational>, rng: &mut G) -> bool {
    let low = BigUint::from(1u64 << 59);
    let high = BigUint::from(1u64 << 62);
    for _ in 0..4 {
        let p = random_prime_in_range(&low, &high, rng).to_u64().unwrap();
        if let Some(reduced) = reduce_representation(rep, p) {
            let polys = PolyRing::new(PrimeField::new(p));
            if polys.is_squarefree(&reduced.minimal_poly) {
                return true;
            }
        }
    }
    PolyRing::new(RationalField).is_squarefree(&rep.minimal_poly)
}

/// Outcome of checking a rational representation modulo one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub prime: String,
    pub report: VerificationReport,
}

/// Monte Carlo check of a rational representation modulo `count` fresh
/// primes from `[2^59, 2^62)`. Primes dividing a denominator, or modulo
/// which `Q` is not squarefree, are skipped in favor of new ones.
pub fn check_fresh_primes<G: Rng + ?Sized>(
    program: &StraightLineProgram,
    rep: &FiberRepresentation<BigRational>,
    count: usize,
    rng: &mut G,
) -> Vec<PrimeCheck> {
    let low = BigUint::from(1u64 << 59);
    let high = BigUint::from(1u64 << 62);
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    while out.len() < count {
        let p = random_prime_in_range(&low, &high, rng).to_u64().unwrap();
        let reduced = reduce_representation(rep, p).filter(|r| {
            PolyRing::new(PrimeField::new(p)).is_squarefree(&r.minimal_poly)
        });
        match reduced {
            Some(r) => out.push(PrimeCheck {
                prime: p.to_string(),
                report: residual_report(program, &PrimeField::new(p), &r),
            }),
            None if skipped < 16 => skipped += 1,
            None => out.push(PrimeCheck {
                prime: p.to_string(),
                report: VerificationReport {
                    failures: vec![CheckFailure::NotSquarefree],
                },
            }),
        }
    }
    out
}
