use crate::ffpoly::{solve_linear, Poly, PolyRing, QuotientRing, SeriesRing};
use crate::ring::{Field, LocalRing, PrecisionRing, Ring};
use crate::slp::StraightLineProgram;

use super::{
    fiber_point, to_kronecker, CurveRepresentation, FiberRepresentation, ParamForm, SolveError,
    UnluckyCause,
};

/// One Global Newton step for a univariate representation over a local
/// ring `R`: the first `n - fixed.len()` equations are solved for the
/// unknown coordinates in `R[T]/(Q)`, and `Q` and the parametrizations are
/// corrected for the moved primitive coordinate.
///
/// Inputs valid modulo `m^k` come out valid modulo `m^{2k}`, provided the
/// ring carries that precision. Since the residual is already divisible by
/// `m^k`, the Jacobian is only evaluated at half the ring's precision.
#[allow(clippy::type_complexity)]
pub fn newton_step<R: PrecisionRing>(
    program: &StraightLineProgram,
    ring: &R,
    fixed: &[R::Elem],
    q: &Poly<R::Elem>,
    params: &[Poly<R::Elem>],
) -> Result<(Poly<R::Elem>, Vec<Poly<R::Elem>>), UnluckyCause> {
    let n = program.n_vars();
    let s = n - fixed.len();
    let algebra = QuotientRing::new(ring.clone(), q.clone());
    let polys = &algebra.polys;
    let point = fiber_point(&algebra, fixed, params);
    let which: Vec<usize> = (0..s).collect();
    let values = program
        .evaluate_outputs(&algebra, &point, &which)
        .map_err(|_| UnluckyCause::SingularChange)?;

    let half = ring.with_precision(ring.precision().div_ceil(2));
    let cut = |p: &Poly<R::Elem>| polys.map_into(p, &PolyRing::new(half.clone()), |c| half.truncate(c));
    let half_algebra = QuotientRing::new(half.clone(), cut(q));
    let half_fixed: Vec<_> = fixed.iter().map(|c| half.truncate(c)).collect();
    let half_params: Vec<_> = params.iter().map(cut).collect();
    let half_point = fiber_point(&half_algebra, &half_fixed, &half_params);
    let wrt: Vec<usize> = (n - s..n).collect();
    let (_, jacobian) = program
        .evaluate_jacobian(&half_algebra, &half_point, s, &wrt)
        .map_err(|_| UnluckyCause::SingularChange)?;

    let delta = solve_linear(&algebra, jacobian, values)
        .map_err(|_| UnluckyCause::JacobianNotInvertible)?;
    // the primitive coordinate moves from T to T + shift
    let shift = polys.neg(&delta[0]);
    let dq = polys.derivative(q);
    let new_q = polys.sub(q, &algebra.mul(&dq, &shift));
    let new_params = (1..s)
        .map(|j| {
            let v = polys.sub(&point[n - s + j], &delta[j]);
            let correction = algebra.mul(&polys.derivative(&v), &shift);
            polys.sub(&v, &correction)
        })
        .collect();
    Ok((new_q, new_params))
}

/// Whether the first `n - fixed.len()` equations vanish at the univariate
/// parametrization modulo `Q`.
pub fn residual_vanishes<R: LocalRing>(
    program: &StraightLineProgram,
    ring: &R,
    fixed: &[R::Elem],
    q: &Poly<R::Elem>,
    params: &[Poly<R::Elem>],
) -> bool {
    let s = program.n_vars() - fixed.len();
    let algebra = QuotientRing::new(ring.clone(), q.clone());
    let point = fiber_point(&algebra, fixed, params);
    let which: Vec<usize> = (0..s).collect();
    match program.evaluate_outputs(&algebra, &point, &which) {
        Ok(values) => values.iter().all(|v| v.is_zero()),
        Err(_) => false,
    }
}

/// Record of one doubling of the curve precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftIteration {
    pub precision: usize,
    pub residual_vanishes: bool,
}

/// Lifts a univariate stage-`s` fiber to the curve obtained by freeing
/// `Y_{n-s} = p_{n-s} + t`, by Newton iteration with doubling precision in
/// `t` until `t^precision`, then converts to Kronecker form.
///
/// `program` must be the composed program in the `Y` coordinates.
pub fn lift_curve<F: Field>(
    program: &StraightLineProgram,
    field: &F,
    fiber: &FiberRepresentation<F::Elem>,
    precision: usize,
) -> Result<(CurveRepresentation<F::Elem>, Vec<LiftIteration>), SolveError> {
    assert_eq!(fiber.form, ParamForm::Univariate, "lifting needs a univariate fiber");
    let stage = fiber.stage;
    let n = fiber.n_vars();
    assert!(stage < n, "no coordinate left to free");
    let base_value = fiber.lifting_point[n - stage - 1].clone();
    let mut series = SeriesRing::new(field.clone(), precision.max(1));
    let embed = |p: &Poly<F::Elem>, s: &SeriesRing<F>| -> Poly<Poly<F::Elem>> {
        PolyRing::new(s.clone())
            .from_coeffs(p.coeffs().iter().map(|c| s.constant(c.clone())).collect())
    };
    let mut q = embed(&fiber.minimal_poly, &series);
    let mut params: Vec<_> = fiber.params.iter().map(|v| embed(v, &series)).collect();
    let mut trace = Vec::new();
    let mut reached = 1;
    while reached < precision {
        reached = (2 * reached).min(precision);
        series = series.with_precision(reached);
        let fixed = curve_fixed_point(&series, &fiber.lifting_point[..n - stage - 1], &base_value);
        let (q2, p2) = newton_step(program, &series, &fixed, &q, &params)
            .map_err(|cause| SolveError::unlucky(stage, cause))?;
        q = q2;
        params = p2;
        let ok = residual_vanishes(program, &series, &fixed, &q, &params);
        trace.push(LiftIteration {
            precision: reached,
            residual_vanishes: ok,
        });
        if !ok {
            return Err(SolveError::unlucky(stage, UnluckyCause::PrecisionStall));
        }
    }
    let params = to_kronecker(&series, &q, &params);
    Ok((
        CurveRepresentation {
            stage,
            base_value,
            precision,
            minimal_poly: q,
            params,
        },
        trace,
    ))
}

/// `(p_1, ..., p_{n-s-1}, p_{n-s} + t)` in the series ring.
fn curve_fixed_point<F: Field>(
    series: &SeriesRing<F>,
    prefix: &[num_bigint::BigInt],
    base_value: &num_bigint::BigInt,
) -> Vec<Poly<F::Elem>> {
    let mut point: Vec<_> = prefix.iter().map(|x| series.from_int(x)).collect();
    point.push(series.shifted_variable(series.field.from_int(base_value)));
    point
}
