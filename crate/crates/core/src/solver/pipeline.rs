use num_bigint::BigInt;
use rand::Rng;

use crate::ffpoly::{Poly, PolyRing, SeriesRing};
use crate::ring::{Field, PrimeFieldLike, Ring};
use crate::slp::{AffineChange, StraightLineProgram};
use crate::verify::check_stage;

use super::intersect::{intersect_minimal_poly, intersect_parametrization};
use super::newton::lift_curve;
use super::{
    embed_point, CurveRepresentation, FiberRepresentation, ParamForm, SolveError, UnluckyCause,
};

/// Inputs of one modular solve: the composed program over the prime field,
/// the coordinate change it was composed with and the lifting point.
#[derive(Clone, Debug)]
pub struct ModularSolver<'a, F> {
    pub field: F,
    /// The input program rewritten in the coordinates `Y = change * X`.
    pub program: &'a StraightLineProgram,
    pub change: &'a AffineChange,
    /// `p_1, ..., p_{n-1}`.
    pub lifting_point: &'a [BigInt],
}

/// Result of [`solve_mod_p`]: the final Kronecker representation and the
/// degree of the minimal polynomial at every stage.
#[derive(Clone, Debug)]
pub struct ModularSolution<E> {
    pub rep: FiberRepresentation<E>,
    pub stage_degrees: Vec<usize>,
}

/// `Q^1 = F_1(p_1, ..., p_{n-1}, T)` made monic.
pub fn first_stage<F: PrimeFieldLike>(
    solver: &ModularSolver<'_, F>,
) -> Result<FiberRepresentation<F::Elem>, UnluckyCause> {
    let program = solver.program;
    let polys = PolyRing::new(solver.field.clone());
    let mut point: Vec<_> = embed_point(&solver.field, solver.lifting_point)
        .into_iter()
        .map(|c| polys.constant(c))
        .collect();
    point.push(polys.x());
    let f = program
        .evaluate_outputs(&polys, &point, &[0])
        .map_err(|_| UnluckyCause::SingularChange)?
        .pop()
        .unwrap();
    if f.degree() != Some(program.degrees()[0] as usize) {
        return Err(UnluckyCause::DegreeDrop);
    }
    Ok(FiberRepresentation {
        stage: 1,
        change: solver.change.clone(),
        lifting_point: solver.lifting_point.to_vec(),
        minimal_poly: polys.monic(&f),
        params: Vec::new(),
        form: ParamForm::Univariate,
    })
}

/// Substitutes `Y_{n-s} = a`, i.e. `t = a - p_{n-s}`, into the curve, giving
/// the Kronecker pair `(Q(t, T), [W_j(t, T)])` over an algebra `L` containing `a`.
#[allow(clippy::type_complexity)]
pub fn specialize_curve<F: Field, L: Ring>(
    curve: &CurveRepresentation<F::Elem>,
    field: &F,
    algebra: &L,
    a: &L::Elem,
    embed: impl Fn(&F::Elem) -> L::Elem,
) -> (Poly<L::Elem>, Vec<Poly<L::Elem>>) {
    let series = PolyRing::new(field.clone());
    let target = PolyRing::new(algebra.clone());
    let t = algebra.sub(a, &embed(&field.from_int(&curve.base_value)));
    let specialize = |p: &Poly<Poly<F::Elem>>| {
        target.from_coeffs(
            p.coeffs()
                .iter()
                .map(|c| series.eval_in(c, algebra, &t, &embed))
                .collect(),
        )
    };
    (
        specialize(&curve.minimal_poly),
        curve.params.iter().map(specialize).collect(),
    )
}

fn truncate_curve<F: Field>(curve: CurveRepresentation<F::Elem>, field: &F, precision: usize)
    -> CurveRepresentation<F::Elem> {
    let series = SeriesRing::new(field.clone(), precision);
    let polys = PolyRing::new(series.clone());
    let cut = |p: &Poly<Poly<F::Elem>>| {
        polys.from_coeffs(p.coeffs().iter().map(|c| crate::ring::PrecisionRing::truncate(&series, c)).collect())
    };
    CurveRepresentation {
        minimal_poly: cut(&curve.minimal_poly),
        params: curve.params.iter().map(cut).collect(),
        precision,
        ..curve
    }
}

impl<'a, F: PrimeFieldLike> ModularSolver<'a, F> {
    pub fn new(
        field: F,
        program: &'a StraightLineProgram,
        change: &'a AffineChange,
        lifting_point: &'a [BigInt],
    ) -> Self {
        assert_eq!(lifting_point.len() + 1, program.n_vars());
        ModularSolver {
            field,
            program,
            change,
            lifting_point,
        }
    }

    /// Bezout bound `d_1 * ... * d_s`.
    pub fn bezout(&self, stage: usize) -> usize {
        self.program.degrees()[..stage]
            .iter()
            .map(|&d| d as usize)
            .product()
    }

    /// Lifts a stage-`s` fiber to its curve, exact up to `t^{deg Q}`, with
    /// one guard coefficient checked to vanish.
    pub fn lift_fiber(
        &self,
        fiber: &FiberRepresentation<F::Elem>,
    ) -> Result<CurveRepresentation<F::Elem>, SolveError> {
        let delta = fiber.degree();
        let (curve, _) = lift_curve(self.program, &self.field, fiber, delta + 2)?;
        if curve.t_degree() > delta {
            return Err(SolveError::unlucky(fiber.stage, UnluckyCause::GuardNonzero));
        }
        Ok(truncate_curve(curve, &self.field, delta + 1))
    }

    pub fn solve<G: Rng + ?Sized>(
        &self,
        rng: &mut G,
    ) -> Result<ModularSolution<F::Elem>, SolveError> {
        let r = self.program.n_outputs();
        let mut fiber = first_stage(self).map_err(|c| SolveError::unlucky(1, c))?;
        self.validate(&fiber)?;
        let mut stage_degrees = vec![fiber.degree()];
        for s in 1..r {
            let curve = self.lift_fiber(&fiber)?;
            let q_next = intersect_minimal_poly(self, &curve, rng)
                .map_err(|c| SolveError::unlucky(s + 1, c))?;
            if q_next.degree().unwrap() > self.bezout(s + 1) {
                return Err(SolveError::unlucky(s + 1, UnluckyCause::BudgetExceeded));
            }
            fiber = intersect_parametrization(self, &curve, &q_next, rng)
                .map_err(|c| SolveError::unlucky(s + 1, c))?;
            self.validate(&fiber)?;
            stage_degrees.push(fiber.degree());
        }
        Ok(ModularSolution {
            rep: fiber.to_kronecker(&self.field),
            stage_degrees,
        })
    }

    fn validate(&self, fiber: &FiberRepresentation<F::Elem>) -> Result<(), SolveError> {
        let report = check_stage(self.program, &self.field, fiber, self.bezout(fiber.stage));
        match report.first_cause() {
            None => Ok(()),
            Some(cause) => Err(SolveError::unlucky(fiber.stage, cause)),
        }
    }
}

/// Runs the whole modular pipeline over `F_p`. The program is composed with
/// `change` here; callers holding a composed program can use
/// [`ModularSolver`] directly.
pub fn solve_mod_p<F: PrimeFieldLike, G: Rng + ?Sized>(
    field: F,
    program: &StraightLineProgram,
    change: &AffineChange,
    lifting_point: &[BigInt],
    rng: &mut G,
) -> Result<ModularSolution<F::Elem>, SolveError> {
    let composed = program.compose_affine(change)?;
    let det = field.from_int(change.det());
    if field.is_zero(&det) {
        return Err(SolveError::unlucky(1, UnluckyCause::SingularChange));
    }
    ModularSolver::new(field, &composed, change, lifting_point).solve(rng)
}
