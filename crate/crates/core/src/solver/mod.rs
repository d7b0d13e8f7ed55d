//! The staged modular solver: first stage, curve lifting by Global Newton
//! iteration, and intersection by resultants with per-factor recovery of the
//! parametrization.

mod intersect;
mod newton;
mod pipeline;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffpoly::{AlgebraError, Poly, PolyRing, QuotientRing};
use crate::ring::{LocalRing, Ring};
use crate::slp::{AffineChange, SlpError};

pub use intersect::{intersect_minimal_poly, intersect_parametrization, resultant_by_interpolation};
pub use newton::{lift_curve, newton_step, residual_vanishes, LiftIteration};
pub use pipeline::{first_stage, solve_mod_p, specialize_curve, ModularSolution, ModularSolver};

/// Whether the parametrizations of a representation are `W_j` with
/// `Q' Y_j = W_j` or `V_j` with `Y_j = V_j`, both modulo `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamForm {
    Kronecker,
    Univariate,
}

/// A zero-dimensional fiber described by the minimal polynomial of a
/// primitive coordinate and parametrizations of the remaining unknowns.
///
/// At stage `s` of an `n`-variable system the coordinates are
/// `Y = change * X`; the first `n - s` of them are fixed to the lifting
/// point, `Y_{n-s+1}` is primitive and `params[k]` belongs to
/// `Y_{n-s+2+k}` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct FiberRepresentation<E> {
    pub stage: usize,
    pub change: AffineChange,
    /// All `n - 1` lifting-point coordinates; only the first `n - stage`
    /// are fixed at this stage.
    pub lifting_point: Vec<BigInt>,
    pub minimal_poly: Poly<E>,
    pub params: Vec<Poly<E>>,
    pub form: ParamForm,
}

impl<E: Clone> FiberRepresentation<E> {
    pub fn n_vars(&self) -> usize {
        self.change.dim()
    }

    /// 0-based index of the primitive coordinate.
    pub fn primitive_index(&self) -> usize {
        self.n_vars() - self.stage
    }

    /// Lifting-point coordinates fixed at this stage.
    pub fn fixed_point(&self) -> &[BigInt] {
        &self.lifting_point[..self.n_vars() - self.stage]
    }

    pub fn degree(&self) -> usize {
        self.minimal_poly.degree().unwrap_or(0)
    }

    /// Same fiber data with coefficients mapped into another ring.
    pub fn map_into<R: Ring>(&self, target: &R, f: impl Fn(&E) -> R::Elem) -> FiberRepresentation<R::Elem> {
        let polys = PolyRing::new(target.clone());
        let map_poly = |p: &Poly<E>| polys.from_coeffs(p.coeffs().iter().map(&f).collect());
        FiberRepresentation {
            stage: self.stage,
            change: self.change.clone(),
            lifting_point: self.lifting_point.clone(),
            minimal_poly: map_poly(&self.minimal_poly),
            params: self.params.iter().map(map_poly).collect(),
            form: self.form,
        }
    }

    /// Converts to univariate form over `ring`; fails when `Q'` is not
    /// invertible modulo `Q`.
    pub fn to_univariate<R>(&self, ring: &R) -> Result<Self, AlgebraError>
    where
        R: LocalRing<Elem = E>,
    {
        if self.form == ParamForm::Univariate {
            return Ok(self.clone());
        }
        let params = to_univariate(ring, &self.minimal_poly, &self.params)?;
        Ok(FiberRepresentation {
            params,
            form: ParamForm::Univariate,
            ..self.clone()
        })
    }

    pub fn to_kronecker<R>(&self, ring: &R) -> Self
    where
        R: LocalRing<Elem = E>,
    {
        if self.form == ParamForm::Kronecker {
            return self.clone();
        }
        let params = to_kronecker(ring, &self.minimal_poly, &self.params);
        FiberRepresentation {
            params,
            form: ParamForm::Kronecker,
            ..self.clone()
        }
    }
}

/// `V_j = Q'^{-1} W_j mod Q`.
pub fn to_univariate<R: LocalRing>(
    ring: &R,
    q: &Poly<R::Elem>,
    ws: &[Poly<R::Elem>],
) -> Result<Vec<Poly<R::Elem>>, AlgebraError> {
    if ws.is_empty() {
        return Ok(Vec::new());
    }
    let a = QuotientRing::new(ring.clone(), q.clone());
    let dq = a.reduce(&a.polys.derivative(q));
    let inv = a.inv(&dq).ok_or(AlgebraError::NotInvertible)?;
    Ok(ws.iter().map(|w| a.mul(&inv, &a.reduce(w))).collect())
}

/// `W_j = Q' V_j mod Q`.
pub fn to_kronecker<R: LocalRing>(
    ring: &R,
    q: &Poly<R::Elem>,
    vs: &[Poly<R::Elem>],
) -> Vec<Poly<R::Elem>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let a = QuotientRing::new(ring.clone(), q.clone());
    let dq = a.reduce(&a.polys.derivative(q));
    vs.iter().map(|v| a.mul(&dq, &a.reduce(v))).collect()
}

/// The lifting curve at stage `s`: coordinate `Y_{n-s}` is freed as
/// `base_value + t` and every coefficient in `T` is a polynomial in `t`
/// truncated below `t^precision`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRepresentation<E> {
    pub stage: usize,
    pub base_value: BigInt,
    pub precision: usize,
    pub minimal_poly: Poly<Poly<E>>,
    /// Kronecker parametrizations `W_j(t, T)`.
    pub params: Vec<Poly<Poly<E>>>,
}

impl<E> CurveRepresentation<E> {
    /// Largest power of `t` present in any coefficient.
    pub fn t_degree(&self) -> usize {
        std::iter::once(&self.minimal_poly)
            .chain(&self.params)
            .flat_map(|p| p.coeffs())
            .map(|c| c.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }
}

/// Reason a modular computation was rejected as unlucky.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Error)]
pub enum UnluckyCause {
    #[error("coordinate change is singular modulo the prime")]
    SingularChange,
    #[error("leading coefficient of the first equation vanishes")]
    DegreeDrop,
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("Jacobian matrix is not invertible")]
    JacobianNotInvertible,
    #[error("lifted curve has a nonzero coefficient beyond its degree bound")]
    GuardNonzero,
    #[error("Newton residual failed to vanish")]
    PrecisionStall,
    #[error("not enough usable interpolation nodes")]
    NodeExhaustion,
    #[error("resultant vanishes at every node")]
    ZeroResultant,
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error("gcd does not isolate a single root")]
    NonlinearGcd,
    #[error("degree exceeds the Bezout bound")]
    BudgetExceeded,
    #[error("residual check failed")]
    ResidualNonzero,
    #[error("rational reconstruction did not stabilize within the precision cap")]
    NoReconstruction,
    #[error("verification modulo a fresh prime failed")]
    VerificationFailed,
}

impl UnluckyCause {
    /// Causes that point at the input rather than at the random choices
    /// when they recur at the same stage on every attempt.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            UnluckyCause::NotSquarefree
                | UnluckyCause::ZeroResultant
                | UnluckyCause::EmptyIntersection
                | UnluckyCause::BudgetExceeded
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("unlucky choice at stage {stage}: {cause}")]
    Unlucky { stage: usize, cause: UnluckyCause },
    #[error(transparent)]
    Program(#[from] SlpError),
}

impl SolveError {
    pub(crate) fn unlucky(stage: usize, cause: UnluckyCause) -> Self {
        SolveError::Unlucky { stage, cause }
    }
}

/// Embeds integer coordinates into a ring.
pub fn embed_point<R: Ring>(ring: &R, point: &[BigInt]) -> Vec<R::Elem> {
    point.iter().map(|x| ring.from_int(x)).collect()
}

/// Coordinates `(fixed..., T, params(T)...)` in `R[T]/(Q)`, with univariate
/// parametrizations.
pub fn fiber_point<R: LocalRing>(
    algebra: &QuotientRing<R>,
    fixed: &[R::Elem],
    params: &[Poly<R::Elem>],
) -> Vec<Poly<R::Elem>> {
    let polys: &PolyRing<R> = &algebra.polys;
    let mut point: Vec<Poly<R::Elem>> = fixed.iter().map(|c| polys.constant(c.clone())).collect();
    point.push(algebra.generator());
    point.extend(params.iter().map(|v| algebra.reduce(v)));
    point
}
