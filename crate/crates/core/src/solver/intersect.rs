use num_bigint::BigInt;
use rand::Rng;

use crate::ffpoly::{factor_squarefree, ExtField, Poly, PolyRing, QuotientRing};
use crate::ring::{FiniteField, PrimeFieldLike, Ring};

use super::pipeline::{specialize_curve, ModularSolver};
use super::{
    embed_point, fiber_point, to_univariate, CurveRepresentation, FiberRepresentation, ParamForm,
    UnluckyCause,
};

/// Interpolates a polynomial of degree at most `degree_bound` from its
/// values at random distinct nodes.
///
/// `value_at` returns `None` for nodes that must be skipped; at most four
/// times the required number of nodes are tried.
pub fn resultant_by_interpolation<F: FiniteField, G: Rng + ?Sized>(
    field: &F,
    degree_bound: usize,
    rng: &mut G,
    mut value_at: impl FnMut(&F::Elem) -> Option<F::Elem>,
) -> Result<Poly<F::Elem>, UnluckyCause> {
    let needed = degree_bound + 1;
    let budget = 4 * needed;
    let order = field.order();
    let mut tried: Vec<F::Elem> = Vec::with_capacity(needed);
    let mut points = Vec::with_capacity(needed);
    while points.len() < needed {
        if tried.len() >= budget || num_bigint::BigUint::from(tried.len()) >= order {
            return Err(UnluckyCause::NodeExhaustion);
        }
        let a = field.random(rng);
        if tried.contains(&a) {
            continue;
        }
        tried.push(a.clone());
        if let Some(v) = value_at(&a) {
            points.push((a, v));
        }
    }
    let polys = PolyRing::new(field.clone());
    Ok(polys
        .interpolate(&points)
        .expect("nodes are distinct by construction"))
}

/// Minimal polynomial of `Y_{n-s}` on the intersection of the stage-`s`
/// lifting curve with the next equation, as the monic resultant
/// `Res_T(h, Q)` interpolated over specializations of the free coordinate.
pub fn intersect_minimal_poly<F: PrimeFieldLike, G: Rng + ?Sized>(
    solver: &ModularSolver<'_, F>,
    curve: &CurveRepresentation<F::Elem>,
    rng: &mut G,
) -> Result<Poly<F::Elem>, UnluckyCause> {
    let field = &solver.field;
    let program = solver.program;
    let s = curve.stage;
    let n = program.n_vars();
    let delta = curve.minimal_poly.degree().unwrap();
    let degree_bound = program.degrees()[s] as usize * delta;
    let prefix = embed_point(field, &solver.lifting_point[..n - s - 1]);
    let polys = PolyRing::new(field.clone());
    let interpolated = resultant_by_interpolation(field, degree_bound, rng, |a| {
        let (q_a, w_a) = specialize_curve(curve, field, field, a, |c| c.clone());
        // fails exactly when q_a is not squarefree
        let v_a = to_univariate(field, &q_a, &w_a).ok()?;
        let algebra = QuotientRing::new(field.clone(), q_a.clone());
        let mut fixed = prefix.clone();
        fixed.push(a.clone());
        let point = fiber_point(&algebra, &fixed, &v_a);
        let h = program.evaluate_outputs(&algebra, &point, &[s]).ok()?.pop()?;
        Some(polys.resultant(&q_a, &h))
    })?;
    match interpolated.degree() {
        None => Err(UnluckyCause::ZeroResultant),
        Some(0) => Err(UnluckyCause::EmptyIntersection),
        Some(_) => Ok(polys.monic(&interpolated)),
    }
}

/// Univariate parametrization of the stage-`(s+1)` fiber with minimal
/// polynomial `q_next` in the primitive coordinate `Y_{n-s}`.
///
/// Each irreducible factor of `q_next` gives an extension field in which the
/// curve is specialized at a root; the remaining equation then has a single
/// common root with the specialized minimal polynomial, which yields the
/// value of `Y_{n-s+1}`, and the specialized parametrization gives the rest.
/// The per-factor values are combined by the Chinese remainder theorem.
pub fn intersect_parametrization<F: PrimeFieldLike, G: Rng + ?Sized>(
    solver: &ModularSolver<'_, F>,
    curve: &CurveRepresentation<F::Elem>,
    q_next: &Poly<F::Elem>,
    rng: &mut G,
) -> Result<FiberRepresentation<F::Elem>, UnluckyCause> {
    let field = &solver.field;
    let program = solver.program;
    let s = curve.stage;
    let n = program.n_vars();
    let polys = PolyRing::new(field.clone());
    if !polys.is_squarefree(q_next) {
        return Err(UnluckyCause::NotSquarefree);
    }
    let prefix: Vec<BigInt> = solver.lifting_point[..n - s - 1].to_vec();
    let factors = factor_squarefree(field, q_next, rng);
    // residues[j][k]: coordinate Y_{n-s+1+j} modulo the k-th factor
    let mut residues: Vec<Vec<(Poly<F::Elem>, Poly<F::Elem>)>> = vec![Vec::new(); s];
    for qk in &factors {
        let ext = ExtField::new(field.clone(), qk.clone());
        let a = ext.generator();
        let (q_a, w_a) = specialize_curve(curve, field, &ext, &a, |c| ext.embed(c));
        let v_a = to_univariate(&ext, &q_a, &w_a).map_err(|_| UnluckyCause::NotSquarefree)?;
        let algebra = QuotientRing::new(ext.clone(), q_a.clone());
        let mut fixed = embed_point(&ext, &prefix);
        fixed.push(a.clone());
        let point = fiber_point(&algebra, &fixed, &v_a);
        let g = program
            .evaluate_outputs(&algebra, &point, &[s])
            .map_err(|_| UnluckyCause::SingularChange)?
            .pop()
            .unwrap();
        let ext_polys = &algebra.polys;
        let common = ext_polys.gcd(&g, &q_a);
        if common.degree() != Some(1) {
            return Err(UnluckyCause::NonlinearGcd);
        }
        let root = ext.neg(&ext_polys.coeff_or_zero(&common, 0));
        residues[0].push((root.clone(), qk.clone()));
        for (j, v) in v_a.iter().enumerate() {
            residues[j + 1].push((ext_polys.eval(v, &root), qk.clone()));
        }
    }
    let params = residues
        .iter()
        .map(|r| polys.crt(r).map_err(|_| UnluckyCause::NotSquarefree))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiberRepresentation {
        stage: s + 1,
        change: solver.change.clone(),
        lifting_point: solver.lifting_point.to_vec(),
        minimal_poly: q_next.clone(),
        params,
        form: ParamForm::Univariate,
    })
}

