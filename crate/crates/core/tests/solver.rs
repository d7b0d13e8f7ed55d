use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kronecker_core::ffpoly::{AlgebraError, Poly, PolyRing, PrimeField};
use kronecker_core::ring::Ring;
use kronecker_core::slp::{parse_system, AffineChange};
use kronecker_core::solver::{
    first_stage, lift_curve, solve_mod_p, specialize_curve, to_kronecker, to_univariate,
    FiberRepresentation, ModularSolver, ParamForm, SolveError, UnluckyCause,
};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn field() -> (PrimeField, PolyRing<PrimeField>) {
    let f = PrimeField::new(10007);
    (f, PolyRing::new(f))
}

fn stage_one(q: Poly<u64>, base: i64) -> FiberRepresentation<u64> {
    FiberRepresentation {
        stage: 1,
        change: AffineChange::identity(2),
        lifting_point: vec![big(base)],
        minimal_poly: q,
        params: Vec::new(),
        form: ParamForm::Univariate,
    }
}

#[test]
fn first_stage_examples() {
    let (f, polys) = field();
    let change = AffineChange::identity(2);
    let point = [big(1)];
    let program = parse_system("vars y1, y2; y1^2 + y2^2 - 5;").unwrap();
    let solver = ModularSolver::new(f, &program, &change, &point);
    assert_eq!(first_stage(&solver).unwrap().minimal_poly, polys.from_ints(&[-4, 0, 1]));

    let linear = parse_system("vars y1, y2; y2 - 9;").unwrap();
    let solver = ModularSolver::new(f, &linear, &change, &point);
    assert_eq!(first_stage(&solver).unwrap().minimal_poly, polys.from_ints(&[-9, 1]));

    let f7 = PrimeField::new(7);
    let dropping = parse_system("vars y1, y2; 7*y2^2 + y2 + y1;").unwrap();
    let solver = ModularSolver::new(f7, &dropping, &change, &point);
    assert_eq!(first_stage(&solver).unwrap_err(), UnluckyCause::DegreeDrop);
}

#[test]
fn form_conversions() {
    let (f, polys) = field();
    let q = polys.from_ints(&[-1, 0, 1]);
    let c = 37;
    let w = polys.from_ints(&[0, 2 * c]);
    let v = polys.from_ints(&[c]);
    assert_eq!(to_univariate(&f, &q, std::slice::from_ref(&w)), Ok(vec![v.clone()]));
    assert_eq!(to_kronecker(&f, &q, &[v]), vec![w]);
    assert_eq!(to_univariate(&f, &q, &[Poly::zero()]), Ok(vec![Poly::zero()]));
    assert_eq!(to_kronecker(&f, &q, &[Poly::zero()]), vec![Poly::zero()]);
    let double = polys.from_ints(&[1, -2, 1]);
    assert_eq!(to_univariate(&f, &double, &[polys.x()]), Err(AlgebraError::NotInvertible));
}

#[test]
fn curve_lifting_examples() {
    let (f, polys) = field();
    let series = |c: &[i64]| polys.from_ints(c);

    let parabola = parse_system("vars y1, y2; y2^2 - y1;").unwrap();
    let (curve, trace) = lift_curve(&parabola, &f, &stage_one(polys.from_ints(&[-1, 0, 1]), 1), 2).unwrap();
    assert_eq!(trace.len(), 1);
    assert_eq!(curve.minimal_poly.coeffs(), &[series(&[-1, -1]), Poly::zero(), series(&[1])]);

    let (same, trace) = lift_curve(&parabola, &f, &stage_one(polys.from_ints(&[-1, 0, 1]), 1), 1).unwrap();
    assert!(trace.is_empty());
    assert_eq!(same.minimal_poly.coeffs(), &[series(&[-1]), Poly::zero(), series(&[1])]);

    let line = parse_system("vars y1, y2; y2 - y1;").unwrap();
    let (curve, _) = lift_curve(&line, &f, &stage_one(polys.from_ints(&[-1, 1]), 1), 2).unwrap();
    assert_eq!(curve.minimal_poly.coeffs(), &[series(&[-1, -1]), series(&[1])]);
}

#[test]
fn curve_specialization() {
    let (f, polys) = field();
    let parabola = parse_system("vars y1, y2; y2^2 - y1;").unwrap();
    let (curve, _) = lift_curve(&parabola, &f, &stage_one(polys.from_ints(&[-1, 0, 1]), 1), 4).unwrap();
    let (q, params) = specialize_curve(&curve, &f, &f, &1, |c| *c);
    assert_eq!(q, polys.from_ints(&[-1, 0, 1]));
    assert!(params.is_empty());
    let (q, _) = specialize_curve(&curve, &f, &f, &4, |c| *c);
    assert_eq!(q, polys.from_ints(&[-4, 0, 1]));
}

#[test]
fn modular_solve_examples() {
    let f = PrimeField::new(7);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let program = parse_system("vars x; x^2 - 1;").unwrap();
    let sol = solve_mod_p(f, &program, &AffineChange::identity(1), &[], &mut rng).unwrap();
    assert_eq!(sol.rep.minimal_poly, PolyRing::new(f).from_ints(&[-1, 0, 1]));
    assert_eq!(sol.stage_degrees, vec![2]);
}

#[test]
fn two_quadrics_mod_p() {
    let (f, polys) = field();
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sol = solve_mod_p(f, &program, &AffineChange::identity(2), &[big(3)], &mut rng).unwrap();
    assert_eq!(sol.rep.minimal_poly, polys.from_ints(&[4, 0, -5, 0, 1]));
    assert_eq!(sol.stage_degrees, vec![2, 4]);
    let uni = sol.rep.to_univariate(&f).unwrap();
    let v = &uni.params[0];
    for (x, y) in [(1, 2), (-1, -2), (2, 1), (-2, -1)] {
        assert_eq!(polys.eval(v, &f.elem(x)), f.elem(y));
    }
}

#[test]
fn sheared_coordinates() {
    let (f, polys) = field();
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let change = AffineChange::from_rows(&[&[1, 2], &[3, 7]]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sol = solve_mod_p(f, &program, &change, &[big(11)], &mut rng).unwrap();
    // the primitive element x + 2y takes the values 5, -5, 4, -4
    let expected = [5, -5, 4, -4]
        .iter()
        .fold(polys.one(), |acc, &r| polys.mul(&acc, &polys.from_ints(&[-r, 1])));
    assert_eq!(sol.rep.minimal_poly, expected);
}

#[test]
fn singular_change_mod_p_is_unlucky() {
    let f = PrimeField::new(7);
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let change = AffineChange::from_rows(&[&[1, 0], &[0, 7]]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let err = solve_mod_p(f, &program, &change, &[big(1)], &mut rng).unwrap_err();
    assert_eq!(err, SolveError::Unlucky { stage: 1, cause: UnluckyCause::SingularChange });
}
