use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kronecker_core::ffpoly::{PolyRing, PrimeField, RationalField, ResidueRing};
use kronecker_core::padic::{
    hensel_lift_rep, reconstruct_rep, solve_modular, solve_over_rationals, LiftedRepresentation, Mode,
    PadicLifter, SolveConfig, SolverError,
};
use kronecker_core::slp::{parse_system, AffineChange};
use kronecker_core::solver::{solve_mod_p, FiberRepresentation, ParamForm};
use kronecker_core::verify::{check_rational_exact, reduce_representation};

fn root_rep(q: Vec<u64>, f: PrimeField) -> FiberRepresentation<u64> {
    FiberRepresentation {
        stage: 1,
        change: AffineChange::identity(1),
        lifting_point: Vec::new(),
        minimal_poly: PolyRing::new(f).from_coeffs(q),
        params: Vec::new(),
        form: ParamForm::Kronecker,
    }
}

fn ubig(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn one_doubling_of_a_square_root() {
    let f = PrimeField::new(7);
    let program = parse_system("vars y; y^2 - 2;").unwrap();
    let rep = root_rep(vec![4, 1], f);
    let mut lifter = PadicLifter::new(&program, &f, &rep).unwrap();
    lifter.step().unwrap();
    let lifted = lifter.current();
    assert_eq!(lifted.exponent, 2);
    assert_eq!(lifted.modulus(), ubig(49));
    assert_eq!(lifted.rep.minimal_poly.coeffs(), &[ubig(39), ubig(1)]);
}

#[test]
fn lifting_to_few_bits_is_a_no_op() {
    let f = PrimeField::new(7);
    let program = parse_system("vars y; y^2 - 2;").unwrap();
    let lifted = hensel_lift_rep(&program, &f, &root_rep(vec![4, 1], f), 2).unwrap();
    assert_eq!(lifted.exponent, 1);
    assert_eq!(lifted.rep.minimal_poly.coeffs(), &[ubig(4), ubig(1)]);
}

#[test]
fn linear_lift_is_exact() {
    let f = PrimeField::new(101);
    let program = parse_system("vars y; y - 5;").unwrap();
    for bits in [10, 40, 200] {
        let lifted = hensel_lift_rep(&program, &f, &root_rep(vec![96, 1], f), bits).unwrap();
        let m = lifted.modulus();
        assert_eq!(lifted.rep.minimal_poly.coeffs(), &[m - 5u32, ubig(1)]);
    }
}

#[test]
fn two_quadric_lift_reduces_back() {
    let f = PrimeField::new(10007);
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sol = solve_mod_p(f, &program, &AffineChange::identity(2), &[BigInt::from(1)], &mut rng).unwrap();
    let lifted = hensel_lift_rep(&program, &f, &sol.rep, 120).unwrap();
    assert!(lifted.exponent >= 9);
    let reduced: Vec<u64> = lifted
        .rep
        .minimal_poly
        .coeffs()
        .iter()
        .map(|c| (c % 10007u32).try_into().unwrap())
        .collect();
    assert_eq!(reduced, sol.rep.minimal_poly.coeffs());
    let rational = reconstruct_rep(&lifted).unwrap();
    let polys = PolyRing::new(RationalField);
    let expected = polys.from_coeffs([4, 0, -5, 0, 1].map(|c| BigRational::from_integer(c.into())).to_vec());
    assert_eq!(rational.minimal_poly, expected);
}

fn lifted_root(c: BigUint, exponent: usize) -> LiftedRepresentation {
    let ring = ResidueRing::new(PrimeField::new(10007), exponent);
    LiftedRepresentation {
        rep: FiberRepresentation {
            stage: 1,
            change: AffineChange::identity(1),
            lifting_point: Vec::new(),
            minimal_poly: PolyRing::new(ring).from_coeffs(vec![c, ubig(1)]),
            params: Vec::new(),
            form: ParamForm::Kronecker,
        },
        prime: ubig(10007),
        exponent,
    }
}

#[test]
fn reconstruction_examples() {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let small = reconstruct_rep(&lifted_root(ubig(42), 1)).unwrap();
    assert_eq!(small.minimal_poly.coeffs(), &[r(42, 1), r(1, 1)]);

    let m = BigInt::from(10007).pow(2);
    let third = BigInt::from(3).modinv(&m).unwrap();
    let rep = reconstruct_rep(&lifted_root(third.to_biguint().unwrap(), 2)).unwrap();
    assert_eq!(rep.minimal_poly.coeffs(), &[r(1, 3), r(1, 1)]);

    assert!(reconstruct_rep(&lifted_root(ubig(5039), 1)).is_err());
}

#[test]
fn rational_solve_examples() {
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let config = SolveConfig { seed: 11, exact_check: true, ..Default::default() };
    let sol = solve_over_rationals(&program, &config).unwrap();
    assert_eq!(sol.stage_degrees, vec![2, 4]);
    assert!(sol.certificate.exact.as_ref().unwrap().passed());
    assert!(sol.certificate.verification.iter().all(|c| c.report.passed()));

    let line = parse_system("vars x; x - 3;").unwrap();
    let sol = solve_over_rationals(&line, &SolveConfig::default()).unwrap();
    let polys = PolyRing::new(RationalField);
    let lambda = sol.rep.change.matrix()[0][0].clone();
    let expected = polys.from_coeffs(vec![BigRational::from_integer(-lambda * 3), BigRational::from_integer(1.into())]);
    assert_eq!(sol.rep.minimal_poly, expected);
}

#[test]
fn identity_change_gives_the_textbook_answer() {
    let line = parse_system("vars x; x - 3;").unwrap();
    let config = SolveConfig { change: Some(AffineChange::identity(1)), ..Default::default() };
    let sol = solve_over_rationals(&line, &config).unwrap();
    let polys = PolyRing::new(RationalField);
    assert_eq!(sol.rep.minimal_poly, polys.from_coeffs(vec![BigRational::from_integer((-3).into()), BigRational::from_integer(1.into())]));
}

#[test]
fn degenerate_input_is_reported() {
    let program = parse_system("vars x, y; x^2; x;").unwrap();
    let err = solve_over_rationals(&program, &SolveConfig::default()).unwrap_err();
    assert!(
        matches!(err, SolverError::InputNotRegular { .. } | SolverError::RetryExhausted { .. }),
        "{err}"
    );
}

#[test]
fn provable_mode_solves_two_quadrics() {
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let config = SolveConfig { mode: Mode::Provable, seed: 5, exact_check: true, ..Default::default() };
    let sol = solve_over_rationals(&program, &config).unwrap();
    assert_eq!(sol.rep.degree(), 4);
    assert!(sol.certificate.exact.as_ref().unwrap().passed());
    assert_eq!(sol.certificate.precisions.len(), 1);
}

#[test]
fn rational_result_reduces_to_the_modular_one() {
    let program = parse_system("vars x, y;\nx^2 + 3*y^2 - x - 7;\nx*y + y - 2;").unwrap();
    let change = AffineChange::from_rows(&[&[2, 1], &[1, 1]]).unwrap();
    let point = vec![BigInt::from(4)];
    let config = SolveConfig {
        seed: 2,
        change: Some(change.clone()),
        lifting_point: Some(point.clone()),
        ..Default::default()
    };
    let sol = solve_over_rationals(&program, &config).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    assert!(check_rational_exact(&program, &sol.rep, &mut rng).passed());
    let f = PrimeField::new(10007);
    let modular = solve_mod_p(f, &program, &change, &point, &mut rng).unwrap();
    assert_eq!(reduce_representation(&sol.rep, 10007).unwrap(), modular.rep);
}

#[test]
fn modular_only_solve() {
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let config = SolveConfig { prime: Some(ubig(10007)), seed: 4, ..Default::default() };
    let sol = solve_modular(&program, &config).unwrap();
    assert_eq!(sol.prime, ubig(10007));
    assert_eq!(sol.rep.degree(), 4);
    assert!(sol.verification.passed());
}

#[test]
fn same_seed_same_answer() {
    let program = parse_system("vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;").unwrap();
    let config = SolveConfig { seed: 99, ..Default::default() };
    let a = solve_over_rationals(&program, &config).unwrap();
    let b = solve_over_rationals(&program, &config).unwrap();
    assert_eq!(a.rep, b.rep);
    assert_eq!(a.certificate, b.certificate);
}
