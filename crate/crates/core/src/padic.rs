//! `p`-adic lifting of the final modular representation and rational
//! reconstruction, and the retrying driver that solves over the rationals.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{BoundSet, DEFAULT_HEIGHT_CONSTANT, DEFAULT_PRIME_CONSTANT};
use crate::ffpoly::{
    rational_reconstruct, AlgebraError, BigPrimeField, Poly, PolyRing, PrimeField, RationalField,
    ResidueRing,
};
use crate::primes::{default_candidate_budget, random_prime_avoiding, random_prime_in_range, PrimeError};
use crate::ring::{PrecisionRing, PrimeFieldLike};
use crate::slp::{AffineChange, SlpError, StraightLineProgram};
use crate::solver::{
    embed_point, newton_step, residual_vanishes, solve_mod_p, FiberRepresentation, ModularSolver,
    ParamForm,
    SolveError, UnluckyCause,
};
use crate::verify::{
    check_fresh_primes, check_rational_exact, check_representation, PrimeCheck, VerificationReport,
};

/// A representation over `Z/p^k`, in Kronecker form.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedRepresentation {
    pub rep: FiberRepresentation<BigUint>,
    pub prime: BigUint,
    pub exponent: usize,
}

impl LiftedRepresentation {
    pub fn modulus(&self) -> BigUint {
        num_traits::pow(self.prime.clone(), self.exponent)
    }
}

/// Newton lifting of a stage-`r` representation from `F_p` to `Z/p^k`,
/// doubling `k` at each step.
#[derive(Clone, Debug)]
pub struct PadicLifter<'a, F: PrimeFieldLike> {
    program: &'a StraightLineProgram,
    ring: ResidueRing<F>,
    template: FiberRepresentation<F::Elem>,
    q: Poly<BigUint>,
    params: Vec<Poly<BigUint>>,
}

impl<'a, F: PrimeFieldLike> PadicLifter<'a, F> {
    /// `program` is the composed program in the `Y` coordinates.
    pub fn new(
        program: &'a StraightLineProgram,
        field: &F,
        rep: &FiberRepresentation<F::Elem>,
    ) -> Result<Self, UnluckyCause> {
        let uni = rep
            .to_univariate(field)
            .map_err(|_| UnluckyCause::NotSquarefree)?;
        let ring = ResidueRing::new(field.clone(), 1);
        let lift = |p: &Poly<F::Elem>| {
            PolyRing::new(ring.clone())
                .from_coeffs(p.coeffs().iter().map(|c| field.to_biguint(c)).collect())
        };
        Ok(PadicLifter {
            program,
            q: lift(&uni.minimal_poly),
            params: uni.params.iter().map(lift).collect(),
            ring,
            template: uni,
        })
    }

    pub fn exponent(&self) -> usize {
        self.ring.exponent()
    }

    /// Guaranteed bits of precision, `k * floor(log2 p)`.
    pub fn bits(&self) -> u64 {
        self.exponent() as u64 * (self.ring.prime().bits() - 1)
    }

    /// Doubles the precision.
    pub fn step(&mut self) -> Result<(), UnluckyCause> {
        let ring = self.ring.with_precision(2 * self.exponent());
        let fixed = embed_point(&ring, self.template.fixed_point());
        let (q, params) = newton_step(self.program, &ring, &fixed, &self.q, &self.params)?;
        if !residual_vanishes(self.program, &ring, &fixed, &q, &params) {
            return Err(UnluckyCause::ResidualNonzero);
        }
        self.ring = ring;
        self.q = q;
        self.params = params;
        Ok(())
    }

    /// The current representation in Kronecker form.
    pub fn current(&self) -> LiftedRepresentation {
        let params = crate::solver::to_kronecker(&self.ring, &self.q, &self.params);
        LiftedRepresentation {
            rep: FiberRepresentation {
                stage: self.template.stage,
                change: self.template.change.clone(),
                lifting_point: self.template.lifting_point.clone(),
                minimal_poly: self.q.clone(),
                params,
                form: ParamForm::Kronecker,
            },
            prime: self.ring.prime().clone(),
            exponent: self.exponent(),
        }
    }
}

/// Lifts until `k log2 p >= target_bits`. `program` is the input program.
pub fn hensel_lift_rep<F: PrimeFieldLike>(
    program: &StraightLineProgram,
    field: &F,
    rep: &FiberRepresentation<F::Elem>,
    target_bits: u64,
) -> Result<LiftedRepresentation, SolveError> {
    let composed = program.compose_affine(&rep.change)?;
    let unlucky = |c| SolveError::unlucky(rep.stage, c);
    let mut lifter = PadicLifter::new(&composed, field, rep).map_err(unlucky)?;
    while lifter.bits() < target_bits {
        lifter.step().map_err(unlucky)?;
    }
    Ok(lifter.current())
}

/// Rational reconstruction of every coefficient.
pub fn reconstruct_rep(
    lifted: &LiftedRepresentation,
) -> Result<FiberRepresentation<BigRational>, AlgebraError> {
    let m = BigInt::from(lifted.modulus());
    let polys = PolyRing::new(RationalField);
    let convert = |p: &Poly<BigUint>| -> Result<Poly<BigRational>, AlgebraError> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                rational_reconstruct(&BigInt::from(c.clone()), &m, None)
                    .map(|(num, den)| BigRational::new(num, den))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(polys.from_coeffs(coeffs))
    };
    let rep = &lifted.rep;
    Ok(FiberRepresentation {
        stage: rep.stage,
        change: rep.change.clone(),
        lifting_point: rep.lifting_point.clone(),
        minimal_poly: convert(&rep.minimal_poly)?,
        params: rep.params.iter().map(convert).collect::<Result<_, _>>()?,
        form: rep.form,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Lift until the reconstruction stabilizes and passes fresh-prime checks.
    #[default]
    Heuristic,
    /// Sample the prime from the lucky-prime interval and lift once to the
    /// height budget.
    Provable,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub mode: Mode,
    pub seed: u64,
    /// Restarts after the first attempt.
    pub retries: usize,
    pub verify_primes: usize,
    pub prime: Option<BigUint>,
    pub change: Option<AffineChange>,
    pub lifting_point: Option<Vec<BigInt>>,
    pub height_constant: u64,
    pub prime_constant: u64,
    /// Also verify the result exactly over the rationals.
    pub exact_check: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: Mode::Heuristic,
            seed: 0,
            retries: 5,
            verify_primes: 1,
            prime: None,
            change: None,
            lifting_point: None,
            height_constant: DEFAULT_HEIGHT_CONSTANT,
            prime_constant: DEFAULT_PRIME_CONSTANT,
            exact_check: false,
        }
    }
}

/// What happened in one attempt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttemptRecord {
    pub prime: String,
    pub lambda: Vec<Vec<String>>,
    pub lifting_point: Vec<String>,
    /// `"accepted"` or a description of the failure.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<usize>,
}

/// Evidence attached to an accepted solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub mode: Mode,
    pub seed: u64,
    pub attempts: Vec<AttemptRecord>,
    pub prime: String,
    /// Exponents `k` of `p^k` at which reconstruction was attempted.
    pub precisions: Vec<usize>,
    pub lifted_bits: u64,
    pub verification: Vec<PrimeCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<VerificationReport>,
}

#[derive(Clone, Debug)]
pub struct RationalSolution {
    /// Final-stage Kronecker representation over the rationals.
    pub rep: FiberRepresentation<BigRational>,
    pub stage_degrees: Vec<usize>,
    pub certificate: Certificate,
}

impl RationalSolution {
    /// The univariate parametrizations `V_j = W_j / Q' mod Q`.
    pub fn univariate(&self) -> FiberRepresentation<BigRational> {
        self.rep
            .to_univariate(&RationalField)
            .expect("accepted representations are squarefree")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("no attempt succeeded after {attempts} tries; last failure: {last}")]
    RetryExhausted { attempts: usize, last: String },
    #[error("input is not a reduced regular sequence: every attempt failed at stage {stage} ({cause})")]
    InputNotRegular { stage: usize, cause: UnluckyCause },
    #[error(transparent)]
    Program(#[from] SlpError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error("configuration does not match the system: {0}")]
    Config(String),
}

struct Accepted {
    rep: FiberRepresentation<BigRational>,
    stage_degrees: Vec<usize>,
    precisions: Vec<usize>,
    lifted_bits: u64,
    verification: Vec<PrimeCheck>,
}

/// Solves a square-or-underdetermined system over the rationals, restarting
/// with fresh random choices whenever a check detects bad luck.
pub fn solve_over_rationals(
    program: &StraightLineProgram,
    config: &SolveConfig,
) -> Result<RationalSolution, SolverError> {
    let n = program.n_vars();
    let bounds = check_config(program, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut attempts = Vec::new();
    let mut failures: Vec<(usize, UnluckyCause)> = Vec::new();
    for _ in 0..=config.retries {
        let prime = match &config.prime {
            Some(p) => p.clone(),
            None => sample_prime(config.mode, &bounds, &mut rng)?,
        };
        let (change, lifting_point) = sample_choices(config, &bounds, n, &mut rng);
        let mut record = AttemptRecord::new(&prime, &change, &lifting_point);
        let result = match prime.to_u64().filter(|&p| p < 1 << 63) {
            Some(p) => attempt(PrimeField::new(p), program, &change, &lifting_point, config, &bounds, &mut rng),
            None => attempt(BigPrimeField::new(prime.clone()), program, &change, &lifting_point, config, &bounds, &mut rng),
        };
        match result {
            Ok(acc) => {
                record.outcome = "accepted".into();
                attempts.push(record);
                let exact = config
                    .exact_check
                    .then(|| check_rational_exact(program, &acc.rep, &mut rng));
                return Ok(RationalSolution {
                    rep: acc.rep,
                    stage_degrees: acc.stage_degrees,
                    certificate: Certificate {
                        mode: config.mode,
                        seed: config.seed,
                        attempts,
                        prime: prime.to_string(),
                        precisions: acc.precisions,
                        lifted_bits: acc.lifted_bits,
                        verification: acc.verification,
                        exact,
                    },
                });
            }
            Err(SolveError::Unlucky { stage, cause }) => {
                record.outcome = cause.to_string();
                record.failed_stage = Some(stage);
                attempts.push(record);
                failures.push((stage, cause));
            }
            Err(SolveError::Program(e)) => return Err(e.into()),
        }
    }
    Err(give_up(&attempts, &failures))
}

impl AttemptRecord {
    fn new(prime: &BigUint, change: &AffineChange, lifting_point: &[BigInt]) -> Self {
        AttemptRecord {
            prime: prime.to_string(),
            lambda: change
                .matrix()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
            lifting_point: lifting_point.iter().map(|x| x.to_string()).collect(),
            outcome: String::new(),
            failed_stage: None,
        }
    }
}

fn check_config(program: &StraightLineProgram, config: &SolveConfig) -> Result<BoundSet, SolverError> {
    let n = program.n_vars();
    if let Some(c) = &config.change {
        if c.dim() != n {
            return Err(SolverError::Config(format!("coordinate change must be {n}x{n}")));
        }
    }
    if let Some(p) = &config.lifting_point {
        if p.len() + 1 != n {
            return Err(SolverError::Config(format!("lifting point must have {} entries", n - 1)));
        }
    }
    Ok(BoundSet::new(
        n as u64,
        program.degrees(),
        program.height(),
        config.height_constant,
        config.prime_constant,
    ))
}

/// The configured coordinate change and lifting point, or random ones from
/// `[0, a]^(n x n)` and `[0, b]^(n-1)`.
fn sample_choices<G: Rng + ?Sized>(
    config: &SolveConfig,
    bounds: &BoundSet,
    n: usize,
    rng: &mut G,
) -> (AffineChange, Vec<BigInt>) {
    let change = match &config.change {
        Some(c) => c.clone(),
        None => sample_change(n, &bounds.a, rng),
    };
    let lifting_point = match &config.lifting_point {
        Some(p) => p.clone(),
        None => (1..n)
            .map(|_| BigInt::from(rng.gen_biguint_range(&BigUint::zero(), &(&bounds.b + 1u32))))
            .collect(),
    };
    (change, lifting_point)
}

fn give_up(attempts: &[AttemptRecord], failures: &[(usize, UnluckyCause)]) -> SolverError {
    let (stage, cause) = failures[0];
    if cause.is_structural() && failures.iter().all(|&f| f == (stage, cause)) {
        return SolverError::InputNotRegular { stage, cause };
    }
    let last = attempts.last().map(|a| a.outcome.clone()).unwrap_or_default();
    SolverError::RetryExhausted {
        attempts: attempts.len(),
        last,
    }
}

/// A final-stage representation over `F_p` with values as integers in `[0, p)`.
#[derive(Clone, Debug)]
pub struct ModularSolution {
    pub rep: FiberRepresentation<BigUint>,
    pub prime: BigUint,
    pub stage_degrees: Vec<usize>,
    pub verification: VerificationReport,
    pub attempts: Vec<AttemptRecord>,
}

/// Runs only the modular pipeline, restarting on bad luck like
/// [`solve_over_rationals`]. Without a configured prime, one is drawn
/// from `[2^59, 2^62)` afresh for each attempt.
pub fn solve_modular(
    program: &StraightLineProgram,
    config: &SolveConfig,
) -> Result<ModularSolution, SolverError> {
    let n = program.n_vars();
    let bounds = check_config(program, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut attempts = Vec::new();
    let mut failures = Vec::new();
    for _ in 0..=config.retries {
        let prime = match &config.prime {
            Some(p) => p.clone(),
            None => sample_prime(Mode::Heuristic, &bounds, &mut rng)?,
        };
        let (change, lifting_point) = sample_choices(config, &bounds, n, &mut rng);
        let mut record = AttemptRecord::new(&prime, &change, &lifting_point);
        let result = match prime.to_u64().filter(|&p| p < 1 << 63) {
            Some(p) => modular_attempt(PrimeField::new(p), program, &change, &lifting_point, &mut rng),
            None => modular_attempt(BigPrimeField::new(prime.clone()), program, &change, &lifting_point, &mut rng),
        };
        match result {
            Ok((rep, stage_degrees, verification)) => {
                record.outcome = "accepted".into();
                attempts.push(record);
                return Ok(ModularSolution {
                    rep,
                    prime,
                    stage_degrees,
                    verification,
                    attempts,
                });
            }
            Err(SolveError::Unlucky { stage, cause }) => {
                record.outcome = cause.to_string();
                record.failed_stage = Some(stage);
                attempts.push(record);
                failures.push((stage, cause));
            }
            Err(SolveError::Program(e)) => return Err(e.into()),
        }
    }
    Err(give_up(&attempts, &failures))
}

#[allow(clippy::type_complexity)]
fn modular_attempt<F: PrimeFieldLike, G: Rng + ?Sized>(
    field: F,
    program: &StraightLineProgram,
    change: &AffineChange,
    lifting_point: &[BigInt],
    rng: &mut G,
) -> Result<(FiberRepresentation<BigUint>, Vec<usize>, VerificationReport), SolveError> {
    let solution = solve_mod_p(field.clone(), program, change, lifting_point, rng)?;
    let verification = check_representation(program, &field, &solution.rep);
    if let Some(cause) = verification.first_cause() {
        return Err(SolveError::unlucky(solution.rep.stage, cause));
    }
    let integers = ResidueRing::new(field.clone(), 1);
    let rep = solution.rep.map_into(&integers, |c| field.to_biguint(c));
    Ok((rep, solution.stage_degrees, verification))
}

fn sample_prime<G: Rng + ?Sized>(mode: Mode, bounds: &BoundSet, rng: &mut G) -> Result<BigUint, PrimeError> {
    match mode {
        Mode::Heuristic => Ok(random_prime_in_range(
            &BigUint::from(1u64 << 59),
            &BigUint::from(1u64 << 62),
            rng,
        )),
        Mode::Provable => {
            let budget = default_candidate_budget(&bounds.prime_bound);
            random_prime_avoiding(&bounds.prime_bound, budget, &BigUint::from(1u32), rng)
        }
    }
}

/// A random `n x n` matrix with entries in `[0, a]` and nonzero determinant.
pub fn sample_change<G: Rng + ?Sized>(n: usize, a: &BigUint, rng: &mut G) -> AffineChange {
    let high = a + 1u32;
    loop {
        let matrix = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| BigInt::from(rng.gen_biguint_range(&BigUint::zero(), &high)))
                    .collect()
            })
            .collect();
        if let Ok(change) = AffineChange::new(matrix) {
            return change;
        }
    }
}

fn attempt<F: PrimeFieldLike, G: Rng + ?Sized>(
    field: F,
    program: &StraightLineProgram,
    change: &AffineChange,
    lifting_point: &[BigInt],
    config: &SolveConfig,
    bounds: &BoundSet,
    rng: &mut G,
) -> Result<Accepted, SolveError> {
    if field.is_zero(&field.from_int(change.det())) {
        return Err(SolveError::unlucky(1, UnluckyCause::SingularChange));
    }
    let composed = program.compose_affine(change)?;
    let solver = ModularSolver::new(field.clone(), &composed, change, lifting_point);
    let modular = solver.solve(rng)?;
    let r = modular.rep.stage;
    let unlucky = |c| SolveError::unlucky(r, c);
    let mut lifter = PadicLifter::new(&composed, &field, &modular.rep).map_err(unlucky)?;
    let target = bounds.lifting_bits().to_u64().unwrap_or(u64::MAX);
    let mut precisions = Vec::new();
    let accept = |rep: FiberRepresentation<BigRational>, precisions: Vec<usize>, bits: u64, rng: &mut G| {
        let verification = check_fresh_primes(program, &rep, config.verify_primes, rng);
        if verification.iter().all(|c| c.report.passed()) {
            Ok(Accepted {
                rep,
                stage_degrees: modular.stage_degrees.clone(),
                precisions,
                lifted_bits: bits,
                verification,
            })
        } else {
            Err(unlucky(UnluckyCause::VerificationFailed))
        }
    };
    match config.mode {
        Mode::Provable => {
            while lifter.bits() < target {
                lifter.step().map_err(unlucky)?;
            }
            precisions.push(lifter.exponent());
            let rep = reconstruct_rep(&lifter.current())
                .map_err(|_| unlucky(UnluckyCause::NoReconstruction))?;
            accept(rep, precisions, lifter.bits(), rng)
        }
        Mode::Heuristic => {
            let cap = target.saturating_mul(2);
            let mut previous: Option<FiberRepresentation<BigRational>> = None;
            loop {
                precisions.push(lifter.exponent());
                let current = reconstruct_rep(&lifter.current()).ok();
                if let (Some(prev), Some(cur)) = (&previous, &current) {
                    if prev == cur {
                        let result = accept(cur.clone(), precisions.clone(), lifter.bits(), rng);
                        if result.is_ok() {
                            return result;
                        }
                    }
                }
                previous = current;
                if lifter.bits() >= cap {
                    return Err(unlucky(UnluckyCause::NoReconstruction));
                }
                lifter.step().map_err(unlucky)?;
            }
        }
    }
}
