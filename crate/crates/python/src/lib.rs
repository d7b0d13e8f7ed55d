//! Python bindings for the kronecker solver.

use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kronecker_core::ffpoly::{self, BigPrimeField, Poly, PrimeField};
use kronecker_core::io::{DecodedRepresentation, Document};
use kronecker_core::padic::{self, Mode, SolveConfig, SolverError};
use kronecker_core::ring::Ring;
use kronecker_core::slp::{self, StraightLineProgram};
use kronecker_core::verify;

create_exception!(kronecker, SolveFailed, PyException);
create_exception!(kronecker, InputNotRegular, SolveFailed);

fn solver_error(e: SolverError) -> PyErr {
    match e {
        SolverError::InputNotRegular { .. } => InputNotRegular::new_err(e.to_string()),
        SolverError::Program(_) | SolverError::Config(_) => PyValueError::new_err(e.to_string()),
        _ => SolveFailed::new_err(e.to_string()),
    }
}

/// A parsed polynomial system.
#[pyclass(name = "System", module = "kronecker", frozen)]
struct PySystem {
    program: StraightLineProgram,
}

#[pymethods]
impl PySystem {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        slp::parse_system(text)
            .map(|program| PySystem { program })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.program.var_names().to_vec()
    }

    #[getter]
    fn degrees(&self) -> Vec<u32> {
        self.program.degrees().to_vec()
    }

    /// Number of arithmetic instructions.
    #[getter]
    fn length(&self) -> usize {
        self.program.length()
    }

    /// Largest coefficient bit length.
    #[getter]
    fn height(&self) -> u64 {
        self.program.height()
    }

    /// Values of the equations at an integer point, modulo `prime`.
    fn evaluate(&self, point: Vec<BigInt>, prime: u64) -> PyResult<Vec<u64>> {
        if !(3..1 << 63).contains(&prime) {
            return Err(PyValueError::new_err("prime must lie in [3, 2^63)"));
        }
        let field = PrimeField::new(prime);
        let point: Vec<u64> = point.iter().map(|x| field.from_int(x)).collect();
        self.program
            .evaluate(&field, &point)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "System(variables={:?}, degrees={:?})",
            self.program.var_names(),
            self.program.degrees()
        )
    }
}

/// A solved fiber: minimal polynomial and parametrizations, plus the JSON
/// document describing how it was obtained.
#[pyclass(name = "Solution", module = "kronecker", frozen)]
struct PySolution {
    document: Document,
    rep: DecodedRepresentation,
}

fn fractions<'py>(py: Python<'py>, p: &Poly<num_rational::BigRational>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    p.coeffs()
        .iter()
        .map(|c| fraction.call1((c.numer().clone(), c.denom().clone())))
        .collect()
}

fn residues<'py>(py: Python<'py>, p: &Poly<BigUint>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    p.coeffs()
        .iter()
        .map(|c| Ok(c.clone().into_pyobject(py)?.into_any()))
        .collect()
}

#[pymethods]
impl PySolution {
    /// Coefficients of the monic minimal polynomial, constant term first.
    #[getter]
    fn minimal_polynomial<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        match &self.rep {
            DecodedRepresentation::Rational(rep) => fractions(py, &rep.minimal_poly),
            DecodedRepresentation::Modular { rep, .. } => residues(py, &rep.minimal_poly),
        }
    }

    /// Kronecker parametrizations `W_j`, one coefficient list per unknown.
    #[getter]
    fn parametrizations<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        match &self.rep {
            DecodedRepresentation::Rational(rep) => rep.params.iter().map(|p| fractions(py, p)).collect(),
            DecodedRepresentation::Modular { rep, .. } => rep.params.iter().map(|p| residues(py, p)).collect(),
        }
    }

    /// Parametrizations `V_j` with `Y_j = V_j(T)` modulo the minimal polynomial.
    fn univariate<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        let failed = |_| SolveFailed::new_err("minimal polynomial is not squarefree");
        match &self.rep {
            DecodedRepresentation::Rational(rep) => {
                let uni = rep.to_univariate(&ffpoly::RationalField).map_err(failed)?;
                uni.params.iter().map(|p| fractions(py, p)).collect()
            }
            DecodedRepresentation::Modular { prime, rep } => {
                let ring = ffpoly::ResidueRing::new(BigPrimeField::new(prime.clone()), 1);
                let uni = rep.to_univariate(&ring).map_err(failed)?;
                uni.params.iter().map(|p| residues(py, p)).collect()
            }
        }
    }

    /// 1-based indices of the parametrized coordinates `Y_j`.
    #[getter]
    fn parametrized_variables(&self) -> Vec<usize> {
        self.document.parametrizations.variables.clone()
    }

    #[getter]
    fn primitive_variable(&self) -> usize {
        self.document.primitive_variable
    }

    #[getter]
    fn change(&self) -> Vec<Vec<BigInt>> {
        let rep_change = match &self.rep {
            DecodedRepresentation::Rational(rep) => &rep.change,
            DecodedRepresentation::Modular { rep, .. } => &rep.change,
        };
        rep_change.matrix().to_vec()
    }

    #[getter]
    fn lifting_point(&self) -> Vec<BigInt> {
        match &self.rep {
            DecodedRepresentation::Rational(rep) => rep.lifting_point.clone(),
            DecodedRepresentation::Modular { rep, .. } => rep.lifting_point.clone(),
        }
    }

    /// `None` for solutions over the rationals.
    #[getter]
    fn modulus(&self) -> Option<BigUint> {
        match &self.rep {
            DecodedRepresentation::Rational(_) => None,
            DecodedRepresentation::Modular { prime, .. } => Some(prime.clone()),
        }
    }

    #[getter]
    fn stage_degrees(&self) -> Vec<usize> {
        self.document.stage_degrees.clone()
    }

    #[getter]
    fn verified(&self) -> bool {
        self.document.verification.passed
    }

    #[getter]
    fn degree(&self) -> usize {
        self.document.minimal_polynomial.len().saturating_sub(1)
    }

    fn to_json(&self) -> String {
        self.document.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Solution(degree={}, stage_degrees={:?}, verified={})",
            self.degree(),
            self.document.stage_degrees,
            if self.document.verification.passed { "True" } else { "False" }
        )
    }
}

impl PySolution {
    fn from_document(document: Document) -> PyResult<Self> {
        let rep = document
            .representation()
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PySolution { document, rep })
    }
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    match mode {
        "heuristic" => Ok(Mode::Heuristic),
        "provable" => Ok(Mode::Provable),
        _ => Err(PyValueError::new_err(format!("unknown mode {mode:?}"))),
    }
}

/// Solves the system over the rationals.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (system, mode = "heuristic", seed = 0, retries = 5, verify_primes = 1, prime = None, exact = false))]
fn solve(
    py: Python<'_>,
    system: &PySystem,
    mode: &str,
    seed: u64,
    retries: usize,
    verify_primes: usize,
    prime: Option<BigUint>,
    exact: bool,
) -> PyResult<PySolution> {
    let config = SolveConfig {
        mode: parse_mode(mode)?,
        seed,
        retries,
        verify_primes,
        prime,
        exact_check: exact,
        ..SolveConfig::default()
    };
    let program = &system.program;
    let solution = py
        .detach(|| padic::solve_over_rationals(program, &config))
        .map_err(solver_error)?;
    PySolution::from_document(Document::from_rational(program, &solution, false))
}

/// Solves the system over `F_p` only.
#[pyfunction]
#[pyo3(signature = (system, prime = None, seed = 0, retries = 5))]
fn solve_mod_p(
    py: Python<'_>,
    system: &PySystem,
    prime: Option<BigUint>,
    seed: u64,
    retries: usize,
) -> PyResult<PySolution> {
    let config = SolveConfig {
        seed,
        retries,
        prime,
        ..SolveConfig::default()
    };
    let program = &system.program;
    let solution = py
        .detach(|| padic::solve_modular(program, &config))
        .map_err(solver_error)?;
    PySolution::from_document(Document::from_modular(program, &solution, seed, false))
}

/// Reads a `kronecker-rep/1` document.
#[pyfunction]
fn load_solution(json: &str) -> PyResult<PySolution> {
    let document = Document::from_json(json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    PySolution::from_document(document)
}

/// Checks a solution against a system: exactly for rational solutions,
/// over `F_p` for modular ones.
#[pyfunction]
#[pyo3(signature = (system, solution, seed = 0))]
fn check(system: &PySystem, solution: &PySolution, seed: u64) -> bool {
    match &solution.rep {
        DecodedRepresentation::Rational(rep) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            verify::check_rational_exact(&system.program, rep, &mut rng).passed()
        }
        DecodedRepresentation::Modular { prime, rep } => {
            let field = BigPrimeField::new(prime.clone());
            verify::check_representation(&system.program, &field, rep).passed()
        }
    }
}

/// The fraction `num / den` congruent to `a` modulo `m` with both parts
/// below `sqrt(m / 2)`.
#[pyfunction]
fn rational_reconstruct(a: BigInt, m: BigInt) -> PyResult<(BigInt, BigInt)> {
    if m <= BigInt::from(1) {
        return Err(PyValueError::new_err("modulus must exceed 1"));
    }
    ffpoly::rational_reconstruct(&a, &m, None).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn kronecker(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(load_solution, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(rational_reconstruct, m)?)?;
    m.add("SolveFailed", m.py().get_type::<SolveFailed>())?;
    m.add("InputNotRegular", m.py().get_type::<InputNotRegular>())?;
    Ok(())
}
