//! The `kronecker-rep/1` JSON document: writer and reader.
//!
//! Coefficient lists run from the constant term upwards. Rationals are
//! `{"num", "den"}` string pairs; values modulo a prime are integer strings
//! in `[0, p)`. Every map in the document has a fixed key order, so equal
//! inputs serialize to equal bytes.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffpoly::{BigPrimeField, Poly, PolyRing, RationalField, ResidueRing};
use crate::padic::{Certificate, ModularSolution, RationalSolution};
use crate::slp::{AffineChange, StraightLineProgram};
use crate::solver::{FiberRepresentation, ParamForm};
use crate::verify::{PrimeCheck, VerificationReport};

pub const FORMAT: &str = "kronecker-rep/1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format {0:?}")]
    Format(String),
    #[error("malformed document: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Rational { num: String, den: String },
    Modular(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational,
    Prime { modulus: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parametrizations {
    pub form: ParamForm,
    /// 1-based indices of the `Y` coordinates, one per polynomial.
    pub variables: Vec<usize>,
    pub polynomials: Vec<Vec<Coefficient>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub passed: bool,
    pub checks: Vec<PrimeCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<VerificationReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    /// `heuristic`, `provable` or `modular`.
    pub mode: String,
    pub seed: u64,
    pub variables: Vec<String>,
    /// Rows of the coordinate change `Y = lambda X`.
    pub lambda: Vec<Vec<String>>,
    pub lifting_point: Vec<String>,
    pub stage: usize,
    /// 1-based index of the primitive coordinate `Y`.
    pub primitive_variable: usize,
    pub field: FieldDescriptor,
    /// The solving prime followed by any verification primes.
    pub primes: Vec<String>,
    pub minimal_polynomial: Vec<Coefficient>,
    pub parametrizations: Parametrizations,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub univariate: Option<Parametrizations>,
    pub stage_degrees: Vec<usize>,
    pub verification: VerificationSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
}

/// A representation read back from a document.
#[derive(Clone, Debug, PartialEq)]
pub enum DecodedRepresentation {
    Rational(FiberRepresentation<BigRational>),
    Modular {
        prime: BigUint,
        rep: FiberRepresentation<BigUint>,
    },
}

fn rational_coeffs(p: &Poly<BigRational>) -> Vec<Coefficient> {
    p.coeffs()
        .iter()
        .map(|c| Coefficient::Rational {
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

fn modular_coeffs(p: &Poly<BigUint>) -> Vec<Coefficient> {
    p.coeffs()
        .iter()
        .map(|c| Coefficient::Modular(c.to_string()))
        .collect()
}

fn block<E: Clone>(rep: &FiberRepresentation<E>, coeffs: impl Fn(&Poly<E>) -> Vec<Coefficient>) -> Parametrizations {
    let first = rep.primitive_index() + 2;
    Parametrizations {
        form: rep.form,
        variables: (first..first + rep.params.len()).collect(),
        polynomials: rep.params.iter().map(coeffs).collect(),
    }
}

fn header<E: Clone>(program: &StraightLineProgram, rep: &FiberRepresentation<E>) -> (Vec<Vec<String>>, Vec<String>) {
    debug_assert_eq!(program.n_vars(), rep.n_vars());
    let lambda = rep
        .change
        .matrix()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    let point = rep.lifting_point.iter().map(|x| x.to_string()).collect();
    (lambda, point)
}

impl Document {
    pub fn from_rational(program: &StraightLineProgram, solution: &RationalSolution, emit_univariate: bool) -> Self {
        let rep = &solution.rep;
        let cert = &solution.certificate;
        let (lambda, lifting_point) = header(program, rep);
        let mut primes = vec![cert.prime.clone()];
        primes.extend(cert.verification.iter().map(|c| c.prime.clone()));
        let passed = cert.verification.iter().all(|c| c.report.passed())
            && cert.exact.as_ref().is_none_or(|r| r.passed());
        Document {
            format: FORMAT.into(),
            mode: serde_json::to_value(cert.mode)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
            seed: cert.seed,
            variables: program.var_names().to_vec(),
            lambda,
            lifting_point,
            stage: rep.stage,
            primitive_variable: rep.primitive_index() + 1,
            field: FieldDescriptor::Rational,
            primes,
            minimal_polynomial: rational_coeffs(&rep.minimal_poly),
            parametrizations: block(rep, rational_coeffs),
            univariate: emit_univariate.then(|| block(&solution.univariate(), rational_coeffs)),
            stage_degrees: solution.stage_degrees.clone(),
            verification: VerificationSummary {
                passed,
                checks: cert.verification.clone(),
                exact: cert.exact.clone(),
            },
            certificate: Some(cert.clone()),
        }
    }

    pub fn from_modular(
        program: &StraightLineProgram,
        solution: &ModularSolution,
        seed: u64,
        emit_univariate: bool,
    ) -> Self {
        let rep = &solution.rep;
        let (lambda, lifting_point) = header(program, rep);
        let univariate = emit_univariate.then(|| {
            let field = BigPrimeField::new(solution.prime.clone());
            let residues = ResidueRing::new(field.clone(), 1);
            let uni = rep
                .to_univariate(&residues)
                .expect("accepted modular representations are squarefree");
            block(&uni, modular_coeffs)
        });
        Document {
            format: FORMAT.into(),
            mode: "modular".into(),
            seed,
            variables: program.var_names().to_vec(),
            lambda,
            lifting_point,
            stage: rep.stage,
            primitive_variable: rep.primitive_index() + 1,
            field: FieldDescriptor::Prime {
                modulus: solution.prime.to_string(),
            },
            primes: vec![solution.prime.to_string()],
            minimal_polynomial: modular_coeffs(&rep.minimal_poly),
            parametrizations: block(rep, modular_coeffs),
            univariate,
            stage_degrees: solution.stage_degrees.clone(),
            verification: VerificationSummary {
                passed: solution.verification.passed(),
                checks: vec![PrimeCheck {
                    prime: solution.prime.to_string(),
                    report: solution.verification.clone(),
                }],
                exact: None,
            },
            certificate: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.format != FORMAT {
            return Err(DocumentError::Format(doc.format));
        }
        Ok(doc)
    }

    /// The Kronecker-form representation stored in the document.
    pub fn representation(&self) -> Result<DecodedRepresentation, DocumentError> {
        let bad = |m: &str| DocumentError::Malformed(m.to_string());
        let n = self.variables.len();
        if n == 0 || self.lambda.len() != n || self.lifting_point.len() + 1 != n {
            return Err(bad("dimensions of lambda or lifting_point do not match the variables"));
        }
        if self.stage == 0 || self.stage > n || self.primitive_variable != n - self.stage + 1 {
            return Err(bad("stage and primitive_variable are inconsistent"));
        }
        let params = &self.parametrizations;
        if params.form != ParamForm::Kronecker || params.polynomials.len() != self.stage - 1 {
            return Err(bad("expected one Kronecker parametrization per non-primitive unknown"));
        }
        let matrix = self
            .lambda
            .iter()
            .map(|row| row.iter().map(|x| parse_int(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if matrix.iter().any(|row| row.len() != n) {
            return Err(bad("lambda is not square"));
        }
        let change = AffineChange::new(matrix).map_err(|e| bad(&e.to_string()))?;
        let lifting_point = self
            .lifting_point
            .iter()
            .map(|x| parse_int(x))
            .collect::<Result<Vec<_>, _>>()?;
        match &self.field {
            FieldDescriptor::Rational => {
                let polys = PolyRing::new(RationalField);
                let read = |cs: &[Coefficient]| -> Result<Poly<BigRational>, DocumentError> {
                    let coeffs = cs.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()?;
                    Ok(polys.from_coeffs(coeffs))
                };
                Ok(DecodedRepresentation::Rational(FiberRepresentation {
                    stage: self.stage,
                    change,
                    lifting_point,
                    minimal_poly: read(&self.minimal_polynomial)?,
                    params: params.polynomials.iter().map(|p| read(p)).collect::<Result<_, _>>()?,
                    form: ParamForm::Kronecker,
                }))
            }
            FieldDescriptor::Prime { modulus } => {
                let prime = parse_int(modulus)?
                    .to_biguint()
                    .filter(|p| p > &BigUint::from(2u32))
                    .ok_or_else(|| bad("modulus must be an odd prime"))?;
                let polys = PolyRing::new(ResidueRing::new(BigPrimeField::new(prime.clone()), 1));
                let read = |cs: &[Coefficient]| -> Result<Poly<BigUint>, DocumentError> {
                    let coeffs = cs
                        .iter()
                        .map(|c| match c {
                            Coefficient::Modular(v) => parse_int(v)?
                                .to_biguint()
                                .filter(|v| v < &prime)
                                .ok_or_else(|| bad("modular value out of range")),
                            Coefficient::Rational { .. } => Err(bad("rational value in a modular document")),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(polys.from_coeffs(coeffs))
                };
                let rep = FiberRepresentation {
                    stage: self.stage,
                    change,
                    lifting_point,
                    minimal_poly: read(&self.minimal_polynomial)?,
                    params: params.polynomials.iter().map(|p| read(p)).collect::<Result<_, _>>()?,
                    form: ParamForm::Kronecker,
                };
                Ok(DecodedRepresentation::Modular { prime, rep })
            }
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, DocumentError> {
    s.parse()
        .map_err(|_| DocumentError::Malformed(format!("not an integer: {s:?}")))
}

fn parse_rational(c: &Coefficient) -> Result<BigRational, DocumentError> {
    match c {
        Coefficient::Rational { num, den } => {
            let den = parse_int(den)?;
            if !den.is_positive() {
                return Err(DocumentError::Malformed(format!("denominator {den} is not positive")));
            }
            Ok(BigRational::new(parse_int(num)?, den))
        }
        Coefficient::Modular(v) => parse_int(v).map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_serialize_as_strings() {
        let c = Coefficient::Rational {
            num: "-1".into(),
            den: "3".into(),
        };
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"num":"-1","den":"3"}"#);
        let m: Coefficient = serde_json::from_str(r#""42""#).unwrap();
        assert_eq!(m, Coefficient::Modular("42".into()));
    }
}
