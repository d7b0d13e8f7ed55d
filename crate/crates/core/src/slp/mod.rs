//! Straight-line programs: division-free arithmetic circuits encoding the
//! input polynomials, evaluated over arbitrary coefficient rings.

mod dense;
mod parse;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ring::{Dual, Ring};

pub use dense::{DensePoly, DenseRing};
pub use parse::parse_system;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlpError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("no equations given")]
    NoEquations,
    #[error("{equations} equations in {variables} variables; at most one per variable is supported")]
    TooManyEquations { equations: usize, variables: usize },
    #[error("equation {0} is the zero polynomial")]
    ZeroPolynomial(usize),
    #[error("instruction {0} references a later or missing value")]
    InvalidReference(usize),
    #[error("coordinate change matrix is singular")]
    SingularChange,
    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("constant {0} is not invertible in the evaluation ring")]
    ConstantNotInvertible(BigInt),
}

/// One step of a straight-line program. Operands are indices of earlier
/// instructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Var(usize),
    Const(BigInt),
    /// The inverse of an integer constant; only valid in rings where it is a unit.
    InvConst(BigInt),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
}

impl Instruction {
    fn operands(&self) -> Option<(usize, usize)> {
        match self {
            Instruction::Add(a, b) | Instruction::Sub(a, b) | Instruction::Mul(a, b) => {
                Some((*a, *b))
            }
            _ => None,
        }
    }

    fn is_arithmetic(&self) -> bool {
        matches!(
            self,
            Instruction::Add(..) | Instruction::Sub(..) | Instruction::Mul(..)
        )
    }
}

#[derive(Clone, Debug)]
pub struct StraightLineProgram {
    var_names: Vec<String>,
    instructions: Vec<Instruction>,
    outputs: Vec<usize>,
    degrees: Vec<u32>,
    height: u64,
}

impl StraightLineProgram {
    /// Validates a circuit and records per-output degrees and the maximal
    /// coefficient bit height of the expanded polynomials.
    pub fn new(
        var_names: Vec<String>,
        instructions: Vec<Instruction>,
        outputs: Vec<usize>,
    ) -> Result<Self, SlpError> {
        let n = var_names.len();
        if outputs.is_empty() {
            return Err(SlpError::NoEquations);
        }
        if outputs.len() > n {
            return Err(SlpError::TooManyEquations {
                equations: outputs.len(),
                variables: n,
            });
        }
        for (i, ins) in instructions.iter().enumerate() {
            let bad_var = matches!(ins, Instruction::Var(v) if *v >= n);
            if bad_var || ins.operands().is_some_and(|(a, b)| a >= i || b >= i) {
                return Err(SlpError::InvalidReference(i));
            }
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= instructions.len()) {
            return Err(SlpError::InvalidReference(o));
        }
        let mut program = StraightLineProgram {
            var_names,
            instructions,
            outputs,
            degrees: Vec::new(),
            height: 0,
        };
        let dense = program.expand();
        let mut height = 1;
        for (k, p) in dense.iter().enumerate() {
            if p.is_empty() {
                return Err(SlpError::ZeroPolynomial(k + 1));
            }
            for c in p.values() {
                let bits = c.numer().abs().bits().max(c.denom().bits());
                height = height.max(bits);
            }
        }
        let ring = DenseRing::new(n);
        program.degrees = dense.iter().map(|p| ring.total_degree(p).unwrap()).collect();
        program.height = height;
        Ok(program)
    }

    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    /// Number of equations.
    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// Total degree of each equation.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Maximal bit length of a coefficient of the expanded equations.
    pub fn height(&self) -> u64 {
        self.height
    }

    /// Overrides the recorded height, for inputs whose expansion is not
    /// representative of the intended coefficient size.
    pub fn with_height(mut self, height: u64) -> Self {
        self.height = height;
        self
    }

    /// Number of arithmetic instructions.
    pub fn length(&self) -> usize {
        self.instructions.iter().filter(|i| i.is_arithmetic()).count()
    }

    /// Expanded form of every equation.
    pub fn expand(&self) -> Vec<DensePoly> {
        let ring = DenseRing::new(self.n_vars());
        let point: Vec<DensePoly> = (0..self.n_vars()).map(|i| ring.variable(i)).collect();
        self.evaluate(&ring, &point)
            .expect("rational evaluation never fails")
    }

    pub fn evaluate<R: Ring>(&self, ring: &R, point: &[R::Elem]) -> Result<Vec<R::Elem>, SlpError> {
        let which: Vec<usize> = (0..self.n_outputs()).collect();
        self.evaluate_outputs(ring, point, &which)
    }

    /// Evaluates only the selected equations (0-based), skipping
    /// instructions they do not depend on.
    pub fn evaluate_outputs<R: Ring>(
        &self,
        ring: &R,
        point: &[R::Elem],
        which: &[usize],
    ) -> Result<Vec<R::Elem>, SlpError> {
        if point.len() != self.n_vars() {
            return Err(SlpError::DimensionMismatch {
                expected: self.n_vars(),
                got: point.len(),
            });
        }
        let mut live = vec![false; self.instructions.len()];
        for &k in which {
            live[self.outputs[k]] = true;
        }
        for i in (0..self.instructions.len()).rev() {
            if live[i] {
                if let Some((a, b)) = self.instructions[i].operands() {
                    live[a] = true;
                    live[b] = true;
                }
            }
        }
        let mut values: Vec<Option<R::Elem>> = vec![None; self.instructions.len()];
        for (i, ins) in self.instructions.iter().enumerate() {
            if !live[i] {
                continue;
            }
            let get = |j: usize| values[j].as_ref().unwrap();
            let v = match ins {
                Instruction::Var(k) => point[*k].clone(),
                Instruction::Const(c) => ring.from_int(c),
                Instruction::InvConst(c) => ring
                    .inv(&ring.from_int(c))
                    .ok_or_else(|| SlpError::ConstantNotInvertible(c.clone()))?,
                Instruction::Add(a, b) => ring.add(get(*a), get(*b)),
                Instruction::Sub(a, b) => ring.sub(get(*a), get(*b)),
                Instruction::Mul(a, b) => ring.mul(get(*a), get(*b)),
            };
            values[i] = Some(v);
        }
        Ok(which
            .iter()
            .map(|&k| values[self.outputs[k]].clone().unwrap())
            .collect())
    }

    /// Values of the first `rows` equations and their partial derivatives
    /// with respect to the variables in `wrt`, by forward-mode
    /// differentiation (one pass per variable).
    ///
    /// Row `i` of the returned matrix holds `dF_i / dX_{wrt[j]}` in column `j`.
    #[allow(clippy::type_complexity)]
    pub fn evaluate_jacobian<R: Ring>(
        &self,
        ring: &R,
        point: &[R::Elem],
        rows: usize,
        wrt: &[usize],
    ) -> Result<(Vec<R::Elem>, Vec<Vec<R::Elem>>), SlpError> {
        let which: Vec<usize> = (0..rows).collect();
        let dual = Dual::new(ring.clone());
        let mut values = None;
        let mut matrix = vec![Vec::with_capacity(wrt.len()); rows];
        for &var in wrt {
            let lifted: Vec<_> = point
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    if i == var {
                        dual.variable(x.clone())
                    } else {
                        dual.constant(x.clone())
                    }
                })
                .collect();
            let out = self.evaluate_outputs(&dual, &lifted, &which)?;
            for (row, (_, d)) in matrix.iter_mut().zip(&out) {
                row.push(d.clone());
            }
            if values.is_none() {
                values = Some(out.into_iter().map(|(v, _)| v).collect());
            }
        }
        let values = match values {
            Some(v) => v,
            None => self.evaluate_outputs(ring, point, &which)?,
        };
        Ok((values, matrix))
    }

    /// The program in the coordinates `Y = change * X`: evaluating the
    /// result at `y` equals evaluating `self` at `X = change^{-1} y`.
    ///
    /// The inverse is stored as the integer adjugate and a single
    /// [`Instruction::InvConst`] of the determinant, emitted only when the
    /// determinant is not one.
    pub fn compose_affine(&self, change: &AffineChange) -> Result<Self, SlpError> {
        let n = self.n_vars();
        if change.dim() != n {
            return Err(SlpError::DimensionMismatch {
                expected: n,
                got: change.dim(),
            });
        }
        if change.is_identity() {
            return Ok(self.clone());
        }
        let mut ins: Vec<Instruction> = (0..n).map(Instruction::Var).collect();
        let inv_det = if change.det().is_one() {
            None
        } else {
            ins.push(Instruction::InvConst(change.det().clone()));
            Some(ins.len() - 1)
        };
        let mut x_index = Vec::with_capacity(n);
        for row in change.adjugate() {
            let mut acc: Option<usize> = None;
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (term, negate) = if a.abs().is_one() {
                    (j, a.is_negative())
                } else {
                    ins.push(Instruction::Const(a.clone()));
                    ins.push(Instruction::Mul(ins.len() - 1, j));
                    (ins.len() - 1, false)
                };
                acc = Some(match (acc, negate) {
                    (None, false) => term,
                    (None, true) => {
                        ins.push(Instruction::Const(BigInt::zero()));
                        ins.push(Instruction::Sub(ins.len() - 1, term));
                        ins.len() - 1
                    }
                    (Some(s), false) => {
                        ins.push(Instruction::Add(s, term));
                        ins.len() - 1
                    }
                    (Some(s), true) => {
                        ins.push(Instruction::Sub(s, term));
                        ins.len() - 1
                    }
                });
            }
            let mut x = acc.expect("invertible matrix has no zero row");
            if let Some(d) = inv_det {
                ins.push(Instruction::Mul(x, d));
                x = ins.len() - 1;
            }
            x_index.push(x);
        }
        let offset = ins.len();
        let remap = |i: usize| -> usize {
            match self.instructions[i] {
                Instruction::Var(k) => x_index[k],
                _ => offset + i,
            }
        };
        for old in &self.instructions {
            ins.push(match old {
                Instruction::Var(k) => Instruction::Var(*k),
                Instruction::Const(c) => Instruction::Const(c.clone()),
                Instruction::InvConst(c) => Instruction::InvConst(c.clone()),
                Instruction::Add(a, b) => Instruction::Add(remap(*a), remap(*b)),
                Instruction::Sub(a, b) => Instruction::Sub(remap(*a), remap(*b)),
                Instruction::Mul(a, b) => Instruction::Mul(remap(*a), remap(*b)),
            });
        }
        let outputs = self.outputs.iter().map(|&o| remap(o)).collect();
        Ok(StraightLineProgram {
            var_names: self.var_names.clone(),
            instructions: ins,
            outputs,
            degrees: self.degrees.clone(),
            height: self.height,
        })
    }
}

/// An invertible integer matrix `L` defining new coordinates `Y = L X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChange {
    matrix: Vec<Vec<BigInt>>,
    det: BigInt,
    adjugate: Vec<Vec<BigInt>>,
}

impl AffineChange {
    pub fn new(matrix: Vec<Vec<BigInt>>) -> Result<Self, SlpError> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|row| row.len() != n) {
            return Err(SlpError::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        let (det, inverse) = rational_inverse(&matrix).ok_or(SlpError::SingularChange)?;
        let det_q = BigRational::from_integer(det.clone());
        let adjugate = inverse
            .iter()
            .map(|row| row.iter().map(|x| (x * &det_q).to_integer()).collect())
            .collect();
        Ok(AffineChange {
            matrix,
            det,
            adjugate,
        })
    }

    pub fn identity(n: usize) -> Self {
        let matrix: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        AffineChange {
            adjugate: matrix.clone(),
            matrix,
            det: BigInt::one(),
        }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self, SlpError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn adjugate(&self) -> &[Vec<BigInt>] {
        &self.adjugate
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// `L x`.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `L x` over an arbitrary ring.
    pub fn apply_in<R: Ring>(&self, ring: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter().zip(x).fold(ring.zero(), |acc, (a, b)| {
                    ring.add(&acc, &ring.mul(&ring.from_int(a), b))
                })
            })
            .collect()
    }
}

/// Determinant and inverse by Gauss–Jordan elimination over the rationals.
fn rational_inverse(matrix: &[Vec<BigInt>]) -> Option<(BigInt, Vec<Vec<BigRational>>)> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[i][j] -= t;
                let t = &f * &inv[col][j];
                inv[i][j] -= t;
            }
        }
    }
    Some((det.to_integer(), inv))
}
