//! Text front end: `vars x, y;` followed by one `;`-terminated polynomial
//! expression per equation.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Instruction, SlpError, StraightLineProgram};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    line: usize,
    col: usize,
}

fn tokenize(source: &str) -> Result<Vec<Spanned>, SlpError> {
    let mut out = Vec::new();
    for (line_no, line) in source.lines().enumerate() {
        let line_body = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line_body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (line_no + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let token = if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    token: Token::Int(digits.parse().unwrap()),
                    line,
                    col,
                });
                continue;
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned {
                    token: Token::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
                continue;
            } else {
                match c {
                    '+' => Token::Plus,
                    '-' | '\u{2212}' => Token::Minus,
                    '*' => Token::Star,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ',' => Token::Comma,
                    ';' => Token::Semi,
                    _ => {
                        return Err(SlpError::Syntax {
                            line,
                            col,
                            message: format!("unexpected character '{c}'"),
                        })
                    }
                }
            };
            out.push(Spanned { token, line, col });
            i += 1;
        }
    }
    Ok(out)
}

/// An operand during parsing: either a folded integer literal or an
/// instruction index.
#[derive(Clone, Debug)]
enum Operand {
    Literal(BigInt),
    Node(usize),
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    vars: HashMap<String, usize>,
    instructions: Vec<Instruction>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> SlpError {
        let (line, col) = self.here();
        SlpError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), SlpError> {
        if self.peek() == Some(&token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn push(&mut self, ins: Instruction) -> usize {
        self.instructions.push(ins);
        self.instructions.len() - 1
    }

    fn node(&mut self, op: Operand) -> usize {
        match op {
            Operand::Node(i) => i,
            Operand::Literal(c) => self.push(Instruction::Const(c)),
        }
    }

    fn binary(&mut self, a: Operand, b: Operand, make: fn(usize, usize) -> Instruction) -> Operand {
        let a = self.node(a);
        let b = self.node(b);
        Operand::Node(self.push(make(a, b)))
    }

    fn header(&mut self) -> Result<Vec<String>, SlpError> {
        match self.peek() {
            Some(Token::Ident(kw)) if kw == "vars" => self.pos += 1,
            _ => return Err(self.error("expected 'vars' declaration")),
        }
        let mut names = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Token::Ident(name)) => {
                    if self.vars.contains_key(&name) {
                        return Err(self.error(format!("variable '{name}' declared twice")));
                    }
                    self.vars.insert(name.clone(), names.len());
                    names.push(name);
                    self.pos += 1;
                }
                _ => return Err(self.error("expected variable name")),
            }
            match self.peek() {
                Some(Token::Comma) => self.pos += 1,
                Some(Token::Semi) => {
                    self.pos += 1;
                    return Ok(names);
                }
                _ => return Err(self.error("expected ',' or ';'")),
            }
        }
    }

    fn expr(&mut self) -> Result<Operand, SlpError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.binary(acc, rhs, Instruction::Add);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.binary(acc, rhs, Instruction::Sub);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Operand, SlpError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = self.binary(acc, rhs, Instruction::Mul);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Operand, SlpError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return match self.unary()? {
                Operand::Literal(c) => Ok(Operand::Literal(-c)),
                node => Ok(self.binary(Operand::Literal(BigInt::from(0)), node, Instruction::Sub)),
            };
        }
        if self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Operand, SlpError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exponent = match self.peek().cloned() {
            Some(Token::Int(k)) => {
                self.pos += 1;
                u64::try_from(&k).map_err(|_| self.error("exponent too large"))?
            }
            _ => return Err(self.error("expected a nonnegative integer exponent")),
        };
        if let Operand::Literal(c) = &base {
            let e = u32::try_from(exponent).map_err(|_| self.error("exponent too large"))?;
            return Ok(Operand::Literal(num_traits::pow(c.clone(), e as usize)));
        }
        if exponent == 0 {
            return Ok(Operand::Literal(BigInt::from(1)));
        }
        let base = self.node(base);
        let mut acc = base;
        for bit in (0..63 - exponent.leading_zeros()).rev() {
            acc = self.push(Instruction::Mul(acc, acc));
            if exponent >> bit & 1 == 1 {
                acc = self.push(Instruction::Mul(acc, base));
            }
        }
        Ok(Operand::Node(acc))
    }

    fn atom(&mut self) -> Result<Operand, SlpError> {
        match self.peek().cloned() {
            Some(Token::Int(c)) => {
                self.pos += 1;
                Ok(Operand::Literal(c))
            }
            Some(Token::Ident(name)) => match self.vars.get(&name) {
                Some(&i) => {
                    self.pos += 1;
                    Ok(Operand::Node(i))
                }
                None => Err(self.error(format!("undeclared variable '{name}'"))),
            },
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

/// Parses a system of polynomial equations into a straight-line program.
pub fn parse_system(source: &str) -> Result<StraightLineProgram, SlpError> {
    let tokens = tokenize(source)?;
    let end = match tokens.last() {
        Some(s) => (s.line, s.col + 1),
        None => (1, 1),
    };
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
        vars: HashMap::new(),
        instructions: Vec::new(),
    };
    let names = parser.header()?;
    parser.instructions = (0..names.len()).map(Instruction::Var).collect();
    let mut outputs = Vec::new();
    while parser.peek().is_some() {
        let value = parser.expr()?;
        parser.expect(Token::Semi, "';' after expression")?;
        outputs.push(parser.node(value));
    }
    StraightLineProgram::new(names, parser.instructions, outputs)
}
