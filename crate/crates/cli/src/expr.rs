//! Coefficient strings that may mention declared parameters affinely, such
//! as `"1+xi"`, `"-2*xi"` or `"(xi - 1)/3"`.

use std::collections::BTreeMap;

use num_traits::Zero;
use quadlie_core::exactla::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of expression")]
    Eof,
    #[error("undeclared parameter {0:?}")]
    Undeclared(String),
    #[error("nonlinear parameter expression")]
    Nonlinear,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter {0:?} has no value")]
    Unbound(String),
}

/// `constant + Σ coeff · param`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Affine {
    pub constant: Rat,
    pub coeffs: BTreeMap<String, Rat>,
}

impl Affine {
    fn constant(c: Rat) -> Self {
        Affine {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    fn add(mut self, other: Affine, sign: &Rat) -> Affine {
        self.constant += sign * other.constant;
        for (k, v) in other.coeffs {
            *self.coeffs.entry(k).or_insert_with(Rat::zero) += sign * v;
        }
        self
    }

    fn scale(mut self, c: &Rat) -> Affine {
        self.constant *= c;
        for v in self.coeffs.values_mut() {
            *v *= c;
        }
        self
    }

    fn mul(self, other: Affine) -> Result<Affine, ExprError> {
        if self.is_constant() {
            Ok(other.scale(&self.constant))
        } else if other.is_constant() {
            Ok(self.scale(&other.constant))
        } else {
            Err(ExprError::Nonlinear)
        }
    }

    pub fn evaluate(&self, values: &BTreeMap<String, Rat>) -> Result<Rat, ExprError> {
        let mut out = self.constant.clone();
        for (k, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let v = values.get(k).ok_or_else(|| ExprError::Unbound(k.clone()))?;
            out += c * v;
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    declared: &'a dyn Fn(&str) -> bool,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Affine, ExprError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.scale(&-exactla::one())
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let sign = if op == b'+' { exactla::one() } else { -exactla::one() };
            acc = acc.add(self.term()?, &sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Affine, ExprError> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                acc.mul(rhs)?
            } else {
                if !rhs.is_constant() {
                    return Err(ExprError::Nonlinear);
                }
                if rhs.constant.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                acc.scale(&(exactla::one() / rhs.constant))
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Affine, ExprError> {
        match self.peek() {
            None => Err(ExprError::Eof),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => Err(ExprError::Unexpected(c as char, self.pos)),
                    None => Err(ExprError::Eof),
                }
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.scale(&-exactla::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Affine::constant(exactla::parse_rat(digits).expect("digit string")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if !(self.declared)(name) {
                    return Err(ExprError::Undeclared(name.to_string()));
                }
                let mut coeffs = BTreeMap::new();
                coeffs.insert(name.to_string(), exactla::one());
                Ok(Affine {
                    constant: Rat::zero(),
                    coeffs,
                })
            }
            Some(c) => Err(ExprError::Unexpected(c as char, self.pos)),
        }
    }
}

/// Parses an affine expression over the declared parameter names.
pub fn parse_affine(src: &str, declared: &dyn Fn(&str) -> bool) -> Result<Affine, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        declared,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(ExprError::Unexpected(c as char, p.pos)),
    }
}

/// Evaluates `src` with the given parameter values. Plain rationals such as
/// `"-3/4"` take the fast path.
pub fn evaluate(src: &str, values: &BTreeMap<String, Rat>) -> Result<Rat, ExprError> {
    if let Some(r) = exactla::parse_rat(src.trim()) {
        return Ok(r);
    }
    parse_affine(src, &|name| values.contains_key(name))?.evaluate(values)
}
