//! The textual language of cobordism classes: ℚ-linear combinations of
//! products of projective spaces, e.g. `4*CP2 - 3*CP1^2`.
//!
//! Grammar (whitespace insensitive, no parentheses):
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational '*'] factor ('*' factor)*
//! factor   := 'CP' int ['^' int]
//! rational := int ['/' int]
//! ```
//! `parse` builds the syntax tree; `elaborate` sorts factors, merges like
//! terms and checks that every term has the same dimension. Canonical
//! output from [`CobordismClass`] parses back to the same class.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chern_geometry::ManifoldModel;
use crate::cobordism_algebra::CobordismClass;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },
    #[error("CP0 at position {position}: factors must have n ≥ 1")]
    PointFactor { position: usize },
    #[error("power 0 at position {position}: powers must be ≥ 1")]
    ZeroPower { position: usize },
    #[error("mixed degrees: expected dimension {expected}, found {found}")]
    MixedDegrees { expected: u32, found: u32 },
    #[error("empty expression")]
    Empty,
}

/// One parsed term: a rational coefficient (sign folded in) times a
/// product of CP-literals in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTerm {
    pub coefficient: BigRational,
    /// (n, power) for each `CPn[^power]` literal.
    pub factors: Vec<(u32, u32)>,
}

/// The syntax tree of an expression: a sum of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr {
    pub terms: Vec<ClassTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Cp,
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ExprError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            _ if c.is_whitespace() => {
                chars.next();
            }
            'C' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, 'P')) => {
                        chars.next();
                        tokens.push((Token::Cp, pos));
                    }
                    _ => {
                        return Err(ExprError::Syntax {
                            position: pos,
                            message: "expected 'CP'".into(),
                        })
                    }
                }
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Int(digits), pos));
            }
            '+' => {
                chars.next();
                tokens.push((Token::Plus, pos));
            }
            '-' => {
                chars.next();
                tokens.push((Token::Minus, pos));
            }
            '*' => {
                chars.next();
                tokens.push((Token::Star, pos));
            }
            '/' => {
                chars.next();
                tokens.push((Token::Slash, pos));
            }
            '^' => {
                chars.next();
                tokens.push((Token::Caret, pos));
            }
            _ => {
                return Err(ExprError::Syntax {
                    position: pos,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax {
            position: self.position(),
            message: message.into(),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(String, usize), ExprError> {
        let pos = self.position();
        match self.advance() {
            Some(Token::Int(digits)) => Ok((digits, pos)),
            _ => Err(ExprError::Syntax {
                position: pos,
                message: format!("expected {what}"),
            }),
        }
    }

    fn small_int(digits: &str, pos: usize, what: &str) -> Result<u32, ExprError> {
        digits.parse::<u32>().map_err(|_| ExprError::Syntax {
            position: pos,
            message: format!("{what} too large"),
        })
    }

    fn parse_expr(&mut self) -> Result<ClassExpr, ExprError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Token::Plus) => {
                self.advance();
                false
            }
            Some(Token::Minus) => {
                self.advance();
                true
            }
            _ => false,
        };
        loop {
            terms.push(self.parse_term(negative)?);
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    negative = false;
                }
                Some(Token::Minus) => {
                    self.advance();
                    negative = true;
                }
                None => break,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
        }
        Ok(ClassExpr { terms })
    }

    fn parse_term(&mut self, negative: bool) -> Result<ClassTerm, ExprError> {
        let mut coefficient = if matches!(self.peek(), Some(Token::Int(_))) {
            let (digits, _) = self.expect_int("a number")?;
            let numer = BigInt::parse_bytes(digits.as_bytes(), 10).unwrap();
            let denom = if matches!(self.peek(), Some(Token::Slash)) {
                self.advance();
                let (digits, pos) = self.expect_int("a denominator")?;
                let d = BigInt::parse_bytes(digits.as_bytes(), 10).unwrap();
                if d.is_zero() {
                    return Err(ExprError::ZeroDenominator { position: pos });
                }
                d
            } else {
                BigInt::one()
            };
            if !matches!(self.peek(), Some(Token::Star)) {
                return Err(self.error("expected '*' after the coefficient"));
            }
            self.advance();
            BigRational::new(numer, denom)
        } else {
            BigRational::one()
        };
        if negative {
            coefficient = -coefficient;
        }
        let mut factors = vec![self.parse_factor()?];
        while matches!(self.peek(), Some(Token::Star)) {
            self.advance();
            factors.push(self.parse_factor()?);
        }
        Ok(ClassTerm {
            coefficient,
            factors,
        })
    }

    fn parse_factor(&mut self) -> Result<(u32, u32), ExprError> {
        if !matches!(self.peek(), Some(Token::Cp)) {
            return Err(self.error("expected 'CP'"));
        }
        self.advance();
        let (digits, pos) = self.expect_int("a dimension after 'CP'")?;
        let n = Self::small_int(&digits, pos, "dimension")?;
        if n == 0 {
            return Err(ExprError::PointFactor { position: pos });
        }
        let power = if matches!(self.peek(), Some(Token::Caret)) {
            self.advance();
            let (digits, pos) = self.expect_int("a power after '^'")?;
            let p = Self::small_int(&digits, pos, "power")?;
            if p == 0 {
                return Err(ExprError::ZeroPower { position: pos });
            }
            p
        } else {
            1
        };
        Ok((n, power))
    }
}

/// Parses an expression into its syntax tree.
pub fn parse(text: &str) -> Result<ClassExpr, ExprError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    parser.parse_expr()
}

/// Turns a syntax tree into a class: factors sorted, like terms merged,
/// zero coefficients dropped. All terms must share one dimension.
pub fn elaborate(expr: &ClassExpr) -> Result<CobordismClass, ExprError> {
    let mut degree: Option<u32> = None;
    let mut terms = Vec::with_capacity(expr.terms.len());
    for term in &expr.terms {
        let mut factors = Vec::new();
        for &(n, power) in &term.factors {
            if n == 0 {
                return Err(ExprError::PointFactor { position: 0 });
            }
            if power == 0 {
                return Err(ExprError::ZeroPower { position: 0 });
            }
            factors.extend(std::iter::repeat(n).take(power as usize));
        }
        let model = ManifoldModel::new(factors).expect("factors checked above");
        let dim = model.dimension();
        match degree {
            None => degree = Some(dim),
            Some(d) if d != dim => {
                return Err(ExprError::MixedDegrees {
                    expected: d,
                    found: dim,
                })
            }
            Some(_) => {}
        }
        terms.push((model, term.coefficient.clone()));
    }
    let degree = degree.ok_or(ExprError::Empty)?;
    Ok(CobordismClass::from_terms(degree, terms).expect("degrees checked above"))
}

/// Parse and elaborate in one step — what the CLI does with `--class`.
pub fn parse_class(text: &str) -> Result<CobordismClass, ExprError> {
    elaborate(&parse(text)?)
}
