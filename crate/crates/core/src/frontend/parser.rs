use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::lexer::{Spanned, Tok};
use super::{ParseError, ParseErrorKind};
use crate::algebra::{free_mul, Expr, Generator};
use crate::scalars::{ParamScalar, Rational};

pub(crate) const MAX_EXPONENT: u32 = 256;

pub(crate) struct Parser {
    tokens: Vec<Spanned>,
    at: usize,
    end: usize,
}

impl Parser {
    pub(crate) fn new(tokens: Vec<Spanned>, end: usize) -> Self {
        Parser { tokens, at: 0, end }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = self.peek().map_or_else(|| "end of input".to_string(), Tok::describe);
        if self.peek() == Some(&Tok::RParen) {
            return ParseError::new(ParseErrorKind::UnbalancedParen, self.pos());
        }
        ParseError::new(ParseErrorKind::Unexpected { expected, found }, self.pos())
    }

    pub(crate) fn parse(mut self) -> Result<Expr, ParseError> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return Err(self.unexpected("operator or end of input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = free_mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                return Ok(-&self.factor()?);
            }
            Some(Tok::LParen) => {
                let open = self.pos();
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    if self.peek().is_none() {
                        return Err(ParseError::new(ParseErrorKind::UnbalancedParen, open));
                    }
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                inner
            }
            _ => self.atom()?,
        };
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let n = self.exponent()?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => match n.to_u32() {
                Some(k) if k <= MAX_EXPONENT => Ok(k),
                _ => Err(ParseError::new(ParseErrorKind::ExponentTooLarge(MAX_EXPONENT), pos)),
            },
            Some(Tok::Minus) => Err(ParseError::new(ParseErrorKind::NegativeExponent, pos)),
            _ => {
                self.at -= 1;
                Err(self.unexpected("nonnegative integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(match name {
                    "h" => Expr::scalar(ParamScalar::h()),
                    "hp" => Expr::scalar(ParamScalar::hp()),
                    "i" => Expr::scalar(ParamScalar::i()),
                    g => Expr::gen(Generator::from_name(g).expect("lexer only emits known names")),
                })
            }
            Some(Tok::Int(num)) => {
                self.bump();
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let pos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) if d.is_zero() => {
                            return Err(ParseError::new(ParseErrorKind::ZeroDenominator, pos))
                        }
                        Some(Tok::Int(d)) => d,
                        _ => {
                            self.at -= 1;
                            return Err(self.unexpected("positive integer denominator"));
                        }
                    }
                } else {
                    BigInt::from(1)
                };
                Ok(Expr::scalar(ParamScalar::rational(Rational::new(num, den))))
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}
