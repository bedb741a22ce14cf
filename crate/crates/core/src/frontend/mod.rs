//! Text, LaTeX and JSON forms of expressions.
//!
//! Text grammar (whitespace-insensitive, explicit `*` required):
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' nonneg-int)? | '-' factor | '(' expr ')' ('^' nonneg-int)?
//! atom     := theta | phi | x | y | dtheta | dphi | pth | pph | h | hp | i | rational
//! rational := int ('/' positive-int)?
//! ```
//!
//! `dtheta`/`dphi` are the differentials and are aliases of `x`/`y`. The
//! partial derivatives are `pth` and `pph`; do not confuse `dtheta` (a
//! one-form) with `pth` (a derivative).

mod json;
mod lexer;
mod parser;
mod printer;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::Expr;

pub use json::{parse_json, print_json, JSON_VERSION};
pub(crate) use json::scalar_to_map;
pub use printer::{print_scalar, print_scalar_latex, Alphabet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text, latex or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Latex => "latex",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("unbalanced parenthesis")]
    UnbalancedParen,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent too large (limit {0})")]
    ExponentTooLarge(u32),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, pos: usize) -> Self {
        Self { kind, pos }
    }
}

/// Parse the text grammar into an unreduced expression.
pub fn parse(s: &str) -> Result<Expr, ParseError> {
    let tokens = lexer::lex_text(s)?;
    parser::Parser::new(tokens, s.len()).parse()
}

/// Parse the LaTeX dialect produced by [`print`] with [`Format::Latex`].
pub fn parse_latex(s: &str) -> Result<Expr, ParseError> {
    let tokens = lexer::lex_latex(s)?;
    parser::Parser::new(tokens, s.len()).parse()
}

pub fn parse_as(s: &str, format: Format) -> Result<Expr, ParseError> {
    match format {
        Format::Text => parse(s),
        Format::Latex => parse_latex(s),
        Format::Json => parse_json(s),
    }
}

pub fn print(e: &Expr, format: Format) -> String {
    match format {
        Format::Text => printer::print_expr(e, Alphabet::Generators, false),
        Format::Latex => printer::print_expr(e, Alphabet::Generators, true),
        Format::Json => print_json(e),
    }
}

/// Print an expression whose letters stand for the hermitean operators.
pub fn print_hat(e: &Expr, format: Format) -> String {
    match format {
        Format::Text => printer::print_expr(e, Alphabet::Hats, false),
        Format::Latex => printer::print_expr(e, Alphabet::Hats, true),
        Format::Json => print_json(e),
    }
}

pub fn print_text(e: &Expr) -> String {
    print(e, Format::Text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator::*;
    use crate::rewrite::normalize;
    use crate::scalars::ParamScalar;

    fn n(s: &str) -> Expr {
        normalize(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(n("theta*phi + phi*theta").is_zero());
        assert_eq!(parse("dtheta").unwrap(), parse("x").unwrap());
        assert_eq!(parse("dphi").unwrap(), parse("y").unwrap());
        assert!(n("theta^2 - h*theta*phi").is_zero());
    }

    #[test]
    fn products_keep_order_and_scalars_commute() {
        let e = parse("theta*h*phi").unwrap();
        assert_eq!(e, Expr::term(ParamScalar::h(), [Theta, Phi].as_slice().into()));
        assert_ne!(parse("theta*phi").unwrap(), parse("phi*theta").unwrap());
        assert_eq!(parse("x^3").unwrap(), Expr::letters(&[X, X, X]));
        assert_eq!(parse("(x + y)^2").unwrap(), parse("x*x + x*y + y*x + y*y").unwrap());
    }

    #[test]
    fn print_examples() {
        assert_eq!(print(&n("phi*theta"), Format::Text), "- theta*phi");
        assert_eq!(print(&Expr::zero(), Format::Text), "0");
        assert_eq!(print(&n("pph*phi"), Format::Text), "1 + hp*phi*pth - phi*pph");
        assert_eq!(print(&parse("-1/2*i*h^2*hp*y*y").unwrap(), Format::Text), "- 1/2*i*h^2*hp*y^2");
        assert_eq!(print(&parse("(h + hp)*theta").unwrap(), Format::Text), "(hp + h)*theta");
        assert_eq!(print(&parse("(1 + 2*i)*pth").unwrap(), Format::Text), "(1 + 2*i)*pth");
    }

    #[test]
    fn latex_output() {
        assert_eq!(
            print(&n("theta*x"), Format::Latex),
            "h y \\theta + h h' y \\phi + x \\theta - h x \\phi"
        );
        assert_eq!(
            print(&parse("1/2*hp^2*pph").unwrap(), Format::Latex),
            "\\frac{1}{2} h'^{2} \\partial_\\phi"
        );
    }

    #[test]
    fn latex_roundtrip_examples() {
        for s in ["theta*x", "pph*phi", "-1/2*i*h^2*hp*y*y*pth", "(h + hp)*theta", "(1/3 - 2*i)*x*x", "0", "7"] {
            let e = n(s);
            let printed = print(&e, Format::Latex);
            assert_eq!(parse_latex(&printed).unwrap(), e, "{printed}");
        }
    }

    #[test]
    fn error_positions() {
        let err = parse("theta + $").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('$'));
        assert_eq!(err.pos, 8);

        let err = parse("(theta + phi").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedParen);
        assert_eq!(err.pos, 0);

        let err = parse("theta)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedParen);
        assert_eq!(err.pos, 5);

        let err = parse("3/0*x").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(err.pos, 2);

        let err = parse("x^-2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NegativeExponent);
        assert_eq!(err.pos, 2);

        let err = parse("theta phi").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Unexpected { .. }));
        assert_eq!(err.pos, 6);

        let err = parse("dpsi").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("dpsi".into()));

        assert!(parse("").is_err());
        assert!(parse("x^").is_err());
    }

    #[test]
    fn format_names() {
        assert_eq!("latex".parse::<Format>().unwrap(), Format::Latex);
        assert!("yaml".parse::<Format>().is_err());
    }
}
