//! Versioned JSON form. Rationals are always strings, never floats.
//!
//! ```json
//! { "version": 1,
//!   "terms": [ { "coeff": { "(1,0)": "1/2+0 i" }, "word": ["theta", "pph"] } ] }
//! ```

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{ParseError, ParseErrorKind};
use crate::algebra::{Expr, Generator, Word};
use crate::scalars::{GaussianRational, ParamScalar, Rational};

pub const JSON_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ExprDoc {
    version: u32,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coeff: BTreeMap<String, String>,
    word: Vec<String>,
}

fn json_err(msg: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Json(msg.into()), 0)
}

pub(crate) fn gaussian_to_string(g: &GaussianRational) -> String {
    let sign = if g.im.is_negative() { '-' } else { '+' };
    format!("{}{}{} i", g.re, sign, g.im.abs())
}

fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num = num.trim().parse().map_err(|_| json_err(format!("bad rational `{s}`")))?;
    let den: num_bigint::BigInt = den.trim().parse().map_err(|_| json_err(format!("bad rational `{s}`")))?;
    if den.sign() != num_bigint::Sign::Plus {
        return Err(json_err(format!("denominator must be positive in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn gaussian_from_str(s: &str) -> Result<GaussianRational, ParseError> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(GaussianRational::real(parse_rational(t)?));
    };
    let body = body.trim_end();
    // The sign separating the two parts is the last '+' or '-' after the first char.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last()
        .ok_or_else(|| json_err(format!("bad complex coefficient `{s}`")))?;
    let re = parse_rational(&body[..split])?;
    let mut im = parse_rational(&body[split + 1..])?;
    if body[split..].starts_with('-') {
        im = -im;
    }
    Ok(GaussianRational::new(re, im))
}

fn parse_monomial_key(k: &str) -> Result<(u32, u32), ParseError> {
    let inner = k
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| json_err(format!("bad monomial key `{k}`")))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| json_err(format!("bad monomial key `{k}`")))?;
    let a = a.trim().parse().map_err(|_| json_err(format!("bad monomial key `{k}`")))?;
    let b = b.trim().parse().map_err(|_| json_err(format!("bad monomial key `{k}`")))?;
    Ok((a, b))
}

pub(crate) fn scalar_to_map(c: &ParamScalar) -> BTreeMap<String, String> {
    c.terms()
        .map(|(&(a, b), g)| (format!("({a},{b})"), gaussian_to_string(g)))
        .collect()
}

pub fn print_json(e: &Expr) -> String {
    let doc = ExprDoc {
        version: JSON_VERSION,
        terms: e
            .terms()
            .map(|(w, c)| TermDoc {
                coeff: scalar_to_map(c),
                word: w.letters().iter().map(|g| g.name().to_string()).collect(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn parse_json(s: &str) -> Result<Expr, ParseError> {
    let doc: ExprDoc = serde_json::from_str(s).map_err(|e| json_err(e.to_string()))?;
    if doc.version != JSON_VERSION {
        return Err(json_err(format!("unsupported version {}", doc.version)));
    }
    let mut e = Expr::zero();
    for t in doc.terms {
        let letters = t
            .word
            .iter()
            .map(|n| Generator::from_name(n).ok_or_else(|| json_err(format!("unknown generator `{n}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut c = ParamScalar::zero();
        for (k, v) in &t.coeff {
            let (a, b) = parse_monomial_key(k)?;
            c += &ParamScalar::monomial(gaussian_from_str(v)?, a, b);
        }
        e.add_term(Word::new(letters), &c);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;
    use crate::scalars::rational;

    #[test]
    fn gaussian_strings() {
        let g = GaussianRational::new(rational(-1, 2), rational(-3, 4));
        assert_eq!(gaussian_to_string(&g), "-1/2-3/4 i");
        assert_eq!(gaussian_from_str("-1/2-3/4 i").unwrap(), g);
        assert_eq!(gaussian_from_str("5").unwrap(), GaussianRational::from_int(5));
        assert_eq!(gaussian_from_str("0+1 i").unwrap(), GaussianRational::i());
        assert!(gaussian_from_str("1/0").is_err());
    }

    #[test]
    fn json_shape() {
        let e = parse("1/2*h*theta*pph - i").unwrap();
        let s = print_json(&e);
        assert_eq!(
            s,
            r#"{"version":1,"terms":[{"coeff":{"(0,0)":"0-1 i"},"word":[]},{"coeff":{"(1,0)":"1/2+0 i"},"word":["theta","pph"]}]}"#
        );
        assert_eq!(parse_json(&s).unwrap(), e);
        assert!(!s.contains('.'));
    }

    #[test]
    fn json_errors() {
        assert!(parse_json(r#"{"version":2,"terms":[]}"#).is_err());
        assert!(parse_json(r#"{"version":1,"terms":[{"coeff":{"(0,0)":"1+0 i"},"word":["psi"]}]}"#).is_err());
        assert!(parse_json("not json").is_err());
    }
}
