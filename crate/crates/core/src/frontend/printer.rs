use num_traits::{One, Signed, Zero};

use crate::algebra::{Expr, Generator, Word};
use crate::scalars::{GaussianRational, Monomial, ParamScalar, Rational};

/// How letters are named when printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Generators,
    /// θ, φ, ∂θ, ∂φ stand for the hermitean operators θ̂, φ̂, π̂_θ, π̂_φ.
    Hats,
}

fn letter(g: Generator, alphabet: Alphabet, latex: bool) -> &'static str {
    use Generator::*;
    match (alphabet, latex) {
        (Alphabet::Generators, false) => g.name(),
        (Alphabet::Generators, true) => match g {
            Y => "y",
            X => "x",
            Theta => "\\theta",
            Phi => "\\phi",
            DTheta => "\\partial_\\theta",
            DPhi => "\\partial_\\phi",
        },
        (Alphabet::Hats, false) => match g {
            Y => "y",
            X => "x",
            Theta => "theta_hat",
            Phi => "phi_hat",
            DTheta => "pi_theta",
            DPhi => "pi_phi",
        },
        (Alphabet::Hats, true) => match g {
            Y => "y",
            X => "x",
            Theta => "\\hat\\theta",
            Phi => "\\hat\\phi",
            DTheta => "\\hat\\pi_\\theta",
            DPhi => "\\hat\\pi_\\phi",
        },
    }
}

fn power(base: &str, n: usize, latex: bool) -> String {
    match (n, latex) {
        (1, _) => base.to_string(),
        (_, false) => format!("{base}^{n}"),
        (_, true) => format!("{base}^{{{n}}}"),
    }
}

fn word_factors(w: &Word, alphabet: Alphabet, latex: bool) -> Vec<String> {
    let mut out = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i];
        let run = letters[i..].iter().take_while(|&&l| l == g).count();
        out.push(power(letter(g, alphabet, latex), run, latex));
        i += run;
    }
    out
}

fn monomial_factors(m: Monomial, latex: bool) -> Vec<String> {
    let (a, b) = m;
    let mut out = Vec::new();
    if a > 0 {
        out.push(power("h", a as usize, latex));
    }
    if b > 0 {
        out.push(power(if latex { "h'" } else { "hp" }, b as usize, latex));
    }
    out
}

fn rational_str(r: &Rational, latex: bool) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if latex {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn gaussian_str(g: &GaussianRational, latex: bool) -> String {
    let sep = if latex { " " } else { "*" };
    let re = rational_str(&g.re.abs(), latex);
    let im = if g.im.abs().is_one() { "i".to_string() } else { format!("{}{sep}i", rational_str(&g.im.abs(), latex)) };
    let re_sign = if g.re.is_negative() { "-" } else { "" };
    let im_sign = if g.im.is_negative() { "-" } else { "+" };
    format!("{re_sign}{re} {im_sign} {im}")
}

/// A printed summand: sign plus the unsigned product.
struct Piece {
    negative: bool,
    body: String,
}

fn piece(c: &ParamScalar, rest: Vec<String>, latex: bool) -> Piece {
    let sep = if latex { " " } else { "*" };
    let single = if c.num_terms() == 1 { c.terms().next() } else { None };
    let (negative, mut factors) = match single {
        Some((&m, g)) if g.is_real() || g.re.is_zero() => {
            let imaginary = !g.is_real();
            let value = if imaginary { &g.im } else { &g.re };
            let mut f = Vec::new();
            if !value.abs().is_one() {
                f.push(rational_str(&value.abs(), latex));
            }
            if imaginary {
                f.push("i".to_string());
            }
            f.extend(monomial_factors(m, latex));
            (value.is_negative(), f)
        }
        Some((&m, g)) => {
            let mut f = vec![format!("({})", gaussian_str(g, latex))];
            f.extend(monomial_factors(m, latex));
            (false, f)
        }
        None => (false, vec![format!("({})", scalar_str(c, latex))]),
    };
    factors.extend(rest);
    if factors.is_empty() {
        factors.push("1".to_string());
    }
    Piece { negative, body: factors.join(sep) }
}

fn join(pieces: Vec<Piece>) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, p) in pieces.into_iter().enumerate() {
        match (k, p.negative) {
            (0, false) => {}
            (0, true) => out.push_str("- "),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&p.body);
    }
    out
}

fn scalar_str(c: &ParamScalar, latex: bool) -> String {
    let pieces = c
        .terms()
        .map(|(&m, g)| piece(&ParamScalar::monomial(g.clone(), m.0, m.1), Vec::new(), latex))
        .collect();
    join(pieces)
}

/// Text form of a scalar, monomials in increasing `(deg_h, deg_h')` order.
pub fn print_scalar(c: &ParamScalar) -> String {
    scalar_str(c, false)
}

pub fn print_scalar_latex(c: &ParamScalar) -> String {
    scalar_str(c, true)
}

pub(crate) fn print_expr(e: &Expr, alphabet: Alphabet, latex: bool) -> String {
    let pieces = e
        .terms()
        .map(|(w, c)| piece(c, word_factors(w, alphabet, latex), latex))
        .collect();
    join(pieces)
}
