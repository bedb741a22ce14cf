//! Exterior derivative, partial derivatives and the twisting maps `O^l_i`.

use thiserror::Error;

use crate::algebra::{Expr, Generator, Word};
use crate::rewrite::{RewriteError, Rewriter};
use crate::rmatrix::{coordinate, derivative, r_hat};
use crate::scalars::ParamScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("d is defined on forms; `{0}` is a derivative")]
    NotAForm(&'static str),
    #[error("expected a function of theta and phi, found `{0}`")]
    NotACoordinateFunction(&'static str),
    #[error("index {0} out of range (expected 1 or 2)")]
    BadIndex(usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Which partial derivative: 1 for θ, 2 for φ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartialIndex {
    Theta = 1,
    Phi = 2,
}

impl PartialIndex {
    pub fn from_index(i: usize) -> Result<Self, CalculusError> {
        match i {
            1 => Ok(PartialIndex::Theta),
            2 => Ok(PartialIndex::Phi),
            other => Err(CalculusError::BadIndex(other)),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

fn d_letter(g: Generator) -> Result<Option<Generator>, CalculusError> {
    match g {
        Generator::Theta => Ok(Some(Generator::X)),
        Generator::Phi => Ok(Some(Generator::Y)),
        Generator::X | Generator::Y => Ok(None),
        other => Err(CalculusError::NotAForm(other.name())),
    }
}

fn check_coordinates(e: &Expr) -> Result<(), CalculusError> {
    for w in e.words() {
        if let Some(g) = w.letters().iter().find(|g| !g.is_coordinate()) {
            return Err(CalculusError::NotACoordinateFunction(g.name()));
        }
    }
    Ok(())
}

/// `d` on the forms, by the graded Leibniz rule, in normal form.
pub fn exterior_d(rw: &Rewriter, e: &Expr) -> Result<Expr, CalculusError> {
    let e = rw.normalize(e)?;
    let mut out = Expr::zero();
    for (w, c) in e.terms() {
        let letters = w.letters();
        let mut prefix_parity = 0u8;
        for (p, &g) in letters.iter().enumerate() {
            if let Some(dg) = d_letter(g)? {
                let mut v = letters.to_vec();
                v[p] = dg;
                let coeff = if prefix_parity == 1 { -c } else { c.clone() };
                out.add_term(Word::new(v), &coeff);
            }
            prefix_parity ^= g.parity();
        }
    }
    Ok(rw.normalize(&out)?)
}

/// `∂_i f` for a function of the coordinates: the derivative-free part of
/// the normal form of `∂_i · f`.
pub fn partial(rw: &Rewriter, i: PartialIndex, f: &Expr) -> Result<Expr, CalculusError> {
    check_coordinates(f)?;
    let op = rw.mul(&Expr::gen(derivative(i.index())), f)?;
    Ok(op.filter_words(|w| w.letters().iter().all(|g| !g.is_derivative())))
}

/// `O^l_i` on a function of the coordinates, extended multiplicatively:
/// `O^l_i(fg) = O^k_i(f) O^l_k(g)`.
pub fn o_map(rw: &Rewriter, l: usize, i: usize, f: &Expr) -> Result<Expr, CalculusError> {
    PartialIndex::from_index(l)?;
    PartialIndex::from_index(i)?;
    check_coordinates(f)?;
    let f = rw.normalize(f)?;
    let mut out = Expr::zero();
    for (w, c) in f.terms() {
        out.add_scaled(&o_word(rw, l, i, w.letters()), c);
    }
    Ok(rw.normalize(&out)?)
}

fn o_generator(rw: &Rewriter, l: usize, i: usize, g: Generator) -> Expr {
    let r = rw.specialize_matrix(&r_hat());
    let j = if g == Generator::Theta { 1 } else { 2 };
    let mut out = Expr::zero();
    for k in 1..=2 {
        out.add_term(Word::new(vec![coordinate(k)]), r.entry(j, l, i, k));
    }
    out
}

fn o_word(rw: &Rewriter, l: usize, i: usize, letters: &[Generator]) -> Expr {
    match letters.split_first() {
        None if l == i => Expr::one(),
        None => Expr::zero(),
        Some((&g, rest)) => {
            let mut out = Expr::zero();
            for k in 1..=2 {
                let head = o_generator(rw, k, i, g);
                let tail = o_word(rw, l, k, rest);
                out = &out + &(&head * &tail);
            }
            out
        }
    }
}

/// `∂_i f` computed letter by letter from
/// `∂_i(Θ^j g) = δ^j_i g - O^l_i(Θ^j) ∂_l(g)`,
/// without normalizing derivative words.
pub fn partial_via_leibniz(rw: &Rewriter, i: PartialIndex, f: &Expr) -> Result<Expr, CalculusError> {
    check_coordinates(f)?;
    let mut out = Expr::zero();
    for (w, c) in f.terms() {
        out.add_scaled(&leibniz_word(rw, i.index(), w.letters()), c);
    }
    Ok(rw.normalize(&out)?)
}

fn leibniz_word(rw: &Rewriter, i: usize, letters: &[Generator]) -> Expr {
    let Some((&g, rest)) = letters.split_first() else {
        return Expr::zero();
    };
    let mut out = Expr::zero();
    if coordinate(i) == g {
        out = Expr::letters(rest);
    }
    for l in 1..=2 {
        let twisted = o_generator(rw, l, i, g);
        out = &out - &(&twisted * &leibniz_word(rw, l, rest));
    }
    out
}

/// `∂_i Θ^j - (δ^j_i - O^l_i(Θ^j) ∂_l)` in normal form, for all `i, j`.
pub fn commutation_residuals(rw: &Rewriter) -> Result<Vec<((usize, usize), Expr)>, CalculusError> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let lhs = Expr::letters(&[derivative(i), coordinate(j)]);
            let mut rhs = if i == j { Expr::one() } else { Expr::zero() };
            for l in 1..=2 {
                let o = o_generator(rw, l, i, coordinate(j));
                rhs = &rhs - &(&o * &Expr::gen(derivative(l)));
            }
            out.push(((i, j), rw.normalize(&(&lhs - &rhs))?));
        }
    }
    Ok(out)
}

/// All words of length at most `max_len` in the given letters.
pub fn words_up_to(letters: &[Generator], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::unit()];
    let mut layer = vec![Word::unit()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&g| w.concat(&Word::new(vec![g]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Scalar coefficient of `(-1)^parity(f)`.
pub fn parity_sign(f: &Expr) -> Option<ParamScalar> {
    let mut parities = f.words().map(Word::parity);
    let first = parities.next().unwrap_or(0);
    parities.all(|p| p == first).then(|| if first == 1 { ParamScalar::int(-1) } else { ParamScalar::one() })
}
