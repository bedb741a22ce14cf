//! Free graded algebra on the six generators.
//!
//! Multiplication here is plain concatenation of words; no relation is
//! applied until an expression goes through [`crate::rewrite`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::{GaussianRational, Param, ParamScalar, ScalarError};

/// Generators in canonical rank order: `y < x < θ < φ < ∂θ < ∂φ`.
///
/// `x = dθ` and `y = dφ` are the differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Y,
    X,
    Theta,
    Phi,
    DTheta,
    DPhi,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Y,
        Generator::X,
        Generator::Theta,
        Generator::Phi,
        Generator::DTheta,
        Generator::DPhi,
    ];

    pub fn rank(self) -> usize {
        self as usize
    }

    /// 1 for θ, φ, ∂θ, ∂φ; 0 for the differentials x, y.
    pub fn parity(self) -> u8 {
        match self {
            Generator::X | Generator::Y => 0,
            _ => 1,
        }
    }

    pub fn is_coordinate(self) -> bool {
        matches!(self, Generator::Theta | Generator::Phi)
    }

    pub fn is_differential(self) -> bool {
        matches!(self, Generator::X | Generator::Y)
    }

    pub fn is_derivative(self) -> bool {
        matches!(self, Generator::DTheta | Generator::DPhi)
    }

    /// Name in the text grammar.
    pub fn name(self) -> &'static str {
        match self {
            Generator::Y => "y",
            Generator::X => "x",
            Generator::Theta => "theta",
            Generator::Phi => "phi",
            Generator::DTheta => "pth",
            Generator::DPhi => "pph",
        }
    }

    pub fn from_name(s: &str) -> Option<Generator> {
        Some(match s {
            "y" | "dphi" => Generator::Y,
            "x" | "dtheta" => Generator::X,
            "theta" => Generator::Theta,
            "phi" => Generator::Phi,
            "pth" => Generator::DTheta,
            "pph" => Generator::DPhi,
            _ => return None,
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial in the free algebra. The empty word is the unit.
///
/// Ordered by length first, then lexicographically by generator rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> u8 {
        self.0.iter().map(|g| g.parity()).sum::<u8>() % 2
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.0.contains(&g)
    }

    pub fn count(&self, g: Generator) -> usize {
        self.0.iter().filter(|&&l| l == g).count()
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl From<&[Generator]> for Word {
    fn from(v: &[Generator]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parity of a word: sum of letter parities mod 2.
pub fn parity(w: &Word) -> u8 {
    w.parity()
}

/// Scalar-weighted word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: ParamScalar,
    pub word: Word,
}

/// Finite sum of terms, stored as a map word -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<Word, ParamScalar>,
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(ParamScalar::one())
    }

    pub fn scalar(c: ParamScalar) -> Self {
        Self::term(c, Word::unit())
    }

    pub fn gen(g: Generator) -> Self {
        Self::word(Word(vec![g]))
    }

    pub fn word(w: Word) -> Self {
        Self::term(ParamScalar::one(), w)
    }

    pub fn letters(gs: &[Generator]) -> Self {
        Self::word(Word::from(gs))
    }

    pub fn term(c: ParamScalar, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in print order (length, then rank-lexicographic).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = Term> {
        self.terms.into_iter().map(|(word, coeff)| Term { coeff, word })
    }

    pub fn coeff(&self, w: &Word) -> ParamScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn scalar_part(&self) -> ParamScalar {
        self.coeff(&Word::unit())
    }

    pub fn add_term(&mut self, w: Word, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Expr, c: &ParamScalar) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Expr {
        let mut out = Expr::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Expr {
        let mut out = Expr::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    pub fn subst(&self, target: Param, replacement: &ParamScalar) -> Result<Expr, ScalarError> {
        let mut out = Expr::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.subst(target, replacement)?);
        }
        Ok(out)
    }

    /// Longest word length; 0 for the zero expression.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn uses_only(&self, allowed: impl Fn(Generator) -> bool) -> bool {
        self.terms.keys().all(|w| w.letters().iter().all(|&g| allowed(g)))
    }

    pub fn in_subalgebra(&self, tag: SubalgebraTag) -> bool {
        self.uses_only(|g| tag.contains(g))
    }

    /// Keep only the terms whose word satisfies `keep`.
    pub fn filter_words(&self, keep: impl Fn(&Word) -> bool) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Expr {
        let mut acc = Expr::one();
        for _ in 0..n {
            acc = free_mul(&acc, self);
        }
        acc
    }
}

impl From<Generator> for Expr {
    fn from(g: Generator) -> Self {
        Expr::gen(g)
    }
}

impl From<ParamScalar> for Expr {
    fn from(c: ParamScalar) -> Self {
        Expr::scalar(c)
    }
}

impl FromIterator<Term> for Expr {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        let mut e = Expr::zero();
        for t in iter {
            e.add_term(t.word, &t.coeff);
        }
        e
    }
}

/// Bilinear extension of word concatenation.
pub fn free_mul(a: &Expr, b: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            out.add_term(wa.concat(wb), &(ca * cb));
        }
    }
    out
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &ParamScalar::one());
        out
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &ParamScalar::int(-1));
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&ParamScalar::int(-1))
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        free_mul(self, rhs)
    }
}

impl Mul<&Expr> for &ParamScalar {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        rhs.scale(self)
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$f:ident),*) => {$(
        impl $tr for Expr {
            type Output = Expr;
            fn $f(self, rhs: Expr) -> Expr {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl Mul<Expr> for ParamScalar {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        rhs.scale(&self)
    }
}

impl From<GaussianRational> for Expr {
    fn from(c: GaussianRational) -> Self {
        Expr::scalar(c.into())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_text(self))
    }
}

/// Generator subsets that close under the relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubalgebraTag {
    /// θ, φ
    Coordinates,
    /// x, y
    Differentials,
    /// ∂θ, ∂φ
    Derivatives,
    /// θ, φ, x, y
    CoordinatesAndDifferentials,
    /// θ, φ, ∂θ, ∂φ
    CoordinatesAndDerivatives,
    Full,
}

impl SubalgebraTag {
    pub fn contains(self, g: Generator) -> bool {
        match self {
            SubalgebraTag::Coordinates => g.is_coordinate(),
            SubalgebraTag::Differentials => g.is_differential(),
            SubalgebraTag::Derivatives => g.is_derivative(),
            SubalgebraTag::CoordinatesAndDifferentials => !g.is_derivative(),
            SubalgebraTag::CoordinatesAndDerivatives => !g.is_differential(),
            SubalgebraTag::Full => true,
        }
    }

    pub fn generators(self) -> Vec<Generator> {
        Generator::ALL.into_iter().filter(|&g| self.contains(g)).collect()
    }
}

pub fn in_subalgebra(e: &Expr, tag: SubalgebraTag) -> bool {
    e.in_subalgebra(tag)
}

#[cfg(test)]
mod tests {
    use super::Generator::*;
    use super::*;

    fn w(gs: &[Generator]) -> Word {
        Word::from(gs)
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity(&w(&[Theta, Phi])), 0);
        assert_eq!(parity(&w(&[X, Theta])), 1);
        assert_eq!(parity(&Word::unit()), 0);
    }

    #[test]
    fn rank_order() {
        for pair in Generator::ALL.windows(2) {
            assert!(pair[0].rank() < pair[1].rank());
        }
    }

    #[test]
    fn free_mul_examples() {
        let th = Expr::gen(Theta);
        let ph = Expr::gen(Phi);
        assert_eq!(free_mul(&th, &ph), Expr::letters(&[Theta, Phi]));

        let a = th.scale(&ParamScalar::h());
        let b = ph.scale(&ParamScalar::hp());
        assert_eq!(
            free_mul(&a, &b),
            Expr::term(&ParamScalar::h() * &ParamScalar::hp(), w(&[Theta, Phi]))
        );

        let sum = &th + &ph;
        assert_eq!(
            free_mul(&sum, &th),
            &Expr::letters(&[Theta, Theta]) + &Expr::letters(&[Phi, Theta])
        );
    }

    #[test]
    fn subalgebra_examples() {
        assert!(Expr::letters(&[Theta, Phi]).in_subalgebra(SubalgebraTag::Coordinates));
        assert!(!Expr::letters(&[Theta, DPhi]).in_subalgebra(SubalgebraTag::Coordinates));
        assert!(Expr::letters(&[Y, X]).in_subalgebra(SubalgebraTag::Differentials));
        assert!(Expr::zero().in_subalgebra(SubalgebraTag::Derivatives));
    }

    #[test]
    fn cancellation_is_exact() {
        let e = &Expr::letters(&[X, Theta]) + &Expr::gen(Phi).scale(&ParamScalar::h());
        assert!((&e - &e).is_zero());
    }

    #[test]
    fn word_order_is_length_then_rank() {
        assert!(w(&[DPhi]) < w(&[Y, Y]));
        assert!(w(&[Y, Theta]) < w(&[X, Theta]));
        assert!(Word::unit() < w(&[Y]));
    }
}
