//! Seeded random expressions for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Expr, Generator, Word};
use crate::scalars::{GaussianRational, ParamScalar, Rational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn small_rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-4i64..=4);
        let den = self.rng.gen_range(1i64..=3);
        Rational::new(num.into(), den.into())
    }

    /// A nonzero coefficient: a small Gaussian rational times a monomial of
    /// degree at most two in `h`, `h'`, occasionally a sum of two such.
    pub fn scalar(&mut self) -> ParamScalar {
        let mut out = ParamScalar::zero();
        let parts = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        for _ in 0..parts {
            let im = if self.rng.gen_bool(0.2) { self.small_rational() } else { Rational::from_integer(0.into()) };
            let g = GaussianRational::new(self.small_rational(), im);
            let a = self.rng.gen_range(0..=2);
            let b = self.rng.gen_range(0..=2 - a);
            out += &ParamScalar::monomial(g, a, b);
        }
        if out.is_zero() {
            ParamScalar::one()
        } else {
            out
        }
    }

    pub fn word(&mut self, letters: &[Generator], max_len: usize) -> Word {
        let len = self.rng.gen_range(0..=max_len);
        Word::new((0..len).map(|_| *letters.choose(&mut self.rng).expect("letters")).collect())
    }

    /// An unreduced expression of at most `max_terms` terms, words of
    /// length at most `max_len` in `letters`.
    pub fn expr(&mut self, letters: &[Generator], max_terms: usize, max_len: usize) -> Expr {
        let n = self.rng.gen_range(1..=max_terms);
        let mut e = Expr::zero();
        for _ in 0..n {
            let c = self.scalar();
            let w = self.word(letters, max_len);
            e.add_term(w, &c);
        }
        e
    }

    pub fn coordinate_poly(&mut self) -> Expr {
        self.expr(&[Generator::Theta, Generator::Phi], 3, 3)
    }

    pub fn full(&mut self, max_len: usize) -> Expr {
        self.expr(&Generator::ALL, 3, max_len)
    }

    /// Coordinates and derivatives only.
    pub fn phase_space(&mut self, max_len: usize) -> Expr {
        use Generator::*;
        self.expr(&[Theta, Phi, DTheta, DPhi], 3, max_len)
    }
}
