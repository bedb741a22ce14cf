//! Exact coefficient ring: polynomials in the two deformation parameters
//! `h`, `h'` with Gaussian-rational coefficients.
//!
//! The parameters are treated as commuting, algebraically independent
//! indeterminates. Conjugation is antilinear on the numeric part and sends
//! `h -> -h`, `h' -> -h'`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `re + im·i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*i", self.re, sign, self.im.abs())
            }
        }
    }
}

/// One of the two deformation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    H,
    HPrime,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::H => "h",
            Param::HPrime => "hp",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot substitute {target} by an expression that contains {target} ({replacement})")]
    RecursiveSubstitution { target: Param, replacement: String },
}

/// Exponent pair `(deg_h, deg_h')`.
pub type Monomial = (u32, u32);

/// Sparse polynomial in `h`, `h'`; no stored coefficient is ever zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamScalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(GaussianRational::real(r))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(rational(num, den))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn h() -> Self {
        Self::param(Param::H)
    }

    pub fn hp() -> Self {
        Self::param(Param::HPrime)
    }

    pub fn param(p: Param) -> Self {
        match p {
            Param::H => Self::monomial(GaussianRational::one(), 1, 0),
            Param::HPrime => Self::monomial(GaussianRational::one(), 0, 1),
        }
    }

    pub fn monomial(c: GaussianRational, deg_h: u32, deg_hp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_h, deg_hp), c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The numeric value when the scalar has no parameter dependence.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Coefficient of `h^a h'^b`.
    pub fn coeff(&self, deg_h: u32, deg_hp: u32) -> GaussianRational {
        self.terms.get(&(deg_h, deg_hp)).cloned().unwrap_or_default()
    }

    pub fn contains(&self, p: Param) -> bool {
        self.terms.keys().any(|&(a, b)| match p {
            Param::H => a > 0,
            Param::HPrime => b > 0,
        })
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `h -> -h`, `h' -> -h'`, and complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| {
                    let c = c.conj();
                    ((a, b), if (a + b) % 2 == 1 { -&c } else { c })
                })
                .collect(),
        }
    }

    /// Replace every occurrence of `target` by `replacement`.
    pub fn subst(&self, target: Param, replacement: &ParamScalar) -> Result<Self, ScalarError> {
        if replacement.contains(target) {
            return Err(ScalarError::RecursiveSubstitution {
                target,
                replacement: replacement.to_string(),
            });
        }
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let (deg, rest) = match target {
                Param::H => (a, Self::monomial(c.clone(), 0, b)),
                Param::HPrime => (b, Self::monomial(c.clone(), a, 0)),
            };
            out = &out + &(&rest * &replacement.pow(deg));
        }
        Ok(out)
    }

    /// Evaluate at a numeric point.
    pub fn eval(&self, h: &GaussianRational, hp: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (&(a, b), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..a {
                t = &t * h;
            }
            for _ in 0..b {
                t = &t * hp;
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// An ordered list of parameter substitutions, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Specialization {
    steps: Vec<(Param, ParamScalar)>,
}

impl Specialization {
    pub fn generic() -> Self {
        Self::default()
    }

    pub fn then(mut self, target: Param, replacement: ParamScalar) -> Result<Self, ScalarError> {
        if replacement.contains(target) {
            return Err(ScalarError::RecursiveSubstitution {
                target,
                replacement: replacement.to_string(),
            });
        }
        self.steps.push((target, replacement));
        Ok(self)
    }

    /// `h = h' = 0`.
    pub fn classical() -> Self {
        Self::generic()
            .then(Param::H, ParamScalar::zero())
            .and_then(|s| s.then(Param::HPrime, ParamScalar::zero()))
            .expect("constant substitution")
    }

    /// `h' -> -h`.
    pub fn hprime_minus_h() -> Self {
        Self::generic().then(Param::HPrime, -ParamScalar::h()).expect("h' -> -h")
    }

    /// `h' -> h`.
    pub fn hprime_equal_h() -> Self {
        Self::generic().then(Param::HPrime, ParamScalar::h()).expect("h' -> h")
    }

    pub fn is_generic(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[(Param, ParamScalar)] {
        &self.steps
    }

    pub fn apply(&self, s: &ParamScalar) -> ParamScalar {
        self.steps.iter().fold(s.clone(), |acc, (p, r)| {
            acc.subst(*p, r).expect("checked at construction")
        })
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("generic");
        }
        let parts: Vec<String> = self.steps.iter().map(|(p, r)| format!("{p}={r}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl From<GaussianRational> for ParamScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ParamScalar> for ParamScalar {
    fn add_assign(&mut self, rhs: &ParamScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$f:ident),*) => {$(
        impl $tr for ParamScalar {
            type Output = ParamScalar;
            fn $f(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl fmt::Display for ParamScalar {
    /// Text syntax accepted by the expression parser, e.g. `1/2*h + hp^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_scalar(self))
    }
}
