//! Normal-ordering engine.
//!
//! Every relation of the calculus is oriented as a rule `ab -> rhs` whose left
//! side is a descending (or repeated) adjacent pair under the rank
//! `y < x < θ < φ < ∂θ < ∂φ`. A word is normal iff it has the shape
//! `y^a x^b θ^ε φ^δ ∂θ^μ ∂φ^ν` with `ε, δ, μ, ν ∈ {0, 1}`.
//!
//! # Termination
//!
//! Words are compared by the triple `(length, #x + #θ, rank-lexicographic)`.
//! Each component is compatible with concatenation, so the triple is an
//! admissible well-order on words, and every right-hand-side word of every
//! rule (including the `C(t)` variants of the coordinate/differential group)
//! is strictly smaller than its left side:
//!
//! * the `1` terms of group (d) shorten the word;
//! * `θθ -> θφ` and the terms `x.. -> y..`, `θ.. -> φ..` drop the weight;
//! * every other right-hand word is an ascending rearrangement of the same
//!   weight, hence lexicographically smaller.
//!
//! [`termination_cmp`] exposes the order and the tests check it rule by rule.
//! A step budget ("fuel") backs this up at run time.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::{free_mul, Expr, Generator, Word};
use crate::scalars::{ParamScalar, Specialization};

use Generator::*;

pub const DEFAULT_FUEL: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("normalization exceeded its budget of {fuel} rewrite steps on input `{input}`")]
    FuelExhausted { fuel: u64, input: String },
}

/// Relation groups, in the order the calculus lists them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleGroup {
    /// coordinates among themselves
    A,
    /// differentials among themselves
    B,
    /// coordinates with differentials
    C,
    /// derivatives with coordinates
    D,
    /// derivatives among themselves
    E,
    /// derivatives with differentials
    F,
}

impl RuleGroup {
    pub fn of(lhs: [Generator; 2]) -> RuleGroup {
        let [a, b] = lhs;
        match (a, b) {
            _ if a.is_coordinate() && b.is_coordinate() => RuleGroup::A,
            _ if a.is_differential() && b.is_differential() => RuleGroup::B,
            _ if a.is_coordinate() && b.is_differential() => RuleGroup::C,
            _ if a.is_derivative() && b.is_coordinate() => RuleGroup::D,
            _ if a.is_derivative() && b.is_derivative() => RuleGroup::E,
            _ => RuleGroup::F,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RuleGroup::A => "a",
            RuleGroup::B => "b",
            RuleGroup::C => "c",
            RuleGroup::D => "d",
            RuleGroup::E => "e",
            RuleGroup::F => "f",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: [Generator; 2],
    pub rhs: Expr,
}

impl RewriteRule {
    pub fn group(&self) -> RuleGroup {
        RuleGroup::of(self.lhs)
    }

    pub fn lhs_word(&self) -> Word {
        Word::from(&self.lhs[..])
    }

    /// `lhs - rhs` as an element of the free algebra.
    pub fn relation(&self) -> Expr {
        &Expr::word(self.lhs_word()) - &self.rhs
    }

    pub fn name(&self) -> String {
        format!("{}*{}", self.lhs[0].name(), self.lhs[1].name())
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.name(), self.rhs)
    }
}

/// A pair `ab` is reducible iff it is descending or a repeated odd letter.
pub fn is_reducible_pair(a: Generator, b: Generator) -> bool {
    a > b || (a == b && a.parity() == 1)
}

/// True iff no adjacent pair of `w` is reducible.
pub fn is_normal(w: &Word) -> bool {
    w.letters().windows(2).all(|p| !is_reducible_pair(p[0], p[1]))
}

/// The oriented relations; exactly one rule per reducible pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    rules: BTreeMap<[Generator; 2], RewriteRule>,
}

fn s(c: i64) -> ParamScalar {
    ParamScalar::int(c)
}

fn h() -> ParamScalar {
    ParamScalar::h()
}

fn hp() -> ParamScalar {
    ParamScalar::hp()
}

fn hhp() -> ParamScalar {
    &h() * &hp()
}

/// Builds a right-hand side from `(coefficient, letters)` pairs.
fn combo(parts: &[(ParamScalar, &[Generator])]) -> Expr {
    let mut e = Expr::zero();
    for (c, w) in parts {
        e.add_term(Word::from(*w), c);
    }
    e
}

impl RuleTable {
    /// The nineteen relations of the two-parameter calculus.
    pub fn standard() -> Self {
        let mut t = RuleTable { rules: BTreeMap::new() };
        // (a) coordinates
        t.insert([Theta, Theta], combo(&[(h(), &[Theta, Phi])]));
        t.insert([Phi, Phi], Expr::zero());
        t.insert([Phi, Theta], combo(&[(s(-1), &[Theta, Phi])]));
        // (b) differentials
        t.insert([X, Y], combo(&[(s(1), &[Y, X]), (hp(), &[Y, Y])]));
        // (c) coordinates with differentials
        t.insert(
            [Theta, X],
            combo(&[
                (s(1), &[X, Theta]),
                (-h(), &[X, Phi]),
                (h(), &[Y, Theta]),
                (hhp(), &[Y, Phi]),
            ]),
        );
        t.insert([Theta, Y], combo(&[(s(1), &[Y, Theta]), (hp(), &[Y, Phi])]));
        t.insert([Phi, X], combo(&[(s(1), &[X, Phi]), (-hp(), &[Y, Phi])]));
        t.insert([Phi, Y], combo(&[(s(1), &[Y, Phi])]));
        // (d) derivatives with coordinates
        t.insert(
            [DTheta, Theta],
            combo(&[(s(1), &[]), (s(-1), &[Theta, DTheta]), (h(), &[Phi, DTheta])]),
        );
        t.insert([DTheta, Phi], combo(&[(s(-1), &[Phi, DTheta])]));
        t.insert(
            [DPhi, Theta],
            combo(&[
                (s(-1), &[Theta, DPhi]),
                (-h(), &[Theta, DTheta]),
                (-hp(), &[Phi, DPhi]),
                (-hhp(), &[Phi, DTheta]),
            ]),
        );
        t.insert(
            [DPhi, Phi],
            combo(&[(s(1), &[]), (s(-1), &[Phi, DPhi]), (hp(), &[Phi, DTheta])]),
        );
        // (e) derivatives
        t.insert([DTheta, DTheta], Expr::zero());
        t.insert([DPhi, DPhi], combo(&[(hp(), &[DTheta, DPhi])]));
        t.insert([DPhi, DTheta], combo(&[(s(-1), &[DTheta, DPhi])]));
        // (f) derivatives with differentials
        t.insert([DTheta, X], combo(&[(s(1), &[X, DTheta]), (-h(), &[Y, DTheta])]));
        t.insert([DTheta, Y], combo(&[(s(1), &[Y, DTheta])]));
        // h multiplies x∂θ and h' multiplies y∂φ, as the R-matrix relation for
        // ∂_i dΘ^j gives. With h and h' transposed the overlaps ∂φθx, ∂φφx
        // and ∂φxy no longer resolve.
        t.insert(
            [DPhi, X],
            combo(&[
                (s(1), &[X, DPhi]),
                (h(), &[X, DTheta]),
                (hp(), &[Y, DPhi]),
                (hhp(), &[Y, DTheta]),
            ]),
        );
        t.insert([DPhi, Y], combo(&[(s(1), &[Y, DPhi]), (-hp(), &[Y, DTheta])]));
        t
    }

    fn insert(&mut self, lhs: [Generator; 2], rhs: Expr) {
        self.rules.insert(lhs, RewriteRule { lhs, rhs });
    }

    /// Replace the rule for `lhs`. Panics if `lhs` is not a reducible pair.
    pub fn with_rule(mut self, lhs: [Generator; 2], rhs: Expr) -> Self {
        assert!(
            is_reducible_pair(lhs[0], lhs[1]),
            "{}{} is not a reducible pair",
            lhs[0],
            lhs[1]
        );
        self.insert(lhs, rhs);
        self
    }

    pub fn rule(&self, a: Generator, b: Generator) -> Option<&RewriteRule> {
        self.rules.get(&[a, b])
    }

    pub fn rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.values()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn group(&self, g: RuleGroup) -> impl Iterator<Item = &RewriteRule> {
        self.rules.values().filter(move |r| r.group() == g)
    }

    pub fn specialize(&self, spec: &Specialization) -> RuleTable {
        RuleTable {
            rules: self
                .rules
                .iter()
                .map(|(k, r)| {
                    let rhs = r.rhs.map_coeffs(|c| spec.apply(c));
                    (*k, RewriteRule { lhs: r.lhs, rhs })
                })
                .collect(),
        }
    }
}

impl Default for RuleTable {
    fn default() -> Self {
        Self::standard()
    }
}

/// Which redex of a word is contracted first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LeftmostInnermost,
    RightmostInnermost,
}

/// `#x + #θ`, the second component of the termination order.
pub fn termination_weight(w: &Word) -> usize {
    w.letters().iter().filter(|&&g| matches!(g, X | Theta)).count()
}

/// The admissible well-order that every rule decreases.
pub fn termination_cmp(a: &Word, b: &Word) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| termination_weight(a).cmp(&termination_weight(b)))
        .then_with(|| a.letters().cmp(b.letters()))
}

#[derive(Clone, PartialEq, Eq)]
struct Pending(Word);

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        termination_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A rule table together with the parameter specialization it runs under.
///
/// Inputs are specialized before reduction, so expected values written in
/// the generic parameters can be checked against a specialized table.
#[derive(Clone, Debug)]
pub struct Rewriter {
    symbolic: RuleTable,
    table: RuleTable,
    spec: Specialization,
    strategy: Strategy,
    fuel: u64,
}

impl Default for Rewriter {
    fn default() -> Self {
        Self::new(RuleTable::standard())
    }
}

impl Rewriter {
    pub fn new(table: RuleTable) -> Self {
        Rewriter {
            table: table.clone(),
            symbolic: table,
            spec: Specialization::generic(),
            strategy: Strategy::default(),
            fuel: DEFAULT_FUEL,
        }
    }

    pub fn specialized(mut self, spec: Specialization) -> Self {
        self.table = self.symbolic.specialize(&spec);
        self.spec = spec;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    /// Same specialization, strategy and fuel over a different table.
    pub fn with_table(&self, table: RuleTable) -> Self {
        Rewriter::new(table)
            .specialized(self.spec.clone())
            .with_strategy(self.strategy)
            .with_fuel(self.fuel)
    }

    /// The table before specialization.
    pub fn symbolic_table(&self) -> &RuleTable {
        &self.symbolic
    }

    /// The table actually used for reduction.
    pub fn table(&self) -> &RuleTable {
        &self.table
    }

    pub fn specialization(&self) -> &Specialization {
        &self.spec
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn specialize_scalar(&self, c: &ParamScalar) -> ParamScalar {
        self.spec.apply(c)
    }

    pub fn specialize_expr(&self, e: &Expr) -> Expr {
        if self.spec.is_generic() {
            return e.clone();
        }
        e.map_coeffs(|c| self.spec.apply(c))
    }

    fn redex(&self, w: &Word, strategy: Strategy) -> Option<(usize, &RewriteRule)> {
        let l = w.letters();
        let find = |i: usize| self.table.rule(l[i], l[i + 1]).map(|r| (i, r));
        let n = l.len().saturating_sub(1);
        match strategy {
            Strategy::LeftmostInnermost => (0..n).find_map(find),
            Strategy::RightmostInnermost => (0..n).rev().find_map(find),
        }
    }

    pub fn normalize(&self, e: &Expr) -> Result<Expr, RewriteError> {
        self.normalize_with(e, self.strategy)
    }

    pub fn normalize_with(&self, e: &Expr, strategy: Strategy) -> Result<Expr, RewriteError> {
        let e = self.specialize_expr(e);
        let mut pending: BTreeMap<Pending, ParamScalar> = BTreeMap::new();
        for (w, c) in e.terms() {
            pending.insert(Pending(w.clone()), c.clone());
        }
        let mut out = Expr::zero();
        let mut steps = 0u64;
        // Rewriting only produces smaller words, so popping the largest word
        // first means every word is visited once with its final coefficient.
        while let Some((Pending(w), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            let Some((i, rule)) = self.redex(&w, strategy) else {
                out.add_term(w, &c);
                continue;
            };
            steps += 1;
            if steps > self.fuel {
                return Err(RewriteError::FuelExhausted { fuel: self.fuel, input: e.to_string() });
            }
            let l = w.letters();
            for (rw, rc) in rule.rhs.terms() {
                let mut letters = Vec::with_capacity(l.len());
                letters.extend_from_slice(&l[..i]);
                letters.extend_from_slice(rw.letters());
                letters.extend_from_slice(&l[i + 2..]);
                let slot = pending.entry(Pending(Word::new(letters))).or_default();
                *slot += &(&c * rc);
            }
        }
        Ok(out)
    }

    /// Normal form of the product `a · b`.
    pub fn mul(&self, a: &Expr, b: &Expr) -> Result<Expr, RewriteError> {
        self.normalize(&free_mul(a, b))
    }

    /// Every length-3 overlap `abc` where both `ab` and `bc` are rule patterns.
    pub fn critical_pairs(&self) -> Result<Vec<CriticalPair>, RewriteError> {
        let mut out = Vec::new();
        for left in self.table.rules() {
            let [a, b] = left.lhs;
            for c in Generator::ALL {
                let Some(right) = self.table.rule(b, c) else { continue };
                let left_first = free_mul(&left.rhs, &Expr::gen(c));
                let right_first = free_mul(&Expr::gen(a), &right.rhs);
                out.push(CriticalPair {
                    overlap: Word::new(vec![a, b, c]),
                    left_result: self.normalize(&left_first)?,
                    right_result: self.normalize(&right_first)?,
                });
            }
        }
        Ok(out)
    }

    pub fn check_local_confluence(&self) -> Result<ConfluenceReport, RewriteError> {
        Ok(ConfluenceReport { pairs: self.critical_pairs()? })
    }
}

/// Both one-step reductions of an overlap, each fully normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left_result: Expr,
    pub right_result: Expr,
}

impl CriticalPair {
    pub fn residual(&self) -> Expr {
        &self.left_result - &self.right_result
    }

    pub fn is_resolved(&self) -> bool {
        self.left_result == self.right_result
    }

    pub fn name(&self) -> String {
        let names: Vec<&str> = self.overlap.letters().iter().map(|g| g.name()).collect();
        names.join("*")
    }
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub pairs: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(CriticalPair::is_resolved)
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &CriticalPair> {
        self.pairs.iter().filter(|p| !p.is_resolved())
    }
}

fn default_rewriter() -> &'static Rewriter {
    static REWRITER: OnceLock<Rewriter> = OnceLock::new();
    REWRITER.get_or_init(Rewriter::default)
}

/// Normal form under the standard table and generic parameters.
pub fn normalize(e: &Expr) -> Result<Expr, RewriteError> {
    default_rewriter().normalize(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rules file line {line}: {message}")]
pub struct RulesFileError {
    pub line: usize,
    pub message: String,
}

impl RuleTable {
    /// The standard table with rules replaced by lines of the form
    /// `a*b -> rhs` (text grammar). Blank lines and `#` comments are skipped.
    pub fn with_overrides(mut self, src: &str) -> Result<RuleTable, RulesFileError> {
        for (k, raw) in src.lines().enumerate() {
            let line = k + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let err = |message: String| RulesFileError { line, message };
            let (lhs, rhs) = text.split_once("->").ok_or_else(|| err("expected `lhs -> rhs`".into()))?;
            let lhs = crate::frontend::parse(lhs).map_err(|e| err(e.to_string()))?;
            let rhs = crate::frontend::parse(rhs).map_err(|e| err(e.to_string()))?;
            let pair = match lhs.terms().collect::<Vec<_>>().as_slice() {
                [(w, c)] if c.is_one() && w.len() == 2 => [w.letters()[0], w.letters()[1]],
                _ => return Err(err("left side must be a product of two generators".into())),
            };
            if !is_reducible_pair(pair[0], pair[1]) {
                return Err(err(format!("`{}*{}` is already normal", pair[0].name(), pair[1].name())));
            }
            self = self.with_rule(pair, rhs);
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(gs: &[Generator]) -> Word {
        Word::from(gs)
    }

    fn norm(gs: &[Generator]) -> Expr {
        normalize(&Expr::letters(gs)).unwrap()
    }

    #[test]
    fn rule_overrides() {
        let src = "# swap h and h'\npph*x -> x*pph + hp*x*pth + h*y*pph + h*hp*y*pth\n\n";
        let t = RuleTable::standard().with_overrides(src).unwrap();
        assert_ne!(t, RuleTable::standard());
        assert!(!Rewriter::new(t).check_local_confluence().unwrap().passed());
        assert_eq!(RuleTable::standard().with_overrides("x*theta -> 0").unwrap_err().line, 1);
        assert!(RuleTable::standard().with_overrides("pph -> 0").is_err());
        assert!(RuleTable::standard().with_overrides("pph*x = 0").is_err());
    }

    #[test]
    fn table_has_nineteen_rules_one_per_reducible_pair() {
        let t = RuleTable::standard();
        assert_eq!(t.len(), 19);
        for a in Generator::ALL {
            for b in Generator::ALL {
                assert_eq!(t.rule(a, b).is_some(), is_reducible_pair(a, b), "{a}{b}");
            }
        }
        let sizes: Vec<usize> = [RuleGroup::A, RuleGroup::B, RuleGroup::C, RuleGroup::D, RuleGroup::E, RuleGroup::F]
            .iter()
            .map(|&g| t.group(g).count())
            .collect();
        assert_eq!(sizes, vec![3, 1, 4, 4, 3, 4]);
    }

    #[test]
    fn every_rule_decreases_termination_order() {
        for r in RuleTable::standard().rules() {
            for rw in r.rhs.words() {
                assert_eq!(termination_cmp(rw, &r.lhs_word()), Ordering::Less, "{r}");
            }
        }
    }

    #[test]
    fn is_normal_examples() {
        assert!(is_normal(&w(&[Y, X, Theta, Phi])));
        assert!(!is_normal(&w(&[Theta, Theta])));
        assert!(is_normal(&w(&[X, DTheta])));
        assert!(is_normal(&Word::unit()));
        assert!(is_normal(&w(&[Y, Y, X, X, Theta, DPhi])));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(norm(&[Phi, Theta]), -&Expr::letters(&[Theta, Phi]));
        assert_eq!(norm(&[Theta, Theta]), Expr::term(h(), w(&[Theta, Phi])));
        assert_eq!(
            norm(&[Theta, X]),
            combo(&[(s(1), &[X, Theta]), (-h(), &[X, Phi]), (h(), &[Y, Theta]), (hhp(), &[Y, Phi])])
        );
        assert_eq!(norm(&[X, Y]), combo(&[(s(1), &[Y, X]), (hp(), &[Y, Y])]));
    }

    #[test]
    fn normalize_dphi_theta_phi() {
        // −θ − h'φ + θφ∂φ + (h − h')θφ∂θ
        let expected = combo(&[
            (s(-1), &[Theta]),
            (-hp(), &[Phi]),
            (s(1), &[Theta, Phi, DPhi]),
            (&h() - &hp(), &[Theta, Phi, DTheta]),
        ]);
        let e = Expr::letters(&[DPhi, Theta, Phi]);
        let rw = Rewriter::default();
        assert_eq!(rw.normalize_with(&e, Strategy::LeftmostInnermost).unwrap(), expected);
        assert_eq!(rw.normalize_with(&e, Strategy::RightmostInnermost).unwrap(), expected);
    }

    #[test]
    fn degenerate_inputs_are_normal() {
        assert_eq!(normalize(&Expr::zero()).unwrap(), Expr::zero());
        assert_eq!(normalize(&Expr::one()).unwrap(), Expr::one());
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let rw = Rewriter::default().with_fuel(3);
        let e = Expr::letters(&[DPhi, Theta, X, Y, X, Theta]);
        let err = rw.normalize(&e).unwrap_err();
        assert!(matches!(err, RewriteError::FuelExhausted { fuel: 3, .. }));
    }

    #[test]
    fn critical_pair_examples() {
        let pairs = Rewriter::default().critical_pairs().unwrap();
        let find = |gs: &[Generator]| pairs.iter().find(|p| p.overlap == w(gs)).unwrap().clone();
        let ppp = find(&[Phi, Phi, Phi]);
        assert!(ppp.left_result.is_zero() && ppp.right_result.is_zero());
        assert!(find(&[Theta, Theta, X]).is_resolved());
        assert!(find(&[DPhi, DPhi, DTheta]).is_resolved());
    }

    #[test]
    fn standard_table_is_locally_confluent() {
        let report = Rewriter::default().check_local_confluence().unwrap();
        assert!(report.passed(), "{:?}", report.unresolved().collect::<Vec<_>>());
    }

    #[test]
    fn classical_table_is_locally_confluent() {
        let rw = Rewriter::default().specialized(Specialization::classical());
        assert!(rw.check_local_confluence().unwrap().passed());
    }

    #[test]
    fn transposed_dphi_x_rule_is_not_confluent() {
        let table = RuleTable::standard().with_rule(
            [DPhi, X],
            combo(&[(s(1), &[X, DPhi]), (hp(), &[X, DTheta]), (h(), &[Y, DPhi]), (hhp(), &[Y, DTheta])]),
        );
        let report = Rewriter::new(table.clone()).check_local_confluence().unwrap();
        let mut bad: Vec<String> = report.unresolved().map(|p| p.name()).collect();
        bad.sort();
        assert_eq!(bad, vec!["pph*phi*x", "pph*theta*x", "pph*x*y"]);
        // At h = h' the two forms coincide.
        let rw = Rewriter::new(table).specialized(Specialization::hprime_equal_h());
        assert!(rw.check_local_confluence().unwrap().passed());
    }
}
