//! The 4×4 pair matrices `C(t)` and `R̂ = C(0)`.
//!
//! Rows are indexed by the upper index pair and columns by the lower pair,
//! both in the order `11, 12, 21, 22`; so `R̂^{jl}_{ik}` is
//! `entries[(j,l)][(i,k)]`. This layout is the one under which the
//! contraction `δ^j_i - R̂^{jl}_{ik} Θ^k ∂_l` reproduces the derivative/
//! coordinate rules term by term; [`relations_audit`] checks it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{Expr, Generator, Word};
use crate::frontend::{print_scalar, print_scalar_latex, Format};
use crate::rewrite::{is_reducible_pair, RewriteError, Rewriter, RuleTable};
use crate::scalars::{GaussianRational, ParamScalar, Specialization};

/// Index of the pair `(a, b)`, `a, b ∈ {1, 2}`.
pub fn pair_index(a: usize, b: usize) -> usize {
    assert!((1..=2).contains(&a) && (1..=2).contains(&b), "pair indices are 1 or 2");
    (a - 1) * 2 + (b - 1)
}

pub const PAIR_LABELS: [&str; 4] = ["11", "12", "21", "22"];

/// Θ^1 = θ, Θ^2 = φ.
pub fn coordinate(i: usize) -> Generator {
    [Generator::Theta, Generator::Phi][i - 1]
}

/// dΘ^1 = x, dΘ^2 = y.
pub fn differential(i: usize) -> Generator {
    [Generator::X, Generator::Y][i - 1]
}

/// ∂_1 = ∂θ, ∂_2 = ∂φ.
pub fn derivative(i: usize) -> Generator {
    [Generator::DTheta, Generator::DPhi][i - 1]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMatrix {
    entries: [[ParamScalar; 4]; 4],
}

impl PairMatrix {
    pub fn from_rows(entries: [[ParamScalar; 4]; 4]) -> Self {
        PairMatrix { entries }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..4 {
            m.entries[k][k] = ParamScalar::one();
        }
        m
    }

    pub fn zero() -> Self {
        PairMatrix { entries: Default::default() }
    }

    /// `M^{u1 u2}_{l1 l2}`.
    pub fn entry(&self, u1: usize, u2: usize, l1: usize, l2: usize) -> &ParamScalar {
        &self.entries[pair_index(u1, u2)][pair_index(l1, l2)]
    }

    pub fn rows(&self) -> &[[ParamScalar; 4]; 4] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.entries[r][c] = f(&self.entries[r][c]);
            }
        }
        m
    }

    pub fn specialize(&self, spec: &Specialization) -> Self {
        self.map(|c| spec.apply(c))
    }

    pub fn mul(&self, other: &PairMatrix) -> PairMatrix {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                let mut acc = ParamScalar::zero();
                for k in 0..4 {
                    acc += &(&self.entries[r][k] * &other.entries[k][c]);
                }
                m.entries[r][c] = acc;
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn print(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let cells: Vec<Vec<String>> =
                    self.entries.iter().map(|row| row.iter().map(print_scalar).collect()).collect();
                let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
                cells
                    .iter()
                    .map(|row| {
                        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                        format!("[ {} ]", padded.join("  "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            }
            Format::Latex => {
                let rows: Vec<String> = self
                    .entries
                    .iter()
                    .map(|row| row.iter().map(print_scalar_latex).collect::<Vec<_>>().join(" & "))
                    .collect();
                format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}", rows.join(" \\\\\n"))
            }
            Format::Json => {
                #[derive(Serialize)]
                struct Doc {
                    version: u32,
                    order: [&'static str; 4],
                    entries: Vec<Vec<BTreeMap<String, String>>>,
                }
                let doc = Doc {
                    version: crate::frontend::JSON_VERSION,
                    order: PAIR_LABELS,
                    entries: self
                        .entries
                        .iter()
                        .map(|row| row.iter().map(crate::frontend::scalar_to_map).collect())
                        .collect(),
                };
                serde_json::to_string(&doc).expect("serializable")
            }
        }
    }
}

impl fmt::Display for PairMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print(Format::Text))
    }
}

/// The one-parameter family of coordinate/differential exchange matrices.
pub fn build_c(t: &GaussianRational) -> PairMatrix {
    let t = ParamScalar::constant(t.clone());
    let one = ParamScalar::one();
    let zero = ParamScalar::zero();
    let h = ParamScalar::h();
    let hp = ParamScalar::hp();
    let a = &one - &t;
    let b = &t - &one;
    PairMatrix::from_rows([
        [one.clone(), &b * &h, &a * &h, &(&a * &h) * &hp],
        [zero.clone(), t.clone(), a.clone(), &a * &hp],
        [zero.clone(), a.clone(), t.clone(), &b * &hp],
        [zero.clone(), zero.clone(), zero, one],
    ])
}

pub fn r_hat() -> PairMatrix {
    build_c(&GaussianRational::zero())
}

/// Result of an exact matrix identity check.
#[derive(Clone, Debug)]
pub struct MatrixCheck {
    pub name: String,
    pub passed: bool,
    /// Entries of `lhs - rhs` that are nonzero, as `(row, column, value)`.
    pub residual: Vec<(String, String, ParamScalar)>,
}

impl MatrixCheck {
    pub fn residual_text(&self) -> String {
        if self.residual.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .residual
            .iter()
            .map(|(r, c, v)| format!("[{r},{c}]: {}", print_scalar(v)))
            .collect();
        parts.join("; ")
    }
}

/// `m² = 1`.
pub fn involutive_check(m: &PairMatrix) -> MatrixCheck {
    let sq = m.mul(m);
    let id = PairMatrix::identity();
    let mut residual = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            let d = &sq.entries[r][c] - &id.entries[r][c];
            if !d.is_zero() {
                residual.push((PAIR_LABELS[r].to_string(), PAIR_LABELS[c].to_string(), d));
            }
        }
    }
    MatrixCheck { name: "involutive".into(), passed: residual.is_empty(), residual }
}

type Op8 = Vec<Vec<ParamScalar>>;

fn triple(a: usize, b: usize, c: usize) -> usize {
    (a - 1) * 4 + (b - 1) * 2 + (c - 1)
}

const TRIPLES: [(usize, usize, usize); 8] =
    [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2)];

fn embed(m: &PairMatrix, first: bool) -> Op8 {
    let mut op = vec![vec![ParamScalar::zero(); 8]; 8];
    for &(a, b, c) in &TRIPLES {
        for &(a2, b2, c2) in &TRIPLES {
            let v = if first {
                if c != c2 {
                    continue;
                }
                m.entry(a, b, a2, b2)
            } else {
                if a != a2 {
                    continue;
                }
                m.entry(b, c, b2, c2)
            };
            op[triple(a, b, c)][triple(a2, b2, c2)] = v.clone();
        }
    }
    op
}

fn mul8(x: &Op8, y: &Op8) -> Op8 {
    let mut out = vec![vec![ParamScalar::zero(); 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            let mut acc = ParamScalar::zero();
            for k in 0..8 {
                if !x[r][k].is_zero() && !y[k][c].is_zero() {
                    acc += &(&x[r][k] * &y[k][c]);
                }
            }
            out[r][c] = acc;
        }
    }
    out
}

/// `(m⊗1)(1⊗m)(m⊗1) = (1⊗m)(m⊗1)(1⊗m)` on the three-fold tensor square.
pub fn braid_check(m: &PairMatrix) -> MatrixCheck {
    let m12 = embed(m, true);
    let m23 = embed(m, false);
    let lhs = mul8(&mul8(&m12, &m23), &m12);
    let rhs = mul8(&mul8(&m23, &m12), &m23);
    let label = |k: usize| {
        let (a, b, c) = TRIPLES[k];
        format!("{a}{b}{c}")
    };
    let mut residual = Vec::new();
    for r in 0..8 {
        for c in 0..8 {
            let d = &lhs[r][c] - &rhs[r][c];
            if !d.is_zero() {
                residual.push((label(r), label(c), d));
            }
        }
    }
    MatrixCheck { name: "braid".into(), passed: residual.is_empty(), residual }
}

/// `base` with its coordinate/differential rules replaced by
/// `Θ^i dΘ^j -> C^{ij}_{kl} dΘ^k Θ^l`.
pub fn c_rule_table(base: &RuleTable, c: &PairMatrix) -> RuleTable {
    let mut table = base.clone();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut rhs = Expr::zero();
            for k in 1..=2 {
                for l in 1..=2 {
                    rhs.add_term(Word::new(vec![differential(k), coordinate(l)]), c.entry(i, j, k, l));
                }
            }
            table = table.with_rule([coordinate(i), differential(j)], rhs);
        }
    }
    table
}

/// One `t` of the consistency scan.
#[derive(Clone, Debug)]
pub struct TScanEntry {
    pub t: GaussianRational,
    /// Normal form of `θφx`.
    pub theta_phi_x: Expr,
    /// Normal form of `φθx`, with `x` moved left first.
    pub phi_theta_x: Expr,
    /// `(φθ)x - φ(θx) = -θφx - φθx`, the `φθx` overlap residual.
    pub residual: Expr,
    /// Unresolved critical pairs among coordinates and differentials.
    pub unresolved: Vec<(String, Expr)>,
}

impl TScanEntry {
    pub fn consistent(&self) -> bool {
        self.residual.is_zero() && self.unresolved.is_empty()
    }
}

pub fn t_consistency_scan(rw: &Rewriter, ts: &[GaussianRational]) -> Result<Vec<TScanEntry>, RewriteError> {
    use Generator::*;
    let mut out = Vec::new();
    for t in ts {
        let variant = rw.with_table(c_rule_table(rw.symbolic_table(), &build_c(t)));
        let theta_phi_x = variant.normalize(&Expr::letters(&[Theta, Phi, X]))?;
        let theta_x = variant.table().rule(Theta, X).expect("rule").rhs.clone();
        let phi_theta_x = variant.normalize(&(&Expr::gen(Phi) * &theta_x))?;
        let residual = -&(&theta_phi_x + &phi_theta_x);
        let unresolved = variant
            .critical_pairs()?
            .into_iter()
            .filter(|p| p.overlap.letters().iter().all(|g| !g.is_derivative()))
            .filter(|p| !p.is_resolved())
            .map(|p| (p.name(), p.residual()))
            .collect();
        out.push(TScanEntry { t: t.clone(), theta_phi_x, phi_theta_x, residual, unresolved });
    }
    Ok(out)
}

/// The matrix forms of the exchange relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationFamily {
    /// `Θ^i Θ^j = -R̂^{ij}_{kl} Θ^k Θ^l`
    Coordinates,
    /// `dΘ^i dΘ^j = R̂^{ij}_{kl} dΘ^k dΘ^l`
    Differentials,
    /// `Θ^i dΘ^j = R̂^{ij}_{kl} dΘ^k Θ^l`
    CoordinateDifferential,
    /// `∂_i Θ^j = δ^j_i - R̂^{jl}_{ik} Θ^k ∂_l`
    DerivativeCoordinate,
    /// `∂_i ∂_j = -R̂_{ji}^{kl} ∂_l ∂_k`
    Derivatives,
    /// `∂_i dΘ^j = R̂^{jk}_{il} dΘ^l ∂_k`
    DerivativeDifferential,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 6] = [
        RelationFamily::Coordinates,
        RelationFamily::Differentials,
        RelationFamily::CoordinateDifferential,
        RelationFamily::DerivativeCoordinate,
        RelationFamily::Derivatives,
        RelationFamily::DerivativeDifferential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Coordinates => "coordinates",
            RelationFamily::Differentials => "differentials",
            RelationFamily::CoordinateDifferential => "coordinate-differential",
            RelationFamily::DerivativeCoordinate => "derivative-coordinate",
            RelationFamily::Derivatives => "derivatives",
            RelationFamily::DerivativeDifferential => "derivative-differential",
        }
    }

    /// The `(i, j)` instance as `(left word, right-hand side)`.
    pub fn instance(self, r: &PairMatrix, i: usize, j: usize) -> (Word, Expr) {
        let w = |a: Generator, b: Generator| Word::new(vec![a, b]);
        let mut rhs = Expr::zero();
        let lhs;
        match self {
            RelationFamily::Coordinates => {
                lhs = w(coordinate(i), coordinate(j));
                for k in 1..=2 {
                    for l in 1..=2 {
                        rhs.add_term(w(coordinate(k), coordinate(l)), &-r.entry(i, j, k, l));
                    }
                }
            }
            RelationFamily::Differentials => {
                lhs = w(differential(i), differential(j));
                for k in 1..=2 {
                    for l in 1..=2 {
                        rhs.add_term(w(differential(k), differential(l)), r.entry(i, j, k, l));
                    }
                }
            }
            RelationFamily::CoordinateDifferential => {
                lhs = w(coordinate(i), differential(j));
                for k in 1..=2 {
                    for l in 1..=2 {
                        rhs.add_term(w(differential(k), coordinate(l)), r.entry(i, j, k, l));
                    }
                }
            }
            RelationFamily::DerivativeCoordinate => {
                lhs = w(derivative(i), coordinate(j));
                if i == j {
                    rhs.add_term(Word::unit(), &ParamScalar::one());
                }
                for l in 1..=2 {
                    for k in 1..=2 {
                        rhs.add_term(w(coordinate(k), derivative(l)), &-r.entry(j, l, i, k));
                    }
                }
            }
            RelationFamily::Derivatives => {
                lhs = w(derivative(i), derivative(j));
                for k in 1..=2 {
                    for l in 1..=2 {
                        rhs.add_term(w(derivative(l), derivative(k)), &-r.entry(k, l, j, i));
                    }
                }
            }
            RelationFamily::DerivativeDifferential => {
                lhs = w(derivative(i), differential(j));
                for k in 1..=2 {
                    for l in 1..=2 {
                        rhs.add_term(w(differential(l), derivative(k)), r.entry(j, k, i, l));
                    }
                }
            }
        }
        (lhs, rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceStatus {
    /// Solved for its (reducible) left word, it equals that word's rule.
    Matched,
    /// Solved form differs from the rule.
    Mismatch { solved: Expr, expected: Expr },
    /// The instance could not be solved for its left word.
    Unsolved { reason: String },
    /// Left word already normal; the instance is implied by the others.
    Redundant { consistent: bool, residual: Expr },
}

#[derive(Clone, Debug)]
pub struct InstanceAudit {
    pub family: RelationFamily,
    pub i: usize,
    pub j: usize,
    pub lhs: Word,
    pub rhs: Expr,
    pub status: InstanceStatus,
}

impl InstanceAudit {
    pub fn passed(&self) -> bool {
        match &self.status {
            InstanceStatus::Matched => true,
            InstanceStatus::Redundant { consistent, .. } => *consistent,
            _ => false,
        }
    }

    pub fn name(&self) -> String {
        format!("{}({},{})", self.family.name(), self.i, self.j)
    }
}

#[derive(Clone, Debug)]
pub struct RelationsAudit {
    pub instances: Vec<InstanceAudit>,
    /// Rule left words matched by some instance, with multiplicity.
    pub matched: BTreeMap<Word, usize>,
    /// Rule left words of the table that no instance matched.
    pub unmatched_rules: BTreeSet<Word>,
}

impl RelationsAudit {
    /// Every instance passes and rules ↔ matched instances is a bijection.
    pub fn passed(&self) -> bool {
        self.instances.iter().all(InstanceAudit::passed)
            && self.unmatched_rules.is_empty()
            && self.matched.values().all(|&n| n == 1)
    }
}

/// Replace every reducible word in `e` by its solved form, to a fixed point.
fn substitute(e: &Expr, solved: &BTreeMap<Word, Expr>, rounds: usize) -> Option<Expr> {
    let mut cur = e.clone();
    for _ in 0..rounds {
        if !cur.words().any(|w| solved.contains_key(w)) {
            return Some(cur);
        }
        let mut next = Expr::zero();
        for (w, c) in cur.terms() {
            match solved.get(w) {
                Some(f) => next.add_scaled(f, c),
                None => next.add_term(w.clone(), c),
            }
        }
        cur = next;
    }
    None
}

fn is_reducible_word(w: &Word) -> bool {
    let l = w.letters();
    l.len() == 2 && is_reducible_pair(l[0], l[1])
}

/// Expand each matrix relation on all generator pairs, solve the instances
/// whose left word is reducible, and compare with the rule table.
pub fn relations_audit(rw: &Rewriter) -> Result<RelationsAudit, RewriteError> {
    let r = rw.specialize_matrix(&r_hat());
    let mut instances = Vec::new();
    let mut matched: BTreeMap<Word, usize> = BTreeMap::new();
    for family in RelationFamily::ALL {
        let raw: Vec<(usize, usize, Word, Expr)> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| (i, j)))
            .map(|(i, j)| {
                let (lhs, rhs) = family.instance(&r, i, j);
                (i, j, lhs, rhs)
            })
            .collect();

        // Isolate each reducible left word: (1 - c) w = rest.
        let mut isolated: BTreeMap<Word, Result<Expr, String>> = BTreeMap::new();
        for (_, _, lhs, rhs) in raw.iter().filter(|(_, _, l, _)| is_reducible_word(l)) {
            let c = rhs.coeff(lhs);
            let rest = rhs.filter_words(|w| w != lhs);
            let pivot = (&ParamScalar::one() - &c).as_constant().and_then(|g| g.inv());
            let solved = match pivot {
                Some(inv) => Ok(rest.scale(&ParamScalar::constant(inv))),
                None => Err(format!("coefficient 1 - ({c}) of {} is not an invertible constant", Expr::word(lhs.clone()))),
            };
            isolated.insert(lhs.clone(), solved);
        }
        let usable: BTreeMap<Word, Expr> =
            isolated.iter().filter_map(|(w, s)| s.as_ref().ok().map(|e| (w.clone(), e.clone()))).collect();

        for (i, j, lhs, rhs) in raw {
            let status = if is_reducible_word(&lhs) {
                match &isolated[&lhs] {
                    Err(reason) => InstanceStatus::Unsolved { reason: reason.clone() },
                    Ok(rest) => match substitute(rest, &usable, 8) {
                        None => InstanceStatus::Unsolved { reason: "substitution did not terminate".into() },
                        Some(solved) => {
                            let expected = rw
                                .table()
                                .rule(lhs.letters()[0], lhs.letters()[1])
                                .map(|rule| rule.rhs.clone())
                                .unwrap_or_default();
                            if solved == expected {
                                *matched.entry(lhs.clone()).or_default() += 1;
                                InstanceStatus::Matched
                            } else {
                                InstanceStatus::Mismatch { solved, expected }
                            }
                        }
                    },
                }
            } else {
                let residual = rw.normalize(&(&Expr::word(lhs.clone()) - &rhs))?;
                InstanceStatus::Redundant { consistent: residual.is_zero(), residual }
            };
            instances.push(InstanceAudit { family, i, j, lhs, rhs, status });
        }
    }
    let unmatched_rules = rw
        .table()
        .rules()
        .map(|r| r.lhs_word())
        .filter(|w| !matched.contains_key(w))
        .collect();
    Ok(RelationsAudit { instances, matched, unmatched_rules })
}

impl Rewriter {
    pub fn specialize_matrix(&self, m: &PairMatrix) -> PairMatrix {
        m.specialize(self.specialization())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::RuleGroup;
    use crate::scalars::rational;
    use Generator::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::real(rational(n, d))
    }

    /// R̂ exactly as printed.
    fn printed_r_hat() -> PairMatrix {
        let (o, z) = (ParamScalar::one(), ParamScalar::zero());
        let (h, hp) = (ParamScalar::h(), ParamScalar::hp());
        PairMatrix::from_rows([
            [o.clone(), -&h, h.clone(), &h * &hp],
            [z.clone(), z.clone(), o.clone(), hp.clone()],
            [z.clone(), o.clone(), z.clone(), -&hp],
            [z.clone(), z.clone(), z, o],
        ])
    }

    #[test]
    fn c_at_zero_is_r_hat() {
        assert_eq!(build_c(&q(0, 1)), printed_r_hat());
    }

    #[test]
    fn c_at_one_is_identity() {
        assert!(build_c(&q(1, 1)).is_identity());
    }

    #[test]
    fn classical_r_hat_is_swap() {
        let m = r_hat().specialize(&Specialization::classical());
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    for d in 1..=2 {
                        let swap = a == d && b == c;
                        assert_eq!(m.entry(a, b, c, d).is_one(), swap);
                        assert_eq!(m.entry(a, b, c, d).is_zero(), !swap);
                    }
                }
            }
        }
    }

    #[test]
    fn involutive_examples() {
        assert!(involutive_check(&r_hat()).passed);
        assert!(involutive_check(&PairMatrix::identity()).passed);
        assert!(!involutive_check(&build_c(&q(1, 2))).passed);
    }

    #[test]
    fn braid_examples() {
        assert!(braid_check(&r_hat()).passed);
        assert!(braid_check(&PairMatrix::identity()).passed);
        assert!(braid_check(&r_hat().specialize(&Specialization::classical())).passed);
    }

    #[test]
    fn c_table_at_zero_is_standard() {
        let t = c_rule_table(&RuleTable::standard(), &r_hat());
        assert_eq!(t, RuleTable::standard());
        assert_eq!(t.group(RuleGroup::C).count(), 4);
    }

    #[test]
    fn t_scan_residuals() {
        // Frozen from the hand computation of the φθx overlap with C(t):
        // residual = t² (xθφ − h yθφ).
        let rw = Rewriter::default();
        let ts = [q(0, 1), q(1, 1), q(1, 2), q(2, 1), q(-1, 1)];
        let scan = t_consistency_scan(&rw, &ts).unwrap();
        let shape = &Expr::letters(&[X, Theta, Phi]) - &Expr::term(ParamScalar::h(), Word::new(vec![Y, Theta, Phi]));
        for entry in &scan {
            let t2 = &entry.t * &entry.t;
            let expected = shape.scale(&ParamScalar::constant(t2.clone()));
            assert_eq!(entry.residual, expected, "t = {}", entry.t);
            assert_eq!(entry.consistent(), t2.is_zero());
        }
    }

    #[test]
    fn o_map_layout_reproduces_derivative_rule() {
        // δ - R̂^{1l}_{1k} Θ^k ∂_l gives 1 - θ∂θ + hφ∂θ
        let (_, rhs) = RelationFamily::DerivativeCoordinate.instance(&r_hat(), 1, 1);
        assert_eq!(rhs, RuleTable::standard().rule(DTheta, Theta).unwrap().rhs);
        assert_eq!(rhs.coeff(&Word::new(vec![Phi, DTheta])), ParamScalar::h());
    }

    #[test]
    fn relations_audit_is_bijective() {
        let audit = relations_audit(&Rewriter::default()).unwrap();
        for inst in &audit.instances {
            assert!(inst.passed(), "{} {:?}", inst.name(), inst.status);
        }
        assert_eq!(audit.matched.len(), 19);
        assert!(audit.passed());
    }

    #[test]
    fn relations_examples() {
        let r = r_hat();
        let (l, rhs) = RelationFamily::Differentials.instance(&r, 1, 2);
        assert_eq!(l, Word::new(vec![X, Y]));
        assert_eq!(rhs, RuleTable::standard().rule(X, Y).unwrap().rhs);

        let rw = Rewriter::default();
        let (l, rhs) = RelationFamily::Coordinates.instance(&r, 1, 1);
        let rel = &Expr::word(l) - &rhs;
        assert!(rw.normalize(&rel).unwrap().is_zero());
    }
}
