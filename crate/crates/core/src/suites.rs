//! Verification suites: every identity the calculus claims, checked exactly.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{Expr, Generator, Word};
use crate::calculus::{self, commutation_residuals, exterior_d, o_map, partial, partial_via_leibniz, PartialIndex};
use crate::frontend::print_text;
use crate::rewrite::{is_normal, is_reducible_pair, Rewriter, RuleTable, Strategy};
use crate::rmatrix::{
    braid_check, build_c, coordinate, involutive_check, r_hat, relations_audit, t_consistency_scan, InstanceStatus,
    PairMatrix,
};
use crate::sample::Sampler;
use crate::scalars::{GaussianRational, ParamScalar, Specialization};
use crate::star::{
    compare_relations, derive_phase_space, expected_generic, expected_minus_h, hermiticity_audit, specialize_phase_space,
    star, HPrimeMode,
};
use crate::Error;

const SEED: u64 = 0x5eed_4a11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Calculus,
    RMatrix,
    Confluence,
    PhaseSpace,
    Limits,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Calculus, Suite::RMatrix, Suite::Confluence, Suite::PhaseSpace, Suite::Limits];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Calculus => "calculus",
            Suite::RMatrix => "rmatrix",
            Suite::Confluence => "confluence",
            Suite::PhaseSpace => "phase-space",
            Suite::Limits => "limits",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Suite::All]
            .into_iter()
            .chain(Suite::PARTS)
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected all, calculus, rmatrix, confluence, phase-space or limits)"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.pass {
                out.push_str(&format!("PASS {}\n", c.name));
            } else {
                out.push_str(&format!("FAIL {}: {}\n", c.name, c.residual));
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "{}: {}/{} checks passed in {:.2?}: {}\n",
            self.suite,
            passed,
            self.checks.len(),
            self.wall_time,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

#[derive(Default)]
struct Checks {
    items: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: impl Into<String>, pass: bool, residual: impl Into<String>) {
        self.items.push(Check { name: name.into(), pass, residual: residual.into() });
    }

    /// Passes iff `e` is zero; the residual is `e` itself.
    fn zero<E: Into<Error>>(&mut self, name: impl Into<String>, e: Result<Expr, E>) {
        match e {
            Ok(e) => self.push(name, e.is_zero(), print_text(&e)),
            Err(err) => self.push(name, false, format!("error: {}", err.into())),
        }
    }

    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String), Error>) {
        match f() {
            Ok((pass, residual)) => self.push(name, pass, residual),
            Err(err) => self.push(name, false, format!("error: {err}")),
        }
    }
}

/// Summary of a batch: pass iff no failures; residual names the first one.
fn batch(total: usize, failures: Vec<String>) -> (bool, String) {
    match failures.first() {
        None => (true, "0".into()),
        Some(first) => (false, format!("{} of {} failed; first: {}", failures.len(), total, first)),
    }
}

fn diff_text(a: &Expr, b: &Expr) -> String {
    print_text(&(a - b))
}

pub fn run_suite(suite: Suite, rw: &Rewriter) -> SuiteReport {
    let start = Instant::now();
    let mut checks = match suite {
        Suite::All => {
            let mut all = Vec::new();
            for part in Suite::PARTS {
                for mut c in collect(part, rw) {
                    c.name = format!("{}/{}", part.name(), c.name);
                    all.push(c);
                }
            }
            all
        }
        part => collect(part, rw),
    };
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let pass = checks.iter().all(|c| c.pass);
    SuiteReport { suite: suite.name().into(), checks, pass, wall_time: start.elapsed() }
}

fn collect(suite: Suite, rw: &Rewriter) -> Vec<Check> {
    let mut c = Checks::default();
    match suite {
        Suite::Calculus => calculus_checks(&mut c, rw),
        Suite::RMatrix => rmatrix_checks(&mut c, rw),
        Suite::Confluence => confluence_checks(&mut c, rw),
        Suite::PhaseSpace => phase_space_checks(&mut c, rw),
        Suite::Limits => limits_checks(&mut c, rw),
        Suite::All => unreachable!("expanded by run_suite"),
    }
    c.items
}

fn calculus_checks(c: &mut Checks, rw: &Rewriter) {
    use Generator::*;
    c.run("d/theta", || {
        let d = exterior_d(rw, &Expr::gen(Theta))?;
        Ok((d == Expr::gen(X), print_text(&d)))
    });
    c.run("d/phi", || {
        let d = exterior_d(rw, &Expr::gen(Phi))?;
        Ok((d == Expr::gen(Y), print_text(&d)))
    });
    let h = ParamScalar::h();
    let relations = [
        ("theta*theta", &Expr::letters(&[Theta, Theta]) - &Expr::term(h, Word::new(vec![Theta, Phi]))),
        ("theta*phi", &Expr::letters(&[Theta, Phi]) + &Expr::letters(&[Phi, Theta])),
        ("phi*phi", Expr::letters(&[Phi, Phi])),
    ];
    for (name, rel) in relations {
        c.zero(format!("d/relation/{name}"), exterior_d(rw, &rel));
    }
    c.run("d/nilpotent/words<=4", || {
        let words = calculus::words_up_to(&[Y, X, Theta, Phi], 4);
        let mut failures = Vec::new();
        for w in &words {
            let e = Expr::word(w.clone());
            let dd = exterior_d(rw, &exterior_d(rw, &e)?)?;
            if !dd.is_zero() {
                failures.push(format!("{}: {}", print_text(&e), print_text(&dd)));
            }
        }
        Ok(batch(words.len(), failures))
    });
    c.run("d/graded-leibniz/random", || {
        let mut s = Sampler::new(SEED);
        let mut failures = Vec::new();
        let n = 200;
        for _ in 0..n {
            let f = Expr::word(s.word(&[Y, X, Theta, Phi], 3));
            let g = s.expr(&[Y, X, Theta, Phi], 3, 3);
            let sign = if f.words().next().map_or(0, Word::parity) == 1 { -ParamScalar::one() } else { ParamScalar::one() };
            let lhs = exterior_d(rw, &(&f * &g))?;
            let rhs = &(&exterior_d(rw, &f)? * &g) + &(&f * &exterior_d(rw, &g)?).scale(&sign);
            let r = rw.normalize(&(&lhs - &rhs))?;
            if !r.is_zero() {
                failures.push(format!("f = {}, g = {}: {}", print_text(&f), print_text(&g), print_text(&r)));
            }
        }
        Ok(batch(n, failures))
    });
    for i in 1..=2 {
        for j in 1..=2 {
            c.run(format!("partial/delta/({i},{j})"), || {
                let d = partial(rw, PartialIndex::from_index(i)?, &Expr::gen(coordinate(j)))?;
                let expected = if i == j { Expr::one() } else { Expr::zero() };
                Ok((d == expected, diff_text(&d, &expected)))
            });
        }
    }
    match commutation_residuals(rw) {
        Ok(list) => {
            for ((i, j), r) in list {
                c.zero::<Error>(format!("partial/commutation/({i},{j})"), Ok(r));
            }
        }
        Err(e) => c.push("partial/commutation", false, format!("error: {e}")),
    }
    c.run("partial/two-routes/words<=4", || {
        let words = calculus::words_up_to(&[Theta, Phi], 4);
        let mut failures = Vec::new();
        for w in &words {
            let f = Expr::word(w.clone());
            for i in [PartialIndex::Theta, PartialIndex::Phi] {
                let a = partial(rw, i, &f)?;
                let b = partial_via_leibniz(rw, i, &f)?;
                if a != b {
                    failures.push(format!("d_{} {}: {}", i.index(), print_text(&f), diff_text(&a, &b)));
                }
            }
        }
        Ok(batch(2 * words.len(), failures))
    });
    c.run("partial/leibniz/random-200", || {
        let mut s = Sampler::new(SEED ^ 1);
        let mut failures = Vec::new();
        for _ in 0..200 {
            let f = s.coordinate_poly();
            for i in 1..=2 {
                let ix = PartialIndex::from_index(i)?;
                for j in 1..=2 {
                    let theta_j = Expr::gen(coordinate(j));
                    let lhs = partial(rw, ix, &(&theta_j * &f))?;
                    let mut rhs = if i == j { f.clone() } else { Expr::zero() };
                    for l in 1..=2 {
                        let twist = o_map(rw, l, i, &theta_j)?;
                        rhs = &rhs - &(&twist * &partial(rw, PartialIndex::from_index(l)?, &f)?);
                    }
                    let r = rw.normalize(&(&lhs - &rhs))?;
                    if !r.is_zero() {
                        failures.push(format!("i={i}, j={j}, f = {}: {}", print_text(&f), print_text(&r)));
                    }
                }
            }
        }
        Ok(batch(800, failures))
    });
}

/// The exchange matrix at `t = 0`, entry by entry as stated.
fn stated_r_hat() -> PairMatrix {
    let (o, z) = (ParamScalar::one(), ParamScalar::zero());
    let (h, hp) = (ParamScalar::h(), ParamScalar::hp());
    PairMatrix::from_rows([
        [o.clone(), -&h, h.clone(), &h * &hp],
        [z.clone(), z.clone(), o.clone(), hp.clone()],
        [z.clone(), o.clone(), z.clone(), -&hp],
        [z.clone(), z.clone(), z, o],
    ])
}

fn rmatrix_checks(c: &mut Checks, rw: &Rewriter) {
    let r = rw.specialize_matrix(&r_hat());
    let built = build_c(&GaussianRational::zero());
    let stated = stated_r_hat();
    let mismatched: Vec<String> = (0..16)
        .filter(|k| built.rows()[k / 4][k % 4] != stated.rows()[k / 4][k % 4])
        .map(|k| format!("[{},{}]", k / 4, k % 4))
        .collect();
    c.push("matrix/c(0)=r-hat", mismatched.is_empty(), if mismatched.is_empty() { "0".into() } else { mismatched.join(" ") });
    let one = build_c(&GaussianRational::one());
    c.push("matrix/c(1)=identity", one.is_identity(), if one.is_identity() { "0".to_string() } else { one.to_string() });
    let inv = involutive_check(&r);
    c.push("matrix/involutive", inv.passed, inv.residual_text());
    let braid = braid_check(&r);
    c.push("matrix/braid", braid.passed, braid.residual_text());

    let ts: Vec<GaussianRational> = [(0, 1), (1, 1), (1, 2), (2, 1), (-1, 1)]
        .iter()
        .map(|&(n, d)| GaussianRational::real(crate::scalars::rational(n, d)))
        .collect();
    match t_consistency_scan(rw, &ts) {
        Ok(scan) => {
            for entry in scan {
                let t = entry.t.to_string();
                let mut residual = print_text(&entry.residual);
                if !entry.unresolved.is_empty() {
                    let pairs: Vec<String> = entry.unresolved.iter().map(|(n, _)| n.clone()).collect();
                    residual.push_str(&format!("; unresolved: {}", pairs.join(" ")));
                }
                if entry.t.is_zero() {
                    c.push(format!("t-scan/t={t}/consistent"), entry.consistent(), residual);
                } else {
                    c.push(format!("t-scan/t={t}/inconsistent"), !entry.residual.is_zero(), residual);
                }
            }
        }
        Err(e) => c.push("t-scan", false, format!("error: {e}")),
    }

    match relations_audit(rw) {
        Ok(audit) => {
            for inst in &audit.instances {
                let residual = match &inst.status {
                    InstanceStatus::Matched => "0".to_string(),
                    InstanceStatus::Mismatch { solved, expected } => {
                        format!("solved {} but rule gives {}", print_text(solved), print_text(expected))
                    }
                    InstanceStatus::Unsolved { reason } => reason.clone(),
                    InstanceStatus::Redundant { residual, .. } => print_text(residual),
                };
                c.push(format!("relations/{}", inst.name()), inst.passed(), residual);
            }
            let dup: Vec<String> = audit.matched.iter().filter(|(_, &n)| n != 1).map(|(w, _)| print_text(&Expr::word(w.clone()))).collect();
            let missing: Vec<String> = audit.unmatched_rules.iter().map(|w| print_text(&Expr::word(w.clone()))).collect();
            let ok = dup.is_empty() && missing.is_empty() && audit.matched.len() == rw.table().len();
            c.push(
                "relations/bijection",
                ok,
                format!("{} rules matched; unmatched: [{}]; matched more than once: [{}]", audit.matched.len(), missing.join(", "), dup.join(", ")),
            );
        }
        Err(e) => c.push("relations", false, format!("error: {e}")),
    }
}

fn confluence_checks(c: &mut Checks, rw: &Rewriter) {
    match rw.critical_pairs() {
        Ok(pairs) => {
            c.push("critical-pairs/count", !pairs.is_empty(), pairs.len().to_string());
            for p in pairs {
                let r = p.residual();
                c.push(format!("critical-pairs/{}", p.name()), r.is_zero(), print_text(&r));
            }
        }
        Err(e) => c.push("critical-pairs", false, format!("error: {e}")),
    }
    c.run("strategy-independence/random-1000", || {
        let mut s = Sampler::new(SEED ^ 2);
        let mut failures = Vec::new();
        for _ in 0..1000 {
            let e = s.full(6);
            let a = rw.normalize_with(&e, Strategy::LeftmostInnermost)?;
            let b = rw.normalize_with(&e, Strategy::RightmostInnermost)?;
            if a != b {
                failures.push(format!("{}: {}", print_text(&e), diff_text(&a, &b)));
            }
        }
        Ok(batch(1000, failures))
    });
    c.run("normal-form/random-1000", || {
        let mut s = Sampler::new(SEED ^ 3);
        let mut failures = Vec::new();
        for _ in 0..1000 {
            let e = s.full(6);
            let n = rw.normalize(&e)?;
            if !n.words().all(is_normal) || rw.normalize(&n)? != n {
                failures.push(print_text(&e));
            }
        }
        Ok(batch(1000, failures))
    });
}

fn phase_space_checks(c: &mut Checks, rw: &Rewriter) {
    let spec = rw.specialization().clone();
    let generic = spec.is_generic();
    c.run("derived/count", || {
        let derived = derive_phase_space(rw)?;
        Ok((derived.len() == 10, derived.len().to_string()))
    });
    match derive_phase_space(rw).and_then(|d| {
        let expected: Vec<_> = expected_generic().iter().map(|r| r.specialize(&spec)).collect();
        compare_relations(rw, &d, &expected).map(|cmp| (d, cmp))
    }) {
        Ok((derived, cmp)) => {
            for x in cmp {
                let residual = if x.residual.is_zero() { diff_text(&x.derived, &x.expected) } else { print_text(&x.residual) };
                c.push(format!("relation/{}", x.name), x.passed(), residual);
            }
            let rel = derived.iter().find(|r| r.lhs == Word::new(vec![Generator::DPhi, Generator::Theta]));
            let scalar = rel.map(|r| r.rhs.scalar_part()).unwrap_or_default();
            let expected = spec.apply(&(&ParamScalar::ratio(1, 2) * &(&ParamScalar::h() + &ParamScalar::hp())));
            c.push("scalar-term", scalar == expected, crate::frontend::print_scalar(&(&scalar - &expected)));
        }
        Err(e) => c.push("relation", false, format!("error: {e}")),
    }

    if generic {
        c.run("minus-h/matches-stated", || {
            let sp = specialize_phase_space(rw, HPrimeMode::MinusH)?;
            let srw = rw.clone().specialized(HPrimeMode::MinusH.specialization());
            let mut failures = Vec::new();
            for (route, derived) in [("substituted", &sp.substituted), ("rederived", &sp.rederived)] {
                for x in compare_relations(&srw, derived, &expected_minus_h())? {
                    if !x.passed() {
                        failures.push(format!("{route} {}: {}", x.name, diff_text(&x.derived, &x.expected)));
                    }
                }
            }
            Ok(batch(20, failures))
        });
        for mode in [HPrimeMode::MinusH, HPrimeMode::EqualH] {
            c.run(format!("{}/routes-agree", mode.name()), || {
                let sp = specialize_phase_space(rw, mode)?;
                Ok((sp.routes_agree(), if sp.routes_agree() { "0".into() } else { "substituted and rederived sets differ".into() }))
            });
        }
        c.run("minus-h/scalar-term", || {
            let sp = specialize_phase_space(rw, HPrimeMode::MinusH)?;
            let s = find_rhs(&sp.rederived, Generator::DPhi, Generator::Theta).scalar_part();
            Ok((s.is_zero(), crate::frontend::print_scalar(&s)))
        });
        c.run("equal-h/scalar-term", || {
            let sp = specialize_phase_space(rw, HPrimeMode::EqualH)?;
            let s = find_rhs(&sp.rederived, Generator::DPhi, Generator::Theta).scalar_part();
            Ok((s == ParamScalar::h(), crate::frontend::print_scalar(&(&s - &ParamScalar::h()))))
        });
        c.run("equal-h/pi_phi*pi_phi", || {
            let sp = specialize_phase_space(rw, HPrimeMode::EqualH)?;
            let got = find_rhs(&sp.rederived, Generator::DPhi, Generator::DPhi);
            let expected = Expr::term(ParamScalar::h(), Word::new(vec![Generator::DTheta, Generator::DPhi]));
            Ok((got == expected, diff_text(&got, &expected)))
        });
    }

    match hermiticity_audit(rw) {
        Ok(audit) => {
            for (group, items) in [
                ("hat-fixed", &audit.hats_fixed),
                ("star-star", &audit.involutive),
                ("starred-relation", &audit.starred_phase_space),
                ("starred-rule", &audit.starred_relations),
            ] {
                for item in items {
                    c.push(format!("hermiticity/{group}/{}", item.name), item.residual.is_zero(), print_text(&item.residual));
                }
            }
            if generic {
                let listing: Vec<String> = audit
                    .naive_relations
                    .iter()
                    .filter(|i| !i.residual.is_zero())
                    .map(|i| format!("{}: {}", i.name, print_text(&i.residual)))
                    .collect();
                c.push("hermiticity/naive-breaks/pph*theta", audit.naive_breaks_dphi_theta(), listing.join("; "));
            }
        }
        Err(e) => c.push("hermiticity", false, format!("error: {e}")),
    }

    c.run("star/involution/random-500", || {
        let mut s = Sampler::new(SEED ^ 4);
        let mut failures = Vec::new();
        for _ in 0..500 {
            let e = rw.normalize(&s.phase_space(4))?;
            let back = star(rw, &star(rw, &e)?)?;
            if back != e {
                failures.push(format!("{}: {}", print_text(&e), diff_text(&back, &e)));
            }
        }
        Ok(batch(500, failures))
    });
    c.run("star/anti-automorphism/random-200", || {
        let mut s = Sampler::new(SEED ^ 5);
        let mut failures = Vec::new();
        for _ in 0..200 {
            let (a, b) = (s.phase_space(3), s.phase_space(3));
            let lhs = star(rw, &(&a * &b))?;
            let rhs = rw.normalize(&(&star(rw, &b)? * &star(rw, &a)?))?;
            if lhs != rhs {
                failures.push(format!("a = {}, b = {}", print_text(&a), print_text(&b)));
            }
        }
        Ok(batch(200, failures))
    });
}

fn find_rhs(rels: &[crate::star::PhaseRelation], a: Generator, b: Generator) -> Expr {
    rels.iter().find(|r| r.lhs == Word::new(vec![a, b])).map(|r| r.rhs.clone()).unwrap_or_default()
}

/// The undeformed relations: odd letters anticommute, everything else
/// commutes, and `∂_i Θ^j` picks up `δ^j_i`.
pub fn classical_table() -> RuleTable {
    use Generator::*;
    let mut t = RuleTable::standard();
    for a in Generator::ALL {
        for b in Generator::ALL {
            if !is_reducible_pair(a, b) {
                continue;
            }
            let mut rhs = Expr::zero();
            if a != b {
                let sign = if a.parity() == 1 && b.parity() == 1 { -1 } else { 1 };
                rhs.add_term(Word::new(vec![b, a]), &ParamScalar::int(sign));
            }
            if matches!((a, b), (DTheta, Theta) | (DPhi, Phi)) {
                rhs.add_term(Word::unit(), &ParamScalar::one());
            }
            t = t.with_rule([a, b], rhs);
        }
    }
    t
}

fn limits_checks(c: &mut Checks, rw: &Rewriter) {
    let classical = rw.clone().specialized(Specialization::classical());
    let expected = classical_table();
    let differing: Vec<String> = expected
        .rules()
        .filter(|r| classical.table().rule(r.lhs[0], r.lhs[1]) != Some(r))
        .map(|r| r.name())
        .collect();
    c.push("classical/table", differing.is_empty(), if differing.is_empty() { "0".into() } else { differing.join(" ") });

    for spec in [Specialization::classical(), Specialization::hprime_equal_h(), Specialization::hprime_minus_h()] {
        let srw = rw.clone().specialized(spec.clone());
        for part in [Suite::Calculus, Suite::RMatrix, Suite::Confluence, Suite::PhaseSpace] {
            for mut check in collect(part, &srw) {
                check.name = format!("{spec}/{}/{}", part.name(), check.name);
                c.items.push(check);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("phase-space".parse::<Suite>().unwrap(), Suite::PhaseSpace);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn classical_table_commutes_differentials() {
        let t = classical_table();
        assert_eq!(t.rule(Generator::X, Generator::Y).unwrap().rhs, Expr::letters(&[Generator::Y, Generator::X]));
        assert!(t.rule(Generator::Theta, Generator::Theta).unwrap().rhs.is_zero());
    }

    #[test]
    fn rmatrix_suite_passes_and_reports_sorted() {
        let report = run_suite(Suite::RMatrix, &Rewriter::default());
        for f in report.failures() {
            panic!("{}: {}", f.name, f.residual);
        }
        assert!(report.checks.windows(2).all(|w| w[0].name <= w[1].name));
    }
}
