//! The involution on the subalgebra of coordinates and derivatives, the
//! hermitean operators built from it, and the phase-space relations they
//! satisfy.
//!
//! The involution is antilinear (`h ↦ -h`, `h' ↦ -h'`, `i ↦ -i`) and
//! reverses products without a sign: `(fg)⁺ = g⁺ f⁺`.

use thiserror::Error;

use crate::algebra::{Expr, Generator, Word};
use crate::rewrite::{RewriteError, RuleGroup, Rewriter};
use crate::scalars::{ParamScalar, Specialization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("the involution is defined on coordinates and derivatives only; found `{0}`")]
    Differential(&'static str),
    #[error("unknown hermitean operator `{0}` (expected theta, phi, pi_theta or pi_phi)")]
    UnknownHat(String),
    #[error("could not express `{0}` in the hermitean operators")]
    NotInHatSpan(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

fn half() -> ParamScalar {
    ParamScalar::ratio(1, 2)
}

fn check_b(e: &Expr) -> Result<(), StarError> {
    for w in e.words() {
        if let Some(g) = w.letters().iter().find(|g| g.is_differential()) {
            return Err(StarError::Differential(g.name()));
        }
    }
    Ok(())
}

fn star_image(g: Generator) -> Expr {
    use Generator::*;
    match g {
        Theta => &Expr::gen(Theta) + &Expr::term(ParamScalar::h(), Word::new(vec![Phi])),
        DPhi => &Expr::gen(DPhi) + &Expr::term(ParamScalar::hp(), Word::new(vec![DTheta])),
        other => Expr::gen(other),
    }
}

fn reverse_with(e: &Expr, image: impl Fn(Generator) -> Expr, coeff: impl Fn(&ParamScalar) -> ParamScalar) -> Expr {
    let mut out = Expr::zero();
    for (w, c) in e.terms() {
        let mut product = Expr::one();
        for &g in w.letters().iter().rev() {
            product = &product * &image(g);
        }
        out.add_scaled(&product, &coeff(c));
    }
    out
}

/// `e⁺` in normal form.
pub fn star(rw: &Rewriter, e: &Expr) -> Result<Expr, StarError> {
    check_b(e)?;
    let raw = reverse_with(e, star_image, ParamScalar::conj);
    Ok(rw.normalize(&raw)?)
}

/// `e⁺` without normalizing, for use on relations of the free algebra.
pub fn star_free(e: &Expr) -> Result<Expr, StarError> {
    check_b(e)?;
    Ok(reverse_with(e, star_image, ParamScalar::conj))
}

/// The unshifted identification: generators fixed, `h` and `h'` real.
pub fn naive_star_free(e: &Expr) -> Result<Expr, StarError> {
    check_b(e)?;
    Ok(reverse_with(e, Expr::gen, |c| {
        let mut out = ParamScalar::zero();
        for (&(a, b), g) in c.terms() {
            out += &ParamScalar::monomial(g.conj(), a, b);
        }
        out
    }))
}

/// The four hermitean operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hat {
    Theta,
    Phi,
    PiTheta,
    PiPhi,
}

impl Hat {
    pub const ALL: [Hat; 4] = [Hat::Theta, Hat::Phi, Hat::PiTheta, Hat::PiPhi];

    pub fn name(self) -> &'static str {
        match self {
            Hat::Theta => "theta",
            Hat::Phi => "phi",
            Hat::PiTheta => "pi_theta",
            Hat::PiPhi => "pi_phi",
        }
    }

    pub fn from_name(s: &str) -> Result<Hat, StarError> {
        Hat::ALL.into_iter().find(|h| h.name() == s).ok_or_else(|| StarError::UnknownHat(s.to_string()))
    }

    /// The letter standing for this operator in hat-alphabet expressions.
    pub fn letter(self) -> Generator {
        match self {
            Hat::Theta => Generator::Theta,
            Hat::Phi => Generator::Phi,
            Hat::PiTheta => Generator::DTheta,
            Hat::PiPhi => Generator::DPhi,
        }
    }

    pub fn of_letter(g: Generator) -> Option<Hat> {
        Hat::ALL.into_iter().find(|h| h.letter() == g)
    }

    /// The operator in terms of the generators.
    pub fn expr(self) -> Expr {
        use Generator::*;
        match self {
            Hat::Theta => &Expr::gen(Theta) + &Expr::term(&ParamScalar::h() * &half(), Word::new(vec![Phi])),
            Hat::Phi => Expr::gen(Phi),
            Hat::PiTheta => Expr::gen(DTheta),
            Hat::PiPhi => &Expr::gen(DPhi) + &Expr::term(&ParamScalar::hp() * &half(), Word::new(vec![DTheta])),
        }
    }
}

pub fn hat(name: &str) -> Result<Expr, StarError> {
    Ok(Hat::from_name(name)?.expr())
}

/// Read a hat-alphabet expression as generators (not normalized).
pub fn expand_hats(e: &Expr) -> Result<Expr, StarError> {
    let mut out = Expr::zero();
    for (w, c) in e.terms() {
        let mut product = Expr::one();
        for &g in w.letters() {
            let h = Hat::of_letter(g).ok_or(StarError::Differential(g.name()))?;
            product = &product * &h.expr();
        }
        out.add_scaled(&product, c);
    }
    Ok(out)
}

fn hat_weight(w: &Word) -> usize {
    w.count(Generator::Theta) + w.count(Generator::DPhi)
}

/// Rewrite a generator expression in the hermitean operators: the result
/// is a hat-alphabet expression on normal words whose expansion normalizes
/// back to `e`.
pub fn to_hat_basis(rw: &Rewriter, e: &Expr) -> Result<Expr, StarError> {
    check_b(e)?;
    let mut rest = rw.normalize(e)?;
    let mut out = Expr::zero();
    // Expanding a hat word gives the same word plus words with fewer θ and
    // ∂φ letters, so peeling off the heaviest word terminates.
    while let Some(w) = rest
        .words()
        .max_by(|a, b| hat_weight(a).cmp(&hat_weight(b)).then_with(|| crate::rewrite::termination_cmp(a, b)))
        .cloned()
    {
        let c = rest.coeff(&w);
        let expansion = rw.normalize(&expand_hats(&Expr::word(w.clone()))?)?;
        let lead = expansion.coeff(&w);
        if !lead.is_one() || expansion.words().any(|v| v != &w && hat_weight(v) > hat_weight(&w)) {
            return Err(StarError::NotInHatSpan(crate::frontend::print_text(e)));
        }
        rest = &rest - &expansion.scale(&c);
        out.add_term(w, &c);
    }
    Ok(out)
}

/// A relation of the phase-space algebra, in the hat alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseRelation {
    pub lhs: Word,
    pub rhs: Expr,
}

impl PhaseRelation {
    pub fn name(&self) -> String {
        let names: Vec<&str> = self.lhs.letters().iter().map(|&g| Hat::of_letter(g).expect("hat letter").name()).collect();
        names.join("*")
    }

    /// `lhs - rhs` in the hat alphabet.
    pub fn difference(&self) -> Expr {
        &Expr::word(self.lhs.clone()) - &self.rhs
    }

    pub fn specialize(&self, spec: &Specialization) -> PhaseRelation {
        PhaseRelation { lhs: self.lhs.clone(), rhs: self.rhs.map_coeffs(|c| spec.apply(c)) }
    }
}

/// The ten descending hat words, in the order the relations are listed.
pub fn phase_space_words() -> Vec<Word> {
    use Generator::*;
    [
        [Theta, Theta],
        [Phi, Theta],
        [Phi, Phi],
        [DTheta, DTheta],
        [DPhi, DTheta],
        [DPhi, DPhi],
        [DTheta, Theta],
        [DTheta, Phi],
        [DPhi, Theta],
        [DPhi, Phi],
    ]
    .iter()
    .map(|p| Word::new(p.to_vec()))
    .collect()
}

/// Rewrite each descending hat product in the hat basis.
pub fn derive_phase_space(rw: &Rewriter) -> Result<Vec<PhaseRelation>, StarError> {
    phase_space_words()
        .into_iter()
        .map(|lhs| {
            let generators = rw.normalize(&expand_hats(&Expr::word(lhs.clone()))?)?;
            Ok(PhaseRelation { lhs, rhs: to_hat_basis(rw, &generators)? })
        })
        .collect()
}

/// Normal form of the expansion of `lhs - rhs`; zero iff the relation holds.
pub fn relation_residual(rw: &Rewriter, rel: &PhaseRelation) -> Result<Expr, StarError> {
    Ok(rw.normalize(&expand_hats(&rel.difference())?)?)
}

fn relations_from(list: &[(&[Generator], &str)]) -> Vec<PhaseRelation> {
    list.iter()
        .map(|(lhs, rhs)| PhaseRelation {
            lhs: Word::new(lhs.to_vec()),
            rhs: crate::frontend::parse(rhs).expect("well-formed relation"),
        })
        .collect()
}

/// The two-parameter phase-space relations as stated, letters read as
/// hermitean operators. The `π̂_θ θ̂` relation carries `θ̂ π̂_θ`.
pub fn expected_generic() -> Vec<PhaseRelation> {
    use Generator::*;
    relations_from(&[
        (&[Theta, Theta], "h*theta*phi"),
        (&[Phi, Theta], "-theta*phi"),
        (&[Phi, Phi], "0"),
        (&[DTheta, DTheta], "0"),
        (&[DPhi, DTheta], "-pth*pph"),
        (&[DPhi, DPhi], "hp*pth*pph"),
        (&[DTheta, Theta], "1 - theta*pth + h*phi*pth"),
        (&[DTheta, Phi], "-phi*pth"),
        (&[DPhi, Theta], "-theta*pph - h*theta*pth - hp*phi*pph + 1/2*(h^2 + hp^2)*phi*pth + 1/2*(h + hp)"),
        (&[DPhi, Phi], "1 - phi*pph + hp*phi*pth"),
    ])
}

/// The one-parameter relations at `h' = -h`, as stated.
pub fn expected_minus_h() -> Vec<PhaseRelation> {
    use Generator::*;
    relations_from(&[
        (&[Theta, Theta], "h*theta*phi"),
        (&[Phi, Theta], "-theta*phi"),
        (&[Phi, Phi], "0"),
        (&[DTheta, DTheta], "0"),
        (&[DPhi, DTheta], "-pth*pph"),
        (&[DPhi, DPhi], "h*pph*pth"),
        (&[DTheta, Theta], "1 - theta*pth + h*phi*pth"),
        (&[DTheta, Phi], "-phi*pth"),
        (&[DPhi, Theta], "-theta*pph - h*(theta*pth - phi*pph) + h^2*phi*pth"),
        (&[DPhi, Phi], "1 - phi*pph - h*phi*pth"),
    ])
}

/// Per-relation comparison of a derived set with an expected one.
#[derive(Clone, Debug)]
pub struct RelationComparison {
    pub name: String,
    pub derived: Expr,
    /// The expected right-hand side, rewritten on normal hat words.
    pub expected: Expr,
    /// Normal form of the expanded expected relation.
    pub residual: Expr,
}

impl RelationComparison {
    pub fn passed(&self) -> bool {
        self.derived == self.expected && self.residual.is_zero()
    }
}

pub fn compare_relations(
    rw: &Rewriter,
    derived: &[PhaseRelation],
    expected: &[PhaseRelation],
) -> Result<Vec<RelationComparison>, StarError> {
    let mut out = Vec::new();
    for exp in expected {
        let found = derived.iter().find(|d| d.lhs == exp.lhs).map(|d| d.rhs.clone()).unwrap_or_default();
        out.push(RelationComparison {
            name: exp.name(),
            derived: found,
            expected: to_hat_basis(rw, &rw.normalize(&expand_hats(&exp.rhs)?)?)?,
            residual: relation_residual(rw, exp)?,
        });
    }
    Ok(out)
}

/// Which values of `h'` the phase-space algebra is taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HPrimeMode {
    #[default]
    Generic,
    MinusH,
    EqualH,
}

impl HPrimeMode {
    pub fn specialization(self) -> Specialization {
        match self {
            HPrimeMode::Generic => Specialization::generic(),
            HPrimeMode::MinusH => Specialization::hprime_minus_h(),
            HPrimeMode::EqualH => Specialization::hprime_equal_h(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HPrimeMode::Generic => "generic",
            HPrimeMode::MinusH => "minus-h",
            HPrimeMode::EqualH => "equal-h",
        }
    }
}

impl std::str::FromStr for HPrimeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "generic" => Ok(HPrimeMode::Generic),
            "minus-h" | "-h" => Ok(HPrimeMode::MinusH),
            "equal-h" | "h" => Ok(HPrimeMode::EqualH),
            other => Err(format!("unknown h' mode `{other}` (expected generic, minus-h or equal-h)")),
        }
    }
}

/// A specialized phase-space algebra computed two ways.
#[derive(Clone, Debug)]
pub struct SpecializedPhaseSpace {
    /// The generic relations with the substitution applied to coefficients.
    pub substituted: Vec<PhaseRelation>,
    /// The relations derived again with a specialized rewriter.
    pub rederived: Vec<PhaseRelation>,
}

impl SpecializedPhaseSpace {
    pub fn routes_agree(&self) -> bool {
        self.substituted == self.rederived
    }
}

/// `rw` supplies the rule table; its own specialization is ignored.
pub fn specialize_phase_space(rw: &Rewriter, mode: HPrimeMode) -> Result<SpecializedPhaseSpace, StarError> {
    let spec = mode.specialization();
    let generic = derive_phase_space(&rw.clone().specialized(Specialization::generic()))?;
    let substituted = generic.iter().map(|r| r.specialize(&spec)).collect();
    let rederived = derive_phase_space(&rw.clone().specialized(spec))?;
    Ok(SpecializedPhaseSpace { substituted, rederived })
}

/// One named residual of the hermiticity audit.
#[derive(Clone, Debug)]
pub struct AuditItem {
    pub name: String,
    pub residual: Expr,
}

#[derive(Clone, Debug)]
pub struct HermiticityAudit {
    /// `X⁺ - X` for each hermitean operator.
    pub hats_fixed: Vec<AuditItem>,
    /// `(g⁺)⁺ - g` for each generator.
    pub involutive: Vec<AuditItem>,
    /// Starred residuals of the derived phase-space relations.
    pub starred_phase_space: Vec<AuditItem>,
    /// Starred residuals of the coordinate, derivative/coordinate and
    /// derivative relations.
    pub starred_relations: Vec<AuditItem>,
    /// The same relations under the naive identification.
    pub naive_relations: Vec<AuditItem>,
}

impl HermiticityAudit {
    /// The naive identification fails on `∂φθ`.
    pub fn naive_breaks_dphi_theta(&self) -> bool {
        self.naive_relations.iter().any(|i| i.name == "pph*theta" && !i.residual.is_zero())
    }

    pub fn passed(&self) -> bool {
        let zero = |v: &[AuditItem]| v.iter().all(|i| i.residual.is_zero());
        zero(&self.hats_fixed)
            && zero(&self.involutive)
            && zero(&self.starred_phase_space)
            && zero(&self.starred_relations)
            && self.naive_breaks_dphi_theta()
    }
}

pub fn hermiticity_audit(rw: &Rewriter) -> Result<HermiticityAudit, StarError> {
    let mut hats_fixed = Vec::new();
    for h in Hat::ALL {
        let x = rw.normalize(&h.expr())?;
        hats_fixed.push(AuditItem { name: h.name().into(), residual: &star(rw, &x)? - &x });
    }
    let mut involutive = Vec::new();
    for g in Generator::ALL.into_iter().filter(|g| !g.is_differential()) {
        let e = Expr::gen(g);
        involutive.push(AuditItem { name: g.name().into(), residual: &star(rw, &star(rw, &e)?)? - &e });
    }
    let mut starred_phase_space = Vec::new();
    for rel in derive_phase_space(rw)? {
        let expanded = expand_hats(&rel.difference())?;
        starred_phase_space.push(AuditItem { name: rel.name(), residual: rw.normalize(&star_free(&expanded)?)? });
    }
    let mut starred_relations = Vec::new();
    let mut naive_relations = Vec::new();
    for group in [RuleGroup::A, RuleGroup::D, RuleGroup::E] {
        for rule in rw.table().group(group) {
            let rel = rule.relation();
            starred_relations.push(AuditItem {
                name: rule.name(),
                residual: rw.normalize(&star_free(&rel)?)?,
            });
            naive_relations.push(AuditItem { name: rule.name(), residual: rw.normalize(&naive_star_free(&rel)?)? });
        }
    }
    Ok(HermiticityAudit { hats_fixed, involutive, starred_phase_space, starred_relations, naive_relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;
    use Generator::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn star_examples() {
        let rw = Rewriter::default();
        assert_eq!(star(&rw, &p("theta")).unwrap(), p("theta + h*phi"));
        assert_eq!(star(&rw, &star(&rw, &p("theta")).unwrap()).unwrap(), p("theta"));
        assert_eq!(star(&rw, &p("theta*phi")).unwrap(), p("-theta*phi"));
        assert_eq!(star(&rw, &p("pph")).unwrap(), p("pph + hp*pth"));
        assert_eq!(star(&rw, &p("i*h")).unwrap(), p("i*h"));
        assert!(matches!(star(&rw, &p("x*theta")), Err(StarError::Differential("x"))));
    }

    #[test]
    fn hats_are_fixed() {
        let rw = Rewriter::default();
        assert_eq!(hat("theta").unwrap(), p("theta + 1/2*h*phi"));
        assert_eq!(hat("pi_phi").unwrap(), p("pph + 1/2*hp*pth"));
        assert!(hat("psi").is_err());
        for h in Hat::ALL {
            assert_eq!(star(&rw, &h.expr()).unwrap(), rw.normalize(&h.expr()).unwrap(), "{}", h.name());
        }
    }

    #[test]
    fn hat_basis_roundtrip() {
        let rw = Rewriter::default();
        for s in ["theta*phi*pth*pph", "1 + theta", "h*phi*pph - theta*pth", "pth*pph"] {
            let e = rw.normalize(&p(s)).unwrap();
            let hats = to_hat_basis(&rw, &e).unwrap();
            assert_eq!(rw.normalize(&expand_hats(&hats).unwrap()).unwrap(), e, "{s}");
        }
        assert_eq!(to_hat_basis(&rw, &p("theta")).unwrap(), p("theta - 1/2*h*phi"));
    }

    #[test]
    fn inhomogeneous_term() {
        let rw = Rewriter::default();
        let derived = derive_phase_space(&rw).unwrap();
        let rel = derived.iter().find(|r| r.lhs == Word::new(vec![DPhi, Theta])).unwrap();
        assert_eq!(rel.rhs.scalar_part(), &(&ParamScalar::h() + &ParamScalar::hp()) * &half());
        let pp = derived.iter().find(|r| r.lhs == Word::new(vec![DPhi, DPhi])).unwrap();
        assert_eq!(pp.rhs, p("hp*pth*pph"));
    }

    #[test]
    fn starred_phase_space_and_naive_break() {
        let audit = hermiticity_audit(&Rewriter::default()).unwrap();
        assert!(audit.passed());
        let broken: Vec<&str> =
            audit.naive_relations.iter().filter(|i| !i.residual.is_zero()).map(|i| i.name.as_str()).collect();
        assert!(broken.contains(&"pph*theta"));
    }

    #[test]
    fn generic_set_matches_expected() {
        let rw = Rewriter::default();
        let derived = derive_phase_space(&rw).unwrap();
        let cmp = compare_relations(&rw, &derived, &expected_generic()).unwrap();
        assert_eq!(cmp.len(), 10);
        for c in cmp {
            assert!(c.passed(), "{}: derived {} expected {} residual {}", c.name, c.derived, c.expected, c.residual);
        }
    }

    #[test]
    fn seventh_relation_needs_pi_theta() {
        let rw = Rewriter::default();
        let printed = PhaseRelation { lhs: Word::new(vec![DTheta, Theta]), rhs: p("1 - theta*phi + h*phi*pth") };
        assert!(!relation_residual(&rw, &printed).unwrap().is_zero());
    }

    #[test]
    fn minus_h_set_matches_expected() {
        let rw = Rewriter::default().specialized(Specialization::hprime_minus_h());
        let sp = specialize_phase_space(&Rewriter::default(), HPrimeMode::MinusH).unwrap();
        for derived in [&sp.substituted, &sp.rederived] {
            for c in compare_relations(&rw, derived, &expected_minus_h()).unwrap() {
                assert!(c.passed(), "{}: derived {} expected {}", c.name, c.derived, c.expected);
            }
        }
        let scalar = sp.rederived.iter().find(|r| r.lhs == Word::new(vec![DPhi, Theta])).unwrap().rhs.scalar_part();
        assert!(scalar.is_zero());
    }

    #[test]
    fn equal_h_scalar_term() {
        let sp = specialize_phase_space(&Rewriter::default(), HPrimeMode::EqualH).unwrap();
        let rel = sp.rederived.iter().find(|r| r.lhs == Word::new(vec![DPhi, Theta])).unwrap();
        assert_eq!(rel.rhs.scalar_part(), ParamScalar::h());
        let pp = sp.rederived.iter().find(|r| r.lhs == Word::new(vec![DPhi, DPhi])).unwrap();
        assert_eq!(pp.rhs, p("h*pth*pph"));
    }

    #[test]
    fn classical_phase_space() {
        let rw = Rewriter::default().specialized(Specialization::classical());
        let derived = derive_phase_space(&rw).unwrap();
        let anti = |a: Generator, b: Generator| derived.iter().find(|r| r.lhs == Word::new(vec![a, b])).unwrap().rhs.clone();
        assert_eq!(anti(DTheta, Theta), p("1 - theta*pth"));
        assert_eq!(anti(DPhi, Phi), p("1 - phi*pph"));
        assert_eq!(anti(DPhi, Theta), p("-theta*pph"));
        assert!(anti(Theta, Theta).is_zero());
    }

    #[test]
    fn specialized_routes_agree() {
        for mode in [HPrimeMode::MinusH, HPrimeMode::EqualH] {
            assert!(specialize_phase_space(&Rewriter::default(), mode).unwrap().routes_agree(), "{}", mode.name());
        }
    }
}
