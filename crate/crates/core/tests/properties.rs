use proptest::prelude::*;

use hplane_core::algebra::parity;
use hplane_core::frontend::{parse, parse_json, parse_latex, print, Format};
use hplane_core::star::star;
use hplane_core::{
    exterior_d, free_mul, Expr, GaussianRational, Generator, ParamScalar, Rewriter, Specialization, Strategy as Order, Word,
};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=4).prop_map(|(a, b, c, d)| {
        GaussianRational::new(hplane_core::scalars::rational(a, b), hplane_core::scalars::rational(c, d))
    })
}

fn scalar() -> impl Strategy<Value = ParamScalar> {
    prop::collection::vec((gaussian(), 0u32..3, 0u32..3), 0..4).prop_map(|ms| {
        let mut out = ParamScalar::zero();
        for (g, a, b) in ms {
            out += &ParamScalar::monomial(g, a, b);
        }
        out
    })
}

fn word(letters: &'static [Generator], max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(letters), 0..=max_len).prop_map(Word::new)
}

fn expr_in(letters: &'static [Generator], max_len: usize) -> impl Strategy<Value = Expr> {
    prop::collection::vec((scalar(), word(letters, max_len)), 0..4).prop_map(|ts| {
        let mut e = Expr::zero();
        for (c, w) in ts {
            e.add_term(w, &c);
        }
        e
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    expr_in(&Generator::ALL, 4)
}

const FORMS: &[Generator] = &[Generator::Y, Generator::X, Generator::Theta, Generator::Phi];
const PHASE: &[Generator] = &[Generator::Theta, Generator::Phi, Generator::DTheta, Generator::DPhi];

fn rw() -> Rewriter {
    Rewriter::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &ParamScalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_an_antilinear_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!((&ParamScalar::i() * &a).conj(), &-ParamScalar::i() * &a.conj());
    }

    #[test]
    fn specialization_is_a_ring_map(a in scalar(), b in scalar()) {
        for spec in [Specialization::classical(), Specialization::hprime_minus_h(), Specialization::hprime_equal_h()] {
            prop_assert_eq!(spec.apply(&(&a * &b)), &spec.apply(&a) * &spec.apply(&b));
            prop_assert_eq!(spec.apply(&(&a + &b)), &spec.apply(&a) + &spec.apply(&b));
        }
    }

    #[test]
    fn free_product_is_associative_and_unital(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(free_mul(&free_mul(&a, &b), &c), free_mul(&a, &free_mul(&b, &c)));
        prop_assert_eq!(free_mul(&a, &Expr::one()), a.clone());
        prop_assert_eq!(free_mul(&Expr::one(), &a), a);
    }

    #[test]
    fn parity_is_additive(u in word(&Generator::ALL, 5), v in word(&Generator::ALL, 5)) {
        prop_assert_eq!(parity(&u.concat(&v)), parity(&u) ^ parity(&v));
    }

    #[test]
    fn normalize_is_idempotent_and_normal(e in expr()) {
        let rw = rw();
        let n = rw.normalize(&e).unwrap();
        prop_assert_eq!(rw.normalize(&n).unwrap(), n.clone());
        prop_assert!(n.words().all(hplane_core::rewrite::is_normal));
    }

    #[test]
    fn normalize_is_a_homomorphism(a in expr_in(&Generator::ALL, 3), b in expr_in(&Generator::ALL, 3)) {
        let rw = rw();
        let (na, nb) = (rw.normalize(&a).unwrap(), rw.normalize(&b).unwrap());
        prop_assert_eq!(rw.normalize(&(&a * &b)).unwrap(), rw.normalize(&(&na * &nb)).unwrap());
        prop_assert_eq!(rw.normalize(&(&a + &b)).unwrap(), &na + &nb);
    }

    #[test]
    fn strategies_agree(e in expr_in(&Generator::ALL, 6)) {
        let rw = rw();
        prop_assert_eq!(
            rw.normalize_with(&e, Order::LeftmostInnermost).unwrap(),
            rw.normalize_with(&e, Order::RightmostInnermost).unwrap()
        );
    }

    #[test]
    fn d_is_nilpotent_graded_derivation(f in word(FORMS, 3), g in expr_in(FORMS, 3)) {
        let rw = rw();
        let fe = Expr::word(f.clone());
        let dd = exterior_d(&rw, &exterior_d(&rw, &g).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
        let sign = if f.parity() == 1 { -ParamScalar::one() } else { ParamScalar::one() };
        let lhs = exterior_d(&rw, &(&fe * &g)).unwrap();
        let rhs = &(&exterior_d(&rw, &fe).unwrap() * &g) + &(&fe * &exterior_d(&rw, &g).unwrap()).scale(&sign);
        prop_assert_eq!(lhs, rw.normalize(&rhs).unwrap());
    }

    #[test]
    fn star_is_an_involutive_anti_automorphism(a in expr_in(PHASE, 3), b in expr_in(PHASE, 3)) {
        let rw = rw();
        let na = rw.normalize(&a).unwrap();
        prop_assert_eq!(star(&rw, &star(&rw, &na).unwrap()).unwrap(), na);
        let lhs = star(&rw, &(&a * &b)).unwrap();
        let rhs = rw.normalize(&(&star(&rw, &b).unwrap() * &star(&rw, &a).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn printing_round_trips(e in expr()) {
        let n = rw().normalize(&e).unwrap();
        prop_assert_eq!(parse(&print(&n, Format::Text)).unwrap(), n.clone());
        prop_assert_eq!(parse_latex(&print(&n, Format::Latex)).unwrap(), n.clone());
        prop_assert_eq!(parse_json(&print(&n, Format::Json)).unwrap(), n);
    }
}
