//! Randomized algebraic and geometric laws for words, rays and horoballs.

mod common;

use common::*;
use proptest::prelude::*;
use sigma_tree::horoball::{busemann, in_horoball, in_horoball_oracle, HoroballQuery};
use sigma_tree::{Letter, Ray, Word};

fn letter() -> impl Strategy<Value = Letter> {
    (1u32..=3, any::<bool>()).prop_map(|(i, positive)| Letter::new(i, positive))
}

/// Raw letter sequences, reduced into words; cancellation is common.
fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..12).prop_map(Word::reduce)
}

fn ray() -> impl Strategy<Value = Ray> {
    (
        word(),
        word().prop_filter("nontrivial period", |w| !w.is_identity()),
    )
        .prop_map(|(p, q)| Ray::new(&p, &q).unwrap())
}

proptest! {
    #[test]
    fn group_laws(u in word(), v in word(), w in word()) {
        prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
        prop_assert!(u.multiply(&u.inverse()).is_identity());
        prop_assert_eq!(u.multiply(&v).inverse(), v.inverse().multiply(&u.inverse()));
        prop_assert_eq!(Word::reduce(u.letters().iter().copied()), u.clone());
    }

    #[test]
    fn metric_axioms(u in word(), v in word(), w in word()) {
        prop_assert_eq!(u.distance(&v), v.distance(&u));
        prop_assert_eq!(u.distance(&v) == 0, u == v);
        prop_assert!(u.distance(&w) <= u.distance(&v) + v.distance(&w));
        // left multiplication is an isometry of the tree
        prop_assert_eq!(w.multiply(&u).distance(&w.multiply(&v)), u.distance(&v));
    }

    #[test]
    fn expsum_is_a_homomorphism(u in word(), v in word(), t in letter()) {
        prop_assert_eq!(u.multiply(&v).expsum(t), u.expsum(t) + v.expsum(t));
        prop_assert_eq!(u.expsum(t.inverse()), -u.expsum(t));
    }

    #[test]
    fn power_matches_repeated_product(u in word(), n in -4i64..=4) {
        let mut expected = Word::identity();
        let step = if n >= 0 { u.clone() } else { u.inverse() };
        for _ in 0..n.abs() {
            expected = expected.multiply(&step);
        }
        prop_assert_eq!(u.pow(n), expected);
    }

    #[test]
    fn display_round_trips(u in word(), r in ray()) {
        prop_assert_eq!(u.to_string().parse::<Word>().unwrap(), u);
        prop_assert_eq!(r.to_string().parse::<Ray>().unwrap(), r);
    }

    #[test]
    fn canonical_form_keeps_the_infinite_word(p in word(), q in word()) {
        prop_assume!(!q.is_identity());
        let r = Ray::new(&p, &q).unwrap();
        prop_assert_eq!(r.tau(16).letters().to_vec(), naive_letters(&p, &q, 16));
        prop_assert_eq!(Ray::new(r.prefix(), r.period()).unwrap(), r.clone());
        // no shorter prefix reads the same word
        if let Some(last) = r.prefix().last() {
            prop_assert_ne!(last, r.period().last().unwrap());
        }
    }

    #[test]
    fn translation_is_an_action(r in ray(), g in word(), h in word()) {
        prop_assert_eq!(r.translate(&g).translate(&h), r.translate(&h.multiply(&g)));
        prop_assert_eq!(r.translate(&Word::identity()), r.clone());
        prop_assert_eq!(r.translate(&g).translate(&g.inverse()), r);
    }

    #[test]
    fn busemann_is_equivariant(r in ray(), g in word(), w in word()) {
        // b_{gτ}(gw) and b_τ(w) differ by a constant depending only on g
        let shift = busemann(&g, &r.translate(&g));
        let moved = r.translate(&g);
        prop_assert_eq!(busemann(&g.multiply(&w), &moved), busemann(&w, &r) + shift);
    }

    #[test]
    fn closed_form_matches_oracle(r in ray(), w in word(), k in -5i64..=5) {
        let q = HoroballQuery::new(r, k);
        prop_assert_eq!(in_horoball(&w, &q), in_horoball_oracle(&w, &q));
    }

    #[test]
    fn horoballs_are_nested(r in ray(), w in word(), k in -5i64..=5) {
        let inner = HoroballQuery::new(r.clone(), k + 1);
        let outer = HoroballQuery::new(r, k);
        prop_assert!(!in_horoball(&w, &inner) || in_horoball(&w, &outer));
    }
}

#[test]
fn corpus_is_canonical_and_distinct() {
    let rays = corpus_with_commutators();
    let distinct: std::collections::BTreeSet<_> = rays.iter().collect();
    assert_eq!(distinct.len(), rays.len());
    assert!(corpus().len() >= 20);
}
