use posfo_core::classify::{classify_digraph, semantic_class};
use posfo_core::eval::evaluate_naive;
use posfo_core::logic::{dualize, random_sentence, to_prenex, Formula, Fragment, Signature};
use posfo_core::structure::ClosureKind;
use posfo_core::{evaluate, parse_formula, parse_structure, render_formula, render_structure, Digraph, Structure};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mixed_signature() -> Signature {
    Signature::new([("E", 2), ("P", 1), ("T", 3)]).unwrap()
}

fn sentence(seed: u64, sig: &Signature, frag: Fragment) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sentence(&mut rng, sig, frag, 4, 5)
}

fn digraph() -> impl Strategy<Value = Digraph> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), 0u64..1 << (n * n)))
        .prop_map(|(n, c)| Digraph::from_code(n, c))
}

fn structure(sig: Signature) -> impl Strategy<Value = Structure> {
    (1usize..=3, any::<u64>()).prop_map(move |(n, bits)| {
        let mut s = Structure::new(sig.clone(), n);
        let mut k = 0;
        for (i, r) in sig.relations().iter().enumerate() {
            let tuples = n.pow(r.arity as u32);
            for t in 0..tuples {
                if bits.rotate_left(k) & 1 == 1 {
                    let tuple = (0..r.arity).map(|p| (t / n.pow(p as u32) % n) as u32).collect();
                    s.insert(i, tuple).unwrap();
                }
                k = (k + 7) % 64;
            }
        }
        s
    })
}

fn permutation3() -> impl Strategy<Value = Vec<u32>> {
    Just(vec![0u32, 1, 2]).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>(), full in any::<bool>()) {
        let sig = mixed_signature();
        let frag = if full { Fragment::EQUALITY_FREE } else { Fragment::POSITIVE };
        let f = sentence(seed, &sig, frag);
        prop_assert_eq!(parse_formula(&render_formula(&f), &sig, frag).unwrap(), f);
    }

    #[test]
    fn dualizing_twice_is_identity(seed in any::<u64>()) {
        let sig = mixed_signature();
        let f = sentence(seed, &sig, Fragment::POSITIVE);
        prop_assert_eq!(dualize(&dualize(&f, false), false), f.clone());
        prop_assert_ne!(dualize(&f, false), f);
    }

    #[test]
    fn memoized_matches_naive(seed in any::<u64>(), s in structure(mixed_signature())) {
        let f = sentence(seed, s.signature(), Fragment::EQUALITY_FREE);
        prop_assert_eq!(evaluate(&s, &f).unwrap(), evaluate_naive(&s, &f).unwrap());
    }

    #[test]
    fn prenex_form_is_equivalent(seed in any::<u64>(), s in structure(mixed_signature())) {
        let f = sentence(seed, s.signature(), Fragment::POSITIVE);
        let p = to_prenex(&f).unwrap().to_formula();
        prop_assert!(p.is_sentence());
        prop_assert_eq!(evaluate(&s, &p).unwrap(), evaluate(&s, &f).unwrap());
    }

    #[test]
    fn dual_sentence_on_complement(seed in any::<u64>(), h in digraph()) {
        let f = sentence(seed, &Signature::digraph(), Fragment::POSITIVE);
        let lhs = evaluate(&h.to_structure(), &f).unwrap();
        let rhs = evaluate(&h.complement().to_structure(), &dualize(&f, false)).unwrap();
        prop_assert_ne!(lhs, rhs);
    }

    #[test]
    fn structure_text_round_trips(s in structure(mixed_signature())) {
        prop_assert_eq!(parse_structure(&render_structure(&s)).unwrap(), s);
    }

    #[test]
    fn complement_is_an_involution(h in digraph()) {
        prop_assert_eq!(h.complement().complement(), h.clone());
        prop_assert_eq!(h.complement().edge_count() + h.edge_count(), h.size() * h.size());
    }

    #[test]
    fn closures_are_idempotent(h in digraph()) {
        for kind in ClosureKind::ALL {
            let c = h.closure(kind);
            prop_assert_eq!(c.closure(kind), c);
        }
        prop_assert!(h.edges().iter().all(|&(x, y)| h.tran_closure().has_edge(x, y)));
        prop_assert!(h.doub().edges().iter().all(|&(x, y)| h.has_edge(x, y)));
    }

    #[test]
    fn isomorphism_commutes_with_complement(code in 0u64..512, p in permutation3()) {
        let h = Digraph::from_code(3, code);
        let g = h.permute(&p);
        prop_assert_eq!(g.complement(), h.complement().permute(&p));
        prop_assert!(g.is_isomorphic(&h));
        prop_assert_eq!(g.canonical_code(), h.canonical_code());
    }

    #[test]
    fn verdicts_are_isomorphism_invariant(code in 0u64..512, p in permutation3()) {
        let h = Digraph::from_code(3, code);
        let g = h.permute(&p);
        let (a, b) = (classify_digraph(&h).unwrap(), classify_digraph(&g).unwrap());
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(semantic_class(&g), a.verdict);
        prop_assert_eq!(classify_digraph(&h.complement()).unwrap().verdict, a.verdict.dual());
    }

    #[test]
    fn certificates_check(code in 0u64..512) {
        let h = Digraph::from_code(3, code);
        let c = classify_digraph(&h).unwrap();
        prop_assert!(c.check(&h.to_structure()).is_ok());
    }
}
