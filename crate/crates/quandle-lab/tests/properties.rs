//! Randomized invariants across the symbolic layers: ring axioms for the
//! Laurent arithmetic, normal-form stability for Smith reduction, free-word
//! algebra, abelianization invariance under simplification, and the two
//! matrix representations as homomorphisms.

use std::collections::BTreeMap;

use proptest::prelude::*;

use quandle_lab::braid::{braid_eq, burau, BraidWord};
use quandle_lab::exact::{smith_normal_form, IntMatrix, LaurentPoly};
use quandle_lab::fp::{tietze_simplify, Presentation};
use quandle_lab::quandle::{check_axioms, orbits, quandle_type, QuandleTable};
use quandle_lab::tym::tym_eval;
use quandle_lab::words::{gen, parse_word, Generator, Letter, Word};

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-6i64..=6, -9i64..=9), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, (e, c)| &acc + &LaurentPoly::monomial(e, c))
    })
}

fn arb_word(names: &'static [&'static str], max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0..names.len(), prop_oneof![Just(1i8), Just(-1i8)]), 0..max_len)
        .prop_map(move |letters| {
            Word::from_letters(
                letters
                    .into_iter()
                    .map(|(i, e)| Letter::new(gen(names[i]), e)),
            )
        })
}

fn arb_braid(max_len: usize) -> impl Strategy<Value = BraidWord> {
    arb_word(&["sig", "tau"], max_len).prop_map(|w| BraidWord::new(w).expect("braid letters"))
}

proptest! {
    #[test]
    fn laurent_ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &LaurentPoly::zero(), p.clone());
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
        prop_assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn laurent_powers_add(p in arb_poly(), a in 0u32..4, b in 0u32..4) {
        prop_assert_eq!(p.pow(a + b), &p.pow(a) * &p.pow(b));
    }

    #[test]
    fn smith_factors_form_a_divisibility_chain(
        entries in proptest::collection::vec(-20i64..=20, 9)
    ) {
        let m = IntMatrix::from_rows(vec![
            entries[0..3].to_vec(),
            entries[3..6].to_vec(),
            entries[6..9].to_vec(),
        ]).unwrap();
        let d = smith_normal_form(&m);
        for w in d.windows(2) {
            if w[0] != 0u8.into() && w[1] != 0u8.into() {
                prop_assert!((&w[1] % &w[0]) == 0u8.into(), "{:?}", d);
            }
            if w[0] == 0u8.into() {
                prop_assert!(w[1] == 0u8.into(), "zero must trail: {:?}", d);
            }
        }
    }

    #[test]
    fn smith_factors_are_stable_under_unimodular_row_operations(
        entries in proptest::collection::vec(-9i64..=9, 9),
        i in 0usize..3,
        j in 0usize..3,
        scale in -3i64..=3,
    ) {
        prop_assume!(i != j);
        let rows = vec![
            entries[0..3].to_vec(),
            entries[3..6].to_vec(),
            entries[6..9].to_vec(),
        ];
        let m = IntMatrix::from_rows(rows.clone()).unwrap();
        let mut moved = rows;
        for c in 0..3 {
            moved[i][c] += scale * moved[j][c];
        }
        let m2 = IntMatrix::from_rows(moved).unwrap();
        prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&m2));
    }

    #[test]
    fn words_round_trip_through_the_parser(w in arb_word(&["a", "b", "c"], 12)) {
        let text = w.to_string();
        prop_assert_eq!(parse_word(&text).unwrap(), w);
    }

    #[test]
    fn word_inverses_cancel(u in arb_word(&["a", "b"], 10), v in arb_word(&["a", "b"], 10)) {
        prop_assert!((&u * &u.inverse()).is_identity());
        prop_assert_eq!((&u * &v).inverse(), &v.inverse() * &u.inverse());
    }

    #[test]
    fn exponent_sums_are_additive(u in arb_word(&["a", "b"], 10), v in arb_word(&["a", "b"], 10)) {
        let g = gen("a");
        prop_assert_eq!(
            (&u * &v).exponent_sum(&g),
            u.exponent_sum(&g) + v.exponent_sum(&g)
        );
    }

    #[test]
    fn substitution_is_a_homomorphism(
        u in arb_word(&["a", "b"], 8),
        v in arb_word(&["a", "b"], 8),
        img_a in arb_word(&["x", "y"], 6),
        img_b in arb_word(&["x", "y"], 6),
    ) {
        let mut images: BTreeMap<Generator, Word> = BTreeMap::new();
        images.insert(gen("a"), img_a);
        images.insert(gen("b"), img_b);
        let lhs = (&u * &v).substitute(&images).unwrap();
        let rhs = &u.substitute(&images).unwrap() * &v.substitute(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn abelianization_is_invariant_under_simplification(
        relators in proptest::collection::vec(arb_word(&["a", "b", "c"], 8), 1..4)
    ) {
        let gens = vec![gen("a"), gen("b"), gen("c")];
        let relators: Vec<Word> = relators.into_iter().filter(|w| !w.is_identity()).collect();
        prop_assume!(!relators.is_empty());
        let p = Presentation::new(gens, relators).unwrap();
        let simple = tietze_simplify(&p, 2_000);
        prop_assert!(p.abelianization().is_isomorphic_to(&simple.abelianization()));
    }

    #[test]
    fn burau_is_a_homomorphism(u in arb_braid(8), v in arb_braid(8)) {
        let uv = BraidWord::new(u.word() * v.word()).unwrap();
        prop_assert_eq!(
            burau(&u).mul(&burau(&v)).unwrap(),
            burau(&uv)
        );
    }

    #[test]
    fn braid_equality_survives_relator_noise(
        prefix in arb_braid(6),
        suffix in arb_braid(6),
    ) {
        // insert the two sides of the braid relation at the same spot
        let lhs = BraidWord::parse("sig tau sig").unwrap();
        let rhs = BraidWord::parse("tau sig tau").unwrap();
        let w1 = BraidWord::new(&(prefix.word() * lhs.word()) * suffix.word()).unwrap();
        let w2 = BraidWord::new(&(prefix.word() * rhs.word()) * suffix.word()).unwrap();
        prop_assert!(braid_eq(&w1, &w2));
        // free cancellation is invisible
        let padded = BraidWord::parse("sig sig^-1").unwrap();
        let w3 = BraidWord::new(&(prefix.word() * padded.word()) * suffix.word()).unwrap();
        let w4 = BraidWord::new(prefix.word() * suffix.word()).unwrap();
        prop_assert!(braid_eq(&w3, &w4));
        // a stray extra generator always changes the braid
        let w5 = BraidWord::new(w4.word() * BraidWord::sigma().word()).unwrap();
        prop_assert!(!braid_eq(&w4, &w5));
    }

    #[test]
    fn tym_is_a_homomorphism_with_unit_monomial_determinant(
        u in arb_braid(8),
        v in arb_braid(8),
    ) {
        let uv = BraidWord::new(u.word() * v.word()).unwrap();
        prop_assert_eq!(tym_eval(&u).mul(&tym_eval(&v)).unwrap(), tym_eval(&uv));
        let writhe = u.word().exponent_sum(&gen("sig")) + u.word().exponent_sum(&gen("tau"));
        let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
        prop_assert_eq!(tym_eval(&u).det(), LaurentPoly::monomial(writhe, sign));
    }

    #[test]
    fn quandle_axioms_and_invariants_survive_relabeling(
        n in 3usize..8,
        seed in proptest::collection::vec(0usize..1000, 8),
    ) {
        let q = QuandleTable::dihedral(n);
        // build a permutation of 0..n from the random seed
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, s) in seed.iter().enumerate().take(n.saturating_sub(1)) {
            let j = i + s % (n - i);
            perm.swap(i, j);
        }
        let mut inv = vec![0usize; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabeled: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| perm[q.op(inv[x], inv[y])]).collect())
            .collect();
        let q2 = check_axioms(relabeled).expect("relabeling preserves the axioms");
        prop_assert_eq!(quandle_type(&q), quandle_type(&q2));
        let sizes = |q: &QuandleTable| {
            let mut v: Vec<usize> = orbits(q).iter().map(|o| o.len()).collect();
            v.sort();
            v
        };
        prop_assert_eq!(sizes(&q), sizes(&q2));
    }
}
