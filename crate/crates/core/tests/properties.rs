//! Operator involutions, the arit fast path against the word-level definition,
//! and structural invariants on seeded random inputs.

use proptest::prelude::*;

use mould::flexion::{ari_upto, arit_by_words, arit_upto};
use mould::lie::lyndon::{lie_basis, lyndon_coordinates};
use mould::lie::ma::{ma, mt_bracket};
use mould::random::{random_alternal, random_lie_of_weight, random_mould, random_push_invariant, rng};
use mould::spaces::{is_alternal, is_mantar_invariant, is_push_invariant};
use mould::{Group, Mould, Side};

fn group(i: u8) -> Group {
    match i % 4 {
        0 => Group::trivial(),
        1 => Group::cyclic(2),
        2 => Group::cyclic(3),
        _ => Group::new(&[2, 2]).unwrap(),
    }
}

fn side(b: bool) -> Side {
    if b {
        Side::U
    } else {
        Side::V
    }
}

fn iterate(m: &Mould, n: usize, f: impl Fn(&Mould) -> Mould) -> Mould {
    (0..n).fold(m.clone(), |acc, _| f(&acc))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn involutions(seed in any::<u64>(), g in any::<u8>(), s in any::<bool>()) {
        let m = random_mould(&mut rng(seed), &group(g), side(s), 4, 3);
        prop_assert_eq!(m.swap().swap(), m.clone());
        prop_assert_eq!(m.neg().neg(), m.clone());
        prop_assert_eq!(m.mantar().mantar(), m);
    }

    #[test]
    fn push_and_pus_orders(seed in any::<u64>(), g in any::<u8>(), d in 1usize..=4) {
        let g = group(g);
        let m = random_mould(&mut rng(seed), &g, Side::U, 4, 3).depth_part(d);
        prop_assert_eq!(iterate(&m, d + 1, |x| x.push().unwrap()), m.clone());
        let v = m.with_side(Side::V);
        prop_assert_eq!(iterate(&v, d, |x| x.pus().unwrap()), v);
    }

    #[test]
    fn arit_matches_word_definition(seed in any::<u64>(), g in 0u8..3, s in any::<bool>()) {
        let g = group(g);
        let mut r = rng(seed);
        let a = random_mould(&mut r, &g, side(s), 3, 2);
        let b = random_mould(&mut r, &g, side(s), 3, 2);
        prop_assert_eq!(arit_upto(&b, &a, 4).unwrap(), arit_by_words(&b, &a, 4).unwrap());
    }

    #[test]
    fn ari_is_antisymmetric(seed in any::<u64>(), g in any::<u8>(), s in any::<bool>()) {
        let g = group(g);
        let mut r = rng(seed);
        let a = random_mould(&mut r, &g, side(s), 3, 3);
        let b = random_mould(&mut r, &g, side(s), 3, 3);
        let sum = ari_upto(&a, &b, 4).unwrap().add(&ari_upto(&b, &a, 4).unwrap()).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn ma_is_alternal_and_mantar_invariant(seed in any::<u64>(), g in 0u8..3) {
        let m = random_alternal(&mut rng(seed), &group(g), 5);
        prop_assert!(is_alternal(&m).is_ok());
        prop_assert!(is_mantar_invariant(&m).is_ok());
    }

    #[test]
    fn ma_bracket_homomorphism(seed in any::<u64>(), g in 0u8..2, w1 in 1usize..=3, w2 in 1usize..=2) {
        let g = group(g);
        let mut r = rng(seed);
        let f1 = random_lie_of_weight(&mut r, &g, w1);
        let f2 = random_lie_of_weight(&mut r, &g, w2);
        let lhs = ma(&mt_bracket(&f1, &f2).unwrap());
        let rhs = mould::flexion::ari(&ma(&f1), &ma(&f2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn push_invariance_is_closed_under_ari(seed in any::<u64>(), g in 0u8..3) {
        let g = group(g);
        let mut r = rng(seed);
        let a = random_push_invariant(&mut r, &g, 2, 2).unwrap();
        let b = random_push_invariant(&mut r, &g, 2, 2).unwrap();
        prop_assert!(is_push_invariant(&ari_upto(&a, &b, 4).unwrap()).unwrap().is_ok());
    }

    #[test]
    fn lyndon_coordinates_reconstruct(seed in any::<u64>(), g in 0u8..2, w in 1usize..=5) {
        let g = group(g);
        let f = random_lie_of_weight(&mut rng(seed), &g, w);
        let coords = lyndon_coordinates(&f).unwrap();
        let basis = lie_basis(&g, w, None);
        let words = mould::lie::lyndon::lyndon_basis_words(&g, w, None);
        let mut back = mould::lie::NCPoly::zero(&g);
        for (word, b) in words.iter().zip(&basis) {
            if let Some(c) = coords.get(word) {
                back = back.add_scaled(b, c);
            }
        }
        prop_assert_eq!(back, f);
    }
}
