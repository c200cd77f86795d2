//! Round trips through JSON and the Lie-expression syntax, exact kernels, and
//! reproducibility under a fixed seed.

use proptest::prelude::*;

use mould::algebra::{kernel_basis, RatMatrix, RowReducer, Q};
use mould::dihedral::dihedral_space_basis;
use mould::json::{dihedral_from_json, dihedral_to_json, mould_from_json, mould_to_json};
use mould::lie::parse::{parse_lie, print_lie};
use mould::random::{random_lie_of_weight, random_mould, rng};
use mould::verify::{run_suite, Params};
use mould::{Group, Side};

fn group(i: u8) -> Group {
    match i % 3 {
        0 => Group::trivial(),
        1 => Group::cyclic(4),
        _ => Group::new(&[2, 3]).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mould_json_round_trip(seed in any::<u64>(), g in any::<u8>(), u in any::<bool>()) {
        let m = random_mould(&mut rng(seed), &group(g), if u { Side::U } else { Side::V }, 4, 4);
        let s = mould_to_json(&m);
        let back = mould_from_json(&s).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(mould_to_json(&back), s);
    }

    #[test]
    fn lie_expression_round_trip(seed in any::<u64>(), g in any::<u8>(), w in 1usize..=4) {
        let g = group(g);
        let f = random_lie_of_weight(&mut rng(seed), &g, w);
        let s = print_lie(&f).unwrap();
        prop_assert_eq!(parse_lie(&g, &s).unwrap(), f);
    }

    #[test]
    fn kernels_annihilate(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 0..6)) {
        let m = if rows.is_empty() { RatMatrix::zeros(0, 5) } else { RatMatrix::from_i64(&rows) };
        let k = kernel_basis(&m);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Q::from_integer(0.into())));
        }
        prop_assert_eq!(k.len() + m.rank(), 5);
        let mut rr = RowReducer::new(5);
        for r in &m.data {
            rr.push(r);
        }
        prop_assert_eq!(rr.kernel(), k);
    }
}

#[test]
fn dihedral_json_round_trip() {
    for g in [Group::cyclic(2), Group::cyclic(3)] {
        for z in dihedral_space_basis(&g, 5, 2, false).unwrap() {
            let s = dihedral_to_json(&z);
            assert_eq!(dihedral_from_json(&s).unwrap(), z);
        }
    }
}

#[test]
fn suites_are_reproducible() {
    let p = Params { trials: 4, seed: 99, ..Params::new(&Group::cyclic(2)) };
    for name in ["jacobi", "kv-equiv", "embedding"] {
        let a = run_suite(name, &p).unwrap().to_json().to_string();
        let b = run_suite(name, &p).unwrap().to_json().to_string();
        assert_eq!(a, b);
    }
}
