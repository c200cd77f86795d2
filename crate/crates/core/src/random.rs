//! Seeded random generators for moulds, Lie elements and structured subspaces.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Mono, SparsePoly, Q};
use crate::error::Result;
use crate::group::{Elem, Group};
use crate::lie::lyndon::lie_basis;
use crate::lie::ma::ma;
use crate::lie::NCPoly;
use crate::mould::{Mould, Side};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    rand::SeedableRng::seed_from_u64(seed)
}

fn small_coeff(r: &mut Rng64) -> Q {
    loop {
        let c: i64 = r.gen_range(-3..=3);
        if c != 0 {
            return Q::from_integer(c.into());
        }
    }
}

pub fn random_elem(r: &mut Rng64, g: &Group) -> Elem {
    Elem(r.gen_range(0..g.order() as u32))
}

/// A polynomial in n variables with a few terms of degree ≤ max_degree.
pub fn random_poly(r: &mut Rng64, n: usize, max_degree: u32, terms: usize) -> SparsePoly {
    let mut p = SparsePoly::zero(n);
    for _ in 0..terms {
        let d = r.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[r.gen_range(0..n)] += 1;
        }
        p.add_term(Mono(e), small_coeff(r));
    }
    p
}

/// A sparse mould: at each depth 1..=max_depth a few random σ-tuples carry a random polynomial.
pub fn random_mould(r: &mut Rng64, g: &Group, side: Side, max_depth: usize, max_degree: u32) -> Mould {
    let mut m = Mould::zero(g, side);
    for d in 1..=max_depth {
        let entries = r.gen_range(1..=2);
        for _ in 0..entries {
            let sigma: Vec<Elem> = (0..d).map(|_| random_elem(r, g)).collect();
            let terms = r.gen_range(1..=2);
            m.add_to(&sigma, &random_poly(r, d, max_degree, terms), &Q::from_integer(1.into()));
        }
    }
    m
}

/// A random combination of Lyndon-basis brackets of weight ≤ max_weight, excluding x.
pub fn random_lie(r: &mut Rng64, g: &Group, max_weight: usize) -> NCPoly {
    let mut h = NCPoly::zero(g);
    let w = r.gen_range(1..=max_weight.max(1));
    let basis: Vec<NCPoly> = lie_basis(g, w, None).into_iter().filter(|b| *b != NCPoly::x(g)).collect();
    for _ in 0..r.gen_range(1..=2) {
        if let Some(b) = basis.choose(r) {
            h = h.add_scaled(b, &small_coeff(r));
        }
    }
    h
}

/// A random nonzero combination of weight-w Lyndon-basis brackets, excluding x.
pub fn random_lie_of_weight(r: &mut Rng64, g: &Group, w: usize) -> NCPoly {
    let basis: Vec<NCPoly> = lie_basis(g, w, None).into_iter().filter(|b| *b != NCPoly::x(g)).collect();
    let mut h = NCPoly::zero(g);
    while h.is_zero() && !basis.is_empty() {
        for _ in 0..r.gen_range(1..=3) {
            let b = basis.choose(r).expect("nonempty");
            h = h.add_scaled(b, &small_coeff(r));
        }
    }
    h
}

/// An alternal mould: ma of a random Lie element.
pub fn random_alternal(r: &mut Rng64, g: &Group, max_weight: usize) -> Mould {
    ma(&random_lie(r, g, max_weight))
}

/// A push-invariant mould, by summing a random depth-m mould over its push orbit (push has order m+1).
pub fn random_push_invariant(r: &mut Rng64, g: &Group, max_depth: usize, max_degree: u32) -> Result<Mould> {
    let base = random_mould(r, g, Side::U, max_depth, max_degree);
    let mut out = Mould::zero(g, Side::U);
    for d in base.depths().collect::<Vec<_>>() {
        let mut cur = base.depth_part(d);
        for _ in 0..=d {
            out = out.add_scaled(&cur, &Q::from_integer(1.into()));
            cur = cur.push()?;
        }
    }
    Ok(out)
}

/// A pus-neutral v-side mould: N − (1/m) Σ_k pusᵏ(N) on each depth m.
pub fn random_pus_neutral(r: &mut Rng64, g: &Group, max_depth: usize, max_degree: u32) -> Result<Mould> {
    let base = random_mould(r, g, Side::V, max_depth, max_degree);
    let mut out = base.clone();
    for d in base.depths().collect::<Vec<_>>() {
        let k = Q::new((-1).into(), (d as i64).into());
        let mut cur = base.depth_part(d);
        for _ in 0..d {
            out = out.add_scaled(&cur, &k);
            cur = cur.pus()?;
        }
    }
    Ok(out)
}

/// A random rational combination of the given moulds.
pub fn random_combination(r: &mut Rng64, basis: &[Mould]) -> Option<Mould> {
    let first = basis.first()?;
    let mut m = Mould::zero(first.group(), first.side());
    for b in basis {
        m = m.add_scaled(b, &small_coeff(r));
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{is_alternal, is_pus_neutral, is_push_invariant};

    #[test]
    fn structured_generators() {
        let mut r = rng(11);
        for g in [Group::trivial(), Group::cyclic(2), Group::cyclic(3)] {
            for _ in 0..5 {
                assert!(is_alternal(&random_alternal(&mut r, &g, 4)).is_ok());
                assert!(is_push_invariant(&random_push_invariant(&mut r, &g, 3, 2).unwrap()).unwrap().is_ok());
                assert!(is_pus_neutral(&random_pus_neutral(&mut r, &g, 3, 2).unwrap()).unwrap().is_ok());
            }
        }
    }

    #[test]
    fn seeded_is_deterministic() {
        let g = Group::cyclic(3);
        let a = random_mould(&mut rng(5), &g, Side::U, 3, 3);
        let b = random_mould(&mut rng(5), &g, Side::U, 3, 3);
        assert_eq!(a, b);
    }
}
