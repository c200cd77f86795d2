//! Lyndon words and the induced basis of the free Lie algebra.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::ncpoly::{word_depth, Gen, NCPoly, NcWord};
use crate::algebra::Q;
use crate::error::{Error, Result};
use crate::group::Group;

/// All generators of the alphabet in increasing order: x, y_e, y_σ, ….
pub fn alphabet(g: &Group) -> Vec<Gen> {
    std::iter::once(Gen::X).chain(g.elements().map(Gen::y)).collect()
}

/// Lyndon words of length `n` over an ordered alphabet (Duval's algorithm).
pub fn lyndon_words(alpha: &[Gen], n: usize) -> Vec<NcWord> {
    let k = alpha.len();
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        if w.len() == n {
            out.push(w.iter().map(|&i| alpha[i]).collect());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

pub fn is_lyndon(w: &[Gen]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..] > *w)
}

/// Standard bracketing: w = uv with v the longest proper Lyndon suffix.
pub fn standard_bracket(g: &Group, w: &[Gen]) -> NCPoly {
    if w.len() == 1 {
        return NCPoly::gen(g, w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("Lyndon word of length ≥ 2");
    standard_bracket(g, &w[..split]).bracket(&standard_bracket(g, &w[split..]))
}

/// Standard bracketing as an expression string.
pub fn standard_bracket_string(g: &Group, w: &[Gen]) -> String {
    if w.len() == 1 {
        return super::ncpoly::gen_name(g, w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("Lyndon word of length ≥ 2");
    format!("[{},{}]", standard_bracket_string(g, &w[..split]), standard_bracket_string(g, &w[split..]))
}

/// Lyndon words of weight w and (optionally) fixed depth.
pub fn lyndon_basis_words(g: &Group, weight: usize, depth: Option<usize>) -> Vec<NcWord> {
    lyndon_words(&alphabet(g), weight).into_iter().filter(|w| depth.map_or(true, |d| word_depth(w) == d)).collect()
}

/// Basis of L_w (or of its depth-d part) given by standard bracketings.
pub fn lie_basis(g: &Group, weight: usize, depth: Option<usize>) -> Vec<NCPoly> {
    lyndon_basis_words(g, weight, depth).iter().map(|w| standard_bracket(g, w)).collect()
}

/// Coordinates of a Lie element in the Lyndon basis. Fails if h is not Lie.
pub fn lyndon_coordinates(h: &NCPoly) -> Result<BTreeMap<NcWord, Q>> {
    let g = h.group().clone();
    let mut out = BTreeMap::new();
    for wt in h.weights() {
        let mut rest = h.weight_part(wt);
        loop {
            let first = rest.terms().next().map(|(w, c)| (w.clone(), c.clone()));
            let Some((w, c)) = first else { break };
            if !is_lyndon(&w) {
                return Err(Error::Invalid(format!("not a Lie element: leading word {}", h.format_word(&w))));
            }
            rest = rest.add_scaled(&standard_bracket(&g, &w), &-c.clone());
            out.insert(w, c);
        }
    }
    out.retain(|_, c: &mut Q| !c.is_zero());
    Ok(out)
}
