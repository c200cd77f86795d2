//! The maps vimo and ma from Lie words to moulds, and tangential derivations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ncpoly::{word_depth, Gen, NCPoly};
use crate::algebra::{LinearForm, SparsePoly, Q};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::mould::{Mould, Side};

/// Splits a word into (e₀, …, e_r) and (σ₁, …, σ_r).
fn decompose(w: &[Gen]) -> (Vec<u32>, Vec<Elem>) {
    let mut exps = vec![0u32];
    let mut sig = Vec::new();
    for &l in w {
        match l.sigma() {
            None => *exps.last_mut().expect("nonempty") += 1,
            Some(s) => {
                sig.push(s);
                exps.push(0);
            }
        }
    }
    (exps, sig)
}

/// vimo^r_h as polynomials in z₀, …, z_r, keyed by depth and (σ₁, …, σ_r).
pub fn vimo(h: &NCPoly) -> BTreeMap<usize, BTreeMap<Vec<Elem>, SparsePoly>> {
    let g = h.group();
    let mut out: BTreeMap<usize, BTreeMap<Vec<Elem>, SparsePoly>> = BTreeMap::new();
    for (w, c) in h.terms() {
        let (exps, sig) = decompose(w);
        let r = sig.len();
        let key: Vec<Elem> = sig.iter().map(|&s| g.inv(s)).collect();
        let e = out.entry(r).or_default().entry(key).or_insert_with(|| SparsePoly::zero(r + 1));
        *e = &*e + &SparsePoly::monomial(exps, c.clone());
    }
    for comp in out.values_mut() {
        comp.retain(|_, p| !p.is_zero());
    }
    out.retain(|_, c| !c.is_empty());
    out
}

/// ma_h, a u-side mould.
pub fn ma(h: &NCPoly) -> Mould {
    let g = h.group().clone();
    let mut m = Mould::zero(&g, Side::U);
    for (w, c) in h.terms() {
        let r = word_depth(w);
        if r == 0 {
            if w.is_empty() {
                m.set_depth0(m.depth0() + c);
            }
            continue;
        }
        if w[0].is_x() {
            continue;
        }
        let (exps, sig) = decompose(w);
        let key: Vec<Elem> = sig.iter().map(|&s| g.inv(s)).collect();
        let mut p = SparsePoly::constant(c.clone(), r);
        for (k, &e) in exps.iter().enumerate().skip(1) {
            if e > 0 {
                p = &p * &SparsePoly::from_linear_form(&LinearForm::range_sum(0, k, r)).pow(e);
            }
        }
        m.add_to(&key, &p, &Q::one());
    }
    m
}

/// The Lie polynomial of weight w (without an x term) whose ma is `m`, if any.
pub fn ma_preimage(m: &Mould, w: usize) -> Result<Option<NCPoly>> {
    m.expect_side(Side::U)?;
    let g = m.group();
    let basis: Vec<NCPoly> = super::lyndon::lie_basis(g, w, None).into_iter().filter(|b| *b != NCPoly::x(g)).collect();
    type Column = Vec<((Vec<Elem>, Vec<u32>), Q)>;
    let entries = |mm: &Mould, k: Q| -> Column {
        mm.entries().flat_map(|(s, p)| p.terms().map(|(e, c)| ((s.clone(), e.0.clone()), c * &k)).collect::<Vec<_>>()).collect()
    };
    let mut cols: Vec<_> = basis.iter().map(|b| entries(&ma(b), Q::one())).collect();
    cols.push(entries(m, -Q::one()));
    if !m.depth0().is_zero() {
        return Ok(None);
    }
    let n = basis.len();
    for v in crate::algebra::kernel_of_columns(cols) {
        if v[n].is_zero() {
            continue;
        }
        let inv = v[n].recip();
        let mut h = NCPoly::zero(g);
        for (b, c) in basis.iter().zip(&v) {
            h = h.add_scaled(b, &(c * &inv));
        }
        return Ok(Some(h));
    }
    Ok(None)
}

/// The tangential derivation x ↦ [x, G], y_σ ↦ [y_σ, F_σ].
#[derive(Clone, Debug, PartialEq)]
pub struct Tder {
    group: Group,
    pub f: BTreeMap<Elem, NCPoly>,
    pub g: NCPoly,
}

impl Tder {
    pub fn new(group: &Group, f: BTreeMap<Elem, NCPoly>, g: NCPoly) -> Self {
        Tder { group: group.clone(), f, g }
    }

    /// D_{{σ(f)}, 0}.
    pub fn from_mt(f: &NCPoly) -> Self {
        let group = f.group().clone();
        let fs = group.elements().map(|s| (s, f.gamma_act(s))).collect();
        Tder { g: NCPoly::zero(&group), group, f: fs }
    }

    pub fn component(&self, s: Elem) -> NCPoly {
        self.f.get(&s).cloned().unwrap_or_else(|| NCPoly::zero(&self.group))
    }

    fn image(&self, l: Gen) -> NCPoly {
        let lg = NCPoly::gen(&self.group, l);
        match l.sigma() {
            None => lg.bracket(&self.g),
            Some(s) => lg.bracket(&self.component(s)),
        }
    }

    pub fn apply(&self, h: &NCPoly) -> NCPoly {
        let images: BTreeMap<Gen, NCPoly> = super::lyndon::alphabet(&self.group).into_iter().map(|l| (l, self.image(l))).collect();
        let mut r = NCPoly::zero(&self.group);
        for (w, c) in h.terms() {
            for (i, l) in w.iter().enumerate() {
                let pre = NCPoly::word(&self.group, w[..i].to_vec(), c.clone());
                let post = NCPoly::word(&self.group, w[i + 1..].to_vec(), Q::one());
                r = r.add(&pre.mul(&images[l]).mul(&post));
            }
        }
        r
    }

    /// The commutator D₁∘D₂ − D₂∘D₁, again tangential.
    pub fn bracket(&self, o: &Tder) -> Tder {
        let f = self
            .group
            .elements()
            .map(|s| {
                let (a, b) = (self.component(s), o.component(s));
                (s, self.apply(&b).sub(&o.apply(&a)).add(&a.bracket(&b)))
            })
            .filter(|(_, p)| !p.is_zero())
            .collect();
        let g = self.apply(&o.g).sub(&o.apply(&self.g)).add(&self.g.bracket(&o.g));
        Tder { group: self.group.clone(), f, g }
    }
}

/// {f₁, f₂} = D_{σ(f₁)}(f₂) − D_{σ(f₂)}(f₁) + [f₁, f₂].
pub fn mt_bracket(f1: &NCPoly, f2: &NCPoly) -> Result<NCPoly> {
    for f in [f1, f2] {
        if !f.is_lie() || f.terms().any(|(w, _)| w.len() == 1 && w[0].is_x()) {
            return Err(Error::Invalid(format!("not an element of mt: {f:?}")));
        }
    }
    Ok(mt_bracket_unchecked(f1, f2))
}

pub fn mt_bracket_unchecked(f1: &NCPoly, f2: &NCPoly) -> NCPoly {
    Tder::from_mt(f1).apply(f2).sub(&Tder::from_mt(f2).apply(f1)).add(&f1.bracket(f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn ma_examples() {
        let g = Group::trivial();
        let (x, y) = (NCPoly::x(&g), NCPoly::y(&g, Elem::E));
        let m = ma(&y);
        assert_eq!(m.get(&[Elem::E]), Some(&SparsePoly::one(1)));
        let m = ma(&x.bracket(&y));
        assert_eq!(m.get(&[Elem::E]), Some(&SparsePoly::var(0, 1).scale(&q(-1))));
        assert!(ma(&x).is_zero());
    }

    #[test]
    fn preimage_inverts_ma() {
        let g = Group::cyclic(2);
        for b in super::super::lyndon::lie_basis(&g, 4, None) {
            let h = b.scale(&q(3)).add(&super::super::lyndon::lie_basis(&g, 4, Some(1))[0]);
            assert_eq!(ma_preimage(&ma(&h), 4).unwrap(), Some(h));
        }
        let mut bad = Mould::zero(&g, Side::U);
        bad.set(vec![Elem(0), Elem(1)], SparsePoly::var(0, 2).pow(2));
        assert_eq!(ma_preimage(&bad, 4).unwrap(), None);
    }

    #[test]
    fn ma_inverts_group_labels() {
        let g = Group::cyclic(3);
        let m = ma(&NCPoly::y(&g, Elem(1)));
        assert_eq!(m.get(&[Elem(2)]), Some(&SparsePoly::one(1)));
    }

    #[test]
    fn vimo_translation_invariance() {
        let g = Group::cyclic(2);
        let (x, y0, y1) = (NCPoly::x(&g), NCPoly::y(&g, Elem(0)), NCPoly::y(&g, Elem(1)));
        let h = x.bracket(&y0.bracket(&x.bracket(&y1)));
        for (r, comp) in vimo(&h) {
            for p in comp.values() {
                let shift: Vec<LinearForm> = (0..=r)
                    .map(|i| {
                        let mut f = LinearForm::unit(i, r + 2);
                        f.coeffs[r + 1] = 1;
                        f
                    })
                    .collect();
                let t = p.substitute_linear(&shift, r + 2).unwrap();
                assert_eq!(t, p.embed(0, r + 2));
            }
        }
    }

    #[test]
    fn tder_and_mt_examples() {
        let g = Group::trivial();
        let (x, y) = (NCPoly::x(&g), NCPoly::y(&g, Elem::E));
        let d = Tder::new(&g, BTreeMap::new(), y.clone());
        assert_eq!(d.apply(&x), x.bracket(&y));
        let f = x.bracket(&y);
        assert!(mt_bracket(&f, &f).unwrap().is_zero());
        assert!(mt_bracket(&x, &f).is_err());
        assert!(mt_bracket(&x.mul(&y), &f).is_err());
    }

    #[test]
    fn tder_commutator_matches_composition() {
        let g = Group::cyclic(2);
        let (x, y0, y1) = (NCPoly::x(&g), NCPoly::y(&g, Elem(0)), NCPoly::y(&g, Elem(1)));
        let d1 = Tder::from_mt(&x.bracket(&y0));
        let d2 = Tder::new(&g, [(Elem(1), y0.clone())].into_iter().collect(), y1.clone());
        let d3 = d1.bracket(&d2);
        let h = x.bracket(&y1).add(&y0);
        assert_eq!(d3.apply(&h), d1.apply(&d2.apply(&h)).sub(&d2.apply(&d1.apply(&h))));
    }
}
