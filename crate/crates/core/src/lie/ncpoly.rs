//! Noncommutative polynomials in x and y_σ (σ ∈ Γ) with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{fmt_q, Q};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// A generator: `Gen::X` or `Gen::y(σ)`. Ordered x < y_e < y_σ … by element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(pub u32);

impl Gen {
    pub const X: Gen = Gen(0);

    pub fn y(s: Elem) -> Gen {
        Gen(s.0 + 1)
    }

    pub fn is_x(self) -> bool {
        self.0 == 0
    }

    /// The index σ of y_σ.
    pub fn sigma(self) -> Option<Elem> {
        if self.0 == 0 {
            None
        } else {
            Some(Elem(self.0 - 1))
        }
    }
}

pub type NcWord = Vec<Gen>;

pub fn word_depth(w: &[Gen]) -> usize {
    w.iter().filter(|g| !g.is_x()).count()
}

#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    group: Group,
    terms: BTreeMap<NcWord, Q>,
}

impl NCPoly {
    pub fn zero(group: &Group) -> Self {
        NCPoly { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn one(group: &Group) -> Self {
        Self::word(group, Vec::new(), Q::one())
    }

    pub fn x(group: &Group) -> Self {
        Self::word(group, vec![Gen::X], Q::one())
    }

    pub fn y(group: &Group, s: Elem) -> Self {
        Self::word(group, vec![Gen::y(s)], Q::one())
    }

    /// Σ_σ y_σ.
    pub fn y_sum(group: &Group) -> Self {
        let mut r = Self::zero(group);
        for s in group.elements() {
            r.add_term(vec![Gen::y(s)], Q::one());
        }
        r
    }

    pub fn gen(group: &Group, g: Gen) -> Self {
        Self::word(group, vec![g], Q::one())
    }

    pub fn word(group: &Group, w: NcWord, c: Q) -> Self {
        let mut r = Self::zero(group);
        r.add_term(w, c);
        r
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[Gen]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: NcWord, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_group(&self, o: &NCPoly) -> Result<()> {
        if self.group != o.group {
            return Err(Error::GroupMismatch(self.group.moduli().to_vec(), o.group.moduli().to_vec()));
        }
        Ok(())
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        self.add_scaled(o, &Q::one())
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        self.add_scaled(o, &-Q::one())
    }

    pub fn add_scaled(&self, o: &NCPoly, k: &Q) -> NCPoly {
        assert!(self.group == o.group, "NCPoly group mismatch");
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c * k);
        }
        r
    }

    pub fn scale(&self, k: &Q) -> NCPoly {
        let mut r = NCPoly::zero(&self.group);
        if !k.is_zero() {
            r.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        }
        r
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-Q::one())
    }

    /// Concatenation product.
    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        assert!(self.group == o.group, "NCPoly group mismatch");
        let mut r = NCPoly::zero(&self.group);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                r.add_term(w, ca * cb);
            }
        }
        r
    }

    /// [a,b] = ab − ba.
    pub fn bracket(&self, o: &NCPoly) -> NCPoly {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn map_words(&self, f: impl Fn(&NcWord) -> Option<NcWord>) -> NCPoly {
        let mut r = NCPoly::zero(&self.group);
        for (w, c) in &self.terms {
            if let Some(v) = f(w) {
                r.add_term(v, c.clone());
            }
        }
        r
    }

    pub fn filter(&self, keep: impl Fn(&NcWord) -> bool) -> NCPoly {
        self.map_words(|w| if keep(w) { Some(w.clone()) } else { None })
    }

    pub fn weight_part(&self, w: usize) -> NCPoly {
        self.filter(|v| v.len() == w)
    }

    pub fn depth_part(&self, d: usize) -> NCPoly {
        self.filter(|v| word_depth(v) == d)
    }

    pub fn weights(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn homogeneous_weight(&self) -> Option<usize> {
        let ws = self.weights();
        if ws.len() == 1 {
            Some(ws[0])
        } else {
            None
        }
    }

    /// Lowest depth occurring, if nonzero.
    pub fn min_depth(&self) -> Option<usize> {
        self.terms.keys().map(|w| word_depth(w)).min()
    }

    /// Palindrome operator.
    pub fn anti(&self) -> NCPoly {
        self.map_words(|w| Some(w.iter().rev().copied().collect()))
    }

    /// Keeps the constant and the words ending in some y_σ.
    pub fn pi_y(&self) -> NCPoly {
        self.filter(|w| w.last().map_or(true, |g| !g.is_x()))
    }

    /// q: the k-th y-index becomes σ_k σ_{k−1}⁻¹.
    pub fn q_map(&self) -> NCPoly {
        let g = self.group.clone();
        self.map_words(|w| {
            let mut prev = Elem::E;
            Some(
                w.iter()
                    .map(|&l| match l.sigma() {
                        None => l,
                        Some(s) => {
                            let out = Gen::y(g.div(s, prev));
                            prev = s;
                            out
                        }
                    })
                    .collect(),
            )
        })
    }

    /// The action τ(x) = x, τ(y_σ) = y_{τσ}.
    pub fn gamma_act(&self, tau: Elem) -> NCPoly {
        let g = self.group.clone();
        self.map_words(|w| Some(w.iter().map(|&l| l.sigma().map_or(l, |s| Gen::y(g.mul(tau, s)))).collect()))
    }

    /// Algebra endomorphism determined by the images of the generators.
    pub fn substitute(&self, image: impl Fn(Gen) -> NCPoly) -> NCPoly {
        let mut cache: BTreeMap<Gen, NCPoly> = BTreeMap::new();
        let mut r = NCPoly::zero(&self.group);
        for (w, c) in &self.terms {
            let mut acc = NCPoly::word(&self.group, Vec::new(), c.clone());
            for &l in w {
                let img = cache.entry(l).or_insert_with(|| image(l));
                acc = acc.mul(img);
                if acc.is_zero() {
                    break;
                }
            }
            r = r.add(&acc);
        }
        r
    }

    /// F ↦ F(z; y) with z = −x − Σ_σ y_σ.
    pub fn substitute_z(&self) -> NCPoly {
        let g = self.group.clone();
        let z = NCPoly::x(&g).add(&NCPoly::y_sum(&g)).neg();
        self.substitute(|l| if l.is_x() { z.clone() } else { NCPoly::gen(&g, l) })
    }

    /// f ↦ f(x; −y).
    pub fn tilde(&self) -> NCPoly {
        self.sign_by(|w| word_depth(w) % 2 == 1)
    }

    fn sign_by(&self, negate: impl Fn(&NcWord) -> bool) -> NCPoly {
        let mut r = self.clone();
        for (w, c) in r.terms.iter_mut() {
            if negate(w) {
                *c = -c.clone();
            }
        }
        r
    }

    /// h_a, where h = h_x x + Σ h_{y_σ} y_σ.
    pub fn right_factor(&self, a: Gen) -> NCPoly {
        self.map_words(|w| if w.last() == Some(&a) { Some(w[..w.len() - 1].to_vec()) } else { None })
    }

    /// h^a, where h = x h^x + Σ y_σ h^{y_σ}.
    pub fn left_factor(&self, a: Gen) -> NCPoly {
        self.map_words(|w| if w.first() == Some(&a) { Some(w[1..].to_vec()) } else { None })
    }

    /// The derivation ∂_x with x ↦ 1, y_σ ↦ 0.
    pub fn del_x(&self) -> NCPoly {
        let mut r = NCPoly::zero(&self.group);
        for (w, c) in &self.terms {
            for (i, l) in w.iter().enumerate() {
                if l.is_x() {
                    let mut v = w[..i].to_vec();
                    v.extend_from_slice(&w[i + 1..]);
                    r.add_term(v, c.clone());
                }
            }
        }
        r
    }

    /// sec(h) = Σ_{i≥0} (−1)^i/i! ∂_x^i(h) x^i.
    pub fn sec(&self) -> NCPoly {
        let mut r = NCPoly::zero(&self.group);
        let mut d = self.clone();
        let mut i: u32 = 0;
        let mut fact = Q::one();
        while !d.is_zero() {
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            let xi = NCPoly::word(&self.group, vec![Gen::X; i as usize], Q::one());
            r = r.add(&d.mul(&xi).scale(&(sign / &fact)));
            d = d.del_x();
            i += 1;
            fact *= Q::from_integer(i.into());
        }
        r
    }

    /// Dynkin–Specht–Wever: a homogeneous element of weight n is Lie iff its
    /// left-normed bracketing equals n times itself. Checked per weight.
    pub fn is_lie(&self) -> bool {
        if self.terms.contains_key(&Vec::new()) {
            return false;
        }
        let mut memo: BTreeMap<NcWord, NCPoly> = BTreeMap::new();
        for w in self.weights() {
            let h = self.weight_part(w);
            let mut r = NCPoly::zero(&self.group);
            for (word, c) in &h.terms {
                r = r.add_scaled(&left_normed(&self.group, word, &mut memo), c);
            }
            if r != h.scale(&Q::from_integer((w as i64).into())) {
                return false;
            }
        }
        true
    }

    /// First word of the form y…y, if any.
    pub fn first_yy_word(&self) -> Option<&NcWord> {
        self.terms.keys().find(|w| w.len() >= 2 && !w[0].is_x() && !w[w.len() - 1].is_x())
    }

    pub fn format_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| gen_name(&self.group, l)).collect::<Vec<_>>().join(" ")
    }
}

pub fn gen_name(g: &Group, l: Gen) -> String {
    match l.sigma() {
        None => "x".into(),
        Some(s) => {
            let r = g.residues(s);
            match r.len() {
                0 => "y".into(),
                1 => format!("y{}", r[0]),
                _ => format!("y({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            }
        }
    }
}

fn left_normed(g: &Group, w: &[Gen], memo: &mut BTreeMap<NcWord, NCPoly>) -> NCPoly {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let r = if w.len() <= 1 {
        NCPoly::word(g, w.to_vec(), Q::one())
    } else {
        let head = left_normed(g, &w[..w.len() - 1], memo);
        head.bracket(&NCPoly::gen(g, w[w.len() - 1]))
    };
    memo.insert(w.to_vec(), r.clone());
    r
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{}*[{}]", fmt_q(c), self.format_word(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Elements of Cyc(𝔸): linear combinations of words up to rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicNCPoly {
    pub terms: BTreeMap<NcWord, Q>,
}

impl CyclicNCPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn depth_part(&self, d: usize) -> CyclicNCPoly {
        CyclicNCPoly { terms: self.terms.iter().filter(|(w, _)| word_depth(w) == d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

/// Lexicographically least rotation.
pub fn canonical_rotation(w: &[Gen]) -> NcWord {
    (0..w.len().max(1))
        .map(|i| {
            let mut v = w[i.min(w.len())..].to_vec();
            v.extend_from_slice(&w[..i.min(w.len())]);
            v
        })
        .min()
        .unwrap_or_default()
}

/// The trace map to cyclic words.
pub fn trace(h: &NCPoly) -> CyclicNCPoly {
    let mut terms: BTreeMap<NcWord, Q> = BTreeMap::new();
    for (w, c) in h.terms() {
        let e = terms.entry(canonical_rotation(w)).or_insert_with(Q::zero);
        *e += c;
    }
    terms.retain(|_, c| !c.is_zero());
    CyclicNCPoly { terms }
}
