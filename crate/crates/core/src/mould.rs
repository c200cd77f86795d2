//! Moulds over a finite abelian group and the non-flexion operators.
//!
//! A mould stores, for each depth m ≥ 1, a sparse map from σ-tuples in Γ^m to
//! polynomials in m variables, plus the depth-0 scalar. Absent entries are
//! zero. The u-side variables are named u₁,…,u_m throughout; the alternative
//! names x₁,…,x_m on the same side denote the same variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{q, LinearForm, SparsePoly, Q};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::U => "u",
            Side::V => "v",
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

pub type Component = BTreeMap<Vec<Elem>, SparsePoly>;

#[derive(Clone, PartialEq)]
pub struct Mould {
    group: Group,
    side: Side,
    depth0: Q,
    comps: BTreeMap<usize, Component>,
}

/// Every tuple in Γ^m, lexicographically.
pub fn tuples(group: &Group, m: usize) -> Vec<Vec<Elem>> {
    let n = group.order() as u32;
    let total = (n as usize).pow(m as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![Elem::E; m];
    for _ in 0..total {
        out.push(cur.clone());
        for k in (0..m).rev() {
            cur[k].0 += 1;
            if cur[k].0 < n {
                break;
            }
            cur[k].0 = 0;
        }
    }
    out
}

impl Mould {
    pub fn zero(group: &Group, side: Side) -> Self {
        Mould { group: group.clone(), side, depth0: Q::zero(), comps: BTreeMap::new() }
    }

    /// The mould whose only nonzero entry is `poly` at the tuple `sigma`.
    pub fn single(group: &Group, side: Side, sigma: Vec<Elem>, poly: SparsePoly) -> Self {
        let mut m = Self::zero(group, side);
        m.set(sigma, poly);
        m
    }

    /// Constant-in-σ mould with the given depth-m polynomial at every tuple.
    pub fn uniform(group: &Group, side: Side, poly: SparsePoly) -> Self {
        let mut m = Self::zero(group, side);
        for s in tuples(group, poly.arity()) {
            m.set(s, poly.clone());
        }
        m
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn depth0(&self) -> &Q {
        &self.depth0
    }

    pub fn set_depth0(&mut self, c: Q) {
        self.depth0 = c;
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn get(&self, sigma: &[Elem]) -> Option<&SparsePoly> {
        self.comps.get(&sigma.len()).and_then(|c| c.get(sigma))
    }

    pub fn get_or_zero(&self, sigma: &[Elem]) -> SparsePoly {
        self.get(sigma).cloned().unwrap_or_else(|| SparsePoly::zero(sigma.len()))
    }

    pub fn set(&mut self, sigma: Vec<Elem>, poly: SparsePoly) {
        let m = sigma.len();
        assert!(m >= 1, "depth-0 entry is set through set_depth0");
        assert_eq!(poly.arity(), m, "component arity must equal its depth");
        let comp = self.comps.entry(m).or_default();
        if poly.is_zero() {
            comp.remove(&sigma);
            if comp.is_empty() {
                self.comps.remove(&m);
            }
        } else {
            comp.insert(sigma, poly);
        }
    }

    pub fn add_to(&mut self, sigma: &[Elem], poly: &SparsePoly, k: &Q) {
        if poly.is_zero() || k.is_zero() {
            return;
        }
        let mut cur = self.get_or_zero(sigma);
        cur.add_assign_scaled(poly, k);
        self.set(sigma.to_vec(), cur);
    }

    pub fn depths(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps.keys().copied()
    }

    pub fn max_depth(&self) -> usize {
        self.comps.keys().next_back().copied().unwrap_or(0)
    }

    pub fn component(&self, m: usize) -> Option<&Component> {
        self.comps.get(&m)
    }

    /// All nonzero entries of depth ≥ 1, by depth then σ-tuple.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<Elem>, &SparsePoly)> {
        self.comps.values().flat_map(|c| c.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.depth0.is_zero() && self.comps.is_empty()
    }

    pub fn check_compat(&self, o: &Mould) -> Result<()> {
        if self.group != o.group {
            return Err(Error::GroupMismatch(self.group.moduli().to_vec(), o.group.moduli().to_vec()));
        }
        self.expect_side(o.side)
    }

    pub fn expect_side(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::SideMismatch { expected: side.name(), found: self.side.name() });
        }
        Ok(())
    }

    pub fn add(&self, o: &Mould) -> Result<Mould> {
        self.check_compat(o)?;
        Ok(self.add_scaled(o, &Q::one()))
    }

    pub fn sub(&self, o: &Mould) -> Result<Mould> {
        self.check_compat(o)?;
        Ok(self.add_scaled(o, &-Q::one()))
    }

    /// self + k·o, assuming compatible moulds.
    pub fn add_scaled(&self, o: &Mould, k: &Q) -> Mould {
        let mut r = self.clone();
        r.depth0 += &o.depth0 * k;
        for (s, p) in o.entries() {
            r.add_to(s, p, k);
        }
        r
    }

    pub fn scale(&self, k: &Q) -> Mould {
        let mut r = Mould::zero(&self.group, self.side);
        r.depth0 = &self.depth0 * k;
        if !k.is_zero() {
            for (s, p) in self.entries() {
                r.set(s.clone(), p.scale(k));
            }
        }
        r
    }

    pub fn neg_scalar(&self) -> Mould {
        self.scale(&-Q::one())
    }

    /// Keeps only the depth-m component.
    pub fn depth_part(&self, m: usize) -> Mould {
        let mut r = Mould::zero(&self.group, self.side);
        if m == 0 {
            r.depth0 = self.depth0.clone();
        } else if let Some(c) = self.comps.get(&m) {
            r.comps.insert(m, c.clone());
        }
        r
    }

    /// Keeps the terms of weight w, where weight = depth + polynomial degree.
    pub fn weight_part(&self, w: usize) -> Mould {
        let mut r = Mould::zero(&self.group, self.side);
        if w == 0 {
            r.depth0 = self.depth0.clone();
        }
        for (s, p) in self.entries() {
            let m = s.len();
            if w < m {
                continue;
            }
            let mut t = SparsePoly::zero(m);
            for (e, c) in p.terms() {
                if e.degree() as usize + m == w {
                    t.add_term(e.clone(), c.clone());
                }
            }
            r.set(s.clone(), t);
        }
        r
    }

    pub fn is_weight_homogeneous(&self, w: usize) -> bool {
        (w == 0 || self.depth0.is_zero()) && self.entries().all(|(s, p)| w >= s.len() && p.is_homogeneous_of((w - s.len()) as u32))
    }

    /// Weight-homogeneous pieces that occur, ascending.
    pub fn weights(&self) -> Vec<usize> {
        let mut ws: Vec<usize> = self.entries().flat_map(|(s, p)| p.terms().map(move |(e, _)| e.degree() as usize + s.len()).collect::<Vec<_>>()).collect();
        if !self.depth0.is_zero() {
            ws.push(0);
        }
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    /// Builds the output mould σ ↦ self(g(σ)) ∘ forms, over all tuples of each present depth.
    fn pullback<G, F>(&self, side: Side, mut group_map: G, forms: F) -> Mould
    where
        G: FnMut(&[Elem]) -> Vec<Elem>,
        F: Fn(usize) -> (Vec<LinearForm>, Q),
    {
        let mut r = Mould::zero(&self.group, side);
        r.depth0 = self.depth0.clone();
        for &m in self.comps.keys() {
            let (fs, sign) = forms(m);
            let comp = &self.comps[&m];
            for s in tuples(&self.group, m) {
                let t = group_map(&s);
                if let Some(p) = comp.get(&t) {
                    let v = p.substitute_linear(&fs, m).expect("forms built with matching arity");
                    r.set(s, v.scale(&sign));
                }
            }
        }
        r
    }

    /// mantar(M)^m(u;σ) = (−1)^{m−1} M^m(u_m,…,u₁; σ_m,…,σ₁). Either side.
    pub fn mantar(&self) -> Mould {
        self.pullback(
            self.side,
            |s| s.iter().rev().copied().collect(),
            |m| {
                let fs = (0..m).rev().map(|i| LinearForm::unit(i, m)).collect();
                (fs, q(if m % 2 == 1 { 1 } else { -1 }))
            },
        )
    }

    /// neg(M)^m(u;σ) = M^m(−u; σ⁻¹). Either side.
    pub fn neg(&self) -> Mould {
        let g = self.group.clone();
        self.pullback(self.side, |s| s.iter().map(|&x| g.inv(x)).collect(), |m| ((0..m).map(|i| LinearForm::unit(i, m).scale(-1)).collect(), Q::one()))
    }

    /// push(M)^m(u;σ) = M^m(−u₁−…−u_m, u₁,…,u_{m−1}; σ_m⁻¹, σ₁σ_m⁻¹,…,σ_{m−1}σ_m⁻¹).
    pub fn push(&self) -> Result<Mould> {
        self.expect_side(Side::U)?;
        let g = self.group.clone();
        Ok(self.pullback(
            Side::U,
            |s| {
                let m = s.len();
                let last = g.inv(s[m - 1]);
                std::iter::once(last).chain(s[..m - 1].iter().map(|&x| g.mul(x, last))).collect()
            },
            |m| {
                let mut fs = vec![LinearForm::range_sum(0, m, m).scale(-1)];
                fs.extend((0..m - 1).map(|i| LinearForm::unit(i, m)));
                (fs, Q::one())
            },
        ))
    }

    /// pus(N)^m(σ;v) = N^m(σ_m,σ₁,…,σ_{m−1}; v_m,v₁,…,v_{m−1}).
    pub fn pus(&self) -> Result<Mould> {
        self.expect_side(Side::V)?;
        Ok(self.pullback(
            Side::V,
            |s| {
                let m = s.len();
                std::iter::once(s[m - 1]).chain(s[..m - 1].iter().copied()).collect()
            },
            |m| {
                let mut fs = vec![LinearForm::unit(m - 1, m)];
                fs.extend((0..m - 1).map(|i| LinearForm::unit(i, m)));
                (fs, Q::one())
            },
        ))
    }

    /// u-side to v-side:
    /// swap(M)^m(σ;v) = M^m(v_m, v_{m−1}−v_m, …, v₁−v₂; σ₁⋯σ_m, …, σ₁σ₂, σ₁).
    /// On a v-side mould the inverse substitution is applied, so swap∘swap = id.
    pub fn swap(&self) -> Mould {
        let g = self.group.clone();
        match self.side {
            Side::U => self.pullback(
                Side::V,
                |s| {
                    let m = s.len();
                    (0..m).map(|k| g.product(&s[..m - k])).collect()
                },
                |m| {
                    let fs = (0..m)
                        .map(|k| {
                            // slot k (0-based) gets v_{m−k} − v_{m−k+1}; slot 0 gets v_m
                            let mut f = LinearForm::unit(m - 1 - k, m);
                            if k > 0 {
                                f.coeffs[m - k] -= 1;
                            }
                            f
                        })
                        .collect();
                    (fs, Q::one())
                },
            ),
            Side::V => self.pullback(
                Side::U,
                |e| {
                    // N(ε_m, ε_{m−1}ε_m⁻¹, …, ε₁ε₂⁻¹; u₁+…+u_m, …, u₁+u₂, u₁)
                    let m = e.len();
                    (0..m).map(|k| if k == 0 { e[m - 1] } else { g.div(e[m - 1 - k], e[m - k]) }).collect()
                },
                |m| ((0..m).map(|k| LinearForm::range_sum(0, m - k, m)).collect(), Q::one()),
            ),
        }
    }

    /// teru(M)^m = M^m + (1/u_m){M^{m−1}(u₁,…,u_{m−2},u_{m−1}+u_m) − M^{m−1}(u₁,…,u_{m−1})},
    /// with σ₁…σ_{m−1} in the correction. The correction vanishes at depth 1.
    pub fn teru(&self) -> Result<Mould> {
        self.expect_side(Side::U)?;
        let mut r = self.clone();
        let g = &self.group;
        for (&d, comp) in &self.comps {
            let m = d + 1;
            let merged: Vec<LinearForm> = (0..d).map(|i| if i + 1 == d { LinearForm::range_sum(d - 1, m, m) } else { LinearForm::unit(i, m) }).collect();
            let plain: Vec<LinearForm> = (0..d).map(|i| LinearForm::unit(i, m)).collect();
            let um = LinearForm::unit(m - 1, m);
            for (s, p) in comp {
                let diff = &p.substitute_linear(&merged, m)? - &p.substitute_linear(&plain, m)?;
                let corr = diff.exact_divide(&um)?;
                for last in g.elements() {
                    let mut t = s.clone();
                    t.push(last);
                    r.add_to(&t, &corr, &Q::one());
                }
            }
        }
        Ok(r)
    }

    /// The product (A×B)^m = Σ_i A^i(u₁..u_i) B^{m−i}(u_{i+1}..u_m).
    pub fn mu(&self, o: &Mould) -> Result<Mould> {
        self.check_compat(o)?;
        let mut r = Mould::zero(&self.group, self.side);
        r.depth0 = &self.depth0 * &o.depth0;
        if !self.depth0.is_zero() {
            r = r.add_scaled(&o.without_depth0(), &self.depth0);
        }
        if !o.depth0.is_zero() {
            r = r.add_scaled(&self.without_depth0(), &o.depth0);
        }
        for (sa, pa) in self.entries() {
            for (sb, pb) in o.entries() {
                let (i, m) = (sa.len(), sa.len() + sb.len());
                let prod = &pa.embed(0, m) * &pb.embed(i, m);
                let mut s = sa.clone();
                s.extend_from_slice(sb);
                r.add_to(&s, &prod, &Q::one());
            }
        }
        Ok(r)
    }

    /// [A,B] = A×B − B×A.
    pub fn lu(&self, o: &Mould) -> Result<Mould> {
        let ab = self.mu(o)?;
        let ba = o.mu(self)?;
        ab.sub(&ba)
    }

    fn without_depth0(&self) -> Mould {
        let mut r = self.clone();
        r.depth0 = Q::zero();
        r
    }

    /// Restriction to Γᴺ-tuples, as a mould over Γᴺ.
    pub fn i_n(&self, n: i64) -> Mould {
        let sub = self.group.power_subgroup(n);
        let mut r = Mould::zero(&sub.group, self.side);
        r.depth0 = self.depth0.clone();
        for (s, p) in self.entries() {
            let loc: Option<Vec<Elem>> = s.iter().map(|&x| sub.locate(x)).collect();
            if let Some(t) = loc {
                r.set(t, p.clone());
            }
        }
        r
    }

    /// m_N(M)^m(x;σ) = Σ_{τᵢᴺ=σᵢ} M^m(Nx₁,…,Nx_m; τ), as a mould over Γᴺ.
    pub fn m_n(&self, n: i64) -> Mould {
        let sub = self.group.power_subgroup(n);
        let g = &self.group;
        let mut r = Mould::zero(&sub.group, self.side);
        r.depth0 = self.depth0.clone();
        for (s, p) in self.entries() {
            let m = s.len();
            let img: Vec<Elem> = s.iter().map(|&x| g.pow(x, n)).collect();
            let target: Vec<Elem> = img.iter().map(|&x| sub.locate(x).expect("N-th powers lie in the subgroup")).collect();
            let fs: Vec<LinearForm> = (0..m).map(|i| LinearForm::unit(i, m).scale(n)).collect();
            let v = p.substitute_linear(&fs, m).expect("matching arity");
            r.add_to(&target, &v, &Q::one());
        }
        r
    }

    /// M^m evaluated on a word: the polynomial M^m(forms; sigmas) in `arity` variables.
    pub fn eval_word(&self, forms: &[LinearForm], sigmas: &[Elem], arity: usize) -> SparsePoly {
        if sigmas.is_empty() {
            return SparsePoly::constant(self.depth0.clone(), arity);
        }
        match self.get(sigmas) {
            None => SparsePoly::zero(arity),
            Some(p) => p.substitute_linear(forms, arity).expect("word forms match the component arity"),
        }
    }

    /// Maps every σ-entry through a group homomorphism-like relabelling.
    pub fn relabel(&self, group: &Group, f: impl Fn(Elem) -> Elem) -> Mould {
        let mut r = Mould::zero(group, self.side);
        r.depth0 = self.depth0.clone();
        for (s, p) in self.entries() {
            let t: Vec<Elem> = s.iter().map(|&x| f(x)).collect();
            r.add_to(&t, p, &Q::one());
        }
        r
    }
}

impl fmt::Debug for Mould {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mould[{}-side over {:?}] depth0 = {}", self.side.name(), self.group, self.depth0)?;
        for (s, p) in self.entries() {
            let idx: Vec<String> = s.iter().map(|&x| self.group.format_elem(x)).collect();
            writeln!(f, "  ({}) : {}", idx.join(","), p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;

    fn u(i: usize, n: usize) -> SparsePoly {
        SparsePoly::var(i, n)
    }

    fn triv(poly: SparsePoly) -> Mould {
        let t = Group::trivial();
        Mould::single(&t, Side::U, vec![Elem::E; poly.arity()], poly)
    }

    #[test]
    fn mu_examples() {
        let a = triv(u(0, 1));
        let aa = a.mu(&a).unwrap();
        assert_eq!(aa, triv(&u(0, 2) * &u(1, 2)));
        let z = Mould::zero(&Group::trivial(), Side::U);
        assert!(a.mu(&z).unwrap().is_zero());
        let b = triv(u(0, 1).pow(2));
        assert_eq!(a.mu(&b).unwrap(), triv(&u(0, 2) * &u(1, 2).pow(2)));
    }

    #[test]
    fn lu_examples() {
        let a = triv(u(0, 1));
        let b = triv(u(0, 1).pow(2));
        assert!(a.lu(&a).unwrap().is_zero());
        let expect = &(&u(0, 2) * &u(1, 2).pow(2)) - &(&u(0, 2).pow(2) * &u(1, 2));
        assert_eq!(a.lu(&b).unwrap(), triv(expect));
        assert!(a.lu(&Mould::zero(&Group::trivial(), Side::U)).unwrap().is_zero());
    }

    #[test]
    fn swap_examples() {
        let m = triv(u(0, 2));
        let s = m.swap();
        assert_eq!(s.side(), Side::V);
        assert_eq!(s.get(&[Elem::E, Elem::E]).unwrap(), &u(1, 2));
        assert_eq!(s.swap(), m);

        let g = Group::cyclic(3);
        let m = Mould::single(&g, Side::U, vec![Elem(2)], &u(0, 1).pow(3) + &u(0, 1));
        assert_eq!(m.swap().get(&[Elem(2)]).unwrap(), m.get(&[Elem(2)]).unwrap());
    }

    #[test]
    fn swap_group_entries() {
        let g = Group::cyclic(5);
        let m = Mould::single(&g, Side::U, vec![Elem(3), Elem(1)], u(0, 2));
        // swap(M)(σ₁,σ₂) = M(σ₁σ₂, σ₁): σ₁ = 1, σ₁σ₂ = 3 → σ₂ = 2
        let s = m.swap();
        assert_eq!(s.entries().count(), 1);
        assert_eq!(s.get(&[Elem(1), Elem(2)]).unwrap(), &u(1, 2));
    }

    #[test]
    fn push_examples() {
        let g = Group::cyclic(4);
        let m = Mould::single(&g, Side::U, vec![Elem(1)], &u(0, 1).pow(2) + &u(0, 1));
        let p = m.push().unwrap();
        assert_eq!(p.get(&[Elem(3)]).unwrap(), &(&u(0, 1).pow(2) - &u(0, 1)));

        let m = triv(u(0, 2));
        let p = m.push().unwrap();
        assert_eq!(p, triv(&(-&u(0, 2)) - &u(1, 2)));
        assert_eq!(p.push().unwrap().push().unwrap(), m);
    }

    #[test]
    fn mantar_depth_one_is_identity() {
        let g = Group::cyclic(3);
        let m = Mould::single(&g, Side::U, vec![Elem(1)], u(0, 1).pow(5));
        assert_eq!(m.mantar(), m);
    }

    #[test]
    fn teru_example() {
        let m = triv(u(0, 1).pow(2));
        let t = m.teru().unwrap();
        assert_eq!(t.get(&[Elem::E, Elem::E]).unwrap(), &(&u(0, 2).scale(&q(2)) + &u(1, 2)));
        assert_eq!(t.get(&[Elem::E]).unwrap(), &u(0, 1).pow(2));
        assert!(Mould::zero(&Group::trivial(), Side::U).teru().unwrap().is_zero());
    }

    #[test]
    fn pus_examples() {
        let g = Group::cyclic(3);
        let n = Mould::single(&g, Side::V, vec![Elem(1), Elem(2)], u(0, 2));
        let p = n.pus().unwrap();
        assert_eq!(p.get(&[Elem(2), Elem(1)]).unwrap(), &u(1, 2));
        assert_eq!(p.pus().unwrap(), n);
        let d1 = Mould::single(&g, Side::V, vec![Elem(1)], u(0, 1));
        assert_eq!(d1.pus().unwrap(), d1);
        assert!(n.swap().pus().is_err());
    }

    #[test]
    fn distribution_maps() {
        let g = Group::cyclic(2);
        let mut m = Mould::zero(&g, Side::U);
        m.set(vec![Elem(0)], u(0, 1).pow(2));
        m.set(vec![Elem(1)], u(0, 1).scale(&qf(1, 3)));
        assert_eq!(m.m_n(1), m);
        let m2 = m.m_n(2);
        assert!(m2.group().is_trivial());
        let expect = &u(0, 1).pow(2).scale(&q(4)) + &u(0, 1).scale(&qf(2, 3));
        assert_eq!(m2.get(&[Elem::E]).unwrap(), &expect);
        assert!(Mould::zero(&g, Side::U).i_n(2).is_zero());
        assert_eq!(m.i_n(2).get(&[Elem::E]).unwrap(), &u(0, 1).pow(2));
    }
}
