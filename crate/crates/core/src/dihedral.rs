//! Dihedral collections Z̰ over a finite abelian group, their double-shuffle,
//! distribution and dihedral-symmetry relations, and the map to moulds.
//!
//! A collection of weight w and depth m stores, for every (g₁, …, g_m), the
//! polynomial P_g(s₁, …, s_m) = Z̰(g₁, …, g_m, g_{m+1} | s₁ : … : s_m : 0) of
//! degree w − m, with g_{m+1} = (g₁⋯g_m)⁻¹ implicit.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{kernel_of_columns, LinearForm, Mono, SparsePoly, Q};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::mould::{tuples, Mould, Side};
use crate::spaces::{max_ambient, Condition};

#[derive(Clone, PartialEq, Eq)]
pub struct DihedralCollection {
    group: Group,
    weight: usize,
    depth: usize,
    data: BTreeMap<Vec<Elem>, SparsePoly>,
}

/// A relation imposed on collections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Relation {
    Harmonic,
    Shuffle,
    Cyclic,
    Inversion,
    Reflection,
    Distribution(i64),
    Additional,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Harmonic => write!(f, "harmonic"),
            Relation::Shuffle => write!(f, "shuffle"),
            Relation::Cyclic => write!(f, "cyclic"),
            Relation::Inversion => write!(f, "inversion"),
            Relation::Reflection => write!(f, "reflection"),
            Relation::Distribution(n) => write!(f, "distribution(N={n})"),
            Relation::Additional => write!(f, "additional"),
        }
    }
}

/// The first failing constraint of a relation.
#[derive(Clone, Debug, PartialEq)]
pub struct DihedralWitness {
    pub relation: Relation,
    pub g: Vec<Elem>,
    pub residual: SparsePoly,
}

impl fmt::Display for DihedralWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<u32> = self.g.iter().map(|e| e.0).collect();
        write!(f, "{} fails at g {:?}: {}", self.relation, g, self.residual)
    }
}

pub type DihedralCheck = std::result::Result<(), DihedralWitness>;

type Residual = (Vec<Elem>, usize, SparsePoly);

impl DihedralCollection {
    pub fn zero(group: &Group, weight: usize, depth: usize) -> Self {
        DihedralCollection { group: group.clone(), weight, depth, data: BTreeMap::new() }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<Elem>, &SparsePoly)> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    /// Sets P_g. The polynomial must have m variables and degree w − m.
    pub fn set(&mut self, g: Vec<Elem>, p: SparsePoly) -> Result<()> {
        if g.len() != self.depth || p.arity() != self.depth {
            return Err(Error::ArityError { expected: self.depth, found: p.arity() });
        }
        if self.weight < self.depth || !p.is_homogeneous_of((self.weight - self.depth) as u32) {
            return Err(Error::Invalid(format!("entry must be homogeneous of degree {}", self.weight as i64 - self.depth as i64)));
        }
        if p.is_zero() {
            self.data.remove(&g);
        } else {
            self.data.insert(g, p);
        }
        Ok(())
    }

    pub fn get(&self, g: &[Elem]) -> SparsePoly {
        self.data.get(g).cloned().unwrap_or_else(|| SparsePoly::zero(self.depth))
    }

    pub fn add_scaled(&self, o: &DihedralCollection, k: &Q) -> DihedralCollection {
        let mut r = self.clone();
        for (g, p) in &o.data {
            let mut cur = r.get(g);
            cur.add_assign_scaled(p, k);
            if cur.is_zero() {
                r.data.remove(g);
            } else {
                r.data.insert(g.clone(), cur);
            }
        }
        r
    }

    /// The implicit last index g_{m+1} = (g₁⋯g_m)⁻¹.
    pub fn closing(&self, g: &[Elem]) -> Elem {
        self.group.inv(self.group.product(g))
    }

    /// P_g evaluated at linear forms in `arity` variables.
    fn eval(&self, g: &[Elem], forms: &[LinearForm], arity: usize) -> SparsePoly {
        match self.data.get(g) {
            None => SparsePoly::zero(arity),
            Some(p) => p.substitute_linear(forms, arity).expect("matching arity"),
        }
    }

    /// Z̰(g₁, …, g_{m+1} | t₁ : … : t_{m+1}) in variables t₁..t_{m+1}; requires Πg = 1.
    pub fn undertilde(&self, g: &[Elem]) -> Result<SparsePoly> {
        let m = self.depth;
        if g.len() != m + 1 || self.group.product(g) != Elem::E {
            return Err(Error::Invalid("indices must have m+1 entries with product 1".into()));
        }
        let forms: Vec<LinearForm> = (0..m).map(|i| LinearForm::unit(i, m + 1) - LinearForm::unit(m, m + 1)).collect();
        Ok(self.eval(&g[..m], &forms, m + 1))
    }

    /// Z̃(g₁ : … : g_{m+1} | t₁, …, t_{m+1}) in variables t₁..t_{m+1} (independent of t_{m+1}).
    pub fn tilde(&self, g: &[Elem]) -> Result<SparsePoly> {
        let m = self.depth;
        if g.len() != m + 1 {
            return Err(Error::ArityError { expected: m + 1, found: g.len() });
        }
        let k: Vec<Elem> = (0..m).map(|i| self.group.div(g[i + 1], g[i])).collect();
        let forms: Vec<LinearForm> = (0..m).map(|i| LinearForm::range_sum(0, i + 1, m + 1)).collect();
        Ok(self.eval(&k, &forms, m + 1))
    }

    /// Z(g₁ : … : g_{m+1} | t₁ : … : t_{m+1}) in variables t₁..t_{m+1}.
    pub fn z_view(&self, g: &[Elem]) -> Result<SparsePoly> {
        let m = self.depth;
        if g.len() != m + 1 {
            return Err(Error::ArityError { expected: m + 1, found: g.len() });
        }
        let k: Vec<Elem> = (0..m).map(|i| self.group.div(g[i + 1], g[i])).collect();
        let forms: Vec<LinearForm> = (0..m).map(|i| LinearForm::unit(i, m + 1) - LinearForm::unit(m, m + 1)).collect();
        Ok(self.eval(&k, &forms, m + 1))
    }

    /// Recovers a collection from its Z̃ view (read at g₁ = 1).
    pub fn from_tilde(group: &Group, weight: usize, depth: usize, tilde: impl Fn(&[Elem]) -> SparsePoly) -> Result<DihedralCollection> {
        let m = depth;
        let mut z = DihedralCollection::zero(group, weight, depth);
        // s_i = t₁ + … + t_i, so t₁ = s₁ and t_i = s_i − s_{i−1}; t_{m+1} = −s_m
        let mut forms: Vec<LinearForm> =
            (0..m).map(|i| if i == 0 { LinearForm::unit(0, m) } else { LinearForm::unit(i, m) - LinearForm::unit(i - 1, m) }).collect();
        forms.push(if m == 0 { LinearForm::zero(0) } else { -LinearForm::unit(m - 1, m) });
        for k in tuples(group, m) {
            let mut g = vec![Elem::E];
            for &ki in &k {
                g.push(group.mul(*g.last().expect("nonempty"), ki));
            }
            let p = tilde(&g).substitute_linear(&forms, m)?;
            z.set(k, p)?;
        }
        Ok(z)
    }

    /// M_Z̰ with M^m(u; g) = Z̃(g₁ : … : g_m : 1 | u₁, …, u_{m+1}).
    pub fn to_mould(&self) -> Mould {
        let (g, m) = (&self.group, self.depth);
        let mut out = Mould::zero(g, Side::U);
        let forms: Vec<LinearForm> = (0..m).map(|i| LinearForm::range_sum(0, i + 1, m)).collect();
        for sigma in tuples(g, m) {
            let k = mould_key(g, &sigma);
            let p = self.eval(&k, &forms, m);
            if !p.is_zero() {
                out.set(sigma, p);
            }
        }
        out
    }

    /// Inverse of `to_mould` on the depth-m component.
    pub fn from_mould(mould: &Mould, weight: usize, depth: usize) -> Result<DihedralCollection> {
        mould.expect_side(Side::U)?;
        let (g, m) = (mould.group(), depth);
        let mut z = DihedralCollection::zero(g, weight, depth);
        let forms: Vec<LinearForm> =
            (0..m).map(|i| if i == 0 { LinearForm::unit(0, m) } else { LinearForm::unit(i, m) - LinearForm::unit(i - 1, m) }).collect();
        for sigma in tuples(g, m) {
            let p = mould.get_or_zero(&sigma);
            if p.is_zero() {
                continue;
            }
            z.set(mould_key(g, &sigma), p.substitute_linear(&forms, m)?)?;
        }
        Ok(z)
    }

    /// The mould H^m(s; g) = P_g(s), whose alternality is the harmonic relation.
    pub fn harmonic_mould(&self) -> Mould {
        let mut out = Mould::zero(&self.group, Side::U);
        for (g, p) in &self.data {
            out.set(g.clone(), p.clone());
        }
        out
    }

    fn residuals(&self, rel: Relation) -> Result<Vec<Residual>> {
        let (g, m) = (&self.group, self.depth);
        let mut out = Vec::new();
        let push = |out: &mut Vec<Residual>, key: Vec<Elem>, aux: usize, p: SparsePoly| {
            if !p.is_zero() {
                out.push((key, aux, p));
            }
        };
        match rel {
            Relation::Harmonic | Relation::Shuffle => {
                let mould = if rel == Relation::Harmonic { self.harmonic_mould() } else { self.to_mould() };
                for (k, p) in Condition::Alternal.residuals(&mould)? {
                    push(&mut out, k.sigma, k.aux, p);
                }
            }
            Relation::Cyclic => {
                if m == 0 {
                    return Ok(out);
                }
                // P_g(s) = P_{(g₂, …, g_{m+1})}(s₂ − s₁, …, s_m − s₁, −s₁)
                let mut forms: Vec<LinearForm> = (1..m).map(|i| LinearForm::unit(i, m) - LinearForm::unit(0, m)).collect();
                forms.push(-LinearForm::unit(0, m));
                for k in tuples(g, m) {
                    let mut rot: Vec<Elem> = k[1..].to_vec();
                    rot.push(self.closing(&k));
                    push(&mut out, k.clone(), 0, &self.get(&k) - &self.eval(&rot, &forms, m));
                }
            }
            Relation::Inversion => out = self.distribution_residuals(-1)?,
            Relation::Reflection => {
                // P_g(s) = (−1)^{m+1} P_{(g_m⁻¹, …, g₁⁻¹)}(−s_m, …, −s₁)
                let forms: Vec<LinearForm> = (0..m).map(|i| -LinearForm::unit(m - 1 - i, m)).collect();
                let sign = if (m + 1) % 2 == 0 { Q::one() } else { -Q::one() };
                for k in tuples(g, m) {
                    let rev: Vec<Elem> = k.iter().rev().map(|&x| g.inv(x)).collect();
                    push(&mut out, k.clone(), 0, &self.get(&k) - &self.eval(&rev, &forms, m).scale(&sign));
                }
            }
            Relation::Distribution(n) => out = self.distribution_residuals(n)?,
            Relation::Additional => {
                if m == 1 {
                    let c = self.get(&[Elem::E]).coeff(&Mono(vec![0]));
                    push(&mut out, vec![Elem::E], 0, SparsePoly::constant(c, 1));
                }
            }
        }
        Ok(out)
    }

    /// P_g(s) − Σ_{h_i^N = g_i} P_h(N s) for g ∈ (Γᴺ)^m; at m = 1, g = e the constant
    /// term is absorbed by a slack variable.
    fn distribution_residuals(&self, n: i64) -> Result<Vec<Residual>> {
        Ok(self.distribution_report(n)?.0)
    }

    /// Residuals and the slack constant used at m = 1, g = e.
    fn distribution_report(&self, n: i64) -> Result<(Vec<Residual>, Option<Q>)> {
        let (g, m) = (&self.group, self.depth);
        if n == 0 || g.order() as i64 % n.abs() != 0 {
            return Err(Error::Invalid(format!("|N| = {} must divide the group order", n.abs())));
        }
        let sub = g.power_subgroup(n);
        let forms: Vec<LinearForm> = (0..m).map(|i| LinearForm::unit(i, m).scale(n)).collect();
        let mut out = Vec::new();
        let mut slack = None;
        for k in tuples(g, m) {
            if k.iter().any(|&x| sub.locate(x).is_none()) {
                continue;
            }
            let mut r = self.get(&k);
            let roots: Vec<Vec<Elem>> = k.iter().map(|&x| g.nth_roots(x, n)).collect();
            for h in cartesian(&roots) {
                r.add_assign_scaled(&self.eval(&h, &forms, m), &-Q::one());
            }
            if m == 1 && k[0] == Elem::E {
                let c = r.coeff(&Mono(vec![0]));
                r.add_term(Mono(vec![0]), -c.clone());
                slack = Some(c);
            }
            if !r.is_zero() {
                out.push((k, 0, r));
            }
        }
        Ok((out, slack))
    }

    pub fn check(&self, rel: Relation) -> Result<DihedralCheck> {
        Ok(match self.residuals(rel)?.into_iter().next() {
            None => Ok(()),
            Some((g, _, residual)) => Err(DihedralWitness { relation: rel, g, residual }),
        })
    }

    fn check_all(&self, rels: &[Relation]) -> Result<DihedralCheck> {
        for &r in rels {
            if let Err(w) = self.check(r)? {
                return Ok(Err(w));
            }
        }
        Ok(Ok(()))
    }

    pub fn check_harmonic(&self) -> Result<DihedralCheck> {
        self.check(Relation::Harmonic)
    }

    pub fn check_shuffle(&self) -> Result<DihedralCheck> {
        self.check(Relation::Shuffle)
    }

    /// The distribution relation for N, plus the slack constant if one was used.
    pub fn check_distribution(&self, n: i64) -> Result<(DihedralCheck, Option<Q>)> {
        let (res, slack) = self.distribution_report(n)?;
        let c = match res.into_iter().next() {
            None => Ok(()),
            Some((g, _, residual)) => Err(DihedralWitness { relation: Relation::Distribution(n), g, residual }),
        };
        Ok((c, slack))
    }

    /// Cyclic, inversion and reflection relations.
    pub fn check_dihedral(&self) -> Result<DihedralCheck> {
        self.check_all(&[Relation::Cyclic, Relation::Inversion, Relation::Reflection])
    }
}

fn cartesian(choices: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
    for c in choices {
        out = out.iter().flat_map(|p| c.iter().map(move |&x| [p.as_slice(), &[x]].concat())).collect();
    }
    out
}

/// The P-index read by M^m(u; g): (g₁⁻¹g₂, …, g_{m−1}⁻¹g_m, g_m⁻¹).
fn mould_key(g: &Group, sigma: &[Elem]) -> Vec<Elem> {
    let m = sigma.len();
    (0..m).map(|i| if i + 1 < m { g.div(sigma[i + 1], sigma[i]) } else { g.inv(sigma[i]) }).collect()
}

impl fmt::Debug for DihedralCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dihedral(w={}, m={}, {:?}) {{", self.weight, self.depth, self.group)?;
        for (g, p) in &self.data {
            let g: Vec<u32> = g.iter().map(|e| e.0).collect();
            write!(f, " {g:?}: {p};")?;
        }
        write!(f, " }}")
    }
}

/// The relations cutting out a named dihedral space.
pub fn relations(group: &Group, with_distribution: bool) -> Vec<Relation> {
    if with_distribution {
        let mut r = vec![Relation::Harmonic, Relation::Shuffle];
        for d in group.order_divisors() {
            for n in [d, -d] {
                if n != 1 {
                    r.push(Relation::Distribution(n));
                }
            }
        }
        r.push(Relation::Additional);
        r
    } else {
        vec![Relation::Harmonic, Relation::Shuffle, Relation::Cyclic, Relation::Additional]
    }
}

/// Unit collections spanning all entries of weight w and depth m.
pub fn ambient(group: &Group, weight: usize, depth: usize) -> Result<Vec<DihedralCollection>> {
    if depth == 0 || weight < depth {
        return Ok(Vec::new());
    }
    let monos = SparsePoly::monomials_of_degree(depth, (weight - depth) as u32);
    let size = monos.len() * group.order().pow(depth as u32);
    if size > max_ambient() {
        return Err(Error::TooLarge { ambient: size, limit: max_ambient() });
    }
    let mut out = Vec::with_capacity(size);
    for g in tuples(group, depth) {
        for e in &monos {
            let mut z = DihedralCollection::zero(group, weight, depth);
            z.set(g.clone(), SparsePoly::monomial(e.0.clone(), Q::one()))?;
            out.push(z);
        }
    }
    Ok(out)
}

/// Kernel of the given relations on the space of collections of weight w and depth m.
pub fn solve_relations(group: &Group, weight: usize, depth: usize, rels: &[Relation]) -> Result<Vec<DihedralCollection>> {
    let amb = ambient(group, weight, depth)?;
    let mut cols = Vec::with_capacity(amb.len());
    for z in &amb {
        let mut col = Vec::new();
        for (ri, &r) in rels.iter().enumerate() {
            for (g, aux, p) in z.residuals(r)? {
                for (e, c) in p.terms() {
                    col.push(((ri, g.clone(), aux, e.clone()), c.clone()));
                }
            }
        }
        cols.push(col);
    }
    Ok(kernel_of_columns(cols)
        .into_iter()
        .map(|v| amb.iter().zip(&v).fold(DihedralCollection::zero(group, weight, depth), |acc, (z, c)| if c.is_zero() { acc } else { acc.add_scaled(z, c) }))
        .collect())
}

/// Basis of 𝔻(Γ)_{w,m}, or of D(Γ)_{w,m} when `with_distribution` is set.
pub fn dihedral_space_basis(group: &Group, weight: usize, depth: usize, with_distribution: bool) -> Result<Vec<DihedralCollection>> {
    solve_relations(group, weight, depth, &relations(group, with_distribution))
}
