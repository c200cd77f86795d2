//! Symmetry predicates with witnesses, and the constraint-to-nullspace solver
//! for graded pieces of the mould spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Mono, RowReducer, SparsePoly, Q};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::mould::{tuples, Mould, Side};

/// Default bound on the number of ambient coefficients for the solver.
pub const DEFAULT_MAX_AMBIENT: usize = 20000;

/// Size guard, overridable through the `MOULD_MAX_AMBIENT` environment variable.
pub fn max_ambient() -> usize {
    std::env::var("MOULD_MAX_AMBIENT").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_AMBIENT)
}

/// A single linear condition on moulds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// Shuffle sums of the mould's own components vanish.
    Alternal,
    /// Shuffle sums of swap(M) vanish.
    SwapAlternal,
    /// M¹(x;σ) = M¹(−x;σ⁻¹).
    Parity,
    /// push(M) = M.
    Push,
    /// The cyclic sums of pus on the mould's own components vanish.
    Pusnu,
    /// swap(M) is pus-neutral.
    SwapPusnu,
    /// teru(M) = push∘mantar∘teru∘mantar(M).
    Senary,
    /// mantar(M) = M.
    Mantar,
    /// i_N(M) = m_N(M).
    Distribution(i64),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Alternal => write!(f, "alternal"),
            Condition::SwapAlternal => write!(f, "swap-alternal"),
            Condition::Parity => write!(f, "parity"),
            Condition::Push => write!(f, "push"),
            Condition::Pusnu => write!(f, "pusnu"),
            Condition::SwapPusnu => write!(f, "swap-pusnu"),
            Condition::Senary => write!(f, "senary"),
            Condition::Mantar => write!(f, "mantar"),
            Condition::Distribution(n) => write!(f, "distribution-{n}"),
        }
    }
}

/// Identifies one polynomial constraint: the σ-tuple it lives on and an auxiliary index
/// (the shuffle split p for alternality, 0 otherwise).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResidualKey {
    pub aux: usize,
    pub sigma: Vec<Elem>,
}

pub type Residuals = BTreeMap<ResidualKey, SparsePoly>;

/// The first failing constraint of a predicate.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub condition: Condition,
    pub depth: usize,
    pub sigma: Vec<Elem>,
    pub aux: usize,
    pub residual: SparsePoly,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<u32> = self.sigma.iter().map(|e| e.0).collect();
        write!(f, "{} fails at depth {} sigma {:?} (aux {}): {}", self.condition, self.depth, s, self.aux, self.residual)
    }
}

/// Outcome of a predicate: Ok, or the first failing constraint.
pub type Check = std::result::Result<(), Witness>;

fn from_mould(m: &Mould) -> Residuals {
    m.entries().map(|(s, p)| (ResidualKey { aux: 0, sigma: s.clone() }, p.clone())).collect()
}

/// Shuffle sums Σ_{ω∈Sh(p,q)} M^m(x_ω; σ_ω), keyed by (p, σ).
fn shuffle_residuals(m: &Mould) -> Residuals {
    let mut out: Residuals = BTreeMap::new();
    for (tau, poly) in m.entries() {
        let d = tau.len();
        for p in 1..d {
            for omega in shuffles(p, d - p) {
                // the term at output σ reads letter ω_k in slot k
                let mut sigma = vec![Elem::E; d];
                for (k, &w) in omega.iter().enumerate() {
                    sigma[w] = tau[k];
                }
                let moved = poly.permute_vars(&omega);
                let key = ResidualKey { aux: p, sigma };
                let e = out.entry(key).or_insert_with(|| SparsePoly::zero(d));
                *e = &*e + &moved;
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// The shuffles of (0..p) with (p..p+q), as sequences of letter indices.
pub fn shuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, j: usize, p: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == p && j == q {
            out.push(cur.clone());
            return;
        }
        if i < p {
            cur.push(i);
            rec(i + 1, j, p, q, cur, out);
            cur.pop();
        }
        if j < q {
            cur.push(p + j);
            rec(i, j + 1, p, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 0, p, q, &mut Vec::new(), &mut out);
    out
}

fn pusnu_residuals(n: &Mould) -> Result<Residuals> {
    n.expect_side(Side::V)?;
    let mut total = Mould::zero(n.group(), Side::V);
    for d in n.depths().collect::<Vec<_>>() {
        let mut cur = n.depth_part(d);
        for _ in 0..d {
            total = total.add_scaled(&cur, &Q::one());
            cur = cur.pus()?;
        }
    }
    Ok(from_mould(&total))
}

impl Condition {
    /// The side of moulds the condition applies to.
    pub fn side(&self) -> Option<Side> {
        match self {
            Condition::Alternal | Condition::Mantar => None,
            Condition::Pusnu => Some(Side::V),
            _ => Some(Side::U),
        }
    }

    /// Constraint residuals; the condition holds iff all of them vanish.
    pub fn residuals(&self, m: &Mould) -> Result<Residuals> {
        if let Some(side) = self.side() {
            m.expect_side(side)?;
        }
        Ok(match self {
            Condition::Alternal => shuffle_residuals(m),
            Condition::SwapAlternal => shuffle_residuals(&m.swap()),
            Condition::Parity => from_mould(&m.depth_part(1).sub(&m.depth_part(1).neg())?),
            Condition::Push => from_mould(&m.push()?.sub(m)?),
            Condition::Pusnu => pusnu_residuals(m)?,
            Condition::SwapPusnu => pusnu_residuals(&m.swap())?,
            Condition::Senary => {
                let lhs = m.teru()?;
                let rhs = m.mantar().teru()?.mantar().push()?;
                from_mould(&lhs.sub(&rhs)?)
            }
            Condition::Mantar => from_mould(&m.mantar().sub(m)?),
            Condition::Distribution(n) => from_mould(&m.i_n(*n).sub(&m.m_n(*n))?),
        })
    }

    pub fn check(&self, m: &Mould) -> Result<Check> {
        let r = self.residuals(m)?;
        Ok(match r.into_iter().next() {
            None => Ok(()),
            Some((k, p)) => Err(Witness { condition: self.clone(), depth: k.sigma.len(), sigma: k.sigma, aux: k.aux, residual: p }),
        })
    }
}

fn check_all(conds: &[Condition], m: &Mould) -> Result<Check> {
    for c in conds {
        if let Err(w) = c.check(m)? {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

pub fn is_alternal(m: &Mould) -> Check {
    Condition::Alternal.check(m).expect("alternality applies to either side")
}

pub fn is_bialternal(m: &Mould) -> Result<Check> {
    check_all(&[Condition::Alternal, Condition::SwapAlternal, Condition::Parity], m)
}

pub fn is_push_invariant(m: &Mould) -> Result<Check> {
    Condition::Push.check(m)
}

pub fn is_pus_neutral(n: &Mould) -> Result<Check> {
    Condition::Pusnu.check(n)
}

pub fn satisfies_senary(m: &Mould) -> Result<Check> {
    Condition::Senary.check(m)
}

pub fn is_mantar_invariant(m: &Mould) -> Check {
    Condition::Mantar.check(m).expect("mantar applies to either side")
}

pub fn satisfies_distribution(m: &Mould, n: i64) -> Result<Check> {
    Condition::Distribution(n).check(m)
}

/// Distribution relations for every N > 1 dividing |Γ|.
pub fn satisfies_all_distributions(m: &Mould) -> Result<Check> {
    let conds: Vec<Condition> = m.group().order_divisors().into_iter().filter(|&n| n > 1).map(Condition::Distribution).collect();
    check_all(&conds, m)
}

/// Named mould spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    Al,
    SwapAl,
    Alal,
    Push,
    PusnuSwap,
    PushPusnu,
    SenaPusnu,
    Dist(Vec<i64>),
    AridAlal,
}

impl Space {
    pub fn name(&self) -> String {
        match self {
            Space::Al => "al".into(),
            Space::SwapAl => "swap-al".into(),
            Space::Alal => "alal".into(),
            Space::Push => "push".into(),
            Space::PusnuSwap => "pusnu-swap".into(),
            Space::PushPusnu => "push-pusnu".into(),
            Space::SenaPusnu => "sena-pusnu".into(),
            Space::Dist(ns) => {
                format!("dist:{}", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(":"))
            }
            Space::AridAlal => "arid-alal".into(),
        }
    }

    /// Parses `al`, `swap-al`, `alal`, `push`, `pusnu-swap`, `push-pusnu`,
    /// `sena-pusnu`, `dist` (all divisors), `dist:2:3`, `arid-alal`.
    pub fn parse(s: &str) -> Result<Space> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match s.as_str() {
            "al" => Space::Al,
            "swap-al" => Space::SwapAl,
            "alal" => Space::Alal,
            "push" => Space::Push,
            "pusnu-swap" | "pusnu" => Space::PusnuSwap,
            "push-pusnu" => Space::PushPusnu,
            "sena-pusnu" => Space::SenaPusnu,
            "dist" => Space::Dist(Vec::new()),
            "arid-alal" => Space::AridAlal,
            other => {
                if let Some(rest) = other.strip_prefix("dist:") {
                    let ns = rest.split(':').map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad N in {other}")))).collect::<Result<Vec<_>>>()?;
                    Space::Dist(ns)
                } else {
                    return Err(Error::Parse(format!("unknown space {other}")));
                }
            }
        })
    }

    pub fn conditions(&self, group: &Group) -> Vec<Condition> {
        let dists = |ns: &[i64]| -> Vec<Condition> {
            let ns: Vec<i64> = if ns.is_empty() { group.order_divisors().into_iter().filter(|&n| n > 1).collect() } else { ns.to_vec() };
            ns.into_iter().map(Condition::Distribution).collect()
        };
        match self {
            Space::Al => vec![Condition::Alternal],
            Space::SwapAl => vec![Condition::SwapAlternal],
            Space::Alal => vec![Condition::Alternal, Condition::SwapAlternal, Condition::Parity],
            Space::Push => vec![Condition::Push],
            Space::PusnuSwap => vec![Condition::SwapPusnu],
            Space::PushPusnu => vec![Condition::Push, Condition::SwapPusnu],
            Space::SenaPusnu => vec![Condition::Senary, Condition::SwapPusnu],
            Space::Dist(ns) => dists(ns),
            Space::AridAlal => {
                let mut c = vec![Condition::Alternal, Condition::SwapAlternal, Condition::Parity];
                c.extend(dists(&[]));
                c
            }
        }
    }
}

/// An intersection of spaces at weight w, either in a single depth or across all depths 1..=w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSpec {
    pub spaces: Vec<Space>,
    pub group: Group,
    pub weight: usize,
    pub depth: Option<usize>,
}

impl SpaceSpec {
    pub fn new(spaces: Vec<Space>, group: &Group, weight: usize, depth: Option<usize>) -> Self {
        SpaceSpec { spaces, group: group.clone(), weight, depth }
    }

    pub fn conditions(&self) -> Vec<Condition> {
        let mut out: Vec<Condition> = Vec::new();
        for s in &self.spaces {
            for c in s.conditions(&self.group) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    fn depths(&self) -> Vec<usize> {
        match self.depth {
            Some(d) if d >= 1 && d <= self.weight => vec![d],
            Some(_) => vec![],
            None => (1..=self.weight).collect(),
        }
    }

    pub fn ambient_dimension(&self) -> usize {
        let n = self.group.order();
        self.depths().iter().map(|&d| n.pow(d as u32) * binomial(self.weight - 1, d - 1)).sum()
    }

    /// Single-monomial u-side moulds spanning the slot, in canonical order.
    pub fn ambient(&self) -> Result<Vec<Mould>> {
        let dim = self.ambient_dimension();
        let limit = max_ambient();
        if dim > limit {
            return Err(Error::TooLarge { ambient: dim, limit });
        }
        Ok(slot_monomials(&self.group, Side::U, self.weight, &self.depths()))
    }

    pub fn basis(&self) -> Result<Vec<Mould>> {
        solve(&self.ambient()?, &self.conditions())
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.basis()?.len())
    }
}

/// Moulds with a single monomial entry of weight w at each depth in `depths`.
pub fn slot_monomials(group: &Group, side: Side, weight: usize, depths: &[usize]) -> Vec<Mould> {
    let mut out = Vec::new();
    for &d in depths {
        if d == 0 || d > weight {
            continue;
        }
        let monos = SparsePoly::monomials_of_degree(d, (weight - d) as u32);
        for s in tuples(group, d) {
            for e in &monos {
                out.push(Mould::single(group, side, s.clone(), SparsePoly::monomial(e.0.clone(), Q::one())));
            }
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

type RowKey = (usize, ResidualKey, Mono);

/// Kernel of the linear map "ambient combination ↦ all residuals", returned as moulds.
pub fn solve(ambient: &[Mould], conds: &[Condition]) -> Result<Vec<Mould>> {
    let coeffs = solve_coefficients(ambient, |m| {
        let mut out = Vec::new();
        for (ci, c) in conds.iter().enumerate() {
            for (k, p) in c.residuals(m)? {
                out.push((ci, k, p));
            }
        }
        Ok(out)
    })?;
    Ok(coeffs.iter().map(|v| combine(ambient, v)).collect())
}

/// Generic kernel computation: `residual` must be linear in its argument.
pub fn solve_coefficients<F>(ambient: &[Mould], mut residual: F) -> Result<Vec<Vec<Q>>>
where
    F: FnMut(&Mould) -> Result<Vec<(usize, ResidualKey, SparsePoly)>>,
{
    let mut rows: BTreeMap<RowKey, Vec<(usize, Q)>> = BTreeMap::new();
    for (j, m) in ambient.iter().enumerate() {
        for (ci, k, p) in residual(m)? {
            for (e, c) in p.terms() {
                rows.entry((ci, k.clone(), e.clone())).or_default().push((j, c.clone()));
            }
        }
    }
    let mut rr = RowReducer::new(ambient.len());
    for row in rows.values() {
        if rr.rank() == ambient.len() {
            break;
        }
        rr.push_sparse(row);
    }
    Ok(rr.kernel())
}

/// Σ v_j · ambient_j.
pub fn combine(ambient: &[Mould], v: &[Q]) -> Mould {
    let mut acc = match ambient.first() {
        Some(m) => Mould::zero(m.group(), m.side()),
        None => Mould::zero(&Group::trivial(), Side::U),
    };
    for (m, c) in ambient.iter().zip(v) {
        if !c.is_zero() {
            acc = acc.add_scaled(m, c);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn u(i: usize, n: usize) -> SparsePoly {
        SparsePoly::var(i, n)
    }

    fn triv(p: SparsePoly) -> Mould {
        Mould::single(&Group::trivial(), Side::U, vec![Elem::E; p.arity()], p)
    }

    #[test]
    fn alternal_examples() {
        assert!(is_alternal(&triv(&u(0, 2) - &u(1, 2))).is_ok());
        assert!(is_alternal(&triv(u(0, 1).pow(4))).is_ok());
        let w = is_alternal(&triv(u(0, 2))).unwrap_err();
        assert_eq!(w.depth, 2);
        assert_eq!(w.condition, Condition::Alternal);
    }

    #[test]
    fn bialternal_examples() {
        assert!(is_bialternal(&triv(u(0, 1).pow(2))).unwrap().is_ok());
        let w = is_bialternal(&triv(u(0, 1))).unwrap().unwrap_err();
        assert_eq!(w.condition, Condition::Parity);
        assert!(is_bialternal(&Mould::zero(&Group::cyclic(3), Side::U)).unwrap().is_ok());
    }

    #[test]
    fn push_and_pusnu_examples() {
        let p = &(&u(0, 2).pow(2) + &(&u(0, 2) * &u(1, 2))) + &u(1, 2).pow(2);
        assert!(is_push_invariant(&triv(p)).unwrap().is_ok());
        let n = Mould::single(&Group::trivial(), Side::V, vec![Elem::E; 2], &u(0, 2) - &u(1, 2));
        assert!(is_pus_neutral(&n).unwrap().is_ok());
        assert!(is_pus_neutral(&triv(u(0, 2))).is_err());
    }

    #[test]
    fn senary_examples() {
        // at depth 1 the relation is the parity condition M¹(u) = M¹(−u)
        let depth1 = |m: &Mould| Condition::Senary.residuals(m).unwrap().keys().filter(|k| k.sigma.len() == 1).count();
        assert_eq!(depth1(&triv(u(0, 1).pow(2))), 0);
        assert_eq!(depth1(&triv(u(0, 1))), 1);
        assert!(satisfies_senary(&Mould::zero(&Group::trivial(), Side::U)).unwrap().is_ok());
    }

    #[test]
    fn distribution_examples() {
        let g = Group::cyclic(2);
        assert!(satisfies_distribution(&Mould::zero(&g, Side::U), 2).unwrap().is_ok());
        let mut m = Mould::zero(&g, Side::U);
        m.set(vec![Elem(0)], u(0, 1));
        m.set(vec![Elem(1)], u(0, 1).scale(&q(-1)));
        // M(x;0) = x but M(2x;0) + M(2x;1) = 0
        let w = satisfies_distribution(&m, 2).unwrap().unwrap_err();
        assert_eq!(w.depth, 1);
        let mut ok = Mould::zero(&g, Side::U);
        ok.set(vec![Elem(0)], u(0, 1).scale(&q(2)));
        ok.set(vec![Elem(1)], u(0, 1).scale(&q(-1)));
        assert!(satisfies_distribution(&ok, 2).unwrap().is_ok());
    }

    #[test]
    fn alal_depth_one_parity() {
        let g = Group::trivial();
        for w in 1..=9 {
            let d = SpaceSpec::new(vec![Space::Alal], &g, w, Some(1)).dimension().unwrap();
            assert_eq!(d, usize::from(w % 2 == 1), "w = {w}");
        }
    }

    #[test]
    fn size_guard() {
        let spec = SpaceSpec::new(vec![Space::Al], &Group::cyclic(7), 12, Some(6));
        assert!(matches!(spec.basis(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn shuffle_enumeration() {
        assert_eq!(shuffles(1, 1), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(shuffles(2, 2).len(), 6);
    }
}
