//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are addressed by their index in the lexicographic enumeration of
//! residue vectors, so the identity is always index 0. Multiplication and
//! inversion are table lookups.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element inside its group's lexicographic enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const E: Elem = Elem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug)]
struct GroupData {
    moduli: Vec<u32>,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

/// The group Z/N₁ × … × Z/N_k.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group{:?}", self.0.moduli)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.moduli == other.0.moduli
    }
}
impl Eq for Group {}

impl Group {
    /// Builds Z/N₁ × … × Z/N_k. Every modulus must be at least 1.
    pub fn new(moduli: &[u32]) -> Result<Group> {
        if moduli.contains(&0) {
            return Err(Error::Invalid("moduli must be positive".into()));
        }
        let order: usize = moduli.iter().map(|&n| n as usize).product();
        if order > 1 << 16 {
            return Err(Error::Invalid(format!("group order {order} too large")));
        }
        let mut g = GroupData { moduli: moduli.to_vec(), order, mul: Vec::new(), inv: Vec::new() };
        let res: Vec<Vec<u32>> = (0..order).map(|i| decode(&g.moduli, i)).collect();
        g.mul = Vec::with_capacity(order * order);
        for a in &res {
            for b in &res {
                let s: Vec<u32> = a.iter().zip(b).zip(&g.moduli).map(|((x, y), n)| (x + y) % n).collect();
                g.mul.push(encode(&g.moduli, &s) as u32);
            }
        }
        g.inv = res
            .iter()
            .map(|a| {
                let s: Vec<u32> = a.iter().zip(&g.moduli).map(|(x, n)| (n - x) % n).collect();
                encode(&g.moduli, &s) as u32
            })
            .collect();
        Ok(Group(Arc::new(g)))
    }

    pub fn trivial() -> Group {
        Group::new(&[]).expect("trivial group")
    }

    pub fn cyclic(n: u32) -> Group {
        Group::new(&[n]).expect("positive modulus")
    }

    pub fn moduli(&self) -> &[u32] {
        &self.0.moduli
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    /// All elements, lexicographic in the residues, identity first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.order as u32).map(Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[a.idx() * self.0.order + b.idx()])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.0.inv[a.idx()])
    }

    /// a·b⁻¹
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// aⁿ for any integer n (negative powers use the inverse).
    pub fn pow(&self, a: Elem, n: i64) -> Elem {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut acc = Elem::E;
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn product(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(Elem::E, |acc, &x| self.mul(acc, x))
    }

    pub fn residues(&self, a: Elem) -> Vec<u32> {
        decode(&self.0.moduli, a.idx())
    }

    /// Reduces arbitrary integers modulo the moduli.
    pub fn elem(&self, residues: &[i64]) -> Result<Elem> {
        if residues.len() != self.0.moduli.len() {
            return Err(Error::ArityError { expected: self.0.moduli.len(), found: residues.len() });
        }
        let r: Vec<u32> = residues.iter().zip(&self.0.moduli).map(|(&x, &n)| x.rem_euclid(n as i64) as u32).collect();
        Ok(Elem(encode(&self.0.moduli, &r) as u32))
    }

    /// All τ with τᴺ = g. N may be negative.
    pub fn nth_roots(&self, g: Elem, n: i64) -> Vec<Elem> {
        self.elements().filter(|&t| self.pow(t, n) == g).collect()
    }

    /// Size of the N-torsion subgroup Γ_N.
    pub fn torsion_order(&self, n: i64) -> usize {
        self.nth_roots(Elem::E, n).len()
    }

    /// The subgroup Γᴺ as a cyclic product together with its embedding into Γ.
    pub fn power_subgroup(&self, n: i64) -> PowerSubgroup {
        let n_abs = n.unsigned_abs().max(1);
        let gens: Vec<u32> = self.0.moduli.iter().map(|&m| n_abs.gcd(&(m as u64)) as u32).collect();
        let sub_moduli: Vec<u32> = self.0.moduli.iter().zip(&gens).map(|(&m, &d)| m / d).collect();
        let sub = Group::new(&sub_moduli).expect("subgroup of a valid group");
        let embedding = sub
            .elements()
            .map(|h| {
                let r: Vec<i64> = sub.residues(h).iter().zip(&gens).map(|(&x, &d)| x as i64 * d as i64).collect();
                self.elem(&r).expect("same rank")
            })
            .collect();
        PowerSubgroup { group: sub, embedding }
    }

    /// Positive divisors of |Γ|.
    pub fn order_divisors(&self) -> Vec<i64> {
        let n = self.order() as i64;
        (1..=n).filter(|d| n % d == 0).collect()
    }

    pub fn format_elem(&self, a: Elem) -> String {
        let r = self.residues(a);
        if r.len() == 1 {
            r[0].to_string()
        } else {
            format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

/// Γᴺ with the map sending its own elements into Γ.
#[derive(Clone, Debug)]
pub struct PowerSubgroup {
    pub group: Group,
    pub embedding: Vec<Elem>,
}

impl PowerSubgroup {
    pub fn embed(&self, h: Elem) -> Elem {
        self.embedding[h.idx()]
    }

    /// Inverse of the embedding on its image.
    pub fn locate(&self, g: Elem) -> Option<Elem> {
        self.embedding.iter().position(|&x| x == g).map(|i| Elem(i as u32))
    }
}

fn decode(moduli: &[u32], mut i: usize) -> Vec<u32> {
    let mut r = vec![0u32; moduli.len()];
    for k in (0..moduli.len()).rev() {
        let n = moduli[k] as usize;
        r[k] = (i % n) as u32;
        i /= n;
    }
    r
}

fn encode(moduli: &[u32], r: &[u32]) -> usize {
    r.iter().zip(moduli).fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
}

/// An element bundled with its parent group, for callers outside the index world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub group: Group,
    pub elem: Elem,
}

impl GroupElement {
    pub fn new(group: &Group, residues: &[i64]) -> Result<Self> {
        Ok(GroupElement { group: group.clone(), elem: group.elem(residues)? })
    }

    pub fn identity(group: &Group) -> Self {
        GroupElement { group: group.clone(), elem: Elem::E }
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.moduli().to_vec(), other.group.moduli().to_vec()));
        }
        Ok(GroupElement { group: self.group.clone(), elem: self.group.mul(self.elem, other.elem) })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { group: self.group.clone(), elem: self.group.inv(self.elem) }
    }

    pub fn residues(&self) -> Vec<u32> {
        self.group.residues(self.elem)
    }

    pub fn nth_roots(&self, n: i64) -> Vec<GroupElement> {
        self.group.nth_roots(self.elem, n).into_iter().map(|e| GroupElement { group: self.group.clone(), elem: e }).collect()
    }
}

/// JSON form `{"cyclic":[N₁,…]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    pub cyclic: Vec<u32>,
}

impl From<&Group> for GroupJson {
    fn from(g: &Group) -> Self {
        GroupJson { cyclic: g.moduli().to_vec() }
    }
}

impl GroupJson {
    pub fn build(&self) -> Result<Group> {
        Group::new(&self.cyclic)
    }
}

/// Parses the shorthand `c<N>` or `c<N>x<M>x…`.
pub fn parse_group_shorthand(s: &str) -> Result<Group> {
    let body = s.strip_prefix('c').ok_or_else(|| Error::Parse(format!("group shorthand must start with 'c': {s}")))?;
    let moduli = body.split('x').map(|p| p.parse::<u32>().map_err(|_| Error::Parse(format!("bad modulus '{p}' in {s}")))).collect::<Result<Vec<_>>>()?;
    Group::new(&moduli)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &Group, r: &[i64]) -> Elem {
        g.elem(r).unwrap()
    }

    #[test]
    fn compose_examples() {
        let z4 = Group::cyclic(4);
        assert_eq!(z4.mul(el(&z4, &[3]), el(&z4, &[2])), el(&z4, &[1]));
        let g = Group::new(&[2, 3]).unwrap();
        assert_eq!(g.mul(el(&g, &[1, 2]), el(&g, &[1, 2])), el(&g, &[0, 1]));
        for a in g.elements() {
            assert_eq!(g.mul(Elem::E, a), a);
        }
    }

    #[test]
    fn inverse_examples() {
        let z4 = Group::cyclic(4);
        assert_eq!(z4.inv(el(&z4, &[1])), el(&z4, &[3]));
        assert_eq!(z4.inv(Elem::E), Elem::E);
        let z5 = Group::cyclic(5);
        assert_eq!(z5.inv(el(&z5, &[2])), el(&z5, &[3]));
    }

    #[test]
    fn roots_examples() {
        let z4 = Group::cyclic(4);
        assert_eq!(z4.nth_roots(el(&z4, &[2]), 2), vec![el(&z4, &[1]), el(&z4, &[3])]);
        let t = Group::trivial();
        assert_eq!(t.nth_roots(Elem::E, 7), vec![Elem::E]);
        let z3 = Group::cyclic(3);
        assert_eq!(z3.nth_roots(Elem::E, 3).len(), 3);
    }

    #[test]
    fn power_subgroup_examples() {
        let g = Group::new(&[4, 4]).unwrap();
        let p = g.power_subgroup(2);
        assert_eq!(p.group.order(), 4);
        let g = Group::cyclic(4);
        let p = g.power_subgroup(2);
        assert_eq!(p.group.moduli(), &[2]);
        assert_eq!(p.embedding, vec![el(&g, &[0]), el(&g, &[2])]);
        let p1 = g.power_subgroup(1);
        assert_eq!(p1.embedding, g.elements().collect::<Vec<_>>());
        let g3 = Group::new(&[3, 3, 3]).unwrap();
        assert!(g3.power_subgroup(3).group.is_trivial());
    }

    #[test]
    fn enumeration_order() {
        let g = Group::new(&[2, 2]).unwrap();
        let r: Vec<Vec<u32>> = g.elements().map(|a| g.residues(a)).collect();
        assert_eq!(r, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(Group::trivial().elements().count(), 1);
    }

    #[test]
    fn mismatch_is_reported() {
        let a = GroupElement::new(&Group::cyclic(2), &[1]).unwrap();
        let b = GroupElement::new(&Group::cyclic(3), &[1]).unwrap();
        assert!(matches!(a.compose(&b), Err(Error::GroupMismatch(..))));
    }

    #[test]
    fn shorthand() {
        assert_eq!(parse_group_shorthand("c1").unwrap().order(), 1);
        assert_eq!(parse_group_shorthand("c2x3").unwrap().moduli(), &[2, 3]);
        assert!(parse_group_shorthand("z2").is_err());
    }
}
