//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_q, q, LinearForm, Q};
use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial in `arity` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    arity: usize,
    terms: BTreeMap<Mono, Q>,
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        SparsePoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(c: Q, arity: usize) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Mono::one(arity), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(Q::one(), arity)
    }

    pub fn var(i: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Mono(exps), c);
        p
    }

    pub fn from_linear_form(f: &LinearForm) -> Self {
        let n = f.len();
        let mut p = Self::zero(n);
        for (i, &c) in f.coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                p.add_term(Mono(e), q(c));
            }
        }
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Result<Self> {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityError { expected: arity, found: e.len() });
            }
            p.add_term(Mono(e), c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Mono) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, e: Mono, c: Q) {
        debug_assert_eq!(e.0.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &SparsePoly, k: &Q) {
        assert_eq!(self.arity, other.arity, "arity mismatch in polynomial sum");
        if k.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * k);
        }
    }

    pub fn scale(&self, k: &Q) -> SparsePoly {
        if k.is_zero() {
            return Self::zero(self.arity);
        }
        SparsePoly { arity: self.arity, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut acc = Self::one(self.arity);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// p(L₁,…,L_m) where each Lᵢ is a linear form in `target_arity` variables.
    pub fn substitute_linear(&self, forms: &[LinearForm], target_arity: usize) -> Result<SparsePoly> {
        if forms.len() != self.arity {
            return Err(Error::ArityError { expected: self.arity, found: forms.len() });
        }
        if let Some(f) = forms.iter().find(|f| f.len() != target_arity) {
            return Err(Error::ArityError { expected: target_arity, found: f.len() });
        }
        let polys: Vec<SparsePoly> = forms.iter().map(SparsePoly::from_linear_form).collect();
        Ok(self.compose(&polys, target_arity))
    }

    /// p(P₁,…,P_m) for arbitrary polynomials Pᵢ in `target_arity` variables.
    pub fn compose(&self, polys: &[SparsePoly], target_arity: usize) -> SparsePoly {
        assert_eq!(polys.len(), self.arity);
        let mut max_exp = vec![0u32; self.arity];
        for e in self.terms.keys() {
            for (m, &x) in max_exp.iter_mut().zip(&e.0) {
                *m = (*m).max(x);
            }
        }
        let powers: Vec<Vec<SparsePoly>> = polys
            .iter()
            .zip(&max_exp)
            .map(|(p, &m)| {
                let mut v = vec![SparsePoly::one(target_arity)];
                for k in 0..m as usize {
                    let next = &v[k] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = SparsePoly::zero(target_arity);
        for (e, c) in &self.terms {
            let mut t = SparsePoly::constant(c.clone(), target_arity);
            for (i, &x) in e.0.iter().enumerate() {
                if x > 0 {
                    t = &t * &powers[i][x as usize];
                }
            }
            out.add_assign_scaled(&t, &Q::one());
        }
        out
    }

    /// Places the variables of `self` at slots `offset..offset+arity` of a
    /// polynomial ring with `target_arity` variables.
    pub fn embed(&self, offset: usize, target_arity: usize) -> SparsePoly {
        assert!(offset + self.arity <= target_arity);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = vec![0; target_arity];
                v[offset..offset + self.arity].copy_from_slice(&e.0);
                (Mono(v), c.clone())
            })
            .collect();
        SparsePoly { arity: target_arity, terms }
    }

    /// Renames variable i to perm[i].
    pub fn permute_vars(&self, perm: &[usize]) -> SparsePoly {
        assert_eq!(perm.len(), self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = vec![0; self.arity];
                for (i, &x) in e.0.iter().enumerate() {
                    v[perm[i]] = x;
                }
                (Mono(v), c.clone())
            })
            .collect();
        SparsePoly { arity: self.arity, terms }
    }

    /// The unique q with q·form = self, when it exists.
    pub fn exact_divide(&self, form: &LinearForm) -> Result<SparsePoly> {
        if form.len() != self.arity {
            return Err(Error::ArityError { expected: self.arity, found: form.len() });
        }
        let j = form.coeffs.iter().position(|&c| c != 0).ok_or(Error::NotDivisible)?;
        let cj = q(form.coeffs[j]);
        let divisor = SparsePoly::from_linear_form(form);
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.arity);
        // Division with respect to a lex order placing x_j first: the leading
        // term of the divisor is c_j x_j.
        let key = |e: &Mono| {
            let mut k = Vec::with_capacity(e.0.len());
            k.push(e.0[j]);
            k.extend(e.0.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &x)| x));
            k
        };
        while !rem.is_zero() {
            let (lead, c) = rem.terms.iter().max_by(|a, b| key(a.0).cmp(&key(b.0))).map(|(e, c)| (e.clone(), c.clone())).expect("nonzero remainder");
            if lead.0[j] == 0 {
                return Err(Error::NotDivisible);
            }
            let mut e = lead.0.clone();
            e[j] -= 1;
            let t = SparsePoly::monomial(e, c / &cj);
            rem = &rem - &(&t * &divisor);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.arity);
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Monomials of total degree d in n variables, graded-lex descending.
    pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Mono(cur.clone()));
                return;
            }
            for k in (0..=left).rev() {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
        }
        if n == 0 {
            if d == 0 {
                out.push(Mono(vec![]));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, o: &SparsePoly) -> SparsePoly {
        let mut r = self.clone();
        r.add_assign_scaled(o, &Q::one());
        r
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, o: &SparsePoly) -> SparsePoly {
        let mut r = self.clone();
        r.add_assign_scaled(o, &-Q::one());
        r
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, o: &SparsePoly) -> SparsePoly {
        assert_eq!(self.arity, o.arity, "arity mismatch in polynomial product");
        let mut r = SparsePoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.mul(e2), c1 * c2);
            }
        }
        r
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePoly {
    /// Highest graded-lex term first, variables named x1, x2, ….
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;

    fn x(i: usize, n: usize) -> SparsePoly {
        SparsePoly::var(i, n)
    }

    #[test]
    fn substitute_examples() {
        let p = &x(0, 2) * &x(1, 2);
        let r = p.substitute_linear(&[LinearForm::new(vec![1, 1]), LinearForm::new(vec![1, 0])], 2).unwrap();
        let expect = &x(0, 2).pow(2) + &(&x(0, 2) * &x(1, 2));
        assert_eq!(r, expect);

        let p = &(&x(0, 2).pow(3) + &x(1, 2)) - &SparsePoly::constant(qf(1, 3), 2);
        let id = [LinearForm::unit(0, 2), LinearForm::unit(1, 2)];
        assert_eq!(p.substitute_linear(&id, 2).unwrap(), p);

        let p = x(0, 1).pow(2);
        assert_eq!(p.substitute_linear(&[LinearForm::new(vec![-1])], 1).unwrap(), p);
        assert!(matches!(p.substitute_linear(&[], 1), Err(Error::ArityError { .. })));
    }

    #[test]
    fn divide_examples() {
        let (u1, u2) = (x(0, 2), x(1, 2));
        let p = &(&u1 * &u2).scale(&q(2)) + &u2.pow(2);
        assert_eq!(p.exact_divide(&LinearForm::unit(1, 2)).unwrap(), &u1.scale(&q(2)) + &u2);
        assert!(SparsePoly::zero(2).exact_divide(&LinearForm::unit(0, 2)).unwrap().is_zero());
        let p = &u1.pow(2) - &u2.pow(2);
        assert_eq!(p.exact_divide(&LinearForm::new(vec![1, 1])).unwrap(), &u1 - &u2);
        let p = &u1.pow(2) + &u2;
        assert_eq!(p.exact_divide(&LinearForm::unit(0, 2)), Err(Error::NotDivisible));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(SparsePoly::monomials_of_degree(3, 2).len(), 6);
        assert_eq!(SparsePoly::monomials_of_degree(1, 4), vec![Mono(vec![4])]);
        assert_eq!(SparsePoly::monomials_of_degree(0, 0).len(), 1);
        assert!(SparsePoly::monomials_of_degree(0, 1).is_empty());
    }

    #[test]
    fn display_is_graded_lex() {
        let p = &(&x(0, 2).pow(2) - &x(1, 2)) + &SparsePoly::constant(qf(1, 2), 2);
        assert_eq!(p.to_string(), "x1^2 - x2 + 1/2");
    }
}
