//! Words of letters (form; σ), the four flexions on both sides, and the
//! arit / ari / preari operators.

use num_traits::One;

use crate::algebra::{LinearForm, Q};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::mould::{Mould, Side};

/// Default bound on the output depth of arit and ari.
pub const DEFAULT_MAX_DEPTH: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub form: LinearForm,
    pub sigma: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub side: Side,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty(side: Side) -> Self {
        Word { side, letters: Vec::new() }
    }

    pub fn new(side: Side, letters: Vec<Letter>) -> Self {
        Word { side, letters }
    }

    /// The standard word (x₁,…,x_m; σ₁,…,σ_m) in m ambient variables.
    pub fn standard(side: Side, sigmas: &[Elem]) -> Self {
        let m = sigmas.len();
        let letters = sigmas.iter().enumerate().map(|(i, &s)| Letter { form: LinearForm::unit(i, m), sigma: s }).collect();
        Word { side, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Result<Word> {
        same_side(self, o)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Ok(Word { side: self.side, letters })
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word { side: self.side, letters: self.letters[from..to].to_vec() }
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        self.letters.iter().map(|l| l.form.clone()).collect()
    }

    pub fn sigmas(&self) -> Vec<Elem> {
        self.letters.iter().map(|l| l.sigma).collect()
    }

    fn form_sum(&self) -> LinearForm {
        let n = self.letters.first().map_or(0, |l| l.form.len());
        self.letters.iter().fold(LinearForm::zero(n), |acc, l| &acc + &l.form)
    }

    fn sigma_product(&self, g: &Group) -> Elem {
        g.product(&self.sigmas())
    }
}

fn same_side(a: &Word, b: &Word) -> Result<()> {
    if a.side != b.side {
        return Err(Error::SideMismatch { expected: a.side.name(), found: b.side.name() });
    }
    Ok(())
}

/// Shared empty-word conventions: `modified` is returned unchanged when the
/// acting word is empty, and the result is empty when `modified` is empty.
fn flex(acting: &Word, modified: &Word, f: impl FnOnce(&mut Vec<Letter>)) -> Result<Word> {
    same_side(acting, modified)?;
    if acting.is_empty() || modified.is_empty() {
        return Ok(modified.clone());
    }
    let mut letters = modified.letters.clone();
    f(&mut letters);
    Ok(Word { side: modified.side, letters })
}

/// ur(β, α): modifies α using β.
pub fn flex_ur(g: &Group, beta: &Word, alpha: &Word) -> Result<Word> {
    flex(beta, alpha, |ls| match beta.side {
        Side::U => ls[0].form = &beta.form_sum() + &ls[0].form,
        Side::V => ls[0].sigma = g.mul(ls[0].sigma, beta.sigma_product(g)),
    })
}

/// ul(α, β): modifies α using β.
pub fn flex_ul(g: &Group, alpha: &Word, beta: &Word) -> Result<Word> {
    flex(beta, alpha, |ls| {
        let last = ls.len() - 1;
        match beta.side {
            Side::U => ls[last].form = &ls[last].form + &beta.form_sum(),
            Side::V => ls[last].sigma = g.mul(ls[last].sigma, beta.sigma_product(g)),
        }
    })
}

/// lr(β, α): modifies α using the last letter of β.
pub fn flex_lr(g: &Group, beta: &Word, alpha: &Word) -> Result<Word> {
    flex(beta, alpha, |ls| {
        let b = beta.letters.last().expect("nonempty");
        for l in ls.iter_mut() {
            match beta.side {
                Side::U => l.sigma = g.div(l.sigma, b.sigma),
                Side::V => l.form = &l.form - &b.form,
            }
        }
    })
}

/// ll(α, β): modifies α using the first letter of β.
pub fn flex_ll(g: &Group, alpha: &Word, beta: &Word) -> Result<Word> {
    flex(beta, alpha, |ls| {
        let b = &beta.letters[0];
        for l in ls.iter_mut() {
            match beta.side {
                Side::U => l.sigma = g.div(l.sigma, b.sigma),
                Side::V => l.form = &l.form - &b.form,
            }
        }
    })
}

fn check_pair(a: &Mould, b: &Mould, max_depth: usize) -> Result<()> {
    a.check_compat(b)?;
    let depth = a.max_depth() + b.max_depth();
    if depth > max_depth {
        return Err(Error::DepthGuard { depth, limit: max_depth });
    }
    Ok(())
}

/// arit(B)(A) computed by summing over the entries of A and B.
///
/// For a tri-factorization with block lengths (i, j, k), an entry τ of A of
/// length i+k and an entry ρ of B of length j determine the output σ-tuple
/// uniquely, so each pair of entries contributes to one output tuple.
/// Components of output depth above `cap` are skipped.
fn arit_capped(b: &Mould, a: &Mould, cap: usize) -> Mould {
    let g = a.group();
    let side = a.side();
    let mut r = Mould::zero(g, side);
    let one = Q::one();
    let minus = -Q::one();
    for (tau, pa) in a.entries() {
        let la = tau.len();
        for (rho, pb) in b.entries() {
            let j = rho.len();
            let m = la + j;
            if m > cap {
                continue;
            }
            let rho_prod = g.product(rho);
            // first sum: α = [0,i), β = [i,i+j), γ = [i+j,m), γ ≠ ∅
            for i in 0..la {
                let (a_forms, b_forms, sigma) = match side {
                    Side::U => {
                        let mut af: Vec<LinearForm> = (0..i).map(|t| LinearForm::unit(t, m)).collect();
                        af.push(LinearForm::range_sum(i, i + j + 1, m));
                        af.extend((i + j + 1..m).map(|t| LinearForm::unit(t, m)));
                        let bf: Vec<LinearForm> = (i..i + j).map(|t| LinearForm::unit(t, m)).collect();
                        let mut s = tau[..i].to_vec();
                        s.extend(rho.iter().map(|&x| g.mul(x, tau[i])));
                        s.extend_from_slice(&tau[i..]);
                        (af, bf, s)
                    }
                    Side::V => {
                        let af: Vec<LinearForm> = (0..i).chain(i + j..m).map(|t| LinearForm::unit(t, m)).collect();
                        let bf: Vec<LinearForm> = (i..i + j).map(|t| &LinearForm::unit(t, m) - &LinearForm::unit(i + j, m)).collect();
                        let mut s = tau[..i].to_vec();
                        s.extend_from_slice(rho);
                        s.push(g.div(tau[i], rho_prod));
                        s.extend_from_slice(&tau[i + 1..]);
                        (af, bf, s)
                    }
                };
                let pa_s = pa.substitute_linear(&a_forms, m).expect("arity");
                let pb_s = pb.substitute_linear(&b_forms, m).expect("arity");
                r.add_to(&sigma, &(&pa_s * &pb_s), &one);
            }
            // second sum: α = [0,i), β = [i,i+j), γ = [i+j,m), α ≠ ∅
            for i in 1..=la {
                let (a_forms, b_forms, sigma) = match side {
                    Side::U => {
                        let mut af: Vec<LinearForm> = (0..i - 1).map(|t| LinearForm::unit(t, m)).collect();
                        af.push(LinearForm::range_sum(i - 1, i + j, m));
                        af.extend((i + j..m).map(|t| LinearForm::unit(t, m)));
                        let bf: Vec<LinearForm> = (i..i + j).map(|t| LinearForm::unit(t, m)).collect();
                        let mut s = tau[..i].to_vec();
                        s.extend(rho.iter().map(|&x| g.mul(x, tau[i - 1])));
                        s.extend_from_slice(&tau[i..]);
                        (af, bf, s)
                    }
                    Side::V => {
                        let af: Vec<LinearForm> = (0..i).chain(i + j..m).map(|t| LinearForm::unit(t, m)).collect();
                        let bf: Vec<LinearForm> = (i..i + j).map(|t| &LinearForm::unit(t, m) - &LinearForm::unit(i - 1, m)).collect();
                        let mut s = tau[..i - 1].to_vec();
                        s.push(g.div(tau[i - 1], rho_prod));
                        s.extend_from_slice(rho);
                        s.extend_from_slice(&tau[i..]);
                        (af, bf, s)
                    }
                };
                let pa_s = pa.substitute_linear(&a_forms, m).expect("arity");
                let pb_s = pb.substitute_linear(&b_forms, m).expect("arity");
                r.add_to(&sigma, &(&pa_s * &pb_s), &minus);
            }
        }
    }
    r
}

/// arit(B)(A), with the depth guard.
pub fn arit(b: &Mould, a: &Mould) -> Result<Mould> {
    arit_with_guard(b, a, DEFAULT_MAX_DEPTH)
}

pub fn arit_with_guard(b: &Mould, a: &Mould, max_depth: usize) -> Result<Mould> {
    check_pair(a, b, max_depth)?;
    Ok(arit_capped(b, a, usize::MAX))
}

/// arit(B)(A) restricted to output depths ≤ `cap`.
pub fn arit_upto(b: &Mould, a: &Mould, cap: usize) -> Result<Mould> {
    a.check_compat(b)?;
    Ok(arit_capped(b, a, cap))
}

/// Reference implementation of arit(B)(A): evaluates the defining double sum
/// literally on the standard word of every σ-tuple, using the word flexions.
pub fn arit_by_words(b: &Mould, a: &Mould, max_out_depth: usize) -> Result<Mould> {
    a.check_compat(b)?;
    let g = a.group();
    let side = a.side();
    let mut r = Mould::zero(g, side);
    for m in 2..=max_out_depth {
        for sigma in crate::mould::tuples(g, m) {
            let w = Word::standard(side, &sigma);
            let mut total = crate::algebra::SparsePoly::zero(m);
            for i in 0..m {
                for j in 1..=m - i {
                    let (al, be, ga) = (w.slice(0, i), w.slice(i, i + j), w.slice(i + j, m));
                    if !ga.is_empty() {
                        let wa = al.concat(&flex_ur(g, &be, &ga)?)?;
                        let wb = flex_ll(g, &be, &ga)?;
                        let pa = a.eval_word(&wa.forms(), &wa.sigmas(), m);
                        let pb = b.eval_word(&wb.forms(), &wb.sigmas(), m);
                        total = &total + &(&pa * &pb);
                    }
                    if !al.is_empty() {
                        let wa = flex_ul(g, &al, &be)?.concat(&ga)?;
                        let wb = flex_lr(g, &al, &be)?;
                        let pa = a.eval_word(&wa.forms(), &wa.sigmas(), m);
                        let pb = b.eval_word(&wb.forms(), &wb.sigmas(), m);
                        total = &total - &(&pa * &pb);
                    }
                }
            }
            r.set(sigma, total);
        }
    }
    Ok(r)
}

/// ari(A,B) = arit(B)(A) − arit(A)(B) + [A,B].
pub fn ari(a: &Mould, b: &Mould) -> Result<Mould> {
    ari_with_guard(a, b, DEFAULT_MAX_DEPTH)
}

pub fn ari_with_guard(a: &Mould, b: &Mould, max_depth: usize) -> Result<Mould> {
    check_pair(a, b, max_depth)?;
    ari_upto(a, b, usize::MAX)
}

/// ari(A,B) restricted to output depths ≤ `cap`.
pub fn ari_upto(a: &Mould, b: &Mould, cap: usize) -> Result<Mould> {
    a.check_compat(b)?;
    let t1 = arit_capped(b, a, cap);
    let t2 = arit_capped(a, b, cap);
    let lu = truncate(&a.lu(b)?, cap);
    Ok(t1.add_scaled(&t2, &-Q::one()).add_scaled(&lu, &Q::one()))
}

/// preari(A,B) = arit(B)(A) + A×B.
pub fn preari(a: &Mould, b: &Mould) -> Result<Mould> {
    check_pair(a, b, DEFAULT_MAX_DEPTH)?;
    Ok(arit_capped(b, a, usize::MAX).add_scaled(&a.mu(b)?, &Q::one()))
}

/// Drops components of depth above `cap`.
pub fn truncate(m: &Mould, cap: usize) -> Mould {
    let mut r = Mould::zero(m.group(), m.side());
    r.set_depth0(m.depth0().clone());
    for (s, p) in m.entries() {
        if s.len() <= cap {
            r.set(s.clone(), p.clone());
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SparsePoly;

    fn u(i: usize, n: usize) -> SparsePoly {
        SparsePoly::var(i, n)
    }

    fn letter(form: Vec<i64>, s: u32) -> Letter {
        Letter { form: LinearForm::new(form), sigma: Elem(s) }
    }

    #[test]
    fn flexion_examples() {
        let g = Group::cyclic(5);
        let beta = Word::new(Side::U, vec![letter(vec![1, 0, 0], 2)]);
        let alpha = Word::new(Side::U, vec![letter(vec![0, 1, 0], 1), letter(vec![0, 0, 1], 3)]);
        let r = flex_ur(&g, &beta, &alpha).unwrap();
        assert_eq!(r.letters[0], letter(vec![1, 1, 0], 1));
        assert_eq!(r.letters[1], alpha.letters[1]);
        let r = flex_ll(&g, &alpha, &beta).unwrap();
        assert_eq!(r.sigmas(), vec![Elem(4), Elem(1)]);
        let e = Word::empty(Side::U);
        assert_eq!(flex_ur(&g, &e, &alpha).unwrap(), alpha);
        assert!(flex_ur(&g, &alpha, &e).unwrap().is_empty());
        assert_eq!(flex_ll(&g, &alpha, &e).unwrap(), alpha);
        assert!(flex_ll(&g, &e, &alpha).unwrap().is_empty());

        let bv = Word::new(Side::V, vec![letter(vec![1, 0], 2)]);
        let av = Word::new(Side::V, vec![letter(vec![0, 1], 1)]);
        assert_eq!(flex_ur(&g, &bv, &av).unwrap().letters[0], letter(vec![0, 1], 3));
        assert_eq!(flex_ll(&g, &av, &bv).unwrap().letters[0], letter(vec![-1, 1], 1));
        assert!(flex_ur(&g, &bv, &alpha).is_err());
    }

    fn triv(p: SparsePoly) -> Mould {
        Mould::single(&Group::trivial(), Side::U, vec![Elem::E; p.arity()], p)
    }

    #[test]
    fn arit_examples() {
        let a = triv(u(0, 1));
        let b = triv(u(0, 1).pow(2));
        let r = arit(&b, &a).unwrap();
        let expect = &(&u(0, 2) + &u(1, 2)) * &(&u(0, 2).pow(2) - &u(1, 2).pow(2));
        assert_eq!(r, triv(expect));
        assert!(r.component(1).is_none());
        assert_eq!(arit_by_words(&b, &a, 3).unwrap(), r);
    }

    #[test]
    fn ari_examples() {
        let a = triv(u(0, 1));
        let b = triv(u(0, 1).pow(2));
        let expect = &(&u(0, 2) * &u(1, 2)) * &(&u(1, 2) - &u(0, 2));
        assert_eq!(ari(&a, &b).unwrap(), triv(expect));
        assert!(ari(&a, &a).unwrap().is_zero());
        assert!(ari(&a, &Mould::zero(&Group::trivial(), Side::U)).unwrap().is_zero());
        let pre = preari(&a, &b).unwrap();
        let expect = &(&(&u(0, 2) + &u(1, 2)) * &(&u(0, 2).pow(2) - &u(1, 2).pow(2))) + &(&u(0, 2) * &u(1, 2).pow(2));
        assert_eq!(pre, triv(expect));
    }

    #[test]
    fn depth_two_closed_form() {
        let g = Group::cyclic(3);
        let mut a = Mould::zero(&g, Side::U);
        let mut b = Mould::zero(&g, Side::U);
        for s in g.elements() {
            a.set(vec![s], u(0, 1).scale(&Q::from_integer((s.0 as i64 + 1).into())));
            b.set(vec![s], &u(0, 1).pow(2) + &SparsePoly::constant(Q::from_integer((s.0 as i64).into()), 1));
        }
        let r = arit(&b, &a).unwrap();
        for s1 in g.elements() {
            for s2 in g.elements() {
                let t1 = &a.get_or_zero(&[s2]).substitute_linear(&[LinearForm::new(vec![1, 1])], 2).unwrap() * &b.get_or_zero(&[g.div(s1, s2)]).embed(0, 2);
                let t2 = &a.get_or_zero(&[s1]).substitute_linear(&[LinearForm::new(vec![1, 1])], 2).unwrap() * &b.get_or_zero(&[g.div(s2, s1)]).embed(1, 2);
                assert_eq!(r.get_or_zero(&[s1, s2]), &t1 - &t2);
            }
        }
        assert_eq!(arit_by_words(&b, &a, 2).unwrap(), r);
    }

    #[test]
    fn depth_guard() {
        let g = Group::trivial();
        let a = Mould::single(&g, Side::U, vec![Elem::E; 7], SparsePoly::one(7));
        assert!(matches!(ari(&a, &a), Err(Error::DepthGuard { .. })));
        assert!(ari_with_guard(&a, &a, 14).is_ok());
    }
}
