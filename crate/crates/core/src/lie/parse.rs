//! Lie expressions: `x`, `y<k>`, `y(r1,...,rk)`, `[a,b]`, `3/2*a`, sums.

use num_traits::{One, Signed, Zero};

use super::lyndon::{lyndon_coordinates, standard_bracket_string};
use super::ncpoly::NCPoly;
use crate::algebra::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};
use crate::group::Group;

struct Parser<'a> {
    group: &'a Group,
    s: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn integer(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.s[start] == '-') {
            self.pos = start;
            return Err(self.err("expected integer"));
        }
        Ok(self.s[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = NCPoly::zero(self.group);
        let mut sign = Q::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add_scaled(&t, &sign);
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = Q::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -Q::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let mut lit = self.integer()?;
            if self.peek() == Some('/') {
                self.pos += 1;
                lit.push('/');
                lit.push_str(&self.integer()?);
            }
            let k = parse_q(&lit)?;
            if k.is_zero() && self.peek() != Some('*') {
                return Ok(NCPoly::zero(self.group));
            }
            self.expect('*')?;
            return Ok(self.atom()?.scale(&k));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<NCPoly> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(NCPoly::x(self.group))
            }
            Some('y') => {
                self.pos += 1;
                let residues: Vec<i64> = match self.s.get(self.pos) {
                    Some('(') => {
                        self.pos += 1;
                        let mut v = Vec::new();
                        if self.peek() != Some(')') {
                            loop {
                                v.push(self.integer()?.parse().map_err(|_| self.err("bad residue"))?);
                                if self.peek() == Some(',') {
                                    self.pos += 1;
                                } else {
                                    break;
                                }
                            }
                        }
                        self.expect(')')?;
                        v
                    }
                    Some(c) if c.is_ascii_digit() => vec![self.integer()?.parse().map_err(|_| self.err("bad residue"))?],
                    _ => Vec::new(),
                };
                if residues.is_empty() && !self.group.is_trivial() {
                    return Err(self.err("y needs an index for a nontrivial group"));
                }
                if residues.len() == 1 && self.group.moduli().len() != 1 && !self.group.is_trivial() {
                    return Err(self.err("y<k> needs a single cyclic factor"));
                }
                let e = if self.group.is_trivial() && residues.iter().all(|&r| r == 0) { crate::group::Elem::E } else { self.group.elem(&residues)? };
                Ok(NCPoly::y(self.group, e))
            }
            Some('[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(a.bracket(&b))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(')')?;
                Ok(a)
            }
            _ => Err(self.err("expected x, y, '[' or '('")),
        }
    }
}

/// Parses a Lie expression over the given group.
pub fn parse_lie(group: &Group, s: &str) -> Result<NCPoly> {
    let mut p = Parser { group, s: s.chars().collect(), pos: 0 };
    let r = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

/// Canonical form: signed sum of standard Lyndon brackets. Fails on non-Lie input.
pub fn print_lie(h: &NCPoly) -> Result<String> {
    let coords = lyndon_coordinates(h)?;
    if coords.is_empty() {
        return Ok("0".into());
    }
    let mut out = String::new();
    for (i, (w, c)) in coords.iter().enumerate() {
        let br = standard_bracket_string(h.group(), w);
        let a = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&fmt_q(&a));
            out.push('*');
        }
        out.push_str(&br);
    }
    debug_assert!(!out.is_empty() && !coords.values().any(|c| c.is_zero()));
    Ok(out)
}
