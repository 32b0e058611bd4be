//! Words (paths) and noncommutative polynomials over a quiver alphabet.
//!
//! A [`Word`] is a composable string of letters, stored as ranks into the
//! doubled quiver's ordered alphabet, plus a start vertex so that paths of
//! length zero (the vertex idempotents `e_v`) are first-class. Words compare
//! by graded lexicographic order: first by length, then letter-by-letter in
//! the alphabet order, with degree-zero words ordered by vertex label.
//!
//! A polynomial is a coefficient-sorted term list over a [`ScalarDomain`];
//! every operation that needs the quiver or the domain takes a [`Ctx`].

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::quiver::DoubledQuiver;
use crate::scalar::ScalarDomain;
use crate::{Error, Result};

/// A path in the doubled quiver, possibly of length zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    /// Dense index of the start vertex; redundant when `ls` is nonempty.
    pub vertex: u8,
    /// Letter ranks, left to right in composition order.
    pub ls: Vec<u8>,
}

impl Word {
    pub fn idempotent(vertex: u8) -> Self {
        Word { vertex, ls: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.ls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ls.is_empty()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ls
            .len()
            .cmp(&other.ls.len())
            .then_with(|| self.ls.cmp(&other.ls))
            .then_with(|| self.vertex.cmp(&other.vertex))
    }
}

/// Shared context: the alphabet plus the coefficient domain.
pub struct Ctx<'a, D: ScalarDomain> {
    pub dq: &'a DoubledQuiver,
    pub dom: &'a D,
}

impl<'a, D: ScalarDomain> Clone for Ctx<'a, D> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<'a, D: ScalarDomain> Copy for Ctx<'a, D> {}

impl<'a, D: ScalarDomain> Ctx<'a, D> {
    pub fn new(dq: &'a DoubledQuiver, dom: &'a D) -> Self {
        Ctx { dq, dom }
    }

    pub fn word_source(&self, w: &Word) -> u8 {
        w.vertex
    }

    pub fn word_target(&self, w: &Word) -> u8 {
        match w.ls.last() {
            Some(&l) => self.dq.letter(l).target,
            None => w.vertex,
        }
    }

    /// Concatenate when the paths compose; `None` otherwise.
    pub fn compose(&self, u: &Word, v: &Word) -> Option<Word> {
        if self.word_target(u) != v.vertex {
            return None;
        }
        let mut ls = Vec::with_capacity(u.ls.len() + v.ls.len());
        ls.extend_from_slice(&u.ls);
        ls.extend_from_slice(&v.ls);
        Some(Word { vertex: u.vertex, ls })
    }

    pub fn letter_word(&self, rank: u8) -> Word {
        Word { vertex: self.dq.letter(rank).source, ls: vec![rank] }
    }

    /// The involution: reverse the path and dualize each letter.
    pub fn word_star(&self, w: &Word) -> Result<Word> {
        let mut ls = Vec::with_capacity(w.ls.len());
        for &l in w.ls.iter().rev() {
            let d = self
                .dq
                .dual_rank(l)
                .ok_or_else(|| Error::Unsupported("involution needs a doubled alphabet".into()))?;
            ls.push(d);
        }
        Ok(Word { vertex: self.word_target(w), ls })
    }

    pub fn word_string(&self, w: &Word) -> String {
        if w.ls.is_empty() {
            return format!("e_{}", self.dq.vertex_label(w.vertex));
        }
        let names: Vec<&str> =
            w.ls.iter().map(|&l| self.dq.letter(l).name.as_str()).collect();
        names.join("*")
    }
}

/// Noncommutative polynomial: terms sorted in strictly descending word order,
/// all coefficients nonzero.
#[derive(Clone, Debug)]
pub struct NCPoly<D: ScalarDomain> {
    terms: Vec<(Word, D::Elem)>,
}

impl<D: ScalarDomain> PartialEq for NCPoly<D> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl<D: ScalarDomain> Eq for NCPoly<D> {}

impl<D: ScalarDomain> NCPoly<D> {
    pub fn zero() -> Self {
        NCPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Build from arbitrary (word, coeff) pairs; sorts and merges.
    pub fn from_terms(dom: &D, terms: Vec<(Word, D::Elem)>) -> Self {
        let mut ts = terms;
        ts.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Word, D::Elem)> = Vec::with_capacity(ts.len());
        for (w, c) in ts {
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => *lc = dom.add(lc, &c),
                _ => out.push((w, c)),
            }
        }
        out.retain(|(_, c)| !dom.is_zero(c));
        NCPoly { terms: out }
    }

    pub fn monomial(dom: &D, w: Word, c: D::Elem) -> Self {
        if dom.is_zero(&c) {
            Self::zero()
        } else {
            NCPoly { terms: vec![(w, c)] }
        }
    }

    pub fn idempotent(dom: &D, vertex: u8) -> Self {
        Self::monomial(dom, Word::idempotent(vertex), dom.one())
    }

    pub fn letter(ctx: Ctx<'_, D>, rank: u8) -> Self {
        Self::monomial(ctx.dom, ctx.letter_word(rank), ctx.dom.one())
    }

    /// The multiplicative identity: the sum of all vertex idempotents.
    pub fn identity(ctx: Ctx<'_, D>) -> Self {
        let terms = (0..ctx.dq.num_vertices() as u8)
            .map(|v| (Word::idempotent(v), ctx.dom.one()))
            .collect();
        Self::from_terms(ctx.dom, terms)
    }

    pub fn terms(&self) -> &[(Word, D::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Word, D::Elem)> {
        self.terms
    }

    /// Leading (largest) term.
    pub fn leading(&self) -> Option<&(Word, D::Elem)> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(w, _)| w.len())
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.last().map(|(w, _)| w.len())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((w, _)) => {
                let d = w.len();
                self.terms.iter().all(|(u, _)| u.len() == d)
            }
        }
    }

    pub fn coefficient_of(&self, w: &Word) -> Option<&D::Elem> {
        self.terms
            .binary_search_by(|(u, _)| w.cmp(u))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn add(&self, dom: &D, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match other.terms[j].0.cmp(&self.terms[i].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = dom.add(&self.terms[i].1, &other.terms[j].1);
                    if !dom.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        NCPoly { terms: out }
    }

    pub fn neg(&self, dom: &D) -> Self {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), dom.neg(c))).collect(),
        }
    }

    pub fn sub(&self, dom: &D, other: &Self) -> Self {
        self.add(dom, &other.neg(dom))
    }

    pub fn scale(&self, dom: &D, c: &D::Elem) -> Self {
        if dom.is_zero(c) {
            return Self::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), dom.mul(c, d))).collect(),
        }
    }

    /// Product, dropping composites and (optionally) words longer than `cap`.
    /// Capping is only sound in quotients that vanish above `cap`.
    pub fn mul(&self, ctx: Ctx<'_, D>, other: &Self, cap: Option<usize>) -> Self {
        let mut terms = Vec::new();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                if let Some(limit) = cap {
                    if u.len() + v.len() > limit {
                        continue;
                    }
                }
                if let Some(w) = ctx.compose(u, v) {
                    terms.push((w, ctx.dom.mul(c, d)));
                }
            }
        }
        Self::from_terms(ctx.dom, terms)
    }

    pub fn pow(&self, ctx: Ctx<'_, D>, n: usize, cap: Option<usize>) -> Self {
        let mut acc = Self::identity(ctx);
        for _ in 0..n {
            acc = acc.mul(ctx, self, cap);
        }
        acc
    }

    /// Apply the involution termwise.
    pub fn star(&self, ctx: Ctx<'_, D>) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            terms.push((ctx.word_star(w)?, c.clone()));
        }
        Ok(Self::from_terms(ctx.dom, terms))
    }

    /// Peirce component `e_i * p * e_j` (dense vertex indices).
    pub fn component(&self, ctx: Ctx<'_, D>, source: u8, target: u8) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.vertex == source && ctx.word_target(w) == target)
                .cloned()
                .collect(),
        }
    }

    /// Terms of the given path degree.
    pub fn degree_component(&self, d: usize) -> Self {
        NCPoly {
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).cloned().collect(),
        }
    }

    /// Drop every term of degree greater than `cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        NCPoly {
            terms: self.terms.iter().filter(|(w, _)| w.len() <= cap).cloned().collect(),
        }
    }

    /// Re-express the coefficients in another domain, failing when some
    /// coefficient has no image there (e.g. 1/2 into the integers).
    pub fn convert<E: ScalarDomain>(&self, dom: &D, target: &E) -> crate::Result<NCPoly<E>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let image = target.from_ratio(&dom.to_ratio(c))?;
            if !target.is_zero(&image) {
                terms.push((w.clone(), image));
            }
        }
        Ok(NCPoly { terms })
    }

    /// Render in the expression syntax; round-trips through the parser.
    pub fn display(&self, ctx: Ctx<'_, D>) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let s = ctx.dom.fmt_elem(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let ws = ctx.word_string(w);
            if mag == "1" {
                out.push_str(&ws);
            } else {
                let _ = write!(out, "{mag}*{ws}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{builtin_dynkin, DoubledQuiver, DynkinType};
    use crate::scalar::Rationals;

    fn a2() -> DoubledQuiver {
        DoubledQuiver::double(builtin_dynkin(DynkinType::A, 2).unwrap()).unwrap()
    }

    #[test]
    fn word_order_is_graded_lexicographic() {
        let dq = DoubledQuiver::double(builtin_dynkin(DynkinType::D, 4).unwrap()).unwrap();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let a = dq.arrow_rank("a").unwrap();
        let b = dq.arrow_rank("b").unwrap();
        let astar = dq.dual_rank(a).unwrap();
        let bstar = dq.dual_rank(b).unwrap();
        let alpha = ctx.compose(&ctx.letter_word(astar), &ctx.letter_word(a)).unwrap();
        let beta = ctx.compose(&ctx.letter_word(bstar), &ctx.letter_word(b)).unwrap();
        assert!(alpha < beta, "a*a < b*b in the default order");
        assert!(Word::idempotent(0) < ctx.letter_word(a));
        assert!(Word::idempotent(0) < Word::idempotent(1));
        let aa = ctx.compose(&alpha, &alpha).unwrap();
        assert!(beta < aa, "length dominates");
    }

    #[test]
    fn arithmetic_on_a2() {
        let dq = a2();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let a = NCPoly::letter(ctx, dq.arrow_rank("a_1").unwrap());
        let astar = NCPoly::letter(ctx, dq.dual_rank(dq.arrow_rank("a_1").unwrap()).unwrap());
        // (1 + a)(1 + a*) = 1 + a + a* + a a*
        let one = NCPoly::identity(ctx);
        let left = one.add(&dom, &a);
        let right = one.add(&dom, &astar);
        let prod = left.mul(ctx, &right, None);
        assert_eq!(prod.terms().len(), 2 + 1 + 1 + 1);
        let aastar = a.mul(ctx, &astar, None);
        assert_eq!(aastar.terms().len(), 1);
        // a* a composes (2 -> 1 -> 2), a a does not.
        assert!(!astar.mul(ctx, &a, None).is_zero());
        assert!(a.mul(ctx, &a, None).is_zero());
        // Identity is the unit.
        assert_eq!(one.mul(ctx, &prod, None), prod);
        assert_eq!(prod.mul(ctx, &one, None), prod);
    }

    #[test]
    fn involution_reverses_words() {
        let dq = a2();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let a = dq.arrow_rank("a_1").unwrap();
        let astar = dq.dual_rank(a).unwrap();
        let w = ctx.compose(&ctx.letter_word(a), &ctx.letter_word(astar)).unwrap();
        let ws = ctx.word_star(&w).unwrap();
        assert_eq!(ws, w, "(a a*)* = a a*");
        let u = ctx.letter_word(a);
        assert_eq!(ctx.word_star(&u).unwrap(), ctx.letter_word(astar));
        let p = NCPoly::letter(ctx, a);
        assert_eq!(p.star(ctx).unwrap().star(ctx).unwrap(), p);
    }

    #[test]
    fn display_is_stable() {
        let dq = a2();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let a = NCPoly::letter(ctx, dq.arrow_rank("a_1").unwrap());
        let astar = NCPoly::letter(ctx, dq.dual_rank(dq.arrow_rank("a_1").unwrap()).unwrap());
        let half = dom.from_i64(1);
        let p = a
            .mul(ctx, &astar, None)
            .sub(&dom, &NCPoly::monomial(&dom, Word::idempotent(0), half));
        assert_eq!(p.display(ctx), "a_1*a_1* - e_1");
        assert_eq!(NCPoly::<Rationals>::zero().display(ctx), "0");
    }

    #[test]
    fn truncated_product_drops_long_words() {
        let dq = a2();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let a = NCPoly::letter(ctx, dq.arrow_rank("a_1").unwrap());
        let astar = NCPoly::letter(ctx, dq.dual_rank(dq.arrow_rank("a_1").unwrap()).unwrap());
        let cyc = a.mul(ctx, &astar, None); // a a* at vertex 1
        let sq = cyc.mul(ctx, &cyc, Some(2));
        assert!(sq.is_zero());
        let sq_full = cyc.mul(ctx, &cyc, None);
        assert_eq!(sq_full.degree(), Some(4));
    }
}
