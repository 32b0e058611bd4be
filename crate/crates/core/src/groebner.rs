//! Noncommutative Gröbner bases for path-algebra quotients.
//!
//! The engine runs overlap-based completion (Buchberger/Bergman style) on
//! two-sided ideals of a quiver path algebra, with words ordered by the
//! graded lexicographic order from [`crate::poly`]. Leading words of the
//! maintained basis are kept divisibility-free; rewriting matches leading
//! words as subwords via an Aho-Corasick automaton and always rewrites the
//! leftmost, earliest-ending occurrence, which keeps every reduction
//! deterministic.
//!
//! Completion is *certified*, not capped, whenever the system can prove all
//! unprocessed overlaps redundant:
//!
//! - For homogeneous ideals, once some degree `d0` has no normal words at
//!   all, every overlap of degree `> d0` reduces to zero automatically (its
//!   S-polynomial is homogeneous and every word that long is reducible), so
//!   the queue is pruned above `d0` and the exhaustion is exact.
//! - For inhomogeneous ideals the queue simply drains: once `d0` exists,
//!   every freshly reduced element consists of irreducible words, which all
//!   have length `< d0`, so leading words — and hence overlap degrees — stay
//!   bounded and only finitely many basis elements can appear.
//!
//! If neither argument applies before the (user or safety) degree cap, the
//! result is returned with [`Completion::DegreeCapped`] and downstream
//! consumers refuse to certify anything from it.
//!
//! Over non-field domains a leading coefficient must be a unit to normalize;
//! completion aborts with [`Error::NonUnitLead`] otherwise rather than
//! silently producing a weak basis.

use std::collections::BTreeMap;

use aho_corasick::{AhoCorasick, MatchKind};

use crate::poly::{Ctx, NCPoly, Word};
use crate::presentation::Presentation;
use crate::quiver::DoubledQuiver;
use crate::scalar::ScalarDomain;
use crate::{Error, Result};

/// Hard stop for overlap degree when no certification argument has kicked in
/// (prevents runaway completion on algebras of exponential growth).
pub const SAFETY_CAP: usize = 64;

/// Give up counting normal words in a degree past this many (the algebra is
/// then treated as "not known finite-dimensional").
const GROWTH_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, Default)]
pub struct GBOptions {
    /// Cap on processed overlap degree. `None` uses certification plus the
    /// safety cap.
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    /// Every overlap was processed or certified redundant.
    Completed,
    /// Overlaps above this degree were left unprocessed.
    DegreeCapped(usize),
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub s_polynomials: usize,
    pub reductions_to_zero: usize,
    pub max_overlap_degree: usize,
}

#[derive(Clone, Debug)]
struct GBElem<D: ScalarDomain> {
    /// Leading word; the implicit leading coefficient is 1.
    lt: Word,
    /// Strictly smaller terms, descending.
    tail: Vec<(Word, D::Elem)>,
}

impl<D: ScalarDomain> GBElem<D> {
    fn poly(&self, dom: &D) -> NCPoly<D> {
        let mut terms = Vec::with_capacity(1 + self.tail.len());
        terms.push((self.lt.clone(), dom.one()));
        terms.extend(self.tail.iter().cloned());
        NCPoly::from_terms(dom, terms)
    }
}

#[derive(Clone, Debug, Default)]
struct Matcher {
    ac: Option<AhoCorasick>,
    /// Pattern index -> basis element index.
    owners: Vec<usize>,
    max_len: usize,
}

impl Matcher {
    fn build<D: ScalarDomain>(elems: &[GBElem<D>], alive: &[bool]) -> Matcher {
        let mut patterns: Vec<&[u8]> = Vec::new();
        let mut owners = Vec::new();
        let mut max_len = 0;
        for (i, e) in elems.iter().enumerate() {
            if alive[i] {
                patterns.push(&e.lt.ls);
                owners.push(i);
                max_len = max_len.max(e.lt.len());
            }
        }
        let ac = if patterns.is_empty() {
            None
        } else {
            Some(
                AhoCorasick::builder()
                    .match_kind(MatchKind::Standard)
                    .build(&patterns)
                    .expect("automaton build"),
            )
        };
        Matcher { ac, owners, max_len }
    }

    /// Leftmost earliest-ending occurrence of any leading word.
    fn find(&self, word: &[u8]) -> Option<(usize, usize, usize)> {
        let ac = self.ac.as_ref()?;
        ac.find(word)
            .map(|m| (self.owners[m.pattern().as_usize()], m.start(), m.end() - m.start()))
    }

    /// Does any leading word occur in this window? Callers arrange that the
    /// window is the tail of a word whose earlier part is already known
    /// irreducible, so a hit means a match ending at the final letter.
    fn hits(&self, window: &[u8]) -> bool {
        match &self.ac {
            None => false,
            Some(ac) => ac.find(window).is_some(),
        }
    }
}

/// A (possibly capped) Gröbner basis for a presented quotient algebra.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<D: ScalarDomain> {
    dq: DoubledQuiver,
    dom: D,
    elems: Vec<GBElem<D>>,
    alive: Vec<bool>,
    matcher: Matcher,
    homogeneous: bool,
    pub outcome: Completion,
    /// Largest degree carrying a normal word, when the normal-word language
    /// is provably finite. Exact dimension data only when also complete.
    pub top_degree: Option<usize>,
    pub stats: Stats,
}

type OverlapKey = (usize, usize, usize, usize); // (degree, i, j, overlap length)
type Queue = std::collections::BinaryHeap<std::cmp::Reverse<OverlapKey>>;

/// Run completion on the presentation's relations.
pub fn complete<D: ScalarDomain>(
    pres: &Presentation<D>,
    opts: &GBOptions,
) -> Result<GroebnerBasis<D>> {
    let dom = pres.dom.clone();
    let mut gb = GroebnerBasis {
        dq: pres.dq.clone(),
        dom,
        elems: Vec::new(),
        alive: Vec::new(),
        matcher: Matcher::default(),
        homogeneous: true,
        outcome: Completion::Completed,
        top_degree: None,
        stats: Stats::default(),
    };
    // Split every relation into its Peirce components; the rewriting engine
    // relies on each element living between a fixed pair of vertices.
    let mut seeds = Vec::new();
    {
        let ctx = gb.ctx_internal();
        for rel in &pres.relations {
            for i in 0..ctx.dq.num_vertices() as u8 {
                for j in 0..ctx.dq.num_vertices() as u8 {
                    let comp = rel.poly.component(ctx, i, j);
                    if comp.is_zero() {
                        continue;
                    }
                    if comp.min_degree() == Some(0) {
                        return Err(Error::Unsupported(
                            "relations must lie in the ideal generated by the arrows \
                             (no vertex idempotent terms)"
                                .into(),
                        ));
                    }
                    seeds.push(comp);
                }
            }
        }
    }
    gb.homogeneous = seeds.iter().all(|s| s.is_homogeneous());
    let mut queue = Queue::new();
    for s in seeds {
        gb.add_poly(s, &mut queue)?;
    }
    gb.run(&mut queue, opts)?;
    gb.finish();
    Ok(gb)
}

impl<D: ScalarDomain> GroebnerBasis<D> {
    fn ctx_internal(&self) -> Ctx<'_, D> {
        Ctx::new(&self.dq, &self.dom)
    }

    pub fn ctx(&self) -> Ctx<'_, D> {
        self.ctx_internal()
    }

    pub fn quiver(&self) -> &DoubledQuiver {
        &self.dq
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn is_complete(&self) -> bool {
        self.outcome == Completion::Completed
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<Word> {
        self.elems
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| e.lt.clone())
            .collect()
    }

    pub fn elements(&self) -> Vec<NCPoly<D>> {
        self.elems
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| e.poly(&self.dom))
            .collect()
    }

    /// Fully reduce a polynomial; the result has no leading-word occurrences.
    pub fn normal_form(&self, p: &NCPoly<D>) -> NCPoly<D> {
        let terms = self.reduce_terms(p.terms().to_vec());
        NCPoly::from_terms(&self.dom, terms)
    }

    /// Ideal membership. Only meaningful as a negative answer when the basis
    /// is incomplete.
    pub fn is_member(&self, p: &NCPoly<D>) -> Result<bool> {
        let nf = self.normal_form(p);
        if nf.is_zero() {
            return Ok(true);
        }
        if !self.is_complete() {
            return Err(Error::Incomplete(
                "nonzero normal form against an incomplete basis does not certify \
                 non-membership"
                    .into(),
            ));
        }
        Ok(false)
    }

    fn reduce_terms(&self, terms: Vec<(Word, D::Elem)>) -> Vec<(Word, D::Elem)> {
        let dom = &self.dom;
        let mut work: BTreeMap<Word, D::Elem> = BTreeMap::new();
        for (w, c) in terms {
            merge_into(dom, &mut work, w, c);
        }
        let mut out = Vec::new();
        while let Some((w, c)) = work.pop_last() {
            if dom.is_zero(&c) {
                continue;
            }
            match self.matcher.find(&w.ls) {
                None => out.push((w, c)),
                Some((owner, start, len)) => {
                    let tail = self.elems[owner].tail.clone();
                    for (m, e) in &tail {
                        let spliced = splice(&w, start, len, m);
                        let coeff = dom.neg(&dom.mul(&c, e));
                        merge_into(dom, &mut work, spliced, coeff);
                    }
                }
            }
        }
        out
    }

    /// Reduce, then insert as a new basis element if nonzero.
    fn add_poly(&mut self, p: NCPoly<D>, queue: &mut Queue) -> Result<()> {
        let reduced = self.reduce_terms(p.into_terms());
        if reduced.is_empty() {
            self.stats.reductions_to_zero += 1;
            return Ok(());
        }
        let (lt, lc) = reduced[0].clone();
        debug_assert!(lt.len() >= 1, "ideal escaped the arrow ideal");
        let inv = self.dom.try_inv(&lc).ok_or_else(|| Error::NonUnitLead {
            domain: self.dom.name(),
            lead: self.dom.fmt_elem(&lc),
        })?;
        let tail: Vec<(Word, D::Elem)> = reduced[1..]
            .iter()
            .map(|(w, c)| (w.clone(), self.dom.mul(&inv, c)))
            .collect();
        let new_idx = self.elems.len();
        // Retire any element whose leading word the new one divides; their
        // polynomials re-enter reduction afterwards.
        let mut requeue = Vec::new();
        for i in 0..self.elems.len() {
            if self.alive[i] && contains(&self.elems[i].lt.ls, &lt.ls) {
                self.alive[i] = false;
                requeue.push(self.elems[i].poly(&self.dom));
            }
        }
        self.elems.push(GBElem { lt, tail });
        self.alive.push(true);
        self.matcher = Matcher::build(&self.elems, &self.alive);
        // Overlap pairs with every live element, both orientations.
        for i in 0..self.elems.len() {
            if !self.alive[i] {
                continue;
            }
            let (a, b) = (&self.elems[i].lt.ls, &self.elems[new_idx].lt.ls);
            for l in proper_overlaps(a, b) {
                queue.push(std::cmp::Reverse((a.len() + b.len() - l, i, new_idx, l)));
            }
            if i != new_idx {
                for l in proper_overlaps(b, a) {
                    queue.push(std::cmp::Reverse((a.len() + b.len() - l, new_idx, i, l)));
                }
            }
        }
        for p in requeue {
            self.add_poly(p, queue)?;
        }
        Ok(())
    }

    fn s_poly(&self, i: usize, j: usize, l: usize) -> NCPoly<D> {
        let dom = &self.dom;
        let ctx = self.ctx_internal();
        let (fi, fj) = (&self.elems[i], &self.elems[j]);
        // LT_i = u · o, LT_j = o · v with |o| = l.
        let suffix = {
            let ls = fj.lt.ls[l..].to_vec();
            let vertex = ctx.word_target(&Word { vertex: fj.lt.vertex, ls: fj.lt.ls[..l].to_vec() });
            Word { vertex, ls }
        };
        let prefix = Word { vertex: fi.lt.vertex, ls: fi.lt.ls[..fi.lt.len() - l].to_vec() };
        let left = fi.poly(dom).mul(ctx, &NCPoly::monomial(dom, suffix, dom.one()), None);
        let right = NCPoly::monomial(dom, prefix, dom.one()).mul(ctx, &fj.poly(dom), None);
        left.sub(dom, &right)
    }

    fn run(&mut self, queue: &mut Queue, opts: &GBOptions) -> Result<()> {
        let mut frontier = 0usize;
        let mut d0: Option<usize> = None;
        loop {
            let Some(&std::cmp::Reverse((deg, i, j, l))) = queue.peek() else {
                break;
            };
            if !self.alive[i] || !self.alive[j] {
                queue.pop();
                continue;
            }
            if deg > frontier {
                frontier = deg;
                if self.homogeneous {
                    d0 = self.detect_d0(opts.max_degree.unwrap_or(SAFETY_CAP) + 1);
                }
            }
            if self.homogeneous {
                if let Some(d0) = d0 {
                    if deg > d0 {
                        // Certified redundant: no normal words at this degree,
                        // so the homogeneous S-polynomial must reduce to zero.
                        queue.pop();
                        continue;
                    }
                }
            }
            let cap = opts.max_degree.unwrap_or(SAFETY_CAP);
            if deg > cap {
                self.outcome = Completion::DegreeCapped(cap);
                break;
            }
            queue.pop();
            self.stats.s_polynomials += 1;
            self.stats.max_overlap_degree = self.stats.max_overlap_degree.max(deg);
            let s = self.s_poly(i, j, l);
            self.add_poly(s, queue)?;
        }
        Ok(())
    }

    /// Smallest degree (up to `limit`) with zero normal words, if any.
    fn detect_d0(&self, limit: usize) -> Option<usize> {
        let counts = self.normal_word_counts(limit)?;
        counts.iter().position(|&c| c == 0)
    }

    /// Number of normal words per degree, `0..=limit`. `None` when a degree
    /// exceeds the growth limit before any degree empties out.
    fn normal_word_counts(&self, limit: usize) -> Option<Vec<usize>> {
        let mut counts = Vec::with_capacity(limit + 1);
        let mut layer: Vec<Word> =
            (0..self.dq.num_vertices() as u8).map(Word::idempotent).collect();
        let ctx = self.ctx_internal();
        for _ in 0..=limit {
            counts.push(layer.len());
            if layer.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                let end = ctx.word_target(w);
                for (rank, letter) in self.dq.letters().iter().enumerate() {
                    if letter.source != end {
                        continue;
                    }
                    let mut ls = Vec::with_capacity(w.ls.len() + 1);
                    ls.extend_from_slice(&w.ls);
                    ls.push(rank as u8);
                    let lo = ls.len().saturating_sub(self.matcher.max_len);
                    if self.matcher.hits(&ls[lo..]) {
                        continue;
                    }
                    next.push(Word { vertex: w.vertex, ls });
                }
            }
            if next.len() > GROWTH_LIMIT {
                return None;
            }
            layer = next;
        }
        Some(counts)
    }

    fn finish(&mut self) {
        // Tail-reduce every element against the others; leading words are
        // divisibility-free, so they survive unchanged.
        for i in 0..self.elems.len() {
            if !self.alive[i] {
                continue;
            }
            self.alive[i] = false;
            self.matcher = Matcher::build(&self.elems, &self.alive);
            let reduced = self.reduce_terms(self.elems[i].poly(&self.dom).into_terms());
            debug_assert_eq!(reduced.first().map(|(w, _)| w), Some(&self.elems[i].lt));
            self.elems[i].tail = reduced[1..].to_vec();
            self.alive[i] = true;
        }
        // Compact and order by leading word.
        let mut live: Vec<GBElem<D>> = self
            .elems
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| e.clone())
            .collect();
        live.sort_by(|a, b| a.lt.cmp(&b.lt));
        self.alive = vec![true; live.len()];
        self.elems = live;
        self.matcher = Matcher::build(&self.elems, &self.alive);
        if let Some(d0) = self.detect_d0(SAFETY_CAP) {
            self.top_degree = Some(d0.saturating_sub(1));
        }
    }

    /// Normal words per degree up to `max` (inclusive). For a complete basis
    /// these count an exact linear basis of the quotient; for an incomplete
    /// one they are upper bounds.
    pub fn dimensions(&self, max: usize) -> Result<Vec<usize>> {
        self.normal_word_counts(max)
            .map(|mut c| {
                c.resize(max + 1, 0);
                c
            })
            .ok_or_else(|| {
                Error::DegreeCap(GROWTH_LIMIT)
            })
    }

    /// All normal words, grouped by degree, up to `max` (or the detected top
    /// degree when omitted).
    pub fn basis_words(&self, max: Option<usize>) -> Result<Vec<Vec<Word>>> {
        let limit = match (max, self.top_degree) {
            (Some(m), _) => m,
            (None, Some(t)) => t,
            (None, None) => {
                return Err(Error::Unsupported(
                    "no finite top degree detected; pass an explicit degree bound".into(),
                ))
            }
        };
        let ctx = self.ctx_internal();
        let mut layers: Vec<Vec<Word>> = Vec::with_capacity(limit + 1);
        let mut layer: Vec<Word> =
            (0..self.dq.num_vertices() as u8).map(Word::idempotent).collect();
        for _ in 0..=limit {
            let mut next = Vec::new();
            for w in &layer {
                let end = ctx.word_target(w);
                for (rank, letter) in self.dq.letters().iter().enumerate() {
                    if letter.source != end {
                        continue;
                    }
                    let mut ls = Vec::with_capacity(w.ls.len() + 1);
                    ls.extend_from_slice(&w.ls);
                    ls.push(rank as u8);
                    let lo = ls.len().saturating_sub(self.matcher.max_len);
                    if self.matcher.hits(&ls[lo..]) {
                        continue;
                    }
                    next.push(Word { vertex: w.vertex, ls });
                }
            }
            if next.len() > GROWTH_LIMIT {
                return Err(Error::DegreeCap(GROWTH_LIMIT));
            }
            layers.push(std::mem::replace(&mut layer, next));
        }
        for l in &mut layers {
            l.sort();
        }
        Ok(layers)
    }

    /// Dimensions of the two graded spaces controlling degree-by-degree
    /// corrections of a generator map: the first component sums, over every
    /// letter `a`, the dimension of the block `e_{s(a)} A e_{t(a)}` in
    /// degrees at least 3 (the space a correction term for `a` can live in);
    /// the second sums, over every vertex `i`, the dimension of the cycle
    /// block `e_i A e_i` in degrees at least 4 (the space the corrected
    /// relation components land in). Requires a complete basis with a finite
    /// top degree.
    pub fn corrected_space_dims(&self) -> Result<(usize, usize)> {
        if !self.is_complete() {
            return Err(Error::Incomplete(
                "corrected-space dimensions need a certified-complete basis".into(),
            ));
        }
        let ctx = self.ctx_internal();
        let layers = self.basis_words(None)?;
        let mut per_block: BTreeMap<(u8, u8), usize> = BTreeMap::new();
        let mut cycles = 0usize;
        for (degree, layer) in layers.iter().enumerate() {
            for w in layer {
                let (s, t) = (w.vertex, ctx.word_target(w));
                if degree >= 3 {
                    *per_block.entry((s, t)).or_insert(0) += 1;
                }
                if degree >= 4 && s == t {
                    cycles += 1;
                }
            }
        }
        let generators = self
            .dq
            .letters()
            .iter()
            .map(|l| per_block.get(&(l.source, l.target)).copied().unwrap_or(0))
            .sum();
        Ok((generators, cycles))
    }
}

fn merge_into<D: ScalarDomain>(
    dom: &D,
    map: &mut BTreeMap<Word, D::Elem>,
    w: Word,
    c: D::Elem,
) {
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let sum = dom.add(e.get(), &c);
            if dom.is_zero(&sum) {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Replace `w[start .. start+len]` by the letters of `m`.
fn splice(w: &Word, start: usize, len: usize, m: &Word) -> Word {
    let mut ls = Vec::with_capacity(w.ls.len() - len + m.ls.len());
    ls.extend_from_slice(&w.ls[..start]);
    ls.extend_from_slice(&m.ls);
    ls.extend_from_slice(&w.ls[start + len..]);
    Word { vertex: w.vertex, ls }
}

fn contains(haystack: &[u8], needle: &[u8]) -> bool {
    !needle.is_empty()
        && haystack.len() >= needle.len()
        && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Lengths `l` such that the last `l` letters of `a` equal the first `l` of
/// `b`, proper on both sides.
fn proper_overlaps(a: &[u8], b: &[u8]) -> Vec<usize> {
    (1..a.len().min(b.len()))
        .filter(|&l| a[a.len() - l..] == b[..l])
        .collect()
}
