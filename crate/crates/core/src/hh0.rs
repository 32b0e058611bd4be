//! Trace space (zeroth Hochschild homology) of presented quotient algebras.
//!
//! For a quotient A = kQ/I with a certified finite normal-word basis, the
//! commutator subspace is spanned modulo I by the reduced commutators
//! [u, g] = nf(u g) - nf(g u), where u runs over positive-degree normal words
//! and g over single letters: bilinearity plus the identity
//! [x, yz] = [xy, z] + [zx, y] reduce commutators of arbitrary normal-word
//! pairs to this set, and reducing a first argument modulo I only changes a
//! row by elements of I. A word between two distinct vertices is itself a
//! commutator ([u, e] = u when e is the idempotent at the word's target), so
//! the quotient A/(\[A,A\] + I) is carried by the vertex idempotents — a free
//! block of rank |Q_0| that no row can touch — together with the cycle
//! normal words modulo the commutator rows.
//!
//! Over a field the row space is eliminated directly; over the integers the
//! same rows feed a Smith normal form, which certifies torsion exactly, or a
//! multi-prime comparison of dimensions over Q and GF(p) when an integral
//! Gröbner basis is out of reach.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::groebner::{complete, GBOptions, GroebnerBasis};
use crate::poly::{NCPoly, Word};
use crate::presentation::Presentation;
use crate::scalar::{Integers, PrimeField, Rationals, ScalarDomain};
use crate::snf;
use crate::{Error, Result};

/// Index of the lexicographically minimal rotation of `s` (Booth's
/// algorithm, linear time). Ties between equal rotations may resolve to any
/// of the tied indices; the rotated sequence itself is canonical.
pub fn minimal_rotation(s: &[u8]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// A cycle modulo rotation, stored as the Booth-canonical representative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclicClass {
    word: Word,
}

impl CyclicClass {
    /// Canonicalize a cycle word; errors when the word is not a cycle.
    pub fn new(dq: &crate::quiver::DoubledQuiver, w: &Word) -> Result<Self> {
        let target = match w.ls.last() {
            Some(&l) => dq.letter(l).target,
            None => w.vertex,
        };
        if target != w.vertex {
            return Err(Error::Unsupported(format!(
                "cyclic classes need cycles; got a path {} -> {}",
                dq.vertex_label(w.vertex),
                dq.vertex_label(target)
            )));
        }
        let k = minimal_rotation(&w.ls);
        let mut ls = Vec::with_capacity(w.ls.len());
        ls.extend_from_slice(&w.ls[k..]);
        ls.extend_from_slice(&w.ls[..k]);
        let vertex = match ls.first() {
            Some(&l) => dq.letter(l).source,
            None => w.vertex,
        };
        Ok(CyclicClass { word: Word { vertex, ls } })
    }

    pub fn representative(&self) -> &Word {
        &self.word
    }
}

/// Distinct rotation classes of the positive-degree normal cycle words,
/// in ascending representative order.
pub fn cyclic_classes<D: ScalarDomain>(gb: &GroebnerBasis<D>) -> Result<Vec<CyclicClass>> {
    let mut set = std::collections::BTreeSet::new();
    for w in cycle_columns(gb)? {
        set.insert(CyclicClass::new(gb.quiver(), &w)?);
    }
    Ok(set.into_iter().collect())
}

/// How a trace-space report was computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Hh0Method {
    /// Linear algebra over a field: exact graded or filtered dimensions.
    FieldLinearAlgebra,
    /// Smith normal form of the integral commutator lattice: exact torsion.
    IntegralSmith,
    /// Dimension comparison over Q and GF(p): torsion counts with exponents
    /// known only to be at least one.
    MultiPrime,
}

/// One torsion summand of an integral trace space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TorsionSummand {
    /// A cyclic summand Z/d with d certified exactly.
    Cyclic(BigInt),
    /// A summand Z/p^e with e >= 1; the exponent is not certified.
    PrimePowerAtLeast(u64),
}

impl TorsionSummand {
    pub fn describe(&self) -> String {
        match self {
            TorsionSummand::Cyclic(d) => format!("Z/{d}"),
            TorsionSummand::PrimePowerAtLeast(p) => format!("Z/{p}^e (e>=1)"),
        }
    }
}

/// Data attached to one path degree.
#[derive(Clone, PartialEq, Debug)]
pub struct DegreeEntry {
    pub degree: usize,
    /// Dimension over a field, free rank over the integers.
    pub free_rank: usize,
    /// Torsion placed at this degree (graded integral computations only).
    pub torsion: Vec<TorsionSummand>,
}

/// The trace space of a quotient algebra.
///
/// The degree-zero block has rank `vertex_rank` (one class per vertex
/// idempotent) in every case; `entries` lists the positive degrees carrying
/// anything. When `graded` is false the algebra is filtered rather than
/// graded by path length, and the per-degree split is the (non-canonical)
/// length-filtration readout; the totals are canonical regardless.
#[derive(Clone, PartialEq, Debug)]
pub struct Hh0Report {
    pub domain: String,
    pub method: Hh0Method,
    pub graded: bool,
    pub vertex_rank: usize,
    pub entries: Vec<DegreeEntry>,
    /// `vertex_rank` plus all positive-degree free ranks.
    pub total_free: usize,
    /// Every torsion summand, ordered by degree of attachment.
    pub torsion: Vec<TorsionSummand>,
}

impl Hh0Report {
    /// Total dimension over a field; free rank over the integers.
    pub fn total(&self) -> usize {
        self.total_free
    }

    /// Does anything live above degree zero (free or torsion)?
    pub fn positive_part_nonzero(&self) -> bool {
        self.total_free > self.vertex_rank || !self.torsion.is_empty()
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let noun = match self.method {
            Hh0Method::FieldLinearAlgebra => "dimension",
            _ => "free rank",
        };
        let mut s = format!("{} {} (vertex block {})", noun, self.total_free, self.vertex_rank);
        let positives: Vec<String> = self
            .entries
            .iter()
            .filter(|e| e.free_rank > 0)
            .map(|e| format!("degree {}: {}", e.degree, e.free_rank))
            .collect();
        if !positives.is_empty() {
            s.push_str(&format!("; positive part {}", positives.join(", ")));
            if !self.graded {
                s.push_str(" [length filtration]");
            }
        }
        if !self.torsion.is_empty() {
            let ts: Vec<String> = self.torsion.iter().map(|t| t.describe()).collect();
            s.push_str(&format!("; torsion {}", ts.join(" + ")));
            let placed: Vec<String> = self
                .entries
                .iter()
                .filter(|e| !e.torsion.is_empty())
                .map(|e| {
                    let ds: Vec<String> = e.torsion.iter().map(|t| t.describe()).collect();
                    format!("{} at degree {}", ds.join(" + "), e.degree)
                })
                .collect();
            if !placed.is_empty() {
                s.push_str(&format!(" ({})", placed.join("; ")));
            }
        }
        s
    }
}

/// The positive-degree normal cycle words, ascending in word order (so
/// grouped by degree).
fn cycle_columns<D: ScalarDomain>(gb: &GroebnerBasis<D>) -> Result<Vec<Word>> {
    if !gb.is_complete() {
        return Err(Error::Incomplete(
            "trace-space computations need a certified complete basis".into(),
        ));
    }
    let ctx = gb.ctx();
    let layers = gb.basis_words(None)?;
    let mut cols = Vec::new();
    for layer in layers.iter().skip(1) {
        for w in layer {
            if ctx.word_target(w) == w.vertex {
                cols.push(w.clone());
            }
        }
    }
    Ok(cols)
}

/// Sparse commutator rows over the cycle columns: for every positive normal
/// word u and letter g composable both ways, the row nf(u g) - nf(g u).
/// Every term of every row is a positive-degree cycle normal word, so the
/// rows never touch the degree-zero block (asserted below).
fn commutator_rows<D: ScalarDomain>(
    gb: &GroebnerBasis<D>,
    cols: &[Word],
) -> Result<Vec<Vec<(usize, D::Elem)>>> {
    let ctx = gb.ctx();
    let dom = gb.domain();
    let index: BTreeMap<&Word, usize> = cols.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let layers = gb.basis_words(None)?;
    let mut rows = Vec::new();
    for layer in layers.iter().skip(1) {
        for u in layer {
            let (s, t) = (ctx.word_source(u), ctx.word_target(u));
            for (rank, letter) in gb.quiver().letters().iter().enumerate() {
                if letter.source != t || letter.target != s {
                    continue;
                }
                let g = ctx.letter_word(rank as u8);
                let ug = ctx.compose(u, &g).expect("checked composable");
                let gu = ctx.compose(&g, u).expect("checked composable");
                let diff = NCPoly::monomial(dom, ug, dom.one())
                    .sub(dom, &NCPoly::monomial(dom, gu, dom.one()));
                let nf = gb.normal_form(&diff);
                if nf.is_zero() {
                    continue;
                }
                let mut row: Vec<(usize, D::Elem)> = Vec::with_capacity(nf.terms().len());
                for (w, c) in nf.terms().iter().rev() {
                    let col = *index.get(w).unwrap_or_else(|| {
                        panic!("commutator term is not a positive cycle normal word")
                    });
                    row.push((col, c.clone()));
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// Row echelon form over a field with pivots at the *largest* column of each
/// row, so that the number of pivots in the first k columns equals the
/// dimension of the row space intersected with their span.
struct Echelon<D: ScalarDomain> {
    dom: D,
    rows: BTreeMap<usize, Vec<(usize, D::Elem)>>,
}

impl<D: ScalarDomain> Echelon<D> {
    fn new(dom: D) -> Self {
        Echelon { dom, rows: BTreeMap::new() }
    }

    /// a + c * b on sparse vectors with ascending column indices.
    fn axpy(
        &self,
        a: &[(usize, D::Elem)],
        c: &D::Elem,
        b: &[(usize, D::Elem)],
    ) -> Vec<(usize, D::Elem)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                    let v = self.dom.add(va, &self.dom.mul(c, vb));
                    if !self.dom.is_zero(&v) {
                        out.push((*ca, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ca, va)), Some((cb, _))) if ca < cb => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (Some(_), Some((cb, vb))) => {
                    out.push((*cb, self.dom.mul(c, vb)));
                    j += 1;
                }
                (Some((ca, va)), None) => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (None, Some((cb, vb))) => {
                    out.push((*cb, self.dom.mul(c, vb)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    /// Eliminate against the installed rows until the leading (max) column is
    /// pivot-free.
    fn reduce(&self, mut row: Vec<(usize, D::Elem)>) -> Vec<(usize, D::Elem)> {
        while let Some((c, v)) = row.last().cloned() {
            match self.rows.get(&c) {
                None => break,
                Some(p) => {
                    row = self.axpy(&row, &self.dom.neg(&v), p);
                }
            }
        }
        row
    }

    /// Returns true when the row added a new pivot.
    fn insert(&mut self, row: Vec<(usize, D::Elem)>) -> bool {
        let mut r = self.reduce(row);
        let Some((c, v)) = r.last().cloned() else {
            return false;
        };
        let inv = self.dom.try_inv(&v).expect("field element is invertible");
        for (_, x) in &mut r {
            *x = self.dom.mul(x, &inv);
        }
        self.rows.insert(c, r);
        true
    }

    fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

/// The cycle block of the trace space over a field: cycle columns modulo the
/// commutator row space, with reusable membership tests.
pub struct CycleQuotient<D: ScalarDomain> {
    domain_name: String,
    graded: bool,
    vertex_rank: usize,
    cols: Vec<Word>,
    index: BTreeMap<Word, usize>,
    ech: Echelon<D>,
}

impl<D: ScalarDomain> CycleQuotient<D> {
    pub fn new(gb: &GroebnerBasis<D>) -> Result<Self> {
        if !gb.domain().is_field() {
            return Err(Error::Unsupported(
                "cycle quotients over a non-field; use the integral or multi-prime paths".into(),
            ));
        }
        let cols = cycle_columns(gb)?;
        let rows = commutator_rows(gb, &cols)?;
        let mut ech = Echelon::new(gb.domain().clone());
        for row in rows {
            ech.insert(row);
        }
        let index = cols.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(CycleQuotient {
            domain_name: gb.domain().name(),
            graded: gb.is_homogeneous(),
            vertex_rank: gb.quiver().num_vertices(),
            cols,
            index,
            ech,
        })
    }

    /// Surviving dimension per positive degree.
    fn free_by_degree(&self) -> BTreeMap<usize, usize> {
        let mut cols_d: BTreeMap<usize, usize> = BTreeMap::new();
        for w in &self.cols {
            *cols_d.entry(w.ls.len()).or_default() += 1;
        }
        for c in self.ech.pivots() {
            *cols_d.get_mut(&self.cols[c].ls.len()).expect("pivot in a column") -= 1;
        }
        cols_d.retain(|_, v| *v > 0);
        cols_d
    }

    pub fn report(&self) -> Hh0Report {
        let free = self.free_by_degree();
        let entries: Vec<DegreeEntry> = free
            .iter()
            .map(|(&degree, &free_rank)| DegreeEntry { degree, free_rank, torsion: Vec::new() })
            .collect();
        let total_free = self.vertex_rank + free.values().sum::<usize>();
        Hh0Report {
            domain: self.domain_name.clone(),
            method: Hh0Method::FieldLinearAlgebra,
            graded: self.graded,
            vertex_rank: self.vertex_rank,
            entries,
            total_free,
            torsion: Vec::new(),
        }
    }

    /// Is the class of `p` zero in the trace space? `gb` must be the basis
    /// this quotient was built from.
    pub fn class_is_zero(&self, gb: &GroebnerBasis<D>, p: &NCPoly<D>) -> Result<bool> {
        let nf = gb.normal_form(p);
        let ctx = gb.ctx();
        let mut vec: Vec<(usize, D::Elem)> = Vec::new();
        for (w, c) in nf.terms().iter().rev() {
            if w.ls.is_empty() {
                // Idempotent classes are untouched by commutator rows.
                return Ok(false);
            }
            if ctx.word_target(w) != w.vertex {
                continue; // off-diagonal words are commutators
            }
            let col = *self.index.get(w).ok_or_else(|| {
                Error::Unsupported("polynomial does not belong to this algebra".into())
            })?;
            vec.push((col, c.clone()));
        }
        Ok(self.ech.reduce(vec).is_empty())
    }
}

/// Trace space over a field from a certified complete basis.
pub fn hh0_field<D: ScalarDomain>(gb: &GroebnerBasis<D>) -> Result<Hh0Report> {
    Ok(CycleQuotient::new(gb)?.report())
}

/// The cycle block of the integral trace space: commutator lattice inside
/// the free abelian group on the cycle normal words.
pub struct IntegerCycleQuotient {
    graded: bool,
    vertex_rank: usize,
    cols: Vec<Word>,
    index: BTreeMap<Word, usize>,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerCycleQuotient {
    pub fn new(gb: &GroebnerBasis<Integers>) -> Result<Self> {
        let cols = cycle_columns(gb)?;
        let rows = commutator_rows(gb, &cols)?;
        let index = cols.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(IntegerCycleQuotient {
            graded: gb.is_homogeneous(),
            vertex_rank: gb.quiver().num_vertices(),
            cols,
            index,
            rows,
        })
    }

    /// Column ranges per degree; columns are sorted, so each degree is a
    /// contiguous block.
    fn degree_blocks(&self) -> Vec<(usize, std::ops::Range<usize>)> {
        let mut blocks: Vec<(usize, std::ops::Range<usize>)> = Vec::new();
        for (i, w) in self.cols.iter().enumerate() {
            let d = w.ls.len();
            match blocks.last_mut() {
                Some((deg, range)) if *deg == d => range.end = i + 1,
                _ => blocks.push((d, i..i + 1)),
            }
        }
        blocks
    }

    fn dense(&self, rows: &[&Vec<(usize, BigInt)>], range: &std::ops::Range<usize>) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|row| {
                let mut v = vec![BigInt::zero(); range.len()];
                for (c, x) in row.iter() {
                    v[*c - range.start] = x.clone();
                }
                v
            })
            .collect()
    }

    pub fn report(&self) -> Hh0Report {
        let mut entries: Vec<DegreeEntry> = Vec::new();
        let mut torsion_all: Vec<TorsionSummand> = Vec::new();
        let mut positive_free = 0usize;
        if self.graded {
            // Homogeneous rows: Smith normal form degree by degree gives a
            // canonical grading of both the free part and the torsion.
            for (degree, range) in self.degree_blocks() {
                let in_block: Vec<&Vec<(usize, BigInt)>> = self
                    .rows
                    .iter()
                    .filter(|r| r.first().is_some_and(|(c, _)| range.contains(c)))
                    .collect();
                let dense = self.dense(&in_block, &range);
                let smith = snf::smith_normal_form(&dense, range.len());
                let free_rank = range.len() - smith.rank();
                let torsion: Vec<TorsionSummand> =
                    smith.torsion().into_iter().map(TorsionSummand::Cyclic).collect();
                positive_free += free_rank;
                torsion_all.extend(torsion.iter().cloned());
                if free_rank > 0 || !torsion.is_empty() {
                    entries.push(DegreeEntry { degree, free_rank, torsion });
                }
            }
        } else {
            // Filtered case: one Smith normal form over all columns for the
            // canonical totals, and a rational max-column echelon for the
            // (non-canonical) filtration readout of the free part.
            let all: Vec<&Vec<(usize, BigInt)>> = self.rows.iter().collect();
            let dense = self.dense(&all, &(0..self.cols.len()));
            let smith = snf::smith_normal_form(&dense, self.cols.len());
            positive_free = self.cols.len() - smith.rank();
            torsion_all = smith.torsion().into_iter().map(TorsionSummand::Cyclic).collect();
            let mut ech = Echelon::new(Rationals);
            for row in &self.rows {
                let qrow: Vec<(usize, BigRational)> =
                    row.iter().map(|(c, x)| (*c, BigRational::from_integer(x.clone()))).collect();
                ech.insert(qrow);
            }
            let mut free_d: BTreeMap<usize, usize> = BTreeMap::new();
            for w in &self.cols {
                *free_d.entry(w.ls.len()).or_default() += 1;
            }
            for c in ech.pivots() {
                *free_d.get_mut(&self.cols[c].ls.len()).expect("pivot in a column") -= 1;
            }
            entries = free_d
                .into_iter()
                .filter(|&(_, f)| f > 0)
                .map(|(degree, free_rank)| DegreeEntry { degree, free_rank, torsion: Vec::new() })
                .collect();
        }
        Hh0Report {
            domain: "Z".into(),
            method: Hh0Method::IntegralSmith,
            graded: self.graded,
            vertex_rank: self.vertex_rank,
            entries,
            total_free: self.vertex_rank + positive_free,
            torsion: torsion_all,
        }
    }

    /// Is the class of `p` zero, i.e. does `p` land in the commutator
    /// lattice plus the ideal?
    pub fn class_is_zero(&self, gb: &GroebnerBasis<Integers>, p: &NCPoly<Integers>) -> Result<bool> {
        let nf = gb.normal_form(p);
        let ctx = gb.ctx();
        let mut vec = vec![BigInt::zero(); self.cols.len()];
        for (w, c) in nf.terms() {
            if w.ls.is_empty() {
                return Ok(false);
            }
            if ctx.word_target(w) != w.vertex {
                continue;
            }
            let col = *self.index.get(w).ok_or_else(|| {
                Error::Unsupported("polynomial does not belong to this algebra".into())
            })?;
            vec[col] = c.clone();
        }
        if vec.iter().all(|x| x.is_zero()) {
            return Ok(true);
        }
        let all: Vec<&Vec<(usize, BigInt)>> = self.rows.iter().collect();
        let dense = self.dense(&all, &(0..self.cols.len()));
        Ok(snf::lattice_contains(&dense, &vec, self.cols.len()))
    }
}

/// Integral trace space. With an empty prime list this attempts the exact
/// route: an integral Gröbner basis (requires every leading coefficient to
/// stay a unit) followed by Smith normal forms of the commutator lattice.
/// With primes given it runs the multi-prime comparison instead: free ranks
/// from the rational computation, and for each prime p a count of Z/p^e
/// summands (exponents at least one, not certified) from the dimension jump
/// over GF(p).
pub fn hh0_integers(
    pres: &Presentation<Integers>,
    primes: &[u64],
    opts: &GBOptions,
) -> Result<Hh0Report> {
    if primes.is_empty() {
        let gb = match complete(pres, opts) {
            Ok(gb) => gb,
            Err(Error::NonUnitLead { domain, lead }) => {
                return Err(Error::Unsupported(format!(
                    "integral completion aborted on a non-unit leading coefficient \
                     ({lead} over {domain}); rerun with a prime list for the \
                     multi-prime path"
                )))
            }
            Err(e) => return Err(e),
        };
        return Ok(IntegerCycleQuotient::new(&gb)?.report());
    }
    let presq = pres.convert(&Rationals)?;
    let gbq = complete(&presq, opts)?;
    let cq = CycleQuotient::new(&gbq)?;
    let free = cq.free_by_degree();
    let mut graded = cq.graded;
    let mut by_degree: BTreeMap<usize, DegreeEntry> = free
        .iter()
        .map(|(&degree, &free_rank)| {
            (degree, DegreeEntry { degree, free_rank, torsion: Vec::new() })
        })
        .collect();
    let total_q = cq.report().total_free;
    let mut torsion_all: Vec<TorsionSummand> = Vec::new();
    let mut pooled: Vec<TorsionSummand> = Vec::new();
    for &p in primes {
        let dom = PrimeField::new(p)?;
        let presp = pres.convert(&dom)?;
        let gbp = complete(&presp, opts)?;
        let cqp = CycleQuotient::new(&gbp)?;
        if graded && cqp.graded {
            let freep = cqp.free_by_degree();
            let degrees: std::collections::BTreeSet<usize> =
                free.keys().chain(freep.keys()).copied().collect();
            for d in degrees {
                let fq = free.get(&d).copied().unwrap_or(0);
                let fp = freep.get(&d).copied().unwrap_or(0);
                if fp < fq {
                    return Err(Error::Verify(format!(
                        "dimension over F{p} fell below the rational dimension at degree {d}"
                    )));
                }
                for _ in 0..fp - fq {
                    by_degree
                        .entry(d)
                        .or_insert_with(|| DegreeEntry {
                            degree: d,
                            free_rank: 0,
                            torsion: Vec::new(),
                        })
                        .torsion
                        .push(TorsionSummand::PrimePowerAtLeast(p));
                }
            }
        } else {
            graded = false;
            let total_p = cqp.report().total_free;
            if total_p < total_q {
                return Err(Error::Verify(format!(
                    "dimension over F{p} fell below the rational dimension"
                )));
            }
            for _ in 0..total_p - total_q {
                pooled.push(TorsionSummand::PrimePowerAtLeast(p));
            }
        }
    }
    let entries: Vec<DegreeEntry> = by_degree
        .into_values()
        .filter(|e| e.free_rank > 0 || !e.torsion.is_empty())
        .collect();
    for e in &entries {
        torsion_all.extend(e.torsion.iter().cloned());
    }
    torsion_all.extend(pooled);
    Ok(Hh0Report {
        domain: "Z".into(),
        method: Hh0Method::MultiPrime,
        graded,
        vertex_rank: cq.vertex_rank,
        entries,
        total_free: total_q,
        torsion: torsion_all,
    })
}

/// Is the class of `p` zero in the trace space over a field?
pub fn class_is_zero<D: ScalarDomain>(gb: &GroebnerBasis<D>, p: &NCPoly<D>) -> Result<bool> {
    CycleQuotient::new(gb)?.class_is_zero(gb, p)
}

/// Is the class of `p` zero in the integral trace space?
pub fn class_is_zero_integers(
    gb: &GroebnerBasis<Integers>,
    p: &NCPoly<Integers>,
) -> Result<bool> {
    IntegerCycleQuotient::new(gb)?.class_is_zero(gb, p)
}

/// True when positive-length elements exist but none survives in the trace
/// space. Over GF(p) the p-th power map descends to traces, so this condition
/// forces every positive-length trace of the p-th power map to vanish —
/// an obstruction that distinguishes quotients with equal dimensions.
pub fn frobenius_obstruction<D: ScalarDomain>(
    gb: &GroebnerBasis<D>,
    report: &Hh0Report,
) -> Result<bool> {
    let top = gb.top_degree.ok_or_else(|| {
        Error::Unsupported("the obstruction needs a finite-dimensional algebra".into())
    })?;
    let dims = gb.dimensions(top)?;
    let positive: usize = dims.iter().skip(1).sum();
    Ok(positive > 0 && !report.positive_part_nonzero())
}
