//! Quivers, doubled quivers, and star-shaped structure.
//!
//! A [`Quiver`] is a finite directed multigraph with integer vertex labels and
//! named arrows. Loops and parallel arrows are allowed structurally (the free
//! algebra on two loops is a path algebra too); the operations that require a
//! simple quiver check for themselves.
//!
//! [`DoubledQuiver`] fixes the working alphabet: one letter per arrow plus,
//! in doubled mode, one reversed dual letter `a*` per arrow. The alphabet
//! carries a total letter order (default: primal arrows alphabetically, then
//! dual arrows alphabetically) which the monomial order and the ordered
//! product in the multiplicative relation both read.

use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Build a quiver, validating vertex references and name uniqueness.
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut vs = vertices;
        vs.sort_unstable();
        let before = vs.len();
        vs.dedup();
        if vs.len() != before {
            return Err(Error::Quiver("duplicate vertex label".into()));
        }
        let vset: BTreeSet<_> = vs.iter().copied().collect();
        let mut names = BTreeSet::new();
        for a in &arrows {
            if !is_arrow_name(&a.name) {
                return Err(Error::Quiver(format!("invalid arrow name {:?}", a.name)));
            }
            if !names.insert(a.name.clone()) {
                return Err(Error::Quiver(format!("duplicate arrow name {}", a.name)));
            }
            if !vset.contains(&a.source) || !vset.contains(&a.target) {
                return Err(Error::Quiver(format!(
                    "arrow {} references undeclared vertex",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices: vs, arrows })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// No loops and no second arrow between the same unordered vertex pair.
    /// The triangularity machinery assumes this shape.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            if a.source == a.target {
                return false;
            }
            let key = (a.source.min(a.target), a.source.max(a.target));
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    /// Parse the plain-text quiver format:
    ///
    /// ```text
    /// # comment
    /// vertex 1
    /// arrow a 1 3
    /// order a* < b* < c*
    /// ```
    ///
    /// Returns the quiver together with the optional order directive.
    pub fn from_text(text: &str) -> Result<(Self, Option<Vec<String>>)> {
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut order = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let head = it.next().unwrap();
            let ctx = |m: &str| Error::Parse(format!("line {}: {}", lineno + 1, m));
            match head {
                "vertex" => {
                    let lab = it
                        .next()
                        .ok_or_else(|| ctx("vertex needs a label"))?
                        .parse::<VertexId>()
                        .map_err(|_| ctx("vertex label must be a nonnegative integer"))?;
                    if it.next().is_some() {
                        return Err(ctx("trailing tokens after vertex"));
                    }
                    vertices.push(lab);
                }
                "arrow" => {
                    let name = it.next().ok_or_else(|| ctx("arrow needs a name"))?.to_string();
                    let src = it
                        .next()
                        .ok_or_else(|| ctx("arrow needs a source"))?
                        .parse::<VertexId>()
                        .map_err(|_| ctx("arrow source must be an integer"))?;
                    let tgt = it
                        .next()
                        .ok_or_else(|| ctx("arrow needs a target"))?
                        .parse::<VertexId>()
                        .map_err(|_| ctx("arrow target must be an integer"))?;
                    if it.next().is_some() {
                        return Err(ctx("trailing tokens after arrow"));
                    }
                    arrows.push(Arrow { name, source: src, target: tgt });
                }
                "order" => {
                    let rest: String = it.collect::<Vec<_>>().join(" ");
                    let names: Vec<String> =
                        rest.split('<').map(|s| s.trim().to_string()).collect();
                    if names.iter().any(|s| s.is_empty()) {
                        return Err(ctx("order must look like `order a* < b* < c*`"));
                    }
                    order = Some(names);
                }
                _ => return Err(ctx(&format!("unknown directive {head:?}"))),
            }
        }
        Ok((Quiver::new(vertices, arrows)?, order))
    }
}

fn is_arrow_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One letter of the working alphabet: an arrow or a dual arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    /// Index into the base quiver's arrow list.
    pub arrow: usize,
    pub is_dual: bool,
    /// Dense vertex indices (positions in `Quiver::vertices`).
    pub source: u8,
    pub target: u8,
    /// Rank of the paired letter; `None` in free (undoubled) mode.
    pub dual: Option<u8>,
}

/// A quiver together with its working alphabet and letter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    base: Quiver,
    letters: Vec<Letter>,
    doubled: bool,
}

impl DoubledQuiver {
    /// Double the quiver: every arrow `a: i -> j` gains a dual `a*: j -> i`.
    /// Default letter order: primal arrows alphabetically, then duals
    /// alphabetically (so `a < b < a* < b*`).
    pub fn double(base: Quiver) -> Result<Self> {
        Self::build(base, true)
    }

    /// Use the arrows themselves as the full alphabet (no duals). This is the
    /// plain path algebra, used for presentations written over free letters.
    pub fn free(base: Quiver) -> Result<Self> {
        Self::build(base, false)
    }

    fn build(base: Quiver, doubled: bool) -> Result<Self> {
        let vindex = |v: VertexId| -> u8 {
            base.vertices().binary_search(&v).expect("validated vertex") as u8
        };
        if base.vertices().len() > 200 {
            return Err(Error::Unsupported("more than 200 vertices".into()));
        }
        let mut names: Vec<(bool, String, usize)> = Vec::new();
        for (i, a) in base.arrows().iter().enumerate() {
            names.push((false, a.name.clone(), i));
            if doubled {
                names.push((true, format!("{}*", a.name), i));
            }
        }
        if names.len() > 250 {
            return Err(Error::Unsupported("more than 250 letters".into()));
        }
        // (is_dual, name) sort puts all primal arrows before all duals.
        names.sort();
        let mut letters = Vec::with_capacity(names.len());
        for (is_dual, name, arrow) in &names {
            let a = &base.arrows()[*arrow];
            let (s, t) = if *is_dual { (a.target, a.source) } else { (a.source, a.target) };
            letters.push(Letter {
                name: name.clone(),
                arrow: *arrow,
                is_dual: *is_dual,
                source: vindex(s),
                target: vindex(t),
                dual: None,
            });
        }
        let mut dq = DoubledQuiver { base, letters, doubled };
        dq.fix_duals();
        Ok(dq)
    }

    fn fix_duals(&mut self) {
        if !self.doubled {
            for l in &mut self.letters {
                l.dual = None;
            }
            return;
        }
        let pair: Vec<Option<u8>> = self
            .letters
            .iter()
            .map(|l| {
                self.letters
                    .iter()
                    .position(|m| m.arrow == l.arrow && m.is_dual != l.is_dual)
                    .map(|r| r as u8)
            })
            .collect();
        for (l, d) in self.letters.iter_mut().zip(pair) {
            l.dual = d;
        }
    }

    /// Reorder the named letters among the positions they currently occupy,
    /// leaving all other letters fixed. `order b* < a*` swaps the ranks of
    /// `a*` and `b*` and touches nothing else.
    pub fn apply_order(&mut self, names_ascending: &[String]) -> Result<()> {
        let mut ranks = Vec::with_capacity(names_ascending.len());
        for n in names_ascending {
            let r = self
                .letter_rank(n)
                .ok_or_else(|| Error::Quiver(format!("order mentions unknown letter {n}")))?;
            if ranks.contains(&r) {
                return Err(Error::Quiver(format!("order mentions {n} twice")));
            }
            ranks.push(r);
        }
        let mut positions = ranks.clone();
        positions.sort_unstable();
        let reordered: Vec<Letter> =
            ranks.iter().map(|&r| self.letters[r as usize].clone()).collect();
        for (pos, letter) in positions.into_iter().zip(reordered) {
            self.letters[pos as usize] = letter;
        }
        self.fix_duals();
        Ok(())
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, rank: u8) -> &Letter {
        &self.letters[rank as usize]
    }

    pub fn letter_rank(&self, name: &str) -> Option<u8> {
        self.letters.iter().position(|l| l.name == name).map(|r| r as u8)
    }

    /// Rank of the primal letter of the named arrow.
    pub fn arrow_rank(&self, name: &str) -> Option<u8> {
        self.letters
            .iter()
            .position(|l| !l.is_dual && self.base.arrows()[l.arrow].name == name)
            .map(|r| r as u8)
    }

    pub fn dual_rank(&self, rank: u8) -> Option<u8> {
        self.letter(rank).dual
    }

    pub fn num_vertices(&self) -> usize {
        self.base.vertices().len()
    }

    pub fn vertex_label(&self, idx: u8) -> VertexId {
        self.base.vertices()[idx as usize]
    }

    pub fn vertex_index(&self, label: VertexId) -> Option<u8> {
        self.base.vertices().binary_search(&label).ok().map(|i| i as u8)
    }

    /// `(a*)* == a` for every letter; vacuous in free mode.
    pub fn involution_ok(&self) -> bool {
        self.letters.iter().enumerate().all(|(r, l)| match l.dual {
            Some(d) => self.letter(d).dual == Some(r as u8),
            None => !self.doubled,
        })
    }
}

/// Star-shaped structure: a central vertex with chain arms, every arrow
/// oriented toward the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDecomposition {
    pub center: VertexId,
    /// Arms as arrow indices ordered leaf-to-center; arms sorted
    /// alphabetically by their central arrow's name.
    pub arms: Vec<Vec<usize>>,
}

impl StarDecomposition {
    pub fn arm_lengths(&self) -> Vec<usize> {
        self.arms.iter().map(|a| a.len()).collect()
    }

    /// The arm containing the given arrow, if any.
    pub fn arm_of(&self, arrow: usize) -> Option<usize> {
        self.arms.iter().position(|arm| arm.contains(&arrow))
    }
}

/// Decompose a star-shaped quiver; errors describe the first violated
/// condition (connected tree, unique sink, chain arms).
pub fn star_decompose(q: &Quiver) -> Result<StarDecomposition> {
    let n = q.vertices().len();
    if n == 0 {
        return Err(Error::NotStarShaped("empty quiver".into()));
    }
    if q.arrows().len() != n - 1 {
        return Err(Error::NotStarShaped("underlying graph is not a tree".into()));
    }
    let vidx = |v: VertexId| q.vertices().binary_search(&v).unwrap();
    // Underlying-graph adjacency and degree bookkeeping.
    let mut out_deg = vec![0usize; n];
    let mut deg = vec![0usize; n];
    let mut undirected: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source == a.target {
            return Err(Error::NotStarShaped(format!("loop at vertex {}", a.source)));
        }
        let (s, t) = (vidx(a.source), vidx(a.target));
        out_deg[s] += 1;
        deg[s] += 1;
        deg[t] += 1;
        undirected.entry(s).or_default().push(i);
        undirected.entry(t).or_default().push(i);
    }
    // Connectivity of the underlying graph.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &ai in undirected.get(&v).into_iter().flatten() {
            let a = &q.arrows()[ai];
            for w in [vidx(a.source), vidx(a.target)] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotStarShaped("underlying graph is disconnected".into()));
    }
    let sinks: Vec<usize> = (0..n).filter(|&v| out_deg[v] == 0).collect();
    if sinks.len() != 1 {
        return Err(Error::NotStarShaped(format!(
            "expected exactly one sink, found {}",
            sinks.len()
        )));
    }
    let center = sinks[0];
    if (0..n).any(|v| v != center && out_deg[v] != 1) {
        return Err(Error::NotStarShaped(
            "every non-central vertex must have exactly one outgoing arrow".into(),
        ));
    }
    if (0..n).any(|v| v != center && deg[v] > 2) {
        return Err(Error::NotStarShaped("arms must be chains".into()));
    }
    // Each arrow into the center starts an arm; walk outward.
    let mut arms = Vec::new();
    for (ci, ca) in q.arrows().iter().enumerate() {
        if vidx(ca.target) != center {
            continue;
        }
        let mut arm = vec![ci];
        let mut cur = vidx(ca.source);
        loop {
            // The arrow into `cur` from further out, if any.
            let into: Vec<usize> = q
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, b)| vidx(b.target) == cur)
                .map(|(i, _)| i)
                .collect();
            match into.len() {
                0 => break,
                1 => {
                    arm.push(into[0]);
                    cur = vidx(q.arrows()[into[0]].source);
                }
                _ => return Err(Error::NotStarShaped("arms must be chains".into())),
            }
        }
        arm.reverse(); // leaf first, central arrow last
        arms.push(arm);
    }
    arms.sort_by(|x, y| {
        let nx = &q.arrows()[*x.last().unwrap()].name;
        let ny = &q.arrows()[*y.last().unwrap()].name;
        nx.cmp(ny)
    });
    Ok(StarDecomposition { center: q.vertices()[center], arms })
}

/// Arm length (arrow count) of the arm containing `arrow`. Certifies that the
/// central cycle through that arm is nilpotent with exponent `len + 1`.
pub fn nilpotency_bound(star: &StarDecomposition, arrow: usize) -> Option<usize> {
    star.arm_of(arrow).map(|i| star.arms[i].len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl std::str::FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(DynkinType::A),
            "D" | "d" => Ok(DynkinType::D),
            "E" | "e" => Ok(DynkinType::E),
            _ => Err(Error::Parse(format!("unknown Dynkin type {s:?}"))),
        }
    }
}

/// The standard Dynkin quivers, all arrows oriented toward the branch vertex.
///
/// - `A_n`: vertices `1..=n`, arrows `a_i: i -> i+1`.
/// - `D_n`: `a: 1 -> 3`, `b: 2 -> 3`, and a long arm named alphabetically
///   from the center outward: `c: 4 -> 3`, `d: 5 -> 4`, ...
/// - `E_n` (n = 6, 7, 8): `d: 1 -> 2`, `b: 2 -> 3`, `a: 4 -> 3`, `c: 5 -> 3`,
///   `e: 6 -> 5`, `f: 7 -> 6`, `g: 8 -> 7`, restricted to the first n vertices.
pub fn builtin_dynkin(ty: DynkinType, n: u32) -> Result<Quiver> {
    match ty {
        DynkinType::A => {
            if n < 1 {
                return Err(Error::Quiver("A_n needs n >= 1".into()));
            }
            let vertices = (1..=n).collect();
            let arrows = (1..n)
                .map(|i| Arrow { name: format!("a_{i}"), source: i, target: i + 1 })
                .collect();
            Quiver::new(vertices, arrows)
        }
        DynkinType::D => {
            if n < 4 {
                return Err(Error::Quiver("D_n needs n >= 4".into()));
            }
            if n > 26 {
                return Err(Error::Unsupported("D_n arrow names run out past n = 26".into()));
            }
            let vertices = (1..=n).collect();
            let mut arrows = vec![
                Arrow { name: "a".into(), source: 1, target: 3 },
                Arrow { name: "b".into(), source: 2, target: 3 },
            ];
            for j in 1..=(n - 3) {
                let name = char::from(b'c' + (j - 1) as u8).to_string();
                arrows.push(Arrow { name, source: j + 3, target: j + 2 });
            }
            Quiver::new(vertices, arrows)
        }
        DynkinType::E => {
            if !(6..=8).contains(&n) {
                return Err(Error::Quiver("E_n needs n in 6..=8".into()));
            }
            let all = [
                Arrow { name: "a".into(), source: 4, target: 3 },
                Arrow { name: "b".into(), source: 2, target: 3 },
                Arrow { name: "c".into(), source: 5, target: 3 },
                Arrow { name: "d".into(), source: 1, target: 2 },
                Arrow { name: "e".into(), source: 6, target: 5 },
                Arrow { name: "f".into(), source: 7, target: 6 },
                Arrow { name: "g".into(), source: 8, target: 7 },
            ];
            let vertices = (1..=n).collect();
            let arrows = all.into_iter().filter(|a| a.source <= n && a.target <= n).collect();
            Quiver::new(vertices, arrows)
        }
    }
}

/// Primes at which the additive and multiplicative theories diverge for the
/// given Dynkin quiver.
pub fn bad_primes(ty: DynkinType, n: u32) -> Vec<u64> {
    match ty {
        DynkinType::A => vec![],
        DynkinType::D => vec![2],
        DynkinType::E if n <= 7 => vec![2, 3],
        DynkinType::E => vec![2, 3, 5],
    }
}

/// Parse `builtin:D4`-style names.
pub fn parse_builtin(name: &str) -> Result<(DynkinType, u32)> {
    let s = name.strip_prefix("builtin:").unwrap_or(name);
    if s.len() < 2 {
        return Err(Error::Parse(format!("bad builtin quiver name {name:?}")));
    }
    let ty: DynkinType = s[..1].parse()?;
    let n: u32 = s[1..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad builtin quiver rank in {name:?}")))?;
    Ok((ty, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_builtin_shape() {
        let q = builtin_dynkin(DynkinType::D, 4).unwrap();
        assert_eq!(q.vertices(), &[1, 2, 3, 4]);
        let names: Vec<_> = q.arrows().iter().map(|a| (a.name.as_str(), a.source, a.target)).collect();
        assert_eq!(names, vec![("a", 1, 3), ("b", 2, 3), ("c", 4, 3)]);
    }

    #[test]
    fn d5_star_decomposition_matches_worked_example() {
        // Three arms (a), (b), (d, c) of lengths 1, 1, 2.
        let q = builtin_dynkin(DynkinType::D, 5).unwrap();
        let star = star_decompose(&q).unwrap();
        assert_eq!(star.center, 3);
        let arm_names: Vec<Vec<&str>> = star
            .arms
            .iter()
            .map(|arm| arm.iter().map(|&i| q.arrows()[i].name.as_str()).collect())
            .collect();
        assert_eq!(arm_names, vec![vec!["a"], vec!["b"], vec!["d", "c"]]);
        let mut lens = star.arm_lengths();
        lens.sort_unstable();
        assert_eq!(lens, vec![1, 1, 2]);
    }

    #[test]
    fn e_series_arm_lengths() {
        for (n, mut expect) in [(6u32, vec![1, 2, 2]), (7, vec![1, 2, 3]), (8, vec![1, 2, 4])] {
            let q = builtin_dynkin(DynkinType::E, n).unwrap();
            let star = star_decompose(&q).unwrap();
            assert_eq!(star.center, 3);
            let mut lens = star.arm_lengths();
            lens.sort_unstable();
            expect.sort_unstable();
            assert_eq!(lens, expect, "E_{n}");
        }
    }

    #[test]
    fn a_chain_is_single_arm_star() {
        let q = builtin_dynkin(DynkinType::A, 4).unwrap();
        let star = star_decompose(&q).unwrap();
        assert_eq!(star.center, 4);
        assert_eq!(star.arm_lengths(), vec![3]);
        // A_1 degenerates to a bare center.
        let q1 = builtin_dynkin(DynkinType::A, 1).unwrap();
        let star1 = star_decompose(&q1).unwrap();
        assert_eq!(star1.center, 1);
        assert!(star1.arms.is_empty());
    }

    #[test]
    fn nilpotency_bounds_from_arm_lengths() {
        let d4 = builtin_dynkin(DynkinType::D, 4).unwrap();
        let s = star_decompose(&d4).unwrap();
        assert_eq!(nilpotency_bound(&s, d4.arrow_index("a").unwrap()), Some(1));
        let e6 = builtin_dynkin(DynkinType::E, 6).unwrap();
        let s = star_decompose(&e6).unwrap();
        assert_eq!(nilpotency_bound(&s, e6.arrow_index("b").unwrap()), Some(2));
        let e8 = builtin_dynkin(DynkinType::E, 8).unwrap();
        let s = star_decompose(&e8).unwrap();
        assert_eq!(nilpotency_bound(&s, e8.arrow_index("c").unwrap()), Some(4));
    }

    #[test]
    fn doubling_orders_and_involution() {
        let q = builtin_dynkin(DynkinType::D, 4).unwrap();
        let dq = DoubledQuiver::double(q).unwrap();
        let names: Vec<_> = dq.letters().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(names, vec!["a", "b", "c", "a*", "b*", "c*"]);
        assert!(dq.involution_ok());
        let astar = dq.letter_rank("a*").unwrap();
        let l = dq.letter(astar);
        assert_eq!(dq.vertex_label(l.source), 3);
        assert_eq!(dq.vertex_label(l.target), 1);
    }

    #[test]
    fn order_directive_reorders_in_place() {
        let q = builtin_dynkin(DynkinType::D, 4).unwrap();
        let mut dq = DoubledQuiver::double(q).unwrap();
        dq.apply_order(&["b*".into(), "a*".into(), "c*".into()]).unwrap();
        let names: Vec<_> = dq.letters().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(names, vec!["a", "b", "c", "b*", "a*", "c*"]);
        assert!(dq.involution_ok());
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# a three-cycle is not star-shaped\nvertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\n";
        let (q, order) = Quiver::from_text(text).unwrap();
        assert_eq!(q.vertices(), &[1, 2, 3]);
        assert_eq!(q.arrows().len(), 3);
        assert!(order.is_none());
        assert!(star_decompose(&q).is_err());
        let with_order = "vertex 1\nvertex 3\narrow a 1 3\norder a* < a\n";
        let (q, order) = Quiver::from_text(with_order).unwrap();
        let mut dq = DoubledQuiver::double(q).unwrap();
        dq.apply_order(&order.unwrap()).unwrap();
        let names: Vec<_> = dq.letters().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(names, vec!["a*", "a"]);
    }

    #[test]
    fn rejects_malformed_quivers() {
        assert!(Quiver::new(vec![1, 1], vec![]).is_err());
        assert!(Quiver::new(
            vec![1],
            vec![Arrow { name: "a".into(), source: 1, target: 2 }]
        )
        .is_err());
        assert!(Quiver::new(
            vec![1, 2],
            vec![
                Arrow { name: "a".into(), source: 1, target: 2 },
                Arrow { name: "a".into(), source: 2, target: 1 }
            ]
        )
        .is_err());
        // Loops are structurally fine, just not simple.
        let loops = Quiver::new(
            vec![1],
            vec![
                Arrow { name: "x".into(), source: 1, target: 1 },
                Arrow { name: "y".into(), source: 1, target: 1 },
            ],
        )
        .unwrap();
        assert!(!loops.is_simple());
        assert!(builtin_dynkin(DynkinType::D, 4).unwrap().is_simple());
    }

    #[test]
    fn bad_prime_table() {
        assert_eq!(bad_primes(DynkinType::A, 7), Vec::<u64>::new());
        assert_eq!(bad_primes(DynkinType::D, 5), vec![2]);
        assert_eq!(bad_primes(DynkinType::E, 6), vec![2, 3]);
        assert_eq!(bad_primes(DynkinType::E, 7), vec![2, 3]);
        assert_eq!(bad_primes(DynkinType::E, 8), vec![2, 3, 5]);
    }
}
