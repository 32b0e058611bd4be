//! Relation sets presenting the additive and multiplicative algebras.
//!
//! Both algebras are quotients of the path algebra of the doubled quiver by
//! relations split per vertex:
//!
//! - **Additive**: at each vertex `v` the component of `Σ (a a* - a* a)`,
//!   i.e. `Σ_{a out of v} a a*  -  Σ_{a into v} a* a`.
//! - **Multiplicative** (star-shaped quivers): away from the center the
//!   component `(1 + b b*) = (1 + a* a)` collapses to the additive relation
//!   exactly. At the center the defining relation is the inverted product
//!   `∏ (1 + x x*)^{±1} = 1` over the dual arrows in alphabet order; clearing
//!   inverses turns it into the descending polynomial product
//!   `(1+γ_m)···(1+γ_1) - 1`. When the first arm has length one, `γ_1² = 0`
//!   modulo the arm relations lets this collapse to the short canonical form
//!   `γ_1 + ... + γ_m + γ_m γ_{m-1} ... γ_2`-style expansion (for three arms:
//!   `α + β + γ + γβ`), which is what we emit.
//! - **Partial**: either of the above with the relation at one chosen vertex
//!   omitted.

use crate::poly::{Ctx, NCPoly, Word};
use crate::quiver::{star_decompose, DoubledQuiver, StarDecomposition, VertexId};
use crate::scalar::ScalarDomain;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Additive,
    Multiplicative,
    /// Additive with the relation at the named vertex omitted.
    AdditivePartial(VertexId),
    /// Multiplicative with the relation at the named vertex omitted.
    MultiplicativePartial(VertexId),
    Custom(String),
}

impl PresentationKind {
    pub fn describe(&self) -> String {
        match self {
            PresentationKind::Additive => "additive".into(),
            PresentationKind::Multiplicative => "multiplicative".into(),
            PresentationKind::AdditivePartial(w) => format!("additive, vertex {w} dropped"),
            PresentationKind::MultiplicativePartial(w) => {
                format!("multiplicative, vertex {w} dropped")
            }
            PresentationKind::Custom(s) => s.clone(),
        }
    }
}

/// One relation, tagged with the vertex whose component it is (if any).
#[derive(Clone, Debug)]
pub struct Relation<D: ScalarDomain> {
    pub vertex: Option<VertexId>,
    pub poly: NCPoly<D>,
}

#[derive(Clone, Debug)]
pub struct Presentation<D: ScalarDomain> {
    pub dq: DoubledQuiver,
    pub dom: D,
    pub kind: PresentationKind,
    pub relations: Vec<Relation<D>>,
}

impl<D: ScalarDomain> Presentation<D> {
    pub fn ctx(&self) -> Ctx<'_, D> {
        Ctx::new(&self.dq, &self.dom)
    }

    pub fn polys(&self) -> Vec<NCPoly<D>> {
        self.relations.iter().map(|r| r.poly.clone()).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.poly.is_homogeneous())
    }

    /// Drop the relation at vertex `w`.
    pub fn partial(&self, w: VertexId) -> Result<Self> {
        if self.dq.vertex_index(w).is_none() {
            return Err(Error::Quiver(format!("no vertex {w}")));
        }
        let kind = match &self.kind {
            PresentationKind::Additive => PresentationKind::AdditivePartial(w),
            PresentationKind::Multiplicative => PresentationKind::MultiplicativePartial(w),
            other => other.clone(),
        };
        Ok(Presentation {
            dq: self.dq.clone(),
            dom: self.dom.clone(),
            kind,
            relations: self
                .relations
                .iter()
                .filter(|r| r.vertex != Some(w))
                .cloned()
                .collect(),
        })
    }

    pub fn custom(dq: DoubledQuiver, dom: D, name: &str, polys: Vec<NCPoly<D>>) -> Self {
        Presentation {
            dq,
            dom,
            kind: PresentationKind::Custom(name.to_string()),
            relations: polys.into_iter().map(|poly| Relation { vertex: None, poly }).collect(),
        }
    }

    /// The same presentation with coefficients moved into another domain.
    pub fn convert<E: ScalarDomain>(&self, target: &E) -> Result<Presentation<E>> {
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            relations.push(Relation {
                vertex: r.vertex,
                poly: r.poly.convert(&self.dom, target)?,
            });
        }
        Ok(Presentation {
            dq: self.dq.clone(),
            dom: target.clone(),
            kind: self.kind.clone(),
            relations,
        })
    }
}

/// Per-vertex components of the additive relation `Σ a a* - a* a`.
pub fn additive<D: ScalarDomain>(dq: &DoubledQuiver, dom: &D) -> Result<Presentation<D>> {
    if !dq.is_doubled() {
        return Err(Error::Unsupported("additive relations need a doubled alphabet".into()));
    }
    let ctx = Ctx::new(dq, dom);
    let mut relations = Vec::new();
    for v in 0..dq.num_vertices() as u8 {
        let mut terms = Vec::new();
        for (rank, l) in dq.letters().iter().enumerate() {
            if l.is_dual {
                continue;
            }
            let rank = rank as u8;
            let dual = dq.dual_rank(rank).expect("doubled");
            if l.source == v {
                let w = ctx.compose(&ctx.letter_word(rank), &ctx.letter_word(dual)).unwrap();
                terms.push((w, dom.one()));
            }
            if l.target == v {
                let w = ctx.compose(&ctx.letter_word(dual), &ctx.letter_word(rank)).unwrap();
                terms.push((w, dom.neg(&dom.one())));
            }
        }
        let poly = NCPoly::from_terms(dom, terms);
        if !poly.is_zero() {
            relations.push(Relation { vertex: Some(dq.vertex_label(v)), poly });
        }
    }
    Ok(Presentation {
        dq: dq.clone(),
        dom: dom.clone(),
        kind: PresentationKind::Additive,
        relations,
    })
}

/// The truncated geometric series `Σ_{k=0}^{bound} (-x)^k`, a two-sided
/// inverse of `1 + x` whenever `x^(bound+1) = 0`.
pub fn geometric_inverse<D: ScalarDomain>(
    ctx: Ctx<'_, D>,
    x: &NCPoly<D>,
    bound: usize,
) -> NCPoly<D> {
    let mut acc = NCPoly::identity(ctx);
    let minus_x = x.neg(ctx.dom);
    let mut pw = NCPoly::identity(ctx);
    for _ in 0..bound {
        pw = pw.mul(ctx, &minus_x, None);
        acc = acc.add(ctx.dom, &pw);
    }
    acc
}

/// Per-vertex components of the multiplicative relation for a star-shaped
/// quiver. See the module docs for the exact central form.
pub fn multiplicative<D: ScalarDomain>(dq: &DoubledQuiver, dom: &D) -> Result<Presentation<D>> {
    if !dq.is_doubled() {
        return Err(Error::Unsupported(
            "multiplicative relations need a doubled alphabet".into(),
        ));
    }
    let star = star_decompose(dq.base())?;
    let additive_pres = additive(dq, dom)?;
    let ctx = Ctx::new(dq, dom);
    let mut relations = Vec::new();
    for r in &additive_pres.relations {
        if r.vertex != Some(star.center) {
            relations.push(r.clone());
        }
    }
    if let Some(poly) = central_relation(ctx, &star)? {
        relations.push(Relation { vertex: Some(star.center), poly });
    }
    // Keep the per-vertex relation order aligned with the additive one.
    relations.sort_by_key(|r| r.vertex);
    Ok(Presentation {
        dq: dq.clone(),
        dom: dom.clone(),
        kind: PresentationKind::Multiplicative,
        relations,
    })
}

/// Length-two cycles at the center, one per arm, in ascending order of the
/// dual arrow leaving the center (the order the defining product is taken in).
pub fn central_cycles<D: ScalarDomain>(
    ctx: Ctx<'_, D>,
    star: &StarDecomposition,
) -> Vec<(usize, Word)> {
    let dq = ctx.dq;
    let mut cycles: Vec<(u8, usize, Word)> = star
        .arms
        .iter()
        .enumerate()
        .map(|(i, arm)| {
            let central = *arm.last().expect("nonempty arm");
            let name = &dq.base().arrows()[central].name;
            let primal = dq.arrow_rank(name).expect("letter exists");
            let dual = dq.dual_rank(primal).expect("doubled");
            let w = ctx
                .compose(&ctx.letter_word(dual), &ctx.letter_word(primal))
                .expect("cycle at center");
            (dual, i, w)
        })
        .collect();
    cycles.sort_by_key(|(dual, _, _)| *dual);
    cycles.into_iter().map(|(_, arm, w)| (arm, w)).collect()
}

fn central_relation<D: ScalarDomain>(
    ctx: Ctx<'_, D>,
    star: &StarDecomposition,
) -> Result<Option<NCPoly<D>>> {
    let dom = ctx.dom;
    let cycles = central_cycles(ctx, star);
    let m = cycles.len();
    if m == 0 {
        return Ok(None);
    }
    let center = ctx.dq.vertex_index(star.center).expect("center exists");
    let e_center = NCPoly::idempotent(dom, center);
    let cycle_poly =
        |w: &Word| NCPoly::monomial(dom, w.clone(), dom.one());
    if m == 1 {
        // Matches the additive component exactly.
        return Ok(Some(cycle_poly(&cycles[0].1).neg(dom)));
    }
    let first_arm_len = star.arms[cycles[0].0].len();
    if first_arm_len == 1 {
        // γ_1 + [ (1+γ_m)···(1+γ_2) - 1 ], using γ_1² = 0 mod the arm
        // relations to clear the inverse of (1+γ_1).
        let mut prod = e_center.clone();
        for (_, w) in cycles[1..].iter().rev() {
            let factor = e_center.add(dom, &cycle_poly(w));
            prod = prod.mul(ctx, &factor, None);
        }
        let rel = prod.sub(dom, &e_center).add(dom, &cycle_poly(&cycles[0].1));
        Ok(Some(rel))
    } else {
        // Full descending product (1+γ_m)···(1+γ_1) - 1.
        let mut prod = e_center.clone();
        for (_, w) in cycles.iter().rev() {
            let factor = e_center.add(dom, &cycle_poly(w));
            prod = prod.mul(ctx, &factor, None);
        }
        Ok(Some(prod.sub(dom, &e_center)))
    }
}
