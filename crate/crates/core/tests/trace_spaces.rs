//! Structural facts about trace spaces that the headline totals rest on:
//! open arms contribute nothing beyond their vertices, positive-length cycle
//! classes of the multiplicative quotient vanish word by word, and the short
//! central cycles of the rank-8 exceptional quiver die individually.

use mpa_core::groebner::{complete, GBOptions, GroebnerBasis};
use mpa_core::hh0::{self, CycleQuotient};
use mpa_core::parse::{parse_expr, Defines};
use mpa_core::poly::{Ctx, NCPoly};
use mpa_core::presentation;
use mpa_core::quiver::{builtin_dynkin, DynkinType};
use mpa_core::scalar::{PrimeField, Rationals, ScalarDomain};
use mpa_core::DoubledQuiver;

fn doubled(ty: DynkinType, n: u32) -> DoubledQuiver {
    DoubledQuiver::double(builtin_dynkin(ty, n).unwrap()).unwrap()
}

fn multiplicative_gb<D: ScalarDomain>(dq: &DoubledQuiver, dom: &D) -> GroebnerBasis<D> {
    let pres = presentation::multiplicative(dq, dom).unwrap();
    complete(&pres, &GBOptions::default()).unwrap()
}

/// The additive quotient of a linear quiver with the relation at the far end
/// dropped has a trace space spanned by the vertices alone: no cycle of
/// positive length survives.
fn open_arm_trace_space_is_vertices_only<D: ScalarDomain>(dom: &D) {
    for n in 2..=8u32 {
        let dq = doubled(DynkinType::A, n);
        let pres = presentation::additive(&dq, dom).unwrap().partial(n).unwrap();
        let gb = complete(&pres, &GBOptions::default()).unwrap();
        let report = hh0::hh0_field(&gb).unwrap();
        assert_eq!(
            report.total(),
            n as usize,
            "open arm with {n} vertices over {}: expected the vertex classes only",
            dom.name()
        );
        assert!(report.entries.iter().all(|e| e.free_rank == 0));
    }
}

#[test]
fn open_arm_trace_spaces_are_vertices_only_over_the_rationals() {
    open_arm_trace_space_is_vertices_only(&Rationals);
}

#[test]
fn open_arm_trace_spaces_are_vertices_only_over_small_prime_fields() {
    for p in [2, 3, 5] {
        open_arm_trace_space_is_vertices_only(&PrimeField::new(p).unwrap());
    }
}

/// Every positive-length cycle word in the normal basis of the
/// multiplicative quotient has zero trace class, one word at a time. This is
/// sharper than the dimension count: it certifies a zero certificate for
/// each spanning cycle rather than only the total.
fn positive_cycle_classes_vanish<D: ScalarDomain>(ty: DynkinType, n: u32, dom: &D) {
    let dq = doubled(ty, n);
    let gb = multiplicative_gb(&dq, dom);
    let quotient = CycleQuotient::new(&gb).unwrap();
    let ctx = gb.ctx();
    let mut cycles = 0usize;
    for layer in gb.basis_words(None).unwrap().iter().skip(1) {
        for w in layer {
            if ctx.word_target(w) != w.vertex {
                continue;
            }
            let p = NCPoly::monomial(dom, w.clone(), dom.one());
            assert!(
                quotient.class_is_zero(&gb, &p).unwrap(),
                "cycle {} survives over {}",
                ctx.word_string(w),
                dom.name()
            );
            cycles += 1;
        }
    }
    assert!(cycles > 0, "the normal basis should contain positive-length cycles");
}

#[test]
fn multiplicative_cycle_classes_vanish_for_the_three_armed_quivers() {
    for &(ty, n) in &[(DynkinType::D, 4), (DynkinType::D, 5), (DynkinType::E, 6)] {
        positive_cycle_classes_vanish(ty, n, &Rationals);
        positive_cycle_classes_vanish(ty, n, &PrimeField::new(2).unwrap());
    }
}

/// In the multiplicative quotient of the rank-8 exceptional quiver, every
/// product of up to four factors drawn from the two short central cycles has
/// zero trace class. These thirty cycles have path length at most eight.
#[test]
fn short_central_cycle_products_vanish_in_rank_eight() {
    let dq = doubled(DynkinType::E, 8);
    let dom = Rationals;
    let gb = multiplicative_gb(&dq, &dom);
    let quotient = CycleQuotient::new(&gb).unwrap();
    let ctx = Ctx::new(&dq, &dom);
    let mut checked = 0usize;
    for factors in 1..=4usize {
        for mask in 0..(1u32 << factors) {
            let text = (0..factors)
                .map(|i| if mask >> i & 1 == 0 { "a**a" } else { "b**b" })
                .collect::<Vec<_>>()
                .join("*");
            let p = parse_expr(ctx, &text, &Defines::new()).unwrap();
            assert!(
                quotient.class_is_zero(&gb, &p).unwrap(),
                "class of {text} survives"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 30);
}
