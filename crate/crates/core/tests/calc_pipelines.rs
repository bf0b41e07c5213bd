mod common;

use charp_forms::calc::{
    link_collection_size, phi_value, separable_link, slot_modify, trivialize, RewriteResult, TrivialCase,
    TrivialReason, TrivializationOutcome,
};
use charp_forms::certs::Verdict;
use charp_forms::field::{CtxExt, FieldElement};
use charp_forms::pforms::{build_phi, build_trivializer, norm, SearchBudget, SearchMode};
use charp_forms::sampling::{element, nonconstant};
use charp_forms::symbol::{ASElement, Symbol};
use proptest::prelude::*;
use rand::Rng;

fn flatten(v: &[ASElement]) -> Vec<FieldElement> {
    v.iter().flat_map(|f| f.coeffs().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn slot_modify_ends_in_the_form_value(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let ctx = common::f2xyz();
        let n = r.gen_range(1..=3);
        let s = common::symbol(&ctx, &mut r, n);
        let mut v: Vec<ASElement> = (0..(1 << n) - 1)
            .map(|_| if r.gen_bool(0.5) { common::binomial(&ctx, &mut r) } else { ASElement::zero(&ctx) })
            .collect();
        if v.iter().all(|f| f.is_zero()) {
            v[0] = ASElement::constant(&ctx.one());
        }
        let value = build_phi(&s).evaluate(&flatten(&v)).unwrap();
        prop_assert_eq!(&phi_value(&s, &v), &value);
        let res = slot_modify(&s, &v).unwrap();
        prop_assert!(common::verified(res.cert()));
        match res {
            RewriteResult::Rewritten { symbol, .. } => {
                prop_assert_eq!(symbol.alpha(), s.alpha());
                prop_assert_eq!(symbol.slot(n - 1), &value);
            }
            RewriteResult::Trivial { reason, .. } => match reason {
                TrivialReason::ZeroNorm { .. } => {
                    prop_assert!(v.iter().any(|f| !f.is_zero() && norm(s.alpha(), f).is_zero()))
                }
                TrivialReason::PthPowerValue => prop_assert!(value.is_zero() || value.pth_root().is_some()),
                _ => {}
            },
        }
        if value.is_zero() {
            prop_assert!(res_is_trivial(&s, &v));
        }
    }

    #[test]
    fn quaternion_pairs_link(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let ctx = common::f2xy();
        let beta = nonconstant(&ctx, &mut r, common::small());
        let symbols: Vec<Symbol> = (0..link_collection_size(1, 1))
            .map(|_| Symbol::new(element(&ctx, &mut r, common::small()), vec![beta.clone()]).unwrap())
            .collect();
        let out = separable_link(&symbols, 1).unwrap();
        prop_assert!(out.system.check_equations());
        for (input, res) in symbols.iter().zip(&out.results) {
            prop_assert_eq!(res.symbol.alpha(), &out.common_alpha);
            prop_assert!(common::verified(&res.cert));
            prop_assert_eq!(res.cert.lhs.as_symbol(), Some(input));
        }
    }

    #[test]
    fn alpha_in_wp_image_is_trivialized(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let ctx = common::f2xy();
        let u = charp_forms::sampling::poly(&ctx, &mut r, 1, 2);
        let n = r.gen_range(1..=2);
        let slots = (0..n).map(|_| nonconstant(&ctx, &mut r, common::small())).collect();
        let s = Symbol::new(u.wp(), slots).unwrap();
        let out = trivialize(&s, SearchBudget::new(SearchMode::BoundedDegree(1))).unwrap();
        match out {
            TrivializationOutcome::Trivial { cert, case, vector, last_symbol } => {
                prop_assert_eq!(cert.verify().unwrap(), Verdict::Verified);
                prop_assert!(build_trivializer(&s).evaluate(&vector).unwrap().is_zero());
                if case == TrivialCase::ShiftedToWpImage {
                    let t = -&(&vector[1] / &vector[0]);
                    prop_assert_eq!(last_symbol.unwrap().alpha().clone(), t.wp());
                }
            }
            other => prop_assert!(false, "{:?}: {:?}", s, other),
        }
    }
}

fn res_is_trivial(s: &Symbol, v: &[ASElement]) -> bool {
    slot_modify(s, v).unwrap().is_trivial()
}

#[test]
fn linkage_sizes() {
    assert_eq!(link_collection_size(1, 1), 2);
    assert_eq!(link_collection_size(2, 1), 4);
    assert_eq!(link_collection_size(2, 2), 3);
    assert_eq!(link_collection_size(3, 1), 8);
}

#[test]
fn trivializer_dimension() {
    let ctx = common::f2xyz();
    let mut r = common::rng(7);
    for n in 1..=3 {
        let s = common::symbol(&ctx, &mut r, n);
        assert_eq!(build_trivializer(&s).dimension(), ((1 << n) - 1) * 2 + 2);
    }
}
