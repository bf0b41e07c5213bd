mod common;

use charp_forms::field::{Ctx, CtxExt, FieldCtx, FieldElement};
use charp_forms::pforms::{
    isotropy_search, norm, regularity_certificate, ExplicitForm, FormSpec, IsotropyOutcome, SearchBudget, SearchMode,
};
use charp_forms::sampling::{constant_form, element, Shape};
use charp_forms::symbol::ASElement;
use proptest::prelude::*;
use rand::Rng;

fn constant_fields() -> Vec<Ctx> {
    let none: [&str; 0] = [];
    vec![
        FieldCtx::prime(2, &none).unwrap(),
        FieldCtx::prime(3, &none).unwrap(),
        FieldCtx::new(2, 2, &[1, 1, 1], &none).unwrap(),
        FieldCtx::new(3, 2, &[1, 0, 1], &none).unwrap(),
    ]
}

fn random_as<R: Rng>(ctx: &Ctx, r: &mut R) -> ASElement {
    let p = ctx.p() as usize;
    ASElement::new(ctx, (0..p).map(|_| element(ctx, r, common::small())).collect()).unwrap()
}

fn random_vector<R: Rng>(ctx: &Ctx, r: &mut R, m: usize) -> Vec<FieldElement> {
    (0..m).map(|_| element(ctx, r, Shape::polynomial(2, 2))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norm_is_multiplicative(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in [common::f2xy(), common::f3xy()] {
            let alpha = element(&ctx, &mut r, common::small());
            let (f, g) = (random_as(&ctx, &mut r), random_as(&ctx, &mut r));
            prop_assert_eq!(norm(&alpha, &f.mul(&g, &alpha)), &norm(&alpha, &f) * &norm(&alpha, &g));
        }
    }

    #[test]
    fn forms_are_homogeneous_and_expand_faithfully(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let ctx = common::f2xy();
        let n = r.gen_range(1..=2);
        let s = common::symbol(&ctx, &mut r, n);
        let f = charp_forms::pforms::build_trivializer(&s);
        let e = f.to_explicit();
        let v = random_vector(&ctx, &mut r, f.dimension());
        let c = element(&ctx, &mut r, common::small());
        let cv: Vec<FieldElement> = v.iter().map(|a| a * &c).collect();
        let fv = f.evaluate(&v).unwrap();
        prop_assert_eq!(e.evaluate(&v).unwrap(), fv.clone());
        prop_assert_eq!(f.evaluate(&cv).unwrap(), &c.pow(ctx.p()) * &fv);
    }

    /// A structural certificate is never issued for a form that enumeration
    /// shows is not p-regular.
    #[test]
    fn certificates_agree_with_enumeration(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in constant_fields() {
            let max = if ctx.gf().order() > 4 { 4 } else { 6 };
            let f = constant_form(&ctx, &mut r, max);
            if regularity_certificate(&f).is_ok() {
                let check = f.to_explicit().is_p_regular_bruteforce().unwrap();
                prop_assert!(check.regular, "{:?} certified but has witness {:?}", f, check.witness);
            }
        }
    }

    #[test]
    fn found_vectors_are_zeros(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in constant_fields() {
            let f = constant_form(&ctx, &mut r, 4);
            let out = isotropy_search(&f, SearchBudget::new(SearchMode::ExhaustiveConstants)).unwrap();
            if let IsotropyOutcome::Found { vector, .. } = out {
                prop_assert!(vector.iter().any(|a| !a.is_zero()));
                prop_assert!(f.evaluate(&vector).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn binomial_norm_formula() {
    for p in [2u32, 3, 5] {
        let k = FieldCtx::prime(p, &["x", "y", "a"]).unwrap();
        let (x, y, a) = (k.var(0), k.var(1), k.var(2));
        let expected = &(&x.pow(p) - &(&x * &y.pow(p - 1))) + &(&a * &y.pow(p));
        assert_eq!(norm(&a, &ASElement::binomial(&x, &y)), expected);
    }
}

#[test]
fn diagonal_forms_are_not_regular() {
    for ctx in constant_fields() {
        let p = ctx.p();
        for m in 2..=4usize {
            let coeffs = (0..m).map(|i| {
                let mut key = vec![0u32; m];
                key[i] = p;
                (key, ctx.one())
            });
            let f = FormSpec::Explicit(ExplicitForm::new(&ctx, m, coeffs).unwrap());
            assert!(regularity_certificate(&f).is_err());
            let check = f.to_explicit().is_p_regular_bruteforce().unwrap();
            assert!(!check.regular);
            assert!(check.witness.is_some());
        }
    }
}
