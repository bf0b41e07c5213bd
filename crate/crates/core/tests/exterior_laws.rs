mod common;

use charp_forms::exterior::DiffForm;
use charp_forms::field::{Ctx, CtxExt};
use charp_forms::sampling::{form, nonconstant, Shape};
use proptest::prelude::*;
use rand::Rng;

fn sign(ctx: &Ctx, odd: bool) -> charp_forms::field::FieldElement {
    if odd {
        ctx.int(-1)
    } else {
        ctx.one()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in [common::f2xyz(), common::f3xy()] {
            let k = r.gen_range(0..ctx.nvars());
            let w = form(&ctx, &mut r, k, 3, Shape::default());
            prop_assert!(w.d().d().is_zero());
        }
    }

    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in [common::f2xyz(), common::f3xy()] {
            let (i, j) = (r.gen_range(0..=1), r.gen_range(0..=1));
            let a = form(&ctx, &mut r, i, 2, Shape::default());
            let b = form(&ctx, &mut r, j, 2, Shape::default());
            let rhs = a.d().wedge(&b).add(&a.wedge(&b.d()).scale(&sign(&ctx, i % 2 == 1)));
            prop_assert_eq!(a.wedge(&b).d(), rhs);
        }
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in [common::f2xyz(), common::f3xy()] {
            let (i, j) = (r.gen_range(0..=2), r.gen_range(0..=1));
            let a = form(&ctx, &mut r, i, 2, Shape::default());
            let b = form(&ctx, &mut r, j, 2, Shape::default());
            prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(&ctx, (i * j) % 2 == 1)));
            if i % 2 == 1 {
                prop_assert!(a.wedge(&a).is_zero());
            }
        }
    }

    #[test]
    fn dlog_is_multiplicative(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in [common::f2xyz(), common::f3xy()] {
            let a = nonconstant(&ctx, &mut r, Shape::default());
            let b = nonconstant(&ctx, &mut r, Shape::default());
            let lhs = DiffForm::dlog(&(&a * &b)).unwrap();
            prop_assert_eq!(lhs, DiffForm::dlog(&a).unwrap().add(&DiffForm::dlog(&b).unwrap()));
            prop_assert!(DiffForm::dlog(&a.frobenius()).unwrap().is_zero());
        }
    }
}

/// dlog of a monomial computed by hand: d(x^a y^b)/(x^a y^b) = a dx/x + b dy/y.
#[test]
fn dlog_of_monomial_by_hand() {
    let k = common::f3xy();
    let (x, y) = (k.var(0), k.var(1));
    let m = &x.pow(2) * &y;
    let expected = DiffForm::from_components(&k, 1, [(vec![0], &k.int(2) / &x), (vec![1], &k.one() / &y)]).unwrap();
    assert_eq!(DiffForm::dlog(&m).unwrap(), expected);
    let z = DiffForm::zero(&k, 1);
    assert_eq!(DiffForm::dlog(&x.pow(3)).unwrap(), z);
}
