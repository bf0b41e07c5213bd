mod common;

use charp_forms::field::{poly_gcd, CtxExt, FieldElement};
use charp_forms::sampling::{element, nonzero, Shape};
use proptest::prelude::*;
use rand::Rng;

/// Substitutes random constants for every variable; `None` when a
/// denominator vanishes at the point.
fn at_point(a: &FieldElement, point: &[Option<u16>]) -> Option<u16> {
    a.eval_constants(point).ok().map(|c| c.constant_value().expect("all variables substituted"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in common::assorted() {
            let [a, b, c] = [0; 3].map(|_| element(&ctx, &mut r, Shape::default()));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, ctx.zero());
            prop_assert_eq!(&a * &ctx.one(), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), ctx.one());
            }
        }
    }

    #[test]
    fn frobenius_is_additive(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in common::assorted() {
            let (a, b) = (element(&ctx, &mut r, Shape::default()), element(&ctx, &mut r, Shape::default()));
            prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
            prop_assert_eq!(a.frobenius().pth_root(), Some(a.clone()));
        }
    }

    #[test]
    fn fractions_are_canonical(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in common::assorted() {
            let a = element(&ctx, &mut r, Shape::default());
            let b = nonzero(&ctx, &mut r, Shape::default());
            let q = &a / &b;
            prop_assert!(poly_gcd(q.num(), q.den(), ctx.gf()).is_one());
            prop_assert_eq!(q.den().lead().unwrap().1, 1);
            prop_assert_eq!(&q * &b, a);
        }
    }

    /// Evaluation at points of the coefficient field is a ring map; the
    /// products are recomputed with table arithmetic.
    #[test]
    fn evaluation_agrees_with_coefficient_arithmetic(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in common::assorted() {
            let gf = ctx.gf();
            let a = element(&ctx, &mut r, Shape::default());
            let b = nonzero(&ctx, &mut r, Shape::default());
            let point: Vec<Option<u16>> = (0..ctx.nvars()).map(|_| Some(r.gen_range(0..gf.order()) as u16)).collect();
            let (Some(va), Some(vb)) = (at_point(&a, &point), at_point(&b, &point)) else { continue };
            if let Some(s) = at_point(&(&a + &b), &point) {
                prop_assert_eq!(s, gf.add(va, vb));
            }
            if let Some(m) = at_point(&(&a * &b), &point) {
                prop_assert_eq!(m, gf.mul(va, vb));
            }
            if vb != 0 {
                if let Some(d) = at_point(&(&a / &b), &point) {
                    prop_assert_eq!(d, gf.mul(va, gf.inv(vb)));
                }
            }
        }
    }

    #[test]
    fn partials_obey_leibniz(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in common::assorted() {
            let (a, b) = (element(&ctx, &mut r, Shape::default()), element(&ctx, &mut r, Shape::default()));
            for v in 0..ctx.nvars() {
                let lhs = (&a * &b).partial(v).unwrap();
                let rhs = &(&a.partial(v).unwrap() * &b) + &(&a * &b.partial(v).unwrap());
                prop_assert_eq!(lhs, rhs);
                prop_assert!(a.frobenius().partial(v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for ctx in common::assorted() {
            let a = element(&ctx, &mut r, Shape::default());
            let text = a.to_string();
            let back = ctx.parse(&text).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}

#[test]
fn expression_examples() {
    let k = common::f2xy();
    let a = k.parse("x^2*y + 1/(x+1)").unwrap();
    let (x, y) = (k.var(0), k.var(1));
    assert_eq!(a, &(&(&x * &x) * &y) + &(&k.one() / &(&x + &k.one())));
    match k.parse("x + + y") {
        Err(charp_forms::field::FieldError::Syntax { offset, .. }) => assert_eq!(offset, 4),
        other => panic!("{other:?}"),
    }
    let k3 = common::f3xy();
    let cube = k3.parse("(x+y)^3").unwrap();
    assert_eq!(cube.to_string(), "x^3 + y^3");
    assert_eq!(k3.parse(&cube.to_string()).unwrap(), cube);
}
