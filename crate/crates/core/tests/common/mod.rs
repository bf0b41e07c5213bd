#![allow(dead_code)]

use charp_forms::field::{Ctx, FieldCtx};
use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn f2xyz() -> Ctx {
    FieldCtx::prime(2, &["x", "y", "z"]).unwrap()
}

pub fn f2xy() -> Ctx {
    FieldCtx::prime(2, &["x", "y"]).unwrap()
}

pub fn f3xy() -> Ctx {
    FieldCtx::prime(3, &["x", "y"]).unwrap()
}

/// F₂(x,y), F₃(x,y), F₅(x), F₄(x,y) and F₉(x).
pub fn assorted() -> Vec<Ctx> {
    vec![
        f2xy(),
        f3xy(),
        FieldCtx::prime(5, &["x"]).unwrap(),
        FieldCtx::new(2, 2, &[1, 1, 1], &["x", "y"]).unwrap(),
        FieldCtx::new(3, 2, &[1, 0, 1], &["x"]).unwrap(),
    ]
}

use charp_forms::certs::{RewriteCertificate, Verdict};
use charp_forms::sampling::{element, nonconstant, Shape};
use charp_forms::symbol::{ASElement, Symbol};
use rand::Rng;

pub fn small() -> Shape {
    Shape {
        max_degree: 2,
        max_terms: 2,
        fraction_rate: 0.2,
    }
}

pub fn symbol<R: Rng>(ctx: &Ctx, rng: &mut R, n: usize) -> Symbol {
    let alpha = element(ctx, rng, small());
    let slots = (0..n).map(|_| nonconstant(ctx, rng, small())).collect();
    Symbol::new(alpha, slots).unwrap()
}

/// c₀ + c₁λ with c₁ ≠ 0 half of the time.
pub fn binomial<R: Rng>(ctx: &Ctx, rng: &mut R) -> ASElement {
    loop {
        let c0 = element(ctx, rng, small());
        let c1 = if rng.gen_bool(0.5) { element(ctx, rng, small()) } else { charp_forms::field::CtxExt::zero(ctx) };
        let f = ASElement::binomial(&c0, &c1);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn verified(c: &RewriteCertificate) -> bool {
    c.verify().unwrap() == Verdict::Verified
}

pub fn rejected(c: &RewriteCertificate) -> bool {
    matches!(c.verify(), Ok(Verdict::Rejected(_)) | Err(_))
}
