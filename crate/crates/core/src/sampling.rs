//! Seeded generators of random test data (field elements, forms, symbols).
//!
//! Everything here takes an explicit RNG so runs are reproducible from a seed.

use rand::Rng;

use crate::certs::{Presentation, RewriteCertificate};
use crate::exterior::DiffForm;
use crate::field::{Ctx, CtxExt, FieldElement, Monomial, Poly};
use crate::pforms::{FormSpec, TwoDimVariant};

/// Size limits for random elements.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Probability that a sampled element is a proper fraction.
    pub fraction_rate: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_degree: 2,
            max_terms: 3,
            fraction_rate: 0.3,
        }
    }
}

impl Shape {
    pub fn polynomial(max_degree: u32, max_terms: usize) -> Self {
        Shape {
            max_degree,
            max_terms,
            fraction_rate: 0.0,
        }
    }
}

fn random_monomial<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, max_degree: u32) -> Monomial {
    let k = ctx.nvars();
    if k == 0 {
        return Monomial::ONE;
    }
    let deg = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; k];
    for _ in 0..deg {
        exps[rng.gen_range(0..k)] += 1;
    }
    Monomial::from_exps(&exps)
}

/// A random polynomial, possibly zero.
pub fn poly<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, max_degree: u32, max_terms: usize) -> FieldElement {
    let gf = ctx.gf();
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let raw: Vec<(Monomial, u16)> = (0..nterms)
        .map(|_| {
            let m = random_monomial(ctx, rng, max_degree);
            let c = rng.gen_range(1..gf.order()) as u16;
            (m, c)
        })
        .collect();
    ctx.from_poly(Poly::from_terms(gf, raw))
}

pub fn nonzero_poly<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, max_degree: u32, max_terms: usize) -> FieldElement {
    loop {
        let a = poly(ctx, rng, max_degree, max_terms);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A random element, possibly zero.
pub fn element<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, shape: Shape) -> FieldElement {
    let n = poly(ctx, rng, shape.max_degree, shape.max_terms);
    if rng.gen_bool(shape.fraction_rate) {
        let d = nonzero_poly(ctx, rng, shape.max_degree, shape.max_terms);
        &n / &d
    } else {
        n
    }
}

pub fn nonzero<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, shape: Shape) -> FieldElement {
    loop {
        let a = element(ctx, rng, shape);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A nonconstant element, so that its logarithmic differential is nonzero
/// unless it is a p-th power.
pub fn nonconstant<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, shape: Shape) -> FieldElement {
    loop {
        let a = element(ctx, rng, shape);
        if !a.is_zero() && a.constant_value().is_none() && a.pth_root().is_none() {
            return a;
        }
    }
}

/// A random form of the given degree with up to `max_comps` components.
pub fn form<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, degree: usize, max_comps: usize, shape: Shape) -> DiffForm {
    let k = ctx.nvars();
    let mut comps = Vec::new();
    if degree <= k {
        for _ in 0..rng.gen_range(1..=max_comps.max(1)) {
            let mut idx: Vec<usize> = (0..k).collect();
            // random subset of the right size
            for i in (1..idx.len()).rev() {
                let j = rng.gen_range(0..=i);
                idx.swap(i, j);
            }
            let mut idx: Vec<usize> = idx.into_iter().take(degree).collect();
            idx.sort_unstable();
            comps.push((idx, element(ctx, rng, shape)));
        }
    }
    DiffForm::from_components(ctx, degree, comps).expect("valid indices")
}

/// Ways of damaging a certificate for negative tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Multiply one slot of a symbol presentation by a random nonconstant element.
    PerturbSlot,
    /// Remove one ℘-generator, the exact part θ, or one axiom step.
    DropWitness,
}

/// A damaged copy of `cert` whose residual is certainly nonzero, or `None`
/// when the mutation does not apply or happens to change nothing.
pub fn mutate<R: Rng + ?Sized>(cert: &RewriteCertificate, rng: &mut R, kind: Mutation) -> Option<RewriteCertificate> {
    let mut out = cert.clone();
    let change = match kind {
        Mutation::PerturbSlot => {
            let on_rhs = matches!(cert.rhs, Presentation::Symbol(_)) && rng.gen_bool(0.5);
            let target = if on_rhs { &mut out.rhs } else { &mut out.lhs };
            let Presentation::Symbol(s) = target.clone() else {
                return None;
            };
            let i = rng.gen_range(0..s.n());
            let g = nonconstant(s.ctx(), rng, Shape::polynomial(1, 2));
            let moved = s.with_slot(i, s.slot(i) * &g);
            let change = moved.eval().sub(&s.eval());
            *target = Presentation::Symbol(moved);
            change
        }
        Mutation::DropWitness => {
            let mut options = Vec::new();
            if !cert.generators.is_empty() {
                options.push(0);
            }
            if !cert.theta.is_zero() {
                options.push(1);
            }
            if !cert.axiom_steps.is_empty() {
                options.push(2);
            }
            if options.is_empty() {
                return None;
            }
            match options[rng.gen_range(0..options.len())] {
                0 => {
                    let g = out.generators.remove(rng.gen_range(0..cert.generators.len()));
                    g.image().ok()?
                }
                1 => {
                    out.theta = DiffForm::zero(cert.ctx(), cert.theta.degree());
                    cert.theta.d()
                }
                _ => out.axiom_steps.remove(rng.gen_range(0..cert.axiom_steps.len())).claimed_difference,
            }
        }
    };
    if change.is_zero() {
        None
    } else {
        Some(out)
    }
}

fn constant<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, nonzero: bool) -> FieldElement {
    let lo = usize::from(nonzero);
    ctx.coef(rng.gen_range(lo..ctx.gf().order()) as u16)
}

/// A random structural form with coefficients in F_{p^e} and dimension at
/// most `max_dim` (at least 2).
pub fn constant_form<R: Rng + ?Sized>(ctx: &Ctx, rng: &mut R, max_dim: usize) -> FormSpec {
    let p = ctx.p() as usize;
    let mut parts = Vec::new();
    let mut dim = 0;
    loop {
        let room = max_dim - dim;
        let leaf = if room >= p && rng.gen_bool(0.5) {
            FormSpec::norm_form(&constant(ctx, rng, false))
        } else if room >= 2 {
            let variant = if rng.gen_bool(0.5) {
                TwoDimVariant::A1Weighted
            } else {
                TwoDimVariant::A2Weighted
            };
            FormSpec::two_dim(&constant(ctx, rng, false), variant)
        } else {
            break;
        };
        dim += leaf.dimension();
        let leaf = if rng.gen_bool(0.5) {
            FormSpec::scale(&constant(ctx, rng, true), leaf).expect("nonzero scalar")
        } else {
            leaf
        };
        parts.push(leaf);
        if rng.gen_bool(0.4) {
            break;
        }
    }
    if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        FormSpec::DirectSum(parts)
    }
}
