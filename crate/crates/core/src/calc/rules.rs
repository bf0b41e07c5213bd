//! The elementary class-preserving rewrites of a decomposable symbol.
//!
//! Every rule returns a certificate from the input presentation to its
//! output; the exact identities carry no witnesses at all.

use crate::certs::{AxiomStep, Presentation, RewriteCertificate, WpGenerator};
use crate::exterior::DiffForm;
use crate::field::{CtxExt, FieldElement, UniPoly};
use crate::pforms::norm::norm;
use crate::symbol::{ASElement, Symbol};

use super::{CalcError, RewriteResult, TrivialReason};

fn check_slot(s: &Symbol, i: usize) -> Result<(), CalcError> {
    if i >= s.n() {
        return Err(CalcError::SlotOutOfRange { slot: i, n: s.n() });
    }
    Ok(())
}

fn check_pair(s: &Symbol, i: usize, j: usize) -> Result<(), CalcError> {
    check_slot(s, i)?;
    check_slot(s, j)?;
    if i == j {
        return Err(CalcError::SameSlot(i));
    }
    Ok(())
}

/// β_i · ∧_{j≠i} dlog β_j, with the (i−1)-st sign that makes its
/// differential equal to β_i · ∧_j dlog β_j.
fn exact_primitive(value: &FieldElement, slots: &[FieldElement], i: usize) -> DiffForm {
    let others: Vec<FieldElement> = slots
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, b)| b.clone())
        .collect();
    let theta = DiffForm::decomposable(value, &others).expect("nonzero slots");
    if i % 2 == 1 {
        theta.neg()
    } else {
        theta
    }
}

/// Tries each candidate witness set until the verifier accepts one.
fn first_verified(candidates: Vec<RewriteCertificate>) -> RewriteCertificate {
    let mut last = None;
    for c in candidates {
        if c.verify().map(|v| v.is_accepted()).unwrap_or(false) {
            return c;
        }
        last = Some(c);
    }
    panic!("no candidate witness verified: {:?}", last.map(|c| c.verify()));
}

fn trivial_exact(s: &Symbol, reason: TrivialReason) -> RewriteResult {
    let cert = RewriteCertificate::exact(s.clone().into(), Presentation::zero(s.ctx(), s.n()));
    RewriteResult::Trivial { cert, reason }
}

fn rewritten_exact(s: &Symbol, out: Symbol) -> RewriteResult {
    let cert = RewriteCertificate::exact(s.clone().into(), out.clone().into());
    RewriteResult::Rewritten { symbol: out, cert }
}

/// α → α + β_i.
pub fn rule_a(s: &Symbol, i: usize) -> Result<RewriteResult, CalcError> {
    check_slot(s, i)?;
    let out = s.with_alpha(s.alpha() + s.slot(i));
    let theta = exact_primitive(s.slot(i), s.slots(), i);
    let base = RewriteCertificate::exact(s.clone().into(), out.clone().into());
    let cert = first_verified(vec![
        RewriteCertificate {
            theta: theta.neg(),
            ..base.clone()
        },
        RewriteCertificate { theta, ..base },
    ]);
    Ok(RewriteResult::Rewritten { symbol: out, cert })
}

/// A root u of T^p − T − α, read off a nontrivial common factor of f(T)
/// with the Artin-Schreier polynomial.
pub fn wp_root_from_zero_norm(alpha: &FieldElement, f: &ASElement) -> Option<FieldElement> {
    let ctx = alpha.ctx();
    let p = ctx.p();
    if f.is_binomial() && !f.coeffs()[1].is_zero() {
        // N(c₀ + c₁λ) = c₁^p (℘(c₀/c₁) + α)
        let t = &f.coeffs()[0] / &f.coeffs()[1];
        let u = -t;
        return (u.wp() == *alpha).then_some(u);
    }
    let fu = UniPoly::new(ctx, f.coeffs().to_vec());
    let g = fu.gcd(&UniPoly::artin_schreier(alpha)).ok()?;
    let d = g.degree()?;
    if d == 0 || d as u32 % p == 0 {
        return None;
    }
    // the roots are u + k for k in a subset of F_p; their mean is a root
    let dd = ctx.int(d as i64);
    let u = -(&g.coeffs()[d - 1] / &dd);
    (u.wp() == *alpha).then_some(u)
}

/// Slot i → N(f)·β_i, or the zero class when N(f) = 0.
pub fn rule_b(s: &Symbol, i: usize, f: &ASElement) -> Result<RewriteResult, CalcError> {
    check_slot(s, i)?;
    if f.is_zero() {
        return Err(CalcError::ZeroElement);
    }
    let alpha = s.alpha();
    let n_f = norm(alpha, f);
    if n_f.is_zero() {
        let u = wp_root_from_zero_norm(alpha, f).ok_or(CalcError::NoWpRoot)?;
        let mut cert = RewriteCertificate::exact(s.clone().into(), Presentation::zero(s.ctx(), s.n()));
        cert.generators.push(WpGenerator {
            u,
            slots: s.slots().to_vec(),
        });
        return Ok(RewriteResult::Trivial {
            cert,
            reason: TrivialReason::ZeroNorm { slot: i },
        });
    }
    let out = s.with_slot(i, &n_f * s.slot(i));
    if f.is_constant() {
        // N(c) = c^p and dlog(c^p β) = dlog β
        return Ok(rewritten_exact(s, out));
    }
    let base = RewriteCertificate::exact(s.clone().into(), out.clone().into());
    if !f.is_binomial() {
        let mut with_norm = s.slots().to_vec();
        with_norm[i] = n_f.clone();
        let mut cert = base;
        cert.axiom_steps.push(AxiomStep::norm_slot(alpha, f, i, with_norm, -1));
        return Ok(RewriteResult::Rewritten { symbol: out, cert });
    }
    // With t = c₀/c₁ and σ = ℘(t) + α we have N = c₁^p σ, so the difference
    // is −α·(dlog σ in slot i), and α = σ − ℘(t) splits it into an exact
    // form and one ℘-image.
    let (c0, c1) = (&f.coeffs()[0], &f.coeffs()[1]);
    let t = c0 / c1;
    let sigma = &t.wp() + alpha;
    let mut slots_sigma = s.slots().to_vec();
    slots_sigma[i] = sigma.clone();
    let theta = exact_primitive(&sigma, &slots_sigma, i);
    let mut candidates = Vec::new();
    for u in [t.clone(), -&t] {
        for th in [theta.neg(), theta.clone()] {
            let mut c = base.clone();
            c.generators.push(WpGenerator {
                u: u.clone(),
                slots: slots_sigma.clone(),
            });
            c.theta = th;
            candidates.push(c);
        }
    }
    Ok(RewriteResult::Rewritten {
        symbol: out,
        cert: first_verified(candidates),
    })
}

/// Slot i → β_i + γ^p with the compensating α′ = α(β_i + γ^p)/β_i.
pub fn rule_c(s: &Symbol, i: usize, gamma: &FieldElement) -> Result<RewriteResult, CalcError> {
    check_slot(s, i)?;
    let b = s.slot(i) + &gamma.frobenius();
    if b.is_zero() {
        return Ok(trivial_exact(s, TrivialReason::PthPowerSlot { slot: i }));
    }
    let alpha = &(s.alpha() * &b) / s.slot(i);
    Ok(rewritten_exact(s, s.with_slot(i, b).with_alpha(alpha)))
}

/// Slot j → β_i β_j.
pub fn rule_d(s: &Symbol, i: usize, j: usize) -> Result<RewriteResult, CalcError> {
    check_pair(s, i, j)?;
    let out = s.with_slot(j, s.slot(i) * s.slot(j));
    Ok(rewritten_exact(s, out))
}

/// Slots (i, j) → (β_i + β_j, β_j / β_i).
pub fn rule_e(s: &Symbol, i: usize, j: usize) -> Result<RewriteResult, CalcError> {
    check_pair(s, i, j)?;
    let sum = s.slot(i) + s.slot(j);
    if sum.is_zero() {
        return Ok(trivial_exact(s, TrivialReason::OppositeSlots { i, j }));
    }
    let quot = s.slot(j) / s.slot(i);
    Ok(rewritten_exact(s, s.with_slot(i, sum).with_slot(j, quot)))
}

/// Slot j → (β_i + N(f))·β_j.
pub fn rule_f(s: &Symbol, i: usize, j: usize, f: &ASElement) -> Result<RewriteResult, CalcError> {
    check_pair(s, i, j)?;
    let ctx = s.ctx();
    let n_f = norm(s.alpha(), f);
    if n_f.is_zero() {
        return rule_d(s, i, j);
    }
    let bi = s.slot(i);
    let sum = bi + &n_f;
    if sum.is_zero() {
        // β_i = −N(f): the symbol equals the one with N(f) in slot i, which
        // the norm-slot rule kills starting from the constant slot 1
        let seed = s.with_slot(i, ctx.one());
        let (cert_b, _) = rule_b(&seed, i, f)?.expect_rewritten();
        let rev = cert_b.reversed();
        let cert = RewriteCertificate {
            lhs: s.clone().into(),
            rhs: Presentation::zero(ctx, s.n()),
            ..rev
        };
        return Ok(RewriteResult::Trivial {
            cert,
            reason: TrivialReason::NegatedNormSlot { slot: i },
        });
    }
    let out = s.with_slot(j, &sum * s.slot(j));
    // The difference of the two sides is the symbol E with slot i = N(f) and
    // slot j = (β_i + N(f))/β_i, because dlog a ∧ dlog(a + 1) = 0. E is
    // killed by the norm-slot witness started from the constant slot 1.
    let aux = s.with_slot(i, ctx.one()).with_slot(j, &sum / bi);
    let (cert_b, _) = rule_b(&aux, i, f)?.expect_rewritten();
    let cert = RewriteCertificate {
        lhs: s.clone().into(),
        rhs: out.clone().into(),
        ..cert_b
    };
    Ok(RewriteResult::Rewritten { symbol: out, cert })
}

/// Slots (i, j) → (β_j⁻¹, β_i): swapping two logarithmic factors and
/// inverting one keeps the form unchanged.
pub fn swap_slots(s: &Symbol, i: usize, j: usize) -> Result<RewriteResult, CalcError> {
    check_pair(s, i, j)?;
    let inv = s.slot(j).inv().expect("nonzero slot");
    let out = s.with_slot(i, inv).with_slot(j, s.slot(i).clone());
    Ok(rewritten_exact(s, out))
}
