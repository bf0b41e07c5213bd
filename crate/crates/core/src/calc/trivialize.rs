//! Showing a symbol is zero from an isotropic vector of ψ ⊥ φ, where
//! ψ(x, y) = αx^p − x^{p−1}y + y^p and φ is the slot form of the symbol.
//!
//! Since ψ(1, t) = α + ℘(t), a zero (x₀, y₀, v₀) gives:
//! v₀ = 0: α = ℘(−y₀/x₀) directly;
//! x₀ = 0: φ(v₀) = −y₀^p, a p-th power, so the modified last slot is closed;
//! otherwise: slot modification by v₀/x₀ followed by rule (a) turns α into
//! ℘(−y₀/x₀).

use crate::certs::{Presentation, RewriteCertificate, WpGenerator};
use crate::field::{CtxExt, FieldElement};
use crate::pforms::{build_trivializer, isotropy_search, IsotropyOutcome, PFormError, SearchBudget};
use crate::symbol::{ASElement, Symbol};

use super::rules::rule_a;
use super::slot_modify::slot_modify;
use super::{RewriteResult, TrivialReason};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialCase {
    /// v₀ = 0.
    AlphaInWpImage,
    /// x₀ = 0.
    PthPowerLastSlot,
    /// x₀ ≠ 0 and v₀ ≠ 0.
    ShiftedToWpImage,
    /// The slot modification itself ended in zero.
    DuringSlotModify(TrivialReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivializationOutcome {
    Trivial {
        cert: RewriteCertificate,
        case: TrivialCase,
        /// The isotropic vector (x₀, y₀, v₀).
        vector: Vec<FieldElement>,
        /// The presentation just before the zero form, when there is one.
        last_symbol: Option<Symbol>,
    },
    NotFoundWithinBudget(IsotropyOutcome),
}

/// A certificate (℘(u); slots) → 0 with the single generator (u; slots).
fn wp_to_zero(s: &Symbol, u: &FieldElement) -> RewriteCertificate {
    let mut cert = RewriteCertificate::exact(s.clone().into(), Presentation::zero(s.ctx(), s.n()));
    cert.generators.push(WpGenerator {
        u: u.clone(),
        slots: s.slots().to_vec(),
    });
    cert
}

fn components(s: &Symbol, v: &[FieldElement]) -> Vec<ASElement> {
    let p = s.ctx().p() as usize;
    v.chunks(p)
        .map(|c| ASElement::new(s.ctx(), c.to_vec()).expect("chunks of length p"))
        .collect()
}

pub fn trivialize(s: &Symbol, budget: SearchBudget) -> Result<TrivializationOutcome, PFormError> {
    let form = build_trivializer(s);
    let found = isotropy_search(&form, budget)?;
    let Some(vector) = found.vector().map(|v| v.to_vec()) else {
        return Ok(TrivializationOutcome::NotFoundWithinBudget(found));
    };
    Ok(from_isotropic_vector(s, &vector))
}

/// Follows the case analysis for a known zero of ψ ⊥ φ.
pub fn from_isotropic_vector(s: &Symbol, vector: &[FieldElement]) -> TrivializationOutcome {
    let (x0, y0) = (&vector[0], &vector[1]);
    let v0 = components(s, &vector[2..]);
    let trivial = |cert, case, last_symbol| TrivializationOutcome::Trivial {
        cert,
        case,
        vector: vector.to_vec(),
        last_symbol,
    };
    if v0.iter().all(|f| f.is_zero()) {
        let u = -&(y0 / x0);
        debug_assert_eq!(&u.wp(), s.alpha());
        return trivial(wp_to_zero(s, &u), TrivialCase::AlphaInWpImage, Some(s.clone()));
    }
    if x0.is_zero() {
        return match slot_modify(s, &v0).expect("nonzero vector of the right length") {
            RewriteResult::Trivial { cert, reason } => trivial(cert, TrivialCase::DuringSlotModify(reason), None),
            RewriteResult::Rewritten { symbol, cert } => {
                debug_assert_eq!(symbol.slot(s.n() - 1), &(-y0).pow(s.ctx().p()));
                let zero = Presentation::zero(s.ctx(), s.n());
                trivial(cert.with_rhs(zero), TrivialCase::PthPowerLastSlot, Some(symbol))
            }
        };
    }
    let inv = s.ctx().one() / x0.clone();
    let scaled: Vec<ASElement> = v0.iter().map(|f| f.scale(&inv)).collect();
    match slot_modify(s, &scaled).expect("nonzero vector of the right length") {
        RewriteResult::Trivial { cert, reason } => trivial(cert, TrivialCase::DuringSlotModify(reason), None),
        RewriteResult::Rewritten { symbol, cert } => {
            let (c2, shifted) = rule_a(&symbol, s.n() - 1).expect("valid slot").expect_rewritten();
            let u = -&(y0 / x0);
            let chain = cert
                .compose(&c2)
                .and_then(|c| c.compose(&wp_to_zero(&shifted, &u)))
                .expect("chained certificates");
            trivial(chain, TrivialCase::ShiftedToWpImage, Some(shifted))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certs::Verdict;
    use crate::field::FieldCtx;
    use crate::pforms::SearchMode;

    fn budget(d: u32) -> SearchBudget {
        SearchBudget::new(SearchMode::BoundedDegree(d))
    }

    #[test]
    fn alpha_in_wp_image() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let s = Symbol::new(x.wp(), vec![y.clone()]).unwrap();
        match trivialize(&s, budget(1)).unwrap() {
            TrivializationOutcome::Trivial { cert, .. } => assert_eq!(cert.verify().unwrap(), Verdict::Verified),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn each_case_from_a_given_vector() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let (zero, one) = (k.zero(), k.one());
        // (x² + x; (y)) with x₀ = 1, y₀ = x, v₀ = 0
        let s = Symbol::new(x.wp(), vec![y.clone()]).unwrap();
        let v = vec![one.clone(), x.clone(), zero.clone(), zero.clone()];
        assert!(build_trivializer(&s).evaluate(&v).unwrap().is_zero());
        match from_isotropic_vector(&s, &v) {
            TrivializationOutcome::Trivial { cert, case, .. } => {
                assert_eq!(case, TrivialCase::AlphaInWpImage);
                assert_eq!(cert.verify().unwrap(), Verdict::Verified);
            }
            other => panic!("{other:?}"),
        }
        // (y; (y)) with x₀ = 0, y₀ = y, v₀ = λ: ψ(0, y) = y² and y·N(λ) = y²
        let s = Symbol::new(y.clone(), vec![y.clone()]).unwrap();
        let form = build_trivializer(&s);
        let v = vec![zero.clone(), y.clone(), zero.clone(), one.clone()];
        assert!(form.evaluate(&v).unwrap().is_zero());
        match from_isotropic_vector(&s, &v) {
            TrivializationOutcome::Trivial { cert, case, .. } => {
                assert_eq!(case, TrivialCase::PthPowerLastSlot);
                assert_eq!(cert.verify().unwrap(), Verdict::Verified);
            }
            other => panic!("{other:?}"),
        }
        // (x; (x)) with x₀ = 1, y₀ = 0, v₀ = 1: ψ(1, 0) = x and x·N(1) = x
        let s = Symbol::new(x.clone(), vec![x.clone()]).unwrap();
        let form = build_trivializer(&s);
        let v = vec![one.clone(), zero.clone(), one.clone(), zero.clone()];
        assert!(form.evaluate(&v).unwrap().is_zero());
        match from_isotropic_vector(&s, &v) {
            TrivializationOutcome::Trivial { cert, case, last_symbol, .. } => {
                assert_eq!(case, TrivialCase::ShiftedToWpImage);
                assert_eq!(last_symbol.unwrap().alpha(), &zero.wp());
                assert_eq!(cert.verify().unwrap(), Verdict::Verified);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn found_vectors_give_verified_certificates() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        for s in [
            Symbol::new(x.clone(), vec![x.clone()]).unwrap(),
            Symbol::new(y.clone(), vec![y.clone()]).unwrap(),
            Symbol::new(x.wp(), vec![y.clone()]).unwrap(),
        ] {
            match trivialize(&s, budget(1)).unwrap() {
                TrivializationOutcome::Trivial { cert, case, last_symbol, vector } => {
                    assert_eq!(cert.verify().unwrap(), Verdict::Verified, "{s:?} {case:?}");
                    if case == TrivialCase::ShiftedToWpImage {
                        let u = -&(&vector[1] / &vector[0]);
                        assert_eq!(last_symbol.unwrap().alpha(), &u.wp());
                    }
                }
                other => panic!("{s:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn negative_control_small_budget() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let s = Symbol::new(k.var(0), vec![k.var(1)]).unwrap();
        assert!(matches!(
            trivialize(&s, budget(1)).unwrap(),
            TrivializationOutcome::NotFoundWithinBudget(_)
        ));
    }
}
