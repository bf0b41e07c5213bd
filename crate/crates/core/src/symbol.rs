//! Decomposable presentations α·dβ₁/β₁ ∧ … ∧ dβₙ/βₙ and elements of the
//! Artin-Schreier algebra F[λ]/(λ^p − λ − α).

use std::fmt;

use thiserror::Error;

use crate::exterior::DiffForm;
use crate::field::{Ctx, CtxExt, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("a symbol needs at least one slot")]
    NoSlots,
    #[error("slot {0} is zero")]
    ZeroSlot(usize),
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// A presentation (α; β₁, …, βₙ) with every βᵢ nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Symbol {
    alpha: FieldElement,
    slots: Vec<FieldElement>,
}

impl Symbol {
    pub fn new(alpha: FieldElement, slots: Vec<FieldElement>) -> Result<Self, SymbolError> {
        if slots.is_empty() {
            return Err(SymbolError::NoSlots);
        }
        if let Some(i) = slots.iter().position(|b| b.is_zero()) {
            return Err(SymbolError::ZeroSlot(i));
        }
        for b in &slots {
            assert!(b.ctx().same_as(alpha.ctx()), "slots from a different field context");
        }
        Ok(Symbol { alpha, slots })
    }

    pub fn ctx(&self) -> &Ctx {
        self.alpha.ctx()
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn slots(&self) -> &[FieldElement] {
        &self.slots
    }

    pub fn slot(&self, i: usize) -> &FieldElement {
        &self.slots[i]
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    /// The differential form the presentation denotes.
    pub fn eval(&self) -> DiffForm {
        DiffForm::decomposable(&self.alpha, &self.slots).expect("slots are nonzero")
    }

    pub fn with_alpha(&self, alpha: FieldElement) -> Symbol {
        Symbol {
            alpha,
            slots: self.slots.clone(),
        }
    }

    /// Replaces slot `i`; the new value must be nonzero.
    pub fn with_slot(&self, i: usize, value: FieldElement) -> Symbol {
        assert!(!value.is_zero(), "slot value must be nonzero");
        let mut slots = self.slots.clone();
        slots[i] = value;
        Symbol {
            alpha: self.alpha.clone(),
            slots,
        }
    }

    /// The first `k` slots with the same α.
    pub fn prefix(&self, k: usize) -> Symbol {
        Symbol {
            alpha: self.alpha.clone(),
            slots: self.slots[..k].to_vec(),
        }
    }

    pub fn append_slots(&self, extra: &[FieldElement]) -> Symbol {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(extra);
        Symbol::new(self.alpha.clone(), slots).expect("appended slots are nonzero")
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "({}; ({}))", self.alpha, slots.join(", "))
    }
}

/// c₀ + c₁λ + … + c_{p−1}λ^{p−1} in F[λ]/(λ^p − λ − α).
#[derive(Clone, PartialEq, Eq)]
pub struct ASElement {
    coeffs: Vec<FieldElement>,
}

impl ASElement {
    pub fn new(ctx: &Ctx, coeffs: Vec<FieldElement>) -> Result<Self, SymbolError> {
        let p = ctx.p() as usize;
        if coeffs.len() != p {
            return Err(SymbolError::WrongLength {
                expected: p,
                got: coeffs.len(),
            });
        }
        Ok(ASElement { coeffs })
    }

    /// Pads a shorter coefficient list with zeros.
    pub fn from_prefix(ctx: &Ctx, coeffs: &[FieldElement]) -> Result<Self, SymbolError> {
        let p = ctx.p() as usize;
        if coeffs.len() > p {
            return Err(SymbolError::WrongLength {
                expected: p,
                got: coeffs.len(),
            });
        }
        let mut v = coeffs.to_vec();
        v.resize(p, ctx.zero());
        Ok(ASElement { coeffs: v })
    }

    pub fn zero(ctx: &Ctx) -> Self {
        ASElement {
            coeffs: vec![ctx.zero(); ctx.p() as usize],
        }
    }

    pub fn constant(c: &FieldElement) -> Self {
        let mut a = ASElement::zero(c.ctx());
        a.coeffs[0] = c.clone();
        a
    }

    /// c₀ + c₁λ.
    pub fn binomial(c0: &FieldElement, c1: &FieldElement) -> Self {
        let mut a = ASElement::constant(c0);
        a.coeffs[1] = c1.clone();
        a
    }

    /// λ itself.
    pub fn lambda(ctx: &Ctx) -> Self {
        ASElement::binomial(&ctx.zero(), &ctx.one())
    }

    pub fn ctx(&self) -> &Ctx {
        self.coeffs[0].ctx()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Only c₀ and c₁ may be nonzero.
    pub fn is_binomial(&self) -> bool {
        self.coeffs.iter().skip(2).all(|c| c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &FieldElement) -> ASElement {
        ASElement {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Product in F[λ]/(λ^p − λ − α).
    pub fn mul(&self, o: &ASElement, alpha: &FieldElement) -> ASElement {
        let ctx = self.ctx();
        let p = self.coeffs.len();
        let mut prod = vec![ctx.zero(); 2 * p - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + &(a * b);
                }
            }
        }
        // λ^k = λ^{k−p+1} + α λ^{k−p} for k ≥ p
        for k in (p..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], ctx.zero());
            if c.is_zero() {
                continue;
            }
            prod[k - p + 1] = &prod[k - p + 1] + &c;
            prod[k - p] = &prod[k - p] + &(&c * alpha);
        }
        prod.truncate(p);
        ASElement { coeffs: prod }
    }
}

impl fmt::Debug for ASElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "AS[{}]", c.join(", "))
    }
}
