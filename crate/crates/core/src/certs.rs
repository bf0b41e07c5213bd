//! Certificates for equality of classes in coker(℘) = Ωⁿ / (℘-images + dΩⁿ⁻¹).
//!
//! A certificate carries explicit witnesses: decomposable generators whose
//! ℘-images are subtracted, an (n−1)-form θ whose differential is subtracted,
//! and optional axiom steps. The verifier recomputes
//!
//! ```text
//! Δ = eval(lhs) − eval(rhs) − Σ ℘(genᵢ) − dθ − Σ claimedⱼ
//! ```
//!
//! and accepts exactly when Δ is the zero form.

use std::fmt;

use thiserror::Error;

use crate::exterior::DiffForm;
use crate::field::{Ctx, FieldElement};
use crate::pforms::norm::norm;
use crate::symbol::{ASElement, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("cannot chain certificates: intermediate presentations differ")]
    ChainMismatch,
}

/// Either a decomposable presentation or an explicit form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Presentation {
    Symbol(Symbol),
    Form(DiffForm),
}

impl Presentation {
    pub fn eval(&self) -> DiffForm {
        match self {
            Presentation::Symbol(s) => s.eval(),
            Presentation::Form(w) => w.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Presentation::Symbol(s) => s.n(),
            Presentation::Form(w) => w.degree(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        match self {
            Presentation::Symbol(s) => s.ctx(),
            Presentation::Form(w) => w.ctx(),
        }
    }

    pub fn zero(ctx: &Ctx, n: usize) -> Self {
        Presentation::Form(DiffForm::zero(ctx, n))
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self {
            Presentation::Symbol(s) => Some(s),
            Presentation::Form(_) => None,
        }
    }

    fn extend_right(&self, extra: &[FieldElement]) -> Presentation {
        match self {
            Presentation::Symbol(s) => Presentation::Symbol(s.append_slots(extra)),
            Presentation::Form(w) => {
                let tail = DiffForm::dlog_product(w.ctx(), extra).expect("nonzero slots");
                Presentation::Form(w.wedge(&tail))
            }
        }
    }
}

impl From<Symbol> for Presentation {
    fn from(s: Symbol) -> Self {
        Presentation::Symbol(s)
    }
}

/// (u; β₁..βₙ), contributing ℘(u)·dlog β₁ ∧ … ∧ dlog βₙ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WpGenerator {
    pub u: FieldElement,
    pub slots: Vec<FieldElement>,
}

impl WpGenerator {
    pub fn image(&self) -> Result<DiffForm, crate::exterior::FormError> {
        DiffForm::wp_image(&self.u, &self.slots)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomRule {
    /// α·dlog N(f) ∧ (other slots) lies in ℘ + d for f in F[℘⁻¹(α)] with
    /// N(f) ≠ 0. Accepted without witnesses.
    NormSlotGeneral,
}

impl AxiomRule {
    pub fn name(&self) -> &'static str {
        match self {
            AxiomRule::NormSlotGeneral => "NormSlotGeneral",
        }
    }
}

/// An unwitnessed step: `claimed_difference = sign · eval(α; slots)` where
/// `slots[slot] = N(f)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomStep {
    pub rule: AxiomRule,
    pub alpha: FieldElement,
    pub f: ASElement,
    pub slot: usize,
    pub slots: Vec<FieldElement>,
    pub sign: i8,
    pub claimed_difference: DiffForm,
}

impl AxiomStep {
    pub fn norm_slot(alpha: &FieldElement, f: &ASElement, slot: usize, slots: Vec<FieldElement>, sign: i8) -> Self {
        let form = DiffForm::decomposable(alpha, &slots).expect("nonzero slots");
        let claimed_difference = if sign < 0 { form.neg() } else { form };
        AxiomStep {
            rule: AxiomRule::NormSlotGeneral,
            alpha: alpha.clone(),
            f: f.clone(),
            slot,
            slots,
            sign,
            claimed_difference,
        }
    }

    /// Checks the step is an instance of its rule; returns a reason if not.
    fn check(&self) -> Option<String> {
        if self.sign != 1 && self.sign != -1 {
            return Some(format!("axiom sign must be ±1, got {}", self.sign));
        }
        if self.slot >= self.slots.len() {
            return Some("axiom slot index out of range".into());
        }
        let n = norm(&self.alpha, &self.f);
        if n.is_zero() {
            return Some("axiom norm is zero".into());
        }
        if self.slots[self.slot] != n {
            return Some(format!("axiom slot {} is not the norm {}", self.slot, n));
        }
        if self.slots.iter().any(|s| s.is_zero()) {
            return Some("axiom has a zero slot".into());
        }
        let form = DiffForm::decomposable(&self.alpha, &self.slots).expect("checked nonzero");
        let expected = if self.sign < 0 { form.neg() } else { form };
        if expected != self.claimed_difference {
            return Some("axiom claimed difference does not match its parameters".into());
        }
        None
    }

    fn reversed(&self) -> AxiomStep {
        AxiomStep {
            sign: -self.sign,
            claimed_difference: self.claimed_difference.neg(),
            ..self.clone()
        }
    }

    fn extend_right(&self, extra: &[FieldElement]) -> AxiomStep {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(extra);
        let tail = DiffForm::dlog_product(self.alpha.ctx(), extra).expect("nonzero slots");
        AxiomStep {
            slots,
            claimed_difference: self.claimed_difference.wedge(&tail),
            ..self.clone()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteCertificate {
    pub n: usize,
    pub lhs: Presentation,
    pub rhs: Presentation,
    pub generators: Vec<WpGenerator>,
    pub theta: DiffForm,
    pub axiom_steps: Vec<AxiomStep>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Verified,
    VerifiedModuloAxioms(Vec<AxiomStep>),
    Rejected(Rejection),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rejection {
    pub reason: String,
    /// The nonzero residual Δ, when the witnesses were well formed.
    pub residual: Option<DiffForm>,
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }

    pub fn is_accepted(&self) -> bool {
        !matches!(self, Verdict::Rejected(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Verified => "Verified",
            Verdict::VerifiedModuloAxioms(_) => "VerifiedModuloAxioms",
            Verdict::Rejected(_) => "Rejected",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Rejected(r) => write!(f, "Rejected: {}", r.reason),
            Verdict::VerifiedModuloAxioms(a) => write!(f, "VerifiedModuloAxioms ({} axiom steps)", a.len()),
            Verdict::Verified => write!(f, "Verified"),
        }
    }
}

impl RewriteCertificate {
    /// lhs = rhs with no witnesses.
    pub fn identity(p: Presentation) -> Self {
        let n = p.degree();
        let ctx = p.ctx().clone();
        RewriteCertificate {
            n,
            lhs: p.clone(),
            rhs: p,
            generators: Vec::new(),
            theta: DiffForm::zero(&ctx, n.saturating_sub(1)),
            axiom_steps: Vec::new(),
        }
    }

    /// A certificate with no witnesses (claims eval(lhs) = eval(rhs) exactly).
    pub fn exact(lhs: Presentation, rhs: Presentation) -> Self {
        let n = lhs.degree();
        let ctx = lhs.ctx().clone();
        RewriteCertificate {
            n,
            lhs,
            rhs,
            generators: Vec::new(),
            theta: DiffForm::zero(&ctx, n.saturating_sub(1)),
            axiom_steps: Vec::new(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        self.lhs.ctx()
    }

    pub fn has_witnesses(&self) -> bool {
        !self.generators.is_empty() || !self.theta.is_zero() || !self.axiom_steps.is_empty()
    }

    /// Recomputes the residual Δ and classifies it.
    pub fn verify(&self) -> Result<Verdict, CertError> {
        let n = self.n;
        if self.lhs.degree() != n || self.rhs.degree() != n {
            return Err(CertError::DegreeMismatch(format!(
                "lhs has degree {}, rhs {}, certificate declares {n}",
                self.lhs.degree(),
                self.rhs.degree()
            )));
        }
        if n == 0 {
            return Err(CertError::DegreeMismatch("certificates need n ≥ 1".into()));
        }
        if self.theta.degree() != n - 1 {
            return Err(CertError::DegreeMismatch(format!(
                "theta has degree {}, expected {}",
                self.theta.degree(),
                n - 1
            )));
        }
        let reject = |reason: String| {
            Ok(Verdict::Rejected(Rejection {
                reason,
                residual: None,
            }))
        };
        let mut delta = self.lhs.eval().sub(&self.rhs.eval());
        for (i, g) in self.generators.iter().enumerate() {
            if g.slots.len() != n {
                return reject(format!("generator {i} has {} slots, expected {n}", g.slots.len()));
            }
            match g.image() {
                Ok(img) => delta = delta.sub(&img),
                Err(_) => return reject(format!("generator {i} has a zero slot")),
            }
        }
        delta = delta.sub(&self.theta.d());
        for (i, a) in self.axiom_steps.iter().enumerate() {
            if a.slots.len() != n {
                return reject(format!("axiom step {i} has {} slots, expected {n}", a.slots.len()));
            }
            if let Some(reason) = a.check() {
                return reject(format!("axiom step {i}: {reason}"));
            }
            delta = delta.sub(&a.claimed_difference);
        }
        if !delta.is_zero() {
            return Ok(Verdict::Rejected(Rejection {
                reason: "residual is not zero".into(),
                residual: Some(delta),
            }));
        }
        if self.axiom_steps.is_empty() {
            Ok(Verdict::Verified)
        } else {
            Ok(Verdict::VerifiedModuloAxioms(self.axiom_steps.clone()))
        }
    }

    /// Chains `self: A → B` with `next: B → C` into `A → C`.
    pub fn compose(&self, next: &RewriteCertificate) -> Result<RewriteCertificate, CertError> {
        if self.n != next.n {
            return Err(CertError::DegreeMismatch(format!("{} vs {}", self.n, next.n)));
        }
        if self.rhs != next.lhs {
            return Err(CertError::ChainMismatch);
        }
        let mut generators = self.generators.clone();
        generators.extend(next.generators.iter().cloned());
        let mut axiom_steps = self.axiom_steps.clone();
        axiom_steps.extend(next.axiom_steps.iter().cloned());
        Ok(RewriteCertificate {
            n: self.n,
            lhs: self.lhs.clone(),
            rhs: next.rhs.clone(),
            generators,
            theta: self.theta.add(&next.theta),
            axiom_steps,
        })
    }

    /// `B → A` from `A → B`.
    pub fn reversed(&self) -> RewriteCertificate {
        RewriteCertificate {
            n: self.n,
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| WpGenerator {
                    u: -&g.u,
                    slots: g.slots.clone(),
                })
                .collect(),
            theta: self.theta.neg(),
            axiom_steps: self.axiom_steps.iter().map(AxiomStep::reversed).collect(),
        }
    }

    /// Wedges every presentation and witness on the right with
    /// dlog γ₁ ∧ … ∧ dlog γ_m; the result certifies the extended equality.
    pub fn extend_right(&self, extra: &[FieldElement]) -> RewriteCertificate {
        if extra.is_empty() {
            return self.clone();
        }
        let tail = DiffForm::dlog_product(self.ctx(), extra).expect("nonzero slots");
        RewriteCertificate {
            n: self.n + extra.len(),
            lhs: self.lhs.extend_right(extra),
            rhs: self.rhs.extend_right(extra),
            generators: self
                .generators
                .iter()
                .map(|g| {
                    let mut slots = g.slots.clone();
                    slots.extend_from_slice(extra);
                    WpGenerator { u: g.u.clone(), slots }
                })
                .collect(),
            // d(θ ∧ η) = dθ ∧ η because η is closed
            theta: self.theta.wedge(&tail),
            axiom_steps: self.axiom_steps.iter().map(|a| a.extend_right(extra)).collect(),
        }
    }

    /// Same witnesses, different right-hand side presentation. Used when the
    /// new presentation denotes the same form exactly.
    pub fn with_rhs(&self, rhs: Presentation) -> RewriteCertificate {
        RewriteCertificate { rhs, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{CtxExt, FieldCtx};

    fn sym(alpha: FieldElement, slots: Vec<FieldElement>) -> Presentation {
        Presentation::Symbol(Symbol::new(alpha, slots).unwrap())
    }

    #[test]
    fn identity_verifies() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let s = sym(k.var(0), vec![k.var(1)]);
        assert_eq!(RewriteCertificate::identity(s).verify().unwrap(), Verdict::Verified);
    }

    #[test]
    fn exact_form_witness() {
        // (x+y; (y)) vs (x; (y)) differ by y·dy/y = dy = d(y)
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let mut c = RewriteCertificate::exact(sym(&x + &y, vec![y.clone()]), sym(x.clone(), vec![y.clone()]));
        match c.verify().unwrap() {
            Verdict::Rejected(r) => assert_eq!(r.residual.unwrap(), DiffForm::basis(&k, 1)),
            v => panic!("{v:?}"),
        }
        c.theta = DiffForm::scalar(&y);
        assert_eq!(c.verify().unwrap(), Verdict::Verified);
    }

    #[test]
    fn compose_and_mismatch() {
        let k = FieldCtx::prime(2, &["x", "y", "z"]).unwrap();
        let (x, y, z) = (k.var(0), k.var(1), k.var(2));
        let s0 = sym(x.clone(), vec![y.clone(), z.clone()]);
        let s1 = sym(&x + &y, vec![y.clone(), z.clone()]);
        let s2 = sym(&(&x + &y) + &z, vec![y.clone(), z.clone()]);
        let dz = DiffForm::dlog(&z).unwrap();
        let dy = DiffForm::dlog(&y).unwrap();
        // over F_2 signs do not matter: θ = y·dlog z, then z·dlog y
        let mut c1 = RewriteCertificate::exact(s0.clone(), s1.clone());
        c1.theta = dz.scale(&y);
        let mut c2 = RewriteCertificate::exact(s1.clone(), s2.clone());
        c2.theta = dy.scale(&z);
        assert!(c1.verify().unwrap().is_verified());
        assert!(c2.verify().unwrap().is_verified());
        let c = c1.compose(&c2).unwrap();
        assert!(c.verify().unwrap().is_verified());
        assert!(c.reversed().verify().unwrap().is_verified());
        assert_eq!(c2.compose(&c1).unwrap_err(), CertError::ChainMismatch);
        assert_eq!(
            c1.compose(&RewriteCertificate::identity(s1)).unwrap().verify().unwrap(),
            Verdict::Verified
        );
    }

    #[test]
    fn degree_mismatch() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let c = RewriteCertificate::exact(sym(k.var(0), vec![k.var(1)]), Presentation::zero(&k, 2));
        assert!(matches!(c.verify(), Err(CertError::DegreeMismatch(_))));
    }

    #[test]
    fn extension_preserves_validity() {
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        // (x; (y)) → (x + y; (y)) needs θ = −y
        let mut c = RewriteCertificate::exact(sym(x.clone(), vec![y.clone()]), sym(&x + &y, vec![y.clone()]));
        c.theta = DiffForm::scalar(&-&y);
        assert!(c.verify().unwrap().is_verified());
        let e = c.extend_right(&[&x + &k.one()]);
        assert_eq!(e.n, 2);
        assert!(e.verify().unwrap().is_verified());
    }
}
