//! Homogeneous degree-p polynomial forms: explicit coefficient tables and
//! structural trees of two-dimensional forms, norm forms, scalings and
//! direct sums.

mod build;
mod explicit;
pub mod isotropy;
pub mod norm;
mod regularity;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{Ctx, CtxExt, FieldElement, Monomial, Poly};
use crate::symbol::ASElement;

pub use build::{build_common_slot_form, build_phi, build_trivializer};
pub use explicit::{multi_indices, ExplicitForm, RegularityCheck};
pub use isotropy::{isotropy_search, IsotropyOutcome, SearchBudget, SearchMode};
pub use norm::norm;
pub use regularity::{regularity_certificate, NormLeafCheck, RegularityCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PFormError {
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("multi-index {0:?} must have total degree p − 1 and match the dimension")]
    BadMultiIndex(Vec<u32>),
    #[error("coefficient key {0:?} must have total degree p")]
    BadCoefficientKey(Vec<u32>),
    #[error("search space of {0} points is too large")]
    TooLarge(u128),
    #[error("the form has non-constant coefficients")]
    NonConstantCoefficients,
    #[error("explicit leaves need the brute-force check")]
    ExplicitLeaf,
    #[error("norm form leaf is not over a field: {0}")]
    NormLeafNotField(String),
    #[error("scaling by zero")]
    ZeroScale,
    #[error("empty direct sum")]
    EmptySum,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

/// Orientation of the two-dimensional form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoDimVariant {
    /// α a₁^p − a₁^{p−1} a₂ + a₂^p.
    A1Weighted,
    /// α a₁^p − a₁ a₂^{p−1} + a₂^p.
    A2Weighted,
}

impl TwoDimVariant {
    pub fn tag(&self) -> &'static str {
        match self {
            TwoDimVariant::A1Weighted => "a1",
            TwoDimVariant::A2Weighted => "a2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "a1" => Some(TwoDimVariant::A1Weighted),
            "a2" => Some(TwoDimVariant::A2Weighted),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormSpec {
    Explicit(ExplicitForm),
    TwoDim { alpha: FieldElement, variant: TwoDimVariant },
    /// The norm of c₀ + c₁λ + … from F[λ]/(λ^p − λ − α).
    NormForm { alpha: FieldElement },
    Scale { c: FieldElement, inner: Box<FormSpec> },
    DirectSum(Vec<FormSpec>),
}

impl FormSpec {
    pub fn two_dim(alpha: &FieldElement, variant: TwoDimVariant) -> Self {
        FormSpec::TwoDim {
            alpha: alpha.clone(),
            variant,
        }
    }

    pub fn norm_form(alpha: &FieldElement) -> Self {
        FormSpec::NormForm { alpha: alpha.clone() }
    }

    pub fn scale(c: &FieldElement, inner: FormSpec) -> Result<Self, PFormError> {
        if c.is_zero() {
            return Err(PFormError::ZeroScale);
        }
        Ok(FormSpec::Scale {
            c: c.clone(),
            inner: Box::new(inner),
        })
    }

    pub fn direct_sum(parts: Vec<FormSpec>) -> Result<Self, PFormError> {
        if parts.is_empty() {
            return Err(PFormError::EmptySum);
        }
        Ok(FormSpec::DirectSum(parts))
    }

    pub fn ctx(&self) -> &Ctx {
        match self {
            FormSpec::Explicit(e) => e.ctx(),
            FormSpec::TwoDim { alpha, .. } | FormSpec::NormForm { alpha } => alpha.ctx(),
            FormSpec::Scale { c, .. } => c.ctx(),
            FormSpec::DirectSum(parts) => parts[0].ctx(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            FormSpec::Explicit(e) => e.dim(),
            FormSpec::TwoDim { .. } => 2,
            FormSpec::NormForm { alpha } => alpha.ctx().p() as usize,
            FormSpec::Scale { inner, .. } => inner.dimension(),
            FormSpec::DirectSum(parts) => parts.iter().map(|f| f.dimension()).sum(),
        }
    }

    pub fn evaluate(&self, v: &[FieldElement]) -> Result<FieldElement, PFormError> {
        let m = self.dimension();
        if v.len() != m {
            return Err(PFormError::DimensionMismatch {
                expected: m,
                got: v.len(),
            });
        }
        Ok(match self {
            FormSpec::Explicit(e) => e.evaluate(v)?,
            FormSpec::TwoDim { alpha, variant } => {
                let p = alpha.ctx().p();
                let (a1, a2) = (&v[0], &v[1]);
                let mixed = match variant {
                    TwoDimVariant::A1Weighted => &a1.pow(p - 1) * a2,
                    TwoDimVariant::A2Weighted => a1 * &a2.pow(p - 1),
                };
                &(&(alpha * &a1.pow(p)) - &mixed) + &a2.pow(p)
            }
            FormSpec::NormForm { alpha } => {
                let f = ASElement::new(alpha.ctx(), v.to_vec()).expect("length p");
                norm(alpha, &f)
            }
            FormSpec::Scale { c, inner } => c * &inner.evaluate(v)?,
            FormSpec::DirectSum(parts) => {
                let mut acc = self.ctx().zero();
                let mut off = 0;
                for part in parts {
                    let d = part.dimension();
                    acc = &acc + &part.evaluate(&v[off..off + d])?;
                    off += d;
                }
                acc
            }
        })
    }

    /// The coefficient table.
    pub fn to_explicit(&self) -> ExplicitForm {
        let ctx = self.ctx();
        let p = ctx.p();
        match self {
            FormSpec::Explicit(e) => e.clone(),
            FormSpec::TwoDim { alpha, variant } => {
                let mixed = match variant {
                    TwoDimVariant::A1Weighted => vec![p - 1, 1],
                    TwoDimVariant::A2Weighted => vec![1, p - 1],
                };
                let coeffs = [(vec![p, 0], alpha.clone()), (mixed, -ctx.one()), (vec![0, p], ctx.one())];
                ExplicitForm::new(ctx, 2, coeffs).expect("degree-p keys")
            }
            FormSpec::NormForm { alpha } => norm_table(alpha),
            FormSpec::Scale { c, inner } => inner.to_explicit().scaled(c),
            FormSpec::DirectSum(parts) => {
                let m = self.dimension();
                let mut coeffs = BTreeMap::new();
                let mut off = 0;
                for part in parts {
                    let e = part.to_explicit();
                    for (key, c) in e.coeffs() {
                        let mut full = vec![0u32; m];
                        full[off..off + e.dim()].copy_from_slice(key);
                        coeffs.insert(full, c.clone());
                    }
                    off += e.dim();
                }
                ExplicitForm::new(ctx, m, coeffs).expect("degree-p keys")
            }
        }
    }

    /// True when every coefficient lies in F_{p^e}.
    pub fn has_constant_coefficients(&self) -> bool {
        match self {
            FormSpec::Explicit(e) => e.has_constant_coefficients(),
            FormSpec::TwoDim { alpha, .. } | FormSpec::NormForm { alpha } => alpha.constant_value().is_some(),
            FormSpec::Scale { c, inner } => c.constant_value().is_some() && inner.has_constant_coefficients(),
            FormSpec::DirectSum(parts) => parts.iter().all(|f| f.has_constant_coefficients()),
        }
    }
}

/// Expands det(multiplication by a₀ + a₁λ + …) with the aᵢ as fresh
/// variables of an extended field.
fn norm_table(alpha: &FieldElement) -> ExplicitForm {
    let ctx = alpha.ctx();
    let p = ctx.p() as usize;
    let k = ctx.nvars();
    let names: Vec<String> = (0..p)
        .map(|i| {
            let mut name = format!("nf_a{i}");
            while ctx.var_index(&name).is_some() {
                name.push('_');
            }
            name
        })
        .collect();
    let big = ctx.extended(&names).expect("room for the norm variables");
    let a = alpha.embed(&big);
    let f = ASElement::new(&big, (0..p).map(|i| big.var(k + i)).collect()).expect("length p");
    let n = norm(&a, &f);
    let gf = ctx.gf();
    let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, u16)>> = BTreeMap::new();
    for (m, c) in n.num().terms() {
        let exps = m.exps(k + p);
        let key = exps[k..].to_vec();
        groups.entry(key).or_default().push((Monomial::from_exps(&exps[..k]), *c));
    }
    let den_terms: Vec<(Monomial, u16)> = n
        .den()
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exps(&m.exps(k + p)[..k]), *c))
        .collect();
    let den = Poly::from_terms(gf, den_terms);
    let coeffs = groups.into_iter().map(|(key, terms)| {
        let num = Poly::from_terms(gf, terms);
        (key, FieldElement::normalize(ctx, num, den.clone()).expect("nonzero denominator"))
    });
    ExplicitForm::new(ctx, p, coeffs).expect("norm is homogeneous of degree p")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn two_dim_table_and_value() {
        let k = FieldCtx::prime(3, &["x"]).unwrap();
        let x = k.var(0);
        let f = FormSpec::two_dim(&x, TwoDimVariant::A2Weighted);
        let e = f.to_explicit();
        assert_eq!(e.coefficient(&[3, 0]), x);
        assert_eq!(e.coefficient(&[1, 2]), -k.one());
        assert_eq!(e.coefficient(&[0, 3]), k.one());
        assert_eq!(f.evaluate(&[k.zero(), k.one()]).unwrap(), k.one());
    }

    #[test]
    fn norm_form_table_p2() {
        let k = FieldCtx::prime(2, &["x"]).unwrap();
        let x = k.var(0);
        let e = FormSpec::norm_form(&x).to_explicit();
        assert_eq!(e.coeffs().len(), 3);
        assert_eq!(e.coefficient(&[2, 0]), k.one());
        assert_eq!(e.coefficient(&[1, 1]), k.one());
        assert_eq!(e.coefficient(&[0, 2]), x);
    }

    #[test]
    fn direct_sum_evaluates_parts() {
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let f = FormSpec::direct_sum(vec![
            FormSpec::two_dim(&x, TwoDimVariant::A1Weighted),
            FormSpec::scale(&y, FormSpec::norm_form(&x)).unwrap(),
        ])
        .unwrap();
        assert_eq!(f.dimension(), 5);
        let v = vec![y.clone(), k.one(), x.clone(), k.zero(), &x + &y];
        let lhs = f.evaluate(&v).unwrap();
        let rhs = &FormSpec::two_dim(&x, TwoDimVariant::A1Weighted).evaluate(&v[..2]).unwrap()
            + &(&y * &norm(&x, &ASElement::new(&k, v[2..].to_vec()).unwrap()));
        assert_eq!(lhs, rhs);
        assert_eq!(f.to_explicit().evaluate(&v).unwrap(), lhs);
    }
}
