//! Structural p-regularity: two-dimensional forms and norm forms of field
//! extensions are p-regular, and both properties survive nonzero scaling and
//! direct sums.

use crate::field::{wp_preimage, FieldElement, WpPreimage};

use super::{FormSpec, PFormError, TwoDimVariant};

/// How a norm-form leaf was shown to come from a field extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormLeafCheck {
    /// Constant α with nonzero absolute trace.
    TraceNonzero,
    /// α is not of the form u^p − u.
    NotAnImage,
    /// Undecided here; regularity is conditional on α ∉ ℘(F).
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityCertificate {
    TwoDim(TwoDimVariant),
    NormForm(NormLeafCheck),
    Scale(Box<RegularityCertificate>),
    DirectSum(Vec<RegularityCertificate>),
}

impl RegularityCertificate {
    /// Leaves whose field hypothesis was assumed rather than checked.
    pub fn assumptions(&self) -> usize {
        match self {
            RegularityCertificate::NormForm(NormLeafCheck::Assumed) => 1,
            RegularityCertificate::TwoDim(_) | RegularityCertificate::NormForm(_) => 0,
            RegularityCertificate::Scale(c) => c.assumptions(),
            RegularityCertificate::DirectSum(parts) => parts.iter().map(|c| c.assumptions()).sum(),
        }
    }

    pub fn rule(&self) -> &'static str {
        match self {
            RegularityCertificate::TwoDim(_) => "two-dimensional",
            RegularityCertificate::NormForm(_) => "norm-of-field-extension",
            RegularityCertificate::Scale(_) => "nonzero-scaling",
            RegularityCertificate::DirectSum(_) => "direct-sum",
        }
    }
}

fn norm_leaf(alpha: &FieldElement) -> Result<NormLeafCheck, PFormError> {
    if let Some(c) = alpha.constant_value() {
        let gf = alpha.ctx().gf();
        return if gf.trace(c) != 0 {
            Ok(NormLeafCheck::TraceNonzero)
        } else {
            Err(PFormError::NormLeafNotField(format!("{alpha} has trace zero")))
        };
    }
    match wp_preimage(alpha) {
        WpPreimage::Found(u) => Err(PFormError::NormLeafNotField(format!("{alpha} = ℘({u})"))),
        WpPreimage::NotInImage => Ok(NormLeafCheck::NotAnImage),
        WpPreimage::Unknown => Ok(NormLeafCheck::Assumed),
    }
}

pub fn regularity_certificate(form: &FormSpec) -> Result<RegularityCertificate, PFormError> {
    Ok(match form {
        FormSpec::Explicit(_) => return Err(PFormError::ExplicitLeaf),
        FormSpec::TwoDim { variant, .. } => RegularityCertificate::TwoDim(*variant),
        FormSpec::NormForm { alpha } => RegularityCertificate::NormForm(norm_leaf(alpha)?),
        FormSpec::Scale { c, inner } => {
            if c.is_zero() {
                return Err(PFormError::ZeroScale);
            }
            RegularityCertificate::Scale(Box::new(regularity_certificate(inner)?))
        }
        FormSpec::DirectSum(parts) => {
            RegularityCertificate::DirectSum(parts.iter().map(regularity_certificate).collect::<Result<_, _>>()?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{CtxExt, FieldCtx};

    #[test]
    fn certificates_follow_structure() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let f = FormSpec::direct_sum(vec![
            FormSpec::two_dim(&x, TwoDimVariant::A2Weighted),
            FormSpec::scale(&y, FormSpec::norm_form(&x)).unwrap(),
        ])
        .unwrap();
        let c = regularity_certificate(&f).unwrap();
        assert_eq!(
            c,
            RegularityCertificate::DirectSum(vec![
                RegularityCertificate::TwoDim(TwoDimVariant::A2Weighted),
                RegularityCertificate::Scale(Box::new(RegularityCertificate::NormForm(NormLeafCheck::NotAnImage))),
            ])
        );
        // α = ℘(x) splits L
        assert!(matches!(
            regularity_certificate(&FormSpec::norm_form(&x.wp())),
            Err(PFormError::NormLeafNotField(_))
        ));
        // constant α = 1 over F_2: trace 1, a field (F_4)
        assert!(regularity_certificate(&FormSpec::norm_form(&k.one())).is_ok());
    }
}
