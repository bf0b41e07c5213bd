//! The composite forms attached to symbols and to pairs of tensor products.

use crate::field::{CtxExt, FieldElement};
use crate::symbol::Symbol;

use super::{FormSpec, PFormError, TwoDimVariant};

/// φ(v) = Σ_d N(v_d)·β₁^{d₁}···βₙ^{dₙ} over the nonzero tuples d in
/// lexicographic order (d₁ most significant).
pub fn build_phi(s: &Symbol) -> FormSpec {
    let n = s.n();
    let parts = (1..(1usize << n))
        .map(|k| {
            let mut c = s.ctx().one();
            for (i, b) in s.slots().iter().enumerate() {
                if (k >> (n - 1 - i)) & 1 == 1 {
                    c = &c * b;
                }
            }
            FormSpec::scale(&c, FormSpec::norm_form(s.alpha())).expect("slots are nonzero")
        })
        .collect();
    FormSpec::DirectSum(parts)
}

/// ψ ⊥ φ with ψ(x, y) = αx^p − x^{p−1}y + y^p; an isotropic vector of this
/// form shows the symbol is zero.
pub fn build_trivializer(s: &Symbol) -> FormSpec {
    FormSpec::DirectSum(vec![FormSpec::two_dim(s.alpha(), TwoDimVariant::A1Weighted), build_phi(s)])
}

/// φ′ ⊥ β₁N_{α₁} ⊥ … ⊥ β_mN_{α_m} ⊥ γ₁N_{δ₁} ⊥ … ⊥ γ_ℓN_{δ_ℓ}, where
/// φ′(a, b) = (Σαᵢ − Σγᵢ)a^p − a^{p−1}b + b^p.
pub fn build_common_slot_form(
    alphas: &[FieldElement],
    betas: &[FieldElement],
    gammas: &[FieldElement],
    deltas: &[FieldElement],
) -> Result<FormSpec, PFormError> {
    if alphas.len() != betas.len() {
        return Err(PFormError::LengthMismatch(format!(
            "{} alphas and {} betas",
            alphas.len(),
            betas.len()
        )));
    }
    if gammas.len() != deltas.len() {
        return Err(PFormError::LengthMismatch(format!(
            "{} gammas and {} deltas",
            gammas.len(),
            deltas.len()
        )));
    }
    let ctx = alphas
        .first()
        .or(gammas.first())
        .ok_or_else(|| PFormError::LengthMismatch("no algebras given".into()))?
        .ctx();
    let mut lead = ctx.zero();
    for a in alphas {
        lead = &lead + a;
    }
    for g in gammas {
        lead = &lead - g;
    }
    let mut parts = vec![FormSpec::two_dim(&lead, TwoDimVariant::A1Weighted)];
    for (a, b) in alphas.iter().zip(betas) {
        parts.push(FormSpec::scale(b, FormSpec::norm_form(a))?);
    }
    for (g, d) in gammas.iter().zip(deltas) {
        parts.push(FormSpec::scale(g, FormSpec::norm_form(d))?);
    }
    Ok(FormSpec::DirectSum(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::pforms::regularity_certificate;

    #[test]
    fn dimensions() {
        let k = FieldCtx::prime(2, &["x", "y", "z"]).unwrap();
        let (x, y, z) = (k.var(0), k.var(1), k.var(2));
        let s1 = Symbol::new(x.clone(), vec![y.clone()]).unwrap();
        assert_eq!(build_phi(&s1).dimension(), 2);
        assert_eq!(build_trivializer(&s1).dimension(), 4);
        let s3 = Symbol::new(x.clone(), vec![y.clone(), z.clone(), &y + &z]).unwrap();
        assert_eq!(build_phi(&s3).dimension(), 14);
        let s2 = Symbol::new(x.clone(), vec![y.clone(), z.clone()]).unwrap();
        match build_phi(&s2) {
            FormSpec::DirectSum(parts) => {
                let scalars: Vec<_> = parts
                    .iter()
                    .map(|f| match f {
                        FormSpec::Scale { c, .. } => c.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                assert_eq!(scalars, vec![z.clone(), y.clone(), &y * &z]);
            }
            _ => unreachable!(),
        }
        assert!(regularity_certificate(&build_trivializer(&s2)).is_ok());
    }

    #[test]
    fn common_slot_form() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let f = build_common_slot_form(&[x.clone()], &[y.clone()], &[], &[]).unwrap();
        assert_eq!(f.dimension(), 4);
        let f = build_common_slot_form(&[x.clone()], &[y.clone()], &[y.clone()], &[&x + &y]).unwrap();
        assert_eq!(f.to_explicit().dim(), 6);
        assert_eq!(f.to_explicit().coefficient(&[2, 0, 0, 0, 0, 0]), &x - &y);
        assert!(regularity_certificate(&f).is_ok());
    }
}
