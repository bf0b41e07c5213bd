use std::collections::BTreeMap;

use crate::field::{Ctx, CtxExt, FieldElement};

use super::PFormError;

/// Σ c_{i₁..i_m} a₁^{i₁}···a_m^{i_m} with every key summing to p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitForm {
    ctx: Ctx,
    dim: usize,
    coeffs: BTreeMap<Vec<u32>, FieldElement>,
}

/// All multi-indices of length `m` and total degree `total`, in
/// lexicographic order.
pub fn multi_indices(m: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == m {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Result of the finite-field regularity enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityCheck {
    pub regular: bool,
    /// A nonzero point (as F_{p^e} codes) where all order-(p−1) partials vanish.
    pub witness: Option<Vec<u16>>,
    pub points_checked: u64,
}

const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

impl ExplicitForm {
    pub fn new<I>(ctx: &Ctx, dim: usize, coeffs: I) -> Result<Self, PFormError>
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElement)>,
    {
        let p = ctx.p();
        let mut map = BTreeMap::new();
        for (key, c) in coeffs {
            if key.len() != dim || key.iter().sum::<u32>() != p {
                return Err(PFormError::BadCoefficientKey(key));
            }
            if c.is_zero() {
                continue;
            }
            let slot: &mut FieldElement = map.entry(key).or_insert_with(|| ctx.zero());
            *slot = &*slot + &c;
        }
        map.retain(|_, c: &mut FieldElement| !c.is_zero());
        Ok(ExplicitForm {
            ctx: ctx.clone(),
            dim,
            coeffs: map,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, FieldElement> {
        &self.coeffs
    }

    pub fn coefficient(&self, key: &[u32]) -> FieldElement {
        self.coeffs.get(key).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn scaled(&self, c: &FieldElement) -> ExplicitForm {
        ExplicitForm {
            ctx: self.ctx.clone(),
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| c.constant_value().is_some())
    }

    pub fn evaluate(&self, v: &[FieldElement]) -> Result<FieldElement, PFormError> {
        if v.len() != self.dim {
            return Err(PFormError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut acc = self.ctx.zero();
        for (key, c) in &self.coeffs {
            let mut term = c.clone();
            for (a, &e) in v.iter().zip(key) {
                if e > 0 {
                    term = &term * &a.pow(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// ∂^κ of the form for |κ| = p − 1, as the coefficient vector of a linear
    /// form.
    pub fn order_partials(&self, kappa: &[u32]) -> Result<Vec<FieldElement>, PFormError> {
        let p = self.ctx.p();
        if kappa.len() != self.dim || kappa.iter().sum::<u32>() != p - 1 {
            return Err(PFormError::BadMultiIndex(kappa.to_vec()));
        }
        let mut out = vec![self.ctx.zero(); self.dim];
        for (key, c) in &self.coeffs {
            if key.iter().zip(kappa).any(|(e, k)| e < k) {
                continue;
            }
            // falling factorials e(e−1)…(e−k+1)
            let mut factor: i64 = 1;
            for (&e, &k) in key.iter().zip(kappa) {
                for t in 0..k {
                    factor = (factor * (e - t) as i64) % p as i64;
                }
            }
            if factor == 0 {
                continue;
            }
            let j = key.iter().zip(kappa).position(|(e, k)| e > k).expect("one degree left");
            out[j] = &out[j] + &(c * &self.ctx.int(factor));
        }
        Ok(out)
    }

    /// Enumerates the nonzero points of F_{p^e}^m up to scaling (first
    /// nonzero coordinate 1) looking for one where every order-(p−1)
    /// partial derivative vanishes.
    pub fn is_p_regular_bruteforce(&self) -> Result<RegularityCheck, PFormError> {
        if !self.has_constant_coefficients() {
            return Err(PFormError::NonConstantCoefficients);
        }
        let gf = self.ctx.gf();
        let q = gf.order() as u128;
        let total = q.checked_pow(self.dim as u32).unwrap_or(u128::MAX);
        if total > BRUTE_FORCE_LIMIT {
            return Err(PFormError::TooLarge(total));
        }
        let p = self.ctx.p();
        let linear: Vec<Vec<u16>> = multi_indices(self.dim, p - 1)
            .iter()
            .map(|k| {
                self.order_partials(k)
                    .expect("valid multi-index")
                    .iter()
                    .map(|c| c.constant_value().expect("constant"))
                    .collect()
            })
            .filter(|l: &Vec<u16>| l.iter().any(|&c| c != 0))
            .collect();
        let mut point = vec![0u16; self.dim];
        let mut checked = 0u64;
        for t in 1..total as u64 {
            let mut r = t;
            for c in point.iter_mut() {
                *c = (r % q as u64) as u16;
                r /= q as u64;
            }
            let first = point.iter().find(|&&c| c != 0).copied().unwrap();
            if first != 1 {
                continue;
            }
            checked += 1;
            let all_vanish = linear.iter().all(|l| {
                l.iter()
                    .zip(&point)
                    .fold(0u16, |acc, (&c, &a)| gf.add(acc, gf.mul(c, a)))
                    == 0
            });
            if all_vanish {
                return Ok(RegularityCheck {
                    regular: false,
                    witness: Some(point),
                    points_checked: checked,
                });
            }
        }
        Ok(RegularityCheck {
            regular: true,
            witness: None,
            points_checked: checked,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::pforms::{FormSpec, TwoDimVariant};

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(multi_indices(3, 1).len(), 3);
    }

    #[test]
    fn partials_of_two_dim_p3() {
        let k = FieldCtx::prime(3, &["x"]).unwrap();
        let x = k.var(0);
        let e = FormSpec::two_dim(&x, TwoDimVariant::A2Weighted).to_explicit();
        // ∂²/∂a₂² = −2a₁ and ∂²/∂a₁∂a₂ = −2a₂
        assert_eq!(e.order_partials(&[0, 2]).unwrap(), vec![k.int(-2), k.zero()]);
        assert_eq!(e.order_partials(&[1, 1]).unwrap(), vec![k.zero(), k.int(-2)]);
        assert!(e.order_partials(&[1, 0]).is_err());
    }

    #[test]
    fn diagonal_is_not_regular() {
        for p in [2, 3, 5] {
            let k = FieldCtx::prime(p, &[] as &[&str]).unwrap();
            let e = ExplicitForm::new(&k, 2, [(vec![p, 0], k.one()), (vec![0, p], k.one())]).unwrap();
            assert!(e.order_partials(&[p - 1, 0]).unwrap().iter().all(|c| c.is_zero()));
            let r = e.is_p_regular_bruteforce().unwrap();
            assert!(!r.regular);
            assert_eq!(r.witness, Some(vec![1, 0]));
        }
    }

    #[test]
    fn two_dim_over_f4_is_regular() {
        let k = FieldCtx::new(2, 2, &[1, 1, 1], &[] as &[&str]).unwrap();
        let g = k.generator();
        let e = FormSpec::two_dim(&g, TwoDimVariant::A2Weighted).to_explicit();
        let r = e.is_p_regular_bruteforce().unwrap();
        assert!(r.regular);
        assert_eq!(r.points_checked, 5);
    }
}
