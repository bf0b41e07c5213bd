//! Norms from the Artin-Schreier algebra L = F[λ]/(λ^p − λ − α).

use crate::field::{CtxExt, FieldElement};
use crate::symbol::ASElement;

/// Determinant by Gaussian elimination over the rational function field.
pub fn determinant(mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let ctx = m[0][0].ctx().clone();
    let mut det = ctx.one();
    for col in 0..n {
        // prefer the lightest nonzero pivot to limit growth
        let Some(piv) = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].weight())
        else {
            return ctx.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = &det * &pv;
        let inv = pv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    det
}

/// Matrix of multiplication by `f` on L in the basis 1, λ, …, λ^{p−1}
/// (column k holds the coordinates of f·λ^k).
pub fn multiplication_matrix(alpha: &FieldElement, f: &ASElement) -> Vec<Vec<FieldElement>> {
    let ctx = alpha.ctx();
    let p = ctx.p() as usize;
    let lambda = ASElement::lambda(ctx);
    let mut col = f.clone();
    let mut cols = Vec::with_capacity(p);
    for _ in 0..p {
        cols.push(col.coeffs().to_vec());
        col = col.mul(&lambda, alpha);
    }
    (0..p).map(|r| (0..p).map(|c| cols[c][r].clone()).collect()).collect()
}

/// N_{L/F}(f) = det of multiplication by f.
pub fn norm(alpha: &FieldElement, f: &ASElement) -> FieldElement {
    if f.is_zero() {
        return alpha.ctx().zero();
    }
    if f.is_constant() {
        return f.coeffs()[0].pow(alpha.ctx().p());
    }
    determinant(multiplication_matrix(alpha, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn norm_of_lambda_is_alpha() {
        for p in [2, 3, 5] {
            let k = FieldCtx::prime(p, &["x"]).unwrap();
            let a = k.var(0);
            assert_eq!(norm(&a, &ASElement::lambda(&k)), a);
        }
    }

    #[test]
    fn norm_of_constant() {
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let c = &k.var(1) + &k.one();
        assert_eq!(norm(&k.var(0), &ASElement::constant(&c)), c.pow(3));
        // the determinant path agrees on constants too
        let m = multiplication_matrix(&k.var(0), &ASElement::constant(&c));
        assert_eq!(determinant(m), c.pow(3));
    }
}
