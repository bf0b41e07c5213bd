//! Univariate polynomials in an auxiliary indeterminate T over the rational
//! function field. Used for Artin-Schreier polynomials T^p − T − α.

use super::element::{Ctx, CtxExt, FieldElement};
use super::FieldError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    ctx: Ctx,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(ctx: &Ctx, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// T^p − T − α.
    pub fn artin_schreier(alpha: &FieldElement) -> Self {
        let ctx = alpha.ctx();
        let p = ctx.p() as usize;
        let mut c = vec![ctx.zero(); p + 1];
        c[0] = -alpha;
        c[1] = -ctx.one();
        c[p] = &c[p] + &ctx.one();
        UniPoly::new(ctx, c)
    }

    /// The monic linear polynomial T − r.
    pub fn linear(root: &FieldElement) -> Self {
        UniPoly::new(root.ctx(), vec![-root, root.ctx().one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                UniPoly::new(&self.ctx, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, t: &FieldElement) -> FieldElement {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::new(&self.ctx, vec![]);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.ctx, out)
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lc().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] * &inv;
            if !q.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let k = top - dd + i;
                    r[k] = &r[k] - &(&q * dc);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(&self.ctx, r)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, o: &UniPoly) -> Result<UniPoly, FieldError> {
        if self.is_zero() && o.is_zero() {
            return Err(FieldError::BothZero);
        }
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}

/// Monic gcd of two univariate polynomials (error if both are zero).
pub fn uni_gcd(f: &UniPoly, h: &UniPoly) -> Result<UniPoly, FieldError> {
    f.gcd(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn gcd_examples() {
        let k = FieldCtx::prime(3, &["x"]).unwrap();
        let x = k.var(0);
        // gcd(T^2 - x^2, T - x) = T - x
        let f = UniPoly::new(&k, vec![-&x.pow(2), k.zero(), k.one()]);
        let h = UniPoly::linear(&x);
        assert_eq!(uni_gcd(&f, &h).unwrap(), h);

        let k2 = FieldCtx::prime(2, &["x"]).unwrap();
        let x = k2.var(0);
        // x is a root of T^2 - T - (x^2 + x)
        let asp = UniPoly::artin_schreier(&x.wp());
        assert_eq!(uni_gcd(&asp, &UniPoly::linear(&x)).unwrap(), UniPoly::linear(&x));
        // T^2 + T + x and T + 1 are coprime
        let f = UniPoly::new(&k2, vec![x.clone(), k2.one(), k2.one()]);
        let h = UniPoly::new(&k2, vec![k2.one(), k2.one()]);
        assert_eq!(uni_gcd(&f, &h).unwrap().degree(), Some(0));
        let zero = UniPoly::new(&k2, vec![]);
        assert_eq!(uni_gcd(&zero, &zero), Err(FieldError::BothZero));
    }
}
