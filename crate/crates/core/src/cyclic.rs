//! Cyclic p-algebras [α, β) given by structure constants.
//!
//! The algebra has basis x^i·y^j (0 ≤ i, j < p) with x^p = x + α, y^p = β and
//! y·x = (x + 1)·y. Coordinates are stored at index i + p·j.

use thiserror::Error;

use crate::field::{Ctx, CtxExt, FieldElement};
use crate::pforms::norm::norm;
use crate::symbol::ASElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the second parameter must be nonzero")]
    ZeroBeta,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("the norm of g is zero, so g(x) is not invertible")]
    NonInvertible,
    #[error("associativity fails on basis triple {0:?}")]
    NotAssociative((usize, usize, usize)),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    coords: Vec<FieldElement>,
}

impl AlgebraElement {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Coefficient of x^i·y^j.
    pub fn coord(&self, i: usize, j: usize) -> &FieldElement {
        let p = (self.coords.len() as f64).sqrt() as usize;
        &self.coords[i + p * j]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> AlgebraElement {
        AlgebraElement {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CyclicAlgebra {
    ctx: Ctx,
    alpha: FieldElement,
    beta: FieldElement,
    p: usize,
    /// Products of basis elements, indexed by (left, right).
    table: Vec<Vec<FieldElement>>,
}

/// Reduces a polynomial in x modulo x^p − x − α.
fn reduce_x(mut poly: Vec<FieldElement>, p: usize, alpha: &FieldElement) -> Vec<FieldElement> {
    while poly.len() > p {
        let top = poly.pop().expect("nonempty");
        let k = poly.len();
        // x^k = x^{k−p}·x + x^{k−p}·α
        poly[k - p + 1] = &poly[k - p + 1] + &top;
        poly[k - p] = &poly[k - p] + &(&top * alpha);
    }
    poly
}

impl CyclicAlgebra {
    pub fn new(alpha: FieldElement, beta: FieldElement) -> Result<Self, AlgebraError> {
        if beta.is_zero() {
            return Err(AlgebraError::ZeroBeta);
        }
        let ctx = alpha.ctx().clone();
        let p = ctx.p() as usize;
        let mut table = Vec::with_capacity(p.pow(4));
        for left in 0..p * p {
            let (a, b) = (left % p, left / p);
            for right in 0..p * p {
                let (c, d) = (right % p, right / p);
                // x^a·y^b·x^c·y^d = x^a·(x + b)^c·y^{b+d}
                let shift = ctx.int(b as i64);
                let mut poly = vec![ctx.zero(); a];
                poly.push(ctx.one());
                for _ in 0..c {
                    let mut next = vec![ctx.zero(); poly.len() + 1];
                    for (k, coef) in poly.iter().enumerate() {
                        next[k + 1] = &next[k + 1] + coef;
                        next[k] = &next[k] + &(coef * &shift);
                    }
                    poly = next;
                }
                let poly = reduce_x(poly, p, &alpha);
                let (j, scalar) = if b + d >= p { (b + d - p, beta.clone()) } else { (b + d, ctx.one()) };
                let mut out = vec![ctx.zero(); p * p];
                for (i, coef) in poly.iter().enumerate() {
                    out[i + p * j] = coef * &scalar;
                }
                table.push(out);
            }
        }
        Ok(CyclicAlgebra {
            ctx,
            alpha,
            beta,
            p,
            table,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn dim(&self) -> usize {
        self.p * self.p
    }

    pub fn element(&self, coords: Vec<FieldElement>) -> Result<AlgebraElement, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::WrongLength {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        Ok(AlgebraElement { coords })
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coords: vec![self.ctx.zero(); self.dim()],
        }
    }

    pub fn scalar(&self, c: &FieldElement) -> AlgebraElement {
        let mut z = self.zero();
        z.coords[0] = c.clone();
        z
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(&self.ctx.one())
    }

    /// x^i·y^j.
    pub fn basis(&self, i: usize, j: usize) -> AlgebraElement {
        let mut z = self.zero();
        z.coords[i + self.p * j] = self.ctx.one();
        z
    }

    pub fn x(&self) -> AlgebraElement {
        self.basis(1, 0)
    }

    pub fn y(&self) -> AlgebraElement {
        self.basis(0, 1)
    }

    /// c₀ + c₁x + … + c_{p−1}x^{p−1}.
    pub fn x_poly(&self, coeffs: &[FieldElement]) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.len() > self.p {
            return Err(AlgebraError::WrongLength {
                expected: self.p,
                got: coeffs.len(),
            });
        }
        let mut z = self.zero();
        z.coords[..coeffs.len()].clone_from_slice(coeffs);
        Ok(z)
    }

    pub fn mult(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let dim = self.dim();
        let mut out = self.zero();
        for (l, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (r, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (k, t) in self.table[l * dim + r].iter().enumerate() {
                    if !t.is_zero() {
                        out.coords[k] = &out.coords[k] + &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// a multiplied by itself p times.
    pub fn power_p(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut acc = a.clone();
        for _ in 1..self.p {
            acc = self.mult(&acc, a);
        }
        acc
    }

    fn power_p_minus_one(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut acc = self.one();
        for _ in 1..self.p {
            acc = self.mult(&acc, a);
        }
        acc
    }

    /// Exact check of (uv)w = u(vw) on every triple of basis elements.
    pub fn check_associativity(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        let unit = |k: usize| {
            let mut z = self.zero();
            z.coords[k] = self.ctx.one();
            z
        };
        for u in 0..dim {
            for v in 0..dim {
                let uv = self.mult(&unit(u), &unit(v));
                for w in 0..dim {
                    let vw = self.mult(&unit(v), &unit(w));
                    if self.mult(&uv, &unit(w)) != self.mult(&unit(u), &vw) {
                        return Err(AlgebraError::NotAssociative((u, v, w)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// An explicit zero divisor splitting [α, N(g)).
#[derive(Clone, Debug)]
pub struct SplitWitness {
    pub algebra: CyclicAlgebra,
    pub norm: FieldElement,
    pub g_inverse: AlgebraElement,
    /// t = g(x)⁻¹·y.
    pub t: AlgebraElement,
    pub t_power: AlgebraElement,
    /// (t − 1)^p, computed by repeated multiplication.
    pub nilpotent_power: AlgebraElement,
}

impl SplitWitness {
    /// t^p = 1 and (t − 1)^p = 0.
    pub fn holds(&self) -> bool {
        self.t_power == self.algebra.one() && self.nilpotent_power.is_zero()
    }
}

/// Builds A = [α, N(g)) and t = g(x)⁻¹·y, then computes t^p and (t − 1)^p.
pub fn split_witness(alpha: &FieldElement, g: &[FieldElement]) -> Result<SplitWitness, AlgebraError> {
    let ctx = alpha.ctx();
    let p = ctx.p() as usize;
    let g_elem = ASElement::from_prefix(ctx, g).map_err(|_| AlgebraError::WrongLength {
        expected: p,
        got: g.len(),
    })?;
    let n = norm(alpha, &g_elem);
    if n.is_zero() {
        return Err(AlgebraError::NonInvertible);
    }
    let algebra = CyclicAlgebra::new(alpha.clone(), n.clone())?;
    // g⁻¹ = g(x+1)·g(x+2)···g(x+p−1) / N(g)
    let gx = algebra.x_poly(g)?;
    let y = algebra.y();
    // y⁻¹ = y^{p−1}/β
    let y_inv = algebra.power_p_minus_one(&y).scale(&n.inv().expect("nonzero"));
    let mut conj = algebra.one();
    let mut shifted = gx.clone();
    for _ in 1..p {
        // y·h(x)·y⁻¹ = h(x + 1)
        shifted = algebra.mult(&algebra.mult(&y, &shifted), &y_inv);
        conj = algebra.mult(&conj, &shifted);
    }
    let g_inverse = conj.scale(&n.inv().expect("nonzero"));
    debug_assert_eq!(algebra.mult(&g_inverse, &gx), algebra.one());
    let t = algebra.mult(&g_inverse, &y);
    let t_power = algebra.power_p(&t);
    let nilpotent_power = algebra.power_p(&t.sub(&algebra.one()));
    Ok(SplitWitness {
        algebra,
        norm: n,
        g_inverse,
        t,
        t_power,
        nilpotent_power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn relations() {
        for p in [2u32, 3, 5] {
            let k = FieldCtx::prime(p, &["a", "b"]).unwrap();
            let (a, b) = (k.var(0), k.var(1));
            let alg = CyclicAlgebra::new(a.clone(), b.clone()).unwrap();
            let (x, y) = (alg.x(), alg.y());
            assert_eq!(alg.mult(&y, &x), alg.mult(&x, &y).add(&y));
            assert_eq!(alg.power_p(&y), alg.scalar(&b));
            assert_eq!(alg.power_p(&x), x.add(&alg.scalar(&a)));
            let s = x.add(&y);
            assert_eq!(alg.mult(&s, &alg.one()), s);
            assert_eq!(alg.mult(&alg.one(), &s), s);
        }
    }

    #[test]
    fn associative() {
        for p in [2u32, 3] {
            let k = FieldCtx::prime(p, &["a", "b"]).unwrap();
            let alg = CyclicAlgebra::new(k.var(0), k.var(1)).unwrap();
            alg.check_associativity().unwrap();
        }
        let k = FieldCtx::prime(2, &["a"]).unwrap();
        assert_eq!(CyclicAlgebra::new(k.var(0), k.zero()).unwrap_err(), AlgebraError::ZeroBeta);
    }

    #[test]
    fn split_witnesses() {
        let k = FieldCtx::prime(2, &["a"]).unwrap();
        let a = k.var(0);
        let w = split_witness(&a, &[k.one()]).unwrap();
        assert_eq!(w.t, w.algebra.y());
        assert!(w.holds());
        let w = split_witness(&a, &[k.zero(), k.one()]).unwrap();
        assert_eq!(w.norm, a);
        assert!(w.holds());

        let k = FieldCtx::prime(3, &["a", "c"]).unwrap();
        let (a, c) = (k.var(0), k.var(1));
        let w = split_witness(&a, &[c.clone(), k.one()]).unwrap();
        assert!(w.holds());
        assert_eq!(
            split_witness(&a, &[k.zero(), k.zero()]).unwrap_err(),
            AlgebraError::NonInvertible
        );
    }
}
