use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::gcd::gcd;
use super::gf::Gf;
use super::poly::{Monomial, Poly, MAX_VARS};
use super::FieldError;

/// The ambient field F_{p^e}(x_1, ..., x_k).
#[derive(Debug)]
pub struct FieldCtx {
    gf: Gf,
    vars: Vec<String>,
}

pub type Ctx = Arc<FieldCtx>;

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl FieldCtx {
    pub fn new<S: AsRef<str>>(p: u32, e: u32, min_poly: &[u32], vars: &[S]) -> Result<Ctx, FieldError> {
        let gf = Gf::new(p, e, min_poly)?;
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        if vars.len() > MAX_VARS {
            return Err(FieldError::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_ident(v) || (e > 1 && v == "g") {
                return Err(FieldError::BadVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(FieldError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(FieldCtx { gf, vars }))
    }

    /// F_p(vars).
    pub fn prime<S: AsRef<str>>(p: u32, vars: &[S]) -> Result<Ctx, FieldError> {
        FieldCtx::new(p, 1, &[0, 1], vars)
    }

    #[inline]
    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.gf.p()
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.gf.e()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same coefficient field with extra variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ctx, FieldError> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.as_ref().to_string()));
        FieldCtx::new(self.p(), self.e(), &self.gf.min_poly(), &vars)
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (self.gf == other.gf && self.vars == other.vars)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.gf == other.gf && self.vars == other.vars
    }
}

impl Eq for FieldCtx {}

/// Convenience constructors on the shared context handle.
pub trait CtxExt {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    fn int(&self, n: i64) -> FieldElement;
    fn coef(&self, c: u16) -> FieldElement;
    fn var(&self, i: usize) -> FieldElement;
    fn var_named(&self, name: &str) -> Result<FieldElement, FieldError>;
    fn generator(&self) -> FieldElement;
    fn from_poly(&self, p: Poly) -> FieldElement;
    fn parse(&self, text: &str) -> Result<FieldElement, FieldError>;
}

impl CtxExt for Ctx {
    fn zero(&self) -> FieldElement {
        FieldElement::from_parts_unchecked(self.clone(), Poly::zero(), Poly::one())
    }

    fn one(&self) -> FieldElement {
        self.coef(1)
    }

    fn int(&self, n: i64) -> FieldElement {
        self.coef(self.gf.from_int(n))
    }

    fn coef(&self, c: u16) -> FieldElement {
        FieldElement::from_parts_unchecked(self.clone(), Poly::constant(c), Poly::one())
    }

    fn var(&self, i: usize) -> FieldElement {
        assert!(i < self.nvars(), "variable index out of range");
        FieldElement::from_parts_unchecked(self.clone(), Poly::term(Monomial::var(i), 1), Poly::one())
    }

    fn var_named(&self, name: &str) -> Result<FieldElement, FieldError> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| FieldError::UnknownVariable(name.to_string()))
    }

    fn generator(&self) -> FieldElement {
        self.coef(self.gf.generator())
    }

    fn from_poly(&self, p: Poly) -> FieldElement {
        FieldElement::from_parts_unchecked(self.clone(), p, Poly::one())
    }

    fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        super::expr::parse(self, text)
    }
}

/// Canonical fraction num/den with gcd(num, den) = 1 and den monic.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Ctx,
    num: Poly,
    den: Poly,
}

impl FieldElement {
    pub(crate) fn from_parts_unchecked(ctx: Ctx, num: Poly, den: Poly) -> Self {
        FieldElement { ctx, num, den }
    }

    /// Brings num/den to canonical form.
    pub fn normalize(ctx: &Ctx, num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        let gf = ctx.gf();
        if num.is_zero() {
            return Ok(ctx.zero());
        }
        let (n, d) = if den.is_const() {
            (num, den)
        } else {
            let g = gcd(&num, &den, gf);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g, gf).unwrap(), den.div_exact(&g, gf).unwrap())
            }
        };
        let lc = d.lc();
        let (n, d) = if lc == 1 {
            (n, d)
        } else {
            let li = gf.inv(lc);
            (n.scale(li, gf), d.scale(li, gf))
        };
        Ok(FieldElement::from_parts_unchecked(ctx.clone(), n, d))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    #[inline]
    fn gf(&self) -> &Gf {
        self.ctx.gf()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value in F_{p^e} if the element is constant.
    pub fn constant_value(&self) -> Option<u16> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn check(&self, o: &FieldElement) {
        assert!(self.ctx.same_as(&o.ctx), "elements from different field contexts");
    }

    pub fn add_ref(&self, o: &FieldElement) -> FieldElement {
        self.check(o);
        let gf = self.gf();
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num, gf);
            if self.den.is_one() || n.is_zero() {
                return self.with(n, self.den.clone());
            }
            let h = gcd(&n, &self.den, gf);
            if h.is_one() {
                return self.with(n, self.den.clone());
            }
            return self.with(n.div_exact(&h, gf).unwrap(), self.den.div_exact(&h, gf).unwrap());
        }
        if self.den.is_one() || o.den.is_one() {
            // a + c/d = (ad + c)/d, already reduced
            let n = self.num.mul(&o.den, gf).add(&o.num.mul(&self.den, gf), gf);
            let d = self.den.mul(&o.den, gf);
            return self.with(n, d);
        }
        let g = gcd(&self.den, &o.den, gf);
        if g.is_one() {
            let n = self.num.mul(&o.den, gf).add(&o.num.mul(&self.den, gf), gf);
            let d = self.den.mul(&o.den, gf);
            return self.with(n, d);
        }
        let b1 = self.den.div_exact(&g, gf).unwrap();
        let d1 = o.den.div_exact(&g, gf).unwrap();
        let n = self.num.mul(&d1, gf).add(&o.num.mul(&b1, gf), gf);
        if n.is_zero() {
            return self.ctx.zero();
        }
        let h = gcd(&n, &g, gf);
        let (n, g) = if h.is_one() {
            (n, g)
        } else {
            (n.div_exact(&h, gf).unwrap(), g.div_exact(&h, gf).unwrap())
        };
        self.with(n, b1.mul(&d1, gf).mul(&g, gf))
    }

    /// Assumes the parts are coprime and den is monic.
    fn with(&self, num: Poly, den: Poly) -> FieldElement {
        if num.is_zero() {
            return self.ctx.zero();
        }
        FieldElement::from_parts_unchecked(self.ctx.clone(), num, den)
    }

    pub fn neg_ref(&self) -> FieldElement {
        self.with(self.num.neg(self.gf()), self.den.clone())
    }

    pub fn sub_ref(&self, o: &FieldElement) -> FieldElement {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &FieldElement) -> FieldElement {
        self.check(o);
        let gf = self.gf();
        if self.is_zero() || o.is_zero() {
            return self.ctx.zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return self.with(self.num.mul(&o.num, gf), Poly::one());
        }
        let g1 = if o.den.is_one() { Poly::one() } else { gcd(&self.num, &o.den, gf) };
        let g2 = if self.den.is_one() { Poly::one() } else { gcd(&o.num, &self.den, gf) };
        let div = |a: &Poly, g: &Poly| if g.is_one() { a.clone() } else { a.div_exact(g, gf).unwrap() };
        let n = div(&self.num, &g1).mul(&div(&o.num, &g2), gf);
        let d = div(&self.den, &g2).mul(&div(&o.den, &g1), gf);
        // num of the product picks up lc factors from the gcd divisions; den stays monic
        self.with(n, d)
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let gf = self.gf();
        let li = gf.inv(self.num.lc());
        Ok(self.with(self.den.scale(li, gf), self.num.scale(li, gf)))
    }

    pub fn div_ref(&self, o: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, k: u32) -> FieldElement {
        let gf = self.gf();
        if k == 0 {
            return self.ctx.one();
        }
        self.with(self.num.pow(k, gf), self.den.pow(k, gf))
    }

    pub fn pow_i(&self, k: i64) -> Result<FieldElement, FieldError> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv()?.pow((-k) as u32))
        }
    }

    /// a ↦ a^p.
    pub fn frobenius(&self) -> FieldElement {
        let gf = self.gf();
        self.with(self.num.frobenius(gf), self.den.frobenius(gf))
    }

    /// Artin-Schreier map a ↦ a^p − a.
    pub fn wp(&self) -> FieldElement {
        self.frobenius().sub_ref(self)
    }

    /// b with b^p = self, when one exists in F_{p^e}(x_1..x_k).
    pub fn pth_root(&self) -> Option<FieldElement> {
        let gf = self.gf();
        let n = self.num.pth_root(gf)?;
        let d = self.den.pth_root(gf)?;
        // a p-th root of a monic polynomial is monic
        Some(self.with(n, d))
    }

    pub fn partial(&self, var: usize) -> Result<FieldElement, FieldError> {
        if var >= self.ctx.nvars() {
            return Err(FieldError::UnknownVariable(format!("#{var}")));
        }
        let gf = self.gf();
        let dn = self.num.derivative(var, gf);
        if self.den.is_one() {
            return Ok(self.with(dn, Poly::one()));
        }
        let dd = self.den.derivative(var, gf);
        let n = dn.mul(&self.den, gf).sub(&self.num.mul(&dd, gf), gf);
        FieldElement::normalize(&self.ctx, n, self.den.mul(&self.den, gf))
    }

    pub fn partial_named(&self, name: &str) -> Result<FieldElement, FieldError> {
        let i = self
            .ctx
            .var_index(name)
            .ok_or_else(|| FieldError::UnknownVariable(name.to_string()))?;
        self.partial(i)
    }

    /// Moves the element into a context whose variable list extends ours.
    pub fn embed(&self, target: &Ctx) -> FieldElement {
        assert!(
            target.gf() == self.gf() && target.vars()[..self.ctx.nvars()] == *self.ctx.vars(),
            "target context does not extend the source"
        );
        FieldElement::from_parts_unchecked(target.clone(), self.num.clone(), self.den.clone())
    }

    /// Substitutes F_{p^e} constants for some variables.
    pub fn eval_constants(&self, values: &[Option<u16>]) -> Result<FieldElement, FieldError> {
        let gf = self.gf();
        let n = self.num.eval_constants(values, gf);
        let d = self.den.eval_constants(values, gf);
        FieldElement::normalize(&self.ctx, n, d)
    }

    /// A rough size measure used to order search candidates and tests.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.num == other.num && self.den == other.den
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::expr::print(self))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.$imp(o)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$imp(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.$imp(o)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$imp(&o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`FieldElement::div_ref`] to handle it.
    fn div(self, o: &FieldElement) -> FieldElement {
        self.div_ref(o).expect("division by zero")
    }
}

impl Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, o: FieldElement) -> FieldElement {
        self.div_ref(&o).expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, vars: &[&str]) -> Ctx {
        FieldCtx::prime(p, vars).unwrap()
    }

    #[test]
    fn normalize_cancels_and_rescales() {
        let k = ctx(3, &["x", "y"]);
        let gf = k.gf();
        let x = k.var(0);
        let y = k.var(1);
        // (2x^2 y, 2x) -> (xy, 1)
        let num = (&(&x * &x) * &y).num().scale(2, gf);
        let den = x.num().scale(2, gf);
        let a = FieldElement::normalize(&k, num, den).unwrap();
        assert_eq!(a, &x * &y);
        assert!(a.is_polynomial());
    }

    #[test]
    fn normalize_zero_and_errors() {
        let k = ctx(5, &["x"]);
        let x1 = &k.var(0) + &k.one();
        let z = FieldElement::normalize(&k, Poly::zero(), x1.num().clone()).unwrap();
        assert!(z.is_zero());
        assert!(z.den().is_one());
        assert_eq!(
            FieldElement::normalize(&k, x1.num().clone(), Poly::zero()).unwrap_err(),
            FieldError::ZeroDenominator
        );
    }

    #[test]
    fn normalize_over_f5() {
        // (x^2 - 1)/(x - 1) = x + 1
        let k = ctx(5, &["x"]);
        let x = k.var(0);
        let one = k.one();
        let num = (&(&x * &x) - &one).num().clone();
        let den = (&x - &one).num().clone();
        let a = FieldElement::normalize(&k, num, den).unwrap();
        assert_eq!(a, &x + &one);
    }

    #[test]
    fn partial_derivatives() {
        let k = ctx(3, &["x", "y"]);
        let x = k.var(0);
        let y = k.var(1);
        assert!(x.pow(3).partial(0).unwrap().is_zero());
        assert_eq!((&x * &y).partial(0).unwrap(), y);
        // d/dx (1/x) = -1/x^2 = 2/x^2 over F_3
        let inv = x.inv().unwrap();
        let expected = &k.int(2) / &x.pow(2);
        assert_eq!(inv.partial(0).unwrap(), expected);
        assert!(inv.partial(5).is_err());
    }

    #[test]
    fn pth_roots() {
        let k = ctx(3, &["x"]);
        let x = k.var(0);
        assert_eq!(x.pow(3).pth_root(), Some(x.clone()));
        assert_eq!(x.pth_root(), None);
        let f4 = FieldCtx::new(2, 2, &[1, 1, 1], &["x", "y"]).unwrap();
        let g = f4.generator();
        let x = f4.var(0);
        let y = f4.var(1);
        let a = &(&g * &g) * &(&(&x * &x) * &y.pow(4));
        let r = a.pth_root().unwrap();
        assert_eq!(r.pow(2), a);
        assert_eq!(r, &g * &(&x * &y.pow(2)));
    }

    #[test]
    fn artin_schreier_map() {
        let k = ctx(2, &["x"]);
        assert!(k.zero().wp().is_zero());
        assert!(k.one().wp().is_zero());
        let x = k.var(0);
        assert_eq!(x.wp(), &(&x * &x) + &x);
    }

    #[test]
    fn fraction_addition_reduces() {
        let k = ctx(2, &["x", "y"]);
        let x = k.var(0);
        let y = k.var(1);
        let a = &x / &(&x + &y);
        let b = &y / &(&x + &y);
        assert!((&a + &b).is_one());
        let c = &k.one() / &(&x * &y);
        let d = &k.one() / &(&x * &(&x + &k.one()));
        let s = &c + &d;
        let back = &s - &d;
        assert_eq!(back, c);
    }
}
