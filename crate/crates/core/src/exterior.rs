//! Differential forms over F_{p^e}(x_1..x_k) in the basis dx_{i_1} ∧ … ∧ dx_{i_n}.
//!
//! The rational function field is separably generated by its variables, so
//! the dx_i form a basis of Ω¹ and equality of forms is componentwise equality
//! of canonical field elements.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Ctx, CtxExt, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("logarithmic differential of zero")]
    ZeroArgument,
    #[error("slot {0} is zero")]
    ZeroSlot(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("component index {0:?} is not strictly increasing or out of range")]
    BadComponent(Vec<usize>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct DiffForm {
    ctx: Ctx,
    degree: usize,
    comps: BTreeMap<Vec<usize>, FieldElement>,
}

/// Sign of the permutation sorting `idx` and the sorted index list, or
/// `None` if an index repeats.
fn sort_sign(idx: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((odd, v))
    }
}

impl DiffForm {
    pub fn zero(ctx: &Ctx, degree: usize) -> Self {
        DiffForm {
            ctx: ctx.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn scalar(f: &FieldElement) -> Self {
        let mut w = DiffForm::zero(f.ctx(), 0);
        if !f.is_zero() {
            w.comps.insert(Vec::new(), f.clone());
        }
        w
    }

    /// dx_i.
    pub fn basis(ctx: &Ctx, i: usize) -> Self {
        let mut w = DiffForm::zero(ctx, 1);
        w.comps.insert(vec![i], ctx.one());
        w
    }

    /// Builds a form from (index tuple, coefficient) pairs; tuples must be
    /// strictly increasing and refer to declared variables.
    pub fn from_components<I>(ctx: &Ctx, degree: usize, comps: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (Vec<usize>, FieldElement)>,
    {
        let mut w = DiffForm::zero(ctx, degree);
        for (idx, c) in comps {
            if idx.len() != degree
                || idx.windows(2).any(|p| p[0] >= p[1])
                || idx.iter().any(|&i| i >= ctx.nvars())
            {
                return Err(FormError::BadComponent(idx));
            }
            w.add_component(idx, c);
        }
        Ok(w)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, FieldElement> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn coefficient(&self, idx: &[usize]) -> FieldElement {
        self.comps.get(idx).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Value of a 0-form.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    fn add_component(&mut self, idx: Vec<usize>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.comps.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn add(&self, o: &DiffForm) -> DiffForm {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (idx, c) in &o.comps {
            out.add_component(idx.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffForm {
        DiffForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, o: &DiffForm) -> DiffForm {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &FieldElement) -> DiffForm {
        if f.is_zero() {
            return DiffForm::zero(&self.ctx, self.degree);
        }
        DiffForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(|(k, v)| (k.clone(), v * f)).collect(),
        }
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(&self.ctx, self.degree + 1);
        for (idx, f) in &self.comps {
            for j in 0..self.ctx.nvars() {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.partial(j).expect("variable index in range");
                if df.is_zero() {
                    continue;
                }
                // dx_j ∧ dx_I: moving dx_j past the indices below j
                let pos = idx.iter().filter(|&&i| i < j).count();
                let mut new_idx = idx.clone();
                new_idx.insert(pos, j);
                let c = if pos % 2 == 1 { -&df } else { df };
                out.add_component(new_idx, c);
            }
        }
        out
    }

    pub fn wedge(&self, o: &DiffForm) -> DiffForm {
        assert!(self.ctx.same_as(&o.ctx), "forms from different field contexts");
        let mut out = DiffForm::zero(&self.ctx, self.degree + o.degree);
        if self.degree + o.degree > self.ctx.nvars() {
            return out;
        }
        for (i, a) in &self.comps {
            for (j, b) in &o.comps {
                let mut cat = i.clone();
                cat.extend_from_slice(j);
                let Some((odd, sorted)) = sort_sign(&cat) else {
                    continue;
                };
                let c = a * b;
                out.add_component(sorted, if odd { -&c } else { c });
            }
        }
        out
    }

    /// Logarithmic differential dβ/β.
    pub fn dlog(beta: &FieldElement) -> Result<DiffForm, FormError> {
        if beta.is_zero() {
            return Err(FormError::ZeroArgument);
        }
        let ctx = beta.ctx();
        let mut out = DiffForm::zero(ctx, 1);
        // dlog(n/d) = n'/n − d'/d
        let num = ctx.from_poly(beta.num().clone());
        let den = ctx.from_poly(beta.den().clone());
        for j in 0..ctx.nvars() {
            let mut c = num.partial(j).unwrap() / num.clone();
            if !beta.is_polynomial() {
                c = &c - &(den.partial(j).unwrap() / den.clone());
            }
            out.add_component(vec![j], c);
        }
        Ok(out)
    }

    /// α · dlog β₁ ∧ … ∧ dlog βₙ.
    pub fn decomposable(alpha: &FieldElement, slots: &[FieldElement]) -> Result<DiffForm, FormError> {
        let ctx = alpha.ctx();
        let mut acc = DiffForm::scalar(alpha);
        for (i, b) in slots.iter().enumerate() {
            if b.is_zero() {
                return Err(FormError::ZeroSlot(i));
            }
            if acc.is_zero() {
                return Ok(DiffForm::zero(ctx, slots.len()));
            }
            acc = acc.wedge(&DiffForm::dlog(b)?);
        }
        Ok(acc)
    }

    /// Image (u^p − u) · dlog β₁ ∧ … ∧ dlog βₙ of a decomposable generator.
    pub fn wp_image(u: &FieldElement, slots: &[FieldElement]) -> Result<DiffForm, FormError> {
        DiffForm::decomposable(&u.wp(), slots)
    }

    /// dlog β₁ ∧ … ∧ dlog βₙ (the empty product is the 0-form 1).
    pub fn dlog_product(ctx: &Ctx, slots: &[FieldElement]) -> Result<DiffForm, FormError> {
        DiffForm::decomposable(&ctx.one(), slots)
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm(deg {}; ", self.degree)?;
        let mut first = true;
        for (idx, c) in &self.comps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let names: Vec<String> = idx.iter().map(|&i| format!("d{}", self.ctx.vars()[i])).collect();
            write!(f, "({c})")?;
            if !names.is_empty() {
                write!(f, " {}", names.join("∧"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn d_of_product() {
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let x = k.var(0);
        let y = k.var(1);
        let w = DiffForm::scalar(&(&x * &y)).d();
        let expected = DiffForm::basis(&k, 0).scale(&y).add(&DiffForm::basis(&k, 1).scale(&x));
        assert_eq!(w, expected);
        let a = &(&x.pow(2) * &y) + &(&k.one() / &y);
        assert!(DiffForm::scalar(&a).d().d().is_zero());
    }

    #[test]
    fn d_of_one_form_sign() {
        // d(x^2 dy) = 2x dx∧dy over F_3
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let x = k.var(0);
        let w = DiffForm::basis(&k, 1).scale(&x.pow(2)).d();
        let expected = DiffForm::from_components(&k, 2, [(vec![0, 1], &k.int(2) * &x)]).unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn wedge_examples() {
        let k = FieldCtx::prime(5, &["x", "y", "z"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let dx = DiffForm::basis(&k, 0);
        let dy = DiffForm::basis(&k, 1);
        let dz = DiffForm::basis(&k, 2);
        assert!(dx.wedge(&dx).is_zero());
        assert_eq!(dy.wedge(&dx), dx.wedge(&dy).neg());
        let lhs = dx.scale(&x).wedge(&dy.scale(&y).add(&dz));
        let expected = DiffForm::from_components(&k, 2, [(vec![0, 1], &x * &y), (vec![0, 2], x.clone())]).unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn dlog_examples() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let x = k.var(0);
        assert_eq!(DiffForm::dlog(&x).unwrap(), DiffForm::basis(&k, 0).scale(&x.inv().unwrap()));
        assert!(DiffForm::dlog(&k.one()).unwrap().is_zero());
        assert_eq!(DiffForm::dlog(&k.zero()), Err(FormError::ZeroArgument));

        let k3 = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (k3.var(0), k3.var(1));
        let w = DiffForm::dlog(&(&x.pow(2) * &y)).unwrap();
        let expected = DiffForm::from_components(
            &k3,
            1,
            [(vec![0], &k3.int(2) / &x), (vec![1], &k3.one() / &y)],
        )
        .unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn decomposable_examples() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let w = DiffForm::decomposable(&x, &[y.clone()]).unwrap();
        assert_eq!(w, DiffForm::basis(&k, 1).scale(&(&x / &y)));
        assert!(DiffForm::decomposable(&x, &[y.clone(), y.clone()]).unwrap().is_zero());

        let k3 = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (k3.var(0), k3.var(1));
        let w = DiffForm::decomposable(&k3.one(), &[x.clone(), y.clone()]).unwrap();
        let expected = DiffForm::from_components(&k3, 2, [(vec![0, 1], (&x * &y).inv().unwrap())]).unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn wp_image_examples() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        assert!(DiffForm::wp_image(&k.one(), &[y.clone()]).unwrap().is_zero());
        let w = DiffForm::wp_image(&x, &[y.clone()]).unwrap();
        assert_eq!(w, DiffForm::basis(&k, 1).scale(&(&(&x.pow(2) + &x) / &y)));

        let k3 = FieldCtx::prime(3, &["x"]).unwrap();
        let x = k3.var(0);
        let w = DiffForm::wp_image(&x, &[x.clone()]).unwrap();
        assert_eq!(w, DiffForm::basis(&k3, 0).scale(&(&x.pow(2) - &k3.one())));
        assert_eq!(DiffForm::wp_image(&x, &[k3.zero()]), Err(FormError::ZeroSlot(0)));
    }

    #[test]
    fn top_degree_vanishes() {
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let w = DiffForm::dlog_product(&k, &[x.clone(), y.clone(), &x + &y]).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 3);
    }
}
