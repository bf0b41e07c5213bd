//! Sparse multivariate polynomials over F_{p^e}.
//!
//! Terms are kept sorted in strictly decreasing graded-lexicographic order with
//! no zero coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;

use super::gf::Gf;

pub const MAX_VARS: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        deg: 0,
        exps: [0; MAX_VARS],
    };

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(o.exps[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn div_into(&self, o: &Monomial) -> Monomial {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(o.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut m = *self;
        for e in m.exps.iter_mut() {
            *e = u16::try_from(*e as u32 * k).expect("exponent overflow");
        }
        m.deg *= k;
        m
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u16)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u16) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn term(m: Monomial, c: u16) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(gf: &Gf, mut raw: Vec<(Monomial, u16)>) -> Self {
        raw.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, u16)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 = gf.add(last.1, c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        Poly { terms }
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u16)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    /// Nonzero constant.
    #[inline]
    pub fn is_const(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<u16> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&(Monomial, u16)> {
        self.terms.first()
    }

    pub fn lc(&self) -> u16 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(var) > 0)
    }

    pub fn add(&self, o: &Poly, gf: &Gf) -> Poly {
        self.merge(o, gf, false)
    }

    pub fn sub(&self, o: &Poly, gf: &Gf) -> Poly {
        self.merge(o, gf, true)
    }

    fn merge(&self, o: &Poly, gf: &Gf, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        let fix = |c: u16| if negate { gf.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, fix(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = gf.add(a[i].1, fix(b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|t| (t.0, fix(t.1))));
        Poly { terms: out }
    }

    pub fn neg(&self, gf: &Gf) -> Poly {
        Poly {
            terms: self.terms.iter().map(|&(m, c)| (m, gf.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u16, gf: &Gf) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        if c == 1 {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|&(m, a)| (m, gf.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u16, gf: &Gf) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(tm, tc)| (tm.mul(m), gf.mul(tc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Poly, gf: &Gf) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.is_const() {
            return o.scale(self.terms[0].1, gf);
        }
        if o.is_const() {
            return self.scale(o.terms[0].1, gf);
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            return big.mul_term(&small.terms[0].0, small.terms[0].1, gf);
        }
        let mut raw = Vec::with_capacity(self.len() * o.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &o.terms {
                raw.push((ma.mul(&mb), gf.mul(ca, cb)));
            }
        }
        Poly::from_terms(gf, raw)
    }

    pub fn pow(&self, mut k: u32, gf: &Gf) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, gf);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, gf);
            }
        }
        acc
    }

    /// The p-th power, computed termwise (Frobenius is additive).
    pub fn frobenius(&self, gf: &Gf) -> Poly {
        let p = gf.p();
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| (m.pow(p), gf.pow(c, p as u64)))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, gf: &Gf) -> Poly {
        let lc = self.lc();
        if lc == 0 || lc == 1 {
            self.clone()
        } else {
            self.scale(gf.inv(lc), gf)
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly, gf: &Gf) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.is_const() {
            return Some(self.scale(gf.inv(d.terms[0].1), gf));
        }
        let (dm, dc) = d.terms[0];
        let dinv = gf.inv(dc);
        if d.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for &(m, c) in &self.terms {
                if !dm.divides(&m) {
                    return None;
                }
                out.push((dm.div_into(&m), gf.mul(c, dinv)));
            }
            return Some(Poly { terms: out });
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some(&(rm, rc)) = r.terms.first() {
            if !dm.divides(&rm) || rm.degree() < dm.degree() {
                return None;
            }
            let tm = dm.div_into(&rm);
            let tc = gf.mul(rc, dinv);
            r = r.sub(&d.mul_term(&tm, tc, gf), gf);
            q.push((tm, tc));
        }
        Some(Poly { terms: q })
    }

    /// Formal partial derivative in variable `var`.
    pub fn derivative(&self, var: usize, gf: &Gf) -> Poly {
        let mut out = Vec::new();
        for &(m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let k = gf.from_int(e as i64);
            let c2 = gf.mul(c, k);
            if c2 != 0 {
                out.push((m.with_exp(var, e - 1), c2));
            }
        }
        // lowering one exponent can reorder terms in grlex
        Poly::from_terms(gf, out)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        let mut g = first.0;
        for t in it {
            g = g.gcd(&t.0);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|&(tm, c)| (m.div_into(&tm), c)).collect(),
        }
    }

    /// Coefficients with respect to `var`, as polynomials not involving it.
    pub fn coeffs_in(&self, var: usize, gf: &Gf) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, u16)>> = vec![Vec::new(); deg + 1];
        for &(m, c) in &self.terms {
            let e = m.exp(var) as usize;
            buckets[e].push((m.with_exp(var, 0), c));
        }
        buckets
            .into_iter()
            .map(|b| {
                // removing a variable keeps relative grlex order only up to degree ties
                Poly::from_terms(gf, b)
            })
            .collect()
    }

    pub fn from_coeffs_in(var: usize, coeffs: &[Poly], gf: &Gf) -> Poly {
        let mut raw = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for &(m, a) in &c.terms {
                raw.push((m.with_exp(var, e as u32), a));
            }
        }
        Poly::from_terms(gf, raw)
    }

    /// Substitutes constants for variables, leaving others alone.
    pub fn eval_constants(&self, values: &[Option<u16>], gf: &Gf) -> Poly {
        let mut raw = Vec::with_capacity(self.len());
        for &(m, c) in &self.terms {
            let mut coef = c;
            let mut mm = m;
            for (i, v) in values.iter().enumerate() {
                if let Some(val) = v {
                    let e = m.exp(i);
                    if e > 0 {
                        coef = gf.mul(coef, gf.pow(*val, e as u64));
                        mm = mm.with_exp(i, 0);
                    }
                }
            }
            raw.push((mm, coef));
        }
        Poly::from_terms(gf, raw)
    }

    /// If every exponent is divisible by p, returns the p-th root.
    pub fn pth_root(&self, gf: &Gf) -> Option<Poly> {
        let p = gf.p();
        let mut out = Vec::with_capacity(self.len());
        for &(m, c) in &self.terms {
            let mut r = Monomial::ONE;
            for i in 0..MAX_VARS {
                let e = m.exp(i);
                if e % p != 0 {
                    return None;
                }
                if e > 0 {
                    r = r.with_exp(i, e / p);
                }
            }
            out.push((r, gf.pth_root(c)));
        }
        Some(Poly { terms: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::term(Monomial::var(i), 1)
    }

    #[test]
    fn grlex_order() {
        let gf = Gf::prime_field(3).unwrap();
        // x^2 > x*y > y^2 > x > y > 1
        let p = Poly::from_terms(
            &gf,
            vec![
                (Monomial::ONE, 1),
                (Monomial::from_exps(&[0, 1]), 1),
                (Monomial::from_exps(&[0, 2]), 1),
                (Monomial::from_exps(&[1, 1]), 1),
                (Monomial::from_exps(&[2, 0]), 1),
                (Monomial::from_exps(&[1, 0]), 1),
            ],
        );
        let exps: Vec<Vec<u32>> = p.terms().iter().map(|t| t.0.exps(2)).collect();
        assert_eq!(
            exps,
            vec![vec![2, 0], vec![1, 1], vec![0, 2], vec![1, 0], vec![0, 1], vec![0, 0]]
        );
    }

    #[test]
    fn exact_division() {
        let gf = Gf::prime_field(5).unwrap();
        let a = x(0).add(&Poly::one(), &gf);
        let b = x(0).sub(&x(1), &gf);
        let prod = a.mul(&b, &gf).mul(&a, &gf);
        assert_eq!(prod.div_exact(&a, &gf).unwrap(), a.mul(&b, &gf));
        assert!(prod.div_exact(&x(1), &gf).is_none());
    }

    #[test]
    fn derivative_in_char_p() {
        let gf = Gf::prime_field(3).unwrap();
        let cube = x(0).pow(3, &gf);
        assert!(cube.derivative(0, &gf).is_zero());
        let xy = x(0).mul(&x(1), &gf);
        assert_eq!(xy.derivative(0, &gf), x(1));
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let gf = Gf::prime_field(2).unwrap();
        let p = x(0).mul(&x(1), &gf).add(&x(1).pow(3, &gf), &gf).add(&x(0), &gf);
        let c = p.coeffs_in(1, &gf);
        assert_eq!(c.len(), 4);
        assert_eq!(Poly::from_coeffs_in(1, &c, &gf), p);
    }
}
