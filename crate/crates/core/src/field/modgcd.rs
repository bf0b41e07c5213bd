//! Dense evaluation/interpolation gcd over the evaluation field.
//!
//! The last variable is specialised at successive points, the gcds of the
//! images are computed recursively, scaled to a common leading coefficient
//! and interpolated back. Images whose leading monomial is too large come
//! from unlucky points and are skipped; a smaller one restarts the
//! interpolation. The candidate is accepted once an extra point leaves it
//! unchanged and its primitive part divides both inputs.

use std::collections::BTreeMap;

use super::evalfield::EvalField;
use super::gf::Gf;
use super::poly::{Monomial, Poly, MAX_VARS};

fn uni_dense(a: &Poly, var: usize) -> Vec<u16> {
    let mut out = vec![0u16; a.degree_in(var) as usize + 1];
    for (m, c) in a.terms() {
        out[m.exp(var) as usize] = *c;
    }
    trim(out)
}

fn uni_poly(v: &[u16], var: usize, k: &Gf) -> Poly {
    let raw = v
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(e, c)| (Monomial::ONE.with_exp(var, e as u32), *c))
        .collect();
    Poly::from_terms(k, raw)
}

fn trim(mut a: Vec<u16>) -> Vec<u16> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(a: &[u16], b: &[u16], k: &Gf) -> Vec<u16> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = k.inv(b[db]);
    while r.len() > db {
        let top = r.len() - 1;
        let c = k.mul(r[top], inv);
        for (i, &bc) in b.iter().enumerate() {
            let j = top - db + i;
            r[j] = k.sub(r[j], k.mul(c, bc));
        }
        r = trim(r);
    }
    r
}

/// Monic gcd of dense univariate polynomials.
pub(crate) fn dense_gcd(a: Vec<u16>, b: Vec<u16>, k: &Gf) -> Vec<u16> {
    let (mut x, mut y) = (trim(a), trim(b));
    while !y.is_empty() {
        let r = rem(&x, &y, k);
        x = y;
        y = r;
    }
    if let Some(&lc) = x.last() {
        let inv = k.inv(lc);
        x.iter_mut().for_each(|c| *c = k.mul(*c, inv));
    }
    x
}

fn uni_gcd(a: &Poly, b: &Poly, var: usize, k: &Gf) -> Poly {
    uni_poly(&dense_gcd(uni_dense(a, var), uni_dense(b, var), k), var, k)
}

/// Coefficients of `a` as a polynomial in all variables but `last`, each a
/// univariate polynomial in `last`, keyed by the remaining monomial.
fn split_last(a: &Poly, last: usize, k: &Gf) -> BTreeMap<Monomial, Poly> {
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, u16)>> = BTreeMap::new();
    for (m, c) in a.terms() {
        let e = m.exp(last);
        groups
            .entry(m.with_exp(last, 0))
            .or_default()
            .push((Monomial::ONE.with_exp(last, e), *c));
    }
    groups.into_iter().map(|(m, t)| (m, Poly::from_terms(k, t))).collect()
}

fn content_last(a: &Poly, last: usize, k: &Gf) -> Poly {
    let mut g = Poly::zero();
    for c in split_last(a, last, k).values() {
        g = if g.is_zero() { c.monic(k) } else { uni_gcd(&g, c, last, k) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn lead_last(a: &Poly, last: usize, k: &Gf) -> (Monomial, Poly) {
    let groups = split_last(a, last, k);
    let (m, c) = groups.into_iter().next_back().expect("nonzero polynomial");
    (m, c)
}

fn at(a: &Poly, var: usize, r: u16, k: &Gf) -> Poly {
    let mut values = [None; MAX_VARS];
    values[var] = Some(r);
    a.eval_constants(&values, k)
}

fn gcd_k(a: &Poly, b: &Poly, vars: &[usize], k: &Gf) -> Option<Poly> {
    if a.is_zero() {
        return Some(b.monic(k));
    }
    if b.is_zero() {
        return Some(a.monic(k));
    }
    if a.is_const() || b.is_const() {
        return Some(Poly::one());
    }
    let (&last, rest) = vars.split_last().expect("at least one variable");
    if rest.is_empty() {
        return Some(uni_gcd(a, b, last, k));
    }
    if a.degree_in(last) == 0 && b.degree_in(last) == 0 {
        return gcd_k(a, b, rest, k);
    }
    let ca = content_last(a, last, k);
    let cb = content_last(b, last, k);
    let c = uni_gcd(&ca, &cb, last, k);
    let a = a.div_exact(&ca, k).expect("content divides");
    let b = b.div_exact(&cb, k).expect("content divides");
    let gamma = uni_gcd(&lead_last(&a, last, k).1, &lead_last(&b, last, k).1, last, k);
    let mut g = Poly::zero();
    let mut modulus = Poly::one();
    let mut lm: Option<Monomial> = None;
    let x = Poly::term(Monomial::var(last), 1);
    for r in k.elements() {
        let gr_val = at(&gamma, last, r, k).constant_value().unwrap_or(0);
        if gr_val == 0 {
            continue;
        }
        let img = gcd_k(&at(&a, last, r, k), &at(&b, last, r, k), rest, k)?;
        if img.is_one() {
            return Some(c);
        }
        let img = img.scale(gr_val, k);
        let img_lm = img.lead().expect("nonzero").0;
        match lm {
            Some(cur) if img_lm > cur => continue,
            Some(cur) if img_lm == cur => {
                let diff = img.sub(&at(&g, last, r, k), k);
                if !diff.is_zero() {
                    let mr = at(&modulus, last, r, k).constant_value().expect("univariate");
                    g = g.add(&diff.mul(&modulus, k).scale(k.inv(mr), k), k);
                }
                modulus = modulus.mul(&x.sub(&Poly::constant(r), k), k);
                if diff.is_zero() {
                    let cg = content_last(&g, last, k);
                    let pp = g.div_exact(&cg, k).expect("content divides");
                    if a.div_exact(&pp, k).is_some() && b.div_exact(&pp, k).is_some() {
                        return Some(pp.mul(&c, k).monic(k));
                    }
                }
            }
            _ => {
                g = img;
                modulus = x.sub(&Poly::constant(r), k);
                lm = Some(img_lm);
            }
        }
    }
    None
}

/// gcd(a, b) over the base field via the evaluation field, or `None` when
/// the field ran out of usable points.
pub(crate) fn modular_gcd(a: &Poly, b: &Poly, vars: &[usize], ef: &EvalField, gf: &Gf) -> Option<Poly> {
    let k = &ef.k;
    let lift = |p: &Poly| Poly::from_terms(k, p.terms().iter().map(|(m, c)| (*m, ef.embed[*c as usize])).collect());
    let g = gcd_k(&lift(a), &lift(b), vars, k)?;
    let mut back = vec![None; k.order()];
    for (c, &img) in ef.embed.iter().enumerate() {
        back[img as usize] = Some(c as u16);
    }
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| back[*c as usize].map(|c| (*m, c)))
        .collect::<Option<Vec<_>>>()?;
    Some(Poly::from_terms(gf, terms))
}
