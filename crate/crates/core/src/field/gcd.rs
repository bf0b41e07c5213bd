//! Multivariate gcd by recursive content/primitive-part splitting.
//!
//! One variable is chosen as the main variable, contents are taken in the
//! remaining variables (recursively), and the primitive parts are reduced with
//! a primitive pseudo-remainder sequence.

use std::cell::RefCell;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::evalfield::{eval_field, EvalField};
use super::gf::Gf;
use super::modgcd::modular_gcd;
use super::poly::{Poly, MAX_VARS};

/// Monic gcd. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly, gf: &Gf) -> Poly {
    if a.is_zero() {
        return b.monic(gf);
    }
    if b.is_zero() {
        return a.monic(gf);
    }
    if a.is_const() || b.is_const() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_monomial(&ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_monomial(&mb) };
    let g = gcd_no_monomial(&a1, &b1, gf);
    if m.is_one() {
        g
    } else {
        g.mul_term(&m, 1, gf)
    }
}

fn vars_of(a: &Poly) -> [u32; MAX_VARS] {
    let mut d = [0u32; MAX_VARS];
    for (m, _) in a.terms() {
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = (*slot).max(m.exp(i));
        }
    }
    d
}

fn gcd_no_monomial(a: &Poly, b: &Poly, gf: &Gf) -> Poly {
    if a.is_zero() {
        return b.monic(gf);
    }
    if b.is_zero() {
        return a.monic(gf);
    }
    if a.is_const() || b.is_const() || a.len() == 1 || b.len() == 1 {
        // a single term with trivial monomial content is a constant
        return Poly::one();
    }
    if a == b {
        return a.monic(gf);
    }
    // cheap divisibility test when one side is much smaller
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.div_exact(small, gf).is_some() {
        return small.monic(gf);
    }
    let da = vars_of(a);
    let db = vars_of(b);
    // a variable present in only one argument: gcd divides the content there
    for v in 0..MAX_VARS {
        if da[v] > 0 && db[v] == 0 {
            let c = content_in(a, v, gf);
            return gcd(&c, b, gf);
        }
        if db[v] > 0 && da[v] == 0 {
            let c = content_in(b, v, gf);
            return gcd(a, &c, gf);
        }
    }
    let shared: Vec<usize> = (0..MAX_VARS).filter(|&v| da[v] > 0 && db[v] > 0).collect();
    let ef = eval_field(gf);
    let bounds: Vec<Option<usize>> = shared.iter().map(|&v| degree_bound(a, b, v, &ef, gf)).collect();
    if bounds.iter().all(|b| *b == Some(0)) {
        return Poly::one();
    }
    // the gcd is free of a variable with bound 0, so it divides both contents
    if let Some(pos) = bounds.iter().position(|b| *b == Some(0)) {
        let v = shared[pos];
        return gcd(&content_in(a, v, gf), &content_in(b, v, gf), gf);
    }
    if let Some(g) = modular_gcd(a, b, &shared, &ef, gf) {
        return g;
    }
    prs_gcd(a, b, &shared, gf)
}

/// Primitive pseudo-remainder sequence in the shared variable of least degree.
fn prs_gcd(a: &Poly, b: &Poly, shared: &[usize], gf: &Gf) -> Poly {
    let (da, db) = (vars_of(a), vars_of(b));
    let main = *shared
        .iter()
        .min_by_key(|&&v| da[v].max(db[v]))
        .expect("nonconstant polynomials share a variable here");
    let ca = a.coeffs_in(main, gf);
    let cb = b.coeffs_in(main, gf);
    let conta = content(&ca, gf);
    let contb = content(&cb, gf);
    let c = gcd(&conta, &contb, gf);
    let mut pa = div_all(&ca, &conta, gf);
    let mut pb = div_all(&cb, &contb, gf);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = prem(&pa, &pb, gf);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            pb = vec![Poly::one()];
            break;
        }
        let cr = content(&r, gf);
        pa = pb;
        pb = div_all(&r, &cr, gf);
    }
    let g = Poly::from_coeffs_in(main, &pb, gf);
    g.mul(&c, gf).monic(gf)
}

thread_local! {
    static POINTS: RefCell<StdRng> = RefCell::new(StdRng::seed_from_u64(0x5eed));
}

/// a as a univariate polynomial in `v` over the evaluation field, with the
/// other variables set to `point`.
fn eval_univariate(a: &Poly, v: usize, point: &[u16], ef: &EvalField) -> Vec<u16> {
    let k = &ef.k;
    let mut out = vec![0u16; a.degree_in(v) as usize + 1];
    for (m, c) in a.terms() {
        let mut t = ef.embed[*c as usize];
        for (w, &x) in point.iter().enumerate() {
            let e = m.exp(w);
            if w != v && e > 0 {
                t = k.mul(t, k.pow(x, e as u64));
            }
        }
        let slot = &mut out[m.exp(v) as usize];
        *slot = k.add(*slot, t);
    }
    out
}

fn uni_trim(mut a: Vec<u16>) -> Vec<u16> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn uni_rem(a: &[u16], b: &[u16], k: &Gf) -> Vec<u16> {
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
        r = uni_trim(r);
    }
    r
}

/// An upper bound on deg_v gcd(a, b): the degree of the gcd of the images
/// at a random point where the leading coefficient of `a` survives.
fn degree_bound(a: &Poly, b: &Poly, v: usize, ef: &EvalField, gf: &Gf) -> Option<usize> {
    let _ = gf;
    let q = ef.k.order();
    for _ in 0..3 {
        let point: Vec<u16> = POINTS.with(|r| {
            let mut r = r.borrow_mut();
            (0..MAX_VARS).map(|_| r.gen_range(0..q) as u16).collect()
        });
        let ua = eval_univariate(a, v, &point, ef);
        if *ua.last().expect("nonempty") == 0 {
            continue;
        }
        let mut x = ua;
        let mut y = uni_trim(eval_univariate(b, v, &point, ef));
        while !y.is_empty() {
            let r = uni_rem(&x, &y, &ef.k);
            x = y;
            y = r;
        }
        return Some(x.len() - 1);
    }
    None
}

/// Content with respect to `var`, i.e. the gcd of the coefficients.
fn content_in(a: &Poly, var: usize, gf: &Gf) -> Poly {
    content(&a.coeffs_in(var, gf), gf)
}

fn content(cs: &[Poly], gf: &Gf) -> Poly {
    let mut nonzero: Vec<&Poly> = cs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| (c.total_degree(), c.len()));
    let mut g = Poly::zero();
    for c in nonzero {
        g = gcd(&g, c, gf);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_all(cs: &[Poly], d: &Poly, gf: &Gf) -> Vec<Poly> {
    if d.is_one() {
        return cs.to_vec();
    }
    cs.iter()
        .map(|c| c.div_exact(d, gf).expect("content divides every coefficient"))
        .collect()
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Sparse pseudo-remainder in R[v] with dense coefficient vectors.
fn prem(a: &[Poly], b: &[Poly], gf: &Gf) -> Vec<Poly> {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = trim(a.to_vec());
    while r.len() > n {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - n;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lb, gf)).collect();
        for (i, bc) in b.iter().enumerate() {
            if bc.is_zero() {
                continue;
            }
            next[shift + i] = next[shift + i].sub(&bc.mul(&lr, gf), gf);
        }
        debug_assert!(next[top].is_zero());
        r = trim(next);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Monomial;
    use rand::Rng;

    fn var(i: usize) -> Poly {
        Poly::term(Monomial::var(i), 1)
    }

    #[test]
    fn common_factor_recovered() {
        let gf = Gf::prime_field(3).unwrap();
        let x = var(0);
        let y = var(1);
        let z = var(2);
        let f = x.mul(&y, &gf).add(&z, &gf).add(&Poly::one(), &gf);
        let g1 = x.add(&y.pow(2, &gf), &gf);
        let g2 = z.mul(&x, &gf).sub(&Poly::constant(2), &gf);
        let a = f.mul(&g1, &gf);
        let b = f.mul(&g2, &gf).mul(&f, &gf);
        assert_eq!(gcd(&a, &b, &gf), f.monic(&gf));
    }

    #[test]
    fn coprime_is_one() {
        let gf = Gf::prime_field(2).unwrap();
        let x = var(0);
        let y = var(1);
        let a = x.mul(&x, &gf).add(&y, &gf);
        let b = x.add(&y, &gf).add(&Poly::one(), &gf);
        assert!(gcd(&a, &b, &gf).is_one());
    }

    #[test]
    fn monomial_factors() {
        let gf = Gf::prime_field(5).unwrap();
        let x = var(0);
        let y = var(1);
        let a = x.pow(3, &gf).mul(&y, &gf);
        let b = x.pow(2, &gf).mul(&y.add(&Poly::one(), &gf), &gf);
        assert_eq!(gcd(&a, &b, &gf), x.pow(2, &gf));
    }

    #[test]
    fn modular_matches_prs() {
        let mut rng = StdRng::seed_from_u64(7);
        for (p, e, mp) in [(2u32, 1u32, vec![0u32, 1]), (3, 1, vec![0, 1]), (2, 2, vec![1, 1, 1]), (5, 1, vec![0, 1])] {
            let gf = Gf::new(p, e, &mp).unwrap();
            let q = gf.order();
            let mut random = |terms: usize, deg: u32| {
                let raw = (0..terms)
                    .map(|_| {
                        let exps: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=deg)).collect();
                        (Monomial::from_exps(&exps), rng.gen_range(1..q) as u16)
                    })
                    .collect();
                Poly::from_terms(&gf, raw)
            };
            for _ in 0..6 {
                let f = random(3, 2).add(&Poly::one(), &gf);
                let a = f.mul(&random(4, 2), &gf);
                let b = f.mul(&random(4, 2), &gf);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let shared: Vec<usize> = (0..3).filter(|&v| a.involves(v) && b.involves(v)).collect();
                let g = gcd(&a, &b, &gf);
                assert!(g.div_exact(&f.monic(&gf), &gf).is_some());
                assert!(a.div_exact(&g, &gf).is_some() && b.div_exact(&g, &gf).is_some());
                if !shared.is_empty() && (0..3).all(|v| a.involves(v) == b.involves(v)) {
                    let am = a.div_monomial(&a.monomial_content());
                    let bm = b.div_monomial(&b.monomial_content());
                    let m = a.monomial_content().gcd(&b.monomial_content());
                    let expected = prs_gcd(&am, &bm, &shared, &gf).mul_term(&m, 1, &gf);
                    assert_eq!(g, expected);
                }
            }
        }
    }
}
