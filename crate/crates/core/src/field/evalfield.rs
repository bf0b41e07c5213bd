//! A larger finite field containing F_{p^e}, used to evaluate polynomials at
//! random points when bounding gcd degrees.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::gf::{is_irreducible_fp, monic_polys_of_degree, Gf};

const TARGET_ORDER: usize = 1024;

pub(crate) struct EvalField {
    pub k: Gf,
    /// Image in `k` of each element code of the base field.
    pub embed: Vec<u16>,
}

fn build(base: &Gf) -> EvalField {
    let p = base.p() as usize;
    let e = base.e() as usize;
    let mut deg = e;
    while p.pow((deg + e) as u32) <= TARGET_ORDER {
        deg += e;
    }
    let m = monic_polys_of_degree(deg, p as u16)
        .find(|m| m[0] != 0 && is_irreducible_fp(m, p as u16))
        .expect("irreducible polynomials exist in every degree");
    let m32: Vec<u32> = m.iter().map(|&c| c as u32).collect();
    let k = Gf::new(p as u32, deg as u32, &m32).expect("irreducible modulus");
    // a root of the base minimal polynomial
    let min_poly = base.min_poly();
    let root = k
        .elements()
        .find(|&r| {
            let mut acc = 0u16;
            for &c in min_poly.iter().rev() {
                acc = k.add(k.mul(acc, r), k.from_int(c as i64));
            }
            acc == 0
        })
        .expect("the extension contains the base field");
    let embed = base
        .elements()
        .map(|a| {
            let mut acc = 0u16;
            for &d in base.digits(a).iter().rev() {
                acc = k.add(k.mul(acc, root), k.from_int(d as i64));
            }
            acc
        })
        .collect();
    EvalField { k, embed }
}

pub(crate) fn eval_field(base: &Gf) -> Arc<EvalField> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, Vec<u32>), Arc<EvalField>>>> = OnceLock::new();
    let key = (base.p(), base.min_poly());
    let mut cache = CACHE.get_or_init(Default::default).lock().expect("cache lock");
    cache.entry(key).or_insert_with(|| Arc::new(build(base))).clone()
}
