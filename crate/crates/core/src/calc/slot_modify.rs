//! Replacing the last slot by a value of φ(v) = Σ_d N(v_d)·β₁^{d₁}···βₙ^{dₙ}.
//!
//! A vector has one Artin-Schreier element per nonzero tuple d ∈ {0,1}ⁿ.
//! Tuples are ordered lexicographically with d₁ most significant, so the
//! component of d sits at position Σ dᵢ 2^{n−i} − 1.

use crate::field::{CtxExt, FieldElement};
use crate::pforms::norm::norm;
use crate::symbol::{ASElement, Symbol};

use super::rules::{rule_b, rule_e, rule_f, swap_slots};
use super::{CalcError, RewriteResult};

pub type SlotVector = Vec<ASElement>;

/// 1-based position of a nonzero tuple.
pub fn tuple_index(d: &[u8]) -> usize {
    d.iter().fold(0, |acc, &b| 2 * acc + b as usize)
}

/// Tuple of length n at 1-based position k.
pub fn tuple_of(k: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((k >> (n - 1 - i)) & 1) as u8).collect()
}

fn monomial(slots: &[FieldElement], k: usize) -> FieldElement {
    let n = slots.len();
    let mut acc = slots[0].ctx().one();
    for (i, b) in slots.iter().enumerate() {
        if (k >> (n - 1 - i)) & 1 == 1 {
            acc = &acc * b;
        }
    }
    acc
}

/// φ(v) for the slots of `s`.
pub fn phi_value(s: &Symbol, v: &[ASElement]) -> FieldElement {
    let mut acc = s.ctx().zero();
    for (pos, f) in v.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let nf = norm(s.alpha(), f);
        if !nf.is_zero() {
            acc = &acc + &(&nf * &monomial(s.slots(), pos + 1));
        }
    }
    acc
}

fn check_len(s: &Symbol, v: &[ASElement]) -> Result<(), CalcError> {
    let expected = (1usize << s.n()) - 1;
    if v.len() != expected {
        return Err(CalcError::WrongVectorLength {
            expected,
            got: v.len(),
        });
    }
    if let Some(f) = v.iter().find(|f| f.coeffs().len() != s.ctx().p() as usize) {
        return Err(CalcError::WrongVectorLength {
            expected: s.ctx().p() as usize,
            got: f.coeffs().len(),
        });
    }
    Ok(())
}

/// Splits a vector into the parts with dₙ = 0, with d = (0,…,0,1), and the
/// remaining dₙ = 1 part (indexed by its first n−1 coordinates).
fn split(v: &[ASElement]) -> (SlotVector, ASElement, SlotVector) {
    let half = (v.len() + 1) / 2;
    let mut v0 = Vec::with_capacity(half - 1);
    let mut tau = Vec::with_capacity(half - 1);
    for k in 1..half {
        v0.push(v[2 * k - 1].clone());
        tau.push(v[2 * k].clone());
    }
    (v0, v[0].clone(), tau)
}

fn all_zero(v: &[ASElement]) -> bool {
    v.iter().all(|f| f.is_zero())
}

/// Rewrites (α; β₁..βₙ) to (α; β₁′..β′ₙ₋₁, φ(v)), or shows it is zero.
pub fn slot_modify(s: &Symbol, v: &[ASElement]) -> Result<RewriteResult, CalcError> {
    check_len(s, v)?;
    if all_zero(v) {
        return Err(CalcError::ZeroVector);
    }
    Ok(modify(s, v))
}

fn modify(s: &Symbol, v: &[ASElement]) -> RewriteResult {
    let n = s.n();
    if n == 1 {
        return rule_b(s, 0, &v[0]).expect("valid slot and nonzero element");
    }
    let (v0, v01, tau) = split(v);
    let v1_zero = v01.is_zero() && all_zero(&tau);
    if v1_zero {
        // only the last slot is untouched: modify the prefix, then move the
        // new value to the end
        let prefix = modify(&s.prefix(n - 1), &v0);
        let chain = match extend(prefix, s.slot(n - 1)) {
            Ok(c) => c,
            Err(t) => return t,
        };
        let (cert, cur) = chain;
        return swap_slots(&cur, n - 2, n - 1).unwrap().after(&cert);
    }
    let last = modify_last(s, &tau, &v01);
    if all_zero(&v0) {
        return last;
    }
    let (cert, cur) = match last {
        RewriteResult::Rewritten { symbol, cert } => (cert, symbol),
        t => return t,
    };
    let c = cur.slot(n - 1).clone();
    let prefix = modify(&s.prefix(n - 1), &v0);
    let (cert2, cur2) = match extend(prefix, &c) {
        Ok(x) => x,
        Err(t) => return t.after(&cert),
    };
    let cert = cert.compose(&cert2).expect("chained");
    rule_e(&cur2, n - 1, n - 2).unwrap().after(&cert)
}

/// Extends a prefix rewrite by one trailing slot.
fn extend(r: RewriteResult, slot: &FieldElement) -> Result<(crate::certs::RewriteCertificate, Symbol), RewriteResult> {
    let extra = [slot.clone()];
    match r {
        RewriteResult::Rewritten { symbol, cert } => Ok((cert.extend_right(&extra), symbol.append_slots(&extra))),
        RewriteResult::Trivial { cert, reason } => Err(RewriteResult::Trivial {
            cert: cert.extend_right(&extra),
            reason,
        }),
    }
}

/// The case where v has only components with dₙ = 1: the first n−1 slots
/// come back unchanged.
fn modify_last(s: &Symbol, tau: &[ASElement], v01: &ASElement) -> RewriteResult {
    let n = s.n();
    if all_zero(tau) {
        return rule_b(s, n - 1, v01).expect("valid slot and nonzero element");
    }
    let prefix = s.prefix(n - 1);
    let inner = modify(&prefix, tau);
    let (prefix_cert, prefix_out) = match inner {
        RewriteResult::Rewritten { symbol, cert } => (cert, symbol),
        RewriteResult::Trivial { cert, reason } => {
            return RewriteResult::Trivial {
                cert: cert.extend_right(&[s.slot(n - 1).clone()]),
                reason,
            }
        }
    };
    let beta_n = [s.slot(n - 1).clone()];
    let cert = prefix_cert.extend_right(&beta_n);
    let cur = prefix_out.append_slots(&beta_n);
    let step = rule_f(&cur, n - 2, n - 1, v01).expect("distinct slots");
    let (cert_f, cur) = match step {
        RewriteResult::Rewritten { symbol, cert: c } => (cert.compose(&c).expect("chained"), symbol),
        t => return t.after(&cert),
    };
    // undo the prefix rewrite with the new last slot in place
    let restore = prefix_cert.reversed().extend_right(&[cur.slot(n - 1).clone()]);
    let out = s.with_slot(n - 1, cur.slot(n - 1).clone());
    let cert = cert_f.compose(&restore).expect("chained");
    RewriteResult::Rewritten { symbol: out, cert }
}

/// Like [`slot_modify`] for vectors supported on tuples with dₙ = 1; the
/// first n−1 slots are preserved.
pub fn slot_modify_last(s: &Symbol, v: &[ASElement]) -> Result<RewriteResult, CalcError> {
    check_len(s, v)?;
    if all_zero(v) {
        return Err(CalcError::ZeroVector);
    }
    if let Some(pos) = v.iter().enumerate().position(|(i, f)| (i + 1) % 2 == 0 && !f.is_zero()) {
        return Err(CalcError::OutsideRange(pos));
    }
    if s.n() == 1 {
        return Ok(modify(s, v));
    }
    let (_, v01, tau) = split(v);
    Ok(modify_last(s, &tau, &v01))
}

/// Rewrites to (α; β₁..β_{ℓ−1}, β_ℓ′..β′ₙ₋₁, φ(v)) for v supported on tuples
/// with (d_ℓ..dₙ) ≠ 0. `level` is ℓ, 1-based.
pub fn slot_modify_tail(s: &Symbol, level: usize, v: &[ASElement]) -> Result<RewriteResult, CalcError> {
    let n = s.n();
    if level == 0 || level > n {
        return Err(CalcError::BadRange { level, n });
    }
    check_len(s, v)?;
    if all_zero(v) {
        return Err(CalcError::ZeroVector);
    }
    // tuples with d_ℓ = … = dₙ = 0 have index divisible by 2^{n−ℓ+1}
    let block = 1usize << (n - level + 1);
    if let Some(pos) = (0..v.len()).find(|&i| (i + 1) % block == 0 && !v[i].is_zero()) {
        return Err(CalcError::OutsideRange(pos));
    }
    let mut cur = s.clone();
    let mut cert = crate::certs::RewriteCertificate::identity(s.clone().into());
    let mut touched = Vec::new();
    for k in (level..=n).rev() {
        // component of W_k: tuples with d_k = 1 and d_{k+1..n} = 0, indexed
        // as tuples of length k
        let stride = 1usize << (n - k);
        let sub: SlotVector = (1..(1usize << k))
            .map(|kk| {
                if kk % 2 == 1 {
                    v[kk * stride - 1].clone()
                } else {
                    ASElement::zero(s.ctx())
                }
            })
            .collect();
        if all_zero(&sub) {
            continue;
        }
        let head = cur.prefix(k);
        let suffix: Vec<FieldElement> = cur.slots()[k..].to_vec();
        let (_, v01, tau) = if k == 1 {
            (Vec::new(), sub[0].clone(), Vec::new())
        } else {
            split(&sub)
        };
        let r = if k == 1 { modify(&head, &sub) } else { modify_last(&head, &tau, &v01) };
        match r {
            RewriteResult::Rewritten { symbol, cert: c } => {
                cert = cert.compose(&c.extend_right(&suffix)).expect("chained");
                cur = symbol.append_slots(&suffix);
            }
            RewriteResult::Trivial { cert: c, reason } => {
                return Ok(RewriteResult::Trivial {
                    cert: cert.compose(&c.extend_right(&suffix)).expect("chained"),
                    reason,
                })
            }
        }
        touched.push(k - 1);
    }
    // touched is in decreasing order; bring the largest to the end
    let kmax = touched[0];
    if kmax != n - 1 {
        let (c, sym) = swap_slots(&cur, kmax, n - 1)?.expect_rewritten();
        cert = cert.compose(&c).expect("chained");
        cur = sym;
    }
    for &k in &touched[1..] {
        match rule_e(&cur, n - 1, k)? {
            RewriteResult::Rewritten { symbol, cert: c } => {
                cert = cert.compose(&c).expect("chained");
                cur = symbol;
            }
            RewriteResult::Trivial { cert: c, reason } => {
                return Ok(RewriteResult::Trivial {
                    cert: cert.compose(&c).expect("chained"),
                    reason,
                })
            }
        }
    }
    Ok(RewriteResult::Rewritten { symbol: cur, cert })
}
