//! Bounded search for isotropic vectors.
//!
//! Coordinates range over polynomials of total degree ≤ D′ in the field
//! variables (constants for the exhaustive mode), for D′ = 0, 1, …, D. The
//! coefficients of the form are scaled by a common denominator so values are
//! compared as polynomials.
//!
//! Coordinates that never share a monomial split the form into independent
//! blocks. The blocks are divided into an inner and an outer group; inner
//! values are tabulated once per level and each outer candidate is matched
//! against the table, so a level costs |inner| + |outer| evaluations while
//! covering |inner|·|outer| vectors. Candidates are ordered by outer index,
//! then inner index; the first match in this order is returned.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::field::{poly_gcd, Ctx, CtxExt, FieldElement, Monomial, Poly};

use super::{ExplicitForm, FormSpec, PFormError};

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Constant coordinates over F_{p^e}; complete for constant forms.
    ExhaustiveConstants,
    /// Polynomial coordinates of degree ≤ D.
    BoundedDegree(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub mode: SearchMode,
    /// Maximum number of (partial) candidate evaluations.
    pub cap: u64,
    pub jobs: usize,
}

impl SearchBudget {
    pub fn new(mode: SearchMode) -> Self {
        SearchBudget {
            mode,
            cap: DEFAULT_CAP,
            jobs: 1,
        }
    }

    pub fn with_jobs(self, jobs: usize) -> Self {
        SearchBudget {
            jobs: jobs.max(1),
            ..self
        }
    }

    pub fn with_cap(self, cap: u64) -> Self {
        SearchBudget { cap, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropyOutcome {
    Found {
        vector: Vec<FieldElement>,
        level: u32,
        evaluations: u64,
    },
    NotFoundWithinBound {
        /// Highest degree level searched completely, if any.
        complete_level: Option<u32>,
        evaluations: u64,
        cap: u64,
        cap_reached: bool,
    },
}

impl IsotropyOutcome {
    pub fn vector(&self) -> Option<&[FieldElement]> {
        match self {
            IsotropyOutcome::Found { vector, .. } => Some(vector),
            IsotropyOutcome::NotFoundWithinBound { .. } => None,
        }
    }
}

/// The form with polynomial coefficients (scaled by a common denominator).
struct ClearedForm {
    terms: Vec<(Vec<u32>, Poly)>,
}

fn clear_denominators(e: &ExplicitForm) -> ClearedForm {
    let gf = e.ctx().gf();
    let mut l = Poly::one();
    for c in e.coeffs().values() {
        let g = poly_gcd(&l, c.den(), gf);
        l = l.mul(&c.den().div_exact(&g, gf).expect("gcd divides"), gf);
    }
    let terms = e
        .coeffs()
        .iter()
        .map(|(k, c)| {
            let scale = l.div_exact(c.den(), gf).expect("denominator divides the lcm");
            (k.clone(), c.num().mul(&scale, gf))
        })
        .collect();
    ClearedForm { terms }
}

/// Connected components of the coordinates under "appear in a common term".
fn blocks(e: &ExplicitForm) -> Vec<Vec<usize>> {
    let m = e.dim();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for key in e.coeffs().keys() {
        let used: Vec<usize> = (0..m).filter(|&i| key[i] > 0).collect();
        for w in used.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = HashMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        let slot = *root_of.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(i);
    }
    groups
}

fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut exps = vec![0u32; nvars];
        fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 >= exps.len() {
                if !exps.is_empty() {
                    exps[pos] = left;
                }
                out.push(Monomial::from_exps(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[pos] = e;
                rec(pos + 1, left - e, exps, out);
            }
            exps[pos] = 0;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::ONE);
            }
            continue;
        }
        rec(0, deg, &mut exps, &mut out);
    }
    out.sort();
    out
}

/// Per-level candidate polynomials and their powers up to p.
struct Candidates {
    powers: Vec<Vec<Poly>>,
}

impl Candidates {
    fn new(ctx: &Ctx, level: u32, cap: u64) -> Option<Self> {
        let gf = ctx.gf();
        let q = gf.order();
        let monos = monomials_up_to(ctx.nvars(), level);
        let count = q.checked_pow(monos.len() as u32).filter(|&c| c as u64 <= cap)?;
        let p = ctx.p();
        let powers = (0..count)
            .map(|mut idx| {
                let mut raw = Vec::new();
                for m in &monos {
                    let c = (idx % q) as u16;
                    idx /= q;
                    if c != 0 {
                        raw.push((*m, c));
                    }
                }
                let a = Poly::from_terms(gf, raw);
                let mut pw = vec![Poly::one(), a.clone()];
                for _ in 2..=p {
                    let next = pw.last().unwrap().mul(&a, gf);
                    pw.push(next);
                }
                pw
            })
            .collect();
        Some(Candidates { powers })
    }

    fn len(&self) -> u64 {
        self.powers.len() as u64
    }
}

/// A group of coordinates with the terms that only involve them.
struct Group {
    coords: Vec<usize>,
    terms: Vec<(Vec<(usize, u32)>, Poly)>,
}

impl Group {
    fn new(coords: Vec<usize>, form: &ClearedForm) -> Self {
        let terms = form
            .terms
            .iter()
            .filter(|(k, _)| k.iter().enumerate().any(|(i, &e)| e > 0 && coords.contains(&i)))
            .map(|(k, c)| {
                let local = coords
                    .iter()
                    .enumerate()
                    .filter(|&(_, &i)| k[i] > 0)
                    .map(|(pos, &i)| (pos, k[i]))
                    .collect();
                (local, c.clone())
            })
            .collect();
        Group { coords, terms }
    }

    fn space(&self, cands: &Candidates) -> Option<u64> {
        cands.len().checked_pow(self.coords.len() as u32)
    }

    fn digits(&self, mut idx: u64, cands: &Candidates) -> Vec<usize> {
        let q = cands.len();
        self.coords
            .iter()
            .map(|_| {
                let d = (idx % q) as usize;
                idx /= q;
                d
            })
            .collect()
    }

    fn value(&self, idx: u64, cands: &Candidates, ctx: &Ctx) -> Poly {
        let gf = ctx.gf();
        let digits = self.digits(idx, cands);
        let mut acc = Poly::zero();
        for (local, c) in &self.terms {
            let mut t = c.clone();
            for &(pos, e) in local {
                let pw = &cands.powers[digits[pos]][e as usize];
                if pw.is_zero() {
                    t = Poly::zero();
                    break;
                }
                t = t.mul(pw, gf);
            }
            if !t.is_zero() {
                acc = acc.add(&t, gf);
            }
        }
        acc
    }
}

fn key(p: &Poly) -> u128 {
    let mut h1 = DefaultHasher::new();
    0u8.hash(&mut h1);
    p.hash(&mut h1);
    let mut h2 = DefaultHasher::new();
    1u8.hash(&mut h2);
    p.hash(&mut h2);
    ((h1.finish() as u128) << 64) | h2.finish() as u128
}

/// Evaluates `f` on `range` split across `jobs` threads, preserving order.
fn par_map<T: Send>(range: std::ops::Range<u64>, jobs: usize, f: &(dyn Fn(u64) -> T + Sync)) -> Vec<T> {
    let len = range.end - range.start;
    if jobs <= 1 || len < 2 * 256 {
        return range.map(f).collect();
    }
    let chunk = len.div_ceil(jobs as u64);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|j| {
                let lo = range.start + j * chunk;
                let hi = (lo + chunk).min(range.end);
                scope.spawn(move || (lo..hi).map(f).collect::<Vec<T>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

struct Level<'a> {
    ctx: &'a Ctx,
    cands: Candidates,
    inner: Group,
    outer: Group,
}

enum LevelResult {
    Found(Vec<usize>, u64),
    Exhausted(u64),
    Capped(u64),
}

impl Level<'_> {
    fn run(&self, budget_left: u64, jobs: usize) -> LevelResult {
        let Some(inner_space) = self.inner.space(&self.cands) else {
            return LevelResult::Capped(0);
        };
        if inner_space > budget_left {
            return LevelResult::Capped(0);
        }
        let ctx = self.ctx;
        let values = par_map(0..inner_space, jobs, &|i| key(&self.inner.value(i, &self.cands, ctx)));
        let zero_key = key(&Poly::zero());
        let mut table: HashMap<u128, u64> = HashMap::with_capacity(values.len());
        let mut zero_nonzero = None;
        for (i, k) in values.into_iter().enumerate() {
            table.entry(k).or_insert(i as u64);
            if i > 0 && k == zero_key && zero_nonzero.is_none() {
                zero_nonzero = Some(i as u64);
            }
        }
        let mut used = inner_space;
        let outer_space = self.outer.space(&self.cands).unwrap_or(u64::MAX);
        let gf = ctx.gf();
        let chunk = 4096u64 * jobs as u64;
        let mut start = 0u64;
        while start < outer_space {
            let remaining = budget_left.saturating_sub(used);
            if remaining == 0 {
                return LevelResult::Capped(used);
            }
            let end = outer_space.min(start + chunk.min(remaining));
            let hits = par_map(start..end, jobs, &|o| {
                let target = self.outer.value(o, &self.cands, ctx).neg(gf);
                let mut inner_idx = table.get(&key(&target)).copied();
                if o == 0 && inner_idx == Some(0) {
                    inner_idx = zero_nonzero;
                }
                // the table is keyed by hashes; confirm exactly
                inner_idx.filter(|&i| self.inner.value(i, &self.cands, ctx) == target)
            });
            used += end - start;
            if let Some((off, i)) = hits.iter().enumerate().find_map(|(off, h)| h.map(|i| (off, i))) {
                let o = start + off as u64;
                let mut digits = vec![0usize; self.inner.coords.len() + self.outer.coords.len()];
                let mut full = vec![0usize; digits.len()];
                for (c, d) in self.inner.coords.iter().zip(self.inner.digits(i, &self.cands)) {
                    full[*c] = d;
                }
                for (c, d) in self.outer.coords.iter().zip(self.outer.digits(o, &self.cands)) {
                    full[*c] = d;
                }
                digits.copy_from_slice(&full);
                return LevelResult::Found(digits, used);
            }
            start = end;
        }
        LevelResult::Exhausted(used)
    }
}

/// Searches for a nonzero v with φ(v) = 0. A returned vector has been
/// re-evaluated exactly and has a monic first nonzero coordinate.
pub fn isotropy_search(form: &FormSpec, budget: SearchBudget) -> Result<IsotropyOutcome, PFormError> {
    let ctx = form.ctx().clone();
    let explicit = form.to_explicit();
    let max_level = match budget.mode {
        SearchMode::ExhaustiveConstants => {
            if !explicit.has_constant_coefficients() {
                return Err(PFormError::NonConstantCoefficients);
            }
            0
        }
        SearchMode::BoundedDegree(d) => d,
    };
    let cleared = clear_denominators(&explicit);
    let m = explicit.dim();
    // inner group: leading blocks with at most half of the coordinates
    let mut inner_coords = Vec::new();
    let mut outer_coords = Vec::new();
    for b in blocks(&explicit) {
        if outer_coords.is_empty() && inner_coords.len() + b.len() <= m / 2 {
            inner_coords.extend(b);
        } else {
            outer_coords.extend(b);
        }
    }
    let mut evaluations = 0u64;
    let mut complete_level = None;
    for level in 0..=max_level {
        let Some(cands) = Candidates::new(&ctx, level, budget.cap - evaluations) else {
            return Ok(IsotropyOutcome::NotFoundWithinBound {
                complete_level,
                evaluations,
                cap: budget.cap,
                cap_reached: true,
            });
        };
        let lvl = Level {
            ctx: &ctx,
            cands,
            inner: Group::new(inner_coords.clone(), &cleared),
            outer: Group::new(outer_coords.clone(), &cleared),
        };
        match lvl.run(budget.cap - evaluations, budget.jobs) {
            LevelResult::Found(digits, used) => {
                evaluations += used;
                let vector = finish_vector(&ctx, &lvl.cands, &digits);
                let check = form.evaluate(&vector)?;
                assert!(check.is_zero(), "search returned a non-isotropic vector");
                return Ok(IsotropyOutcome::Found {
                    vector,
                    level,
                    evaluations,
                });
            }
            LevelResult::Exhausted(used) => {
                evaluations += used;
                complete_level = Some(level);
            }
            LevelResult::Capped(used) => {
                evaluations += used;
                return Ok(IsotropyOutcome::NotFoundWithinBound {
                    complete_level,
                    evaluations,
                    cap: budget.cap,
                    cap_reached: true,
                });
            }
        }
    }
    Ok(IsotropyOutcome::NotFoundWithinBound {
        complete_level,
        evaluations,
        cap: budget.cap,
        cap_reached: false,
    })
}

fn finish_vector(ctx: &Ctx, cands: &Candidates, digits: &[usize]) -> Vec<FieldElement> {
    let gf = ctx.gf();
    let polys: Vec<Poly> = digits.iter().map(|&d| cands.powers[d][1].clone()).collect();
    let lc = polys.iter().find(|p| !p.is_zero()).map(|p| p.lc()).expect("nonzero vector");
    let inv = gf.inv(lc);
    polys.into_iter().map(|p| ctx.from_poly(p.scale(inv, gf))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::pforms::TwoDimVariant;

    #[test]
    fn diagonal_cubic_over_f3() {
        let k = FieldCtx::prime(3, &[] as &[&str]).unwrap();
        let keys = [vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]];
        let e = ExplicitForm::new(&k, 3, keys.iter().map(|key| (key.clone(), k.one()))).unwrap();
        let r = isotropy_search(&FormSpec::Explicit(e), SearchBudget::new(SearchMode::ExhaustiveConstants)).unwrap();
        // a³ + b³ + c³ = (a + b + c)³; the first hit in search order
        assert_eq!(r.vector().unwrap(), &[k.one(), k.int(2), k.zero()]);
    }

    #[test]
    fn anisotropic_norm_over_f4() {
        let k = FieldCtx::new(2, 2, &[1, 1, 1], &[] as &[&str]).unwrap();
        // trace of g is 1, so T² − T − g is irreducible over F_4
        let f = FormSpec::norm_form(&k.generator());
        let r = isotropy_search(&f, SearchBudget::new(SearchMode::ExhaustiveConstants)).unwrap();
        assert!(matches!(
            r,
            IsotropyOutcome::NotFoundWithinBound {
                complete_level: Some(0),
                cap_reached: false,
                ..
            }
        ));
    }

    #[test]
    fn wp_image_alpha_found_at_degree_one() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let x = k.var(0);
        let f = FormSpec::direct_sum(vec![
            FormSpec::two_dim(&x.wp(), TwoDimVariant::A1Weighted),
            FormSpec::scale(&k.var(1), FormSpec::norm_form(&x.wp())).unwrap(),
        ])
        .unwrap();
        let r = isotropy_search(&f, SearchBudget::new(SearchMode::BoundedDegree(1))).unwrap();
        let v = r.vector().unwrap().to_vec();
        assert!(f.evaluate(&v).unwrap().is_zero());
        let r2 = isotropy_search(&f, SearchBudget::new(SearchMode::BoundedDegree(1)).with_jobs(3)).unwrap();
        assert_eq!(r2.vector().unwrap(), &v[..]);
    }

    #[test]
    fn cap_is_reported() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let f = FormSpec::norm_form(&k.var(0));
        let r = isotropy_search(&f, SearchBudget::new(SearchMode::BoundedDegree(3)).with_cap(100)).unwrap();
        assert!(matches!(r, IsotropyOutcome::NotFoundWithinBound { cap_reached: true, .. }));
    }
}
