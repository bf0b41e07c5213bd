//! Turning a collection of symbols that share all n slots into one that
//! shares α and the first ℓ−1 slots.
//!
//! With γ₁..γ_m the slot products β^d over tuples with (d_ℓ..dₙ) ≠ 0, symbol
//! i is rewritten through slot_modify_tail with the vector whose component at
//! γ_j is x_j + λ y_{i,j}, which puts
//!   δ_i = Σ_j γ_j (x_j^p − x_j y_{i,j}^{p−1} + α_i y_{i,j}^p)
//! in the last slot; rule (a) then moves it into α. Choosing y_{0,j} = 1,
//! y_{i,i} = 0 and y_{i,j} = 1 otherwise makes α₀ + δ₀ = α_i + δ_i linear in
//! x_i alone.

use crate::certs::RewriteCertificate;
use crate::field::{CtxExt, FieldElement};
use crate::symbol::{ASElement, Symbol};

use super::slot_modify::{slot_modify_tail, tuple_of};
use super::rules::rule_a;
use super::{CalcError, RewriteResult, TrivialReason};

/// Number of symbols a collection must have for level ℓ.
pub fn link_collection_size(n: usize, level: usize) -> usize {
    1 + (level..=n).map(|i| 1usize << (i - 1)).sum::<usize>()
}

/// The solved linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkageSystem {
    pub level: usize,
    /// 1-based tuple positions of γ₁..γ_m, in increasing order.
    pub gamma_tuples: Vec<usize>,
    pub gammas: Vec<FieldElement>,
    /// y[i][j] for symbol i and product j (each 0 or 1).
    pub y: Vec<Vec<u8>>,
    /// Shared x_j.
    pub x: Vec<FieldElement>,
    pub alphas: Vec<FieldElement>,
    pub deltas: Vec<FieldElement>,
}

impl LinkageSystem {
    /// δ_i recomputed from γ, x, y and α_i.
    pub fn delta_from_definition(&self, i: usize) -> FieldElement {
        let ctx = self.alphas[i].ctx();
        let p = ctx.p();
        let mut acc = ctx.zero();
        for (j, g) in self.gammas.iter().enumerate() {
            let xj = &self.x[j];
            let n = if self.y[i][j] == 1 {
                &(&xj.pow(p) - xj) + &self.alphas[i]
            } else {
                xj.pow(p)
            };
            acc = &acc + &(g * &n);
        }
        acc
    }

    /// Every δ_i matches its definition and α₀ + δ₀ = α_i + δ_i.
    pub fn check_equations(&self) -> bool {
        let target = &self.alphas[0] + &self.deltas[0];
        (0..self.alphas.len())
            .all(|i| self.delta_from_definition(i) == self.deltas[i] && &self.alphas[i] + &self.deltas[i] == target)
    }

    pub fn common_alpha(&self) -> FieldElement {
        &self.alphas[0] + &self.deltas[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkageOutcome {
    Rewritten,
    /// The rewrite showed the symbol is zero; it is re-presented with slots
    /// ℓ..n equal to 1.
    Trivial(TrivialReason),
    /// The vector for this symbol is zero, so the symbol already has α*.
    Unchanged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedSymbol {
    pub symbol: Symbol,
    pub cert: RewriteCertificate,
    pub outcome: LinkageOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkOutput {
    pub system: LinkageSystem,
    pub common_alpha: FieldElement,
    pub results: Vec<LinkedSymbol>,
}

/// Solves the linkage system and rewrites every symbol to share α* and the
/// first ℓ−1 slots. `level` is ℓ, 1-based.
pub fn separable_link(symbols: &[Symbol], level: usize) -> Result<LinkOutput, CalcError> {
    separable_link_jobs(symbols, level, 1)
}

/// As [`separable_link`], building the per-symbol chains on `jobs` threads.
pub fn separable_link_jobs(symbols: &[Symbol], level: usize, jobs: usize) -> Result<LinkOutput, CalcError> {
    let first = symbols.first().ok_or(CalcError::WrongCollectionSize {
        expected: 2,
        got: 0,
    })?;
    let n = first.n();
    if level == 0 || level > n {
        return Err(CalcError::BadRange { level, n });
    }
    let size = link_collection_size(n, level);
    if symbols.len() != size {
        return Err(CalcError::WrongCollectionSize {
            expected: size,
            got: symbols.len(),
        });
    }
    if let Some(i) = symbols.iter().position(|s| s.slots() != first.slots()) {
        return Err(CalcError::SlotsNotShared(i));
    }
    let system = solve(symbols, level);
    let common_alpha = system.common_alpha();
    let work = |i: usize| link_one(&symbols[i], &system, i, &common_alpha);
    let results: Vec<Result<LinkedSymbol, CalcError>> = if jobs <= 1 {
        (0..symbols.len()).map(work).collect()
    } else {
        let chunk = symbols.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..symbols.len())
                .step_by(chunk)
                .map(|lo| {
                    let work = &work;
                    scope.spawn(move || (lo..(lo + chunk).min(symbols.len())).map(work).collect::<Vec<_>>())
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    Ok(LinkOutput {
        system,
        common_alpha,
        results: results.into_iter().collect::<Result<_, _>>()?,
    })
}

fn solve(symbols: &[Symbol], level: usize) -> LinkageSystem {
    let s0 = &symbols[0];
    let ctx = s0.ctx();
    let n = s0.n();
    let block = 1usize << (n - level + 1);
    let gamma_tuples: Vec<usize> = (1..(1usize << n)).filter(|k| k % block != 0).collect();
    let gammas: Vec<FieldElement> = gamma_tuples
        .iter()
        .map(|&k| {
            tuple_of(k, n)
                .iter()
                .zip(s0.slots())
                .filter(|(d, _)| **d == 1)
                .fold(ctx.one(), |acc, (_, b)| &acc * b)
        })
        .collect();
    let m = gammas.len();
    let y: Vec<Vec<u8>> = (0..=m)
        .map(|i| (1..=m).map(|j| u8::from(i != j)).collect())
        .collect();
    let total = gammas.iter().fold(ctx.zero(), |acc, g| &acc + g);
    let alphas: Vec<FieldElement> = symbols.iter().map(|s| s.alpha().clone()).collect();
    let a0 = &alphas[0];
    // γ_i x_i = γ_i α₀ + (α₀ − α_i)(1 + Γ − γ_i)
    let x: Vec<FieldElement> = (0..m)
        .map(|j| {
            let g = &gammas[j];
            let rest = &(&ctx.one() + &total) - g;
            let rhs = &(g * a0) + &(&(a0 - &alphas[j + 1]) * &rest);
            &rhs / g
        })
        .collect();
    let mut sys = LinkageSystem {
        level,
        gamma_tuples,
        gammas,
        y,
        x,
        alphas,
        deltas: Vec::new(),
    };
    sys.deltas = (0..=m).map(|i| sys.delta_from_definition(i)).collect();
    sys
}

fn link_one(s: &Symbol, sys: &LinkageSystem, i: usize, common: &FieldElement) -> Result<LinkedSymbol, CalcError> {
    let ctx = s.ctx();
    let n = s.n();
    let mut v = vec![ASElement::zero(ctx); (1usize << n) - 1];
    for (j, &k) in sys.gamma_tuples.iter().enumerate() {
        let yv = if sys.y[i][j] == 1 { ctx.one() } else { ctx.zero() };
        v[k - 1] = ASElement::binomial(&sys.x[j], &yv);
    }
    if v.iter().all(|f| f.is_zero()) {
        return Ok(LinkedSymbol {
            symbol: s.clone(),
            cert: RewriteCertificate::identity(s.clone().into()),
            outcome: LinkageOutcome::Unchanged,
        });
    }
    match slot_modify_tail(s, sys.level, &v)? {
        RewriteResult::Trivial { cert, reason } => {
            let mut slots = s.slots()[..sys.level - 1].to_vec();
            slots.resize(n, ctx.one());
            let padded = Symbol::new(common.clone(), slots).expect("nonzero slots");
            Ok(LinkedSymbol {
                cert: cert.with_rhs(padded.clone().into()),
                symbol: padded,
                outcome: LinkageOutcome::Trivial(reason),
            })
        }
        RewriteResult::Rewritten { symbol, cert } => {
            let (c2, out) = rule_a(&symbol, n - 1)?.expect_rewritten();
            debug_assert_eq!(out.alpha(), common);
            Ok(LinkedSymbol {
                symbol: out,
                cert: cert.compose(&c2)?,
                outcome: LinkageOutcome::Rewritten,
            })
        }
    }
}
