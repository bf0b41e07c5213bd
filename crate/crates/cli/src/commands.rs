use std::path::Path;

use charp_forms::calc::{
    rule_a, rule_b, rule_c, rule_d, rule_e, rule_f, separable_link_jobs, slot_modify, trivialize, CalcError,
    LinkageOutcome, RewriteResult, TrivialCase, TrivializationOutcome,
};
use charp_forms::certs::{CertError, RewriteCertificate, Verdict};
use charp_forms::cyclic::{split_witness, AlgebraElement, AlgebraError};
use charp_forms::exterior::DiffForm;
use charp_forms::field::{Ctx, CtxExt, FieldElement};
use charp_forms::json::{self, FieldHeader, JsonError};
use charp_forms::pforms::{
    build_common_slot_form, build_phi, build_trivializer, isotropy_search, norm, regularity_certificate, FormSpec,
    IsotropyOutcome, NormLeafCheck, PFormError, RegularityCertificate, SearchBudget, SearchMode,
};
use charp_forms::symbol::{ASElement, SymbolError};
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Command, Rule, EXIT_FAIL, EXIT_OK, EXIT_PARTIAL, EXIT_USAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    PForm(#[from] PFormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

impl From<charp_forms::field::FieldError> for CliError {
    fn from(e: charp_forms::field::FieldError) -> Self {
        CliError::Json(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Session {
    pub jobs: usize,
    pub field: Option<String>,
}

impl Session {
    /// The `--field` header, given inline or as a file.
    fn ctx(&self) -> Result<Ctx> {
        let text = self
            .field
            .as_deref()
            .ok_or_else(|| CliError::Usage("this command needs --field <header>".into()))?;
        let v: Value = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(JsonError::from)?
        } else {
            read_json(Path::new(text))?
        };
        let header = v.get("field").cloned().unwrap_or(v);
        let header: FieldHeader = serde_json::from_value(header).map_err(JsonError::from)?;
        Ok(header.ctx()?)
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(serde_json::from_str(&text).map_err(JsonError::from)?)
}

fn parse_list(ctx: &Ctx, text: &str) -> Result<Vec<FieldElement>> {
    text.split(',').map(|t| Ok(ctx.parse(t.trim())?)).collect()
}

fn parse_as(ctx: &Ctx, text: &str) -> Result<ASElement> {
    Ok(ASElement::from_prefix(ctx, &parse_list(ctx, text)?)?)
}

fn form_document(w: &DiffForm) -> Value {
    let mut v = json::diff_form(w);
    v["field"] = json::header(w.ctx());
    v
}

fn read_form(path: &Path) -> Result<DiffForm> {
    let doc = read_json(path)?;
    let ctx = json::ctx_of(&doc)?;
    Ok(json::parse_diff_form(&ctx, &doc)?)
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Verified => EXIT_OK,
        Verdict::VerifiedModuloAxioms(_) => EXIT_PARTIAL,
        Verdict::Rejected(_) => EXIT_FAIL,
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Rejected(r) => json!({
            "verdict": v.label(),
            "reason": r.reason,
            "residual": r.residual.as_ref().map(json::diff_form),
        }),
        Verdict::VerifiedModuloAxioms(steps) => json!({"verdict": v.label(), "axiom_steps": steps.len()}),
        Verdict::Verified => json!({"verdict": v.label()}),
    }
}

/// The certificate document with its verdict attached.
fn emit_certificate(cert: &RewriteCertificate, extra: Value) -> Result<(Value, u8)> {
    let verdict = cert.verify()?;
    let mut doc = json::certificate(cert);
    doc["verdict"] = Value::String(verdict.label().into());
    if let Value::Object(map) = extra {
        for (k, v) in map {
            doc[k] = v;
        }
    }
    Ok((doc, verdict_code(&verdict)))
}

fn rewrite_result(r: &RewriteResult) -> Result<(Value, u8)> {
    let extra = match r {
        RewriteResult::Trivial { reason, .. } => json!({"outcome": "Trivial", "reason": reason.describe()}),
        RewriteResult::Rewritten { symbol, .. } => json!({"outcome": "Rewritten", "symbol": json::symbol(symbol)}),
    };
    emit_certificate(r.cert(), extra)
}

fn slot_index(slot: usize, name: &str) -> Result<usize> {
    slot.checked_sub(1)
        .ok_or_else(|| CliError::Usage(format!("--{name} is numbered from 1")))
}

fn regularity_json(c: &RegularityCertificate) -> Value {
    match c {
        RegularityCertificate::TwoDim(v) => json!({"rule": c.rule(), "variant": v.tag()}),
        RegularityCertificate::NormForm(check) => {
            let leaf = match check {
                NormLeafCheck::TraceNonzero => "trace_nonzero",
                NormLeafCheck::NotAnImage => "not_an_image",
                NormLeafCheck::Assumed => "assumed",
            };
            json!({"rule": c.rule(), "leaf": leaf})
        }
        RegularityCertificate::Scale(inner) => json!({"rule": c.rule(), "inner": regularity_json(inner)}),
        RegularityCertificate::DirectSum(parts) => {
            json!({"rule": c.rule(), "parts": parts.iter().map(regularity_json).collect::<Vec<_>>()})
        }
    }
}

fn built_form(f: &FormSpec) -> Value {
    let mut doc = json::form_document(f);
    doc["dimension"] = json!(f.dimension());
    doc["regularity"] = match regularity_certificate(f) {
        Ok(c) => json!({"certificate": regularity_json(&c), "assumptions": c.assumptions()}),
        Err(e) => json!({"error": e.to_string()}),
    };
    doc
}

fn isotropy_json(o: &IsotropyOutcome) -> (Value, u8) {
    match o {
        IsotropyOutcome::Found {
            vector,
            level,
            evaluations,
        } => (
            json!({"outcome": "Found", "vector": json::elements(vector), "level": level, "evaluations": evaluations}),
            EXIT_OK,
        ),
        IsotropyOutcome::NotFoundWithinBound {
            complete_level,
            evaluations,
            cap,
            cap_reached,
        } => (
            json!({
                "outcome": "NotFoundWithinBound",
                "complete_level": complete_level,
                "evaluations": evaluations,
                "cap": cap,
                "cap_reached": cap_reached,
            }),
            EXIT_PARTIAL,
        ),
    }
}

fn budget(mode: SearchMode, cap: Option<u64>, jobs: usize) -> SearchBudget {
    let b = SearchBudget::new(mode).with_jobs(jobs);
    match cap {
        Some(c) => b.with_cap(c),
        None => b,
    }
}

fn parse_mode(text: &str) -> Result<SearchMode> {
    if text == "exhaustive" {
        return Ok(SearchMode::ExhaustiveConstants);
    }
    text.strip_prefix("degree:")
        .and_then(|d| d.parse().ok())
        .map(SearchMode::BoundedDegree)
        .ok_or_else(|| CliError::Usage(format!("--mode must be exhaustive or degree:D, got {text:?}")))
}

fn trivial_case(c: &TrivialCase) -> String {
    match c {
        TrivialCase::AlphaInWpImage => "AlphaInWpImage".into(),
        TrivialCase::PthPowerLastSlot => "PthPowerLastSlot".into(),
        TrivialCase::ShiftedToWpImage => "ShiftedToWpImage".into(),
        TrivialCase::DuringSlotModify(r) => format!("DuringSlotModify: {}", r.describe()),
    }
}

fn algebra_element(a: &AlgebraElement) -> Value {
    json::elements(a.coords())
}

fn basis_labels(p: usize) -> Vec<String> {
    let mono = |v: &str, k: usize| match k {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{k}"),
    };
    (0..p * p)
        .map(|k| {
            let (i, j) = (k % p, k / p);
            match (mono("x", i), mono("y", j)) {
                (a, b) if a.is_empty() && b.is_empty() => "1".into(),
                (a, b) if b.is_empty() => a,
                (a, b) if a.is_empty() => b,
                (a, b) => format!("{a}*{b}"),
            }
        })
        .collect()
}

pub fn dispatch(session: &Session, command: &Command) -> Result<(Value, u8)> {
    match command {
        Command::Eval { symbol } => {
            let s = json::parse_symbol_document(&read_json(symbol)?)?;
            Ok((form_document(&s.eval()), EXIT_OK))
        }
        Command::D { form } => Ok((form_document(&read_form(form)?.d()), EXIT_OK)),
        Command::Wedge { left, right } => {
            let (a, b) = (read_form(left)?, read_form(right)?);
            if !a.ctx().same_as(b.ctx()) {
                return Err(CliError::Usage("the two forms are over different fields".into()));
            }
            Ok((form_document(&a.wedge(&b)), EXIT_OK))
        }
        Command::Rewrite {
            rule,
            slot,
            slot2,
            elem,
            symbol,
        } => {
            let s = json::parse_symbol_document(&read_json(symbol)?)?;
            let ctx = s.ctx().clone();
            let i = slot_index(*slot, "slot")?;
            let j = || {
                slot2
                    .ok_or_else(|| CliError::Usage("this rule needs --slot2".into()))
                    .and_then(|j| slot_index(j, "slot2"))
            };
            let elem = || elem.as_deref().ok_or_else(|| CliError::Usage("this rule needs --elem".into()));
            let r = match rule {
                Rule::A => rule_a(&s, i)?,
                Rule::B => rule_b(&s, i, &parse_as(&ctx, elem()?)?)?,
                Rule::C => rule_c(&s, i, &ctx.parse(elem()?)?)?,
                Rule::D => rule_d(&s, i, j()?)?,
                Rule::E => rule_e(&s, i, j()?)?,
                Rule::F => rule_f(&s, i, j()?, &parse_as(&ctx, elem()?)?)?,
            };
            rewrite_result(&r)
        }
        Command::SlotModify { vector, symbol } => {
            let s = json::parse_symbol_document(&read_json(symbol)?)?;
            let v = json::parse_vector(s.ctx(), &read_json(vector)?)?;
            rewrite_result(&slot_modify(&s, &v)?)
        }
        Command::Link { level, symbols } => {
            let symbols = json::parse_symbols_document(&read_json(symbols)?)?;
            let out = separable_link_jobs(&symbols, *level, session.jobs)?;
            let mut code = EXIT_OK;
            let mut results = Vec::with_capacity(out.results.len());
            for r in &out.results {
                let outcome = match &r.outcome {
                    LinkageOutcome::Rewritten => json!("Rewritten"),
                    LinkageOutcome::Unchanged => json!("Unchanged"),
                    LinkageOutcome::Trivial(reason) => json!({"Trivial": reason.describe()}),
                };
                let (cert, c) = emit_certificate(&r.cert, json!({}))?;
                code = code.max(c);
                results.push(json!({"symbol": json::symbol(&r.symbol), "outcome": outcome, "certificate": cert}));
            }
            let sys = &out.system;
            let doc = json!({
                "field": json::header(out.common_alpha.ctx()),
                "level": level,
                "common_alpha": json::element(&out.common_alpha),
                "system": {
                    "gamma_tuples": sys.gamma_tuples,
                    "gammas": json::elements(&sys.gammas),
                    "x": json::elements(&sys.x),
                    "y": sys.y,
                    "deltas": json::elements(&sys.deltas),
                    "equations_hold": sys.check_equations(),
                },
                "results": results,
            });
            Ok((doc, code))
        }
        Command::Trivialize {
            max_degree,
            cap,
            symbol,
        } => {
            let s = json::parse_symbol_document(&read_json(symbol)?)?;
            let b = budget(SearchMode::BoundedDegree(*max_degree), *cap, session.jobs);
            match trivialize(&s, b)? {
                TrivializationOutcome::Trivial {
                    cert,
                    case,
                    vector,
                    last_symbol,
                } => emit_certificate(
                    &cert,
                    json!({
                        "outcome": "Trivial",
                        "case": trivial_case(&case),
                        "vector": json::elements(&vector),
                        "last_symbol": last_symbol.as_ref().map(json::symbol),
                    }),
                ),
                TrivializationOutcome::NotFoundWithinBudget(o) => Ok(isotropy_json(&o)),
            }
        }
        Command::Pregular { form } => {
            let f = json::parse_form_document(&read_json(form)?)?;
            match regularity_certificate(&f) {
                Ok(c) => Ok((
                    json!({
                        "p_regular": true,
                        "method": "certificate",
                        "certificate": regularity_json(&c),
                        "assumptions": c.assumptions(),
                    }),
                    if c.assumptions() == 0 { EXIT_OK } else { EXIT_PARTIAL },
                )),
                Err(refused) if f.has_constant_coefficients() => {
                    let check = f.to_explicit().is_p_regular_bruteforce()?;
                    Ok((
                        json!({
                            "p_regular": check.regular,
                            "method": "enumeration",
                            "certificate_refused": refused.to_string(),
                            "witness": check.witness,
                            "points_checked": check.points_checked,
                        }),
                        EXIT_OK,
                    ))
                }
                Err(refused) => Ok((
                    json!({"p_regular": null, "method": "none", "certificate_refused": refused.to_string()}),
                    EXIT_PARTIAL,
                )),
            }
        }
        Command::Isotropy { mode, cap, form } => {
            let mode = parse_mode(mode)?;
            let f = json::parse_form_document(&read_json(form)?)?;
            let o = isotropy_search(&f, budget(mode, *cap, session.jobs))?;
            Ok(isotropy_json(&o))
        }
        Command::Norm { alpha, elem } => {
            let ctx = session.ctx()?;
            let a = ctx.parse(alpha)?;
            let f = parse_as(&ctx, elem)?;
            Ok((
                json!({
                    "field": json::header(&ctx),
                    "alpha": json::element(&a),
                    "elem": json::elements(f.coeffs()),
                    "norm": json::element(&norm(&a, &f)),
                }),
                EXIT_OK,
            ))
        }
        Command::BuildPhi { symbol } => {
            let s = json::parse_symbol_document(&read_json(symbol)?)?;
            Ok((built_form(&build_phi(&s)), EXIT_OK))
        }
        Command::BuildTrivializer { symbol } => {
            let s = json::parse_symbol_document(&read_json(symbol)?)?;
            Ok((built_form(&build_trivializer(&s)), EXIT_OK))
        }
        Command::BuildCommonSlot { spec } => {
            let doc = read_json(spec)?;
            let ctx = json::ctx_of(&doc)?;
            let list = |key: &str| match doc.get(key) {
                Some(v) => json::parse_elements(&ctx, v),
                None => Ok(Vec::new()),
            };
            let f = build_common_slot_form(&list("alphas")?, &list("betas")?, &list("gammas")?, &list("deltas")?)?;
            Ok((built_form(&f), EXIT_OK))
        }
        Command::AlgebraSplitCheck { alpha, g } => {
            let ctx = session.ctx()?;
            let a = ctx.parse(alpha)?;
            let g = parse_list(&ctx, g)?;
            let w = split_witness(&a, &g)?;
            let p = ctx.p() as usize;
            let t_power_is_one = w.t_power == w.algebra.one();
            let nilpotent = w.nilpotent_power.is_zero();
            let doc = json!({
                "field": json::header(&ctx),
                "alpha": json::element(&a),
                "g": json::elements(&g),
                "beta": json::element(&w.norm),
                "basis": basis_labels(p),
                "g_inverse": algebra_element(&w.g_inverse),
                "t": algebra_element(&w.t),
                "t_power_p": algebra_element(&w.t_power),
                "t_minus_one_power_p": algebra_element(&w.nilpotent_power),
                "t_power_is_one": t_power_is_one,
                "nilpotent": nilpotent,
            });
            Ok((doc, if w.holds() { EXIT_OK } else { EXIT_FAIL }))
        }
        Command::VerifyCert { cert } => {
            let c = json::parse_certificate(&read_json(cert)?)?;
            let v = c.verify()?;
            Ok((verdict_json(&v), verdict_code(&v)))
        }
    }
}
