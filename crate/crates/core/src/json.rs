//! JSON encodings of field headers, elements, forms, symbols, degree-p forms
//! and certificates.
//!
//! Field elements travel as expression strings in the declared field.
//! `serde_json::Value` keeps object keys sorted, so equal inputs serialize to
//! identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::certs::{AxiomRule, AxiomStep, Presentation, RewriteCertificate, WpGenerator};
use crate::exterior::{DiffForm, FormError};
use crate::field::{Ctx, CtxExt, FieldCtx, FieldElement, FieldError};
use crate::pforms::{ExplicitForm, FormSpec, PFormError, TwoDimVariant};
use crate::symbol::{ASElement, Symbol, SymbolError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Malformed(String),
    #[error("missing or invalid field {0:?}")]
    Missing(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    PForm(#[from] PFormError),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Malformed(e.to_string())
    }
}

type Result<T> = std::result::Result<T, JsonError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default)]
    pub min_poly: Vec<u32>,
    #[serde(default)]
    pub vars: Vec<String>,
}

fn one() -> u32 {
    1
}

impl FieldHeader {
    pub fn of(ctx: &Ctx) -> Self {
        FieldHeader {
            p: ctx.p(),
            e: ctx.e(),
            min_poly: ctx.gf().min_poly(),
            vars: ctx.vars().to_vec(),
        }
    }

    pub fn ctx(&self) -> Result<Ctx> {
        Ok(FieldCtx::new(self.p, self.e, &self.min_poly, &self.vars)?)
    }
}

pub fn header(ctx: &Ctx) -> Value {
    serde_json::to_value(FieldHeader::of(ctx)).expect("plain struct")
}

/// Reads the `"field"` member of a document.
pub fn ctx_of(doc: &Value) -> Result<Ctx> {
    let h = doc.get("field").ok_or_else(|| JsonError::Missing("field".into()))?;
    let header: FieldHeader = serde_json::from_value(h.clone())?;
    header.ctx()
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| JsonError::Missing(key.into()))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    get(v, key)?.as_array().ok_or_else(|| JsonError::Missing(key.into()))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| JsonError::Missing(key.into()))
}

pub fn element(a: &FieldElement) -> Value {
    Value::String(a.to_string())
}

/// Accepts an expression string or an integer.
pub fn parse_element(ctx: &Ctx, v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => Ok(ctx.parse(s)?),
        Value::Number(n) => n
            .as_i64()
            .map(|k| ctx.int(k))
            .ok_or_else(|| JsonError::Invalid(format!("{n} is not an integer"))),
        other => Err(JsonError::Invalid(format!("expected an expression, got {other}"))),
    }
}

pub fn elements(xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(element).collect())
}

pub fn parse_elements(ctx: &Ctx, v: &Value) -> Result<Vec<FieldElement>> {
    v.as_array()
        .ok_or_else(|| JsonError::Invalid(format!("expected a list of expressions, got {v}")))?
        .iter()
        .map(|x| parse_element(ctx, x))
        .collect()
}

/// A coefficient list for c₀ + c₁λ + …, padded with zeros to length p.
pub fn parse_as_element(ctx: &Ctx, v: &Value) -> Result<ASElement> {
    Ok(ASElement::from_prefix(ctx, &parse_elements(ctx, v)?)?)
}

fn index_key(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn diff_form(w: &DiffForm) -> Value {
    let comps: Map<String, Value> = w.components().iter().map(|(k, c)| (index_key(k), element(c))).collect();
    json!({"degree": w.degree(), "components": comps})
}

pub fn parse_diff_form(ctx: &Ctx, v: &Value) -> Result<DiffForm> {
    let degree = get_usize(v, "degree")?;
    let comps = match v.get("components") {
        None => Map::new(),
        Some(c) => c
            .as_object()
            .cloned()
            .ok_or_else(|| JsonError::Missing("components".into()))?,
    };
    let mut parsed = Vec::with_capacity(comps.len());
    for (k, c) in &comps {
        let idx: Vec<usize> = serde_json::from_str(k)?;
        parsed.push((idx, parse_element(ctx, c)?));
    }
    Ok(DiffForm::from_components(ctx, degree, parsed)?)
}

pub fn symbol(s: &Symbol) -> Value {
    json!({"alpha": element(s.alpha()), "slots": elements(s.slots())})
}

pub fn parse_symbol(ctx: &Ctx, v: &Value) -> Result<Symbol> {
    let alpha = parse_element(ctx, get(v, "alpha")?)?;
    let slots = parse_elements(ctx, get(v, "slots")?)?;
    Ok(Symbol::new(alpha, slots)?)
}

/// A symbol together with its field header.
pub fn symbol_document(s: &Symbol) -> Value {
    let mut v = symbol(s);
    v["field"] = header(s.ctx());
    v
}

pub fn parse_symbol_document(doc: &Value) -> Result<Symbol> {
    parse_symbol(&ctx_of(doc)?, doc)
}

/// `{"field": …, "symbols": [...]}`.
pub fn parse_symbols_document(doc: &Value) -> Result<Vec<Symbol>> {
    let ctx = ctx_of(doc)?;
    get_array(doc, "symbols")?.iter().map(|s| parse_symbol(&ctx, s)).collect()
}

/// `{"vector": [[c₀, c₁, …], …]}`, one coefficient list per entry.
pub fn parse_vector(ctx: &Ctx, doc: &Value) -> Result<Vec<ASElement>> {
    get_array(doc, "vector")?.iter().map(|c| parse_as_element(ctx, c)).collect()
}

pub fn presentation(p: &Presentation) -> Value {
    match p {
        Presentation::Symbol(s) => json!({"symbol": symbol(s)}),
        Presentation::Form(w) => json!({"form": diff_form(w)}),
    }
}

pub fn parse_presentation(ctx: &Ctx, v: &Value) -> Result<Presentation> {
    if let Some(s) = v.get("symbol") {
        return Ok(Presentation::Symbol(parse_symbol(ctx, s)?));
    }
    if let Some(w) = v.get("form") {
        return Ok(Presentation::Form(parse_diff_form(ctx, w)?));
    }
    Err(JsonError::Invalid("a presentation needs a \"symbol\" or \"form\" member".into()))
}

fn axiom_step(a: &AxiomStep) -> Value {
    json!({
        "rule": a.rule.name(),
        "alpha": element(&a.alpha),
        "f": elements(a.f.coeffs()),
        "slot": a.slot,
        "slots": elements(&a.slots),
        "sign": a.sign,
        "claimed_difference": diff_form(&a.claimed_difference),
    })
}

fn parse_axiom_step(ctx: &Ctx, v: &Value) -> Result<AxiomStep> {
    let rule = match get(v, "rule")?.as_str() {
        Some("NormSlotGeneral") => AxiomRule::NormSlotGeneral,
        other => return Err(JsonError::Invalid(format!("unknown axiom rule {other:?}"))),
    };
    let sign = get(v, "sign")?
        .as_i64()
        .and_then(|s| i8::try_from(s).ok())
        .ok_or_else(|| JsonError::Missing("sign".into()))?;
    Ok(AxiomStep {
        rule,
        alpha: parse_element(ctx, get(v, "alpha")?)?,
        f: parse_as_element(ctx, get(v, "f")?)?,
        slot: get_usize(v, "slot")?,
        slots: parse_elements(ctx, get(v, "slots")?)?,
        sign,
        claimed_difference: parse_diff_form(ctx, get(v, "claimed_difference")?)?,
    })
}

pub fn certificate(c: &RewriteCertificate) -> Value {
    let gens: Vec<Value> = c
        .generators
        .iter()
        .map(|g| json!({"u": element(&g.u), "slots": elements(&g.slots)}))
        .collect();
    json!({
        "field": header(c.ctx()),
        "n": c.n,
        "lhs": presentation(&c.lhs),
        "rhs": presentation(&c.rhs),
        "wp_generators": gens,
        "theta": diff_form(&c.theta),
        "axiom_steps": c.axiom_steps.iter().map(axiom_step).collect::<Vec<_>>(),
    })
}

pub fn parse_certificate(doc: &Value) -> Result<RewriteCertificate> {
    let ctx = ctx_of(doc)?;
    let n = get_usize(doc, "n")?;
    let generators = match doc.get("wp_generators") {
        None => Vec::new(),
        Some(g) => g
            .as_array()
            .ok_or_else(|| JsonError::Missing("wp_generators".into()))?
            .iter()
            .map(|g| {
                Ok(WpGenerator {
                    u: parse_element(&ctx, get(g, "u")?)?,
                    slots: parse_elements(&ctx, get(g, "slots")?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let theta = match doc.get("theta") {
        None => DiffForm::zero(&ctx, n.saturating_sub(1)),
        Some(t) => parse_diff_form(&ctx, t)?,
    };
    let axiom_steps = match doc.get("axiom_steps") {
        None => Vec::new(),
        Some(a) => a
            .as_array()
            .ok_or_else(|| JsonError::Missing("axiom_steps".into()))?
            .iter()
            .map(|s| parse_axiom_step(&ctx, s))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(RewriteCertificate {
        n,
        lhs: parse_presentation(&ctx, get(doc, "lhs")?)?,
        rhs: parse_presentation(&ctx, get(doc, "rhs")?)?,
        generators,
        theta,
        axiom_steps,
    })
}

fn multi_index_key(idx: &[u32]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn explicit_form(f: &ExplicitForm) -> Value {
    let coeffs: Map<String, Value> = f.coeffs().iter().map(|(k, c)| (multi_index_key(k), element(c))).collect();
    json!({"kind": "explicit", "dim": f.dim(), "coeffs": coeffs})
}

pub fn form(f: &FormSpec) -> Value {
    match f {
        FormSpec::Explicit(e) => explicit_form(e),
        FormSpec::TwoDim { alpha, variant } => {
            json!({"kind": "two_dim", "alpha": element(alpha), "variant": variant.tag()})
        }
        FormSpec::NormForm { alpha } => json!({"kind": "norm", "alpha": element(alpha)}),
        FormSpec::Scale { c, inner } => json!({"kind": "scale", "c": element(c), "inner": form(inner)}),
        FormSpec::DirectSum(parts) => {
            json!({"kind": "direct_sum", "parts": parts.iter().map(form).collect::<Vec<_>>()})
        }
    }
}

/// Structural trees tagged by `"kind"`, or explicit `{"dim", "coeffs"}`.
pub fn parse_form(ctx: &Ctx, v: &Value) -> Result<FormSpec> {
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("explicit");
    match kind {
        "explicit" => {
            let dim = get_usize(v, "dim")?;
            let coeffs = get(v, "coeffs")?
                .as_object()
                .ok_or_else(|| JsonError::Missing("coeffs".into()))?;
            let mut parsed = Vec::with_capacity(coeffs.len());
            for (k, c) in coeffs {
                let key: Vec<u32> = serde_json::from_str(k)?;
                parsed.push((key, parse_element(ctx, c)?));
            }
            Ok(FormSpec::Explicit(ExplicitForm::new(ctx, dim, parsed)?))
        }
        "two_dim" => {
            let variant = match v.get("variant").and_then(Value::as_str) {
                None => TwoDimVariant::A2Weighted,
                Some(t) => {
                    TwoDimVariant::from_tag(t).ok_or_else(|| JsonError::Invalid(format!("unknown variant {t:?}")))?
                }
            };
            Ok(FormSpec::two_dim(&parse_element(ctx, get(v, "alpha")?)?, variant))
        }
        "norm" => Ok(FormSpec::norm_form(&parse_element(ctx, get(v, "alpha")?)?)),
        "scale" => Ok(FormSpec::scale(
            &parse_element(ctx, get(v, "c")?)?,
            parse_form(ctx, get(v, "inner")?)?,
        )?),
        "direct_sum" => {
            let parts = get_array(v, "parts")?
                .iter()
                .map(|p| parse_form(ctx, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(FormSpec::direct_sum(parts)?)
        }
        other => Err(JsonError::Invalid(format!("unknown form kind {other:?}"))),
    }
}

pub fn form_document(f: &FormSpec) -> Value {
    let mut v = form(f);
    v["field"] = header(f.ctx());
    v
}

pub fn parse_form_document(doc: &Value) -> Result<FormSpec> {
    parse_form(&ctx_of(doc)?, doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calc::rule_b;
    use crate::pforms::build_trivializer;

    #[test]
    fn header_round_trip() {
        let k = FieldCtx::new(3, 2, &[1, 0, 1], &["x", "y"]).unwrap();
        let h = header(&k);
        assert_eq!(h.to_string(), r#"{"e":2,"min_poly":[1,0,1],"p":3,"vars":["x","y"]}"#);
        let back = ctx_of(&json!({"field": h})).unwrap();
        assert!(back.same_as(&k));
    }

    #[test]
    fn forms_round_trip() {
        let k = FieldCtx::prime(2, &["x", "y", "z"]).unwrap();
        let (x, y, z) = (k.var(0), k.var(1), k.var(2));
        let w = DiffForm::decomposable(&x, &[&y + &z, x.clone()]).unwrap();
        assert_eq!(parse_diff_form(&k, &diff_form(&w)).unwrap(), w);
        let s = Symbol::new(x.clone(), vec![y.clone(), z.clone()]).unwrap();
        assert_eq!(parse_symbol_document(&symbol_document(&s)).unwrap(), s);
        let f = build_trivializer(&s);
        assert_eq!(parse_form_document(&form_document(&f)).unwrap(), f);
        let e = FormSpec::Explicit(f.to_explicit());
        assert_eq!(parse_form(&k, &form(&e)).unwrap(), e);
    }

    #[test]
    fn certificate_round_trip() {
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (k.var(0), k.var(1));
        let s = Symbol::new(x.clone(), vec![&y + &k.one()]).unwrap();
        let binomial = ASElement::binomial(&y, &k.one());
        let general = ASElement::new(&k, vec![y.clone(), k.one(), k.one()]).unwrap();
        for f in [binomial, general] {
            let cert = rule_b(&s, 0, &f).unwrap().into_cert();
            let doc = certificate(&cert);
            let back = parse_certificate(&doc).unwrap();
            assert_eq!(back, cert);
            assert_eq!(certificate(&back).to_string(), doc.to_string());
            let expected = if f.is_binomial() { "Verified" } else { "VerifiedModuloAxioms" };
            assert_eq!(back.verify().unwrap().label(), expected);
        }
    }
}
