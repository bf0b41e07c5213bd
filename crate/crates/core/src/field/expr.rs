//! Text form of field elements.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! Integers reduce mod p and `g` names the generator of F_{p^e} when e > 1.
//! Printing produces the canonical form, which parses back to the same element.

use super::element::{Ctx, CtxExt, FieldElement};
use super::gf::Gf;
use super::poly::Poly;
use super::FieldError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, FieldError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u64>().map_err(|_| FieldError::Syntax {
                    offset: start,
                    message: "integer literal too large".into(),
                })?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'a'..=b'z' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            _ => {
                return Err(FieldError::Syntax {
                    offset: start,
                    message: format!("unexpected character {:?}", c as char),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Ctx,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: &str) -> Result<T, FieldError> {
        Err(FieldError::Syntax {
            offset: self.offset(),
            message: message.to_string(),
        })
    }

    fn expr(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.factor()?;
                    acc = acc.div_ref(&d).map_err(|_| FieldError::Syntax {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement, FieldError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = u32::try_from(*n).map_err(|_| FieldError::Syntax {
                        offset: self.offset(),
                        message: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    return Ok(base.pow(n));
                }
                _ => return self.err("expected an unsigned integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement, FieldError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.ctx.int((n % self.ctx.p() as u64) as i64))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.ctx.var_index(&name) {
                    Ok(self.ctx.var(i))
                } else if name == "g" && self.ctx.e() > 1 {
                    Ok(self.ctx.generator())
                } else {
                    Err(FieldError::UnknownIdentifier { name, offset })
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, identifier or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(ctx: &Ctx, text: &str) -> Result<FieldElement, FieldError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        ctx,
        toks,
        pos: 0,
        end: text.len(),
    };
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok(v)
}

/// Prints an F_{p^e} constant; the bool says whether it is a single factor.
fn print_coef(gf: &Gf, c: u16) -> (String, bool) {
    if gf.e() == 1 {
        return (c.to_string(), true);
    }
    let digits = gf.digits(c);
    let mut parts = Vec::new();
    for (i, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        let g = match i {
            0 => String::new(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        };
        parts.push(match (d, g.is_empty()) {
            (_, true) => d.to_string(),
            (1, false) => g,
            (_, false) => format!("{d}*{g}"),
        });
    }
    if parts.is_empty() {
        return ("0".into(), true);
    }
    let single = parts.len() == 1;
    (parts.join(" + "), single)
}

pub fn print_poly(ctx: &Ctx, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let gf = ctx.gf();
    let vars = ctx.vars();
    let mut parts = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut factors = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => factors.push(v.clone()),
                e => factors.push(format!("{v}^{e}")),
            }
        }
        let (cs, single) = print_coef(gf, *c);
        if factors.is_empty() {
            parts.push(cs);
        } else if *c == 1 {
            parts.push(factors.join("*"));
        } else if single {
            parts.push(format!("{cs}*{}", factors.join("*")));
        } else {
            parts.push(format!("({cs})*{}", factors.join("*")));
        }
    }
    parts.join(" + ")
}

pub fn print(a: &FieldElement) -> String {
    let n = print_poly(a.ctx(), a.num());
    if a.den().is_one() {
        n
    } else {
        format!("({n})/({})", print_poly(a.ctx(), a.den()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn grammar_exercise() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let a = k.parse("x^2*y + 1/(x+1)").unwrap();
        let x = k.var(0);
        let y = k.var(1);
        let expected = &(&x.pow(2) * &y) + &(&k.one() / &(&x + &k.one()));
        assert_eq!(a, expected);
        assert_eq!(k.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn syntax_error_offset() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        match k.parse("x + + y") {
            Err(FieldError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            k.parse("x + w"),
            Err(FieldError::UnknownIdentifier { offset: 4, .. })
        ));
        assert!(matches!(k.parse("x/(y-y)"), Err(FieldError::Syntax { .. })));
    }

    #[test]
    fn roundtrip_is_fixed_point() {
        let k = FieldCtx::prime(3, &["x", "y"]).unwrap();
        let a = k.parse("(x+y)^3").unwrap();
        let printed = a.to_string();
        assert_eq!(printed, "x^3 + y^3");
        let b = k.parse(&printed).unwrap();
        assert_eq!(b, a);
        assert_eq!(b.to_string(), printed);
    }

    #[test]
    fn extension_coefficients_print() {
        let k = FieldCtx::new(3, 2, &[1, 0, 1], &["x"]).unwrap();
        let a = k.parse("(g+1)*x + 2*g + g*x^2/(x+g)").unwrap();
        let s = a.to_string();
        assert_eq!(k.parse(&s).unwrap(), a, "{s}");
        assert!(k.parse("g").is_ok());
        let k1 = FieldCtx::prime(3, &["x"]).unwrap();
        assert!(k1.parse("g").is_err());
    }
}
