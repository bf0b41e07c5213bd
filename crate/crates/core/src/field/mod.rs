//! Exact arithmetic in F_{p^e} and in rational function fields F_{p^e}(x_1..x_k).

mod element;
mod evalfield;
pub mod expr;
mod gcd;
mod modgcd;
pub mod gf;
pub mod poly;
mod unipoly;

use thiserror::Error;

pub use element::{Ctx, CtxExt, FieldCtx, FieldElement};
pub use gcd::gcd as poly_gcd;
pub use poly::{Monomial, Poly};
pub use unipoly::{uni_gcd, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not a supported prime")]
    InvalidCharacteristic(u32),
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinPoly(String),
    #[error("too many variables ({0})")]
    TooManyVariables(usize),
    #[error("invalid variable name {0:?}")]
    BadVariableName(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier {name:?} at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

/// Outcome of the search for u with u^p − u = α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WpPreimage {
    Found(FieldElement),
    NotInImage,
    /// α has a nontrivial p-th power denominator; not decided.
    Unknown,
}

/// Decides α ∈ ℘(F) for polynomial α and for α whose reduced denominator is
/// not a p-th power; other rational α are reported as `Unknown`.
///
/// For polynomial α any preimage is a polynomial whose leading term is the
/// p-th root of the leading term of α, so the preimage is peeled off one
/// leading term at a time.
pub fn wp_preimage(alpha: &FieldElement) -> WpPreimage {
    let ctx = alpha.ctx();
    let gf = ctx.gf();
    if !alpha.is_polynomial() {
        return match alpha.den().pth_root(gf) {
            None => WpPreimage::NotInImage,
            Some(_) => WpPreimage::Unknown,
        };
    }
    let mut acc = ctx.zero();
    let mut rest = alpha.clone();
    loop {
        let Some(&(m, c)) = rest.num().lead() else {
            return WpPreimage::Found(acc);
        };
        if m.is_one() {
            // constant: brute force over F_{p^e}
            return match gf.elements().find(|&u| gf.sub(gf.pow(u, gf.p() as u64), u) == c) {
                Some(u) => WpPreimage::Found(&acc + &ctx.coef(u)),
                None => WpPreimage::NotInImage,
            };
        }
        let Some(root) = Poly::term(m, c).pth_root(gf) else {
            return WpPreimage::NotInImage;
        };
        let t = ctx.from_poly(root);
        rest = &rest - &t.wp();
        acc = &acc + &t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wp_preimage_cases() {
        let k = FieldCtx::prime(2, &["x", "y"]).unwrap();
        let x = k.var(0);
        let y = k.var(1);
        let u = &(&x * &y) + &x.pow(3);
        match wp_preimage(&u.wp()) {
            WpPreimage::Found(v) => assert_eq!(v.wp(), u.wp()),
            other => panic!("{other:?}"),
        }
        assert_eq!(wp_preimage(&x), WpPreimage::NotInImage);
        assert_eq!(wp_preimage(&(&k.one() / &x)), WpPreimage::NotInImage);
        assert_eq!(wp_preimage(&(&k.one() / &x.pow(2))), WpPreimage::Unknown);
        // 1 = u^2 + u has no solution in F_2, but does in F_4
        assert_eq!(wp_preimage(&k.one()), WpPreimage::NotInImage);
        let k4 = FieldCtx::new(2, 2, &[1, 1, 1], &["x"]).unwrap();
        assert!(matches!(wp_preimage(&k4.one()), WpPreimage::Found(_)));
    }
}
