//! Exact computation in characteristic p.
//!
//! The crate covers rational function fields over F_{p^e}, their modules of
//! differential forms, certified class-preserving rewrites of decomposable
//! forms α·dβ₁/β₁ ∧ … ∧ dβₙ/βₙ in the cokernel of the Artin-Schreier map,
//! degree-p polynomial forms (norm forms, p-regularity, isotropy search) and
//! cyclic p-algebras given by structure constants.

pub mod field;
pub mod json;
pub mod calc;
pub mod certs;
pub mod cyclic;
pub mod exterior;
pub mod pforms;
pub mod sampling;
pub mod symbol;
