//! The rewrite calculus on decomposable symbols: elementary rules, slot
//! modification by values of the form φ, separable linkage of collections
//! sharing their slots, and trivialization from isotropic vectors.

mod linkage;
mod rules;
mod slot_modify;
mod trivialize;

use thiserror::Error;

pub use linkage::{link_collection_size, separable_link, separable_link_jobs, LinkOutput, LinkageOutcome, LinkageSystem, LinkedSymbol};
pub use rules::{rule_a, rule_b, rule_c, rule_d, rule_e, rule_f, swap_slots, wp_root_from_zero_norm};
pub use slot_modify::{phi_value, slot_modify, slot_modify_last, slot_modify_tail, tuple_index, tuple_of, SlotVector};
pub use trivialize::{from_isotropic_vector, trivialize, TrivialCase, TrivializationOutcome};

use crate::certs::RewriteCertificate;
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("slot {slot} out of range for a symbol with {n} slots")]
    SlotOutOfRange { slot: usize, n: usize },
    #[error("slot {0} used twice")]
    SameSlot(usize),
    #[error("the element must be nonzero")]
    ZeroElement,
    #[error("the vector must be nonzero")]
    ZeroVector,
    #[error("vector has {got} components, expected {expected}")]
    WrongVectorLength { expected: usize, got: usize },
    #[error("level {level} outside 1..={n}")]
    BadRange { level: usize, n: usize },
    #[error("component {0} lies outside the allowed summand")]
    OutsideRange(usize),
    #[error("collection has {got} symbols, expected {expected}")]
    WrongCollectionSize { expected: usize, got: usize },
    #[error("symbol {0} does not share the slots of the first symbol")]
    SlotsNotShared(usize),
    #[error("norm is zero but no root of T^p − T − α could be extracted")]
    NoWpRoot,
    #[error(transparent)]
    Cert(#[from] crate::certs::CertError),
}

/// Why a rewrite ended in the zero class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialReason {
    /// A nonzero element of the Artin-Schreier algebra has norm zero.
    ZeroNorm { slot: usize },
    /// Slot i is a p-th power after the shift.
    PthPowerSlot { slot: usize },
    /// β_i + β_j = 0.
    OppositeSlots { i: usize, j: usize },
    /// β_i = −N(f).
    NegatedNormSlot { slot: usize },
    /// The constructed slot value is a p-th power.
    PthPowerValue,
    /// α is a ℘-image.
    AlphaInWpImage,
}

impl TrivialReason {
    pub fn describe(&self) -> String {
        match self {
            TrivialReason::ZeroNorm { slot } => format!("zero norm at slot {}", slot + 1),
            TrivialReason::PthPowerSlot { slot } => format!("slot {} becomes a p-th power", slot + 1),
            TrivialReason::OppositeSlots { i, j } => format!("slots {} and {} are opposite", i + 1, j + 1),
            TrivialReason::NegatedNormSlot { slot } => format!("slot {} is a negated norm", slot + 1),
            TrivialReason::PthPowerValue => "last slot is a p-th power".into(),
            TrivialReason::AlphaInWpImage => "alpha is an Artin-Schreier image".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteResult {
    /// The input denotes the zero class; the certificate ends in the zero form.
    Trivial {
        cert: RewriteCertificate,
        reason: TrivialReason,
    },
    Rewritten {
        symbol: Symbol,
        cert: RewriteCertificate,
    },
}

impl RewriteResult {
    pub fn cert(&self) -> &RewriteCertificate {
        match self {
            RewriteResult::Trivial { cert, .. } | RewriteResult::Rewritten { cert, .. } => cert,
        }
    }

    pub fn into_cert(self) -> RewriteCertificate {
        match self {
            RewriteResult::Trivial { cert, .. } | RewriteResult::Rewritten { cert, .. } => cert,
        }
    }

    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            RewriteResult::Rewritten { symbol, .. } => Some(symbol),
            RewriteResult::Trivial { .. } => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, RewriteResult::Trivial { .. })
    }

    /// Certificate and output of a rewrite known not to be trivial.
    pub(crate) fn expect_rewritten(self) -> (RewriteCertificate, Symbol) {
        match self {
            RewriteResult::Rewritten { symbol, cert } => (cert, symbol),
            RewriteResult::Trivial { reason, .. } => panic!("unexpected trivial rewrite: {reason:?}"),
        }
    }

    /// Prepends `before` (which must end at this result's input).
    pub(crate) fn after(self, before: &RewriteCertificate) -> RewriteResult {
        match self {
            RewriteResult::Trivial { cert, reason } => RewriteResult::Trivial {
                cert: before.compose(&cert).expect("chained certificates"),
                reason,
            },
            RewriteResult::Rewritten { symbol, cert } => RewriteResult::Rewritten {
                symbol,
                cert: before.compose(&cert).expect("chained certificates"),
            },
        }
    }
}
