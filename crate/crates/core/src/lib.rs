pub mod cli;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod identities;
pub mod ntheory;
pub mod perm;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use poly::{BoundPoly, ExponentExpr, FractionalPoly, SparsePoly};

/// Size limits for the expensive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest p^m a field may be constructed with.
    pub field_order: u64,
    /// Largest p^m for whole-field sweeps.
    pub exhaustive: u64,
    /// Largest q+1 for unit-circle sweeps.
    pub unit_circle: u64,
    /// Largest phi(q^2-1) * q^2 for a brute-force equivalence search.
    pub equivalence: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_order: field::DEFAULT_FIELD_ORDER_CAP,
            exhaustive: 1 << 28,
            unit_circle: 1 << 24,
            equivalence: 1 << 30,
        }
    }
}
