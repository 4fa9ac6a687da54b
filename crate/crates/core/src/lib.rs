//! Exact apolarity computations: partials spaces, catalecticants, twisted
//! powers, encompassing polynomials, order-3 tensor constructions and
//! sweet-piece extraction, all over the rationals.

pub mod apolar;
pub mod encompass;
pub mod error;
pub mod exact;
pub mod poly;
pub mod sweet;
pub mod tensor3;

pub use error::{Error, Result};

/// Size guards shared by the operations that can blow up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of terms or basis vectors a computation may create.
    pub max_terms: usize,
    /// Largest number of stored tensor entries.
    pub max_entries: usize,
    /// Largest polynomial degree a computation may create.
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_terms: 1_000_000,
            max_entries: 10_000_000,
            max_degree: 24,
        }
    }
}
