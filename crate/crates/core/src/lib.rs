//! Walsh spectra of Tr(x^d) over GF(2^m) and the weight distributions of
//! binary cyclic codes with two primitive nonzeros.

pub mod analysis;
pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod predict;
pub mod walsh;

pub use error::{Error, Result};
pub use field::{make_field, Elem, FieldCtx};
pub use walsh::{walsh_spectrum, Spectrum, WalshTable};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
