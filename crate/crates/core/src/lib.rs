//! Braid-group cryptanalysis toolkit.
//!
//! Implements exact word arithmetic in `B_n`, Dehornoy handle reduction and
//! full reduction, Garside left normal forms, the approximate length function
//! `|·|_a`, the TTP key-generation algorithm behind CBKAP-style key material,
//! a length-based attack on the simultaneous conjugacy separation search
//! problem (SCSSP), and a deterministic experiment harness that sweeps the
//! attack across parameter grids and emits CSV tables.

pub mod attack;
pub mod approx_length;
pub mod braid;
pub mod error;
pub mod experiments;
pub mod normal_form;
pub mod reduction;
pub mod ttp;

pub use braid::{BraidTuple, BraidWord, Letter};
pub use error::{BraidError, Result};
