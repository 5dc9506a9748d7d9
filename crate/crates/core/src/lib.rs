//! Exact spin character tables of the double covers Γ̃_n = Γ^n ⋊ S̃_n of
//! wreath products, for a finite group Γ given by its character table.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod gamma;
pub mod oracle;
pub mod partitions;
pub mod qfunctions;
pub mod render;
pub mod spin_sym;
pub mod wreath;

pub use error::{Error, Result};
