//! A proof kernel for Church's type theory extended with global quotation
//! and evaluation operators.

pub mod constructions;
pub mod frontend;
pub mod kernel;
pub mod logic;
pub mod syntax;

#[cfg(any(test, feature = "testgen"))]
pub mod testgen;
