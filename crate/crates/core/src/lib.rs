//! A linear quantum circuit language: typed flat circuits, a linearity
//! checker, density-matrix semantics with Choi-matrix equivalence, a textual
//! surface syntax and lowering to a register-level program.

pub mod check;
pub mod cli;
pub mod circuit;
pub mod context;

pub mod denote;
pub mod error;
pub mod gate;
pub mod hoas;
pub mod matrix;
pub mod surface;
pub mod wire;

pub use check::{check_box, check_circuit, context_of_pattern, output_type, TypeError, TypeErrorKind};
pub use circuit::{compose, fresh_pat, unbox, unbox_in, BoxedCircuit, FlatCircuit, Pattern};
pub use context::{merge, singleton, Context, OContext, VarId};
pub use denote::{denote_box, denote_circuit, superop_eq, Superoperator};
pub use error::IrError;
pub use gate::{Gate, UnitaryGate};
pub use matrix::{CMatrix, Complex, Tolerance};
pub use wire::{ClassicalValue, WireType};
