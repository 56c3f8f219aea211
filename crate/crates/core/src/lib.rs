//! Gaussian elimination in symplectic and orthogonal groups over exact fields,
//! using only Chevalley generators as row and column operations.

pub mod coset;
pub mod elimination;
pub mod error;
pub mod field;
pub mod forms;
pub mod generators;
pub mod harness;
pub mod matrix;
pub mod spinor;

pub use elimination::{decompose, decompose_with, full_word_sp, reconstruct, Decomposition, Options};
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSpec, SquareClass};
pub use forms::{GroupKind, SignedIndex};
pub use generators::{GenSymbol, TorusParam, Word};
pub use matrix::Matrix;
