//! Representations over finite fields, Brauer characters and the finite-level
//! model `(H, V)`.

pub mod classfn;
pub mod context;
pub mod model;
pub mod rep;

pub use classfn::{brauer_character, brauer_value, char_span_rank, induce_class_function, BrauerChar, ClassFunction};
pub use context::BrauerContext;
pub use model::{ModelGN, SFiltration};
pub use rep::Rep;

#[cfg(test)]
mod tests;
