//! Graded modules over `R = Sym(V) # H`, their Koszul homology and graded
//! Euler characteristics.

pub mod algebra;
pub mod koszul;
pub mod module;
pub mod monomial;
pub mod presentation;
pub mod series;
pub mod verify;

pub use algebra::{build_algebra, SkewAlgebra};
pub use koszul::{graded_tor, KoszulComplex, StabilizationCertificate, TorPiece, TorTable};
pub use module::{module_from_presentation, presentations, GradedModule};
pub use presentation::{Presentation, Relation, RelationTerm};
pub use series::{
    default_cutoff, default_guard, dimension, rho, rho_via_formula, zeta_rational, zeta_series, Settings,
};
pub use verify::{
    build_module, rank_harness, vanishing_check, verify_key_formula, verify_main_formula, FormulaCheck, ModuleAnalysis,
    RankReport, VanishingEntry,
};
