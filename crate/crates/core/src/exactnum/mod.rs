//! Exact arithmetic: finite fields, matrices over them, cyclotomic numbers,
//! Laurent polynomials and rational functions in `t`.

pub mod cyclo;
pub mod field;
pub mod laurent;
pub mod matrix;
pub mod ratfunc;
pub mod roots;

pub use cyclo::{cyclo_rank, CycloNum};
pub use field::{make_field, FFElem, FiniteField};
pub use laurent::LaurentPoly;
pub use matrix::{EchelonBasis, FFMatrix, Subquotient};
pub use ratfunc::{eval_at_one, reconstruct_rational, RatFuncT};
pub use roots::{eigen_multiplicities, lift_root, RootTable};
