pub mod error;
pub mod exactnum;
pub mod exec;
pub mod fixtures;
pub mod groups;
pub mod io;
pub mod properties;
pub mod reps;
pub mod skewgraded;

pub use error::{Error, Result};
pub use exec::Exec;
