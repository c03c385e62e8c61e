pub mod algebra;
pub mod error;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod noether;
pub mod order;

pub use error::{Error, Result};
