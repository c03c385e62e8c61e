pub mod dual;
pub mod posdim;
pub mod zerodim;

pub use dual::DiffOp;
pub use zerodim::{Method, NoetherianBasis};
