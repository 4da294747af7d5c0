pub mod analytic;
pub mod arith;
pub mod bost;
pub mod error;
pub mod hasse;
pub mod hilbert;
pub mod padic;
pub mod sign;
pub mod symbols;

pub use error::{Error, Result};
pub use sign::{Epsilon, Sign};
