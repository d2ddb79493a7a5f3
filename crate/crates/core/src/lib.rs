pub mod diffop;
pub mod eigenhyp;
pub mod error;
pub mod eulerian;
pub mod families;
pub mod family;
pub mod ratpoly;
pub mod rootlab;
pub mod suites;
pub mod zerodist;

pub use error::{Error, Result};
pub use family::{Family, OperatorFamily};
