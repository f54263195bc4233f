pub mod cli;
pub mod domain;
pub mod error;
pub mod euler_lagrange;
pub mod expr;
pub mod functional;
pub mod grid;
pub mod kvfile;
pub mod power;
pub mod quadrature;
pub mod ritz;
pub mod special;
pub mod validation;

pub use domain::{FracOrder, Interval};
pub use error::{Error, Result};
