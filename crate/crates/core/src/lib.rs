pub mod batch;
pub mod bivector;
pub mod cartan;
pub mod cells;
pub mod classes;
pub mod double;
pub mod error;
pub mod io;
pub mod linalg;
pub mod rootdata;
pub mod sample;
pub mod suites;
pub mod tol;
pub mod weyl;

pub use error::{Error, Result};
